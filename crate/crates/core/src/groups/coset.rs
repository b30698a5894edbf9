use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{GroupError, Letter, Presentation, Word};

/// Cap on live cosets used when the caller has no better bound.
pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: u32 = u32::MAX;

/// A closed, standardized coset table.
///
/// Cosets are numbered from 0; coset 0 is the subgroup itself. Column `2g`
/// holds the action of generator `g` and column `2g+1` that of its inverse.
/// Standardization numbers cosets in breadth-first order from coset 0, so two
/// tables for the same subgroup are equal exactly when they are identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    generators: usize,
    count: usize,
    action: Vec<u32>,
    #[serde(skip)]
    subgroup_words: Vec<Word>,
}

impl CosetTable {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    pub fn image(&self, coset: usize, letter: Letter) -> usize {
        self.action[coset * 2 * self.generators + letter.column()] as usize
    }

    /// Action of one signed generator as a permutation of `0..count`.
    pub fn column(&self, letter: Letter) -> Vec<usize> {
        (0..self.count).map(|c| self.image(c, letter)).collect()
    }

    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// Index of the coset `H g`, traced from coset 0.
    pub fn coset_of(&self, word: &Word) -> usize {
        self.trace(0, word)
    }

    /// Order of the permutation that `word` induces on the cosets.
    pub fn permutation_order(&self, word: &Word) -> usize {
        let image: Vec<usize> = (0..self.count).map(|c| self.trace(c, word)).collect();
        let mut seen = vec![false; self.count];
        let mut order = 1usize;
        for start in 0..self.count {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = image[c];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Every signed-generator column is a bijection and inverse columns
    /// undo each other.
    pub fn is_permutation_table(&self) -> bool {
        (0..self.generators).all(|g| {
            let x = Letter::new(g, false);
            let mut hit = vec![false; self.count];
            (0..self.count).all(|c| {
                let d = self.image(c, x);
                let fresh = !std::mem::replace(&mut hit[d], true);
                fresh && self.image(d, x.inv()) == c
            })
        })
    }

    /// Every relator fixes every coset and every subgroup word fixes coset 0.
    pub fn is_closed(&self, p: &Presentation) -> bool {
        p.relators()
            .iter()
            .all(|r| (0..self.count).all(|c| self.trace(c, r) == c))
            && self.subgroup_words.iter().all(|w| self.coset_of(w) == 0)
    }

    /// Spanning-tree words: `words[c]` traces from coset 0 to coset `c`.
    pub fn representatives(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.count];
        words[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..2 * self.generators {
                let l = Letter::new(col / 2, col % 2 == 1);
                let d = self.image(c, l);
                if words[d].is_none() {
                    let mut w = words[c].clone().expect("visited");
                    w.0.push(l);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.expect("table is transitive"))
            .collect()
    }

    /// Builds a standardized table from a complete action on `0..count` in
    /// which coset `start` plays the role of the subgroup. Also returns the
    /// new index of every old point reachable from `start`.
    pub(crate) fn from_action(
        generators: usize,
        count: usize,
        start: usize,
        image: impl Fn(usize, usize) -> usize,
        subgroup_words: Vec<Word>,
    ) -> (Self, Vec<u32>) {
        let width = 2 * generators;
        let mut rename = vec![NONE; count];
        let mut order = Vec::with_capacity(count);
        rename[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..width {
                let d = image(c, col);
                if rename[d] == NONE {
                    rename[d] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut action = Vec::with_capacity(order.len() * width);
        for &c in &order {
            for col in 0..width {
                action.push(rename[image(c, col)]);
            }
        }
        let table = CosetTable {
            generators,
            count: order.len(),
            action,
            subgroup_words,
        };
        (table, rename)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` with the
/// HLT strategy: each live coset in order has every relator scanned and
/// filled, then its row completed, with coincidences processed as soon as
/// they appear.
///
/// Fails with [`GroupError::CapExceeded`] when more than `max_cosets` cosets
/// are live at once.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    let mut e = Enumerator::new(p.generators().len(), max_cosets);
    for w in subgroup {
        if let Some(l) = w
            .letters()
            .iter()
            .find(|l| l.generator >= p.generators().len())
        {
            return Err(GroupError::UnknownGenerator(format!("#{}", l.generator)));
        }
    }
    let cols: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    for w in subgroup {
        let w: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
        e.scan_and_fill(0, &w)?;
    }
    let mut alpha = 0;
    while alpha < e.parent.len() {
        for r in &cols {
            if !e.is_live(alpha) {
                break;
            }
            e.scan_and_fill(alpha, r)?;
        }
        for x in 0..e.width {
            if !e.is_live(alpha) {
                break;
            }
            if e.get(alpha, x) == NONE {
                e.define(alpha, x)?;
            }
        }
        alpha += 1;
    }
    Ok(e.finish(subgroup.to_vec()))
}

/// Order of the element `w` in the finite group presented by `p`.
pub fn element_order(p: &Presentation, w: &Word) -> Result<usize, GroupError> {
    Ok(coset_enumerate(p, &[], DEFAULT_MAX_COSETS)?.permutation_order(w))
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: VecDeque<usize>,
}

fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(generators: usize, cap: usize) -> Self {
        let width = 2 * generators;
        Enumerator {
            width,
            table: vec![NONE; width],
            parent: vec![0],
            live: 1,
            cap,
            queue: VecDeque::new(),
        }
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.width + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.width + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, GroupError> {
        if self.live >= self.cap {
            return Err(GroupError::CapExceeded(self.cap));
        }
        let n = self.parent.len();
        if n >= NONE as usize {
            return Err(GroupError::CapExceeded(self.cap));
        }
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.live += 1;
        self.set(c, x, n as u32);
        self.set(n, inv(x), c as u32);
        Ok(n)
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<(), GroupError> {
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i && self.get(b, inv(w[j as usize])) != NONE {
                b = self.get(b, inv(w[j as usize])) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // one missing entry closes the cycle: a deduction
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, inv(x), f as u32);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != root {
            let next = self.parent[k] as usize;
            self.parent[k] = root as u32;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.parent[drop] = keep as u32;
            self.live -= 1;
            self.queue.push_back(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.width {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, inv(x)) == g as u32 {
                    self.set(d, inv(x), NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx as usize);
                } else if self.get(nu, inv(x)) != NONE {
                    let t = self.get(nu, inv(x)) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, inv(x), mu as u32);
                }
            }
        }
    }

    fn finish(mut self, subgroup_words: Vec<Word>) -> CosetTable {
        let n = self.parent.len();
        for c in 0..n {
            if self.is_live(c) {
                for x in 0..self.width {
                    let d = self.get(c, x);
                    debug_assert_ne!(d, NONE, "complete table");
                    let r = self.rep(d as usize) as u32;
                    self.set(c, x, r);
                }
            }
        }
        let width = self.width;
        let table = self.table;
        let generators = width / 2;
        CosetTable::from_action(
            generators,
            n,
            0,
            |c, x| table[c * width + x] as usize,
            subgroup_words,
        )
        .0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma10() -> Presentation {
        Presentation::gamma10()
    }

    #[test]
    fn gamma10_order() {
        let t = coset_enumerate(&gamma10(), &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.count(), 432);
        assert!(t.is_permutation_table());
        assert!(t.is_closed(&gamma10()));
    }

    #[test]
    fn gamma10_subgroup_indices() {
        let p = gamma10();
        for (w, index) in [("z", 54), ("y*z", 216), ("y", 144)] {
            let h = p.parse_word(w).unwrap();
            let t = coset_enumerate(&p, std::slice::from_ref(&h), DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(t.count(), index, "index of <{w}>");
            assert_eq!(t.coset_of(&h), 0);
            assert!(t.is_closed(&p));
        }
        let t = coset_enumerate(&p, &[p.parse_word("z").unwrap()], DEFAULT_MAX_COSETS).unwrap();
        assert_ne!(t.coset_of(&p.parse_word("y").unwrap()), 0);
    }

    #[test]
    fn orders() {
        let p = gamma10();
        for (w, ord) in [("y", 3), ("z", 8), ("y*z", 2), ("z^2", 4), ("1", 1)] {
            assert_eq!(
                element_order(&p, &p.parse_word(w).unwrap()).unwrap(),
                ord,
                "{w}"
            );
        }
    }

    #[test]
    fn small_groups() {
        let cyc: Presentation = "<y | y^3>".parse().unwrap();
        assert_eq!(coset_enumerate(&cyc, &[], 10).unwrap().count(), 3);
        let triv: Presentation = "<y | y>".parse().unwrap();
        assert_eq!(coset_enumerate(&triv, &[], 10).unwrap().count(), 1);
        let tet: Presentation = "<y, z | y^3, z^3, (y*z)^2>".parse().unwrap();
        assert_eq!(coset_enumerate(&tet, &[], 100).unwrap().count(), 12);
        let s3: Presentation = "<a, b | a^2, b^2, (a*b)^3>".parse().unwrap();
        assert_eq!(coset_enumerate(&s3, &[], 100).unwrap().count(), 6);
    }

    #[test]
    fn cap_exceeded() {
        let free: Presentation = "<y, z | y^3>".parse().unwrap();
        assert_eq!(
            coset_enumerate(&free, &[], 500),
            Err(GroupError::CapExceeded(500))
        );
        assert_eq!(
            coset_enumerate(&gamma10(), &[], 100),
            Err(GroupError::CapExceeded(100))
        );
    }

    #[test]
    fn relators_fix_every_coset() {
        let p = gamma10();
        let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        for r in p.relators() {
            assert_eq!(t.coset_of(r), 0);
        }
    }

    #[test]
    fn deterministic() {
        let p = gamma10();
        let a = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        let b = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(a, b);
    }
}
