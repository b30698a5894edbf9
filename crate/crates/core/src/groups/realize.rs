use super::{coset_enumerate, CosetTable, GroupError, Letter, Presentation, Word};

/// A finite group realized as its regular action: elements are the cosets of
/// the trivial subgroup, element 0 is the identity, and right multiplication
/// by a generator is a table lookup.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    presentation: Presentation,
    table: CosetTable,
    words: Vec<Word>,
}

/// Right cosets `H g` of a subgroup, obtained as the orbits of left
/// multiplication by the subgroup generators on the regular action.
#[derive(Clone, Debug)]
pub struct SubgroupCosets {
    label: Vec<usize>,
    table: CosetTable,
    subgroup_order: usize,
}

impl FiniteGroup {
    /// Enumerates the cosets of the trivial subgroup.
    pub fn realize(p: &Presentation, max_cosets: usize) -> Result<Self, GroupError> {
        let table = coset_enumerate(p, &[], max_cosets)?;
        let words = table.representatives();
        Ok(FiniteGroup {
            presentation: p.clone(),
            table,
            words,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.count()
    }

    /// The element represented by `w`.
    pub fn element(&self, w: &Word) -> usize {
        self.table.coset_of(w)
    }

    /// A word representing element `e`.
    pub fn word(&self, e: usize) -> &Word {
        &self.words[e]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table.trace(a, &self.words[b])
    }

    pub fn right_generator(&self, e: usize, letter: Letter) -> usize {
        self.table.image(e, letter)
    }

    pub fn element_order(&self, w: &Word) -> usize {
        self.table.permutation_order(w)
    }

    /// The permutation `g -> h g` of the elements.
    pub fn left_multiplication(&self, h: &Word) -> Vec<usize> {
        let h = self.element(h);
        (0..self.order()).map(|g| self.multiply(h, g)).collect()
    }

    /// Right cosets of the subgroup generated by `generators`.
    ///
    /// Right multiplication commutes with left multiplication, so the
    /// generator action descends to the orbits and yields the subgroup's
    /// coset table without a second enumeration.
    pub fn subgroup_cosets(&self, generators: &[Word]) -> SubgroupCosets {
        let n = self.order();
        let perms: Vec<Vec<usize>> = generators
            .iter()
            .map(|h| self.left_multiplication(h))
            .collect();
        let mut orbit = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(start);
            orbit[start] = id;
            let mut stack = vec![start];
            while let Some(g) = stack.pop() {
                for p in &perms {
                    let h = p[g];
                    if orbit[h] == usize::MAX {
                        orbit[h] = id;
                        stack.push(h);
                    }
                }
            }
        }
        let subgroup_order = orbit.iter().filter(|&&o| o == orbit[0]).count();
        let gens = self.table.generator_count();
        let (table, rename) = CosetTable::from_action(
            gens,
            reps.len(),
            orbit[0],
            |o, col| {
                let l = Letter::new(col / 2, col % 2 == 1);
                orbit[self.table.image(reps[o], l)]
            },
            generators.to_vec(),
        );
        let label = orbit.iter().map(|&o| rename[o] as usize).collect();
        SubgroupCosets {
            label,
            table,
            subgroup_order,
        }
    }
}

impl SubgroupCosets {
    pub fn count(&self) -> usize {
        self.table.count()
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Order of the subgroup, which is the size of every coset.
    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    /// Coset containing element `e`.
    pub fn coset_of_element(&self, e: usize) -> usize {
        self.label[e]
    }

    /// Coset label of every element.
    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Elements of coset `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.label.len())
            .filter(|&e| self.label[e] == c)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_MAX_COSETS;

    #[test]
    fn gamma10_subgroups_match_direct_enumeration() {
        let p = Presentation::gamma10();
        let g = FiniteGroup::realize(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(g.order(), 432);
        for (w, index, order) in [("z", 54, 8), ("y*z", 216, 2), ("y", 144, 3)] {
            let h = p.parse_word(w).unwrap();
            let s = g.subgroup_cosets(std::slice::from_ref(&h));
            assert_eq!(s.count(), index);
            assert_eq!(s.subgroup_order(), order);
            assert_eq!(index * order, 432);
            let direct = coset_enumerate(&p, &[h], DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(s.table(), &direct);
            // the label agrees with tracing an element's word through the table
            for e in 0..g.order() {
                assert_eq!(s.coset_of_element(e), direct.coset_of(g.word(e)));
            }
        }
    }

    #[test]
    fn multiplication_is_associative_with_identity() {
        let p: Presentation = "<a, b | a^2, b^3, (a*b)^4>".parse().unwrap();
        let g = FiniteGroup::realize(&p, 1000).unwrap();
        assert_eq!(g.order(), 24);
        for a in 0..24 {
            assert_eq!(g.multiply(0, a), a);
            assert_eq!(g.multiply(a, 0), a);
            for b in 0..24 {
                for c in [0, 5, 17] {
                    assert_eq!(
                        g.multiply(g.multiply(a, b), c),
                        g.multiply(a, g.multiply(b, c))
                    );
                }
            }
        }
    }
}
