//! Reduction of `Z[sqrt(d)]`-valued matrices modulo a prime `p` for which `d`
//! is a square. The image of a nonzero minor may vanish mod `p` but never the
//! other way around, so the rows found independent here are independent over
//! `Q[sqrt(d)]` as well. Only used to choose rows; certificates are exact.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::elim::{eliminate, ElimField, Options, PivotStrategy, SparseRow};
use crate::field::QuadScalar;

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModP {
    pub p: u64,
}

impl ModP {
    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce(&self, x: &BigInt) -> u64 {
        let r = x % BigInt::from(self.p);
        let r = r.to_i64().expect("residue fits in i64");
        r.rem_euclid(self.p as i64) as u64
    }

    /// Square root of `d` mod `p` by Tonelli-Shanks, if one exists.
    fn sqrt(&self, d: u64) -> Option<u64> {
        let p = self.p;
        let d = d % p;
        if d == 0 {
            return Some(0);
        }
        if self.pow(d, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.pow(z, (p - 1) / 2) == p - 1)?;
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(d, q);
        let mut r = self.pow(d, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = tt * tt % p;
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r)
    }
}

impl ElimField for ModP {
    type Elem = u64;
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn inv(&self, x: &u64) -> u64 {
        self.pow(*x, self.p - 2)
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x) % self.p
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        (x + self.p - f * y % self.p) % self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Primes below 2^31 (descending) in which `d` has a square root, paired with it.
pub(crate) fn split_primes(d: u32) -> impl Iterator<Item = (ModP, u64)> {
    (1u64 << 20..(1u64 << 31))
        .rev()
        .filter(|&p| is_prime(p))
        .filter_map(move |p| {
            let f = ModP { p };
            f.sqrt(u64::from(d)).map(|s| (f, s))
        })
}

/// Image of `x` under `sqrt(d) -> s`; `None` when `p` divides the denominator.
fn image(f: &ModP, s: u64, x: &QuadScalar) -> Option<u64> {
    let a = x.a();
    let b = x.b();
    let (da, db) = (f.reduce(a.denom()), f.reduce(b.denom()));
    if da == 0 || db == 0 {
        return None;
    }
    let ra = f.mul(&f.reduce(a.numer()), &f.inv(&da));
    let rb = f.mul(&f.reduce(b.numer()), &f.inv(&db));
    Some((ra + rb * s % f.p) % f.p)
}

/// Reduces `rows` modulo a split prime, returning the prime and the rows.
pub(crate) fn reduce_rows(
    rows: &[SparseRow<QuadScalar>],
    d: u32,
) -> Option<(ModP, Vec<SparseRow<u64>>)> {
    'primes: for (f, s) in split_primes(d).take(4) {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for (c, v) in row {
                match image(&f, s, v) {
                    None => continue 'primes,
                    Some(0) => {}
                    Some(m) => r.push((*c, m)),
                }
            }
            out.push(r);
        }
        return Some((f, out));
    }
    None
}

/// Indices of a maximal set of rows that are independent modulo some split
/// prime, sorted ascending.
pub(crate) fn independent_rows(
    rows: &[SparseRow<QuadScalar>],
    cols: usize,
    d: u32,
) -> Option<Vec<usize>> {
    let (f, mut reduced) = reduce_rows(rows, d)?;
    let pivots = eliminate(
        &f,
        &mut reduced,
        cols,
        Options {
            strategy: PivotStrategy::Sparsest,
            reduce_above: false,
            progress: None,
        },
    );
    let mut sel: Vec<usize> = pivots.into_iter().map(|p| p.row).collect();
    sel.sort_unstable();
    Some(sel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_prime_has_root_of_seven() {
        let (f, s) = split_primes(7).next().unwrap();
        assert_eq!(s * s % f.p, 7);
        assert!(is_prime(f.p));
    }

    #[test]
    fn image_is_a_ring_map() {
        let (f, s) = split_primes(7).next().unwrap();
        let x: QuadScalar = "(1+sqrt(7))/3".parse().unwrap();
        let y: QuadScalar = "2 - 5/7*sqrt(7)".parse().unwrap();
        let ix = image(&f, s, &x).unwrap();
        let iy = image(&f, s, &y).unwrap();
        assert_eq!(image(&f, s, &(&x * &y)).unwrap(), f.mul(&ix, &iy));
        assert_eq!(image(&f, s, &(&x + &y)).unwrap(), (ix + iy) % f.p);
    }
}
