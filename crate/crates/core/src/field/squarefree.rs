/// Splits `n > 0` as `k^2 * m` with `m` squarefree, returning `(k, m)`.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_decompose(0)");
    let mut k = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover n is 1 or a prime
    (k, m * n)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_decompose(n).0 == 1
}
