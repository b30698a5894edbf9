use num_integer::Roots;
use serde::Serialize;

use super::MapError;

/// Heawood number `floor((7 + sqrt(49 - 24 chi)) / 2)`, the largest `n` with
/// `K_n` embeddable in a surface of Euler characteristic `chi`. The Klein
/// bottle (`chi = 0`, `klein_bottle = true`) is one less.
///
/// Computed in integers: with `s = isqrt(49 - 24 chi)` the floor equals
/// `(7 + s) div 2`, because `7 + sqrt(N)` and `7 + s` have the same integer
/// part and halving preserves `floor`.
pub fn heawood_gamma(chi: i64, klein_bottle: bool) -> Result<u64, MapError> {
    if chi > 2 || (klein_bottle && chi != 0) {
        return Err(MapError::InvalidChi(chi));
    }
    let n = 49 - 24 * i128::from(chi);
    let s = n.sqrt();
    debug_assert!(s * s <= n && (s + 1) * (s + 1) > n);
    let gamma = ((7 + s) / 2) as u64;
    Ok(if klein_bottle { gamma - 1 } else { gamma })
}

/// Surfaces below a base surface on which a graph with `mu >= mu_lower`
/// beats the Heawood bound `gamma(chi) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleRange {
    pub mu_lower: u64,
    pub base_chi: i64,
    /// Inclusive `[low, high]`, or `None` when no surface qualifies.
    pub interval: Option<(i64, i64)>,
    /// `(chi, gamma(chi))` for the base and every inspected `chi`, descending.
    pub table: Vec<(i64, u64)>,
}

/// The graph embeds in every surface with `chi < base_chi`, so the bound is
/// violated on the maximal run `chi = base_chi - 1, base_chi - 2, ...` with
/// `gamma(chi) - 1 < mu_lower`; `gamma` only grows as `chi` falls, so the run
/// ends at the first failure. Orientable values of `gamma` are used.
pub fn counterexample_range(mu_lower: u64, base_chi: i64) -> Result<CounterexampleRange, MapError> {
    let mut table = vec![(base_chi, heawood_gamma(base_chi, false)?)];
    let mut interval = None;
    let mut chi = base_chi - 1;
    loop {
        let g = heawood_gamma(chi, false)?;
        table.push((chi, g));
        if g > mu_lower {
            // gamma - 1 >= mu_lower: the bound holds here
            break;
        }
        interval = Some((chi, base_chi - 1));
        chi -= 1;
    }
    Ok(CounterexampleRange {
        mu_lower,
        base_chi,
        interval,
        table,
    })
}
