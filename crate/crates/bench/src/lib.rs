//! Fixtures shared by the benchmarks.

use cdv_core::cdv::{bipartite_subset, build_bipartite_operator, build_shift_operator};
use cdv_core::groups::DEFAULT_MAX_COSETS;
use cdv_core::{CombinatorialMap, Presentation, SchrodingerOperator, SimpleGraph};

/// Underlying graph of the genus-10 triangulation.
pub fn g10_graph() -> SimpleGraph {
    CombinatorialMap::from_rotary_presentation(&Presentation::gamma10(), DEFAULT_MAX_COSETS)
        .expect("built-in map")
        .underlying_graph()
        .clone()
}

/// `(1 + sqrt 7) I - A` on the genus-10 graph.
pub fn m10() -> SchrodingerOperator {
    build_shift_operator(&g10_graph(), &"1 + sqrt(7)".parse().expect("scalar"))
}

/// Corank-2 operator on `K_{a,b}`.
pub fn bipartite_corank_two(a: usize, b: usize) -> SchrodingerOperator {
    let s = bipartite_subset(a, a - 2, b - 2);
    build_bipartite_operator(a, b, &s)
        .expect("valid construction")
        .operator
}
