mod common;

use cdv_core::cdv::{
    bipartite_kernel_basis, bipartite_subset, build_bipartite_operator, build_shift_operator,
    check_sap, same_span, verify_sap_violation,
};
use cdv_core::groups::{coset_enumerate, FiniteGroup};
use cdv_core::maps::heawood_gamma;
use cdv_core::{
    ExactMatrix, PivotStrategy, Presentation, QuadScalar, Rational, SchrodingerOperator,
    SimpleGraph,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar(d: u32) -> impl Strategy<Value = QuadScalar> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(move |(a, ad, b, bd)| {
        let b = if d == 1 { 0 } else { b };
        QuadScalar::new(
            &Rational::new(BigInt::from(a), BigInt::from(ad)),
            &Rational::new(BigInt::from(b), BigInt::from(bd)),
            u64::from(d),
        )
        .unwrap()
    })
}

fn field_triple() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    prop::sample::select(common::FIELDS.to_vec())
        .prop_flat_map(|d| (scalar(d), scalar(d), scalar(d)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in field_triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, QuadScalar::zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn sign_matches_float((x, _, _) in field_triple()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!(x.sign() == 0, x.is_zero());
        // the norm of a nonzero element is nonzero
        prop_assert_eq!(x.is_zero(), num_traits::Zero::is_zero(&x.norm()));
    }

    #[test]
    fn display_round_trips((x, _, _) in field_triple()) {
        let back: QuadScalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn order_is_compatible_with_addition((x, y, z) in field_triple()) {
        if x < y {
            prop_assert!(&x + &z < &y + &z);
        }
    }

    #[test]
    fn rank_agrees_with_oracle(seed in any::<u64>(), d in prop::sample::select(common::FIELDS.to_vec()), r in 1usize..=8, c in 1usize..=8) {
        let m = common::random_matrix(&mut rng(seed), d, r, c);
        let oracle = common::oracle_rank(&m);
        prop_assert_eq!(m.rank_with(PivotStrategy::FirstNonzero), oracle);
        prop_assert_eq!(m.rank_with(PivotStrategy::Sparsest), oracle);
        prop_assert_eq!(m.transpose().rank(), oracle);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), c - oracle);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(QuadScalar::is_zero));
        }
    }

    #[test]
    fn rref_is_reduced(seed in any::<u64>(), d in prop::sample::select(common::FIELDS.to_vec())) {
        let m = common::random_matrix(&mut rng(seed), d, 5, 6);
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), common::oracle_rank(&m));
        for (k, &p) in pivots.iter().enumerate() {
            for i in 0..r.rows() {
                let expected = if i == k { QuadScalar::one() } else { QuadScalar::zero() };
                prop_assert_eq!(r.get(i, p), &expected);
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), d in prop::sample::select(common::FIELDS.to_vec()), n in 1usize..=4) {
        let mut g = rng(seed);
        let a = common::random_matrix(&mut g, d, n, n);
        let b = common::random_matrix(&mut g, d, n, n);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
        prop_assert_eq!(a.determinant().unwrap().is_zero(), common::oracle_rank(&a) < n);
    }

    #[test]
    fn inertia_is_congruence_invariant(seed in any::<u64>(), d in prop::sample::select(common::FIELDS.to_vec()), n in 1usize..=5) {
        let mut g = rng(seed);
        let a = common::random_symmetric(&mut g, d, n).into_symmetric().unwrap();
        let p = common::random_matrix(&mut g, d, n, n);
        prop_assume!(p.rank() == n);
        let b = p.transpose().mul(&a).unwrap().mul(&p).unwrap();
        let ia = a.inertia_symmetric().unwrap();
        prop_assert_eq!(b.inertia_symmetric().unwrap(), ia);
        prop_assert_eq!(ia.zeros, n - common::oracle_rank(&a));
        if a.entries().iter().all(QuadScalar::is_integer) {
            prop_assert_eq!(common::oracle_inertia(&a), ia);
        }
    }

    #[test]
    fn corank_at_most_one_has_sap(seed in any::<u64>()) {
        let (g, diag) = common::random_operator_matrix(&mut rng(seed));
        let op = SchrodingerOperator::from_parts(g, &diag, &[]).unwrap();
        prop_assume!(op.check_membership().is_ok() && op.corank() <= 1);
        prop_assert_eq!(op.corank(), op.inertia().zeros);
        prop_assert!(check_sap(&op, None).unwrap().holds);
    }

    #[test]
    fn sap_failures_carry_verified_witnesses(seed in any::<u64>(), shift in -3i64..=3) {
        // star-like and sparse graphs fail SAP often
        let n = 4 + (seed % 4) as usize;
        let g = common::random_connected_graph(&mut rng(seed), n);
        let op = build_shift_operator(&g, &QuadScalar::from_int(shift));
        let out = check_sap(&op, None).unwrap();
        prop_assert_eq!(out.holds, out.rank == out.columns);
        match &out.witness {
            Some(x) => prop_assert!(verify_sap_violation(&op, x).is_ok()),
            None => prop_assert!(out.holds),
        }
    }

    #[test]
    fn bipartite_corank_two_has_sap(a in 1usize..=5, b in 1usize..=5, pick in any::<u64>()) {
        let (a, b) = (a.min(b), a.max(b));
        prop_assume!(a + b >= 4);
        let target = a + b - 4;
        let lo = target.saturating_sub(b - 1);
        let hi = target.min(a - 1);
        let sa = lo + (pick as usize) % (hi - lo + 1);
        let s = bipartite_subset(a, sa, target - sa);
        let op = build_bipartite_operator(a, b, &s).unwrap();
        prop_assert_eq!(op.corank, 2);
        prop_assert!(check_sap(&op.operator, None).unwrap().holds);
    }

    #[test]
    fn bipartite_kernels_match(a in 1usize..=5, b in 1usize..=5, sa in 0usize..5, sb in 0usize..5) {
        let (a, b) = (a.min(b), a.max(b));
        let s = bipartite_subset(a, sa.min(a - 1), sb.min(b - 1));
        let op = build_bipartite_operator(a, b, &s).unwrap();
        let basis = bipartite_kernel_basis(a, b, &s).unwrap();
        prop_assert_eq!(basis.len(), a + b - 2 - s.len());
        prop_assert!(same_span(a + b, &basis, &op.operator.kernel_basis()).unwrap());
        prop_assert_eq!(op.operator.inertia().zeros, op.corank);
    }

    #[test]
    fn dihedral_cosets(n in 2usize..=12, word in "[ab]{0,6}") {
        let p: Presentation = format!("<a, b | a^{n}, b^2, (a*b)^2>").parse().unwrap();
        let g = FiniteGroup::realize(&p, 10_000).unwrap();
        prop_assert_eq!(g.order(), 2 * n);
        let text = if word.is_empty() { "1".to_string() } else { word.chars().map(String::from).collect::<Vec<_>>().join("*") };
        let h = p.parse_word(&text).unwrap();
        let cosets = g.subgroup_cosets(std::slice::from_ref(&h));
        prop_assert_eq!(cosets.count() * cosets.subgroup_order(), g.order());
        prop_assert_eq!(cosets.subgroup_order(), g.element_order(&h));
        let direct = coset_enumerate(&p, &[h], 10_000).unwrap();
        prop_assert_eq!(direct.count(), cosets.count());
        prop_assert!(direct.is_permutation_table());
        prop_assert!(direct.is_closed(&p));
        prop_assert_eq!(cosets.table(), &direct);
    }

    #[test]
    fn heawood_is_monotone(chi in -500i64..=2) {
        prop_assert!(heawood_gamma(chi - 1, false).unwrap() >= heawood_gamma(chi, false).unwrap());
        // gamma(chi) is the largest n with (n-3)(n-4) <= 6 (2 - chi)
        let g = heawood_gamma(chi, false).unwrap() as i64;
        prop_assert!((g - 3) * (g - 4) <= 6 * (2 - chi));
        prop_assert!((g - 2) * (g - 3) > 6 * (2 - chi));
        if chi % 2 == 0 {
            prop_assert!(g >= 4);
        }
    }

    #[test]
    fn graph_formats_round_trip(seed in any::<u64>(), n in 1usize..=9) {
        let g = common::random_connected_graph(&mut rng(seed), n);
        prop_assert_eq!(SimpleGraph::from_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(SimpleGraph::from_json(&g.to_json()).unwrap(), g.clone());
        prop_assert_eq!(g.complement().complement(), g.clone());
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert_eq!(g.adjacency_matrix(), ExactMatrix::from_fn(n, n, |i, j| QuadScalar::from_int(i64::from(g.has_edge(i, j)))).unwrap());
    }
}
