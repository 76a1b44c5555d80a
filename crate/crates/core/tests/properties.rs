//! Property-based checks of the algebraic invariants that everything else
//! leans on.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use querylab::amppoly::{term_space_size, AmplitudePolynomial, DEFAULT_ENUM_CAP};
use querylab::fourier::{
    addition_query, addition_via_phase, phase_query, phase_via_addition, OracleFunction,
};
use querylab::games::theorem_bound;
use querylab::qstate::{
    apply_unitary, random_state, random_unitary, RegisterLayout, UnitaryOp,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_digit_round_trip(dims in prop::collection::vec(2usize..5, 1..4), seed in any::<u64>()) {
        let layout = RegisterLayout::new(dims).unwrap();
        let idx = (seed as usize) % layout.total_dim();
        let digits = layout.digits_of(idx);
        prop_assert_eq!(layout.index_of(&digits).unwrap(), idx);
    }

    #[test]
    fn unitaries_preserve_norm_and_inner_products(n in 2usize..5, m in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layout = RegisterLayout::new(vec![n, m]).unwrap();
        let a = random_state(&layout, &mut rng);
        let b = random_state(&layout, &mut rng);
        let u = UnitaryOp::new(vec![0, 1], random_unitary(n * m, &mut rng)).unwrap();
        let ua = apply_unitary(&a, &u).unwrap();
        let ub = apply_unitary(&b, &u).unwrap();
        prop_assert!((ua.norm() - 1.0).abs() <= 1e-10);
        prop_assert!((ua.inner(&ub) - a.inner(&b)).norm() <= 1e-10);
    }

    #[test]
    fn query_pictures_agree(n in 2usize..5, m in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layout = RegisterLayout::new(vec![n, m]).unwrap();
        let s = random_state(&layout, &mut rng);
        let f = OracleFunction::random(n, m, &mut rng).unwrap();
        let p1 = phase_query(&s, &f, 0, 1).unwrap();
        let p2 = phase_via_addition(&s, &f, 0, 1).unwrap();
        let a1 = addition_query(&s, &f, 0, 1).unwrap();
        let a2 = addition_via_phase(&s, &f, 0, 1).unwrap();
        prop_assert!(p1.max_deviation(&p2) <= 1e-12);
        prop_assert!(a1.max_deviation(&a2) <= 1e-12);
    }

    #[test]
    fn expectation_equals_mass(n in 1usize..4, m in 2usize..4, q in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = AmplitudePolynomial::random(n, m, q, &mut rng);
        let e = poly.expectation_sq(DEFAULT_ENUM_CAP).unwrap();
        prop_assert!((e - poly.coefficient_mass()).abs() <= 1e-9);
    }

    #[test]
    fn bound_monotone_and_in_range(q in 0usize..5, extra in 1usize..4, m in 2usize..10) {
        let k = q + extra;
        let b = theorem_bound(q, k, m);
        prop_assert!(b > 0.0 && b <= 1.0);
        // more queries can only loosen the bound; more required pairs tighten it
        prop_assert!(theorem_bound(q + 1, k, m) >= b - 1e-15);
        prop_assert!(theorem_bound(q, k + 1, m) <= b + 1e-15);
    }

    #[test]
    fn term_space_size_recurrence(q in 0usize..4, n in 1usize..6, m in 2usize..6) {
        // adding one domain point multiplies choices per the binomial identity
        let lhs = term_space_size(q, n + 1, m);
        let with_point = (m as u128 - 1) * term_space_size(q.saturating_sub(1), n, m);
        let without = term_space_size(q, n, m);
        if q == 0 {
            prop_assert_eq!(lhs, 1);
        } else {
            prop_assert_eq!(lhs, without + with_point);
        }
    }
}
