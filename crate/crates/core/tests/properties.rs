use cpswf::clifford::{Multivector, VectorM};
use cpswf::cpswf::{make_cpswf, DEFAULT_TOL};
use cpswf::galerkin::{build_even, build_odd};
use cpswf::monogenics::PolyMultivector;
use num_complex::Complex64;
use proptest::prelude::*;

fn multivector(m: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << m).prop_map(move |v| {
        let coeffs = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        Multivector::from_coeffs(m, coeffs).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1usize..=5).prop_flat_map(|m| (multivector(m), multivector(m), multivector(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative((a, b, c) in triple()) {
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn distributive((a, b, c) in triple()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn conjugation_reverses_products((a, b, _) in triple()) {
        let lhs = (&a * &b).conjugate();
        let rhs = &b.conjugate() * &a.conjugate();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        prop_assert!(a.conjugate().conjugate().max_abs_diff(&a) == 0.0);
    }

    #[test]
    fn vectors_square_to_minus_norm(m in 2usize..=5, seed in prop::collection::vec(-2.0f64..2.0, 5)) {
        let x = VectorM::new(seed[..m].to_vec());
        let sq = &x.embed() * &x.embed();
        let target = Multivector::scalar(m, -x.norm_sqr());
        prop_assert!(sq.max_abs_diff(&target) < 1e-14 * (1.0 + x.norm_sqr()));
    }

    #[test]
    fn scalar_inner_is_squared_norm((a, b, _) in triple()) {
        let direct = (&a.conjugate() * &b).scalar_part();
        let inner = a.scalar_inner(&b).unwrap();
        prop_assert!((direct - inner).norm() < 1e-12);
        prop_assert!((a.scalar_inner(&a).unwrap().re - a.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn grades_sum_to_whole((a, _, _) in triple()) {
        let m = a.dim();
        let mut sum = Multivector::zero(m);
        for g in 0..=m {
            sum += &a.grade_project(g).unwrap();
        }
        prop_assert!(sum.max_abs_diff(&a) == 0.0);
    }

    #[test]
    fn json_round_trip((a, _, _) in triple()) {
        let back = Multivector::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn poly_json_round_trip(e in prop::collection::vec(0u32..4, 2), v in -3.0f64..3.0) {
        let p = PolyMultivector::monomial(e, Multivector::scalar(2, v))
            .add(&PolyMultivector::coordinate(2, 1));
        let back = PolyMultivector::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn shift_identity(k in 0usize..5, m in 2usize..5, c in 0.0f64..3.0) {
        let odd = build_odd(k, m, c, 40);
        let even = build_even(k + 1, m, c, 40);
        let shift = (4 * k + 2 * m) as f64;
        for i in 0..40 {
            prop_assert!((odd.diag[i] - even.diag[i] - shift).abs() <= 1e-13 * (1.0 + odd.diag[i].abs()));
        }
        for i in 0..39 {
            prop_assert!((odd.offdiag[i] - even.offdiag[i]).abs() <= 1e-13 * (1.0 + odd.offdiag[i].abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn concentration_in_unit_interval(n in 0usize..8, k in 0usize..4, m in 2usize..5, c in 0.1f64..3.0) {
        let psi = make_cpswf(n, k, m, c, DEFAULT_TOL).unwrap();
        prop_assert!(psi.lambda > 0.0 && psi.lambda < 1.0);
        prop_assert!((psi.coeffs.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(psi.chi >= 0.0);
        prop_assert!(psi.value_at_zero() != 0.0);
    }

    #[test]
    fn continuity_in_bandwidth(n in 0usize..6, k in 0usize..3, c in 0.2f64..2.5) {
        let h = 1e-4;
        let lo = make_cpswf(n, k, 2, c - h, DEFAULT_TOL).unwrap().lambda;
        let mid = make_cpswf(n, k, 2, c, DEFAULT_TOL).unwrap().lambda;
        let hi = make_cpswf(n, k, 2, c + h, DEFAULT_TOL).unwrap().lambda;
        // the secant slopes on either side agree to first order
        let (s1, s2) = ((mid - lo) / h, (hi - mid) / h);
        prop_assert!(lo < mid && mid < hi);
        prop_assert!((s1 - s2).abs() <= 5e-2 * s1.abs().max(s2.abs()) + 1e-300);
    }
}
