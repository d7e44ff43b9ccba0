//! Property tests over the pure numeric layers.

use brody_core::lattice::e2_log;
use brody_core::num::{clog, Kahan};
use brody_core::{Complex64, EntireComponent, HoloCurve, Quadratic, ScaledValue};
use proptest::prelude::*;

fn finite_complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scaled_value_normalization_preserves_the_function(
        scale in -50.0..50.0f64,
        unit in finite_complex(4.0),
        deriv in finite_complex(4.0),
    ) {
        prop_assume!(unit.norm() > 1e-6);
        let sv = ScaledValue::new(scale, unit, deriv);
        prop_assert!((sv.unit.norm() - 1.0).abs() < 1e-12);
        // log-modulus and log-derivative are invariants of the representation
        let expected_mod = scale + unit.norm().ln();
        prop_assert!((sv.log_modulus() - expected_mod).abs() < 1e-10);
        let ld = sv.log_derivative().unwrap();
        prop_assert!((ld - deriv / unit).norm() < 1e-10 * (1.0 + ld.norm()));
    }

    #[test]
    fn primary_factor_log_agrees_across_branches(w in finite_complex(0.45)) {
        // series branch vs direct form of log E2 = log(1-w) + w + w^2/2
        prop_assume!((w - Complex64::new(1.0, 0.0)).norm() > 1e-3);
        let direct = clog(Complex64::new(1.0, 0.0) - w) + w + w * w * 0.5;
        prop_assert!((e2_log(w) - direct).norm() < 1e-13);
    }

    #[test]
    fn compensated_sum_matches_exact_integers(values in prop::collection::vec(-1000i64..1000, 1..200)) {
        let mut k = Kahan::new();
        for &v in &values {
            k.add(v as f64);
        }
        let exact: i64 = values.iter().sum();
        prop_assert_eq!(k.value(), exact as f64);
    }

    #[test]
    fn curve_point_log_sum_identity(
        a1 in finite_complex(0.5),
        a2 in finite_complex(0.1),
        z in finite_complex(6.0),
    ) {
        // u = max u_j + (1/2) log sum exp(2(u_j - max)) holds at every point
        let curve = HoloCurve::new(vec![
            EntireComponent::ExpPoly(Quadratic::new(Complex64::new(0.0, 0.0), a1, a2)),
            EntireComponent::one(),
        ]).unwrap();
        let pt = curve.point(z);
        let umax = pt.u_components.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = umax
            + 0.5
                * pt.u_components
                    .iter()
                    .map(|u| (2.0 * (u - umax)).exp())
                    .sum::<f64>()
                    .ln();
        prop_assert!((pt.u - lse).abs() < 1e-12);
        prop_assert!(pt.spherical >= 0.0);
        // a curve containing the constant 1 has nonnegative norm log
        prop_assert!(pt.u >= 0.0);
    }

    #[test]
    fn exp_sum_scale_invariance(
        lambda in finite_complex(2.0),
        z in finite_complex(8.0),
        shift in -200.0..200.0f64,
    ) {
        // multiplying a component by e^{shift} moves log|f| by exactly shift
        let base = EntireComponent::ExpSum(vec![
            brody_core::ExpTerm::new(Complex64::new(1.0, 0.0), lambda),
            brody_core::ExpTerm::new(Complex64::new(-0.5, 0.25), Complex64::new(0.0, 0.0)),
        ]);
        let scaled = EntireComponent::ExpSum(vec![
            brody_core::ExpTerm::new(Complex64::new(shift.exp(), 0.0).into(), lambda),
            brody_core::ExpTerm::new(Complex64::new(-0.5 * shift.exp(), 0.25 * shift.exp()), Complex64::new(0.0, 0.0)),
        ]);
        let u0 = base.eval(z).log_modulus();
        let u1 = scaled.eval(z).log_modulus();
        if u0.is_finite() {
            prop_assert!((u1 - u0 - shift).abs() < 1e-9 * (1.0 + u0.abs()));
        }
    }
}
