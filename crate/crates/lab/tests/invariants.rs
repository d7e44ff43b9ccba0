//! Cross-module property suites that exercise the heavier invariants:
//! truncation-independence of the product log-modulus, the growth bound
//! from the spherical-derivative supremum, and route agreement including a
//! lattice-product curve.

use brody_core::growth::{characteristic_jensen, riesz_mass, CharacteristicSampler};
use brody_core::lattice::{Lattice, LatticeProduct, TruncationPolicy};
use brody_core::num::SplitMix64;
use brody_core::{Complex64, EntireComponent, HoloCurve};
use std::sync::Arc;

#[test]
fn product_log_modulus_survives_higher_truncation() {
    // Re-evaluating with a 4x larger cell truncation radius changes the
    // log-modulus by less than 1e-10 relative on 1000 points, |z| <= 50.
    for lattice in [Lattice::square_unit(), Lattice::square_half_shift()] {
        let base = LatticeProduct::new(lattice, TruncationPolicy::default(), 13.0).unwrap();
        let fine = LatticeProduct::new(
            lattice,
            TruncationPolicy {
                min_radius: 4.0 * 2.75,
                ..TruncationPolicy::default()
            },
            13.0,
        )
        .unwrap();
        let mut rng = SplitMix64::new(808);
        for _ in 0..1000 {
            let z = rng.complex_disc(50.0);
            let a = base.eval_reduced(z).log_modulus();
            let b = fine.eval_reduced(z).log_modulus();
            if a.is_finite() {
                assert!(
                    (a - b).abs() <= 1e-10 * a.abs().max(1.0),
                    "z={z}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn growth_bound_from_spherical_sup() {
    // n(t) <= S^2 t^2 for every sampled t, with S the sup estimate: the
    // density of the Riesz mass is bounded by S^2 / pi.
    let curves = [
        HoloCurve::new(vec![EntireComponent::id_z(), EntireComponent::one()]).unwrap(),
        HoloCurve::new(vec![EntireComponent::exp_z(), EntireComponent::one()]).unwrap(),
        HoloCurve::new(vec![EntireComponent::sin(), EntireComponent::one()]).unwrap(),
    ];
    for curve in &curves {
        let sup = curve.sup_spherical(16.0, 0.05).unwrap().value;
        for i in 1..=10 {
            let t = 1.2 * i as f64;
            let n = riesz_mass(curve, t, 1e-8).unwrap();
            assert!(
                n <= sup * sup * t * t * (1.0 + 1e-6) + 1e-9,
                "t={t}: n={n} vs bound {}",
                sup * sup * t * t
            );
        }
    }
}

#[test]
fn route_agreement_includes_product_curve() {
    let f0 = Arc::new(
        LatticeProduct::new(Lattice::square_unit(), TruncationPolicy::default(), 13.0).unwrap(),
    );
    let f1 = Arc::new(
        LatticeProduct::new(
            Lattice::square_half_shift(),
            TruncationPolicy::default(),
            13.0,
        )
        .unwrap(),
    );
    let curve = HoloCurve::new(vec![
        EntireComponent::CanonicalProduct(f0),
        EntireComponent::CanonicalProduct(f1),
        EntireComponent::one(),
    ])
    .unwrap();
    let tol = 1e-5;
    let mut sampler = CharacteristicSampler::new(&curve, 5.0, tol).unwrap();
    for &r in &[1.0f64, 5.0] {
        let ta = sampler.characteristic_at(r).unwrap();
        let tj = characteristic_jensen(&curve, r, 128).unwrap();
        assert!(
            (ta - tj).abs() <= 5.0 * (tol + 1e-8) * ta.abs().max(1.0),
            "r={r}: {ta} vs {tj}"
        );
    }
}

#[test]
fn sheared_curve_keeps_inequality_structure() {
    // shear (e^z, 1) into (e^z - 1, 1) and confirm the marked zero and the
    // unchanged later components
    let e = HoloCurve::new(vec![EntireComponent::exp_z(), EntireComponent::one()]).unwrap();
    let sheared = e.shear_coordinates(Complex64::new(-1.0, 0.0)).unwrap();
    let tau = core::f64::consts::TAU;
    let u0 = sheared.point(Complex64::new(0.0, tau)).u_components[0];
    assert!(u0 < -13.0, "u0 at the created zero: {u0}");
    let z = Complex64::new(0.3, -0.8);
    assert_eq!(
        sheared.point(z).u_components[1],
        e.point(z).u_components[1],
        "later components must be untouched"
    );
}
