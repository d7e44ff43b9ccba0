//! The sharpness construction: a bounded-spherical-derivative curve
//! `(f_0, f_1, 1, ..., 1)` into `P^n` that omits only `n - 1` hyperplanes
//! and grows at the quadratic rate `T(r) ~ c1 r^2`.
//!
//! `f_0` is the genus-2 canonical product with simple zeros on the integer
//! lattice; `f_1` is the product over the half-shifted lattice times
//! `exp(beta z)`, with `beta` solved from the quasi-period congruences so
//! that `g = f_1 / f_0` is doubly periodic with periods `1 + i` and `1 - i`
//! (an index-two sublattice: a degree-one elliptic function cannot exist, so
//! periodizing over the full integer lattice is impossible).

use crate::component::EntireComponent;
use crate::curve::HoloCurve;
use crate::error::{Error, Result};
use crate::growth::{self, characteristic_jensen};
use crate::lattice::{Lattice, LatticeProduct, TruncationPolicy};
use crate::num::{cis, real, SplitMix64};
use crate::C64;
use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

const TWO_PI: f64 = core::f64::consts::TAU;

/// The constructed curve with its ingredients exposed for verification.
#[derive(Debug, Clone)]
pub struct ExampleCurve {
    pub n: usize,
    pub curve: HoloCurve,
    pub product_f0: Arc<LatticeProduct>,
    pub product_f1: Arc<LatticeProduct>,
    /// Periodizing exponent of `f_1`.
    pub beta: C64,
}

/// Scaling-law report for one component: samples of `log|f| / r^2` away from
/// the zero set.
#[derive(Debug, Clone)]
pub struct B0Report {
    pub c_estimate: f64,
    pub samples_used: usize,
    pub excluded: usize,
    pub max_rel_dev: f64,
    /// `(radius, max relative deviation at that radius)`, ascending radii.
    pub per_radius: Vec<(f64, f64)>,
}

/// Complex log of a product value (scale plus unit phase), defined mod 2 pi i.
fn complex_log(p: &LatticeProduct, z: C64) -> C64 {
    let sv = p.eval_reduced(z);
    C64::new(sv.log_scale, real::atan2(sv.unit.im, sv.unit.re))
}

/// Distance from `w` to the nearest point of `2 pi i Z` along the line
/// spanned by i.
fn mod_2pi_i_residual(w: C64) -> f64 {
    let k = real::round(w.im / TWO_PI);
    real::hypot(w.re, w.im - TWO_PI * k)
}

/// Builds the example curve into `P^n`, `n >= 2`. `max_direct_radius` is
/// forwarded to both product tables.
pub fn build_example(n: usize, max_direct_radius: f64) -> Result<ExampleCurve> {
    if n < 2 {
        return Err(Error::input("the example needs n >= 2"));
    }
    let policy = TruncationPolicy::default();
    let product_f0 = Arc::new(LatticeProduct::new(
        Lattice::square_unit(),
        policy,
        max_direct_radius,
    )?);
    let product_f1 = Arc::new(LatticeProduct::new(
        Lattice::square_half_shift(),
        policy,
        max_direct_radius,
    )?);

    // Quasi-period mismatch of the bare ratio h/f0 over the two target
    // periods; beta must cancel it modulo 2 pi i.
    let z_base = C64::new(0.1837, 0.2731);
    let periods = [C64::new(1.0, 1.0), C64::new(1.0, -1.0)];
    let mut rho = [C64::new(0.0, 0.0); 2];
    for (i, &w) in periods.iter().enumerate() {
        let d1 = complex_log(&product_f1, z_base + w) - complex_log(&product_f1, z_base);
        let d0 = complex_log(&product_f0, z_base + w) - complex_log(&product_f0, z_base);
        rho[i] = d1 - d0;
    }
    // Solve beta w = -rho(w) (mod 2 pi i) for both periods at once.
    let mut best: Option<(f64, C64)> = None;
    for k1 in -8..=8i64 {
        let beta = (C64::new(0.0, TWO_PI * k1 as f64) - rho[0]) / periods[0];
        let resid = mod_2pi_i_residual(beta * periods[1] + rho[1]);
        if best.map(|(r, _)| resid < r).unwrap_or(true) {
            best = Some((resid, beta));
        }
    }
    let (residual, beta) = best.unwrap();
    if residual > 1e-9 {
        return Err(Error::numerical(format!(
            "periodizing exponent does not close the congruences (residual {residual:.2e})"
        )));
    }

    let mut components = Vec::with_capacity(n + 1);
    components.push(EntireComponent::CanonicalProduct(product_f0.clone()));
    components.push(EntireComponent::Scaled {
        base: Box::new(EntireComponent::CanonicalProduct(product_f1.clone())),
        exp_linear: beta,
    });
    for _ in 0..(n - 1) {
        components.push(EntireComponent::one());
    }
    let curve = HoloCurve::new(components)?;
    Ok(ExampleCurve {
        n,
        curve,
        product_f0,
        product_f1,
        beta,
    })
}

impl ExampleCurve {
    fn f0(&self, z: C64) -> crate::scaled::ScaledValue {
        self.curve.components()[0].eval(z)
    }

    fn f1(&self, z: C64) -> crate::scaled::ScaledValue {
        self.curve.components()[1].eval(z)
    }

    /// `g = f_1 / f_0` as a complex value; only valid away from poles.
    fn g(&self, z: C64) -> C64 {
        let (a, b) = (self.f1(z), self.f0(z));
        let log_ratio = a.log_scale - b.log_scale;
        (a.unit / b.unit) * real::exp(log_ratio)
    }

    /// Maximum of `|g(z + w) - g(z)| / (1 + |g(z)|)` over random points and
    /// the two periods `1 +- i`; small residuals certify ellipticity.
    pub fn verify_elliptic(&self, trials: usize, seed: u64) -> f64 {
        self.period_residual(trials, seed, [C64::new(1.0, 1.0), C64::new(1.0, -1.0)])
    }

    /// Same residual over an arbitrary translation (used to confirm that 1
    /// alone is NOT a period).
    pub fn period_residual(&self, trials: usize, seed: u64, periods: [C64; 2]) -> f64 {
        let mut rng = SplitMix64::new(seed);
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < trials {
            let z = rng.complex_square(6.0);
            // redraw near poles of g (zeros of f0)
            if (z - self.product_f0.lattice().nearest_point(z)).norm() < 1e-3 {
                continue;
            }
            let gz = self.g(z);
            for w in periods {
                if (z + w - self.product_f0.lattice().nearest_point(z + w)).norm() < 1e-3 {
                    continue;
                }
                let r = (self.g(z + w) - gz).norm() / (1.0 + gz.norm());
                worst = worst.max(r);
            }
            done += 1;
        }
        worst
    }

    /// Samples `log|f_j| / r^2` on circles, excluding points within 1/4 of
    /// the component's own zero set.
    pub fn verify_b0(&self, which: usize, radii: &[f64], n_angles: usize) -> Result<B0Report> {
        if radii.iter().any(|&r| r < 5.0) {
            return Err(Error::input("scaling-law radii should be at least 5"));
        }
        let product = if which == 0 {
            &self.product_f0
        } else {
            &self.product_f1
        };
        let eval = |z: C64| {
            if which == 0 {
                self.f0(z).log_modulus()
            } else {
                self.f1(z).log_modulus()
            }
        };
        let mut per_radius = Vec::new();
        let mut excluded = 0usize;
        let mut used = 0usize;
        let mut all: Vec<(f64, f64)> = Vec::new(); // (r, log|f|/r^2)
        for &r in radii {
            for j in 0..n_angles {
                let z = cis(TWO_PI * j as f64 / n_angles as f64) * r;
                if (z - product.lattice().nearest_point(z)).norm() <= 0.25 {
                    excluded += 1;
                    continue;
                }
                used += 1;
                all.push((r, eval(z) / (r * r)));
            }
        }
        if used == 0 {
            return Err(Error::numerical("all scaling-law samples were excluded"));
        }
        // median over the largest radius
        let r_top = radii.iter().cloned().fold(0.0f64, f64::max);
        let mut top: Vec<f64> = all
            .iter()
            .filter(|(r, _)| *r == r_top)
            .map(|&(_, v)| v)
            .collect();
        top.sort_by(f64::total_cmp);
        let c_estimate = top[top.len() / 2];
        let mut max_rel_dev = 0.0f64;
        for &r in radii {
            let dev = all
                .iter()
                .filter(|(rr, _)| *rr == r)
                .map(|&(_, v)| real::abs(v - c_estimate) / c_estimate)
                .fold(0.0f64, f64::max);
            per_radius.push((r, dev));
            max_rel_dev = max_rel_dev.max(dev);
        }
        Ok(B0Report {
            c_estimate,
            samples_used: used,
            excluded,
            max_rel_dev,
            per_radius,
        })
    }

    /// Minimum over the circle `|z| = r` of `log(|f0|^2 + |f1|^2)`.
    pub fn divergence_floor(&self, r: f64) -> f64 {
        let two_norm = |z: C64| {
            let (a, b) = (self.f0(z), self.f1(z));
            crate::curve::norm_log_from(&[a, b]) * 2.0
        };
        let n = 1024;
        let mut best = f64::INFINITY;
        let mut best_j = 0;
        for j in 0..n {
            let v = two_norm(cis(TWO_PI * j as f64 / n as f64) * r);
            if v < best {
                best = v;
                best_j = j;
            }
        }
        // local golden refinement
        let step = TWO_PI / n as f64;
        let (mut lo, mut hi) = (step * (best_j as f64 - 1.0), step * (best_j as f64 + 1.0));
        let phi = 0.6180339887498949;
        for _ in 0..50 {
            let x1 = hi - phi * (hi - lo);
            let x2 = lo + phi * (hi - lo);
            if two_norm(cis(x1) * r) <= two_norm(cis(x2) * r) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        best.min(two_norm(cis(0.5 * (lo + hi)) * r))
    }

    /// Pointwise gap between the full-curve spherical derivative squared and
    /// the `P^1` spherical derivative of `(f0, f1)` squared (with the norm
    /// ratio normalization), maximized over the circle `|z| = r`.
    pub fn pair_reduction_gap(&self, r: f64, n_angles: usize) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..n_angles {
            let z = cis(TWO_PI * j as f64 / n_angles as f64) * r;
            let full = self.curve.spherical_derivative(z);
            let evals = [self.f0(z), self.f1(z)];
            let pair = crate::curve::spherical_from(&evals);
            // normalization (F / (F + n - 1))^2 with F = |f0|^2 + |f1|^2
            let log_f = crate::curve::norm_log_from(&evals) * 2.0;
            let norm = if log_f > 40.0 {
                1.0
            } else {
                let f = real::exp(log_f);
                let frac = f / (f + (self.n as f64 - 1.0));
                frac * frac
            };
            worst = worst.max(real::abs(full * full - pair * pair * norm));
        }
        worst
    }

    /// Growth fit: `(rho, c1 at r = 20, c1 at r = 40, fit)`.
    pub fn growth_fit(&self) -> Result<(growth::OrderTypeFit, f64, f64)> {
        let radii = growth::geometric_radii(10.0, 40.0, 9)?;
        let mut pts = Vec::with_capacity(radii.len());
        for &r in &radii {
            pts.push((r, characteristic_jensen(&self.curve, r, 128)?));
        }
        let fit = growth::fit_order_type(&pts, (10.0, 40.0))?;
        let c_at = |r: f64| -> Result<f64> {
            Ok(characteristic_jensen(&self.curve, r, 128)? / (r * r))
        };
        Ok((fit, c_at(20.0)?, c_at(40.0)?))
    }
}

/// Divergence/boundedness record produced by [`ExampleCurve::verify_brody`].
#[derive(Debug, Clone)]
pub struct BrodyReport {
    /// `(r, min over |z| = r of log(|f0|^2 + |f1|^2))`, ascending radii.
    pub norm_floors: Vec<(f64, f64)>,
    /// Per-shell maxima of the full-curve spherical derivative.
    pub shell_sups: Vec<f64>,
    /// Max pointwise gap between the full and pair spherical derivatives
    /// (squared, normalized) at increasing radii.
    pub pair_gaps: Vec<(f64, f64)>,
    pub pass: bool,
}

/// Full verification record assembled by [`example_report`].
#[derive(Debug, Clone)]
pub struct ExampleReport {
    pub n: usize,
    pub beta: C64,
    pub elliptic_residual: f64,
    pub b0_f0: B0Report,
    pub b0_f1: B0Report,
    pub brody: BrodyReport,
    pub fit: growth::OrderTypeFit,
    pub c1_at_20: f64,
    pub c1_at_40: f64,
    pub pass: bool,
}

impl ExampleCurve {
    /// Norm divergence, shell-sup stability, and the pair-reduction gap in
    /// one record: the three observable faces of bounded spherical
    /// derivative with diverging component norm.
    pub fn verify_brody(&self, floor_radii: &[f64], shell_bounds: &[f64]) -> Result<BrodyReport> {
        let norm_floors: Vec<(f64, f64)> = floor_radii
            .iter()
            .map(|&r| (r, self.divergence_floor(r)))
            .collect();
        let mut shell_sups = Vec::new();
        for w in shell_bounds.windows(2) {
            shell_sups.push(self.curve.shell_sup(w[0], w[1], 0.08)?.max);
        }
        let pair_gaps: Vec<(f64, f64)> = [1.5, 5.0, 20.0]
            .iter()
            .map(|&r| (r, self.pair_reduction_gap(r, 128)))
            .collect();
        let lo = shell_sups.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = shell_sups.iter().cloned().fold(0.0f64, f64::max);
        let pass = norm_floors.windows(2).all(|w| w[1].1 > w[0].1)
            && hi / lo - 1.0 <= 0.05
            && pair_gaps[1].1 < pair_gaps[0].1
            && pair_gaps[2].1 <= pair_gaps[1].1 + 1e-12;
        Ok(BrodyReport {
            norm_floors,
            shell_sups,
            pair_gaps,
            pass,
        })
    }
}

/// Builds the example and runs every verification: ellipticity, the
/// quadratic scaling law for both components, the divergence/boundedness
/// record, and the growth fit with its stability check.
pub fn example_report(n: usize, max_direct_radius: f64) -> Result<ExampleReport> {
    let ex = build_example(n, max_direct_radius)?;
    let elliptic_residual = ex.verify_elliptic(200, 2025);
    let b0_f0 = ex.verify_b0(0, &[10.0, 20.0, 40.0], 256)?;
    let b0_f1 = ex.verify_b0(1, &[10.0, 20.0, 40.0], 256)?;
    let brody = ex.verify_brody(&[5.0, 10.0, 15.0, 20.0], &[0.0, 4.0, 8.0, 12.0])?;
    let (fit, c1_at_20, c1_at_40) = ex.growth_fit()?;
    let half_pi = core::f64::consts::FRAC_PI_2;
    let b0_ok = |r: &B0Report| {
        (r.c_estimate - half_pi).abs() <= 0.02 * half_pi
            && r.per_radius.last().unwrap().1 < r.per_radius.first().unwrap().1
    };
    let pass = elliptic_residual <= 1e-8
        && b0_ok(&b0_f0)
        && b0_ok(&b0_f1)
        && brody.pass
        && (fit.order_rho - 2.0).abs() <= 0.05
        && (c1_at_20 / c1_at_40 - 1.0).abs() <= 0.05;
    Ok(ExampleReport {
        n,
        beta: ex.beta,
        elliptic_residual,
        b0_f0,
        b0_f1,
        brody,
        fit,
        c1_at_20,
        c1_at_40,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ExampleCurve {
        build_example(2, 13.0).unwrap()
    }

    #[test]
    fn construction_and_component_count() {
        let ex = example();
        assert_eq!(ex.curve.components().len(), 3);
        let ex5 = build_example(5, 13.0).unwrap();
        assert_eq!(ex5.curve.components().len(), 6);
        assert!(build_example(1, 13.0).is_err());
    }

    #[test]
    fn periodizing_exponent_vanishes_for_the_square_pair() {
        // Two independent derivations (factor algebra over the half-shifted
        // product, and the Legendre relation applied to the half-period
        // translation factors) both give beta = 0 for this lattice pair: the
        // bare ratio h / f0 is already periodic over 1 +- i.
        let ex = example();
        assert!(ex.beta.norm() < 1e-9, "beta = {}", ex.beta);
    }

    #[test]
    fn lattice_zeros_are_zeros_of_components() {
        let ex = example();
        assert_eq!(ex.f0(C64::new(1.0, 0.0)).log_modulus(), f64::NEG_INFINITY);
        assert_eq!(ex.f1(C64::new(0.5, 0.5)).log_modulus(), f64::NEG_INFINITY);
        // disjoint zero sets: min distance between the two lattices
        let d = (C64::new(0.5, 0.5) - C64::new(0.0, 0.0)).norm();
        assert!((d - core::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        // and f1 does not vanish on the integer lattice
        assert!(ex.f1(C64::new(1.0, 0.0)).log_modulus().is_finite());
    }

    #[test]
    fn ratio_is_doubly_periodic_over_one_plus_minus_i() {
        let ex = example();
        let res = ex.verify_elliptic(200, 2025);
        assert!(res <= 1e-8, "elliptic residual {res}");
    }

    #[test]
    fn unit_translation_is_not_a_period() {
        let ex = example();
        let res = ex.period_residual(
            100,
            77,
            [C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
        );
        assert!(res > 1e-2, "translation by 1 looks periodic: {res}");
    }

    #[test]
    fn perturbed_exponent_breaks_periodicity() {
        let ex = example();
        let mut broken = ex.clone();
        broken.beta += C64::new(0.1, 0.0);
        // rebuild the curve with the wrong exponent
        let mut comps = ex.curve.components().to_vec();
        comps[1] = EntireComponent::Scaled {
            base: Box::new(EntireComponent::CanonicalProduct(ex.product_f1.clone())),
            exp_linear: broken.beta,
        };
        broken.curve = HoloCurve::new(comps).unwrap();
        let res = broken.verify_elliptic(100, 11);
        assert!(res > 1e-2, "wrong exponent not detected: {res}");
    }

    #[test]
    fn scaling_law_constant_is_half_pi() {
        let ex = example();
        for which in [0usize, 1] {
            let rep = ex.verify_b0(which, &[10.0, 20.0, 40.0], 256).unwrap();
            let expect = core::f64::consts::PI / 2.0;
            assert!(
                (rep.c_estimate - expect).abs() <= 0.02 * expect,
                "component {which}: c = {} vs {expect}",
                rep.c_estimate
            );
            // deviations shrink with radius
            assert!(
                rep.per_radius.last().unwrap().1 < rep.per_radius.first().unwrap().1,
                "component {which}: deviations {:?}",
                rep.per_radius
            );
            assert!(rep.excluded > 0);
        }
    }

    #[test]
    fn norm_floor_increases() {
        let ex = example();
        let floors: Vec<f64> = [5.0, 10.0, 15.0, 20.0]
            .iter()
            .map(|&r| ex.divergence_floor(r))
            .collect();
        for w in floors.windows(2) {
            assert!(w[1] > w[0], "floors {floors:?}");
        }
        assert!(floors[3] > 100.0, "floor at 20 is {}", floors[3]);
    }

    #[test]
    fn shell_sups_are_stable() {
        let ex = example();
        let mut sups = Vec::new();
        let bounds = [0.0, 4.0, 8.0, 12.0];
        for w in bounds.windows(2) {
            let s = ex.curve.shell_sup(w[0], w[1], 0.08).unwrap();
            sups.push(s.max);
        }
        let lo = sups.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sups.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi / lo - 1.0 <= 0.05, "shell sups {sups:?}");
    }

    #[test]
    fn pair_reduction_gap_decays() {
        let ex = example();
        let g1 = ex.pair_reduction_gap(1.5, 128);
        let g2 = ex.pair_reduction_gap(5.0, 128);
        let g3 = ex.pair_reduction_gap(20.0, 128);
        assert!(g2 < g1, "gap at 5 = {g2} vs at 1.5 = {g1}");
        assert!(g3 <= g2 + 1e-12, "gap at 20 = {g3} vs at 5 = {g2}");
    }

    #[test]
    fn growth_is_quadratic_with_stable_constant() {
        let ex = example();
        let (fit, c20, c40) = ex.growth_fit().unwrap();
        assert!(
            (fit.order_rho - 2.0).abs() <= 0.05,
            "order {}",
            fit.order_rho
        );
        assert!(
            (c20 / c40 - 1.0).abs() <= 0.05,
            "c1 at 20 = {c20}, at 40 = {c40}"
        );
        // the growth constant tracks pi/2
        let expect = core::f64::consts::PI / 2.0;
        assert!((c40 - expect).abs() < 0.1 * expect, "c1 = {c40}");
    }

    #[test]
    fn padding_components_change_little() {
        let e2 = example();
        let e5 = build_example(5, 13.0).unwrap();
        let mut rng = SplitMix64::new(6);
        let bound = 0.5 * (4.0f64).ln(); // (1/2) log(n-1) for n = 5
        for _ in 0..100 {
            let z = rng.complex_square(6.0);
            let du = e5.curve.norm_log(z) - e2.curve.norm_log(z);
            assert!(du >= -1e-12 && du <= bound + 1e-12, "du = {du}");
        }
    }
}
