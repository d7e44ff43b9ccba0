//! Holomorphic curves `C -> P^n` as lists of entire components: the norm
//! log `u = log ||f||`, the spherical derivative, its supremum estimate over
//! discs, and the coordinate shear `f_0 -> f_0 + c f_1`.

use crate::component::EntireComponent;
use crate::error::{Error, Result};
use crate::num::{cis, real, SplitMix64};
use crate::scaled::ScaledValue;
use crate::C64;
use alloc::vec::Vec;

/// A curve given by `n + 1` entire components without common zeros.
#[derive(Debug, Clone)]
pub struct HoloCurve {
    components: Vec<EntireComponent>,
}

/// Everything about the curve at one point.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub z: C64,
    /// `u = log ||f||`.
    pub u: f64,
    /// `u_j = log |f_j|` per component.
    pub u_components: Vec<f64>,
    /// Spherical derivative `||f'||`.
    pub spherical: f64,
}

/// A per-annulus maximum of the spherical derivative.
#[derive(Debug, Clone, Copy)]
pub struct ShellMax {
    pub r_lo: f64,
    pub r_hi: f64,
    pub max: f64,
    pub argmax: C64,
}

/// Grid estimate of `sup ||f'||` over a disc, with per-shell maxima for
/// stability reporting.
#[derive(Debug, Clone)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: C64,
    pub shells: Vec<ShellMax>,
}

impl HoloCurve {
    /// Builds and validates a curve: at least two components, each valid,
    /// and no common zero detected on a deterministic random sample.
    pub fn new(components: Vec<EntireComponent>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::input("a curve needs at least two components"));
        }
        for c in &components {
            c.validate()?;
        }
        let curve = Self { components };
        curve.spot_check_no_common_zeros()?;
        Ok(curve)
    }

    fn spot_check_no_common_zeros(&self) -> Result<()> {
        let max_u = |z: C64| {
            self.components
                .iter()
                .map(|c| c.eval(z).log_modulus())
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let mut rng = SplitMix64::new(0x5eed_cafe);
        let mut worst = (C64::new(0.0, 0.0), max_u(C64::new(0.0, 0.0)));
        for i in 0..10_000 {
            // Cluster most samples near the origin, some farther out.
            let r = if i % 8 == 0 { 20.0 } else { 3.0 };
            let z = rng.complex_square(r);
            let u = max_u(z);
            if u == f64::NEG_INFINITY {
                return Err(Error::input(alloc::format!(
                    "components share a zero at z = {z}"
                )));
            }
            if u < worst.1 {
                worst = (z, u);
            }
        }
        // Descend from the weakest sample. A common zero is a logarithmic
        // pit of max_j log|f_j|: the value at the bottom sits far below a
        // small ring around it, which distinguishes it from a smooth valley
        // of the scales (where no component vanishes).
        let (mut z, mut u) = worst;
        let mut step = 0.5;
        for _ in 0..400 {
            let mut moved = false;
            for dir in [
                C64::new(1.0, 0.0),
                C64::new(-1.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, -1.0),
            ] {
                let cand = z + dir * step;
                if cand.norm() > 25.0 {
                    continue;
                }
                let v = max_u(cand);
                if v < u {
                    z = cand;
                    u = v;
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
                if step < 1e-13 {
                    break;
                }
            }
        }
        if u < -27.0 {
            let ring = (0..8)
                .map(|j| max_u(z + crate::num::cis(core::f64::consts::TAU * j as f64 / 8.0) * 1e-3))
                .fold(f64::INFINITY, f64::min);
            if !(u >= ring - 5.0) {
                return Err(Error::input(alloc::format!(
                    "components share a zero near z = {z}"
                )));
            }
        }
        Ok(())
    }

    pub fn components(&self) -> &[EntireComponent] {
        &self.components
    }

    /// Target dimension `n` (one less than the number of components).
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn eval_components(&self, z: C64) -> Vec<ScaledValue> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// `u(z) = log sqrt(sum |f_j|^2)` by a shared-exponent log-sum; never
    /// overflows for quadratic-growth components.
    pub fn norm_log(&self, z: C64) -> f64 {
        let evals = self.eval_components(z);
        norm_log_from(&evals)
    }

    /// Spherical derivative `||f'||(z)`.
    pub fn spherical_derivative(&self, z: C64) -> f64 {
        let evals = self.eval_components(z);
        spherical_from(&evals)
    }

    pub fn point(&self, z: C64) -> CurvePoint {
        let evals = self.eval_components(z);
        CurvePoint {
            z,
            u: norm_log_from(&evals),
            u_components: evals.iter().map(|sv| sv.log_modulus()).collect(),
            spherical: spherical_from(&evals),
        }
    }

    /// Maximum of the spherical derivative over the polar grid of the disc
    /// `|z| <= radius` with step at most `resolution`, locally refined around
    /// each maximum. Shell maxima over four equal annuli gauge stability.
    pub fn sup_spherical(&self, radius: f64, resolution: f64) -> Result<SupEstimate> {
        if !(resolution > 0.0) || !(radius > 0.0) {
            return Err(Error::input("radius and resolution must be positive"));
        }
        let bounds: Vec<f64> = (0..=4).map(|i| radius * i as f64 / 4.0).collect();
        let mut shells = Vec::new();
        for w in bounds.windows(2) {
            shells.push(self.shell_sup(w[0], w[1], resolution)?);
        }
        let mut best = ShellMax {
            r_lo: 0.0,
            r_hi: radius,
            max: f64::NEG_INFINITY,
            argmax: C64::new(0.0, 0.0),
        };
        for s in &shells {
            if s.max > best.max {
                best.max = s.max;
                best.argmax = s.argmax;
            }
        }
        Ok(SupEstimate {
            value: best.max,
            argmax: best.argmax,
            shells,
        })
    }

    /// Grid + local-refinement maximum of `||f'||` over the annulus
    /// `r_lo < |z| <= r_hi` (a disc when `r_lo == 0`).
    pub fn shell_sup(&self, r_lo: f64, r_hi: f64, resolution: f64) -> Result<ShellMax> {
        if !(r_hi > r_lo && r_lo >= 0.0 && resolution > 0.0) {
            return Err(Error::input("bad shell bounds"));
        }
        let mut max = f64::NEG_INFINITY;
        let mut argmax = C64::new(0.0, 0.0);
        let mut consider = |s: f64, z: C64| {
            if s > max {
                max = s;
                argmax = z;
            }
        };
        if r_lo == 0.0 {
            consider(self.spherical_derivative(C64::new(0.0, 0.0)), C64::new(0.0, 0.0));
        }
        let n_rings = ((r_hi - r_lo) / resolution) as usize + 1;
        let dr = (r_hi - r_lo) / n_rings as f64;
        for i in 1..=n_rings {
            let rho = r_lo + dr * i as f64;
            let n_theta = (core::f64::consts::TAU * rho / resolution) as usize + 8;
            for j in 0..n_theta {
                let theta = core::f64::consts::TAU * j as f64 / n_theta as f64;
                let z = cis(theta) * rho;
                consider(self.spherical_derivative(z), z);
            }
        }
        // Compass refinement with shrinking step, clamped to the annulus.
        let mut step = resolution;
        let mut z = argmax;
        let mut val = max;
        for _ in 0..200 {
            let mut improved = false;
            for dir in [
                C64::new(1.0, 0.0),
                C64::new(-1.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, -1.0),
            ] {
                let mut cand = z + dir * step;
                let r = cand.norm();
                if r > r_hi {
                    cand *= r_hi / r;
                }
                if r < r_lo {
                    if r == 0.0 {
                        continue;
                    }
                    cand *= r_lo / r;
                }
                let s = self.spherical_derivative(cand);
                if s > val {
                    val = s;
                    z = cand;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.6180339887498949;
                if step < 1e-8 * (1.0 + z.norm()) {
                    break;
                }
            }
        }
        Ok(ShellMax {
            r_lo,
            r_hi,
            max: val,
            argmax: z,
        })
    }

    /// Composition with the projective shear replacing `f_0` by
    /// `f_0 + c f_1`; all other components (hence the hyperplanes
    /// `{w_j = 0}, j >= 1`) are unchanged.
    pub fn shear_coordinates(&self, c: C64) -> Result<HoloCurve> {
        if self.components.len() < 2 {
            return Err(Error::input("shear needs at least two components"));
        }
        if c == C64::new(0.0, 0.0) {
            return Ok(self.clone());
        }
        let new0 = EntireComponent::Combination(alloc::vec![
            (C64::new(1.0, 0.0), self.components[0].clone()),
            (c, self.components[1].clone()),
        ]);
        // Degeneracy probe: f_0 + c f_1 must not vanish identically.
        let mut rng = SplitMix64::new(0xdead_beef);
        let mut degenerate = true;
        for _ in 0..16 {
            let z = rng.complex_square(2.5);
            let sv = new0.eval(z);
            let parts_scale = self.components[0]
                .eval(z)
                .log_modulus()
                .max(self.components[1].eval(z).log_modulus() + real::ln(c.norm()));
            if sv.log_modulus() > parts_scale - 27.6 {
                degenerate = false;
                break;
            }
        }
        if degenerate {
            return Err(Error::input(
                "shear coefficient makes the first two components proportional",
            ));
        }
        let mut components = self.components.clone();
        components[0] = new0;
        Ok(HoloCurve { components })
    }
}

/// `log ||f||` from component evaluations.
pub fn norm_log_from(evals: &[ScaledValue]) -> f64 {
    let umax = evals
        .iter()
        .map(|sv| sv.log_modulus())
        .fold(f64::NEG_INFINITY, f64::max);
    if umax == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for sv in evals {
        let u = sv.log_modulus();
        if u > f64::NEG_INFINITY {
            acc += real::exp(2.0 * (u - umax));
        }
    }
    umax + 0.5 * real::ln(acc)
}

/// `||f'||` from component evaluations: all components are rescaled by one
/// shared exponent, which cancels exactly between the pair sums and the norm.
pub fn spherical_from(evals: &[ScaledValue]) -> f64 {
    let smax = evals
        .iter()
        .map(|sv| sv.log_scale)
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<(C64, C64)> = evals
        .iter()
        .map(|sv| {
            let w = real::exp(sv.log_scale - smax);
            (sv.unit * w, sv.deriv * w)
        })
        .collect();
    let mut denom = 0.0;
    for (v, _) in &scaled {
        denom += v.norm_sqr();
    }
    if denom == 0.0 {
        // The dominant scale belongs to a vanishing component; rescale by the
        // largest modulus instead (the result may legitimately be huge).
        let umax = evals
            .iter()
            .map(|sv| sv.log_modulus())
            .fold(f64::NEG_INFINITY, f64::max);
        if umax == f64::NEG_INFINITY {
            return 0.0;
        }
        let scaled: Vec<(C64, C64)> = evals
            .iter()
            .map(|sv| {
                let w = real::exp(sv.log_scale - umax);
                (sv.unit * w, sv.deriv * w)
            })
            .collect();
        return spherical_scaled(&scaled);
    }
    spherical_scaled(&scaled)
}

fn spherical_scaled(scaled: &[(C64, C64)]) -> f64 {
    let mut denom = 0.0;
    for (v, _) in scaled {
        denom += v.norm_sqr();
    }
    let mut num = 0.0;
    for i in 0..scaled.len() {
        for j in (i + 1)..scaled.len() {
            let w = scaled[i].1 * scaled[j].0 - scaled[i].0 * scaled[j].1;
            num += w.norm_sqr();
        }
    }
    real::sqrt(num) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::{ExpTerm, Quadratic};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn curve_z() -> HoloCurve {
        HoloCurve::new(alloc::vec![EntireComponent::id_z(), EntireComponent::one()]).unwrap()
    }

    fn curve_exp() -> HoloCurve {
        HoloCurve::new(alloc::vec![EntireComponent::exp_z(), EntireComponent::one()]).unwrap()
    }

    fn curve_sin() -> HoloCurve {
        HoloCurve::new(alloc::vec![EntireComponent::sin(), EntireComponent::one()]).unwrap()
    }

    #[test]
    fn norm_log_examples() {
        let both_one = HoloCurve::new(alloc::vec![
            EntireComponent::one(),
            EntireComponent::one()
        ])
        .unwrap();
        assert!((both_one.norm_log(c(5.0, -3.0)) - 0.5 * 2.0f64.ln()).abs() < 1e-15);
        assert!(curve_z().norm_log(c(0.0, 0.0)).abs() < 1e-15);
        // dominant-term limit without overflow
        let u = curve_exp().norm_log(c(100.0, 0.0));
        assert!((u - 100.0).abs() < 1e-12);
    }

    #[test]
    fn point_log_sum_consistency() {
        let curves = [curve_z(), curve_exp(), curve_sin()];
        let mut rng = SplitMix64::new(31);
        for _ in 0..200 {
            let z = rng.complex_square(8.0);
            for cv in &curves {
                let pt = cv.point(z);
                let umax = pt
                    .u_components
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max);
                let lse = umax
                    + 0.5
                        * pt.u_components
                            .iter()
                            .filter(|u| u.is_finite())
                            .map(|u| (2.0 * (u - umax)).exp())
                            .sum::<f64>()
                            .ln();
                assert!((pt.u - lse).abs() < 1e-12);
                assert!(pt.spherical >= 0.0);
            }
        }
    }

    #[test]
    fn spherical_closed_forms() {
        // (z, 1) at 0: |1*1 - 0| / 1 = 1
        assert!((curve_z().spherical_derivative(c(0.0, 0.0)) - 1.0).abs() < 1e-14);
        // constant curve: 0 everywhere
        let cc = HoloCurve::new(alloc::vec![
            EntireComponent::Constant(c(2.0, 1.0)),
            EntireComponent::one()
        ])
        .unwrap();
        assert_eq!(cc.spherical_derivative(c(3.0, 3.0)), 0.0);
        // (e^z, 1) on Re z = 0: |e^z|/(1+|e^z|^2) = 1/2
        let e = curve_exp();
        for y in [0.0, 1.0, -2.5, 10.0] {
            assert!((e.spherical_derivative(c(0.0, y)) - 0.5).abs() < 1e-14);
        }
        // closed form off the axis too
        let s = e.spherical_derivative(c(1.0, 0.0));
        let t = 1.0f64.exp();
        assert!((s - t / (1.0 + t * t)).abs() < 1e-14);
    }

    #[test]
    fn spherical_at_component_zero_is_clean() {
        // (sin z, 1) at z = 0: |cos 0| / (1 + 0) = 1, no 0/0
        let s = curve_sin().spherical_derivative(c(0.0, 0.0));
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_spherical_exp_curve() {
        let sup = curve_exp().sup_spherical(20.0, 0.25).unwrap();
        assert!((sup.value - 0.5).abs() < 1e-6, "sup = {}", sup.value);
        // every shell that intersects Re z = 0 sees the same max
        for s in &sup.shells {
            assert!((s.max - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn sup_spherical_rational_curve() {
        let sup = curve_z().sup_spherical(20.0, 0.25).unwrap();
        assert!((sup.value - 1.0).abs() < 1e-9);
        assert!(sup.argmax.norm() < 1e-4);
    }

    #[test]
    fn shear_identity_and_zero_creation() {
        let e = curve_exp();
        let same = e.shear_coordinates(c(0.0, 0.0)).unwrap();
        let z = c(0.7, -0.3);
        assert!((same.norm_log(z) - e.norm_log(z)).abs() < 1e-15);
        // c = -1 turns e^z into e^z - 1 with zeros at 2 pi i k
        let sheared = e.shear_coordinates(c(-1.0, 0.0)).unwrap();
        let u0 = sheared.point(c(0.0, core::f64::consts::TAU)).u_components[0];
        assert!(u0 < -14.0, "u0 = {u0}");
    }

    #[test]
    fn shear_bounded_distortion() {
        let e = curve_exp();
        let sheared = e.shear_coordinates(c(-1.0, 0.0)).unwrap();
        let mut rng = SplitMix64::new(17);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for _ in 0..1000 {
            let z = rng.complex_square(10.0);
            let a = e.spherical_derivative(z);
            let b = sheared.spherical_derivative(z);
            if a > 1e-300 && b > 1e-300 {
                let ratio = b / a;
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        assert!(hi <= 10.0 && lo >= 0.1, "ratio range [{lo}, {hi}]");
    }

    #[test]
    fn shear_detects_degenerate() {
        // (e^z, e^z) is already degenerate as a curve, but the shear of
        // (e^z, e^z scaled) by the right constant zeroes the first slot.
        let curve = HoloCurve {
            components: alloc::vec![EntireComponent::exp_z(), EntireComponent::exp_z()],
        };
        let r = curve.shear_coordinates(c(-1.0, 0.0));
        assert!(r.is_err());
    }

    #[test]
    fn projective_invariance() {
        // multiplying every component by e^{Q} moves u by Re Q and leaves
        // the spherical derivative unchanged
        let q = Quadratic::new(c(0.3, -0.1), c(0.2, 0.5), c(-0.04, 0.02));
        let p1 = Quadratic::new(c(0.0, 0.0), c(1.0, 0.0), c(0.01, 0.0));
        let p2 = Quadratic::new(c(0.1, 0.0), c(-0.5, 0.2), c(0.0, 0.015));
        let add = |a: Quadratic, b: Quadratic| {
            Quadratic::new(a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2)
        };
        let base = HoloCurve::new(alloc::vec![
            EntireComponent::ExpPoly(p1),
            EntireComponent::ExpPoly(p2)
        ])
        .unwrap();
        let scaled = HoloCurve::new(alloc::vec![
            EntireComponent::ExpPoly(add(p1, q)),
            EntireComponent::ExpPoly(add(p2, q))
        ])
        .unwrap();
        let mut rng = SplitMix64::new(23);
        for _ in 0..100 {
            let z = rng.complex_square(6.0);
            let du = scaled.norm_log(z) - base.norm_log(z);
            assert!((du - q.eval(z).re).abs() < 1e-10);
            let ds = scaled.spherical_derivative(z) - base.spherical_derivative(z);
            assert!(ds.abs() < 1e-10 * (1.0 + base.spherical_derivative(z)));
        }
    }

    #[test]
    fn subharmonic_circle_mean_and_positivity() {
        let curves = [curve_z(), curve_exp(), curve_sin()];
        let mut rng = SplitMix64::new(41);
        for _ in 0..200 {
            let a = rng.complex_square(5.0);
            let rho = rng.uniform(0.1, 2.0);
            for cv in &curves {
                let ua = cv.norm_log(a);
                let mut mean = 0.0;
                let m = 512;
                for j in 0..m {
                    let t = core::f64::consts::TAU * j as f64 / m as f64;
                    mean += cv.norm_log(a + cis(t) * rho);
                }
                mean /= m as f64;
                assert!(ua <= mean + 1e-9, "u({a}) = {ua} > mean {mean}");
                // constant-1 component present: u >= 0
                assert!(ua >= 0.0);
            }
        }
    }

    #[test]
    fn laplacian_identity_pins_pair_convention() {
        // (1/2pi) Lap u = (1/pi) ||f'||^2; five-point Laplacian error drops
        // ~4x when h halves. With an ordered-pair reading of the spherical
        // derivative the two sides differ by a factor 2 and this fails.
        let curves = [curve_z(), curve_exp(), curve_sin()];
        let mut rng = SplitMix64::new(53);
        for cv in &curves {
            for &h in &[0.02f64] {
                let mut worst_ratio: f64 = 0.0;
                for _ in 0..40 {
                    let z = rng.complex_square(3.0);
                    let lap = |h: f64| {
                        (cv.norm_log(z + c(h, 0.0))
                            + cv.norm_log(z - c(h, 0.0))
                            + cv.norm_log(z + c(0.0, h))
                            + cv.norm_log(z - c(0.0, h))
                            - 4.0 * cv.norm_log(z))
                            / (h * h)
                    };
                    let s = cv.spherical_derivative(z);
                    let target = s * s / core::f64::consts::PI;
                    let e1 = (lap(h) / core::f64::consts::TAU - target).abs();
                    let e2 = (lap(h / 2.0) / core::f64::consts::TAU - target).abs();
                    // quadratic convergence, allowing noise floor
                    assert!(e2 <= e1 / 3.0 + 1e-9, "e({h}) = {e1}, e({}) = {e2}", h / 2.0);
                    worst_ratio = worst_ratio.max(e1 / (1.0 + target));
                }
                assert!(worst_ratio < 0.05 * h * h * 100.0);
            }
        }
    }

    #[test]
    fn rejects_common_zero_curves() {
        let r = HoloCurve::new(alloc::vec![
            EntireComponent::id_z(),
            EntireComponent::Polynomial(alloc::vec![c(0.0, 0.0), c(2.0, 0.0)]),
        ]);
        assert!(r.is_err());
        // (sin z, 2 sin z)-like pair via exp sums
        let r = HoloCurve::new(alloc::vec![
            EntireComponent::sin(),
            EntireComponent::ExpSum(alloc::vec![
                ExpTerm::new(c(0.0, -1.0), c(0.0, 1.0)),
                ExpTerm::new(c(0.0, 1.0), c(0.0, -1.0)),
            ]),
        ]);
        assert!(r.is_err());
    }
}
