//! Exact verification environment for the boundary-gradient bound on
//! positive harmonic functions: if `u >= 0` is harmonic on the closed disc
//! `B(a, R)` and vanishes at a boundary point `z1`, then
//! `|grad u(z1)| >= u(a) / (2R)`.
//!
//! Test cases are harmonic POLYNOMIALS built from nonnegative trigonometric
//! boundary data, so the hypotheses hold exactly and values and gradients
//! are closed-form: no quadrature enters a correctness-critical suite.

use crate::error::{Error, Result};
use crate::num::{cis, real, SplitMix64};
use crate::C64;
use alloc::vec::Vec;

/// A disc `B(a, R)` with boundary data `h(theta) = sum c_k e^{i k theta}`
/// (`c_{-k} = conj(c_k)` implied), `h >= 0`, vanishing at `theta1`.
///
/// The harmonic extension is the harmonic polynomial
/// `u(a + rho e^{i phi}) = sum_k c_k (rho/R)^{|k|} e^{i k phi}`.
#[derive(Debug, Clone)]
pub struct HarmonicDiscCase {
    pub center: C64,
    pub radius: f64,
    /// `c_0 .. c_K`; `c_0` must be real for `h` to be real.
    pub boundary_coeffs: Vec<C64>,
    pub zero_angle: f64,
}

impl HarmonicDiscCase {
    pub fn new(center: C64, radius: f64, boundary_coeffs: Vec<C64>, zero_angle: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::input("disc radius must be positive"));
        }
        if boundary_coeffs.is_empty() {
            return Err(Error::input("boundary data needs at least c_0"));
        }
        if real::abs(boundary_coeffs[0].im) > 1e-12 {
            return Err(Error::input("c_0 must be real for real boundary data"));
        }
        Ok(Self {
            center,
            radius,
            boundary_coeffs,
            zero_angle,
        })
    }

    /// Boundary density `h(theta)`.
    pub fn boundary_value(&self, theta: f64) -> f64 {
        let mut acc = self.boundary_coeffs[0].re;
        for (k, c) in self.boundary_coeffs.iter().enumerate().skip(1) {
            acc += 2.0 * (*c * cis(k as f64 * theta)).re;
        }
        acc
    }

    /// The boundary point where `h` vanishes.
    pub fn zero_point(&self) -> C64 {
        self.center + cis(self.zero_angle) * self.radius
    }

    /// Exact value and gradient of the harmonic extension at `z` in the
    /// closed disc. The gradient is returned as `u_x + i u_y = conj(F'(z))`
    /// for the analytic completion `F = c_0 + 2 sum c_k ((z-a)/R)^k`.
    pub fn eval(&self, z: C64) -> Result<(f64, C64)> {
        let w = (z - self.center) / self.radius;
        if w.norm() > 1.0 + 1e-12 {
            return Err(Error::input("point outside the closed disc"));
        }
        let mut f = C64::new(self.boundary_coeffs[0].re, 0.0);
        let mut fp = C64::new(0.0, 0.0);
        let mut wk = C64::new(1.0, 0.0); // w^{k-1}
        for (k, c) in self.boundary_coeffs.iter().enumerate().skip(1) {
            fp += 2.0 * *c * (k as f64) * wk;
            wk *= w;
            f += 2.0 * *c * wk;
        }
        Ok((f.re, (fp / self.radius).conj()))
    }

    /// `|grad u(z1)| - u(a) / (2R)`: nonnegative by the gradient bound.
    pub fn lemma1_margin(&self) -> f64 {
        let (_, grad) = self
            .eval(self.zero_point())
            .expect("boundary point is in the closed disc");
        grad.norm() - self.boundary_coeffs[0].re / (2.0 * self.radius)
    }

    /// Minimum of `u` over the circle `|z - a| = t`, by golden-section around
    /// a 256-point coarse scan.
    pub fn circle_min(&self, t: f64) -> f64 {
        let u_at = |theta: f64| self.eval(self.center + cis(theta) * t).unwrap().0;
        let n = 256;
        let mut best_j = 0;
        let mut best = f64::INFINITY;
        for j in 0..n {
            let v = u_at(core::f64::consts::TAU * j as f64 / n as f64);
            if v < best {
                best = v;
                best_j = j;
            }
        }
        let step = core::f64::consts::TAU / n as f64;
        let mut lo = step * (best_j as f64 - 1.0);
        let mut hi = step * (best_j as f64 + 1.0);
        let phi = 0.6180339887498949;
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let mut f1 = u_at(x1);
        let mut f2 = u_at(x2);
        while hi - lo > 1e-10 {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = u_at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = u_at(x2);
            }
        }
        best.min(f1).min(f2)
    }

    /// Profile `b(t) = min over |z-a| = t of u` on a radius grid, with the
    /// three structural checks reported: `b` nonincreasing, the two-sided
    /// Harnack lower bound, and `t b'(t)` nonincreasing (discrete form).
    pub fn circle_min_profile(&self, t_grid: &[f64]) -> Result<MinProfile> {
        if t_grid.is_empty()
            || t_grid.iter().any(|&t| !(t > 0.0 && t <= self.radius))
            || t_grid.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::input(
                "profile grid must be increasing inside (0, R]",
            ));
        }
        let values: Vec<(f64, f64)> = t_grid.iter().map(|&t| (t, self.circle_min(t))).collect();
        let u_center = self.boundary_coeffs[0].re;
        let mut monotone_defect = 0.0f64;
        let mut harnack_defect = 0.0f64;
        for w in values.windows(2) {
            monotone_defect = monotone_defect.max(w[1].1 - w[0].1);
        }
        for &(t, b) in &values {
            let harnack = u_center * (self.radius - t) / (self.radius + t);
            harnack_defect = harnack_defect.max(harnack - b);
        }
        // discrete t b'(t) on midpoints must be nonincreasing
        let mut slopes = Vec::new();
        for w in values.windows(2) {
            let tm = 0.5 * (w[0].0 + w[1].0);
            let d = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            slopes.push(tm * d);
        }
        let mut hadamard_defect = 0.0f64;
        for w in slopes.windows(2) {
            hadamard_defect = hadamard_defect.max(w[1] - w[0]);
        }
        Ok(MinProfile {
            values,
            monotone_defect,
            harnack_defect,
            hadamard_defect,
        })
    }
}

/// `b(t)` samples and the worst defect of each structural check (all should
/// be `<= 0` up to rounding).
#[derive(Debug, Clone)]
pub struct MinProfile {
    pub values: Vec<(f64, f64)>,
    pub monotone_defect: f64,
    pub harnack_defect: f64,
    pub hadamard_defect: f64,
}

/// Deterministic generator of exact test cases:
/// `h(theta) = (1 - cos(theta - theta1)) (|q(theta)|^2 + delta)` with `q` a
/// random trigonometric polynomial of degree `< degree`, `delta = 1e-3`.
/// Nonnegativity and the boundary zero hold by construction.
pub fn sample_positive_boundary(
    seed: u64,
    degree: usize,
    zero_angle: f64,
    center: C64,
    radius: f64,
) -> Result<HarmonicDiscCase> {
    if degree < 1 {
        return Err(Error::input("generator needs degree >= 1"));
    }
    let mut rng = SplitMix64::split(seed, 0x9a7);
    let q: Vec<C64> = (0..degree)
        .map(|_| C64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        .collect();
    boundary_case_from_factors(&q, 1e-3, zero_angle, center, radius)
}

/// Exact Fourier coefficients of
/// `(1 - cos(theta - theta1)) (|q(theta)|^2 + delta)`.
pub fn boundary_case_from_factors(
    q: &[C64],
    delta: f64,
    zero_angle: f64,
    center: C64,
    radius: f64,
) -> Result<HarmonicDiscCase> {
    let deg = q.len();
    // |q|^2 + delta has coefficients d_m = sum_a q_a conj(q_{a-m}), m = -K..K
    let mut d = alloc::vec![C64::new(0.0, 0.0); deg.max(1)];
    d[0] = C64::new(delta, 0.0);
    for m in 0..deg {
        for a in m..deg {
            d[m] += q[a] * q[a - m].conj();
        }
    }
    // multiply by 1 - cos(theta - t1) = 1 - (e^{i(theta-t1)} + e^{-i(theta-t1)})/2:
    // c_k = d_k - e^{-i t1} d_{k-1}/2 - e^{i t1} d_{k+1}/2  (with d_{-m} = conj(d_m))
    let dm = |m: i64| -> C64 {
        let mm = m.unsigned_abs() as usize;
        if mm >= deg.max(1) {
            C64::new(0.0, 0.0)
        } else if m >= 0 {
            d[mm]
        } else {
            d[mm].conj()
        }
    };
    let rot = cis(zero_angle);
    let top = d.len() as i64;
    let mut coeffs = Vec::with_capacity(d.len() + 1);
    for k in 0..=top {
        let c = dm(k) - rot.conj() * dm(k - 1) * 0.5 - rot * dm(k + 1) * 0.5;
        coeffs.push(c);
    }
    HarmonicDiscCase::new(center, radius, coeffs, zero_angle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn one_minus_cos() -> HarmonicDiscCase {
        // h = 1 - cos theta: c0 = 1, c1 = -1/2
        HarmonicDiscCase::new(
            c(0.0, 0.0),
            1.0,
            alloc::vec![c(1.0, 0.0), c(-0.5, 0.0)],
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn constant_boundary_data() {
        let case =
            HarmonicDiscCase::new(c(0.3, -0.2), 2.0, alloc::vec![c(1.0, 0.0)], 0.7).unwrap();
        let (u, g) = case.eval(c(0.5, 0.5)).unwrap();
        assert!((u - 1.0).abs() < 1e-15);
        assert!(g.norm() < 1e-15);
        let profile = case.circle_min_profile(&[0.5, 1.0, 1.5, 2.0]).unwrap();
        assert!(profile.monotone_defect < 1e-12);
        assert!(profile.harnack_defect < 1e-12);
        assert!(profile.hadamard_defect < 1e-12);
    }

    #[test]
    fn one_minus_cos_closed_form() {
        // u(z) = 1 - Re z, |grad u| = 1, margin = 1 - 1/2
        let case = one_minus_cos();
        let (u, g) = case.eval(c(0.25, 0.4)).unwrap();
        assert!((u - 0.75).abs() < 1e-15);
        assert!((g - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((case.lemma1_margin() - 0.5).abs() < 1e-15);
        // b(t) = 1 - t with t b' = -t
        let grid: Vec<f64> = (1..=16).map(|i| i as f64 / 16.0).collect();
        let profile = case.circle_min_profile(&grid).unwrap();
        for &(t, b) in &profile.values {
            assert!((b - (1.0 - t)).abs() < 1e-9, "b({t}) = {b}");
        }
        assert!(profile.monotone_defect < 1e-9);
        assert!(profile.harnack_defect < 1e-9);
        assert!(profile.hadamard_defect < 1e-9);
    }

    #[test]
    fn squared_factor_closed_form() {
        // h = (1 - cos theta)^2: c0 = 3/2, c1 = -1, c2 = 1/4;
        // u(0) = 3/2, |grad u(1)| = 1, margin 1/4
        let case = HarmonicDiscCase::new(
            c(0.0, 0.0),
            1.0,
            alloc::vec![c(1.5, 0.0), c(-1.0, 0.0), c(0.25, 0.0)],
            0.0,
        )
        .unwrap();
        let (u0, _) = case.eval(c(0.0, 0.0)).unwrap();
        assert!((u0 - 1.5).abs() < 1e-15);
        let (_, g) = case.eval(c(1.0, 0.0)).unwrap();
        assert!((g.norm() - 1.0).abs() < 1e-14);
        assert!((case.lemma1_margin() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn generator_degenerate_case_reduces_to_one_minus_cos() {
        // q = 0, delta = 1 gives exactly h = 1 - cos(theta - t1)
        let case = boundary_case_from_factors(&[], 1.0, 0.0, c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(case.boundary_coeffs.len(), 2);
        assert!((case.boundary_coeffs[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((case.boundary_coeffs[1] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn generated_boundary_is_nonnegative_with_exact_zero() {
        for seed in 0..50u64 {
            let case = sample_positive_boundary(seed, 6, 1.234, c(0.5, -0.3), 2.0).unwrap();
            let mut min = f64::INFINITY;
            for j in 0..10_000 {
                let t = core::f64::consts::TAU * j as f64 / 10_000.0;
                min = min.min(case.boundary_value(t));
            }
            assert!(min >= -1e-12, "seed {seed}: min h = {min}");
            assert!(
                real::abs(case.boundary_value(case.zero_angle)) <= 1e-13,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn boundary_values_reproduced_exactly() {
        // poisson evaluation at the boundary reproduces h to 1e-12
        let case = sample_positive_boundary(7, 8, -0.4, c(0.0, 0.0), 1.5).unwrap();
        for j in 0..100 {
            let t = core::f64::consts::TAU * j as f64 / 100.0;
            let z = case.center + cis(t) * case.radius;
            let (u, _) = case.eval(z).unwrap();
            assert!((u - case.boundary_value(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let case = sample_positive_boundary(11, 5, 0.9, c(0.2, 0.1), 1.8).unwrap();
        let z = c(0.5, -0.4);
        let h = 1e-6;
        let (_, g) = case.eval(z).unwrap();
        let ux = (case.eval(z + c(h, 0.0)).unwrap().0 - case.eval(z - c(h, 0.0)).unwrap().0)
            / (2.0 * h);
        let uy = (case.eval(z + c(0.0, h)).unwrap().0 - case.eval(z - c(0.0, h)).unwrap().0)
            / (2.0 * h);
        assert!((g - c(ux, uy)).norm() < 1e-8);
    }

    #[test]
    fn margin_scales_with_dilation() {
        // doubling R halves both the gradient and the bound
        let base = sample_positive_boundary(3, 4, 0.5, c(0.0, 0.0), 1.0).unwrap();
        let scaled = HarmonicDiscCase::new(
            base.center,
            2.0,
            base.boundary_coeffs.clone(),
            base.zero_angle,
        )
        .unwrap();
        assert!((base.lemma1_margin() / 2.0 - scaled.lemma1_margin()).abs() < 1e-13);
    }

    #[test]
    fn eval_outside_disc_is_rejected() {
        let case = one_minus_cos();
        assert!(case.eval(c(1.2, 0.0)).is_err());
    }

    #[test]
    fn gradient_bound_suite_small() {
        // trimmed version of the acceptance suite
        let mut rng = SplitMix64::new(99);
        for seed in 0..100u64 {
            let degree = 1 + (seed % 8) as usize;
            let theta1 = rng.uniform(-3.0, 3.0);
            let center = rng.complex_square(2.0);
            let radius = rng.uniform(0.5, 4.0);
            let case =
                sample_positive_boundary(seed, degree, theta1, center, radius).unwrap();
            assert!(case.lemma1_margin() >= -1e-9, "seed {seed}");
        }
    }
}
