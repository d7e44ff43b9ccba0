//! Nevanlinna characteristic by two independent routes, the Riesz mass, and
//! order/type fitting.
//!
//! The characteristic used throughout is the area-integral form
//! `T(r) = integral_0^r n(t)/t dt` with
//! `n(t) = (1/pi) * integral over |z| <= t of ||f'||^2`; the circle-average
//! route `T(r) = mean of u on |z| = r minus u(0)` is the identity the two
//! must satisfy, so their agreement is an executable test of both.

use crate::curve::HoloCurve;
use crate::error::{Error, Result};
use crate::num::{cis, real};
use crate::quad::{integrate_polar, EvalBudget};
use crate::C64;
use alloc::vec::Vec;

/// One growth record at radius `r`.
#[derive(Debug, Clone, Copy)]
pub struct GrowthSample {
    pub r: f64,
    pub t_jensen: f64,
    pub t_ahlfors: f64,
    pub n_of_r: f64,
}

/// Least-squares order and median-ratio type over a radius window.
#[derive(Debug, Clone, Copy)]
pub struct OrderTypeFit {
    pub order_rho: f64,
    pub type_c: f64,
    pub r_window: (f64, f64),
    pub rms_residual: f64,
}

/// `n(t) = (1/pi) * integral of ||f'||^2 over |z| <= t`, the Riesz mass of
/// `u` in the disc (also the area function in the characteristic integrand).
pub fn riesz_mass(curve: &HoloCurve, t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::input("riesz_mass needs t > 0"));
    }
    let mut budget = EvalBudget::standard();
    riesz_mass_with(curve, C64::new(0.0, 0.0), 0.0, t, tol, &mut budget)
}

/// Mass of the annulus `rho0 <= |z - center| <= rho1` under `(1/pi)||f'||^2`.
pub fn riesz_mass_with(
    curve: &HoloCurve,
    center: C64,
    rho0: f64,
    rho1: f64,
    tol: f64,
    budget: &mut EvalBudget,
) -> Result<f64> {
    let mut f = |z: C64| {
        let s = curve.spherical_derivative(z);
        s * s * core::f64::consts::FRAC_1_PI
    };
    integrate_polar(&mut f, center, rho0, rho1, tol, budget)
}

/// Incremental characteristic accumulator: anchors `(t, n(t))` are extended
/// by annulus quadrature so a whole radius sweep shares its area integrals.
pub struct CharacteristicSampler<'a> {
    curve: &'a HoloCurve,
    anchors: Vec<(f64, f64)>,
    r_scale: f64,
    tol_mass: f64,
    t_head: f64,
    t_acc: f64,
    r_done: f64,
}

impl<'a> CharacteristicSampler<'a> {
    /// `r_max` is the largest radius that will be queried; `tol` the absolute
    /// tolerance on each reported characteristic value.
    pub fn new(curve: &'a HoloCurve, r_max: f64, tol: f64) -> Result<Self> {
        if !(r_max > 0.0 && tol > 0.0) {
            return Err(Error::input("characteristic needs positive radius and tolerance"));
        }
        // Head interval handled by the analytic law n(t) ~ ||f'(0)||^2 t^2:
        // integral_0^h n/t dt = n(h)/2 + O(h^4).
        let t_head = (0.02f64).min(r_max / 100.0).min(real::powf(tol, 0.25) / 2.0);
        Ok(Self {
            curve,
            anchors: alloc::vec![(0.0, 0.0)],
            r_scale: r_max,
            tol_mass: tol / 3.0,
            t_head,
            t_acc: 0.0,
            r_done: 0.0,
        })
    }

    /// `n(t)` through the anchor chain. The per-annulus tolerance scales
    /// with the annulus width but is floored at 1/32 of the sweep scale, so
    /// the thin annuli created by quadrature nodes stay affordable; the
    /// accumulated error along a chain stays within a small multiple of the
    /// requested tolerance.
    pub fn mass_at(&mut self, t: f64) -> Result<f64> {
        let idx = self.anchors.partition_point(|&(a, _)| a <= t);
        let (t0, n0) = self.anchors[idx - 1];
        if t == t0 {
            return Ok(n0);
        }
        let frac = ((t - t0) / self.r_scale).max(1.0 / 32.0);
        let tol = self.tol_mass * frac;
        // Budget is per annulus call, matching the per-call contract of the
        // underlying quadrature.
        let mut budget = EvalBudget::standard();
        let mass = riesz_mass_with(
            self.curve,
            C64::new(0.0, 0.0),
            t0,
            t,
            tol.max(1e-14),
            &mut budget,
        )?;
        let n = n0 + mass;
        self.anchors.insert(idx, (t, n));
        Ok(n)
    }

    /// Composite Kronrod integration of `n(t)/t` over `[a, b]` with anchors
    /// seeded in ascending order (consecutive annuli tile the segment, so
    /// the two-dimensional work telescopes). The integrand is smooth, so a
    /// fixed panel width suffices; the embedded Gauss value triggers at most
    /// two rounds of bisection as a safety net.
    fn integrate_span(&mut self, a: f64, b: f64, depth: usize) -> Result<f64> {
        let panel_w = (0.08 * b).max(0.35);
        let n_panels = ((b - a) / panel_w) as usize + 1;
        let mut total = 0.0;
        for i in 0..n_panels {
            let pa = a + (b - a) * i as f64 / n_panels as f64;
            let pb = a + (b - a) * (i + 1) as f64 / n_panels as f64;
            let mut ns: [f64; 15] = crate::quad::kronrod_nodes(pa, pb);
            ns.sort_by(f64::total_cmp);
            for &t in &ns {
                self.mass_at(t)?;
            }
            let raw = crate::quad::kronrod_nodes(pa, pb);
            let mut vals = [0.0f64; 15];
            for (v, &t) in vals.iter_mut().zip(raw.iter()) {
                *v = self.mass_at(t)? / t;
            }
            let (k, g) = crate::quad::sums(&vals, 0.5 * (pb - pa));
            let rough = (k - g).abs() > (1e-6 * k.abs()).max(100.0 * self.tol_mass);
            if rough && depth < 2 {
                total += self.integrate_span(pa, pb, depth + 1)?;
            } else {
                total += k;
            }
        }
        Ok(total)
    }

    /// `T(r)` by the area route; radii must be queried in increasing order.
    pub fn characteristic_at(&mut self, r: f64) -> Result<f64> {
        if r < self.r_done {
            return Err(Error::input("characteristic radii must be nondecreasing"));
        }
        if self.r_done == 0.0 {
            let n_head = self.mass_at(self.t_head)?;
            self.t_acc = 0.5 * n_head;
            self.r_done = self.t_head;
        }
        if r <= self.t_head {
            // tiny radius: the analytic head alone
            let n_r = self.mass_at(r)?;
            return Ok(0.5 * n_r);
        }
        let (a, b) = (self.r_done, r);
        if b > a {
            self.t_acc += self.integrate_span(a, b, 0)?;
            self.r_done = b;
        }
        Ok(self.t_acc)
    }
}

/// Area-route characteristic at a single radius:
/// `T(r) = integral_0^r n(t)/t dt` with the endpoint handled by the
/// analytic law `n(t) ~ ||f'(0)||^2 t^2`. For tables over many radii use
/// [`CharacteristicSampler`], which shares the area integrals.
pub fn characteristic_ahlfors(curve: &HoloCurve, r: f64, tol: f64) -> Result<f64> {
    CharacteristicSampler::new(curve, r, tol)?.characteristic_at(r)
}

/// Circle-average characteristic: trapezoidal mean of `u` on `|z| = r` minus
/// `u(0)`, nodes doubled until two successive estimates agree.
pub fn characteristic_jensen(curve: &HoloCurve, r: f64, m_nodes: usize) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::input("characteristic needs r > 0"));
    }
    let u0 = curve.norm_log(C64::new(0.0, 0.0));
    if !u0.is_finite() {
        return Err(Error::input("u(0) must be finite (no common zero at 0)"));
    }
    let mut m = m_nodes.max(16);
    let mean_at = |m: usize| {
        let mut acc = crate::num::Kahan::new();
        for j in 0..m {
            let t = core::f64::consts::TAU * j as f64 / m as f64;
            acc.add(curve.norm_log(cis(t) * r));
        }
        acc.value() / m as f64
    };
    let mut est = mean_at(m) - u0;
    for _ in 0..14 {
        m *= 2;
        let next = mean_at(m) - u0;
        let close = (next - est).abs() < 1e-8 * est.abs().max(1.0);
        est = next;
        if close {
            return Ok(est);
        }
    }
    Err(Error::numerical(
        "circle average did not settle within the node cap",
    ))
}

/// Geometric radius grid `r0 ... r1` with `k` points.
pub fn geometric_radii(r0: f64, r1: f64, k: usize) -> Result<Vec<f64>> {
    if !(r0 > 0.0 && r1 > r0 && k >= 2) {
        return Err(Error::input("geometric grid needs 0 < r0 < r1 and k >= 2"));
    }
    let q = real::powf(r1 / r0, 1.0 / (k as f64 - 1.0));
    let mut r = r0;
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(r);
        r *= q;
    }
    let last = out.last_mut().unwrap();
    *last = r1;
    Ok(out)
}

/// Growth table over ascending radii: both characteristics and `n(r)`.
pub fn sample_growth(curve: &HoloCurve, radii: &[f64], tol: f64) -> Result<Vec<GrowthSample>> {
    if radii.windows(2).any(|w| w[1] <= w[0]) || radii.first().map(|&r| r <= 0.0).unwrap_or(true) {
        return Err(Error::input("radii must be positive and strictly increasing"));
    }
    let mut sampler = CharacteristicSampler::new(curve, *radii.last().unwrap(), tol)?;
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let t_ahlfors = sampler.characteristic_at(r)?;
        let n_of_r = sampler.mass_at(r)?;
        let t_jensen = characteristic_jensen(curve, r, 64)?;
        out.push(GrowthSample {
            r,
            t_jensen,
            t_ahlfors,
            n_of_r,
        });
    }
    Ok(out)
}

/// Order and type from samples inside the window.
///
/// The model is `T(r) = c r^rho + d`: characteristics come with a bounded
/// additive offset (the two standard forms differ by `O(1)`), and at desk
/// radii that offset biases a plain log-log slope enough to spoil the type.
/// The fit profiles `rho` (golden search) with `c, d` solved linearly; the
/// type is then the median of `(T - d) / r^rho` over the top half of the
/// window, and the reported residual is the rms of `log T` against the model.
pub fn fit_order_type(samples: &[(f64, f64)], window: (f64, f64)) -> Result<OrderTypeFit> {
    let mut pts: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(r, t)| r >= window.0 && r <= window.1 && t > 0.0)
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.len() < 8 {
        return Err(Error::input("order fit needs at least 8 samples in the window"));
    }
    // geometric spacing sanity: consecutive log gaps within ~2x of each other
    let gaps: Vec<f64> = pts
        .windows(2)
        .map(|w| real::ln(w[1].0) - real::ln(w[0].0))
        .collect();
    let gmin = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    let gmax = gaps.iter().cloned().fold(0.0f64, f64::max);
    if !(gmin > 0.0) || gmax > 2.5 * gmin {
        return Err(Error::input("order fit expects geometrically spaced radii"));
    }

    // Residual sum of squares with (c, d) solved by least squares at fixed rho.
    let solve_cd = |rho: f64| -> (f64, f64, f64) {
        let n = pts.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(r, t) in &pts {
            let x = real::powf(r, rho);
            sx += x;
            sy += t;
            sxx += x * x;
            sxy += x * t;
        }
        let det = n * sxx - sx * sx;
        let c = (n * sxy - sx * sy) / det;
        let d = (sy - c * sx) / n;
        let mut rss = 0.0;
        for &(r, t) in &pts {
            let resid = t - (c * real::powf(r, rho) + d);
            rss += resid * resid;
        }
        (c, d, rss)
    };

    // Coarse scan then golden refinement of the profiled RSS.
    let mut best_rho = 0.05;
    let mut best_rss = f64::INFINITY;
    for i in 0..=160 {
        let rho = 0.05 + 3.95 * i as f64 / 160.0;
        let (_, _, rss) = solve_cd(rho);
        if rss < best_rss {
            best_rss = rss;
            best_rho = rho;
        }
    }
    let (mut lo, mut hi) = (best_rho - 0.05, best_rho + 0.05);
    let phi = 0.6180339887498949;
    for _ in 0..80 {
        let x1 = hi - phi * (hi - lo);
        let x2 = lo + phi * (hi - lo);
        if solve_cd(x1).2 <= solve_cd(x2).2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let rho = (0.5 * (lo + hi)).max(0.0);
    let (_, d, _) = solve_cd(rho);

    // Type: median of the offset-corrected ratio over the top half.
    let half = pts.len() / 2;
    let mut ratios: Vec<f64> = pts[half..]
        .iter()
        .map(|&(r, t)| (t - d) / real::powf(r, rho))
        .collect();
    ratios.sort_by(f64::total_cmp);
    let type_c = if ratios.len() % 2 == 1 {
        ratios[ratios.len() / 2]
    } else {
        0.5 * (ratios[ratios.len() / 2 - 1] + ratios[ratios.len() / 2])
    };

    let mut rss_log = 0.0;
    for &(r, t) in &pts {
        let fitted = (type_c * real::powf(r, rho) + d).max(1e-300);
        let resid = real::ln(t) - real::ln(fitted);
        rss_log += resid * resid;
    }
    Ok(OrderTypeFit {
        order_rho: rho,
        type_c,
        r_window: window,
        rms_residual: real::sqrt(rss_log / pts.len() as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::EntireComponent;

    fn curve_z() -> HoloCurve {
        HoloCurve::new(alloc::vec![EntireComponent::id_z(), EntireComponent::one()]).unwrap()
    }

    fn curve_exp() -> HoloCurve {
        HoloCurve::new(alloc::vec![EntireComponent::exp_z(), EntireComponent::one()]).unwrap()
    }

    fn curve_const() -> HoloCurve {
        HoloCurve::new(alloc::vec![
            EntireComponent::Constant(C64::new(1.5, -0.5)),
            EntireComponent::one()
        ])
        .unwrap()
    }

    #[test]
    fn riesz_mass_rational_closed_form() {
        // (z, 1): n(t) = t^2 / (1 + t^2)
        for &t in &[0.5f64, 1.0, 3.0, 10.0] {
            let n = riesz_mass(&curve_z(), t, 1e-9).unwrap();
            let exact = t * t / (1.0 + t * t);
            assert!((n - exact).abs() < 1e-8, "t = {t}: {n} vs {exact}");
        }
        // total mass tends to one zero
        let n = riesz_mass(&curve_z(), 120.0, 1e-7).unwrap();
        assert!((n - 1.0).abs() < 1e-3);
    }

    #[test]
    fn riesz_mass_constant_curve_is_zero() {
        let n = riesz_mass(&curve_const(), 4.0, 1e-10).unwrap();
        assert!(n.abs() < 1e-10);
    }

    #[test]
    fn characteristic_closed_form_rational() {
        // (z, 1): T(r) = log sqrt(1 + r^2), both routes
        for &r in &[1.0f64, 5.0, 25.0] {
            let exact = 0.5 * (1.0 + r * r).ln();
            let cv = curve_z();
            let tj = characteristic_jensen(&cv, r, 64).unwrap();
            assert!((tj - exact).abs() < 1e-8, "jensen at {r}: {tj} vs {exact}");
            let mut s = CharacteristicSampler::new(&cv, r, 1e-7).unwrap();
            let ta = s.characteristic_at(r).unwrap();
            assert!((ta - exact).abs() < 1e-6, "area at {r}: {ta} vs {exact}");
        }
    }

    #[test]
    fn characteristic_jensen_trivial_cases() {
        let c11 = HoloCurve::new(alloc::vec![EntireComponent::one(), EntireComponent::one()])
            .unwrap();
        let t = characteristic_jensen(&c11, 7.0, 64).unwrap();
        assert!(t.abs() < 1e-12);
    }

    #[test]
    fn exp_characteristic_matches_classical_rate() {
        // T(r, e^z) = r/pi + O(1); at r = 50 the area and circle routes must
        // agree tightly, and the circle route sits near 50/pi.
        let r = 50.0;
        let cv = curve_exp();
        let tj = characteristic_jensen(&cv, r, 64).unwrap();
        let mut s = CharacteristicSampler::new(&cv, r, 2e-6).unwrap();
        let ta = s.characteristic_at(r).unwrap();
        assert!((tj - ta).abs() < 1e-5, "routes: {tj} vs {ta}");
        let classical = r / core::f64::consts::PI;
        assert!((tj - classical).abs() < 0.037 * classical, "{tj} vs {classical}");
        // The asymptote is reached to 2% by r = 100.
        let tj100 = characteristic_jensen(&curve_exp(), 100.0, 64).unwrap();
        let classical100 = 100.0 / core::f64::consts::PI;
        assert!((tj100 - classical100).abs() < 0.02 * classical100);
    }

    #[test]
    fn monotone_and_convex_in_log_r() {
        let radii = geometric_radii(0.5, 30.0, 20).unwrap();
        let table = sample_growth(&curve_exp(), &radii, 1e-6).unwrap();
        for w in table.windows(2) {
            assert!(w[1].t_jensen >= w[0].t_jensen - 1e-9);
            assert!(w[1].t_ahlfors >= w[0].t_ahlfors - 1e-9);
            assert!(w[1].n_of_r >= w[0].n_of_r - 1e-9);
        }
        // convexity of T in log r (equal log spacing)
        for w in table.windows(3) {
            let second = w[2].t_jensen - 2.0 * w[1].t_jensen + w[0].t_jensen;
            assert!(second >= -1e-8, "second difference {second}");
        }
    }

    #[test]
    fn fit_recovers_synthetic_laws() {
        // T = 3r
        let radii = geometric_radii(1.0, 100.0, 16).unwrap();
        let lin: Vec<(f64, f64)> = radii.iter().map(|&r| (r, 3.0 * r)).collect();
        let fit = fit_order_type(&lin, (1.0, 100.0)).unwrap();
        assert!((fit.order_rho - 1.0).abs() < 1e-9);
        assert!((fit.type_c - 3.0).abs() < 1e-9);
        assert!(fit.rms_residual < 1e-12);
        // T = r^2
        let quad: Vec<(f64, f64)> = radii.iter().map(|&r| (r, r * r)).collect();
        let fit = fit_order_type(&quad, (1.0, 100.0)).unwrap();
        assert!((fit.order_rho - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fit_rejects_thin_windows() {
        let samples: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, i as f64)).collect();
        assert!(fit_order_type(&samples, (1.0, 5.0)).is_err());
    }

    #[test]
    fn exp_order_and_type() {
        let radii = geometric_radii(20.0, 160.0, 13).unwrap();
        let table = sample_growth(&curve_exp(), &radii, 1e-5).unwrap();
        let pts: Vec<(f64, f64)> = table.iter().map(|s| (s.r, s.t_jensen)).collect();
        let fit = fit_order_type(&pts, (20.0, 160.0)).unwrap();
        assert!((fit.order_rho - 1.0).abs() < 0.05, "order {}", fit.order_rho);
        let type_err = (fit.type_c * core::f64::consts::PI - 1.0).abs();
        assert!(type_err < 0.03, "type {} ({}% off 1/pi)", fit.type_c, type_err * 100.0);
    }

    #[test]
    fn route_agreement_across_curves() {
        let curves = [curve_z(), curve_exp(), curve_const()];
        for cv in &curves {
            let mut s = CharacteristicSampler::new(cv, 25.0, 1e-6).unwrap();
            for &r in &[1.0f64, 5.0, 10.0, 25.0] {
                let ta = s.characteristic_at(r).unwrap();
                let tj = characteristic_jensen(cv, r, 64).unwrap();
                assert!(
                    (ta - tj).abs() <= 5e-6 * ta.abs().max(1.0),
                    "r={r}: {ta} vs {tj}"
                );
            }
        }
    }
}
