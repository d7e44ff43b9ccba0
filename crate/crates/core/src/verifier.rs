//! Numerical checks of the growth inequalities satisfied by curves omitting
//! the coordinate hyperplanes `{w_j = 0}, 1 <= j <= n`: the sup-bound
//! inequality `u_0 <= u* + 4(n+1)|z| sup ||f'||`, the maximal-disc radius
//! bound, the boundary identity chain, and the disc density bound for the
//! Riesz mass.
//!
//! The supremum of the spherical derivative enters through a scan estimate;
//! an underestimate only makes every check stricter, so scan-based PASS
//! verdicts are sound.

use crate::component::EntireComponent;
use crate::curve::HoloCurve;
use crate::error::{Error, Result};
use crate::growth::{self, riesz_mass_with, OrderTypeFit};
use crate::num::{cis, real};
use crate::quad::EvalBudget;
use crate::C64;
use alloc::format;
use alloc::vec::Vec;

/// A curve `(f_0, e^{P_1}, ..., e^{P_{n-1}}, 1)` omitting the hyperplanes
/// `{w_j = 0}, j >= 1`, together with a marked zero of `f_0` and a scan
/// estimate of `sup ||f'||`.
#[derive(Debug, Clone)]
pub struct OmittingCurveCase {
    pub curve: HoloCurve,
    pub z0: C64,
    pub sup_s: f64,
}

/// One checked inequality instance; `margin = rhs - lhs >= 0` means it holds.
#[derive(Debug, Clone, Copy)]
pub struct InequalityRecord {
    pub z: C64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub detail: &'static str,
}

/// Sweep summary: the minimum margin and where it occurred.
#[derive(Debug, Clone, Copy)]
pub struct SweepReport {
    pub min_margin: f64,
    pub worst: InequalityRecord,
    pub samples: usize,
}

/// Results of the boundary identity chain at one admissible center.
#[derive(Debug, Clone, Copy)]
pub struct ChainReport {
    pub center: C64,
    /// Maximal radius with `u_0 > u*` on the open disc.
    pub radius: f64,
    /// The boundary contact point.
    pub z1: C64,
    /// Index (1-based) of the component realizing the maximum at `z1`.
    pub k: usize,
    /// `|a| + |z0| - R`.
    pub margin_radius: f64,
    /// `2R |grad(u_0 - u_k)(z1)| - (u_0(a) - u_k(a))`.
    pub margin_gradient: f64,
    /// `||f'(z1)|| - |f_0'/f_0 - f_k'/f_k|(z1) / (n+1)`.
    pub margin_pair: f64,
    /// `|u_0(z1) - u_k(z1)|`, a diagnostic of the boundary equality.
    pub order_defect: f64,
}

fn component_never_vanishes(c: &EntireComponent) -> bool {
    match c {
        EntireComponent::ExpPoly(_) | EntireComponent::Constant(_) => true,
        EntireComponent::Scaled { base, .. } => component_never_vanishes(base),
        _ => false,
    }
}

impl OmittingCurveCase {
    /// Validates the omission structure: every component past the first is
    /// zero-free, `f_0` vanishes at `z0`, and `||f(0)|| > 0` so circle
    /// averages are anchored.
    pub fn new(curve: HoloCurve, z0: C64, sup_s: f64) -> Result<Self> {
        if !(sup_s >= 0.0) {
            return Err(Error::input("sup estimate must be nonnegative"));
        }
        for (j, c) in curve.components().iter().enumerate().skip(1) {
            if !component_never_vanishes(c) {
                return Err(Error::input(format!(
                    "component {j} may vanish; the case must omit its hyperplane"
                )));
            }
        }
        let u0_at = curve.components()[0].eval(z0).log_modulus();
        let norm_at = curve.norm_log(z0);
        if !(u0_at == f64::NEG_INFINITY || u0_at < norm_at - 25.0) {
            return Err(Error::input("z0 is not a zero of the first component"));
        }
        if !curve.norm_log(C64::new(0.0, 0.0)).is_finite() {
            return Err(Error::input("curve must not have a common zero at 0"));
        }
        Ok(Self { curve, z0, sup_s })
    }

    /// Builds the case with `sup ||f'||` estimated by a grid scan of the
    /// disc `|z| <= scan_radius`.
    pub fn with_scanned_sup(
        curve: HoloCurve,
        z0: C64,
        scan_radius: f64,
        resolution: f64,
    ) -> Result<Self> {
        let sup = curve.sup_spherical(scan_radius, resolution)?;
        Self::new(curve, z0, sup.value)
    }

    pub(crate) fn u_star(&self, z: C64) -> f64 {
        self.curve
            .components()
            .iter()
            .skip(1)
            .map(|c| c.eval(z).log_modulus())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn u0(&self, z: C64) -> f64 {
        self.curve.components()[0].eval(z).log_modulus()
    }
}

/// The sup-bound inequality at one point:
/// `u_0(z) <= u*(z) + 4 (n+1) |z| sup ||f'||`.
pub fn main_inequality_margin(case: &OmittingCurveCase, z: C64) -> Result<InequalityRecord> {
    if !(z.norm() > case.z0.norm()) {
        return Err(Error::input("the inequality is checked for |z| > |z0|"));
    }
    let n = case.curve.dim() as f64;
    let lhs = case.u0(z);
    let rhs = case.u_star(z) + 4.0 * (n + 1.0) * z.norm() * case.sup_s;
    Ok(InequalityRecord {
        z,
        lhs,
        rhs,
        margin: rhs - lhs,
        detail: "main",
    })
}

/// Scans the annulus `r_min <= |z| <= r_max` on a log-radial grid with a
/// golden angular offset per ring; about `samples` points in total.
pub fn sweep_main_inequality(
    case: &OmittingCurveCase,
    r_min: f64,
    r_max: f64,
    samples: usize,
) -> Result<SweepReport> {
    if !(r_min > case.z0.norm()) {
        return Err(Error::input("sweep needs r_min > |z0|"));
    }
    if !(r_max > r_min) || samples < 4 {
        return Err(Error::input("sweep needs r_max > r_min and a few samples"));
    }
    let n_r = (real::sqrt(samples as f64) as usize).max(8);
    let n_t = samples.div_ceil(n_r);
    let mut worst: Option<InequalityRecord> = None;
    let mut count = 0usize;
    for i in 0..n_r {
        let frac = i as f64 / (n_r as f64 - 1.0);
        let r = r_min * real::powf(r_max / r_min, frac);
        let offset = 0.618_033_988_749_894_9 * i as f64;
        for j in 0..n_t {
            let theta = core::f64::consts::TAU * (j as f64 / n_t as f64 + offset);
            let rec = main_inequality_margin(case, cis(theta) * r)?;
            count += 1;
            if worst.map(|w| rec.margin < w.margin).unwrap_or(true) {
                worst = Some(rec);
            }
        }
    }
    let worst = worst.unwrap();
    Ok(SweepReport {
        min_margin: worst.margin,
        worst,
        samples: count,
    })
}

/// Minimum of a scalar field over the circle `|z - a| = r`, coarse 512-point
/// scan refined by golden section.
fn circle_min(f: &dyn Fn(C64) -> f64, a: C64, r: f64) -> (f64, C64) {
    let at = |theta: f64| f(a + cis(theta) * r);
    let n = 512;
    let mut best = f64::INFINITY;
    let mut best_j = 0;
    for j in 0..n {
        let v = at(core::f64::consts::TAU * j as f64 / n as f64);
        if v < best {
            best = v;
            best_j = j;
        }
    }
    let step = core::f64::consts::TAU / n as f64;
    let (mut lo, mut hi) = (step * (best_j as f64 - 1.0), step * (best_j as f64 + 1.0));
    let phi = 0.6180339887498949;
    let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut f1, mut f2) = (at(x1), at(x2));
    for _ in 0..60 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = at(x2);
        }
    }
    let theta = 0.5 * (lo + hi);
    (at(theta).min(best), a + cis(theta) * r)
}

/// Locates the maximal disc `B(a, R)` where `u_0 > u*`, the boundary contact
/// point `z1` with its index `k`, and checks the chain: the radius bound
/// `R <= |a| + |z0|`, the gradient bound applied to the positive harmonic
/// function `u_0 - u_k` (whose gradient is `|f_0'/f_0 - f_k'/f_k|`), and the
/// pair bound `||f'(z1)|| >= |f_0'/f_0 - f_k'/f_k| / (n+1)`.
pub fn boundary_chain_check(case: &OmittingCurveCase, a: C64) -> Result<ChainReport> {
    let gap = |z: C64| case.u0(z) - case.u_star(z);
    if !(gap(a) > 0.0) {
        return Err(Error::input("center must satisfy u_0(a) > u*(a)"));
    }
    // Bracket the first sign change of the expanding-circle minimum.
    let r_cap = (a - case.z0).norm();
    let mut r_lo = 1e-4 * r_cap;
    if circle_min(&gap, a, r_lo).0 <= 0.0 {
        return Err(Error::numerical(
            "gap vanishes arbitrarily close to the center",
        ));
    }
    let mut r_hi = r_lo;
    let mut bracketed = false;
    for _ in 0..200 {
        r_hi = (r_hi * 1.35).min(r_cap);
        if circle_min(&gap, a, r_hi).0 <= 0.0 {
            bracketed = true;
            break;
        }
        r_lo = r_hi;
        if r_hi >= r_cap {
            break;
        }
    }
    if !bracketed {
        return Err(Error::numerical(
            "could not bracket the maximal-disc radius within 200 steps",
        ));
    }
    for _ in 0..60 {
        let mid = 0.5 * (r_lo + r_hi);
        if circle_min(&gap, a, mid).0 > 0.0 {
            r_lo = mid;
        } else {
            r_hi = mid;
        }
        if r_hi - r_lo < 1e-8 * (1.0 + r_hi) {
            break;
        }
    }
    let radius = 0.5 * (r_lo + r_hi);
    let (_, z1) = circle_min(&gap, a, radius);

    // Index realizing the maximum at the contact point.
    let mut k = 1;
    let mut uk = f64::NEG_INFINITY;
    for (j, c) in case.curve.components().iter().enumerate().skip(1) {
        let u = c.eval(z1).log_modulus();
        if u > uk {
            uk = u;
            k = j;
        }
    }
    let u0_z1 = case.u0(z1);
    let order_defect = real::abs(u0_z1 - uk);

    let ld0 = case.curve.components()[0]
        .eval(z1)
        .log_derivative()
        .ok_or_else(|| Error::numerical("contact point landed on a zero of f_0"))?;
    let ldk = case.curve.components()[k]
        .eval(z1)
        .log_derivative()
        .ok_or_else(|| Error::numerical("contact point landed on a zero of f_k"))?;
    let grad = (ld0 - ldk).norm();

    let n = case.curve.dim() as f64;
    let margin_radius = a.norm() + case.z0.norm() - radius;
    let margin_gradient =
        2.0 * radius * grad - (case.u0(a) - case.curve.components()[k].eval(a).log_modulus());
    let margin_pair = case.curve.spherical_derivative(z1) - grad / (n + 1.0);
    Ok(ChainReport {
        center: a,
        radius,
        z1,
        k,
        margin_radius,
        margin_gradient,
        margin_pair,
        order_defect,
    })
}

/// Disc density bound for the Riesz mass:
/// `delta^2 sup^2 - mu(B(a, delta)) >= 0` where
/// `mu = (1/pi) integral of ||f'||^2`.
pub fn riesz_density_margin(
    curve: &HoloCurve,
    a: C64,
    delta: f64,
    sup_s: f64,
    tol: f64,
) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::input("density bound needs delta > 0"));
    }
    let mut budget = EvalBudget::standard();
    let mass = riesz_mass_with(curve, a, 0.0, delta, tol, &mut budget)?;
    Ok(delta * delta * sup_s * sup_s - mass)
}

/// Growth order fit over the window; curves omitting their hyperplanes are
/// expected to come out at order one (the base case of the theorem).
pub fn clunie_hayman_report(curve: &HoloCurve, r_window: (f64, f64)) -> Result<OrderTypeFit> {
    let steps = (real::ln(r_window.1 / r_window.0) / real::ln(2.0) * 4.0) as usize + 2;
    let radii = growth::geometric_radii(r_window.0, r_window.1, steps.max(9))?;
    let mut pts = Vec::with_capacity(radii.len());
    for &r in &radii {
        pts.push((r, growth::characteristic_jensen(curve, r, 64)?));
    }
    growth::fit_order_type(&pts, r_window)
}
