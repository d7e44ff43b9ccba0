//! Adaptive Gauss-Kronrod quadrature over intervals and polar panels.

use crate::error::{Error, Result};
use crate::num::{cis, real};
use crate::C64;
use alloc::collections::BinaryHeap;
use alloc::format;

/// 15-point Kronrod abscissae on `[0, 1]`-half (symmetric), with the
/// embedded 7-point Gauss rule at the odd indices.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Shared evaluation counter so a whole operation stays within its budget.
#[derive(Debug)]
pub struct EvalBudget {
    used: usize,
    max: usize,
}

impl EvalBudget {
    pub fn new(max: usize) -> Self {
        Self { used: 0, max }
    }

    /// Default per-operation budget.
    pub fn standard() -> Self {
        Self::new(10_000_000)
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > self.max {
            Err(Error::numerical(format!(
                "quadrature budget of {} evaluations exhausted",
                self.max
            )))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> usize {
        self.used
    }
}

/// The 15 Kronrod nodes of `[a, b]` in a fixed order.
pub(crate) fn kronrod_nodes(a: f64, b: f64) -> [f64; 15] {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [0.0; 15];
    for (j, x) in XGK.iter().enumerate().take(7) {
        out[2 * j] = mid - half * x;
        out[2 * j + 1] = mid + half * x;
    }
    out[14] = mid;
    out
}

/// Kronrod and embedded-Gauss sums from values in [`kronrod_nodes`] order.
pub(crate) fn sums(vals: &[f64; 15], half: f64) -> (f64, f64) {
    let mut k = WGK[7] * vals[14];
    let mut g = WG[3] * vals[14];
    for j in 0..7 {
        let pair = vals[2 * j] + vals[2 * j + 1];
        k += WGK[j] * pair;
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    (k * half, g * half)
}

struct Segment {
    err: f64,
    value: f64,
    a: f64,
    b: f64,
    seq: u64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Adaptive integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_1d(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    budget: &mut EvalBudget,
) -> Result<f64> {
    if !(b >= a) {
        return Err(Error::input("integration bounds out of order"));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut seq = 0u64;
    let mut eval_seg = |a: f64, b: f64, seq: u64, budget: &mut EvalBudget| -> Result<Segment> {
        budget.charge(15)?;
        let ns = kronrod_nodes(a, b);
        let mut vals = [0.0; 15];
        for (v, x) in vals.iter_mut().zip(ns.iter()) {
            *v = f(*x);
        }
        let (k, g) = sums(&vals, 0.5 * (b - a));
        Ok(Segment {
            err: real::abs(k - g),
            value: k,
            a,
            b,
            seq,
        })
    };
    let mut heap = BinaryHeap::new();
    heap.push(eval_seg(a, b, seq, budget)?);
    loop {
        let total_err: f64 = heap.iter().map(|s| s.err).sum();
        if total_err <= tol {
            return Ok(heap.iter().map(|s| s.value).sum());
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating resolution; accept its value
            let rest: f64 = heap.iter().map(|s| s.value).sum();
            return Ok(rest + worst.value);
        }
        seq += 1;
        heap.push(eval_seg(worst.a, mid, seq, budget)?);
        seq += 1;
        heap.push(eval_seg(mid, worst.b, seq, budget)?);
    }
}

struct Panel {
    err: f64,
    value: f64,
    rho: (f64, f64),
    theta: (f64, f64),
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Adaptive integral of `f(z) rho drho dtheta` over the polar annulus
/// `rho0 <= |z - center| <= rho1` to absolute tolerance `tol`.
///
/// Each panel is a 15x15 Kronrod tensor grid whose 7x7 embedded Gauss
/// subgrid supplies the error estimate; the worst panel splits along its
/// longer side (arc length against radial width).
pub fn integrate_polar(
    f: &mut dyn FnMut(C64) -> f64,
    center: C64,
    rho0: f64,
    rho1: f64,
    tol: f64,
    budget: &mut EvalBudget,
) -> Result<f64> {
    if !(rho1 >= rho0 && rho0 >= 0.0) {
        return Err(Error::input("bad annulus bounds"));
    }
    if rho1 == rho0 {
        return Ok(0.0);
    }
    let mut seq = 0u64;
    let mut eval_panel = |rho: (f64, f64),
                          theta: (f64, f64),
                          seq: u64,
                          budget: &mut EvalBudget|
     -> Result<Panel> {
        budget.charge(225)?;
        let rn = kronrod_nodes(rho.0, rho.1);
        let tn = kronrod_nodes(theta.0, theta.1);
        let mut vals = [[0.0f64; 15]; 15];
        for (i, &r) in rn.iter().enumerate() {
            for (j, &t) in tn.iter().enumerate() {
                vals[i][j] = f(center + cis(t) * r) * r;
            }
        }
        // Tensor sums: Kronrod x Kronrod vs Gauss x Gauss.
        let mut row_k = [0.0f64; 15];
        let mut row_g = [0.0f64; 15];
        for i in 0..15 {
            let (k, g) = sums(&vals[i], 0.5 * (theta.1 - theta.0));
            row_k[i] = k;
            row_g[i] = g;
        }
        let (kk, _) = sums(&row_k, 0.5 * (rho.1 - rho.0));
        // Gauss-in-theta values reduced with the Gauss rule in rho.
        let mut gg = WG[3] * row_g[14];
        for j in 0..7 {
            if j % 2 == 1 {
                gg += WG[j / 2] * (row_g[2 * j] + row_g[2 * j + 1]);
            }
        }
        gg *= 0.5 * (rho.0 - rho.1).abs();
        Ok(Panel {
            err: real::abs(kk - gg),
            value: kk,
            rho,
            theta,
            seq,
        })
    };

    let mut heap = BinaryHeap::new();
    // Initial partition: four angular panels, radial splits keeping panels
    // roughly square in arc length.
    let n_theta = 4usize;
    let n_rho = (((rho1 - rho0) / (0.6 * rho1.max(1.0))) as usize + 1).min(8);
    for i in 0..n_rho {
        let r_a = rho0 + (rho1 - rho0) * i as f64 / n_rho as f64;
        let r_b = rho0 + (rho1 - rho0) * (i + 1) as f64 / n_rho as f64;
        for j in 0..n_theta {
            let t_a = core::f64::consts::TAU * j as f64 / n_theta as f64;
            let t_b = core::f64::consts::TAU * (j + 1) as f64 / n_theta as f64;
            seq += 1;
            heap.push(eval_panel((r_a, r_b), (t_a, t_b), seq, budget)?);
        }
    }
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        if total_err <= tol {
            return Ok(heap.iter().map(|p| p.value).sum());
        }
        let worst = heap.pop().unwrap();
        let (ra, rb) = worst.rho;
        let (ta, tb) = worst.theta;
        let arc = 0.5 * (ra + rb) * (tb - ta);
        if (rb - ra).max(arc) < 1e-12 * (1.0 + rb) {
            let rest: f64 = heap.iter().map(|p| p.value).sum();
            return Ok(rest + worst.value);
        }
        if rb - ra >= arc {
            let mid = 0.5 * (ra + rb);
            seq += 1;
            heap.push(eval_panel((ra, mid), (ta, tb), seq, budget)?);
            seq += 1;
            heap.push(eval_panel((mid, rb), (ta, tb), seq, budget)?);
        } else {
            let mid = 0.5 * (ta + tb);
            seq += 1;
            heap.push(eval_panel((ra, rb), (ta, mid), seq, budget)?);
            seq += 1;
            heap.push(eval_panel((ra, rb), (mid, tb), seq, budget)?);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_polynomial_is_exact() {
        let mut b = EvalBudget::standard();
        let v = integrate_1d(&mut |x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12, &mut b).unwrap();
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn interval_peaked_integrand() {
        let mut b = EvalBudget::standard();
        // sharp bump: integral of 1/(1e-4 + x^2) over [-1,1] = 2 atan(100)/1e-2
        let v = integrate_1d(&mut |x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-9, &mut b).unwrap();
        let exact = 2.0 * (100.0f64).atan() / 1e-2;
        assert!((v - exact).abs() < 1e-7, "v = {v}, exact = {exact}");
    }

    #[test]
    fn polar_disc_area() {
        let mut b = EvalBudget::standard();
        let v = integrate_polar(
            &mut |_| 1.0,
            C64::new(0.0, 0.0),
            0.0,
            2.0,
            1e-10,
            &mut b,
        )
        .unwrap();
        assert!((v - core::f64::consts::PI * 4.0).abs() < 1e-9);
    }

    #[test]
    fn polar_gaussian_off_center() {
        // integral of exp(-|z|^2) over the plane is pi; integrate over a
        // big disc centered away from the origin.
        let mut b = EvalBudget::standard();
        let v = integrate_polar(
            &mut |z: C64| (-z.norm_sqr()).exp(),
            C64::new(1.5, -0.5),
            0.0,
            12.0,
            1e-9,
            &mut b,
        )
        .unwrap();
        assert!((v - core::f64::consts::PI).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = EvalBudget::new(500);
        let r = integrate_polar(
            &mut |z: C64| (200.0 * (z.re * 40.0).sin()).abs(),
            C64::new(0.0, 0.0),
            0.0,
            10.0,
            1e-14,
            &mut b,
        );
        assert!(r.is_err());
    }
}
