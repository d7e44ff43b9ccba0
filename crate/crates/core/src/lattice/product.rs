//! Genus-2 canonical products `prod E2(z / p)` over the points `p` of a
//! lattice, with the bare factor `z` when the lattice contains the origin.
//!
//! Two evaluation paths:
//!
//! * **direct** — truncated product over `|p| <= R` plus an analytic tail
//!   correction: the discarded factors contribute
//!   `-sum_{k>=3} (z^k / k) T_k(R)` with `T_k(R) = sum_{|p|>R} p^{-k}`.
//!   The `T_k` are tabulated once per truncation level, small `k` from the
//!   full-lattice sums of [`moments`], large `k` by summing the annulus
//!   beyond `R` where every term is tiny. The raw triangle-inequality bound
//!   `C |z|^3 / R` would need astronomically large `R` for the accuracy this
//!   crate targets; the corrected truncation reaches it with `R ~ 2.5 |z|`.
//! * **reduced** — translate `z` into the fundamental cell and reassemble
//!   through the functional equation `f(z + w) = exp(A z + B) f(z)` whose
//!   constants are calibrated at build time from the direct path at small
//!   `|z|` and validated by a self-check and the Legendre relation.

use super::moments;
use super::Lattice;
use crate::error::{Error, Result};
use crate::num::{cis, clog, real, Kahan, KahanComplex};
use crate::scaled::ScaledValue;
use crate::C64;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

const TWO_PI: f64 = core::f64::consts::TAU;

/// Highest tail moment carried in the correction series.
const K_MAX: usize = 42;

/// Direct evaluation keeps `|z| / R_trunc` at or below `1 / RADIUS_RATIO`.
const RADIUS_RATIO: f64 = 2.5;

/// Largest radius the one-time tail summation is allowed to reach.
const R_BIG_CAP: f64 = 9000.0;

/// Controls how the direct product is truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Absolute error target on the log-modulus.
    pub target_abs_err: f64,
    /// Floor for the innermost truncation radius.
    pub min_radius: f64,
    /// Multiplier (`>= 1`) on the required truncation radius.
    pub safety: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            target_abs_err: 1e-8,
            min_radius: 2.0,
            safety: 1.0,
        }
    }
}

impl TruncationPolicy {
    fn validate(&self) -> Result<()> {
        if !(self.target_abs_err > 0.0) {
            return Err(Error::input("truncation target_abs_err must be positive"));
        }
        if !(self.safety >= 1.0) {
            return Err(Error::input("truncation safety must be >= 1"));
        }
        if !(self.min_radius >= 0.0) {
            return Err(Error::input("truncation min_radius must be >= 0"));
        }
        Ok(())
    }
}

/// Complex `log E2(w)` with the principal branch of `log(1 - w)`.
///
/// `E2(w) = (1 - w) exp(w + w^2/2)`, so `log E2(w) = -sum_{k>=3} w^k / k`;
/// the series is used for small `|w|` where the direct form cancels.
pub fn e2_log(w: C64) -> C64 {
    if w.norm_sqr() <= 0.1225 {
        let mut acc = C64::new(0.0, 0.0);
        let mut term = w * w * w;
        let mut k = 3.0;
        loop {
            acc += term / k;
            term *= w;
            k += 1.0;
            if term.norm_sqr() < 1e-40 * (1.0 + acc.norm_sqr()) {
                break;
            }
        }
        -acc
    } else {
        clog(C64::new(1.0, 0.0) - w) + w + w * w * 0.5
    }
}

/// Primary factor data: log-modulus of `E2(w)` and the logarithmic
/// derivative `d/dw log E2(w) = w^2 / (w - 1)`.
///
/// For the factor at lattice point `p` (where `w = z / p`), the additive
/// log-derivative term in `z` is this value divided by `p`, i.e.
/// `1/(z-p) + 1/p + z/p^2`. At `w = 1` the log-modulus is `-inf` (a zero of
/// the factor) and the derivative term has a pole.
pub fn eval_e2_factor(w: C64) -> (f64, C64) {
    let lm = if w == C64::new(1.0, 0.0) {
        f64::NEG_INFINITY
    } else {
        e2_log(w).re
    };
    (lm, w * w / (w - 1.0))
}

#[derive(Debug)]
struct PointData {
    p: C64,
    inv: C64,
    inv2: C64,
}

#[derive(Debug)]
struct Level {
    radius: f64,
    cut_sq: f64,
    end: usize,
    /// `T_k(radius)`, indexed by `k`.
    tail: Vec<C64>,
    /// `sum |p|^{-k}` inside the level, for the small-`k` noise model.
    abs_partial: Vec<f64>,
}

/// Precomputed tables for one lattice; immutable after construction, cheap
/// to share between threads.
#[derive(Debug)]
pub struct LatticeProduct {
    lattice: Lattice,
    b1: C64,
    b2: C64,
    offset: C64,
    has_origin: bool,
    min_dist: f64,
    area: f64,
    policy: TruncationPolicy,
    k_list: Vec<usize>,
    points: Vec<PointData>,
    levels: Vec<Level>,
    quasi_a: [C64; 2],
    quasi_b: [C64; 2],
    max_direct_radius: f64,
}

impl LatticeProduct {
    /// Builds the evaluation tables. `max_direct_radius` bounds `|z|` for the
    /// direct path (the reduced path has no such bound); larger values cost
    /// more table-construction time.
    pub fn new(lattice: Lattice, policy: TruncationPolicy, max_direct_radius: f64) -> Result<Self> {
        let mut product = Self::build_tables(lattice, policy, max_direct_radius)?;
        product.calibrate_quasi_periods()?;
        product.self_check()?;
        Ok(product)
    }

    fn build_tables(
        lattice: Lattice,
        policy: TruncationPolicy,
        max_direct_radius: f64,
    ) -> Result<Self> {
        policy.validate()?;
        if !(max_direct_radius > 0.0) {
            return Err(Error::input("max_direct_radius must be positive"));
        }
        let (b1, b2) = lattice.reduced_basis();
        let offset = lattice.reduced_offset();
        let has_origin = offset == C64::new(0.0, 0.0);
        let four_fold = lattice.is_four_fold();
        let min_dist = b1.norm();
        let area = lattice.cell_area();

        // The base level only needs to cover reduced-cell points (this is
        // the hot path of every reduced evaluation, so keep it small); the
        // calibration points 2-3 cells out are covered by the ladder, which
        // must also reach the requested direct radius.
        let cell_bound = 0.5 * (b1.norm() + b2.norm());
        let r0 = (RADIUS_RATIO * policy.safety * cell_bound * 1.1).max(policy.min_radius);
        let r_cal = 2.75 * policy.safety * (b1.norm() + b2.norm());
        let r_need = (RADIUS_RATIO * policy.safety * max_direct_radius).max(1.05 * r_cal);
        let mut targets = vec![r0];
        let mut t = r0;
        while t < r_need {
            t *= 2.0;
            if t > r_need {
                t = r_need;
            }
            targets.push(t);
        }

        let enum_radius = targets.last().unwrap() + 2.0 * min_dist + 1.0;
        let raw_points = lattice.points_in_disc(enum_radius);
        if raw_points.is_empty() {
            return Err(Error::input("no lattice points within the truncation radius"));
        }

        let k_list: Vec<usize> = if four_fold {
            (1..=K_MAX / 4).map(|j| 4 * j).collect()
        } else {
            (3..=K_MAX).collect()
        };

        // Shell-safe cuts: place each level boundary inside a gap of the
        // sorted |p|^2 sequence so symmetric orbits never straddle a cut.
        let mut levels: Vec<Level> = Vec::new();
        for target in &targets {
            let t2 = target * target;
            let mut idx = raw_points.partition_point(|p| p.norm_sqr() <= t2);
            while idx < raw_points.len() {
                let lo = raw_points[idx - 1].norm_sqr();
                let hi = raw_points[idx].norm_sqr();
                if hi - lo > 1e-9 * hi.max(1.0) {
                    break;
                }
                idx += 1;
            }
            if idx == 0 || idx == raw_points.len() {
                return Err(Error::numerical("could not place a shell-safe truncation cut"));
            }
            let cut_sq = 0.5 * (raw_points[idx - 1].norm_sqr() + raw_points[idx].norm_sqr());
            if levels.last().map(|l| l.end) == Some(idx) {
                continue;
            }
            levels.push(Level {
                radius: real::sqrt(cut_sq),
                cut_sq,
                end: idx,
                tail: Vec::new(),
                abs_partial: Vec::new(),
            });
        }
        let top_end = levels.last().unwrap().end;
        let top_cut_sq = levels.last().unwrap().cut_sq;
        let top_radius = levels.last().unwrap().radius;

        let points: Vec<PointData> = raw_points[..top_end]
            .iter()
            .map(|&p| {
                let inv = C64::new(1.0, 0.0) / p;
                PointData {
                    p,
                    inv,
                    inv2: inv * inv,
                }
            })
            .collect();

        // Small-k prefix sums inside each level (for the full-sum route) and
        // per-annulus sums between consecutive levels for every tabulated k.
        // The annuli are summed from scratch so that the tiny large-k tails
        // are never produced by differencing O(1) prefixes. Points close to
        // the origin (always possible for offset lattices) are excluded from
        // BOTH the full sums and the prefixes: they cancel exactly in the
        // difference but their large inverse powers would otherwise set the
        // rounding scale of the differenced tail.
        let exclude_below = 0.8 * min_dist;
        let ex_sq = exclude_below * exclude_below;
        let mut partial = vec![KahanComplex::new(); 7];
        let mut partial_abs = vec![Kahan::new(); 7];
        let mut walk = 0usize;
        let mut per_level_small: Vec<(Vec<C64>, Vec<f64>)> = Vec::new();
        let mut annulus: Vec<Vec<C64>> = Vec::new(); // annulus[i]: between level i-1 and i
        for lvl in &levels {
            let mut ann = vec![KahanComplex::new(); K_MAX + 1];
            while walk < lvl.end {
                let inv = points[walk].inv;
                let excluded = points[walk].p.norm_sqr() < ex_sq;
                let inv_abs = inv.norm();
                let mut v = inv * inv * inv;
                let mut va = inv_abs * inv_abs * inv_abs;
                for k in 3..=K_MAX {
                    if k <= 6 && !excluded {
                        partial[k].add(v);
                        partial_abs[k].add(va);
                    }
                    ann[k].add(v);
                    v *= inv;
                    va *= inv_abs;
                }
                walk += 1;
            }
            per_level_small.push((
                partial.iter().map(|a| a.value()).collect(),
                partial_abs.iter().map(|a| a.value()).collect(),
            ));
            annulus.push(ann.iter().map(|a| a.value()).collect());
        }

        // Full-lattice sums for the slowly convergent moments.
        let s_full = moments::full_inverse_power_sums(b1, b2, offset, 6, exclude_below);

        // Tail moments beyond the top level, by direct summation out to a
        // radius where the raw remainder bound is negligible for every k.
        let z_top = top_radius / (RADIUS_RATIO * policy.safety);
        let mut r_big = top_radius * 1.5;
        for &k in &k_list {
            if k <= 6 {
                continue;
            }
            let eps_k = 2.5e-10 * k as f64 / real::powi(z_top, k as i32);
            let need = real::powf(
                (3.0 * core::f64::consts::PI / (area * (k as f64 - 2.0)) / eps_k).max(1.0),
                1.0 / (k as f64 - 2.0),
            );
            r_big = r_big.max(need);
        }
        if r_big > R_BIG_CAP {
            return Err(Error::numerical(format!(
                "direct-path tail summation would need radius {r_big:.0} (cap {R_BIG_CAP}); \
                 reduce max_direct_radius"
            )));
        }
        let mut outside = vec![KahanComplex::new(); K_MAX + 1];
        let k_big: Vec<usize> = k_list.iter().copied().filter(|&k| k > 6).collect();
        lattice.for_points_in_disc(r_big * r_big, |p| {
            let nsq = p.norm_sqr();
            if nsq <= top_cut_sq || nsq < 1e-24 {
                return;
            }
            let inv = C64::new(1.0, 0.0) / p;
            let mut v = inv;
            let mut kth = 1usize;
            for &k in &k_big {
                while kth < k {
                    v *= inv;
                    kth += 1;
                }
                outside[k].add(v);
            }
        });

        // T_k per level: small k from the full-lattice sums minus the level
        // prefix, large k by telescoping the fresh annulus sums up from the
        // outside pass.
        let n_levels = levels.len();
        let mut tails: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); K_MAX + 1]; n_levels];
        for &k in &k_list {
            if k <= 6 {
                for i in 0..n_levels {
                    tails[i][k] = s_full[k] - per_level_small[i].0[k];
                }
            } else {
                tails[n_levels - 1][k] = outside[k].value();
                for i in (0..n_levels - 1).rev() {
                    tails[i][k] = tails[i + 1][k] + annulus[i + 1][k];
                }
            }
        }
        for (i, lvl) in levels.iter_mut().enumerate() {
            lvl.tail = core::mem::take(&mut tails[i]);
            lvl.abs_partial = per_level_small[i].1.clone();
            if i == n_levels - 1 {
                lvl.cut_sq = top_cut_sq;
            }
        }

        Ok(Self {
            lattice,
            b1,
            b2,
            offset,
            has_origin,
            min_dist,
            area,
            policy,
            k_list,
            points,
            levels,
            quasi_a: [C64::new(0.0, 0.0); 2],
            quasi_b: [C64::new(0.0, 0.0); 2],
            max_direct_radius,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn min_distance(&self) -> f64 {
        self.min_dist
    }

    pub fn max_direct_radius(&self) -> f64 {
        self.max_direct_radius
    }

    /// Quasi-period constants `(eta1, eta2)` for the original basis: the
    /// functional equation reads `f(z + w_i) = exp(eta_i z + B_i) f(z)`.
    pub fn quasi_periods(&self) -> (C64, C64) {
        // The calibrated constants live on the reduced basis; transport them
        // by integrality of the change of basis (the map w -> A_w is additive).
        let to_int = |z: C64| {
            let (x, y) = Lattice::basis_coords(self.b1, self.b2, z);
            (real::round(x), real::round(y))
        };
        let (c11, c12) = to_int(self.lattice.omega1);
        let (c21, c22) = to_int(self.lattice.omega2);
        (
            self.quasi_a[0] * c11 + self.quasi_a[1] * c12,
            self.quasi_a[0] * c21 + self.quasi_a[1] * c22,
        )
    }

    /// `|eta1 w2 - eta2 w1 - 2 pi i|` for the original (oriented) basis.
    pub fn legendre_residual(&self) -> f64 {
        let (e1, e2) = self.quasi_periods();
        (e1 * self.lattice.omega2 - e2 * self.lattice.omega1 - C64::new(0.0, TWO_PI)).norm()
    }

    /// Nearest lattice point, using the cached reduced basis.
    fn nearest_lattice_point(&self, z: C64) -> C64 {
        let (x, y) = Lattice::basis_coords(self.b1, self.b2, z - self.offset);
        let (mx, my) = (real::round(x), real::round(y));
        let mut best = self.b1 * mx + self.b2 * my + self.offset;
        let mut best_d = (z - best).norm_sqr();
        for dm in -1..=1 {
            for dn in -1..=1 {
                let p = self.b1 * (mx + dm as f64) + self.b2 * (my + dn as f64) + self.offset;
                let dist = (z - p).norm_sqr();
                if dist < best_d {
                    best_d = dist;
                    best = p;
                }
            }
        }
        best
    }

    fn level_for(&self, z_abs: f64) -> Result<usize> {
        let needed = RADIUS_RATIO * self.policy.safety * z_abs;
        match self
            .levels
            .iter()
            .position(|l| l.radius >= needed)
        {
            Some(i) => Ok(i),
            None => Err(Error::input(format!(
                "|z| = {z_abs:.3} beyond the direct-path radius {:.3}",
                self.max_direct_radius
            ))),
        }
    }

    /// Conservative absolute error model for the direct path at `|z|`.
    fn direct_error_floor(&self, z_abs: f64, lvl: &Level) -> f64 {
        let mut floor = 4e-16 * (1.0 + z_abs * z_abs * (TWO_PI / self.area) * 8.0);
        // Differenced small-k tail moments carry a few ulps of the full-sum
        // scale (compensated summation holds both sides to ~1 ulp of their
        // post-exclusion values).
        let mut zk = z_abs * z_abs * z_abs;
        for k in 3..=6usize {
            if self.k_list.contains(&k) {
                floor += zk / k as f64 * (1e-15 + 2e-16 * lvl.abs_partial[k]);
            }
            zk *= z_abs;
        }
        // Post-correction remainder beyond K_MAX.
        let ratio = z_abs / lvl.radius;
        if ratio > 0.0 {
            let k_last = *self.k_list.last().unwrap() as f64;
            let rem = (3.0 * core::f64::consts::PI / self.area)
                * lvl.radius
                * lvl.radius
                * real::powi(ratio, (self.k_list.last().unwrap() + 1) as i32)
                / (k_last * (k_last - 2.0) * (1.0 - ratio).max(0.05));
            floor += rem;
        }
        // Contribution of the tabulated tail moments' own accuracy.
        floor += 3e-10;
        floor
    }

    /// Direct truncated evaluation (the oracle path).
    ///
    /// Absolute log-modulus error at most `policy.target_abs_err`; fails with
    /// a numerical error when the target is below the attainable floor and
    /// with an input error when `|z|` exceeds the table coverage.
    pub fn eval_direct(&self, z: C64) -> Result<ScaledValue> {
        let lvl_idx = self.level_for(z.norm())?;
        let lvl = &self.levels[lvl_idx];
        let floor = self.direct_error_floor(z.norm(), lvl);
        if floor > self.policy.target_abs_err {
            return Err(Error::numerical(format!(
                "target_abs_err {:.1e} below attainable floor {floor:.1e} at |z| = {:.2}",
                self.policy.target_abs_err,
                z.norm()
            )));
        }

        // Near-zero factor split: the vanishing linear factor is kept out of
        // the exponent so `unit -> 0` while the derivative stays finite.
        let nearest = self.nearest_lattice_point(z);
        let near = (z - nearest).norm() < 0.4 * self.min_dist;
        let near_origin = near && nearest.norm_sqr() < 1e-24;
        let near_thr = 0.25 * self.min_dist * self.min_dist;

        let mut log_sum = KahanComplex::new();
        let mut dsum = KahanComplex::new();
        for pd in &self.points[..lvl.end] {
            let w = z * pd.inv;
            if near && !near_origin && (pd.p - nearest).norm_sqr() < near_thr {
                // exponential part of the split factor only
                log_sum.add(w + w * w * 0.5);
                dsum.add(pd.inv + z * pd.inv2);
                continue;
            }
            if w.norm_sqr() <= 0.1225 {
                // fused series: log E2(w) = -sum_{k>=3} w^k / k and
                // d/dz log E2(z/p) = -(1/p) sum_{k>=2} w^k
                let w2 = w * w;
                let mut pw = w2 * w;
                let mut slog = C64::new(0.0, 0.0);
                let mut sgeo = w2;
                let mut k = 3.0;
                loop {
                    slog += pw / k;
                    sgeo += pw;
                    pw *= w;
                    k += 1.0;
                    if pw.norm_sqr() < 1e-40 * (1.0 + slog.norm_sqr()) {
                        break;
                    }
                }
                log_sum.add(-slog);
                dsum.add(-pd.inv * sgeo);
            } else {
                log_sum.add(clog(C64::new(1.0, 0.0) - w) + w + w * w * 0.5);
                dsum.add(C64::new(1.0, 0.0) / (z - pd.p) + pd.inv + z * pd.inv2);
            }
        }

        // Split-out linear factor, plus the bare factor z of an
        // origin-bearing lattice when z is away from the origin.
        let (bare, bare_d) = if near_origin {
            (z, C64::new(1.0, 0.0))
        } else if near {
            (C64::new(1.0, 0.0) - z / nearest, -C64::new(1.0, 0.0) / nearest)
        } else {
            (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
        };
        if self.has_origin && !near_origin {
            log_sum.add(clog(z));
            dsum.add(C64::new(1.0, 0.0) / z);
        }

        // Tail corrections: log gains -sum z^k/k T_k, the log-derivative
        // gains sum z^{k-1} T_k.
        let mut log_tail = C64::new(0.0, 0.0);
        let mut d_tail = C64::new(0.0, 0.0);
        let mut zpow = vec![C64::new(0.0, 0.0); K_MAX + 1];
        zpow[2] = z * z;
        for k in 3..=K_MAX {
            zpow[k] = zpow[k - 1] * z;
        }
        for &k in &self.k_list {
            let t = lvl.tail[k];
            log_tail -= zpow[k] / k as f64 * t;
            d_tail -= zpow[k - 1] * t;
        }

        let s = log_sum.value() + log_tail;
        let rot = cis(s.im);
        let g_prime = dsum.value() + d_tail;
        Ok(ScaledValue {
            log_scale: s.re,
            unit: bare * rot,
            deriv: (bare_d + bare * g_prime) * rot,
        }
        .normalize())
    }

    /// Quasi-periodic reduction (the production path): `O(1)` in `|z|` after
    /// table construction.
    pub fn eval_reduced(&self, z: C64) -> ScaledValue {
        let (x, y) = Lattice::basis_coords(self.b1, self.b2, z);
        let m = real::round(x);
        let n = real::round(y);
        let z0 = z - self.b1 * m - self.b2 * n;
        let sv0 = self
            .eval_direct(z0)
            .expect("cell point is always inside the level-0 table");
        if m == 0.0 && n == 0.0 {
            return sv0;
        }
        // Exponent of the accumulated functional equation, closed form:
        // stepping z0 -> z0 + n b2 -> z0 + n b2 + m b1.
        let e2 = self.quasi_a[1] * (n * z0) + self.quasi_a[1] * self.b2 * (n * (n - 1.0) / 2.0)
            + self.quasi_b[1] * n;
        let u1 = z0 + self.b2 * n;
        let e1 = self.quasi_a[0] * (m * u1) + self.quasi_a[0] * self.b1 * (m * (m - 1.0) / 2.0)
            + self.quasi_b[0] * m;
        let e = e1 + e2;
        let slope = self.quasi_a[0] * m + self.quasi_a[1] * n;
        let rot = cis(e.im);
        ScaledValue {
            log_scale: sv0.log_scale + e.re,
            unit: sv0.unit * rot,
            deriv: (sv0.deriv + slope * sv0.unit) * rot,
        }
        .normalize()
    }

    /// A cell point a fixed fraction into the cell, pushed away from zeros.
    fn calibration_point(&self) -> C64 {
        let mut zc = self.b1 * 0.1909 + self.b2 * 0.2912;
        for _ in 0..16 {
            if (zc - self.lattice.nearest_point(zc)).norm() >= 0.25 * self.min_dist {
                break;
            }
            zc += (self.b1 + self.b2) * 0.077;
        }
        zc
    }

    fn complex_log_at(&self, z: C64) -> Result<(C64, C64)> {
        let sv = self.eval_direct(z)?;
        let ld = sv
            .log_derivative()
            .ok_or_else(|| Error::numerical("calibration point fell on a zero"))?;
        Ok((
            C64::new(sv.log_scale, real::atan2(sv.unit.im, sv.unit.re)),
            ld,
        ))
    }

    fn calibrate_quasi_periods(&mut self) -> Result<()> {
        let zc = self.calibration_point();
        let (lc, dc) = self.complex_log_at(zc)?;
        for (i, w) in [self.b1, self.b2].into_iter().enumerate() {
            let (lw, dw) = self.complex_log_at(zc + w)?;
            let a = dw - dc;
            let b = (lw - lc) - a * zc; // defined mod 2 pi i
            self.quasi_a[i] = a;
            self.quasi_b[i] = b;
        }
        let res =
            (self.quasi_a[0] * self.b2 - self.quasi_a[1] * self.b1 - C64::new(0.0, TWO_PI)).norm();
        if res > 1e-10 {
            return Err(Error::numerical(format!(
                "Legendre relation residual {res:.2e} exceeds 1e-10"
            )));
        }
        Ok(())
    }

    fn self_check(&self) -> Result<()> {
        let mut worst = 0.0f64;
        for (cm, cn) in [(2.0, 1.0), (-1.0, 2.0), (3.0, -2.0), (-2.0, -2.0)] {
            let mut zt = self.b1 * (cm + 0.137) + self.b2 * (cn + 0.211);
            for _ in 0..8 {
                if (zt - self.lattice.nearest_point(zt)).norm() >= 0.2 * self.min_dist {
                    break;
                }
                zt += (self.b1 - self.b2) * 0.053;
            }
            if zt.norm() > self.max_direct_radius {
                continue;
            }
            let direct = self.eval_direct(zt)?.log_modulus();
            let reduced = self.eval_reduced(zt).log_modulus();
            worst = worst.max(real::abs(direct - reduced));
        }
        if worst > 1e-6 {
            return Err(Error::numerical(format!(
                "reduction self-check lost {worst:.2e} of log-modulus consistency"
            )));
        }
        Ok(())
    }
}
