//! Full-lattice inverse power sums `S_k = sum over lattice points p != 0 of
//! p^{-k}`, `k >= 3` (absolutely convergent; the genus-2 regime).
//!
//! The lattice is summed row by row in a reduced basis. Rows away from the
//! real axis use the exponentially convergent expansion of
//! `sum_m (m + a)^{-k}` in powers of `exp(2 pi i a)`; the (at most one) row
//! with a small imaginary part falls back to a direct sum with Euler-Maclaurin
//! tails. Truncated direct products use these sums to correct their tails.

use crate::num::{cis, real, KahanComplex};
use crate::C64;
use alloc::vec;
use alloc::vec::Vec;

const TWO_PI: f64 = core::f64::consts::TAU;

/// Row sums with `|Im a|` below this threshold go through Euler-Maclaurin.
/// Above it the Fourier expansion converges fast and stays within range.
/// Any excluded point lies in a row with `|Im a| < 0.8`, below the threshold.
const EM_THRESHOLD: f64 = 0.86;

/// `sum_{m in Z} (m + a)^{-k}` for all k in `3..=k_max`, `Im a >= EM_THRESHOLD`
/// or `Im a <= -EM_THRESHOLD`, via the power series in `exp(±2 pi i a)`.
fn row_fourier(a: C64, k_max: usize) -> Vec<C64> {
    let upper = a.im > 0.0;
    // q = e^{2 pi i a} (upper) or e^{-2 pi i a} (lower); |q| < 1.
    let q = if upper {
        real::exp(-TWO_PI * a.im) * cis(TWO_PI * a.re)
    } else {
        real::exp(TWO_PI * a.im) * cis(-TWO_PI * a.re)
    };
    let mut acc = vec![KahanComplex::new(); k_max + 1];
    let mut qd = C64::new(1.0, 0.0);
    let q_abs = q.norm();
    let mut d = 0usize;
    loop {
        d += 1;
        qd *= q;
        let df = d as f64;
        // p = d^{k-1}, starting at k = 3.
        let mut p = df * df;
        for k in 3..=k_max {
            acc[k].add(qd * p);
            p *= df;
        }
        // The k = k_max series has the slowest-decaying terms; stop once its
        // term is negligible past the ridge.
        let ridge = (k_max as f64 - 1.0) / (-real::ln(q_abs));
        let tail = real::powi(df, (k_max - 1) as i32) * real::powi(q_abs, d as i32);
        if (df > ridge && tail < 1e-40) || d >= 600 {
            break;
        }
    }
    // prefactor (∓2 pi i)^k / (k-1)!
    let mut out = vec![C64::new(0.0, 0.0); k_max + 1];
    let mut mag = TWO_PI * TWO_PI * TWO_PI / 2.0; // (2 pi)^3 / 2!
    let unit_i = if upper {
        C64::new(0.0, -1.0) // -i
    } else {
        C64::new(0.0, 1.0)
    };
    let mut phase = unit_i * unit_i * unit_i; // (∓i)^3
    for k in 3..=k_max {
        out[k] = acc[k].value() * phase * mag;
        mag *= TWO_PI / k as f64;
        phase *= unit_i;
    }
    out
}

/// `sum_{m in Z, |m + a| >= skip_below} (m + a)^{-k}` for all k in
/// `3..=k_max` by direct summation of the middle with Euler-Maclaurin tails.
/// Valid for any `a`; used for the near-real row. `skip_below` drops points
/// too close to the origin (the excluded origin itself, and near-origin
/// points whose huge inverse powers would poison downstream cancellation).
fn row_euler_maclaurin(a: C64, k_max: usize, skip_below: f64) -> Vec<C64> {
    const M: f64 = 80.0;
    let m_lo = real::floor(-a.re - M) as i64;
    let m_hi = real::floor(-a.re + M) as i64 + 1;
    let skip_sq = (skip_below * skip_below).max(1e-18);
    let mut acc = vec![KahanComplex::new(); k_max + 1];
    for m in m_lo..=m_hi {
        let t = a + m as f64;
        if t.norm_sqr() < skip_sq {
            continue;
        }
        let inv = C64::new(1.0, 0.0) / t;
        let mut p = inv * inv * inv;
        for k in 3..=k_max {
            acc[k].add(p);
            p *= inv;
        }
    }
    // Tail sum_{m >= t0} phi(m), phi(t) = (t+a)^{-k}:
    //   integral + phi/2 - B2/2! phi' + ... with phi^{(2j-1)} at t0.
    let add_tail = |t0_plus_a: C64, acc: &mut [KahanComplex]| {
        let inv = C64::new(1.0, 0.0) / t0_plus_a;
        // start at k = 3: inv^{k-1} = inv^2
        let mut p_km1 = inv * inv;
        for k in 3..=k_max {
            let kf = k as f64;
            let p_k = p_km1 * inv;
            let int = p_km1 / (kf - 1.0);
            let half = p_k * 0.5;
            let d1 = p_k * inv * (kf / 12.0);
            let d3 = p_k * inv * inv * inv * (kf * (kf + 1.0) * (kf + 2.0) / 720.0);
            let d5 = p_k
                * inv
                * inv
                * inv
                * inv
                * inv
                * (kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) / 30240.0);
            acc[k].add(int + half + d1 - d3 + d5);
            p_km1 = p_k;
        }
    };
    // Right tail: m >= m_hi + 1.
    add_tail(a + (m_hi + 1) as f64, &mut acc);
    // Left tail: m <= m_lo - 1; substitute m -> -m, so sum_{m' >= 1 - m_lo}
    // of (-1)^k (m' - a)^{-k}.
    let mut left = vec![KahanComplex::new(); k_max + 1];
    add_tail(-a + (1 - m_lo) as f64, &mut left);
    let mut out = vec![C64::new(0.0, 0.0); k_max + 1];
    for k in 3..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out[k] = acc[k].value() + left[k].value() * sign;
    }
    out
}

/// Full-lattice sums `S_k = sum p^{-k}` over `p in b1 Z + b2 Z + offset`
/// with `|p| >= exclude_below` (and `p != 0`), `k = 3..=k_max`, for a
/// reduced, positively oriented basis `(b1, b2)`.
pub fn full_inverse_power_sums(
    b1: C64,
    b2: C64,
    offset: C64,
    k_max: usize,
    exclude_below: f64,
) -> Vec<C64> {
    let tau = b2 / b1;
    let beta = offset / b1;
    // beta = x0 + y0 tau in real coordinates.
    let y0 = beta.im / tau.im;
    let x0 = beta.re - y0 * tau.re;
    let skip_below = exclude_below / b1.norm();
    let mut acc = vec![KahanComplex::new(); k_max + 1];
    // Rows contribute ~ exp(-2 pi |n + y0| Im tau); Im tau >= sqrt(3)/2 after
    // reduction, so this range is generous.
    let span = 11.0 / tau.im + 2.0;
    let n_lo = real::floor(-y0 - span) as i64;
    let n_hi = real::floor(-y0 + span) as i64 + 1;
    for n in n_lo..=n_hi {
        let a = C64::new(x0, 0.0) + tau * (n as f64 + y0);
        let row = if real::abs(a.im) >= EM_THRESHOLD {
            row_fourier(a, k_max)
        } else {
            row_euler_maclaurin(a, k_max, skip_below)
        };
        for k in 3..=k_max {
            acc[k].add(row[k]);
        }
    }
    let inv_b1 = C64::new(1.0, 0.0) / b1;
    let mut scale = inv_b1 * inv_b1 * inv_b1;
    let mut out = vec![C64::new(0.0, 0.0); k_max + 1];
    for k in 3..=k_max {
        out[k] = acc[k].value() * scale;
        scale *= inv_b1;
    }
    out
}
