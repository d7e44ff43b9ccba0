//! Plane lattices `{m w1 + n w2 + offset}` and genus-2 canonical products
//! with zeros on them.
//!
//! Products are evaluated two ways: a truncated direct product with analytic
//! tail corrections (the oracle path) and a quasi-periodic reduction into the
//! fundamental cell (the production path, `O(1)` per point after table
//! construction). The two paths share nothing beyond the factor arithmetic,
//! so their agreement is a meaningful cross-check.

mod moments;
mod product;

pub use product::{e2_log, eval_e2_factor, LatticeProduct, TruncationPolicy};

use crate::error::{Error, Result};
use crate::num::real;
use crate::C64;
use alloc::vec::Vec;

/// Oriented plane lattice with an offset: the point set `{m w1 + n w2 + d}`.
///
/// `Im(w2/w1) > 0` is required so the basis is nondegenerate and positively
/// oriented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub omega1: C64,
    pub omega2: C64,
    pub offset: C64,
}

impl Lattice {
    pub fn new(omega1: C64, omega2: C64, offset: C64) -> Result<Self> {
        for v in [omega1, omega2, offset] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::input("lattice data must be finite"));
            }
        }
        let orient = (omega2 / omega1).im;
        if !(orient > 0.0) {
            return Err(Error::input("lattice basis must satisfy Im(omega2/omega1) > 0"));
        }
        Ok(Self {
            omega1,
            omega2,
            offset,
        })
    }

    /// `Z + iZ`.
    pub fn square_unit() -> Self {
        Self {
            omega1: C64::new(1.0, 0.0),
            omega2: C64::new(0.0, 1.0),
            offset: C64::new(0.0, 0.0),
        }
    }

    /// `Z + iZ` shifted by `(1+i)/2`.
    pub fn square_half_shift() -> Self {
        Self {
            offset: C64::new(0.5, 0.5),
            ..Self::square_unit()
        }
    }

    /// Area of the fundamental cell.
    pub fn cell_area(&self) -> f64 {
        (self.omega1.conj() * self.omega2).im
    }

    /// Lagrange-reduced basis spanning the same lattice, shortest vector
    /// first, orientation preserved.
    pub fn reduced_basis(&self) -> (C64, C64) {
        let mut b1 = self.omega1;
        let mut b2 = self.omega2;
        for _ in 0..64 {
            if b2.norm_sqr() < b1.norm_sqr() {
                core::mem::swap(&mut b1, &mut b2);
                b2 = -b2; // keep Im(b2/b1) > 0
            }
            let mu = real::round((b2 * b1.conj()).re / b1.norm_sqr());
            if mu == 0.0 {
                break;
            }
            b2 -= b1 * mu;
        }
        if b2.norm_sqr() < b1.norm_sqr() {
            core::mem::swap(&mut b1, &mut b2);
            b2 = -b2;
        }
        (b1, b2)
    }

    /// Real coordinates `(x, y)` of `z` in the given basis: `z = x b1 + y b2`.
    pub(crate) fn basis_coords(b1: C64, b2: C64, z: C64) -> (f64, f64) {
        let det = b1.re * b2.im - b1.im * b2.re;
        let x = (z.re * b2.im - z.im * b2.re) / det;
        let y = (b1.re * z.im - b1.im * z.re) / det;
        (x, y)
    }

    /// Offset reduced into the cell centered at the origin (same point set).
    pub fn reduced_offset(&self) -> C64 {
        let (b1, b2) = self.reduced_basis();
        let (x, y) = Self::basis_coords(b1, b2, self.offset);
        let d = self.offset - b1 * real::round(x) - b2 * real::round(y);
        // Snap an offset that is a lattice vector to exactly zero.
        if d.norm() < 1e-9 * b1.norm() {
            C64::new(0.0, 0.0)
        } else {
            d
        }
    }

    /// Whether the point set contains the origin.
    pub fn has_origin(&self) -> bool {
        self.reduced_offset() == C64::new(0.0, 0.0)
    }

    /// Shortest nonzero distance between lattice points.
    pub fn min_distance(&self) -> f64 {
        self.reduced_basis().0.norm()
    }

    /// Whether the point set is invariant under multiplication by `i`.
    pub fn is_four_fold(&self) -> bool {
        let (b1, b2) = self.reduced_basis();
        let i = C64::new(0.0, 1.0);
        let integral = |z: C64| {
            let (x, y) = Self::basis_coords(b1, b2, z);
            real::abs(x - real::round(x)) < 1e-12 && real::abs(y - real::round(y)) < 1e-12
        };
        let d = self.reduced_offset();
        integral(i * b1) && integral(i * b2) && integral(i * d - d)
    }

    /// The lattice point nearest to `z`.
    pub fn nearest_point(&self, z: C64) -> C64 {
        let (b1, b2) = self.reduced_basis();
        let d = self.reduced_offset();
        let (x, y) = Self::basis_coords(b1, b2, z - d);
        let (mx, my) = (real::round(x), real::round(y));
        let mut best = b1 * mx + b2 * my + d;
        let mut best_d = (z - best).norm_sqr();
        for dm in -1..=1 {
            for dn in -1..=1 {
                let p = b1 * (mx + dm as f64) + b2 * (my + dn as f64) + d;
                let dist = (z - p).norm_sqr();
                if dist < best_d {
                    best_d = dist;
                    best = p;
                }
            }
        }
        best
    }

    /// All lattice points with `|p|^2 <= r2`, visited row by row in the
    /// reduced basis. The closure receives the point.
    pub(crate) fn for_points_in_disc(&self, r2: f64, mut visit: impl FnMut(C64)) {
        let (b1, b2) = self.reduced_basis();
        let d = self.reduced_offset();
        let r = real::sqrt(r2);
        // Row n has anchor c = d + n b2; its closest approach to the origin
        // along the b1 direction is |Im(c conj(b1))| / |b1|.
        let area = (b1.conj() * b2).im;
        let n_center = -(d * b1.conj()).im / ((b2 * b1.conj()).im);
        let n_span = (r * b1.norm()) / real::abs(area) + 1.0;
        let n_lo = real::floor(n_center - n_span) as i64;
        let n_hi = real::floor(n_center + n_span) as i64 + 1;
        let b1n2 = b1.norm_sqr();
        for n in n_lo..=n_hi {
            let c = d + b2 * (n as f64);
            let rb = (c * b1.conj()).re;
            let disc = rb * rb - b1n2 * (c.norm_sqr() - r2);
            if disc < 0.0 {
                continue;
            }
            let s = real::sqrt(disc);
            let m_lo = real::floor((-rb - s) / b1n2 - 1e-9) as i64;
            let m_hi = real::floor((-rb + s) / b1n2 + 1e-9) as i64 + 1;
            for m in m_lo..=m_hi {
                let p = c + b1 * (m as f64);
                if p.norm_sqr() <= r2 {
                    visit(p);
                }
            }
        }
    }

    /// Sorted (by modulus, then angle) list of lattice points in the disc of
    /// radius `r`, excluding the origin when the lattice contains it.
    pub fn points_in_disc(&self, r: f64) -> Vec<C64> {
        let mut pts = Vec::new();
        self.for_points_in_disc(r * r, |p| {
            if p.norm_sqr() > 1e-24 {
                pts.push(p);
            }
        });
        pts.sort_unstable_by(|a, b| {
            let (ra, rb) = (a.norm_sqr(), b.norm_sqr());
            ra.total_cmp(&rb)
                .then_with(|| real::atan2(a.im, a.re).total_cmp(&real::atan2(b.im, b.re)))
        });
        pts
    }
}
