//! Overflow-free carrier for an entire function value and its derivative.

use crate::num::real;
use crate::C64;

/// Value of an entire function `f` at a point, in split log form:
/// `f = unit * exp(log_scale)` and `f' = deriv * exp(log_scale)`.
///
/// After [`normalize`](Self::normalize), `|unit| == 1` away from zeros of
/// `f`, so `log_scale` is exactly `log|f|`. At a zero, `unit == 0` while
/// `deriv` stays finite, which keeps spherical-derivative sums well defined
/// without special cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub log_scale: f64,
    pub unit: C64,
    pub deriv: C64,
}

impl ScaledValue {
    pub fn new(log_scale: f64, unit: C64, deriv: C64) -> Self {
        Self {
            log_scale,
            unit,
            deriv,
        }
        .normalize()
    }

    /// Fold `|unit|` into the scale so that `|unit| <= 1` (equal to 1 away
    /// from zeros). Zero units are kept as exact zeros.
    pub fn normalize(mut self) -> Self {
        let m = real::hypot(self.unit.re, self.unit.im);
        if m > 0.0 && m.is_finite() {
            self.log_scale += real::ln(m);
            self.unit /= m;
            self.deriv /= m;
        }
        self
    }

    /// `log|f|`; `-inf` at zeros of `f`.
    #[inline]
    pub fn log_modulus(&self) -> f64 {
        let m = real::hypot(self.unit.re, self.unit.im);
        if m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.log_scale + real::ln(m)
        }
    }

    /// Logarithmic derivative `f'/f`. `None` at a zero of `f`.
    #[inline]
    pub fn log_derivative(&self) -> Option<C64> {
        if self.unit == C64::new(0.0, 0.0) {
            None
        } else {
            Some(self.deriv / self.unit)
        }
    }

    /// Multiply by `exp(w)` (rotates the unit, shifts the scale, and adds
    /// `w' * f` to the derivative part for a linear exponent `w = lambda z`).
    #[inline]
    pub fn mul_exp_linear(&self, lambda: C64, z: C64) -> Self {
        let w = lambda * z;
        let rot = crate::num::cis(w.im);
        ScaledValue {
            log_scale: self.log_scale + w.re,
            unit: self.unit * rot,
            deriv: (self.deriv + lambda * self.unit) * rot,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_moves_modulus_into_scale() {
        let sv = ScaledValue::new(1.0, C64::new(3.0, 4.0), C64::new(10.0, 0.0));
        assert!((sv.unit.norm() - 1.0).abs() < 1e-15);
        assert!((sv.log_modulus() - (1.0 + 5.0f64.ln())).abs() < 1e-14);
        // deriv/unit unchanged by normalization
        let ld = sv.log_derivative().unwrap();
        let expect = C64::new(10.0, 0.0) / C64::new(3.0, 4.0);
        assert!((ld - expect).norm() < 1e-14);
    }

    #[test]
    fn zero_keeps_finite_derivative() {
        let sv = ScaledValue::new(2.0, C64::new(0.0, 0.0), C64::new(1.0, -1.0));
        assert_eq!(sv.log_modulus(), f64::NEG_INFINITY);
        assert!(sv.log_derivative().is_none());
        assert!(sv.deriv.norm() > 0.0);
    }
}
