//! Entire-function building blocks for curve components, each evaluable as a
//! [`ScaledValue`] so quadratic-growth functions never overflow.

use crate::error::{Error, Result};
use crate::lattice::LatticeProduct;
use crate::num::{cis, real};
use crate::scaled::ScaledValue;
use crate::C64;
use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// `P(z) = a0 + a1 z + a2 z^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic {
    pub a0: C64,
    pub a1: C64,
    pub a2: C64,
}

impl Quadratic {
    pub fn new(a0: C64, a1: C64, a2: C64) -> Self {
        Self { a0, a1, a2 }
    }

    pub fn linear(a0: C64, a1: C64) -> Self {
        Self::new(a0, a1, C64::new(0.0, 0.0))
    }

    #[inline]
    pub fn eval(&self, z: C64) -> C64 {
        self.a0 + (self.a1 + self.a2 * z) * z
    }

    #[inline]
    pub fn derivative(&self, z: C64) -> C64 {
        self.a1 + 2.0 * self.a2 * z
    }

    /// `exp(P(z))` in split log form: the scale is exactly `Re P(z)`.
    pub fn exp_eval(&self, z: C64) -> ScaledValue {
        let p = self.eval(z);
        let unit = cis(p.im);
        ScaledValue {
            log_scale: p.re,
            unit,
            deriv: unit * self.derivative(z),
        }
    }
}

/// One term `c exp(lambda z)` of an exponential sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coeff: C64,
    pub lambda: C64,
}

impl ExpTerm {
    pub fn new(coeff: C64, lambda: C64) -> Self {
        Self { coeff, lambda }
    }
}

/// An entire function presented in a form the evaluator can keep in log
/// scale: exponentials of quadratics, finite exponential sums, genus-2
/// canonical products, polynomials, constants, exponential rescalings, and
/// linear combinations (the latter arise from coordinate shears).
#[derive(Debug, Clone)]
pub enum EntireComponent {
    ExpPoly(Quadratic),
    ExpSum(Vec<ExpTerm>),
    CanonicalProduct(Arc<LatticeProduct>),
    Polynomial(Vec<C64>),
    Constant(C64),
    Scaled {
        base: Box<EntireComponent>,
        exp_linear: C64,
    },
    Combination(Vec<(C64, EntireComponent)>),
}

impl EntireComponent {
    pub fn one() -> Self {
        EntireComponent::Constant(C64::new(1.0, 0.0))
    }

    /// `sin z` as the exponential sum `(e^{iz} - e^{-iz}) / 2i`.
    pub fn sin() -> Self {
        EntireComponent::ExpSum(alloc::vec![
            ExpTerm::new(C64::new(0.0, -0.5), C64::new(0.0, 1.0)),
            ExpTerm::new(C64::new(0.0, 0.5), C64::new(0.0, -1.0)),
        ])
    }

    /// `e^z`.
    pub fn exp_z() -> Self {
        EntireComponent::ExpPoly(Quadratic::linear(C64::new(0.0, 0.0), C64::new(1.0, 0.0)))
    }

    /// The identity `z`.
    pub fn id_z() -> Self {
        EntireComponent::Polynomial(alloc::vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        match self {
            EntireComponent::ExpPoly(q) => {
                if [q.a0, q.a1, q.a2].into_iter().all(finite) {
                    Ok(())
                } else {
                    Err(Error::input("exp_poly coefficients must be finite"))
                }
            }
            EntireComponent::ExpSum(terms) => {
                if terms.is_empty() {
                    return Err(Error::input("exp_sum needs at least one term"));
                }
                if !terms.iter().all(|t| finite(t.coeff) && finite(t.lambda)) {
                    return Err(Error::input("exp_sum data must be finite"));
                }
                if terms.iter().all(|t| t.coeff == C64::new(0.0, 0.0)) {
                    return Err(Error::input("exp_sum is identically zero"));
                }
                Ok(())
            }
            EntireComponent::CanonicalProduct(_) => Ok(()),
            EntireComponent::Polynomial(coeffs) => {
                if coeffs.is_empty() || coeffs.iter().all(|&c| c == C64::new(0.0, 0.0)) {
                    return Err(Error::input("polynomial is identically zero"));
                }
                if !coeffs.iter().copied().all(finite) {
                    return Err(Error::input("polynomial coefficients must be finite"));
                }
                Ok(())
            }
            EntireComponent::Constant(c) => {
                if !finite(*c) {
                    Err(Error::input("constant must be finite"))
                } else if *c == C64::new(0.0, 0.0) {
                    Err(Error::input("constant component must be nonzero"))
                } else {
                    Ok(())
                }
            }
            EntireComponent::Scaled { base, exp_linear } => {
                if !finite(*exp_linear) {
                    return Err(Error::input("scaled exponent must be finite"));
                }
                base.validate()
            }
            EntireComponent::Combination(parts) => {
                if parts.is_empty() {
                    return Err(Error::input("combination needs at least one part"));
                }
                for (c, part) in parts {
                    if !finite(*c) {
                        return Err(Error::input("combination coefficient must be finite"));
                    }
                    part.validate()?;
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, z: C64) -> ScaledValue {
        match self {
            EntireComponent::ExpPoly(q) => q.exp_eval(z),
            EntireComponent::ExpSum(terms) => {
                let mut smax = f64::NEG_INFINITY;
                for t in terms {
                    if t.coeff == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let s = (t.lambda * z).re + real::ln(t.coeff.norm());
                    if s > smax {
                        smax = s;
                    }
                }
                let mut unit = C64::new(0.0, 0.0);
                let mut deriv = C64::new(0.0, 0.0);
                for t in terms {
                    if t.coeff == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let w = t.lambda * z;
                    let mag = real::exp(w.re + real::ln(t.coeff.norm()) - smax);
                    let phase = cis(w.im + real::atan2(t.coeff.im, t.coeff.re));
                    let v = phase * mag;
                    unit += v;
                    deriv += t.lambda * v;
                }
                ScaledValue::new(smax, unit, deriv)
            }
            EntireComponent::CanonicalProduct(p) => p.eval_reduced(z),
            EntireComponent::Polynomial(coeffs) => {
                let mut v = C64::new(0.0, 0.0);
                let mut d = C64::new(0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    d = d * z + v;
                    v = v * z + c;
                }
                ScaledValue::new(0.0, v, d)
            }
            EntireComponent::Constant(c) => ScaledValue::new(0.0, *c, C64::new(0.0, 0.0)),
            EntireComponent::Scaled { base, exp_linear } => {
                base.eval(z).mul_exp_linear(*exp_linear, z)
            }
            EntireComponent::Combination(parts) => {
                let evals: Vec<(C64, ScaledValue)> =
                    parts.iter().map(|(c, p)| (*c, p.eval(z))).collect();
                let smax = evals
                    .iter()
                    .map(|(_, sv)| sv.log_scale)
                    .fold(f64::NEG_INFINITY, f64::max);
                let mut unit = C64::new(0.0, 0.0);
                let mut deriv = C64::new(0.0, 0.0);
                for (c, sv) in &evals {
                    let w = real::exp(sv.log_scale - smax);
                    unit += *c * sv.unit * w;
                    deriv += *c * sv.deriv * w;
                }
                ScaledValue::new(smax, unit, deriv)
            }
        }
    }
}
