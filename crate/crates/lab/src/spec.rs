//! Curve specification files (JSON) and their translation to core types.
//!
//! Format:
//!
//! ```json
//! {"components": [
//!   {"type": "exp_poly", "coeffs": [[re, im], [re, im], [re, im]]},
//!   {"type": "exp_sum", "terms": [{"c": [re, im], "lambda": [re, im]}]},
//!   {"type": "canonical_product",
//!    "lattice": {"omega1": [re, im], "omega2": [re, im], "offset": [re, im]}},
//!   {"type": "constant", "value": [re, im]},
//!   {"type": "scaled", "base": { ... }, "exp_linear": [re, im]},
//!   {"type": "poly", "coeffs": [[re, im], ...]}
//! ]}
//! ```
//!
//! `poly` (an ordinary polynomial in `z`) extends the set so that curves
//! like `(z, 1)` are expressible.

use brody_core::{
    Complex64, EntireComponent, Error, ExpTerm, HoloCurve, Lattice, LatticeProduct, Quadratic,
    TruncationPolicy,
};
use serde::Deserialize;
use std::sync::Arc;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComponentSpec {
    ExpPoly {
        coeffs: Vec<[f64; 2]>,
    },
    ExpSum {
        terms: Vec<TermSpec>,
    },
    CanonicalProduct {
        lattice: LatticeSpec,
    },
    Constant {
        value: [f64; 2],
    },
    Scaled {
        base: Box<ComponentSpec>,
        exp_linear: [f64; 2],
    },
    Poly {
        coeffs: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub c: [f64; 2],
    pub lambda: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub omega1: [f64; 2],
    pub omega2: [f64; 2],
    pub offset: [f64; 2],
}

fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl ComponentSpec {
    pub fn to_component(&self, max_direct_radius: f64) -> Result<EntireComponent, Error> {
        Ok(match self {
            ComponentSpec::ExpPoly { coeffs } => {
                if coeffs.is_empty() || coeffs.len() > 3 {
                    return Err(Error::input(
                        "exp_poly takes one to three coefficients (a0, a1, a2)",
                    ));
                }
                let get = |i: usize| coeffs.get(i).copied().map(c).unwrap_or(Complex64::new(0.0, 0.0));
                EntireComponent::ExpPoly(Quadratic::new(get(0), get(1), get(2)))
            }
            ComponentSpec::ExpSum { terms } => EntireComponent::ExpSum(
                terms
                    .iter()
                    .map(|t| ExpTerm::new(c(t.c), c(t.lambda)))
                    .collect(),
            ),
            ComponentSpec::CanonicalProduct { lattice } => {
                let l = Lattice::new(c(lattice.omega1), c(lattice.omega2), c(lattice.offset))?;
                let p = LatticeProduct::new(l, TruncationPolicy::default(), max_direct_radius)?;
                EntireComponent::CanonicalProduct(Arc::new(p))
            }
            ComponentSpec::Constant { value } => EntireComponent::Constant(c(*value)),
            ComponentSpec::Scaled { base, exp_linear } => EntireComponent::Scaled {
                base: Box::new(base.to_component(max_direct_radius)?),
                exp_linear: c(*exp_linear),
            },
            ComponentSpec::Poly { coeffs } => {
                EntireComponent::Polynomial(coeffs.iter().copied().map(c).collect())
            }
        })
    }
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("curve spec: {e}")))
    }

    pub fn to_curve(&self, max_direct_radius: f64) -> Result<HoloCurve, Error> {
        let components = self
            .components
            .iter()
            .map(|s| s.to_component(max_direct_radius))
            .collect::<Result<Vec<_>, _>>()?;
        HoloCurve::new(components)
    }
}

pub fn load_curve(path: &std::path::Path, max_direct_radius: f64) -> Result<HoloCurve, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    CurveSpec::parse(&text)?.to_curve(max_direct_radius)
}
