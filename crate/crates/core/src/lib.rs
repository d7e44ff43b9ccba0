//! Numerical core for holomorphic curves `C -> P^n`: log-domain evaluation of
//! entire components (exponentials of quadratics, exponential sums, genus-2
//! canonical products over plane lattices), spherical derivatives, Nevanlinna
//! characteristics by independent routes, positive-harmonic-function bounds on
//! discs, and growth-inequality verification for curves omitting hyperplanes.
//!
//! The crate is `no_std` (with `alloc`); everything here is pure computation
//! on immutable inputs and safe to drive from any number of worker threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod component;
pub mod curve;
pub mod error;
pub mod example;
pub mod growth;
pub mod harmonic;
pub mod lattice;
pub mod num;
pub mod quad;
pub mod scaled;
pub mod verifier;

pub use component::{EntireComponent, ExpTerm, Quadratic};
pub use curve::{CurvePoint, HoloCurve, SupEstimate};
pub use error::Error;
pub use growth::{GrowthSample, OrderTypeFit};
pub use harmonic::HarmonicDiscCase;
pub use lattice::{Lattice, LatticeProduct, TruncationPolicy};
pub use scaled::ScaledValue;
pub use verifier::{InequalityRecord, OmittingCurveCase};

pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub(crate) type C64 = num_complex::Complex64;
