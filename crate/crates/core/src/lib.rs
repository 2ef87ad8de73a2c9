//! Exact decision procedures and desk-scale experiments for expanding
//! polynomials: structure detection for additive and multiplicative forms,
//! implicitization and curve intersection counting, the permutation counting
//! lemma, and sumset/product-set growth measurements.

pub mod acceptance;
pub mod algcurves;
pub mod counting;
pub mod error;
pub mod exactmath;
pub mod expansion;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use scalar::{Field, Rational};

/// Univariate polynomial with rational coefficients.
pub type UniPoly = exactmath::Poly<Rational>;
/// Multivariate polynomial with rational coefficients.
pub type MultiPoly = exactmath::MPoly<Rational>;
