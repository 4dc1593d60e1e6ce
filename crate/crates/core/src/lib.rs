//! Certification of ℓ²-acyclicity for Coxeter groups whose nerve is a
//! triangulated 2-sphere.
//!
//! The engine walks the decomposition argument mechanically: special forms
//! (boundary of a simplex, suspensions of 3-, 4-, 5-gons, L6-triangulations)
//! are recognized first, empty Euclidean circuits are split along, and what
//! remains has its Euclidean vertex stars replaced by ideal cells and is checked
//! against Andreev's conditions. Every step lands in a [`certify::Certificate`]
//! that [`certify::verify`] re-checks from scratch.

pub mod andreev;
pub mod certify;
pub mod complex;
pub mod coxeter;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod reduction;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational numbers used for angle sums, group orders, and χ².
pub type Rational = num_rational::BigRational;

/// Gram matrix over the certified fixed-point scalar.
pub type PreciseGramMatrix = coxeter::GramMatrix<scalar::Fixed>;

/// Gram matrix over `f64`, for quick diagnostics.
pub type GramMatrixF64 = coxeter::GramMatrix<f64>;

/// Gram matrix over `f32`.
pub type GramMatrixF32 = coxeter::GramMatrix<f32>;

/// Gram matrix over exact rationals; only labels 2 and 3 are representable.
pub type RationalGramMatrix = coxeter::GramMatrix<Rational>;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
