//! Exact-arithmetic library for plateau statistics in Motzkin paths.
//!
//! A plateau of length r is an up step, exactly r horizontal steps,
//! then a down step. This crate computes the generating functions that
//! count such patterns (and their height-restricted variants) in three
//! independent ways and cross-validates them:
//!
//! - a brute-force path enumerator ([`oracle`]), the ground truth;
//! - sewing recursions and closed radical forms ([`engines`]);
//! - height-indexed continued-fraction expansions ([`engines::contfrac`]).
//!
//! Everything is exact: coefficients are arbitrary-precision integers,
//! and the few divided recursions run in exact rationals with an
//! integrality check at every public boundary.

pub mod engines;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod series;

pub use error::{EngineError, OracleError, SeriesError};
pub use poly::MarkerPoly;
pub use series::{RatXSeries, XSeries};

/// Exact rational scalar used by the divided recursions.
pub type ExactRational = num::rational::BigRational;
