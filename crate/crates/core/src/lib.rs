//! Executable pseudo-manifold geometry.
//!
//! Points of `(Rⁿ, ω)` carry rotation charges that classify them per axis as
//! elliptic, euclidean or hyperbolic and bend every line through them. The
//! crate traces rays through such scenes, detects where the parallel axiom is
//! denied, builds the one-sided tangent and cotangent models, validates
//! Minkowski norms and Kähler metrics, and does principal-bundle dimension
//! bookkeeping.

pub mod cli;
pub mod emit;
pub mod error;
pub mod fiber;
pub mod finsler;
pub mod geodesics;
pub mod omega;
pub mod scene;
pub mod tangent;

pub use error::{Error, Result};
