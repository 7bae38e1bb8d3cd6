//! Dirac bilinear covariants, Fierz identities, Lounesto classification,
//! class-preserving symmetries and the pulled-back spinor-space dynamics.
//!
//! Computations are generic over the real field `R`: [`algebra::Rational`]
//! for exact work, `f64` for floating point.

pub mod algebra;
pub mod bilinear;
pub mod dynamics;
pub mod error;
pub mod json;
pub mod lounesto;
pub mod symmetry;

pub use error::{Error, Result};
