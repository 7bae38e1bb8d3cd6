//! Scalars, 4×4 matrices and the fixed gamma-matrix basis.

pub mod gamma;
pub mod matrix;
pub mod scalar;

pub use gamma::{
    basis_label, build_gamma_basis, clifford_residual, gamma_basis_expand, levi_civita, standard,
    GammaBasis, Sector, BASIS_LEN, BIVECTOR_PAIRS, METRIC,
};
pub use matrix::{Block2, Matrix4, RealMatrix};
pub use scalar::{ComplexExt, Exact, Float, Mode, Rational, Real, Scalar};
