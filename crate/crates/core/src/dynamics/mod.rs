//! Free Dirac dynamics, its pullback to spinor space, and the exotic extension.
//!
//! Everything here works in binary64 with natural units (`ħ = c = 1`).
//! Spacetime points are `(x⃗, t)`; gradients are ordered `[∂_t, ∂_x, ∂_y, ∂_z]`.

mod avatar;
mod density;
mod exotic;
mod field;

pub use avatar::{
    avatar_velocity, default_step, flow_divergence, liouville_check, massive_divergence_report, AvatarMap,
    FlowState, LinearFlow, LiouvilleReport, COMMUTATION_TOL, LIOUVILLE_TOL, MAX_CONDITION,
};
pub use density::{
    integrate_density, max_relative_drift, DensitySample, DensityState, IntegratorConfig, DEFAULT_BUDGET, DEFAULT_DT,
};
pub use exotic::{
    exotic_density_check, exotic_dirac_apply, exotic_velocity, fd_theta_gradient, gradient_consistency,
    ExoticDensityReport, ExoticFlow, ExoticTheta, LinearTheta, TabulatedTheta, REAL_DIMENSION, THETA_FD_STEP,
};
pub use field::{
    dirac_apply, finite_difference_gradient, plane_wave, Branch, ConstantField, DressedField, FnField, PlaneWave,
    Spin, SpinorField, FD_STEP, SHELL_TOL,
};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bilinear::Spinor;

/// `a + c·b`.
pub fn axpy(a: &Spinor<f64>, c: f64, b: &Spinor<f64>) -> Spinor<f64> {
    Spinor(std::array::from_fn(|i| a.0[i] + b.0[i] * c))
}

/// Uniformly distributed point on the unit sphere of spinor space.
pub fn random_unit_spinor(rng: &mut impl Rng) -> Spinor<f64> {
    let v = Spinor(std::array::from_fn(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))));
    let n = v.norm_sqr().sqrt();
    v.scale(&Complex64::from(1.0 / n))
}
