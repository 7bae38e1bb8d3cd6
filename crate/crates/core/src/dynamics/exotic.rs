//! Exotic spinors: the Dirac operator shifted by `iγ^μ∂_μθ`.
//!
//! With `𝒟̃ = 𝒟 + iγ^μ(∂_μθ)` the pulled-back velocity becomes
//!
//! ```text
//! δ_tψ̃ = −imγ⁰ψ̃ − θ̇ψ̃ − γ⁰φ⁻¹γ^j(∂_jΨ̃ + (∂_jθ)Ψ̃).
//! ```
//!
//! The `−θ̇ψ̃` term contributes `−8θ̇` to the divergence over the eight real
//! coordinates of spinor space. Density rates are reported both raw and
//! divided by 8, the per-degree-of-freedom rate that matches `ρ = ρ₀e^θ`.

use num_complex::Complex64;
use serde::Serialize;

use super::avatar::{mass_term, spatial_dirac, AvatarMap, FlowState};
use super::density::{integrate_density, DensitySample, IntegratorConfig};
use super::field::{dirac_apply, PlaneWave, SpinorField};
use super::axpy;
use crate::algebra::{standard, Matrix4};
use crate::bilinear::Spinor;
use crate::error::{Error, Result};

/// Real degrees of freedom of a Dirac spinor.
pub const REAL_DIMENSION: f64 = 8.0;

/// Step for finite-difference gradients of `θ`.
pub const THETA_FD_STEP: f64 = 1e-5;

/// A real scalar `θ(x⃗, t)`.
pub trait ExoticTheta {
    fn value(&self, x: [f64; 3], t: f64) -> f64;

    /// `[∂_tθ, ∂_xθ, ∂_yθ, ∂_zθ]`; central differences unless overridden.
    fn gradient(&self, x: [f64; 3], t: f64) -> [f64; 4] {
        fd_theta_gradient(self, x, t, THETA_FD_STEP)
    }
}

pub fn fd_theta_gradient<T: ExoticTheta + ?Sized>(theta: &T, x: [f64; 3], t: f64, h: f64) -> [f64; 4] {
    std::array::from_fn(|mu| {
        let (mut xp, mut xm, mut tp, mut tm) = (x, x, t, t);
        if mu == 0 {
            tp += h;
            tm -= h;
        } else {
            xp[mu - 1] += h;
            xm[mu - 1] -= h;
        }
        (theta.value(xp, tp) - theta.value(xm, tm)) / (2.0 * h)
    })
}

/// Largest gap between the gradient a `θ` reports and central differences.
pub fn gradient_consistency<T: ExoticTheta + ?Sized>(theta: &T, points: &[([f64; 3], f64)], h: f64) -> f64 {
    points
        .iter()
        .flat_map(|&(x, t)| {
            let a = theta.gradient(x, t);
            let b = fd_theta_gradient(theta, x, t, h);
            (0..4).map(move |mu| (a[mu] - b[mu]).abs())
        })
        .fold(0.0, f64::max)
}

impl<T: ExoticTheta + ?Sized> ExoticTheta for &T {
    fn value(&self, x: [f64; 3], t: f64) -> f64 {
        (**self).value(x, t)
    }

    fn gradient(&self, x: [f64; 3], t: f64) -> [f64; 4] {
        (**self).gradient(x, t)
    }
}

/// `θ = θ₀ + κt + k⃗·x⃗`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct LinearTheta {
    pub kappa: f64,
    pub k: [f64; 3],
    #[serde(default)]
    pub offset: f64,
}

impl LinearTheta {
    pub fn zero() -> Self {
        LinearTheta { kappa: 0.0, k: [0.0; 3], offset: 0.0 }
    }

    pub fn temporal(kappa: f64) -> Self {
        LinearTheta { kappa, ..Self::zero() }
    }

    pub fn spatial(k: [f64; 3]) -> Self {
        LinearTheta { k, ..Self::zero() }
    }
}

impl ExoticTheta for LinearTheta {
    fn value(&self, x: [f64; 3], t: f64) -> f64 {
        self.offset + self.kappa * t + self.k[0] * x[0] + self.k[1] * x[1] + self.k[2] * x[2]
    }

    fn gradient(&self, _x: [f64; 3], _t: f64) -> [f64; 4] {
        [self.kappa, self.k[0], self.k[1], self.k[2]]
    }
}

/// `θ` sampled on a regular `(t, x, y, z)` grid, multilinearly interpolated.
/// Points outside the grid extrapolate from the nearest cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedTheta {
    origin: [f64; 4],
    spacing: [f64; 4],
    dims: [usize; 4],
    values: Vec<f64>,
}

impl TabulatedTheta {
    /// `values` is row-major in `(t, x, y, z)` order.
    pub fn new(origin: [f64; 4], spacing: [f64; 4], dims: [usize; 4], values: Vec<f64>) -> Result<Self> {
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidConfig(format!("every grid axis needs at least 2 points, got {dims:?}")));
        }
        if spacing.iter().any(|&h| !(h > 0.0)) {
            return Err(Error::InvalidConfig(format!("grid spacing must be positive, got {spacing:?}")));
        }
        let n: usize = dims.iter().product();
        if values.len() != n {
            return Err(Error::InvalidConfig(format!("expected {n} grid values, got {}", values.len())));
        }
        Ok(TabulatedTheta { origin, spacing, dims, values })
    }

    pub fn from_fn(origin: [f64; 4], spacing: [f64; 4], dims: [usize; 4], f: impl Fn([f64; 3], f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(dims.iter().product());
        for it in 0..dims[0] {
            for ix in 0..dims[1] {
                for iy in 0..dims[2] {
                    for iz in 0..dims[3] {
                        let c = |a: usize, i: usize| origin[a] + spacing[a] * i as f64;
                        values.push(f([c(1, ix), c(2, iy), c(3, iz)], c(0, it)));
                    }
                }
            }
        }
        Self::new(origin, spacing, dims, values)
    }

    fn at(&self, idx: [usize; 4]) -> f64 {
        let [a, b, c, d] = idx;
        let [_, nb, nc, nd] = self.dims;
        self.values[((a * nb + b) * nc + c) * nd + d]
    }
}

impl ExoticTheta for TabulatedTheta {
    fn value(&self, x: [f64; 3], t: f64) -> f64 {
        let coord = [t, x[0], x[1], x[2]];
        let mut base = [0usize; 4];
        let mut frac = [0.0; 4];
        for a in 0..4 {
            let u = (coord[a] - self.origin[a]) / self.spacing[a];
            let cell = (u.floor().max(0.0) as usize).min(self.dims[a] - 2);
            base[a] = cell;
            frac[a] = u - cell as f64;
        }
        let mut total = 0.0;
        for corner in 0..16usize {
            let mut w = 1.0;
            let mut idx = base;
            for a in 0..4 {
                if corner >> a & 1 == 1 {
                    idx[a] += 1;
                    w *= frac[a];
                } else {
                    w *= 1.0 - frac[a];
                }
            }
            total += w * self.at(idx);
        }
        total
    }
}

/// `𝒟Ψ + iγ^μ(∂_μθ)Ψ`.
pub fn exotic_dirac_apply<F, T>(field: &F, mass: f64, theta: &T, x: [f64; 3], t: f64) -> Spinor<f64>
where
    F: SpinorField + ?Sized,
    T: ExoticTheta + ?Sized,
{
    let psi = field.value(x, t);
    let dtheta = theta.gradient(x, t);
    let g = &standard::<f64>().gamma;
    let extra = (0..4).fold(Spinor::zero(), |acc, mu| &acc + &psi.transform(&g[mu]).scale(&Complex64::new(0.0, dtheta[mu])));
    &dirac_apply(field, mass, x, t) + &extra
}

/// Exotic velocity at the spinor-space image of `(x⃗, t)`.
pub fn exotic_velocity<F, T>(field: &F, theta: &T, phi: &AvatarMap, mass: f64, x: [f64; 3], t: f64) -> FlowState
where
    F: SpinorField + ?Sized,
    T: ExoticTheta + ?Sized,
{
    let big = field.value(x, t);
    let psi = phi.pull_back(&big);
    let dtheta = theta.gradient(x, t);
    let grad = field.gradient(x, t);
    let shifted: [Spinor<f64>; 4] = std::array::from_fn(|mu| axpy(&grad[mu], dtheta[mu], &big));
    let transport = phi.pull_back(&spatial_dirac(&shifted)).transform(standard::<f64>().gamma0());
    let velocity = axpy(&axpy(&mass_term(&psi, mass), -dtheta[0], &psi), -1.0, &transport);
    FlowState { psi, velocity, x, t }
}

/// Exotic flow on spinor space at a fixed spatial point, for a base field with
/// `γ⃗·∂⃗Ψ = GΨ` (a plane wave, or `G = 0` for a constant field).
pub struct ExoticFlow<T> {
    pub generator: Matrix4<f64>,
    pub mass: f64,
    pub phi: AvatarMap,
    pub theta: T,
    pub x: [f64; 3],
}

impl<T: ExoticTheta> ExoticFlow<T> {
    pub fn plane_wave(wave: &PlaneWave, phi: AvatarMap, theta: T, x: [f64; 3]) -> Self {
        ExoticFlow { generator: wave.spatial_generator(), mass: wave.mass, phi, theta, x }
    }

    pub fn constant(mass: f64, phi: AvatarMap, theta: T, x: [f64; 3]) -> Self {
        ExoticFlow { generator: Matrix4::zero(), mass, phi, theta, x }
    }

    pub fn velocity(&self, t: f64, psi: &Spinor<f64>) -> Spinor<f64> {
        let dtheta = self.theta.gradient(self.x, t);
        let big = self.phi.push_forward(psi);
        let g = &standard::<f64>().gamma;
        let mut spatial = big.transform(&self.generator);
        for j in 1..4 {
            spatial = axpy(&spatial, dtheta[j], &big.transform(&g[j]));
        }
        let transport = self.phi.pull_back(&spatial).transform(standard::<f64>().gamma0());
        axpy(&axpy(&mass_term(psi, self.mass), -dtheta[0], psi), -1.0, &transport)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExoticDensityReport {
    pub rho0: f64,
    /// `d(ln ρ)/dt = −div` at the final time.
    pub raw_rate: f64,
    /// `raw_rate / 8`.
    pub normalized_rate: f64,
    /// `θ̇` at the final time.
    pub expected_rate: f64,
    /// `max_t |normalized rate − θ̇|`.
    pub max_rate_deviation: f64,
    pub final_rho: f64,
    /// `ρ₀(ρ/ρ₀)^{1/8}` at the final time.
    pub final_normalized_rho: f64,
    /// `ρ₀e^{θ(t₁) − θ(t₀)}`.
    pub expected_final_rho: f64,
    /// `max_t |ρ_norm/ρ_expected − 1|`.
    pub max_density_deviation: f64,
    pub max_error_estimate: f64,
    #[serde(skip)]
    pub trajectory: Vec<DensitySample>,
}

/// Integrates the exotic flow from `psi0` and compares the density with `ρ₀e^θ`.
pub fn exotic_density_check<T: ExoticTheta>(
    flow: &ExoticFlow<T>,
    psi0: &Spinor<f64>,
    rho0: f64,
    cfg: &IntegratorConfig,
) -> Result<ExoticDensityReport> {
    let state = integrate_density(|t, p| flow.velocity(t, p), psi0, rho0, cfg)?;
    let theta0 = flow.theta.value(flow.x, cfg.t0);
    let mut max_rate_deviation: f64 = 0.0;
    let mut max_density_deviation: f64 = 0.0;
    for s in &state.trajectory {
        let normalized = -s.divergence / REAL_DIMENSION;
        let theta_dot = flow.theta.gradient(flow.x, s.t)[0];
        max_rate_deviation = max_rate_deviation.max((normalized - theta_dot).abs());
        let norm_rho = rho0 * ((s.ln_rho - rho0.ln()) / REAL_DIMENSION).exp();
        let expected = rho0 * (flow.theta.value(flow.x, s.t) - theta0).exp();
        max_density_deviation = max_density_deviation.max((norm_rho / expected - 1.0).abs());
    }
    let last = *state.trajectory.last().expect("trajectory has samples");
    Ok(ExoticDensityReport {
        rho0,
        raw_rate: -last.divergence,
        normalized_rate: -last.divergence / REAL_DIMENSION,
        expected_rate: flow.theta.gradient(flow.x, last.t)[0],
        max_rate_deviation,
        final_rho: last.rho,
        final_normalized_rho: rho0 * ((last.ln_rho - rho0.ln()) / REAL_DIMENSION).exp(),
        expected_final_rho: rho0 * (flow.theta.value(flow.x, last.t) - theta0).exp(),
        max_density_deviation,
        max_error_estimate: state.max_error_estimate,
        trajectory: state.trajectory,
    })
}
