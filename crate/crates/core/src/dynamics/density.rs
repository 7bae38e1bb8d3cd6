//! Density transport along spinor-space trajectories.
//!
//! Integrates `dψ/dt = V(t, ψ)` together with `d(ln ρ)/dt = −div V` using
//! classical fourth-order Runge–Kutta, and estimates the local error of every
//! step by comparing one full step with two half steps.

use serde::Serialize;

use super::avatar::{default_step, flow_divergence};
use super::axpy;
use crate::bilinear::Spinor;
use crate::error::{Error, Result};

pub const DEFAULT_DT: f64 = 1e-3;
/// Default bound on the per-step error estimate.
pub const DEFAULT_BUDGET: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensitySample {
    pub t: f64,
    pub rho: f64,
    pub ln_rho: f64,
    /// Flow divergence at the sample point.
    pub divergence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    pub psi: Spinor<f64>,
    pub rho: f64,
    pub trajectory: Vec<DensitySample>,
    /// Largest step-halving error estimate seen.
    pub max_error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub t0: f64,
    pub t1: f64,
    pub dt: f64,
    pub budget: f64,
    /// Divergence step; `None` uses `1e−4·(1 + ‖ψ‖)`.
    pub h: Option<f64>,
}

impl IntegratorConfig {
    pub fn new(t0: f64, t1: f64, dt: f64) -> Self {
        IntegratorConfig { t0, t1, dt, budget: DEFAULT_BUDGET, h: None }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t1 > self.t0) {
            return Err(Error::InvalidConfig(format!("empty time span [{}, {}]", self.t0, self.t1)));
        }
        if !(self.budget > 0.0) {
            return Err(Error::InvalidConfig(format!("error budget must be positive, got {}", self.budget)));
        }
        Ok(())
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self::new(0.0, 1.0, DEFAULT_DT)
    }
}

#[derive(Clone)]
struct Point {
    psi: Spinor<f64>,
    ln_rho: f64,
}

impl Point {
    fn plus(&self, c: f64, d: &Point) -> Point {
        Point { psi: axpy(&self.psi, c, &d.psi), ln_rho: self.ln_rho + c * d.ln_rho }
    }

    fn distance(&self, other: &Point) -> f64 {
        let dpsi = axpy(&self.psi, -1.0, &other.psi).norm_sqr().sqrt();
        dpsi.max((self.ln_rho - other.ln_rho).abs())
    }
}

struct System<'a, V> {
    v: &'a V,
    h: Option<f64>,
}

impl<V: Fn(f64, &Spinor<f64>) -> Spinor<f64>> System<'_, V> {
    fn divergence(&self, t: f64, psi: &Spinor<f64>) -> Result<f64> {
        let h = self.h.unwrap_or_else(|| default_step(psi));
        flow_divergence(|p| (self.v)(t, p), psi, h)
    }

    fn rate(&self, t: f64, y: &Point) -> Result<Point> {
        Ok(Point { psi: (self.v)(t, &y.psi), ln_rho: -self.divergence(t, &y.psi)? })
    }

    fn rk4(&self, t: f64, y: &Point, dt: f64) -> Result<Point> {
        let k1 = self.rate(t, y)?;
        let k2 = self.rate(t + dt / 2.0, &y.plus(dt / 2.0, &k1))?;
        let k3 = self.rate(t + dt / 2.0, &y.plus(dt / 2.0, &k2))?;
        let k4 = self.rate(t + dt, &y.plus(dt, &k3))?;
        let mut out = y.plus(dt / 6.0, &k1);
        out = out.plus(dt / 3.0, &k2);
        out = out.plus(dt / 3.0, &k3);
        Ok(out.plus(dt / 6.0, &k4))
    }
}

/// Integrates the trajectory and its density from `(psi0, rho0)` at `cfg.t0`.
pub fn integrate_density<V>(v: V, psi0: &Spinor<f64>, rho0: f64, cfg: &IntegratorConfig) -> Result<DensityState>
where
    V: Fn(f64, &Spinor<f64>) -> Spinor<f64>,
{
    cfg.validate()?;
    if !(rho0 > 0.0 && rho0.is_finite()) {
        return Err(Error::InvalidConfig(format!("initial density must be positive, got {rho0}")));
    }
    let sys = System { v: &v, h: cfg.h };
    let steps = ((cfg.t1 - cfg.t0) / cfg.dt).ceil().max(1.0) as usize;
    let dt = (cfg.t1 - cfg.t0) / steps as f64;

    let mut y = Point { psi: psi0.clone(), ln_rho: rho0.ln() };
    let mut trajectory = Vec::with_capacity(steps + 1);
    let mut max_err: f64 = 0.0;
    let sample = |t: f64, y: &Point| -> Result<DensitySample> {
        Ok(DensitySample { t, rho: y.ln_rho.exp(), ln_rho: y.ln_rho, divergence: sys.divergence(t, &y.psi)? })
    };
    trajectory.push(sample(cfg.t0, &y)?);
    for n in 0..steps {
        let t = cfg.t0 + n as f64 * dt;
        let full = sys.rk4(t, &y, dt)?;
        let half = sys.rk4(t, &y, dt / 2.0)?;
        let fine = sys.rk4(t + dt / 2.0, &half, dt / 2.0)?;
        // Richardson factor for a fourth-order method.
        let estimate = full.distance(&fine) / 15.0;
        if !(estimate <= cfg.budget) {
            return Err(Error::StepTooLarge { estimate, budget: cfg.budget });
        }
        max_err = max_err.max(estimate);
        y = fine;
        trajectory.push(sample(t + dt, &y)?);
    }
    Ok(DensityState { rho: y.ln_rho.exp(), psi: y.psi, trajectory, max_error_estimate: max_err })
}

/// Largest `|ρ/ρ₀ − 1|` along the trajectory.
pub fn max_relative_drift(state: &DensityState) -> f64 {
    let rho0 = state.trajectory.first().map_or(1.0, |s| s.rho);
    state.trajectory.iter().map(|s| (s.rho / rho0 - 1.0).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
pub(crate) fn scale_real(psi: &Spinor<f64>, c: f64) -> Spinor<f64> {
    psi.scale(&num_complex::Complex64::from(c))
}
