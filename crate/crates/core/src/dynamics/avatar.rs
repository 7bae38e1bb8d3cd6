//! Pullback of the Dirac evolution to spinor space through an avatar map `φ`.
//!
//! Solving `(iγ^μ∂_μ − m)Ψ = 0` for `∂_tΨ` and pulling back with `φ⁻¹`
//! (which commutes with `γ⁰`) gives the velocity
//!
//! ```text
//! δ_tψ = −imγ⁰ψ − γ⁰φ⁻¹(γ⃗·∂⃗Ψ),    ψ = φ⁻¹Ψ.
//! ```

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::{PlaneWave, SpinorField};
use super::{axpy, random_unit_spinor};
use crate::algebra::{standard, Matrix4};
use crate::bilinear::Spinor;
use crate::error::{Error, Result};

/// Bound on `‖[φ, γ⁰]‖`, relative to `max(1, ‖φ‖)`.
pub const COMMUTATION_TOL: f64 = 1e-12;
/// Bound on the Frobenius condition number `‖φ‖_F‖φ⁻¹‖_F`.
pub const MAX_CONDITION: f64 = 1e6;
/// Default tolerance on the spinor-space divergence.
pub const LIOUVILLE_TOL: f64 = 1e-6;

/// Invertible map commuting with `γ⁰`; in the Weyl basis, `[[P, Q], [Q, P]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AvatarMap {
    phi: Matrix4<f64>,
    inv: Matrix4<f64>,
}

impl AvatarMap {
    pub fn new(phi: Matrix4<f64>) -> Result<Self> {
        let g0 = standard::<f64>().gamma0();
        let size = phi.max_abs().max(1.0);
        let comm = phi.commutator(g0).max_abs();
        if comm > COMMUTATION_TOL * size {
            return Err(Error::InvalidAvatar(format!("[φ, γ⁰] has entries up to {comm:e}")));
        }
        let inv = phi.inverse().ok_or_else(|| Error::InvalidAvatar("φ is singular".into()))?;
        let cond = phi.frobenius() * inv.frobenius();
        if !(cond <= MAX_CONDITION) {
            return Err(Error::InvalidAvatar(format!("condition number {cond:e} exceeds {MAX_CONDITION:e}")));
        }
        Ok(AvatarMap { phi, inv })
    }

    pub fn identity() -> Self {
        AvatarMap { phi: Matrix4::identity(), inv: Matrix4::identity() }
    }

    pub fn from_blocks(p: &[[Complex64; 2]; 2], q: &[[Complex64; 2]; 2]) -> Result<Self> {
        Self::new(Matrix4::from_blocks(p, q, q, p))
    }

    /// A random commutant member with condition number at most `max_condition`.
    pub fn random(rng: &mut impl Rng, max_condition: f64) -> Self {
        loop {
            let mut block = || -> [[Complex64; 2]; 2] {
                std::array::from_fn(|_| {
                    std::array::from_fn(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                })
            };
            let (p, q) = (block(), block());
            if let Ok(a) = Self::from_blocks(&p, &q) {
                if a.condition() <= max_condition {
                    return a;
                }
            }
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.phi
    }

    pub fn inverse(&self) -> &Matrix4<f64> {
        &self.inv
    }

    pub fn condition(&self) -> f64 {
        self.phi.frobenius() * self.inv.frobenius()
    }

    pub fn pull_back(&self, big_psi: &Spinor<f64>) -> Spinor<f64> {
        big_psi.transform(&self.inv)
    }

    pub fn push_forward(&self, psi: &Spinor<f64>) -> Spinor<f64> {
        psi.transform(&self.phi)
    }
}

/// A point of spinor space with its velocity and the spacetime point it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub psi: Spinor<f64>,
    pub velocity: Spinor<f64>,
    pub x: [f64; 3],
    pub t: f64,
}

/// `γ⃗·∂⃗Ψ` from a gradient.
pub(crate) fn spatial_dirac(grad: &[Spinor<f64>; 4]) -> Spinor<f64> {
    let g = &standard::<f64>().gamma;
    (1..4).fold(Spinor::zero(), |acc, j| &acc + &grad[j].transform(&g[j]))
}

/// `−imγ⁰ψ`.
pub(crate) fn mass_term(psi: &Spinor<f64>, mass: f64) -> Spinor<f64> {
    psi.transform(standard::<f64>().gamma0()).scale(&Complex64::new(0.0, -mass))
}

/// `δ_tψ` at the spinor-space image of `(x⃗, t)`.
pub fn avatar_velocity<F: SpinorField + ?Sized>(field: &F, phi: &AvatarMap, mass: f64, x: [f64; 3], t: f64) -> FlowState {
    let psi = phi.pull_back(&field.value(x, t));
    let spatial = spatial_dirac(&field.gradient(x, t));
    let transport = phi.pull_back(&spatial).transform(standard::<f64>().gamma0());
    let velocity = axpy(&mass_term(&psi, mass), -1.0, &transport);
    FlowState { psi, velocity, x, t }
}

/// A linear flow `V(ψ) = Aψ` on spinor space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFlow {
    pub matrix: Matrix4<f64>,
}

impl LinearFlow {
    /// Flow induced by a plane wave: `A = −imγ⁰ − γ⁰φ⁻¹Gφ` with `γ⃗·∂⃗Ψ = GΨ`.
    pub fn plane_wave(wave: &PlaneWave, phi: &AvatarMap) -> Self {
        let g0 = standard::<f64>().gamma0();
        let transport = &(&(g0 * phi.inverse()) * &wave.spatial_generator()) * phi.matrix();
        let mass = g0.scale(&Complex64::new(0.0, -wave.mass));
        LinearFlow { matrix: &mass - &transport }
    }

    pub fn velocity(&self, psi: &Spinor<f64>) -> Spinor<f64> {
        psi.transform(&self.matrix)
    }

    /// Divergence over the 8 real coordinates: `2 Re Tr A`.
    pub fn analytic_divergence(&self) -> f64 {
        2.0 * self.matrix.trace().re
    }
}

/// Default divergence step at `ψ`: `1e−4·(1 + ‖ψ‖)`.
pub fn default_step(psi: &Spinor<f64>) -> f64 {
    1e-4 * (1.0 + psi.norm_sqr().sqrt())
}

/// Central-difference divergence of `v` at `psi` over the real and imaginary
/// parts of the four components.
pub fn flow_divergence(v: impl Fn(&Spinor<f64>) -> Spinor<f64>, psi: &Spinor<f64>, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidConfig(format!("divergence step must be positive, got {h}")));
    }
    let mut div = 0.0;
    for k in 0..4 {
        for dir in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
            let mut plus = psi.clone();
            let mut minus = psi.clone();
            plus.0[k] += dir;
            minus.0[k] -= dir;
            let d = v(&plus).0[k] - v(&minus).0[k];
            // Component along the perturbed real direction.
            let along = if dir.re != 0.0 { d.re } else { d.im };
            div += along / (2.0 * h);
        }
    }
    Ok(div)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvilleReport {
    pub mass: f64,
    pub points: usize,
    pub max_divergence: f64,
    pub mean_divergence: f64,
    /// `dρ/dt / ρ = −div` at the point of largest `|div|`.
    pub drho_dt_over_rho: f64,
    pub tolerance: f64,
    /// `false` for the massive report, which asserts nothing.
    pub asserted: bool,
    pub pass: bool,
}

fn divergence_survey(wave: &PlaneWave, phi: &AvatarMap, n_points: usize, h: Option<f64>, seed: u64, tol: f64) -> Result<LiouvilleReport> {
    if n_points == 0 {
        return Err(Error::InvalidConfig("need at least one sample point".into()));
    }
    let flow = LinearFlow::plane_wave(wave, phi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut worst_signed = 0.0;
    let mut total = 0.0;
    for i in 0..n_points {
        // Alternate pulled-back field values with generic points of Σ.
        let psi = if i % 2 == 0 {
            let x = [0; 3].map(|_| rng.random_range(-5.0..5.0));
            let t = rng.random_range(0.0..10.0);
            phi.pull_back(&wave.value(x, t))
        } else {
            random_unit_spinor(&mut rng).scale(&Complex64::from(rng.random_range(0.1..3.0)))
        };
        let step = h.unwrap_or_else(|| default_step(&psi));
        let div = flow_divergence(|p| flow.velocity(p), &psi, step)?;
        total += div;
        if div.abs() >= worst {
            worst = div.abs();
            worst_signed = div;
        }
    }
    Ok(LiouvilleReport {
        mass: wave.mass,
        points: n_points,
        max_divergence: worst,
        mean_divergence: total / n_points as f64,
        drho_dt_over_rho: -worst_signed,
        tolerance: tol,
        asserted: true,
        pass: worst <= tol,
    })
}

/// Checks that the massless plane-wave flow on spinor space is divergence free.
pub fn liouville_check(wave: &PlaneWave, phi: &AvatarMap, n_points: usize, h: Option<f64>, seed: u64, tol: f64) -> Result<LiouvilleReport> {
    if wave.mass != 0.0 {
        return Err(Error::MassiveInput { mass: wave.mass });
    }
    divergence_survey(wave, phi, n_points, h, seed, tol)
}

/// The same survey for a massive wave, recorded without a verdict.
pub fn massive_divergence_report(wave: &PlaneWave, phi: &AvatarMap, n_points: usize, h: Option<f64>, seed: u64) -> Result<LiouvilleReport> {
    let mut r = divergence_survey(wave, phi, n_points, h, seed, f64::NAN)?;
    r.asserted = false;
    r.pass = false;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::field::{plane_wave, ConstantField, Spin};

    fn z_wave() -> PlaneWave {
        plane_wave([1.0, 0.0, 0.0, 1.0], 0.0, Spin::Up).unwrap()
    }

    fn dist(a: &Spinor<f64>, b: &Spinor<f64>) -> f64 {
        axpy(a, -1.0, b).norm_sqr().sqrt()
    }

    #[test]
    fn identity_avatar_reproduces_time_derivative() {
        for (p, m) in [([1.0, 0.0, 0.0, 1.0], 0.0), ([3.0, 1.0, 2.0, -2.0], 0.0), ([2.0, 0.0, 1.0, 0.0], 3f64.sqrt())] {
            let w = plane_wave(p, m, Spin::Down).unwrap();
            let st = avatar_velocity(&w, &AvatarMap::identity(), m, [0.2, 0.5, -0.1], 1.3);
            let dt = w.gradient([0.2, 0.5, -0.1], 1.3)[0].clone();
            assert!(dist(&st.velocity, &dt) <= 1e-10);
        }
    }

    #[test]
    fn constant_field_velocity() {
        let psi0 = Spinor([Complex64::from(1.0), Complex64::from(0.0), Complex64::from(0.0), Complex64::from(0.0)]);
        let f = ConstantField(psi0.clone());
        let st = avatar_velocity(&f, &AvatarMap::identity(), 0.0, [0.0; 3], 0.0);
        assert_eq!(st.velocity.norm_sqr(), 0.0);
        let st = avatar_velocity(&f, &AvatarMap::identity(), 1.0, [0.0; 3], 0.0);
        let expected = Spinor([0.0, 0.0, 0.0, 0.0].map(Complex64::from));
        let mut expected = expected;
        expected.0[2] = Complex64::new(0.0, -1.0);
        assert!(dist(&st.velocity, &expected) == 0.0);
    }

    #[test]
    fn avatar_validation() {
        let g1 = standard::<f64>().gamma[1].clone();
        assert!(matches!(AvatarMap::new(g1), Err(Error::InvalidAvatar(_))));
        assert!(matches!(AvatarMap::new(Matrix4::zero()), Err(Error::InvalidAvatar(_))));
        let mut near = Matrix4::identity();
        near[(0, 0)] = Complex64::from(1e-9);
        near[(2, 2)] = Complex64::from(1e-9);
        assert!(matches!(AvatarMap::new(near), Err(Error::InvalidAvatar(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = AvatarMap::random(&mut rng, 50.0);
        assert!(a.matrix().commutator(standard::<f64>().gamma0()).max_abs() <= 1e-15);
    }

    #[test]
    fn divergence_examples() {
        let psi = Spinor([Complex64::new(0.3, -1.0), Complex64::from(2.0), Complex64::new(0.0, 0.5), Complex64::from(-1.0)]);
        let c = psi.clone();
        assert!(flow_divergence(move |_| c.clone(), &psi, 1e-4).unwrap().abs() <= 1e-10);
        assert!((flow_divergence(|p| p.clone(), &psi, 1e-4).unwrap() - 8.0).abs() <= 1e-9);
        let massive = flow_divergence(|p| mass_term(p, 1.0), &psi, 1e-4).unwrap();
        assert!(massive.abs() <= 1e-10);
        assert!(flow_divergence(|p| p.clone(), &psi, 0.0).is_err());
    }

    #[test]
    fn plane_wave_flow_matches_pointwise_velocity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = AvatarMap::random(&mut rng, 100.0);
        let w = plane_wave([2.0, 1.0, -1.0, 0.5], 1.75f64.sqrt(), Spin::Up).unwrap();
        let flow = LinearFlow::plane_wave(&w, &phi);
        let st = avatar_velocity(&w, &phi, w.mass, [0.1, 0.2, 0.3], 0.4);
        assert!(dist(&flow.velocity(&st.psi), &st.velocity) <= 1e-12);
        assert!(flow.analytic_divergence().abs() <= 1e-12);
    }

    #[test]
    fn liouville_examples() {
        let r = liouville_check(&z_wave(), &AvatarMap::identity(), 100, Some(1e-4), 3, LIOUVILLE_TOL).unwrap();
        assert!(r.pass, "{r:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = AvatarMap::random(&mut rng, 100.0);
        assert!(liouville_check(&z_wave(), &phi, 50, None, 5, LIOUVILLE_TOL).unwrap().pass);
        let massive = plane_wave([1.0, 0.0, 0.0, 0.0], 1.0, Spin::Up).unwrap();
        assert_eq!(
            liouville_check(&massive, &AvatarMap::identity(), 10, None, 0, LIOUVILLE_TOL),
            Err(Error::MassiveInput { mass: 1.0 })
        );
        let report = massive_divergence_report(&massive, &AvatarMap::identity(), 10, None, 0).unwrap();
        assert!(!report.asserted && !report.pass);
    }
}
