//! Spacetime spinor fields and the Dirac operator `iγ^μ∂_μ − m`.

use num_complex::Complex64;

use super::{axpy, ExoticTheta};
use crate::algebra::{standard, Matrix4};
use crate::bilinear::Spinor;
use crate::error::{Error, Result};

/// Default step for spacetime central differences.
pub const FD_STEP: f64 = 1e-5;

/// Relative on-shell tolerance: `|p·p − m²| <= SHELL_TOL·max(1, E²)`.
pub const SHELL_TOL: f64 = 1e-12;

/// A spinor-valued function of `(x⃗, t)` in natural units.
pub trait SpinorField {
    fn value(&self, x: [f64; 3], t: f64) -> Spinor<f64>;

    /// `[∂_tΨ, ∂_xΨ, ∂_yΨ, ∂_zΨ]`. Central differences unless overridden.
    fn gradient(&self, x: [f64; 3], t: f64) -> [Spinor<f64>; 4] {
        finite_difference_gradient(self, x, t, FD_STEP)
    }
}

pub fn finite_difference_gradient<F: SpinorField + ?Sized>(
    field: &F,
    x: [f64; 3],
    t: f64,
    h: f64,
) -> [Spinor<f64>; 4] {
    std::array::from_fn(|mu| {
        let (mut xp, mut xm, mut tp, mut tm) = (x, x, t, t);
        if mu == 0 {
            tp += h;
            tm -= h;
        } else {
            xp[mu - 1] += h;
            xm[mu - 1] -= h;
        }
        let diff = axpy(&field.value(xp, tp), -1.0, &field.value(xm, tm));
        diff.scale(&Complex64::from(0.5 / h))
    })
}

impl<F: SpinorField + ?Sized> SpinorField for &F {
    fn value(&self, x: [f64; 3], t: f64) -> Spinor<f64> {
        (**self).value(x, t)
    }

    fn gradient(&self, x: [f64; 3], t: f64) -> [Spinor<f64>; 4] {
        (**self).gradient(x, t)
    }
}

/// `Ψ ≡ ψ₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantField(pub Spinor<f64>);

impl SpinorField for ConstantField {
    fn value(&self, _x: [f64; 3], _t: f64) -> Spinor<f64> {
        self.0.clone()
    }

    fn gradient(&self, _x: [f64; 3], _t: f64) -> [Spinor<f64>; 4] {
        std::array::from_fn(|_| Spinor::zero())
    }
}

/// Field given by a closure; derivatives by central differences.
pub struct FnField<F>(pub F);

impl<F: Fn([f64; 3], f64) -> Spinor<f64>> SpinorField for FnField<F> {
    fn value(&self, x: [f64; 3], t: f64) -> Spinor<f64> {
        (self.0)(x, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `u(p)e^{−ip·x}`
    Particle,
    /// `v(p)e^{+ip·x}`
    Antiparticle,
}

/// Plane-wave solution of the free Dirac equation.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    /// Contravariant momentum `(E, p⃗)`.
    pub p: [f64; 4],
    pub mass: f64,
    pub branch: Branch,
    pub amplitude: Spinor<f64>,
}

/// Principal square root of a Hermitian positive-semidefinite 2×2 matrix.
fn psd_sqrt(m: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re.max(0.0);
    let s = det.sqrt();
    let tr = m[0][0].re + m[1][1].re;
    let norm = (tr + 2.0 * s).sqrt();
    if norm == 0.0 {
        return [[Complex64::from(0.0); 2]; 2];
    }
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (m[i][j] + if i == j { Complex64::from(s) } else { Complex64::from(0.0) }) / norm)
    })
}

/// `p⁰𝕀 + sign·p⃗·σ⃗`.
fn momentum_block(p: [f64; 4], sign: f64) -> [[Complex64; 2]; 2] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let (e, px, py, pz) = (p[0], sign * p[1], sign * p[2], sign * p[3]);
    [[c(e + pz, 0.0), c(px, -py)], [c(px, py), c(e - pz, 0.0)]]
}

fn apply2(m: &[[Complex64; 2]; 2], v: [Complex64; 2]) -> [Complex64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

impl PlaneWave {
    /// `u(p) = (√(p·σ)ξ, √(p·σ̄)ξ)` or `v(p) = (√(p·σ)ξ, −√(p·σ̄)ξ)` with
    /// `p·σ = E − p⃗·σ⃗`, `p·σ̄ = E + p⃗·σ⃗`.
    pub fn new(p: [f64; 4], mass: f64, xi: [Complex64; 2], branch: Branch) -> Result<Self> {
        if !(p[0] > 0.0) || !p.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig(format!("energy must be positive and finite, got {}", p[0])));
        }
        if mass < 0.0 {
            return Err(Error::InvalidConfig(format!("mass must be non-negative, got {mass}")));
        }
        let residual = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3] - mass * mass;
        if residual.abs() > SHELL_TOL * p[0].powi(2).max(1.0) {
            return Err(Error::OffShell { residual });
        }
        let upper = apply2(&psd_sqrt(momentum_block(p, -1.0)), xi);
        let lower = apply2(&psd_sqrt(momentum_block(p, 1.0)), xi);
        let s = if branch == Branch::Particle { 1.0 } else { -1.0 };
        let amplitude = Spinor([upper[0], upper[1], lower[0] * s, lower[1] * s]);
        Ok(PlaneWave { p, mass, branch, amplitude })
    }

    fn sign(&self) -> f64 {
        match self.branch {
            Branch::Particle => -1.0,
            Branch::Antiparticle => 1.0,
        }
    }

    /// Minkowski product `p·x = Et − p⃗·x⃗`.
    fn phase(&self, x: [f64; 3], t: f64) -> f64 {
        self.p[0] * t - self.p[1] * x[0] - self.p[2] * x[1] - self.p[3] * x[2]
    }

    /// `k_μ` with `∂_μΨ = k_μΨ`.
    pub fn wave_factors(&self) -> [Complex64; 4] {
        let s = self.sign();
        [
            Complex64::new(0.0, s * self.p[0]),
            Complex64::new(0.0, -s * self.p[1]),
            Complex64::new(0.0, -s * self.p[2]),
            Complex64::new(0.0, -s * self.p[3]),
        ]
    }

    /// `Σ_j γ^j k_j`, so that `γ⃗·∂⃗Ψ = G Ψ`.
    pub fn spatial_generator(&self) -> Matrix4<f64> {
        let g = &standard::<f64>().gamma;
        let k = self.wave_factors();
        (1..4).fold(Matrix4::zero(), |acc, j| &acc + &g[j].scale(&k[j]))
    }
}

/// Spin selector for [`plane_wave`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn two_spinor(self) -> [Complex64; 2] {
        match self {
            Spin::Up => [Complex64::from(1.0), Complex64::from(0.0)],
            Spin::Down => [Complex64::from(0.0), Complex64::from(1.0)],
        }
    }
}

/// Particle-branch plane wave with `ξ` = spin up or down along z.
pub fn plane_wave(p: [f64; 4], mass: f64, spin: Spin) -> Result<PlaneWave> {
    PlaneWave::new(p, mass, spin.two_spinor(), Branch::Particle)
}

impl SpinorField for PlaneWave {
    fn value(&self, x: [f64; 3], t: f64) -> Spinor<f64> {
        let phase = Complex64::from_polar(1.0, self.sign() * self.phase(x, t));
        self.amplitude.scale(&phase)
    }

    fn gradient(&self, x: [f64; 3], t: f64) -> [Spinor<f64>; 4] {
        let psi = self.value(x, t);
        self.wave_factors().map(|k| psi.scale(&k))
    }
}

/// `e^{−θ}Ψ₀`; solves the exotic equation whenever `Ψ₀` solves the ordinary one.
pub struct DressedField<F, T> {
    pub base: F,
    pub theta: T,
}

impl<F: SpinorField, T: ExoticTheta> SpinorField for DressedField<F, T> {
    fn value(&self, x: [f64; 3], t: f64) -> Spinor<f64> {
        self.base.value(x, t).scale(&Complex64::from((-self.theta.value(x, t)).exp()))
    }

    fn gradient(&self, x: [f64; 3], t: f64) -> [Spinor<f64>; 4] {
        let w = Complex64::from((-self.theta.value(x, t)).exp());
        let psi = self.base.value(x, t);
        let dpsi = self.base.gradient(x, t);
        let dtheta = self.theta.gradient(x, t);
        std::array::from_fn(|mu| axpy(&dpsi[mu], -dtheta[mu], &psi).scale(&w))
    }
}

/// `Σ_μ iγ^μ G_μ − mΨ` for a precomputed gradient.
pub(crate) fn dirac_from_gradient(psi: &Spinor<f64>, grad: &[Spinor<f64>; 4], mass: f64) -> Spinor<f64> {
    let g = &standard::<f64>().gamma;
    let i = Complex64::i();
    let mut out = psi.scale(&Complex64::from(-mass));
    for mu in 0..4 {
        out = &out + &grad[mu].transform(&g[mu]).scale(&i);
    }
    out
}

/// `(iγ^μ∂_μ − m)Ψ` at `(x⃗, t)`.
pub fn dirac_apply<F: SpinorField + ?Sized>(field: &F, mass: f64, x: [f64; 3], t: f64) -> Spinor<f64> {
    dirac_from_gradient(&field.value(x, t), &field.gradient(x, t), mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::bilinears;
    use crate::lounesto::{classify, ClassifierConfig};

    fn c(re: f64) -> Complex64 {
        Complex64::from(re)
    }

    fn norm(s: &Spinor<f64>) -> f64 {
        s.norm_sqr().sqrt()
    }

    fn cfg() -> ClassifierConfig {
        ClassifierConfig::float(1e-9).unwrap()
    }

    #[test]
    fn plane_wave_solves_dirac() {
        for (p, m) in [([1.0, 0.0, 0.0, 1.0], 0.0), ([2.0, 0.0, 0.0, 1.0], 3f64.sqrt()), ([1.0, 0.0, 0.0, 0.0], 1.0)] {
            for spin in [Spin::Up, Spin::Down] {
                let w = plane_wave(p, m, spin).unwrap();
                assert!(norm(&dirac_apply(&w, m, [0.3, -1.2, 2.0], 0.7)) <= 1e-12);
            }
            let v = PlaneWave::new(p, m, [c(0.6), Complex64::new(0.0, 0.8)], Branch::Antiparticle).unwrap();
            assert!(norm(&dirac_apply(&v, m, [1.0, 2.0, 3.0], -4.0)) <= 1e-12);
        }
    }

    #[test]
    fn massless_wave_is_chiral() {
        let w = plane_wave([1.0, 0.0, 0.0, 1.0], 0.0, Spin::Up).unwrap();
        let psi = w.value([0.1, 0.2, 0.3], 0.4);
        assert_eq!(classify(&psi, &cfg()).unwrap().value(), 6);
        assert!(psi[0].norm() == 0.0 && psi[1].norm() == 0.0);
    }

    #[test]
    fn rest_frame_wave_is_class_3() {
        let w = plane_wave([1.0, 0.0, 0.0, 0.0], 1.0, Spin::Up).unwrap();
        let psi = w.value([0.0; 3], 0.25);
        assert_eq!(classify(&psi, &cfg()).unwrap().value(), 3);
        let b = bilinears(&psi).unwrap();
        assert!((b.sigma - 2.0).abs() < 1e-12);
    }

    #[test]
    fn off_shell_is_rejected() {
        assert!(matches!(plane_wave([1.0, 0.0, 0.0, 1.0], 1.0, Spin::Up), Err(Error::OffShell { .. })));
        assert!(matches!(plane_wave([-1.0, 0.0, 0.0, 1.0], 0.0, Spin::Up), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn constant_field_cases() {
        let psi = Spinor([c(1.0), c(-2.0), Complex64::new(0.0, 1.0), c(0.5)]);
        let f = ConstantField(psi.clone());
        assert!(norm(&dirac_apply(&f, 0.0, [0.0; 3], 0.0)) == 0.0);
        let out = dirac_apply(&f, 1.0, [0.0; 3], 0.0);
        assert!(norm(&axpy(&out, 1.0, &psi)) == 0.0);
    }

    #[test]
    fn finite_differences_match_analytic_gradient() {
        let w = plane_wave([2.0, 1.0, -1.0, 0.5], 1.75f64.sqrt(), Spin::Down).unwrap();
        let by_closure = FnField(|x, t| w.value(x, t));
        let a = w.gradient([0.4, 0.1, -0.3], 0.2);
        let b = by_closure.gradient([0.4, 0.1, -0.3], 0.2);
        for mu in 0..4 {
            assert!(norm(&axpy(&a[mu], -1.0, &b[mu])) < 1e-8);
        }
    }
}
