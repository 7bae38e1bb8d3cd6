//! Rays (spinors up to a unimodular factor) and common-phase superpositions.

use num_complex::Complex64;
use num_traits::Zero;

use super::negligible;
use crate::algebra::{ComplexExt, Real, Scalar};
use crate::bilinear::Spinor;
use crate::error::{Error, Result};

/// Float tolerance for ray and phase comparisons, relative to spinor size.
pub const PHASE_TOL: f64 = 1e-9;

/// `ψ2 = e^{iα}ψ1` for some real `α`.
pub fn ray_equal<R: Real>(psi1: &Spinor<R>, psi2: &Spinor<R>) -> Result<bool> {
    if psi1.is_zero() || psi2.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    // Largest component of ψ1 as the pivot.
    let k = (0..4)
        .filter(|&k| !psi1[k].is_zero())
        .max_by(|&a, &b| psi1[a].magnitude().total_cmp(&psi1[b].magnitude()))
        .expect("nonzero spinor");
    let z = psi2[k].clone() * psi1[k].checked_inv().expect("pivot is nonzero");
    let scale = psi1.max_magnitude().max(psi2.max_magnitude());
    let proportional =
        (0..4).all(|i| negligible(&(psi2[i].clone() - psi1[i].clone() * z.clone()), scale, PHASE_TOL));
    let unimodular = negligible(&Scalar::from_real(z.norm_sqr() - R::one()), 1.0, PHASE_TOL);
    Ok(proportional && unimodular)
}

/// A spinor standing for its ray.
#[derive(Debug, Clone)]
pub struct Ray<R: Real> {
    representative: Spinor<R>,
}

impl<R: Real> Ray<R> {
    pub fn new(representative: Spinor<R>) -> Result<Self> {
        if representative.is_zero() {
            return Err(Error::ZeroSpinor);
        }
        Ok(Ray { representative })
    }

    pub fn representative(&self) -> &Spinor<R> {
        &self.representative
    }
}

impl<R: Real> PartialEq for Ray<R> {
    fn eq(&self, other: &Self) -> bool {
        ray_equal(&self.representative, &other.representative).expect("rays are nonzero")
    }
}

fn wrap(angle: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let a = angle.rem_euclid(tau);
    if a > std::f64::consts::PI {
        a - tau
    } else {
        a
    }
}

/// Finds `φmn` with `e^{iφm}ψm + e^{iφn}ψn = e^{iφmn}(ψm + ψn)`.
///
/// For independent `ψm`, `ψn` this exists iff `φm ≡ φn (mod 2π)`, and the
/// returned angle is then `φm`.
pub fn phase_consistency(psi_m: &Spinor<f64>, psi_n: &Spinor<f64>, phi_m: f64, phi_n: f64) -> Result<Option<f64>> {
    let mm = psi_m.norm_sqr();
    let nn = psi_n.norm_sqr();
    let gram = mm * nn - psi_m.inner(psi_n).norm_sqr();
    if gram <= PHASE_TOL * mm * nn {
        return Err(Error::LinearlyDependent);
    }
    let lhs = &psi_m.scale(&Complex64::from_polar(1.0, phi_m)) + &psi_n.scale(&Complex64::from_polar(1.0, phi_n));
    let sum = psi_m + psi_n;
    let z = sum.inner(&lhs) / Complex64::from(sum.norm_sqr());
    let residual = (0..4).map(|i| (lhs[i] - z * sum[i]).norm_sqr()).sum::<f64>().sqrt();
    let size = mm.sqrt() + nn.sqrt();
    if residual > PHASE_TOL * size || (z.norm() - 1.0).abs() > PHASE_TOL || z.is_zero() {
        return Ok(None);
    }
    Ok(Some(phi_m + wrap(z.arg() - phi_m)))
}
