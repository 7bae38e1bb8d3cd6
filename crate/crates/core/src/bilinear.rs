//! Spinors, the Dirac dual, bilinear covariants and the Fierz identities.
//!
//! With `ψ̄ = ψ†γ⁰` the five covariants are
//!
//! ```text
//! σ = ψ̄ψ,   J_μ = ψ̄γ_μψ,   S_μν = (i/2) ψ̄[γ_μ, γ_ν]ψ,   K_μ = ψ̄γ_μγ⁵ψ,   ω = i ψ̄γ⁵ψ
//! ```
//!
//! all of which are real for the Dirac dual.

use std::ops::{Add, Index};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{levi_civita, Rational, standard, ComplexExt, Matrix4, Real, Scalar, BIVECTOR_PAIRS, METRIC};
use crate::error::{Error, Result};

/// Imaginary parts of float-mode covariants above this fraction of `‖ψ‖²`
/// indicate a convention bug rather than roundoff.
pub const REALITY_TOL: f64 = 1e-10;

/// Four-component Dirac spinor `(a, b, c, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spinor<R: Real>(pub [Scalar<R>; 4]);

impl<R: Real> Spinor<R> {
    pub fn new(components: [Scalar<R>; 4]) -> Self {
        Spinor(components)
    }

    pub fn zero() -> Self {
        Spinor(std::array::from_fn(|_| Scalar::zero()))
    }

    /// Gaussian-integer components given as `(re, im)` pairs.
    pub fn from_i64_pairs(parts: [(i64, i64); 4]) -> Self {
        Spinor(parts.map(|(re, im)| Scalar::from_i64_pair(re, im)))
    }

    pub fn components(&self) -> &[Scalar<R>; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `‖ψ‖² = ψ†ψ`, which equals `J₀`.
    pub fn norm_sqr(&self) -> R {
        self.0.iter().fold(R::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn scale(&self, z: &Scalar<R>) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i].clone() * z.clone()))
    }

    pub fn conj(&self) -> Self {
        Spinor(std::array::from_fn(|i| self.0[i].conj()))
    }

    /// Hermitian inner product `⟨self, other⟩ = self† other`.
    pub fn inner(&self, other: &Self) -> Scalar<R> {
        self.0.iter().zip(&other.0).fold(Scalar::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
    }

    pub fn transform(&self, m: &Matrix4<R>) -> Self {
        Spinor(m.mul_vec(&self.0))
    }

    pub fn to_float(&self) -> Spinor<f64> {
        Spinor(std::array::from_fn(|i| self.0[i].to_float()))
    }

    pub fn from_exact(s: &Spinor<Rational>) -> Self {
        Spinor(std::array::from_fn(|i| Complex::new(R::of_rational(&s.0[i].re), R::of_rational(&s.0[i].im))))
    }

    /// Largest component magnitude, as binary64.
    pub fn max_magnitude(&self) -> f64 {
        self.0.iter().map(ComplexExt::magnitude).fold(0.0, f64::max)
    }
}

impl<R: Real> Index<usize> for Spinor<R> {
    type Output = Scalar<R>;
    fn index(&self, i: usize) -> &Scalar<R> {
        &self.0[i]
    }
}

impl<R: Real> Add for &Spinor<R> {
    type Output = Spinor<R>;
    fn add(self, rhs: &Spinor<R>) -> Spinor<R> {
        Spinor(std::array::from_fn(|i| self.0[i].clone() + rhs.0[i].clone()))
    }
}

/// Row spinor; produced by [`dual`].
#[derive(Debug, Clone, PartialEq)]
pub struct DualSpinor<R: Real>(pub [Scalar<R>; 4]);

impl<R: Real> DualSpinor<R> {
    /// `ψ̄ M ψ`.
    pub fn sandwich(&self, m: &Matrix4<R>, psi: &Spinor<R>) -> Scalar<R> {
        let mpsi = m.mul_vec(&psi.0);
        self.0.iter().zip(&mpsi).fold(Scalar::zero(), |acc, (a, b)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                acc + a.clone() * b.clone()
            }
        })
    }
}

/// Dirac dual `ψ̄ = ψ†γ⁰`.
pub fn dual<R: Real>(psi: &Spinor<R>) -> DualSpinor<R> {
    let g0 = standard::<R>().gamma0();
    DualSpinor(std::array::from_fn(|j| {
        (0..4).fold(Scalar::zero(), |acc, i| {
            if g0[(i, j)].is_zero() {
                acc
            } else {
                acc + psi.0[i].conj() * g0[(i, j)].clone()
            }
        })
    }))
}

/// The aggregate `(σ, ω, J, K, S)`; `S` is stored with both indices down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilinearSet<R: Real> {
    pub sigma: R,
    pub omega: R,
    pub j: [R; 4],
    pub k: [R; 4],
    pub s: [[R; 4]; 4],
}

impl<R: Real> BilinearSet<R> {
    pub fn zero() -> Self {
        BilinearSet {
            sigma: R::zero(),
            omega: R::zero(),
            j: std::array::from_fn(|_| R::zero()),
            k: std::array::from_fn(|_| R::zero()),
            s: std::array::from_fn(|_| std::array::from_fn(|_| R::zero())),
        }
    }

    /// Builds `S` from its six upper-triangle entries in [`BIVECTOR_PAIRS`]
    /// order, filling the lower triangle by antisymmetry.
    pub fn from_parts(sigma: R, omega: R, j: [R; 4], k: [R; 4], s_upper: [R; 6]) -> Self {
        let mut s: [[R; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| R::zero()));
        for (v, &(m, n)) in s_upper.into_iter().zip(BIVECTOR_PAIRS.iter()) {
            s[n][m] = -v.clone();
            s[m][n] = v;
        }
        BilinearSet { sigma, omega, j, k, s }
    }

    /// Minkowski contraction `η_{αβ} a^α b^β`.
    pub fn dot(a: &[R; 4], b: &[R; 4]) -> R {
        (0..4).fold(R::zero(), |acc, i| acc + R::of_int(METRIC[i]) * a[i].clone() * b[i].clone())
    }

    /// `S` with both indices raised by `η`.
    pub fn s_upper(&self) -> [[R; 4]; 4] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| R::of_int(METRIC[a] * METRIC[b]) * self.s[a][b].clone())
        })
    }

    pub fn to_float(&self) -> BilinearSet<f64> {
        BilinearSet {
            sigma: self.sigma.as_f64(),
            omega: self.omega.as_f64(),
            j: std::array::from_fn(|i| self.j[i].as_f64()),
            k: std::array::from_fn(|i| self.k[i].as_f64()),
            s: std::array::from_fn(|a| std::array::from_fn(|b| self.s[a][b].as_f64())),
        }
    }

    /// Multiplies every covariant by `c` (bilinears of `zψ` are `|z|²` times those of `ψ`).
    pub fn scaled(&self, c: &R) -> Self {
        let m = |x: &R| x.clone() * c.clone();
        BilinearSet {
            sigma: m(&self.sigma),
            omega: m(&self.omega),
            j: std::array::from_fn(|i| m(&self.j[i])),
            k: std::array::from_fn(|i| m(&self.k[i])),
            s: std::array::from_fn(|a| std::array::from_fn(|b| m(&self.s[a][b]))),
        }
    }
}

fn real_part<R: Real>(z: Scalar<R>, scale: f64, what: &str) -> Result<R> {
    let bad = if R::is_exact() {
        !z.im.is_zero()
    } else {
        z.im.as_f64().abs() > REALITY_TOL * scale
    };
    if bad {
        return Err(Error::Inconsistent(format!("{what} has imaginary part {}", z.im)));
    }
    Ok(z.re)
}

/// Computes all five covariants. Fails only if a covariant comes out
/// complex, which signals a broken convention.
pub fn bilinears<R: Real>(psi: &Spinor<R>) -> Result<BilinearSet<R>> {
    let basis = standard::<R>();
    let bar = dual(psi);
    let scale = psi.norm_sqr().as_f64().max(f64::MIN_POSITIVE);
    let i = Scalar::<R>::imag_unit();
    let at = |slot: usize| bar.sandwich(basis.element(slot), psi);

    let sigma = real_part(at(0), scale, "sigma")?;
    let omega = real_part(i.clone() * at(1), scale, "omega")?;
    let mut j: [R; 4] = std::array::from_fn(|_| R::zero());
    let mut k: [R; 4] = std::array::from_fn(|_| R::zero());
    for mu in 0..4 {
        j[mu] = real_part(at(2 + mu), scale, "J")?;
        k[mu] = real_part(at(6 + mu), scale, "K")?;
    }
    // For μ ≠ ν, (i/2)[γ_μ, γ_ν] = iγ_μγ_ν.
    let mut s_upper: [R; 6] = std::array::from_fn(|_| R::zero());
    for (slot, v) in s_upper.iter_mut().enumerate() {
        *v = real_part(i.clone() * at(10 + slot), scale, "S")?;
    }
    Ok(BilinearSet::from_parts(sigma, omega, j, k, s_upper))
}

/// Residuals of the three Fierz identities; all vanish for a genuine spinor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FpkResiduals<R: Real> {
    /// Antisymmetric identity, per `(μ, ν)`.
    pub r1: [[R; 4]; 4],
    /// `J·J + K·K`.
    pub r2a: R,
    /// `J·K`.
    pub r2b: R,
    /// `J·J − σ² − ω²`.
    pub r3: R,
}

impl<R: Real> FpkResiduals<R> {
    pub fn max_r1(&self) -> R {
        self.r1.iter().flatten().fold(R::zero(), |m, x| max_real(m, x.abs()))
    }

    pub fn max_abs(&self) -> R {
        [self.r2a.abs(), self.r2b.abs(), self.r3.abs()].into_iter().fold(self.max_r1(), max_real)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs().is_zero()
    }
}

fn max_real<R: Real>(a: R, b: R) -> R {
    if b > a {
        b
    } else {
        a
    }
}

/// Hodge-type contraction `(1/2) ε_{μναβ} S^{αβ}`.
pub fn dual_tensor<R: Real>(b: &BilinearSet<R>) -> [[R; 4]; 4] {
    let up = b.s_upper();
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let mut acc = R::zero();
            for alpha in 0..4 {
                for beta in 0..4 {
                    let e = levi_civita([mu, nu, alpha, beta]);
                    if e != 0 {
                        acc = acc + R::of_int(e) * up[alpha][beta].clone();
                    }
                }
            }
            acc * R::half()
        })
    })
}

/// Evaluates the Fierz identities on an aggregate.
///
/// With `γ⁵ = diag(-1,-1,1,1)`, `ε_{0123} = +1` and `S_μν = (i/2)ψ̄[γ_μ,γ_ν]ψ`,
/// the antisymmetric identity holds in the orientation
///
/// ```text
/// −ω S_μν − (σ/2) ε_{μναβ} S^{αβ} = K_μ J_ν − J_μ K_ν
/// ```
///
/// and `r1` is the difference of the two sides.
pub fn fpk_residuals<R: Real>(b: &BilinearSet<R>) -> FpkResiduals<R> {
    let star = dual_tensor(b);
    let r1 = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let lhs = -(b.omega.clone() * b.s[mu][nu].clone()) - b.sigma.clone() * star[mu][nu].clone();
            let rhs = b.k[mu].clone() * b.j[nu].clone() - b.j[mu].clone() * b.k[nu].clone();
            lhs - rhs
        })
    });
    let jj = BilinearSet::dot(&b.j, &b.j);
    let kk = BilinearSet::dot(&b.k, &b.k);
    FpkResiduals {
        r1,
        r2a: jj.clone() + kk,
        r2b: BilinearSet::dot(&b.j, &b.k),
        r3: jj - b.sigma.clone() * b.sigma.clone() - b.omega.clone() * b.omega.clone(),
    }
}

/// `true` when every Fierz residual is within `tol` (exactly zero in exact
/// mode). Aggregates that fail are amorphous: no spinor produces them.
pub fn is_fierz_aggregate<R: Real>(b: &BilinearSet<R>, tol: f64) -> bool {
    let r = fpk_residuals(b);
    if R::is_exact() {
        r.is_zero()
    } else {
        r.max_abs().as_f64() <= tol
    }
}

/// `e^{iα}` for `α = k·π/2`, exact in both modes.
pub fn quarter_turn<R: Real>(k: i64) -> Scalar<R> {
    match k.rem_euclid(4) {
        0 => Complex::one(),
        1 => Complex::imag_unit(),
        2 => -Complex::<R>::one(),
        _ => -Complex::<R>::imag_unit(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Exact, Rational};

    fn q(n: i64) -> Rational {
        Rational::of_int(n)
    }

    fn exact(parts: [(i64, i64); 4]) -> Spinor<Rational> {
        Spinor::from_i64_pairs(parts)
    }

    #[test]
    fn dual_of_unit_spinors() {
        // Oracle: ψ†γ⁰ with γ⁰ swapping the upper and lower pairs.
        let d = dual(&exact([(1, 0), (0, 0), (0, 0), (0, 0)]));
        assert_eq!(d.0, exact([(0, 0), (0, 0), (1, 0), (0, 0)]).0);
        let d = dual(&exact([(0, 1), (0, 0), (0, 0), (0, 0)]));
        assert_eq!(d.0, exact([(0, 0), (0, 0), (0, -1), (0, 0)]).0);
        assert_eq!(dual(&Spinor::<Rational>::zero()).0, Spinor::<Rational>::zero().0);
    }

    #[test]
    fn bilinears_of_first_unit_spinor() {
        let b = bilinears(&exact([(1, 0), (0, 0), (0, 0), (0, 0)])).unwrap();
        assert_eq!(b.sigma, q(0));
        assert_eq!(b.omega, q(0));
        assert_eq!(b.j, [q(1), q(0), q(0), q(-1)]);
        assert_eq!(b.k, [q(-1), q(0), q(0), q(1)]);
        assert!(b.s.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn bilinears_of_zero_spinor_vanish() {
        assert_eq!(bilinears(&Spinor::<Rational>::zero()).unwrap(), BilinearSet::zero());
    }

    #[test]
    fn bilinears_of_rest_spinor() {
        let b = bilinears(&exact([(1, 0), (0, 0), (1, 0), (0, 0)])).unwrap();
        assert_eq!(b.sigma, q(2));
        assert_eq!(b.omega, q(0));
        assert_eq!(b.k[3], q(2));
        assert_eq!(b.s[1][2], q(2));
        assert_eq!(b.s[2][1], q(-2));
    }

    #[test]
    fn fpk_vanish_on_unit_spinor() {
        let b = bilinears(&exact([(1, 0), (0, 0), (0, 0), (0, 0)])).unwrap();
        assert!(fpk_residuals(&b).is_zero());
        assert!(fpk_residuals(&BilinearSet::<Rational>::zero()).is_zero());
    }

    #[test]
    fn violating_aggregate_is_amorphous() {
        let unit = [q(1), q(0), q(0), q(0)];
        let b = BilinearSet::from_parts(q(0), q(0), unit.clone(), unit, std::array::from_fn(|_| q(0)));
        let r = fpk_residuals(&b);
        assert_eq!(r.r2a, q(2));
        assert_eq!(r.r2b, q(1));
        assert!(!is_fierz_aggregate(&b, 0.0));
        assert!(is_fierz_aggregate(&BilinearSet::<Rational>::zero(), 0.0));
    }

    #[test]
    fn generic_spinor_satisfies_fpk_exactly() {
        let psi = Spinor::<Rational>::new([
            Exact::new(Rational::of_ratio(1, 2), q(3)),
            Exact::new(q(-2), Rational::of_ratio(5, 7)),
            Exact::new(q(4), q(-1)),
            Exact::new(Rational::of_ratio(-3, 4), q(2)),
        ]);
        let b = bilinears(&psi).unwrap();
        assert!(!b.sigma.is_zero() && !b.omega.is_zero());
        assert!(fpk_residuals(&b).is_zero());
    }

    #[test]
    fn opposite_orientation_of_antisymmetric_identity_fails() {
        // J∧K on the right-hand side instead of K∧J is not an identity here.
        let psi = exact([(1, 2), (-1, 0), (3, 1), (0, -2)]);
        let b = bilinears(&psi).unwrap();
        let star = dual_tensor(&b);
        let worst = (0..4)
            .flat_map(|m| (0..4).map(move |n| (m, n)))
            .map(|(m, n)| {
                let lhs = -(b.omega.clone() * b.s[m][n].clone()) - b.sigma.clone() * star[m][n].clone();
                lhs - (b.j[m].clone() * b.k[n].clone() - b.k[m].clone() * b.j[n].clone())
            })
            .any(|r| !r.is_zero());
        assert!(worst);
    }

    #[test]
    fn float_bilinears_reject_nothing_for_valid_spinors() {
        let psi = Spinor::<f64>::new([
            Complex::new(0.3, -1.2),
            Complex::new(2.0, 0.5),
            Complex::new(-0.7, 0.1),
            Complex::new(1.1, 1.9),
        ]);
        let b = bilinears(&psi).unwrap();
        assert!(fpk_residuals(&b).max_abs() < 1e-12);
        assert!((b.j[0] - psi.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn quarter_turn_phases_leave_bilinears_unchanged() {
        let psi = exact([(1, 2), (-1, 0), (3, 1), (0, -2)]);
        let b = bilinears(&psi).unwrap();
        for k in 0..4 {
            assert_eq!(bilinears(&psi.scale(&quarter_turn(k))).unwrap(), b);
        }
    }
}
