//! Class-preserving transformations of spinor space.
//!
//! A candidate `S` acts as `ψ ↦ Sψ`, or as `ψ ↦ Sψ*` when anti-linear. The
//! bilinear built from `Γ` then becomes `ψ̄Xψ` with
//!
//! ```text
//! X = γ⁰S†γ⁰ΓS          (linear)
//! X = γ⁰(S†γ⁰ΓS)ᵀ       (anti-linear)
//! ```
//!
//! Expanding `X` in the 16-element basis for every `Γ` gives the sector
//! transforms collected in a [`BetaMap`].

mod group;
mod lorentz;
mod ray;

pub use group::{group_check, GroupReport, DEFAULT_WORD_LENGTH};
pub use lorentz::{
    boost, exact_boost, exact_rotation, gamma5_candidate, parity, random_generator, rotation,
    scalar_candidate, spin_boost, spin_rotation,
};
pub use ray::{phase_consistency, ray_equal, Ray, PHASE_TOL};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    basis_label, standard, Block2, ComplexExt, Matrix4, RealMatrix, Real, Scalar, Sector,
    BASIS_LEN,
};
use crate::bilinear::{fpk_residuals, Spinor};
use crate::error::{Error, Result};
use crate::lounesto::{classify_detailed, sample_class, ClassifierConfig, LounestoClass};

/// Relative threshold below which float-mode coefficients count as zero.
pub const LEAK_TOL: f64 = 1e-10;

/// Counterexamples kept in a [`ClassReport`].
const MAX_COUNTEREXAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryCandidate<R: Real> {
    pub matrix: Matrix4<R>,
    pub antilinear: bool,
    pub label: Option<String>,
}

impl<R: Real> SymmetryCandidate<R> {
    pub fn new(matrix: Matrix4<R>) -> Self {
        SymmetryCandidate { matrix, antilinear: false, label: None }
    }

    pub fn antilinear(matrix: Matrix4<R>) -> Self {
        SymmetryCandidate { matrix, antilinear: true, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn name(&self) -> &str {
        self.label.as_deref().unwrap_or("S")
    }

    pub fn apply(&self, psi: &Spinor<R>) -> Spinor<R> {
        if self.antilinear {
            psi.conj().transform(&self.matrix)
        } else {
            psi.transform(&self.matrix)
        }
    }

    pub fn determinant(&self) -> Scalar<R> {
        self.matrix.determinant()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.inverse().is_some()
    }

    /// Same map up to `tol` (exact equality in exact mode).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.antilinear == other.antilinear && self.matrix.approx_eq(&other.matrix, tol)
    }

    pub fn to_float(&self) -> SymmetryCandidate<f64> {
        SymmetryCandidate {
            matrix: self.matrix.to_float(),
            antilinear: self.antilinear,
            label: self.label.clone(),
        }
    }
}

/// The matrix `X` whose bilinear `ψ̄Xψ` is the image of `ψ̄Γψ`.
pub fn conjugate_action<R: Real>(s: &SymmetryCandidate<R>, gamma: &Matrix4<R>) -> Matrix4<R> {
    let g0 = standard::<R>().gamma0();
    if s.antilinear {
        let inner = &(&(&s.matrix.dagger() * g0) * gamma) * &s.matrix;
        g0 * &inner.transpose()
    } else {
        &(&(&(g0 * &s.matrix.dagger()) * g0) * gamma) * &s.matrix
    }
}

/// Per-sector linear maps on the bilinears: `B' = L·B` for each sector.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaMap<R: Real> {
    pub beta_scalar: R,
    pub beta_pseudo: R,
    pub l_j: RealMatrix<R>,
    pub l_k: RealMatrix<R>,
    pub l_s: RealMatrix<R>,
    /// Every sector transform is a multiple of the identity.
    pub strict: bool,
}

impl<R: Real> BetaMap<R> {
    pub fn sector(&self, sector: Sector) -> RealMatrix<R> {
        match sector {
            Sector::Scalar => RealMatrix::diagonal(vec![self.beta_scalar.clone()]),
            Sector::Pseudoscalar => RealMatrix::diagonal(vec![self.beta_pseudo.clone()]),
            Sector::Vector => self.l_j.clone(),
            Sector::Axial => self.l_k.clone(),
            Sector::Bivector => self.l_s.clone(),
        }
    }

    fn from_sectors(parts: [RealMatrix<R>; 5], tol: f64) -> Self {
        let strict = parts.iter().all(|m| m.as_scalar_multiple(tol).is_some());
        let [s, p, j, k, b] = parts;
        BetaMap {
            beta_scalar: s[(0, 0)].clone(),
            beta_pseudo: p[(0, 0)].clone(),
            l_j: j,
            l_k: k,
            l_s: b,
            strict,
        }
    }

    /// Sector-wise product; the map of `S1·S2` when `self` is the map of `S1`.
    pub fn then(&self, other: &Self) -> Self {
        let parts = Sector::ALL.map(|s| &self.sector(s) * &other.sector(s));
        Self::from_sectors(parts, LEAK_TOL)
    }

    /// Sector-wise matrix inverse; `None` when any sector is singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut parts = Vec::with_capacity(5);
        for s in Sector::ALL {
            parts.push(self.sector(s).inverse()?);
        }
        let parts: [RealMatrix<R>; 5] = parts.try_into().ok()?;
        Some(Self::from_sectors(parts, LEAK_TOL))
    }

    /// Largest entrywise difference over all sectors.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        Sector::ALL
            .iter()
            .map(|&s| self.sector(s).max_abs_diff(&other.sector(s)))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        Sector::ALL.iter().all(|&s| self.sector(s).approx_eq(&other.sector(s), tol))
    }

    pub fn to_float(&self) -> BetaMap<f64> {
        BetaMap {
            beta_scalar: self.beta_scalar.as_f64(),
            beta_pseudo: self.beta_pseudo.as_f64(),
            l_j: self.l_j.to_float(),
            l_k: self.l_k.to_float(),
            l_s: self.l_s.to_float(),
            strict: self.strict,
        }
    }
}

/// Sector transforms of `s`, or `NotASymmetry` naming the first basis element
/// whose image leaves its sector.
pub fn beta_extract<R: Real>(s: &SymmetryCandidate<R>) -> Result<BetaMap<R>> {
    let basis = standard::<R>();
    let coeffs: Vec<[Scalar<R>; BASIS_LEN]> =
        (0..BASIS_LEN).map(|a| basis.expand(&conjugate_action(s, basis.element(a)))).collect();
    let scale = coeffs
        .iter()
        .flatten()
        .map(ComplexExt::magnitude)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let null = |z: &Scalar<R>| z.re.is_null(scale, LEAK_TOL) && z.im.is_null(scale, LEAK_TOL);

    for (a, row) in coeffs.iter().enumerate() {
        let home = Sector::of_slot(a);
        let leaked: Vec<(String, String)> = row
            .iter()
            .enumerate()
            .filter(|&(b, z)| Sector::of_slot(b) != home && !null(z))
            .map(|(b, z)| (basis_label(b), format!("{z}")))
            .collect();
        if !leaked.is_empty() {
            return Err(Error::NotASymmetry { source_label: basis_label(a), leaked });
        }
    }

    let mut parts = Vec::with_capacity(5);
    for sector in Sector::ALL {
        let slots: Vec<usize> = sector.slots().collect();
        let mut m = RealMatrix::<R>::zeros(slots.len());
        for (r, &a) in slots.iter().enumerate() {
            for (c, &b) in slots.iter().enumerate() {
                let z = &coeffs[a][b];
                if !z.im.is_null(scale, LEAK_TOL) {
                    return Err(Error::Inconsistent(format!(
                        "coefficient of {} in the image of {} is not real: {z}",
                        basis_label(b),
                        basis_label(a)
                    )));
                }
                m[(r, c)] = z.re.clone();
            }
        }
        parts.push(m);
    }
    let parts: [RealMatrix<R>; 5] = parts.try_into().expect("five sectors");
    Ok(BetaMap::from_sectors(parts, LEAK_TOL * scale))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport<R: Real> {
    /// Scalar-sector factor `β_𝕀`.
    pub alpha: R,
    /// Pseudoscalar-sector factor `β_{γ⁵}`.
    pub beta: R,
    /// `α = ±β`.
    pub holds: bool,
    /// `det(α S⁻¹γ⁵S)`, which is `α⁴`.
    pub det_lhs: Scalar<R>,
    /// `det(βγ⁵)`, which is `β⁴`.
    pub det_rhs: Scalar<R>,
    /// `α S⁻¹γ⁵S = βγ⁵` as matrices.
    pub relation_holds: bool,
}

/// Checks that the scalar and pseudoscalar factors agree up to sign.
///
/// Requires a linear, invertible, sector-preserving candidate.
pub fn verify_rescaling_lemma<R: Real>(s: &SymmetryCandidate<R>) -> Result<LemmaReport<R>> {
    if s.antilinear {
        return Err(Error::Precondition("candidate must be linear".into()));
    }
    let inv = s
        .matrix
        .inverse()
        .ok_or_else(|| Error::Precondition("candidate must be invertible".into()))?;
    let map = beta_extract(s).map_err(|e| match e {
        Error::NotASymmetry { .. } => Error::Precondition(format!("candidate is not sector preserving: {e}")),
        other => other,
    })?;
    let alpha = map.beta_scalar.clone();
    let beta = map.beta_pseudo.clone();
    let scale = alpha.abs().as_f64().max(beta.abs().as_f64()).max(1.0);
    let tol = LEAK_TOL * scale;
    let same = |a: R, b: &R| (a - b.clone()).is_null(1.0, tol);
    let holds = same(alpha.clone(), &beta) || same(alpha.clone(), &-beta.clone());

    let g5 = &standard::<R>().gamma5;
    let lhs = (&(&inv * g5) * &s.matrix).scale(&Scalar::from_real(alpha.clone()));
    let rhs = g5.scale(&Scalar::from_real(beta.clone()));
    let det_lhs = lhs.determinant();
    let det_rhs = rhs.determinant();
    let relation_holds = lhs.approx_eq(&rhs, tol);
    Ok(LemmaReport { alpha, beta, holds, det_lhs, det_rhs, relation_holds })
}

/// `S1 ∘ S2`, applying `S2` first.
pub fn compose<R: Real>(s1: &SymmetryCandidate<R>, s2: &SymmetryCandidate<R>) -> SymmetryCandidate<R> {
    let right = if s1.antilinear { s2.matrix.conj() } else { s2.matrix.clone() };
    SymmetryCandidate {
        matrix: &s1.matrix * &right,
        antilinear: s1.antilinear != s2.antilinear,
        label: match (&s1.label, &s2.label) {
            (Some(a), Some(b)) => Some(format!("{a}·{b}")),
            _ => None,
        },
    }
}

pub fn inverse<R: Real>(s: &SymmetryCandidate<R>) -> Result<SymmetryCandidate<R>> {
    let inv = s.matrix.inverse().ok_or(Error::SingularMatrix)?;
    Ok(SymmetryCandidate {
        matrix: if s.antilinear { inv.conj() } else { inv },
        antilinear: s.antilinear,
        label: s.label.as_ref().map(|l| format!("({l})⁻¹")),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockLayout {
    /// `[[A, 0], [0, B]]`
    Diag,
    /// `[[0, A], [B, 0]]`
    AntiDiag,
}

/// Block candidate suited to chiral (class-6) spinors.
pub fn type6_block<R: Real>(a: &Block2<R>, b: &Block2<R>, layout: BlockLayout) -> Result<SymmetryCandidate<R>> {
    let z = crate::algebra::matrix::block_zero::<R>();
    if crate::algebra::matrix::block_is_zero(a) && crate::algebra::matrix::block_is_zero(b) {
        return Err(Error::BothBlocksZero);
    }
    let m = match layout {
        BlockLayout::Diag => Matrix4::from_blocks(a, &z, &z, b),
        BlockLayout::AntiDiag => Matrix4::from_blocks(&z, a, b, &z),
    };
    Ok(SymmetryCandidate::new(m))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample<R: Real> {
    pub input: Spinor<R>,
    pub output: Spinor<R>,
    /// Class of the image; `None` when the image has no current.
    pub got: Option<LounestoClass>,
    pub fpk_violated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport<R: Real> {
    pub class: LounestoClass,
    pub samples: usize,
    pub preserved: usize,
    /// Images with `J = 0`; only possible, and only discarded, for singular candidates.
    pub discarded_zero_current: usize,
    pub fpk_violations: usize,
    pub failures: usize,
    /// The first few failures.
    pub counterexamples: Vec<Counterexample<R>>,
    pub pass: bool,
}

/// Samples `n` spinors of `class` (seeds `seed, seed+1, …`), applies `s` and
/// reclassifies. The transformed bilinears must also satisfy the Fierz identities.
pub fn preserves_class<R: Real>(
    s: &SymmetryCandidate<R>,
    class: LounestoClass,
    n: usize,
    seed: u64,
    cfg: &ClassifierConfig,
) -> Result<ClassReport<R>> {
    if n == 0 {
        return Err(Error::InvalidConfig("preserves_class needs n >= 1".into()));
    }
    let invertible = s.is_invertible();
    let mut report = ClassReport {
        class,
        samples: n,
        preserved: 0,
        discarded_zero_current: 0,
        fpk_violations: 0,
        failures: 0,
        counterexamples: Vec::new(),
        pass: false,
    };
    for i in 0..n {
        let input = Spinor::<R>::from_exact(&sample_class(class, seed.wrapping_add(i as u64))?);
        let output = s.apply(&input);
        let (got, fpk_violated) = match classify_detailed(&output, cfg) {
            Ok(c) => {
                let scale = output.norm_sqr().as_f64();
                let bad = !fpk_residuals(&c.bilinears).max_abs().is_null(scale * scale, cfg.null_tol);
                (Some(c.class), bad)
            }
            Err(Error::ZeroCurrent) if !invertible => {
                report.discarded_zero_current += 1;
                continue;
            }
            Err(Error::ZeroCurrent) => (None, false),
            Err(e) => return Err(e),
        };
        if fpk_violated {
            report.fpk_violations += 1;
        }
        if got == Some(class) && !fpk_violated {
            report.preserved += 1;
        } else {
            report.failures += 1;
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(Counterexample { input, output, got, fpk_violated });
            }
        }
    }
    report.pass = report.failures == 0;
    Ok(report)
}

/// Zero exactly, or below `tol·scale` in float mode.
pub(crate) fn negligible<R: Real>(z: &Scalar<R>, scale: f64, tol: f64) -> bool {
    if R::is_exact() {
        z.is_zero()
    } else {
        z.magnitude() <= tol * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Exact, Rational};
    use num_traits::One;

    type M = Matrix4<Rational>;

    fn g5() -> M {
        standard::<Rational>().gamma5.clone()
    }

    fn c(re: i64, im: i64) -> Exact {
        Exact::from_i64_pair(re, im)
    }

    fn diag(v: [i64; 4]) -> RealMatrix<Rational> {
        RealMatrix::diagonal(v.iter().map(|&x| Rational::of_int(x)).collect())
    }

    #[test]
    fn action_of_identity_is_trivial() {
        let s = SymmetryCandidate::new(M::identity());
        assert_eq!(conjugate_action(&s, &g5()), g5());
    }

    #[test]
    fn action_of_gamma5_on_identity_is_minus_identity() {
        let s = SymmetryCandidate::new(g5());
        assert_eq!(conjugate_action(&s, &M::identity()), -&M::identity());
    }

    #[test]
    fn action_of_scaled_identity() {
        let s = SymmetryCandidate::new(M::scalar(c(2, 0)));
        let g1 = standard::<Rational>().gamma[1].clone();
        assert_eq!(conjugate_action(&s, &g1), g1.scale(&c(4, 0)));
    }

    #[test]
    fn gamma5_beta_map() {
        let b = beta_extract(&SymmetryCandidate::new(g5())).unwrap();
        assert!(b.strict);
        assert_eq!(b.beta_scalar, Rational::of_int(-1));
        assert_eq!(b.beta_pseudo, Rational::of_int(-1));
        assert_eq!(b.l_j, RealMatrix::identity(4));
        assert_eq!(b.l_k, RealMatrix::identity(4));
        assert_eq!(b.l_s, RealMatrix::identity(6).scale(&Rational::of_int(-1)));
    }

    #[test]
    fn complex_scalar_beta_map() {
        let b = beta_extract(&SymmetryCandidate::new(M::scalar(c(1, 2)))).unwrap();
        let five = Rational::of_int(5);
        assert!(b.strict);
        assert_eq!(b.beta_scalar, five);
        assert_eq!(b.beta_pseudo, five);
        assert_eq!(b.l_s, RealMatrix::identity(6).scale(&five));
    }

    #[test]
    fn parity_beta_map() {
        let b = beta_extract(&parity::<Rational>()).unwrap();
        assert!(!b.strict);
        assert_eq!(b.beta_scalar, Rational::one());
        assert_eq!(b.beta_pseudo, Rational::of_int(-1));
        assert_eq!(b.l_j, diag([1, -1, -1, -1]));
        // γ⁵ anticommutes with γ⁰, so the axial sector picks up an extra sign.
        assert_eq!(b.l_k, diag([-1, 1, 1, 1]));
    }

    #[test]
    fn leaking_candidate_is_rejected() {
        let mut m = M::identity();
        m[(0, 2)] = c(1, 0);
        match beta_extract(&SymmetryCandidate::new(m)) {
            Err(Error::NotASymmetry { leaked, .. }) => assert!(!leaked.is_empty()),
            other => panic!("expected NotASymmetry, got {other:?}"),
        }
    }

    #[test]
    fn antilinear_charge_conjugation_preserves_sectors() {
        // ψ ↦ iγ²ψ*
        let g2 = standard::<Rational>().gamma[2].clone();
        let s = SymmetryCandidate::antilinear(g2.scale(&c(0, 1)));
        let b = beta_extract(&s).unwrap();
        assert_eq!(b.beta_scalar, Rational::of_int(-1));
        assert_eq!(b.l_j, RealMatrix::identity(4));
        for k in 1..=6 {
            let class = LounestoClass::new(k).unwrap();
            let r = preserves_class(&s, class, 10, 3, &ClassifierConfig::exact()).unwrap();
            assert!(r.pass, "class {k}: {r:?}");
        }
    }

    #[test]
    fn lemma_for_standard_cases() {
        let r = verify_rescaling_lemma(&SymmetryCandidate::new(g5())).unwrap();
        assert_eq!((r.alpha.clone(), r.beta.clone()), (Rational::of_int(-1), Rational::of_int(-1)));
        assert!(r.holds && r.relation_holds);
        assert_eq!(r.det_lhs, r.det_rhs);

        let r = verify_rescaling_lemma(&SymmetryCandidate::new(M::scalar(c(2, 1)))).unwrap();
        assert_eq!(r.alpha, Rational::of_int(5));
        assert!(r.holds && r.relation_holds);

        let t = Rational::of_ratio(1, 3);
        let r = verify_rescaling_lemma(&exact_rotation(1, 2, &t)).unwrap();
        assert_eq!((r.alpha, r.beta), (Rational::one(), Rational::one()));
        assert!(r.holds);
    }

    #[test]
    fn lemma_preconditions() {
        let singular = SymmetryCandidate::new(M::diag([c(1, 0), c(1, 0), c(0, 0), c(0, 0)]));
        assert!(matches!(verify_rescaling_lemma(&singular), Err(Error::Precondition(_))));
        let anti = SymmetryCandidate::antilinear(M::identity());
        assert!(matches!(verify_rescaling_lemma(&anti), Err(Error::Precondition(_))));
    }

    #[test]
    fn compose_examples() {
        let g = SymmetryCandidate::new(g5());
        let sq = compose(&g, &g);
        assert_eq!(sq.matrix, M::identity());
        let b = beta_extract(&sq).unwrap();
        assert_eq!(b.beta_scalar, Rational::one());
        assert_eq!(b.l_s, RealMatrix::identity(6));

        let ci = SymmetryCandidate::new(M::scalar(c(0, 2)));
        let di = SymmetryCandidate::new(M::scalar(c(3, 0)));
        let cd = compose(&ci, &di);
        assert_eq!(cd.matrix, M::scalar(c(0, 6)));
        assert_eq!(beta_extract(&cd).unwrap().beta_scalar, Rational::of_int(36));

        let gc = compose(&g, &ci);
        assert_eq!(gc.matrix, g5().scale(&c(0, 2)));
        assert_eq!(beta_extract(&gc).unwrap().beta_scalar, Rational::of_int(-4));
    }

    #[test]
    fn antilinear_composition_matches_sequential_application() {
        let a = SymmetryCandidate::antilinear(M::diag([c(1, 1), c(0, 1), c(1, 0), c(2, -1)]));
        let b = SymmetryCandidate::new(g5().scale(&c(1, 3)));
        let psi = Spinor::<Rational>::from_i64_pairs([(1, 2), (-3, 1), (0, 4), (5, -2)]);
        for (x, y) in [(&a, &b), (&b, &a), (&a, &a)] {
            assert_eq!(compose(x, y).apply(&psi), x.apply(&y.apply(&psi)));
            let inv = inverse(x).unwrap();
            assert_eq!(inv.apply(&x.apply(&psi)), psi);
        }
    }

    #[test]
    fn inverse_examples() {
        let g = SymmetryCandidate::new(g5());
        assert_eq!(inverse(&g).unwrap().matrix, g5());
        let two = SymmetryCandidate::new(M::scalar(c(2, 0)));
        let inv = inverse(&two).unwrap();
        assert_eq!(inv.matrix, M::scalar(Exact::from_real(Rational::of_ratio(1, 2))));
        assert_eq!(beta_extract(&inv).unwrap().beta_scalar, Rational::of_ratio(1, 4));
        let singular = SymmetryCandidate::new(M::diag([c(1, 0), c(0, 0), c(1, 0), c(1, 0)]));
        assert_eq!(inverse(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn block_inverse_is_blockwise() {
        let a: Block2<Rational> = [[c(1, 0), c(2, 0)], [c(0, 0), c(1, 0)]];
        let b: Block2<Rational> = [[c(0, 1), c(0, 0)], [c(1, 0), c(3, 0)]];
        let s = type6_block(&a, &b, BlockLayout::Diag).unwrap();
        let inv = inverse(&s).unwrap().matrix;
        assert_eq!(&s.matrix * &inv, M::identity());
        assert!(inv.block(0, 1).iter().flatten().all(Zero::is_zero));
        assert!(inv.block(1, 0).iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn type6_examples() {
        let id = crate::algebra::matrix::block_identity::<Rational>();
        let z = crate::algebra::matrix::block_zero::<Rational>();
        assert_eq!(type6_block(&id, &id, BlockLayout::Diag).unwrap().matrix, M::identity());
        assert_eq!(type6_block(&z, &z, BlockLayout::Diag), Err(Error::BothBlocksZero));

        let psi = Spinor::<Rational>::from_i64_pairs([(2, 1), (0, -1), (0, 0), (0, 0)]);
        let cfg = ClassifierConfig::exact();
        let proj = type6_block(&id, &z, BlockLayout::Diag).unwrap();
        assert_eq!(proj.apply(&psi), psi);
        assert_eq!(crate::lounesto::classify(&proj.apply(&psi), &cfg).unwrap().value(), 6);

        let swap = type6_block(&z, &id, BlockLayout::AntiDiag).unwrap();
        let out = swap.apply(&psi);
        assert_eq!(out.0, [c(0, 0), c(0, 0), c(2, 1), c(0, -1)]);
        assert_eq!(crate::lounesto::classify(&out, &cfg).unwrap().value(), 6);
    }

    #[test]
    fn preserves_class_examples() {
        let cfg = ClassifierConfig::exact();
        let one = LounestoClass::new(1).unwrap();
        let r = preserves_class(&SymmetryCandidate::new(g5()), one, 100, 11, &cfg).unwrap();
        assert!(r.pass && r.preserved == 100);

        let proj = SymmetryCandidate::new(M::diag([c(1, 0), c(1, 0), c(0, 0), c(0, 0)]));
        let r = preserves_class(&proj, one, 100, 11, &cfg).unwrap();
        assert!(!r.pass);
        assert!(r.failures + r.discarded_zero_current == 100);
        assert!(r.counterexamples.iter().all(|c| c.got.is_some_and(|k| k.value() == 6)));
    }

    #[test]
    fn preserves_class_float_mode() {
        let cfg = ClassifierConfig::for_mode(crate::algebra::Mode::Float);
        let s = rotation(1, 3, 0.7);
        for class in LounestoClass::ALL {
            assert!(preserves_class(&s, class, 20, 5, &cfg).unwrap().pass);
        }
    }
}
