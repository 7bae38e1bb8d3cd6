//! Lounesto classification by the nullness pattern of `(K, S, ω, σ)`.
//!
//! | class | K   | S   | ω   | σ   |
//! |-------|-----|-----|-----|-----|
//! | 1     | ≠0  | ≠0  | ≠0  | ≠0  |
//! | 2     | ≠0  | ≠0  | ≠0  | 0   |
//! | 3     | ≠0  | ≠0  | 0   | ≠0  |
//! | 4     | ≠0  | ≠0  | 0   | 0   |
//! | 5     | 0   | ≠0  | 0   | 0   |
//! | 6     | ≠0  | 0   | 0   | 0   |
//!
//! Classes 1–3 are regular, 4–6 singular. A spinor with vanishing current is
//! not classified.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::rational_unit;
use crate::algebra::{Exact, Mode, Rational, Real};
use crate::bilinear::{bilinears, quarter_turn, BilinearSet, Spinor};
use crate::error::{Error, Result};

pub const DEFAULT_NULL_TOL: f64 = 1e-9;

/// Attempts per call of [`sample_class`].
pub const SAMPLER_BUDGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct LounestoClass(u8);

impl LounestoClass {
    pub const ALL: [LounestoClass; 6] = [
        LounestoClass(1),
        LounestoClass(2),
        LounestoClass(3),
        LounestoClass(4),
        LounestoClass(5),
        LounestoClass(6),
    ];

    pub fn new(value: u8) -> Result<Self> {
        if (1..=6).contains(&value) {
            Ok(LounestoClass(value))
        } else {
            Err(Error::InvalidConfig(format!("Lounesto class must be 1..=6, got {value}")))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_singular(self) -> bool {
        self.0 >= 4
    }

    pub fn is_regular(self) -> bool {
        !self.is_singular()
    }

    /// Conventional name of the class.
    pub fn name(self) -> &'static str {
        match self.0 {
            1..=3 => "Dirac",
            4 => "flag-dipole",
            5 => "flagpole",
            _ => "dipole",
        }
    }

    fn expected_pattern(self) -> NullPattern {
        let (k, s, o, g) = match self.0 {
            1 => (false, false, false, false),
            2 => (false, false, false, true),
            3 => (false, false, true, false),
            4 => (false, false, true, true),
            5 => (true, false, true, true),
            _ => (false, true, true, true),
        };
        NullPattern { k_null: k, s_null: s, omega_null: o, sigma_null: g }
    }
}

impl TryFrom<u8> for LounestoClass {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        LounestoClass::new(v)
    }
}

impl From<LounestoClass> for u8 {
    fn from(c: LounestoClass) -> u8 {
        c.0
    }
}

impl fmt::Display for LounestoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of `K`, `S`, `ω`, `σ` vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NullPattern {
    pub k_null: bool,
    pub s_null: bool,
    pub omega_null: bool,
    pub sigma_null: bool,
}

impl NullPattern {
    pub fn class(self) -> Option<LounestoClass> {
        LounestoClass::ALL.into_iter().find(|c| c.expected_pattern() == self)
    }
}

impl fmt::Display for NullPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = |b: bool| if b { "=0" } else { "≠0" };
        write!(
            f,
            "K{} S{} ω{} σ{}",
            z(self.k_null),
            z(self.s_null),
            z(self.omega_null),
            z(self.sigma_null)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub mode: Mode,
    /// Relative nullness threshold (float mode only).
    pub null_tol: f64,
}

impl ClassifierConfig {
    pub fn exact() -> Self {
        ClassifierConfig { mode: Mode::Exact, null_tol: 0.0 }
    }

    pub fn float(null_tol: f64) -> Result<Self> {
        if !(null_tol > 0.0 && null_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("null_tol must be positive, got {null_tol}")));
        }
        Ok(ClassifierConfig { mode: Mode::Float, null_tol })
    }

    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Self::exact(),
            Mode::Float => ClassifierConfig { mode, null_tol: DEFAULT_NULL_TOL },
        }
    }

    fn check<R: Real>(&self) -> Result<()> {
        if self.mode != R::MODE {
            return Err(Error::ModeMismatch { expected: self.mode, actual: R::MODE });
        }
        if self.mode == Mode::Float && !(self.null_tol > 0.0) {
            return Err(Error::InvalidConfig("float mode needs null_tol > 0".into()));
        }
        Ok(())
    }
}

/// Classification result with its evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<R: Real> {
    pub class: LounestoClass,
    pub pattern: NullPattern,
    pub bilinears: BilinearSet<R>,
}

/// Nullness pattern of an aggregate; `scale` is `J₀` (float tolerances are relative to it).
pub fn null_pattern<R: Real>(b: &BilinearSet<R>, scale: f64, tol: f64) -> NullPattern {
    let null = |x: &R| x.is_null(scale, tol);
    NullPattern {
        k_null: b.k.iter().all(null),
        s_null: b.s.iter().flatten().all(null),
        omega_null: null(&b.omega),
        sigma_null: null(&b.sigma),
    }
}

/// Classifies an aggregate. `scale` is `J₀ = ‖ψ‖²`.
pub fn classify_bilinears<R: Real>(
    b: &BilinearSet<R>,
    scale: f64,
    cfg: &ClassifierConfig,
) -> Result<LounestoClass> {
    cfg.check::<R>()?;
    if scale == 0.0 || b.j.iter().all(|x| x.is_null(scale, cfg.null_tol)) {
        return Err(Error::ZeroCurrent);
    }
    let pattern = null_pattern(b, scale, cfg.null_tol);
    pattern.class().ok_or(Error::UnknownPattern(pattern))
}

pub fn classify_detailed<R: Real>(psi: &Spinor<R>, cfg: &ClassifierConfig) -> Result<Classification<R>> {
    cfg.check::<R>()?;
    if psi.is_zero() {
        return Err(Error::ZeroCurrent);
    }
    let b = bilinears(psi)?;
    let scale = psi.norm_sqr().as_f64();
    let class = classify_bilinears(&b, scale, cfg)?;
    let pattern = null_pattern(&b, scale, cfg.null_tol);
    Ok(Classification { class, pattern, bilinears: b })
}

pub fn classify<R: Real>(psi: &Spinor<R>, cfg: &ClassifierConfig) -> Result<LounestoClass> {
    classify_detailed(psi, cfg).map(|c| c.class)
}

/// `true` for classes 4–6, i.e. `σ` and `ω` both null.
pub fn is_singular<R: Real>(psi: &Spinor<R>, cfg: &ClassifierConfig) -> Result<bool> {
    classify(psi, cfg).map(LounestoClass::is_singular)
}

/// Component relation `a c* = b d*` (equivalently `a = b c d* / |c|²`).
///
/// This relation depends on the gamma representation and does NOT coincide
/// with singularity in the Weyl basis used here; `(1, 1, 1, -1)` is singular
/// but violates it. It is never used for classification. Returns `None` when
/// `c = 0`.
pub fn component_relation<R: Real>(psi: &Spinor<R>) -> Option<bool> {
    let [a, b, c, d] = psi.components();
    if c.is_zero() {
        return None;
    }
    let lhs = a.clone() * c.conj();
    let rhs = b.clone() * d.conj();
    Some(if R::is_exact() {
        lhs == rhs
    } else {
        let scale = psi.norm_sqr().as_f64();
        (lhs - rhs).norm_sqr().as_f64().sqrt() <= DEFAULT_NULL_TOL * scale
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=9);
    Rational::of_ratio(num, den)
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_exact(rng: &mut ChaCha8Rng) -> Exact {
    Complex::new(random_rational(rng), random_rational(rng))
}

fn random_nonzero_exact(rng: &mut ChaCha8Rng) -> Exact {
    loop {
        let z = random_exact(rng);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Regular-type candidate with `a*c + b*d = z`, i.e. `σ = 2 Re z`, `ω = −2 Im z`.
fn with_pairing(rng: &mut ChaCha8Rng, z: Exact) -> Spinor<Rational> {
    let a = random_exact(rng);
    let b = random_nonzero_exact(rng);
    let c = random_exact(rng);
    let d = (z - a.conj() * c.clone()) / b.conj();
    Spinor::new([a, b, c, d])
}

fn candidate(class: LounestoClass, rng: &mut ChaCha8Rng) -> Spinor<Rational> {
    match class.value() {
        1 => Spinor::new(std::array::from_fn(|_| random_exact(rng))),
        2 => {
            let y = random_nonzero_rational(rng);
            with_pairing(rng, Complex::new(Rational::zero(), y))
        }
        3 => {
            let x = random_nonzero_rational(rng);
            with_pairing(rng, Complex::new(x, Rational::zero()))
        }
        4 => with_pairing(rng, Exact::zero()),
        5 => {
            // Charge-conjugation structured: (a, b, −λb*, λa*) with |λ| = 1.
            let t = random_rational(rng);
            let lambda = rational_unit(&t) * quarter_turn::<Rational>(rng.random_range(0..4));
            let a = random_exact(rng);
            let b = if a.is_zero() { random_nonzero_exact(rng) } else { random_exact(rng) };
            let c = -(lambda.clone() * b.conj());
            let d = lambda * a.conj();
            Spinor::new([a, b, c, d])
        }
        _ => {
            let (x, y) = (random_nonzero_exact(rng), random_exact(rng));
            let zero = Exact::zero;
            if rng.random_bool(0.5) {
                Spinor::new([x, y, zero(), zero()])
            } else {
                Spinor::new([zero(), zero(), y, x])
            }
        }
    }
}

/// Deterministic per-seed sampler of rational spinors of the given class.
/// Every returned spinor has been verified by exact classification.
pub fn sample_class(class: LounestoClass, seed: u64) -> Result<Spinor<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(class.value()) << 56));
    let cfg = ClassifierConfig::exact();
    for _ in 0..SAMPLER_BUDGET {
        let psi = candidate(class, &mut rng);
        if classify(&psi, &cfg).ok() == Some(class) {
            return Ok(psi);
        }
    }
    Err(Error::SamplerExhausted { class: class.value(), attempts: SAMPLER_BUDGET })
}

/// Uniform random rational spinor; may be of any class (almost surely 1).
pub fn random_rational_spinor(seed: u64) -> Spinor<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Spinor::new(std::array::from_fn(|_| random_exact(&mut rng)))
}

/// The unit spinor `(1, 0, 0, 0)`.
pub fn unit_spinor<R: Real>() -> Spinor<R> {
    let mut c: [Complex<R>; 4] = std::array::from_fn(|_| Complex::zero());
    c[0] = Complex::one();
    Spinor::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::BilinearSet;

    fn exact(parts: [(i64, i64); 4]) -> Spinor<Rational> {
        Spinor::from_i64_pairs(parts)
    }

    fn class(n: u8) -> LounestoClass {
        LounestoClass::new(n).unwrap()
    }

    #[test]
    fn canonical_cases() {
        let cfg = ClassifierConfig::exact();
        assert_eq!(classify(&exact([(1, 0), (0, 0), (0, 0), (0, 0)]), &cfg).unwrap(), class(6));
        assert_eq!(classify(&exact([(1, 0), (0, 0), (1, 0), (0, 0)]), &cfg).unwrap(), class(3));
        assert_eq!(classify(&exact([(1, 0), (0, 0), (0, 0), (1, 0)]), &cfg).unwrap(), class(5));
    }

    #[test]
    fn zero_spinor_is_unclassifiable() {
        assert_eq!(classify(&Spinor::<Rational>::zero(), &ClassifierConfig::exact()), Err(Error::ZeroCurrent));
    }

    #[test]
    fn singular_predicate() {
        let cfg = ClassifierConfig::exact();
        assert!(is_singular(&exact([(1, 0), (0, 0), (0, 0), (0, 0)]), &cfg).unwrap());
        assert!(!is_singular(&exact([(1, 0), (0, 0), (1, 0), (0, 0)]), &cfg).unwrap());
        assert!(is_singular(&exact([(1, 0), (0, 0), (0, 0), (1, 0)]), &cfg).unwrap());
    }

    #[test]
    fn class5_spinor_has_zero_axial_current_and_s02() {
        let b = bilinears(&exact([(1, 0), (0, 0), (0, 0), (1, 0)])).unwrap();
        assert!(b.k.iter().all(Zero::is_zero));
        assert_eq!(b.s[0][2], Rational::of_int(2));
    }

    #[test]
    fn component_relation_disagrees_with_singularity() {
        let psi = exact([(1, 0), (1, 0), (1, 0), (-1, 0)]);
        assert!(is_singular(&psi, &ClassifierConfig::exact()).unwrap());
        assert_eq!(component_relation(&psi), Some(false));
        assert_eq!(component_relation(&exact([(1, 0), (0, 0), (0, 0), (0, 0)])), None);
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let psi = unit_spinor::<f64>();
        assert!(matches!(classify(&psi, &ClassifierConfig::exact()), Err(Error::ModeMismatch { .. })));
        assert!(ClassifierConfig::float(0.0).is_err());
    }

    #[test]
    fn float_classification_uses_relative_tolerance() {
        let cfg = ClassifierConfig::float(DEFAULT_NULL_TOL).unwrap();
        let psi = exact([(3, 1), (0, 2), (0, 0), (0, 0)]).to_float();
        assert_eq!(classify(&psi, &cfg).unwrap(), class(6));
        let big = psi.scale(&Complex::new(1e6, 0.0));
        assert_eq!(classify(&big, &cfg).unwrap(), class(6));
    }

    #[test]
    fn amorphous_pattern_is_unknown() {
        // K = 0 and S = 0 with J ≠ 0 is not one of the six patterns.
        let q = Rational::of_int;
        let b = BilinearSet::from_parts(
            q(0),
            q(0),
            [q(1), q(0), q(0), q(0)],
            std::array::from_fn(|_| q(0)),
            std::array::from_fn(|_| q(0)),
        );
        let err = classify_bilinears(&b, 1.0, &ClassifierConfig::exact()).unwrap_err();
        assert!(matches!(err, Error::UnknownPattern(p) if p.k_null && p.s_null));
    }

    #[test]
    fn samplers_hit_their_class() {
        for c in LounestoClass::ALL {
            for seed in 0..20 {
                let psi = sample_class(c, seed).unwrap();
                assert_eq!(classify(&psi, &ClassifierConfig::exact()).unwrap(), c);
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_class(class(5), 7).unwrap(), sample_class(class(5), 7).unwrap());
        assert_eq!(classify(&sample_class(class(5), 7).unwrap(), &ClassifierConfig::exact()).unwrap(), class(5));
    }

    #[test]
    fn class_bounds() {
        assert!(LounestoClass::new(0).is_err());
        assert!(LounestoClass::new(7).is_err());
        assert_eq!(class(4).name(), "flag-dipole");
    }
}
