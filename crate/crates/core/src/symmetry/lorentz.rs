//! Curated candidates: spin transforms, scalars, `γ⁵`, parity.
//!
//! A rotation in the `(i, j)` plane is `c𝕀 + s γ_iγ_j` with `c² + s² = 1`; a
//! boost along axis `k` is `ch𝕀 + sh γ₀γ_k` with `ch² − sh² = 1`. Exact
//! variants use the rational parametrisations
//! `c = (1 − t²)/(1 + t²)`, `s = 2t/(1 + t²)` and
//! `ch = (1 + t²)/(1 − t²)`, `sh = 2t/(1 − t²)`.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::SymmetryCandidate;
use crate::algebra::{standard, ComplexExt, Exact, Matrix4, Rational, Real, Scalar};
use crate::error::{Error, Result};

/// `c𝕀 + s γ_iγ_j`.
pub fn spin_rotation<R: Real>(i: usize, j: usize, c: R, s: R) -> Matrix4<R> {
    let b = standard::<R>().product(i, j);
    &Matrix4::scalar(Scalar::from_real(c)) + &b.scale(&Scalar::from_real(s))
}

/// `ch𝕀 + sh γ₀γ_k`.
pub fn spin_boost<R: Real>(axis: usize, ch: R, sh: R) -> Matrix4<R> {
    spin_rotation(0, axis, ch, sh)
}

fn check_spatial_plane(i: usize, j: usize) {
    assert!((1..=3).contains(&i) && (1..=3).contains(&j) && i != j, "rotation plane must be two distinct spatial axes");
}

/// Rotation in the `(i, j)` plane with rational half-angle tangent `t`.
pub fn exact_rotation(i: usize, j: usize, t: &Rational) -> SymmetryCandidate<Rational> {
    check_spatial_plane(i, j);
    let t2 = t * t;
    let den = Rational::one() + t2.clone();
    let c = (Rational::one() - t2) / den.clone();
    let s = (t * Rational::of_int(2)) / den;
    SymmetryCandidate::new(spin_rotation(i, j, c, s)).with_label(format!("R{i}{j}({t})"))
}

/// Boost along `axis` with rational parameter `|t| < 1`.
pub fn exact_boost(axis: usize, t: &Rational) -> Result<SymmetryCandidate<Rational>> {
    assert!((1..=3).contains(&axis), "boost axis must be 1..=3");
    if t.abs() >= Rational::one() {
        return Err(Error::InvalidConfig(format!("boost parameter must satisfy |t| < 1, got {t}")));
    }
    let t2 = t * t;
    let den = Rational::one() - t2.clone();
    let ch = (Rational::one() + t2) / den.clone();
    let sh = (t * Rational::of_int(2)) / den;
    Ok(SymmetryCandidate::new(spin_boost(axis, ch, sh)).with_label(format!("B{axis}({t})")))
}

/// Rotation by `angle` radians in the `(i, j)` plane.
pub fn rotation(i: usize, j: usize, angle: f64) -> SymmetryCandidate<f64> {
    check_spatial_plane(i, j);
    let (s, c) = (angle / 2.0).sin_cos();
    SymmetryCandidate::new(spin_rotation(i, j, c, s)).with_label(format!("R{i}{j}({angle})"))
}

/// Boost with the given rapidity along `axis`.
pub fn boost(axis: usize, rapidity: f64) -> SymmetryCandidate<f64> {
    assert!((1..=3).contains(&axis), "boost axis must be 1..=3");
    let h = rapidity / 2.0;
    SymmetryCandidate::new(spin_boost(axis, h.cosh(), h.sinh())).with_label(format!("B{axis}({rapidity})"))
}

pub fn scalar_candidate<R: Real>(c: Scalar<R>) -> SymmetryCandidate<R> {
    let label = format!("({c})I");
    SymmetryCandidate::new(Matrix4::scalar(c)).with_label(label)
}

pub fn gamma5_candidate<R: Real>() -> SymmetryCandidate<R> {
    SymmetryCandidate::new(standard::<R>().gamma5.clone()).with_label("g5")
}

/// Parity, `ψ ↦ γ⁰ψ`.
pub fn parity<R: Real>() -> SymmetryCandidate<R> {
    SymmetryCandidate::new(standard::<R>().gamma0().clone()).with_label("g0")
}

fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::of_ratio(rng.random_range(-bound..=bound), rng.random_range(1..=bound))
}

/// A random exact member of the generator family: `c𝕀`, `γ⁵`, parity,
/// rotations and boosts.
pub fn random_generator(rng: &mut impl Rng) -> SymmetryCandidate<Rational> {
    match rng.random_range(0..5) {
        0 => loop {
            let c = Exact::new(small_rational(rng, 3), small_rational(rng, 3));
            if !c.is_zero() {
                break scalar_candidate(c);
            }
        },
        1 => gamma5_candidate(),
        2 => parity(),
        3 => {
            let planes = [(1, 2), (1, 3), (2, 3)];
            let (i, j) = planes[rng.random_range(0..3)];
            exact_rotation(i, j, &small_rational(rng, 5))
        }
        _ => {
            let q = rng.random_range(2..=6);
            let t = Rational::of_ratio(rng.random_range(-(q - 1)..q), q);
            exact_boost(rng.random_range(1..=3), &t).expect("|t| < 1 by construction")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::beta_extract;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_rotation_is_unimodular_spin_transform() {
        let s = exact_rotation(1, 2, &Rational::of_ratio(1, 2));
        let b = beta_extract(&s).unwrap();
        assert_eq!(b.beta_scalar, Rational::one());
        assert_eq!(b.beta_pseudo, Rational::one());
        assert_eq!(s.determinant(), Exact::one());
        // The time component of J is untouched and the rotation acts in the 1-2 plane.
        assert_eq!(b.l_j[(0, 0)], Rational::one());
        assert_eq!(b.l_j[(3, 3)], Rational::one());
        assert!(!b.strict);
    }

    #[test]
    fn exact_boost_mixes_time_and_axis() {
        let s = exact_boost(3, &Rational::of_ratio(1, 3)).unwrap();
        let b = beta_extract(&s).unwrap();
        assert_eq!(b.beta_scalar, Rational::one());
        assert!(!b.l_j[(0, 3)].is_zero());
        assert!(exact_boost(1, &Rational::one()).is_err());
    }

    #[test]
    fn float_rotation_matches_exact_parametrisation() {
        let t = 0.25_f64;
        let angle = 2.0 * 2.0 * t.atan();
        let f = rotation(2, 3, angle).matrix;
        let e = exact_rotation(2, 3, &Rational::of_ratio(1, 4)).matrix.to_float();
        assert!(f.approx_eq(&e, 1e-14));
    }

    #[test]
    fn random_generators_are_sector_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_generator(&mut rng);
            assert!(g.is_invertible());
            beta_extract(&g).unwrap();
        }
    }
}
