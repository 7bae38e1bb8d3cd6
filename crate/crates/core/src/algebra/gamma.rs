//! Weyl-representation gamma matrices and the 16-element Clifford basis.
//!
//! Conventions, fixed for the whole crate:
//!
//! * `γ⁰ = [[0, 1], [1, 0]]`, `γʲ = [[0, σʲ], [-σʲ, 0]]` (2×2 blocks),
//! * `γ⁵ = iγ⁰γ¹γ²γ³ = diag(-1, -1, 1, 1)`,
//! * metric `η = diag(+1, -1, -1, -1)`, Levi-Civita `ε_{0123} = +1`.
//!
//! Bilinear formulas index the four generators as `γ_μ`; index placement only
//! matters through `η`, which is applied explicitly wherever a contraction
//! happens.
//!
//! Basis slots, in order: `𝕀`, `γ⁵`, `γ_μ` (μ = 0..3), `γ_μγ⁵` (μ = 0..3),
//! `γ_μγ_ν` for `(μ, ν)` in [`BIVECTOR_PAIRS`].

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::Matrix4;
use super::scalar::{ComplexExt, Real, Scalar};

/// Minkowski metric diagonal.
pub const METRIC: [i64; 4] = [1, -1, -1, -1];

/// Index pairs `(μ, ν)`, `μ < ν`, labelling the six bivector slots.
pub const BIVECTOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const BASIS_LEN: usize = 16;

/// Sector of the 16-element basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Scalar,
    Pseudoscalar,
    Vector,
    Axial,
    Bivector,
}

impl Sector {
    pub const ALL: [Sector; 5] =
        [Sector::Scalar, Sector::Pseudoscalar, Sector::Vector, Sector::Axial, Sector::Bivector];

    /// Basis slots belonging to this sector.
    pub fn slots(self) -> std::ops::Range<usize> {
        match self {
            Sector::Scalar => 0..1,
            Sector::Pseudoscalar => 1..2,
            Sector::Vector => 2..6,
            Sector::Axial => 6..10,
            Sector::Bivector => 10..16,
        }
    }

    pub fn of_slot(slot: usize) -> Sector {
        Sector::ALL
            .into_iter()
            .find(|s| s.slots().contains(&slot))
            .expect("slot index below 16")
    }
}

/// Human-readable label of a basis slot.
pub fn basis_label(slot: usize) -> String {
    match slot {
        0 => "I".to_string(),
        1 => "g5".to_string(),
        2..=5 => format!("g{}", slot - 2),
        6..=9 => format!("g{}g5", slot - 6),
        10..=15 => {
            let (m, n) = BIVECTOR_PAIRS[slot - 10];
            format!("g{m}g{n}")
        }
        _ => panic!("basis slot {slot} out of range"),
    }
}

/// Levi-Civita symbol with `ε_{0123} = +1`.
pub fn levi_civita(idx: [usize; 4]) -> i64 {
    let mut sign = 1;
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] == idx[b] {
                return 0;
            }
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    sign
}

#[derive(Debug, Clone)]
pub struct GammaBasis<R: Real> {
    pub gamma: [Matrix4<R>; 4],
    pub gamma5: Matrix4<R>,
    /// The 16 basis elements in slot order.
    pub elements: [Matrix4<R>; BASIS_LEN],
    /// Inverses of `elements`, used for trace projection. Zero when an
    /// element is singular (only possible for a deliberately broken basis).
    inverses: [Matrix4<R>; BASIS_LEN],
}

impl<R: Real> GammaBasis<R> {
    /// Builds the derived basis from four generators. No algebra is checked
    /// here; see [`clifford_residual`].
    pub fn from_generators(gamma: [Matrix4<R>; 4]) -> Self {
        let i = Scalar::<R>::imag_unit();
        let gamma5 = (&(&(&gamma[0] * &gamma[1]) * &gamma[2]) * &gamma[3]).scale(&i);
        let mut elements: Vec<Matrix4<R>> = Vec::with_capacity(BASIS_LEN);
        elements.push(Matrix4::identity());
        elements.push(gamma5.clone());
        elements.extend(gamma.iter().cloned());
        elements.extend(gamma.iter().map(|g| g * &gamma5));
        elements.extend(BIVECTOR_PAIRS.iter().map(|&(m, n)| &gamma[m] * &gamma[n]));
        let elements: [Matrix4<R>; BASIS_LEN] = elements.try_into().expect("16 elements");
        let inverses = std::array::from_fn(|k| elements[k].inverse().unwrap_or_else(Matrix4::zero));
        GammaBasis { gamma, gamma5, elements, inverses }
    }

    pub fn gamma0(&self) -> &Matrix4<R> {
        &self.gamma[0]
    }

    pub fn element(&self, slot: usize) -> &Matrix4<R> {
        &self.elements[slot]
    }

    /// `γ_μγ_ν` for any ordered pair (not only basis pairs).
    pub fn product(&self, mu: usize, nu: usize) -> Matrix4<R> {
        &self.gamma[mu] * &self.gamma[nu]
    }

    /// Coefficients `c_a` with `M = Σ c_a Γ_a`, from `c_a = Tr(Γ_a⁻¹ M) / 4`.
    pub fn expand(&self, m: &Matrix4<R>) -> [Scalar<R>; BASIS_LEN] {
        let quarter = Scalar::<R>::from_real(R::of_ratio(1, 4));
        std::array::from_fn(|a| (&self.inverses[a] * m).trace() * quarter.clone())
    }

    pub fn reconstruct(&self, coeffs: &[Scalar<R>; BASIS_LEN]) -> Matrix4<R> {
        coeffs
            .iter()
            .zip(&self.elements)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix4::zero(), |acc, (c, e)| &acc + &e.scale(c))
    }
}

fn pauli<R: Real>(k: usize) -> [[Scalar<R>; 2]; 2] {
    let z = Scalar::<R>::zero;
    let one = Scalar::<R>::one;
    let i = Scalar::<R>::imag_unit;
    match k {
        1 => [[z(), one()], [one(), z()]],
        2 => [[z(), -i()], [i(), z()]],
        3 => [[one(), z()], [z(), -one()]],
        _ => panic!("pauli index must be 1..=3"),
    }
}

fn neg_block<R: Real>(b: &[[Scalar<R>; 2]; 2]) -> [[Scalar<R>; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| -b[i][j].clone()))
}

/// The fixed Weyl-representation basis.
pub fn build_gamma_basis<R: Real>() -> GammaBasis<R> {
    let z = super::matrix::block_zero::<R>();
    let id = super::matrix::block_identity::<R>();
    let g0 = Matrix4::from_blocks(&z, &id, &id, &z);
    let spatial = [1, 2, 3].map(|k| {
        let s = pauli::<R>(k);
        Matrix4::from_blocks(&z, &s, &neg_block(&s), &z)
    });
    let [g1, g2, g3] = spatial;
    GammaBasis::from_generators([g0, g1, g2, g3])
}

/// The standard basis, built once per mode.
pub fn standard<R: Real>() -> &'static GammaBasis<R> {
    R::standard_basis()
}

/// `max_{μν} ‖γ_μγ_ν + γ_νγ_μ − 2η_{μν}𝕀‖_max`.
pub fn clifford_residual<R: Real>(basis: &GammaBasis<R>) -> R {
    let mut worst = R::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = &basis.product(mu, nu) + &basis.product(nu, mu);
            let target = if mu == nu {
                Matrix4::scalar(Complex::from_real(R::of_int(2 * METRIC[mu])))
            } else {
                Matrix4::zero()
            };
            let r = (&anti - &target).max_abs();
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// Coefficients of `m` in the standard 16-element basis.
pub fn gamma_basis_expand<R: Real>(m: &Matrix4<R>) -> [Scalar<R>; BASIS_LEN] {
    standard::<R>().expand(m)
}
