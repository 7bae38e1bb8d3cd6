//! Real and complex scalar layer.
//!
//! Every computation runs in one of two modes, selected by the real type
//! parameter `R`:
//!
//! * [`Rational`] (exact): complex values are Gaussian rationals, equality and
//!   nullness are decided without tolerance.
//! * `f64` (float): complex values are binary64 pairs, nullness is decided
//!   against an explicit tolerance.
//!
//! Complex scalars are always `num_complex::Complex<R>`.

use std::fmt::{Debug, Display};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gamma::{build_gamma_basis, GammaBasis};

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Complex scalar over the real type `R`.
pub type Scalar<R> = Complex<R>;

/// Exact complex scalar (Gaussian rational).
pub type Exact = Complex<Rational>;

/// Floating complex scalar.
pub type Float = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact|float)")),
        }
    }
}

/// Real field underlying a computation mode.
pub trait Real:
    Signed + PartialOrd + Clone + Debug + Display + Send + Sync + 'static
{
    const MODE: Mode;

    fn of_int(n: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn of_ratio(num: i64, den: i64) -> Self;

    /// Lossy conversion from binary64. Exact mode keeps the full binary value.
    fn of_f64(x: f64) -> Self;

    fn as_f64(&self) -> f64;

    /// Exact rationals carried into this mode (rounded in float mode).
    fn of_rational(r: &Rational) -> Self;

    /// Nullness test. Exact mode ignores `scale` and `tol`; float mode
    /// declares `|self| <= tol * scale` null.
    fn is_null(&self, scale: f64, tol: f64) -> bool;

    /// Shared Weyl basis for this mode.
    fn standard_basis() -> &'static GammaBasis<Self>;

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    fn half() -> Self {
        Self::of_ratio(1, 2)
    }
}

impl Real for f64 {
    const MODE: Mode = Mode::Float;

    fn of_int(n: i64) -> Self {
        n as f64
    }

    fn of_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn of_f64(x: f64) -> Self {
        x
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn of_rational(r: &Rational) -> Self {
        r.as_f64()
    }

    fn is_null(&self, scale: f64, tol: f64) -> bool {
        self.abs() <= tol * scale
    }

    fn standard_basis() -> &'static GammaBasis<Self> {
        static BASIS: OnceLock<GammaBasis<f64>> = OnceLock::new();
        BASIS.get_or_init(build_gamma_basis)
    }
}

impl Real for Rational {
    const MODE: Mode = Mode::Exact;

    fn of_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn of_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn of_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).unwrap_or_else(BigRational::zero)
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn of_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_null(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn standard_basis() -> &'static GammaBasis<Self> {
        static BASIS: OnceLock<GammaBasis<Rational>> = OnceLock::new();
        BASIS.get_or_init(build_gamma_basis)
    }
}

/// Convenience constructors and conversions on complex scalars.
pub trait ComplexExt<R: Real> {
    fn new_ri(re: R, im: R) -> Self;
    fn from_real(re: R) -> Self;
    fn imag_unit() -> Self;
    fn from_i64_pair(re: i64, im: i64) -> Self;
    /// `|z|` as binary64; used for pivoting and tolerance scales.
    fn magnitude(&self) -> f64;
    fn to_float(&self) -> Float;
    /// Multiplicative inverse, `None` for exact zero.
    fn checked_inv(&self) -> Option<Self>
    where
        Self: Sized;
}

impl<R: Real> ComplexExt<R> for Complex<R> {
    fn new_ri(re: R, im: R) -> Self {
        Complex::new(re, im)
    }

    fn from_real(re: R) -> Self {
        Complex::new(re, R::zero())
    }

    fn imag_unit() -> Self {
        Complex::new(R::zero(), R::one())
    }

    fn from_i64_pair(re: i64, im: i64) -> Self {
        Complex::new(R::of_int(re), R::of_int(im))
    }

    fn magnitude(&self) -> f64 {
        self.re.as_f64().hypot(self.im.as_f64())
    }

    fn to_float(&self) -> Float {
        Complex::new(self.re.as_f64(), self.im.as_f64())
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            let n = self.norm_sqr();
            Some(Complex::new(self.re.clone() / n.clone(), -self.im.clone() / n))
        }
    }
}

/// Parse a rational from `"p/q"`, `"p"`, or a decimal literal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, String> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| format!("bad exponent in `{s}`"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    if exponent.abs() > 4096 {
        return Err(format!("exponent out of range in `{s}`"));
    }
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("not a number: `{s}`"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: `{s}`"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().unwrap() };
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u8);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Always renders `p/q`, including unit denominators.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Unit-modulus Gaussian rational from a rational parameter `t` via the
/// rational parametrisation of the circle: `((1 - t²) + 2t i) / (1 + t²)`.
pub fn rational_unit(t: &Rational) -> Exact {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    Complex::new((&one - &t2) / &den, (Rational::of_int(2) * t) / den)
}
