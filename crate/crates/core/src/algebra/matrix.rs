//! Dense 4×4 complex matrices and small real square matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::scalar::{ComplexExt, Real, Scalar};

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix4<R: Real>(pub [[Scalar<R>; 4]; 4]);

impl<R: Real> Matrix4<R> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Scalar<R>) -> Self {
        Matrix4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Scalar::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar<R>) -> Self {
        Self::from_fn(|i, j| if i == j { c.clone() } else { Scalar::zero() })
    }

    pub fn diag(d: [Scalar<R>; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Assemble from four 2×2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: &[[Scalar<R>; 2]; 2],
        b: &[[Scalar<R>; 2]; 2],
        c: &[[Scalar<R>; 2]; 2],
        d: &[[Scalar<R>; 2]; 2],
    ) -> Self {
        Self::from_fn(|i, j| match (i < 2, j < 2) {
            (true, true) => a[i][j].clone(),
            (true, false) => b[i][j - 2].clone(),
            (false, true) => c[i - 2][j].clone(),
            (false, false) => d[i - 2][j - 2].clone(),
        })
    }

    pub fn block(&self, row: usize, col: usize) -> [[Scalar<R>; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[2 * row + i][2 * col + j].clone()))
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, c: &Scalar<R>) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() * c.clone())
    }

    pub fn trace(&self) -> Scalar<R> {
        (0..4).fold(Scalar::zero(), |acc, i| acc + self.0[i][i].clone())
    }

    pub fn mul_vec(&self, v: &[Scalar<R>; 4]) -> [Scalar<R>; 4] {
        std::array::from_fn(|i| {
            let mut acc = Scalar::zero();
            for (a, x) in self.0[i].iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc = acc + a.clone() * x.clone();
                }
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// Largest real or imaginary component magnitude; exact in exact mode.
    pub fn max_abs(&self) -> R {
        self.0.iter().flatten().fold(R::zero(), |m, z| {
            let a = z.re.abs();
            let b = z.im.abs();
            let c = if a > b { a } else { b };
            if c > m {
                c
            } else {
                m
            }
        })
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    /// Entrywise comparison: exact equality in exact mode, `|a - b| <= tol` in float mode.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if R::is_exact() {
            return self == other;
        }
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .all(|(a, b)| (a.clone() - b.clone()).magnitude() <= tol)
    }

    pub fn to_float(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.0[i][j].to_float())
    }

    pub fn from_exact(m: &Matrix4<super::scalar::Rational>) -> Self {
        Self::from_fn(|i, j| Complex::new(R::of_rational(&m.0[i][j].re), R::of_rational(&m.0[i][j].im)))
    }

    pub fn determinant(&self) -> Scalar<R> {
        let mut a = self.0.clone();
        let mut det = Scalar::<R>::one();
        for col in 0..4 {
            let Some(p) = pivot_row(&a, col, col) else {
                return Scalar::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = det * pivot.clone();
            let inv = pivot.checked_inv().expect("pivot is nonzero");
            for row in col + 1..4 {
                if a[row][col].is_zero() {
                    continue;
                }
                let f = a[row][col].clone() * inv.clone();
                for k in col..4 {
                    let t = f.clone() * a[col][k].clone();
                    a[row][k] = a[row][k].clone() - t;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse with magnitude pivoting. `None` when singular
    /// (exact mode) or when a pivot underflows to zero (float mode).
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0.clone();
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let p = pivot_row(&a, col, col)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].checked_inv()?;
            for k in 0..4 {
                a[col][k] = a[col][k].clone() * pinv.clone();
                inv[col][k] = inv[col][k].clone() * pinv.clone();
            }
            for row in 0..4 {
                if row == col || a[row][col].is_zero() {
                    continue;
                }
                let f = a[row][col].clone();
                for k in 0..4 {
                    let t = f.clone() * a[col][k].clone();
                    a[row][k] = a[row][k].clone() - t;
                    let t = f.clone() * inv[col][k].clone();
                    inv[row][k] = inv[row][k].clone() - t;
                }
            }
        }
        Some(Matrix4(inv))
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

fn pivot_row<R: Real>(a: &[[Scalar<R>; 4]; 4], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (row, r) in a.iter().enumerate().skip(from) {
        if r[col].is_zero() {
            continue;
        }
        let m = r[col].magnitude();
        if best.is_none_or(|(_, bm)| m > bm) {
            best = Some((row, m));
        }
    }
    best.map(|(row, _)| row)
}

impl<R: Real> Index<(usize, usize)> for Matrix4<R> {
    type Output = Scalar<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar<R> {
        &self.0[i][j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for Matrix4<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar<R> {
        &mut self.0[i][j]
    }
}

impl<R: Real> Mul for &Matrix4<R> {
    type Output = Matrix4<R>;
    fn mul(self, rhs: &Matrix4<R>) -> Matrix4<R> {
        Matrix4::from_fn(|i, j| {
            let mut acc = Scalar::zero();
            for k in 0..4 {
                let (a, b) = (&self.0[i][k], &rhs.0[k][j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }
}

impl<R: Real> Mul for Matrix4<R> {
    type Output = Matrix4<R>;
    fn mul(self, rhs: Matrix4<R>) -> Matrix4<R> {
        &self * &rhs
    }
}

impl<R: Real> Add for &Matrix4<R> {
    type Output = Matrix4<R>;
    fn add(self, rhs: &Matrix4<R>) -> Matrix4<R> {
        Matrix4::from_fn(|i, j| self.0[i][j].clone() + rhs.0[i][j].clone())
    }
}

impl<R: Real> Sub for &Matrix4<R> {
    type Output = Matrix4<R>;
    fn sub(self, rhs: &Matrix4<R>) -> Matrix4<R> {
        Matrix4::from_fn(|i, j| self.0[i][j].clone() - rhs.0[i][j].clone())
    }
}

impl<R: Real> Neg for &Matrix4<R> {
    type Output = Matrix4<R>;
    fn neg(self) -> Matrix4<R> {
        Matrix4::from_fn(|i, j| -self.0[i][j].clone())
    }
}

/// Square real matrix of runtime size; used for sector transforms.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix<R: Real> {
    n: usize,
    data: Vec<R>,
}

impl<R: Real> RealMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        RealMatrix { n, data: vec![R::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![R::one(); n])
    }

    pub fn diagonal(d: Vec<R>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, v) in d.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RealMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.n).map(<[R]>::to_vec).collect()
    }

    pub fn scale(&self, c: &R) -> Self {
        RealMatrix { n: self.n, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        (0..self.n)
            .map(|i| (0..self.n).fold(R::zero(), |acc, k| acc + self[(i, k)].clone() * v[k].clone()))
            .collect()
    }

    /// `Some(c)` when the matrix equals `c·I` (exactly, or within `tol` in float mode).
    pub fn as_scalar_multiple(&self, tol: f64) -> Option<R> {
        let c = self[(0, 0)].clone();
        let target = Self::identity(self.n).scale(&c);
        self.approx_eq(&target, tol).then_some(c)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        if R::is_exact() {
            return self == other;
        }
        self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b.clone()).abs().as_f64() <= tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs().as_f64())
            .fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for row in col..n {
                if a[(row, col)].is_zero() {
                    continue;
                }
                let m = a[(row, col)].abs().as_f64();
                if best.is_none_or(|(_, bm)| m > bm) {
                    best = Some((row, m));
                }
            }
            let (p, _) = best?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pv = a[(col, col)].clone();
            for k in 0..n {
                a[(col, k)] = a[(col, k)].clone() / pv.clone();
                inv[(col, k)] = inv[(col, k)].clone() / pv.clone();
            }
            for row in 0..n {
                if row == col || a[(row, col)].is_zero() {
                    continue;
                }
                let f = a[(row, col)].clone();
                for k in 0..n {
                    let t = f.clone() * a[(col, k)].clone();
                    a[(row, k)] = a[(row, k)].clone() - t;
                    let t = f.clone() * inv[(col, k)].clone();
                    inv[(row, k)] = inv[(row, k)].clone() - t;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.n {
                self.data.swap(i * self.n + k, j * self.n + k);
            }
        }
    }

    pub fn to_float(&self) -> RealMatrix<f64> {
        RealMatrix { n: self.n, data: self.data.iter().map(Real::as_f64).collect() }
    }
}

impl<R: Real> Index<(usize, usize)> for RealMatrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.n + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for RealMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.n + j]
    }
}

impl<R: Real> Mul for &RealMatrix<R> {
    type Output = RealMatrix<R>;
    fn mul(self, rhs: &RealMatrix<R>) -> RealMatrix<R> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = RealMatrix::<R>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

/// Complex 2×2 block helper.
pub type Block2<R> = [[Complex<R>; 2]; 2];

pub fn block_zero<R: Real>() -> Block2<R> {
    std::array::from_fn(|_| std::array::from_fn(|_| Complex::zero()))
}

pub fn block_identity<R: Real>() -> Block2<R> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Complex::one() } else { Complex::zero() }))
}

pub fn block_is_zero<R: Real>(b: &Block2<R>) -> bool {
    b.iter().flatten().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Exact, Rational};

    fn sample() -> Matrix4<Rational> {
        Matrix4::from_fn(|i, j| Exact::from_i64_pair((i * 4 + j) as i64 % 5 - 2, (i + 2 * j) as i64 % 3 - 1))
    }

    #[test]
    fn exact_inverse_round_trips() {
        let m = sample();
        let inv = m.inverse().expect("sample is invertible");
        assert_eq!(&m * &inv, Matrix4::identity());
        assert_eq!(&inv * &m, Matrix4::identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = Matrix4::<Rational>::identity();
        m[(3, 3)] = Exact::zero();
        assert!(m.inverse().is_none());
        assert_eq!(m.determinant(), Exact::zero());
    }

    #[test]
    fn determinant_is_multiplicative() {
        let a = sample();
        let b = a.dagger();
        assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn dagger_is_involution() {
        let a = sample();
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn real_matrix_inverse() {
        let m = RealMatrix::from_rows(vec![
            vec![Rational::of_int(2), Rational::of_int(1)],
            vec![Rational::of_int(1), Rational::of_int(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RealMatrix::identity(2));
        assert_eq!(RealMatrix::<Rational>::identity(3).scale(&Rational::of_int(4)).as_scalar_multiple(0.0), Some(Rational::of_int(4)));
        assert!(m.as_scalar_multiple(0.0).is_none());
    }
}
