//! Dense square matrices over `Complex<T>`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ComplexExt, Real, RealField};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Complex::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex<T> {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn map<U: Real>(&self, f: impl Fn(&Complex<T>) -> Complex<U>) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(Complex::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Matrix<T>) -> Complex<T> {
        let n = self.n;
        let mut acc = Complex::zero();
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let b = &other.data[k * n + i];
                if !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn commutator(&self, other: &Matrix<T>) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Matrix<T>) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ComplexExt::negligible)
    }

    pub fn is_hermitian(&self) -> bool {
        (self - &self.adjoint()).is_zero()
    }

    /// Scalar multiple of the identity, if it is one.
    pub fn as_scalar(&self) -> Option<Complex<T>> {
        let c = self.get(0, 0).clone();
        (self - &Self::identity(self.n).scale(&c)).is_zero().then_some(c)
    }

    /// `Σ c_i M_i` for matrices of equal size.
    pub fn linear_combination<'a>(
        coeffs: impl IntoIterator<Item = &'a Complex<T>>,
        mats: &[Matrix<T>],
    ) -> Self {
        let n = mats.first().map_or(0, |m| m.n);
        let mut out = Self::zeros(n);
        for (c, m) in coeffs.into_iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl<T: RealField> Matrix<T> {
    /// Determinant by fraction-free pivoting over the field.
    pub fn determinant(&self) -> Complex<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det: Complex<T> = Complex::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].negligible()) else {
                return Complex::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let f = a[r * n + col].clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = a[col * n + j].clone() * f.clone();
                    a[r * n + j] = a[r * n + j].clone() - t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r * n + col].negligible()).ok_or(Error::Singular)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let pivot = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() / pivot.clone();
                inv[col * n + j] = inv[col * n + j].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a[col * n + j].clone() * f.clone();
                    a[r * n + j] = a[r * n + j].clone() - t;
                    let t = inv[col * n + j].clone() * f.clone();
                    inv[r * n + j] = inv[r * n + j].clone() - t;
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }

    /// Pfaffian of an antisymmetric matrix of even size, by congruence
    /// elimination. Odd sizes return zero.
    pub fn pfaffian(&self) -> Complex<T> {
        let n = self.n;
        if n % 2 == 1 {
            return Complex::zero();
        }
        let mut a = self.data.clone();
        let at = |a: &Vec<Complex<T>>, i: usize, j: usize| a[i * n + j].clone();
        let mut pf: Complex<T> = Complex::one();
        for k in (0..n).step_by(2) {
            let Some(p) = (k + 1..n).find(|&j| !a[k * n + j].negligible()) else {
                return Complex::zero();
            };
            if p != k + 1 {
                // swap rows and columns k+1 and p
                for j in 0..n {
                    a.swap((k + 1) * n + j, p * n + j);
                }
                for i in 0..n {
                    a.swap(i * n + k + 1, i * n + p);
                }
                pf = -pf;
            }
            let pivot = at(&a, k, k + 1);
            pf = pf * pivot.clone();
            for i in k + 2..n {
                // clear a[k][i] using row/col k+1, then a[k+1][i] using row/col k
                let f = at(&a, k, i) / pivot.clone();
                if !f.is_zero() {
                    for j in 0..n {
                        let t = at(&a, k + 1, j) * f.clone();
                        a[i * n + j] = at(&a, i, j) - t;
                    }
                    for r in 0..n {
                        let t = at(&a, r, k + 1) * f.clone();
                        a[r * n + i] = at(&a, r, i) - t;
                    }
                }
                let g = at(&a, k + 1, i) / -pivot.clone();
                if !g.is_zero() {
                    for j in 0..n {
                        let t = at(&a, k, j) * g.clone();
                        a[i * n + j] = at(&a, i, j) - t;
                    }
                    for r in 0..n {
                        let t = at(&a, r, k) * g.clone();
                        a[r * n + i] = at(&a, r, i) - t;
                    }
                }
            }
        }
        pf
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix { n: self.n, data: self.data.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = vec![Complex::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        let o = &mut out[i * n + j];
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Matrix { n, data: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gauss;
    use crate::GaussianRational;
    use num_rational::BigRational;

    type Q = BigRational;

    fn m(rows: &[&[(i64, i64)]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| gauss(a, b)).collect()).collect())
            .unwrap()
    }

    /// Pfaffian by expansion along the first row.
    fn pfaffian_expansion(a: &Matrix<Q>) -> GaussianRational {
        let n = a.dim();
        if n == 0 {
            return Complex::one();
        }
        let mut acc = Complex::zero();
        for j in 1..n {
            let keep: Vec<usize> = (1..n).filter(|&x| x != j).collect();
            let minor = Matrix::from_fn(keep.len(), |r, c| a.get(keep[r], keep[c]).clone());
            let term = a.get(0, j).clone() * pfaffian_expansion(&minor);
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[(2, 0), (1, 1)], &[(0, -1), (3, 0)]]);
        // 2·3 - (1+i)(-i) = 6 - (1 - i)
        assert_eq!(a.determinant(), gauss(5, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(Matrix::<Q>::zeros(3).inverse().is_err());
    }

    #[test]
    fn pfaffian_matches_expansion_and_determinant() {
        let a = m(&[
            &[(0, 0), (1, 0), (2, 1), (-3, 0), (0, 0), (1, 0)],
            &[(-1, 0), (0, 0), (0, 0), (4, 0), (0, 2), (0, 0)],
            &[(-2, -1), (0, 0), (0, 0), (5, 0), (1, 0), (0, 0)],
            &[(3, 0), (-4, 0), (-5, 0), (0, 0), (0, 0), (2, 0)],
            &[(0, 0), (0, -2), (-1, 0), (0, 0), (0, 0), (7, 0)],
            &[(-1, 0), (0, 0), (0, 0), (-2, 0), (-7, 0), (0, 0)],
        ]);
        let pf = a.pfaffian();
        assert_eq!(pf, pfaffian_expansion(&a));
        assert_eq!(pf.clone() * pf, a.determinant());
    }

    #[test]
    fn pfaffian_needs_pivot_swap() {
        let a = m(&[
            &[(0, 0), (0, 0), (1, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0), (1, 0)],
            &[(-1, 0), (0, 0), (0, 0), (0, 0)],
            &[(0, 0), (-1, 0), (0, 0), (0, 0)],
        ]);
        assert_eq!(a.pfaffian(), pfaffian_expansion(&a));
        assert_eq!(a.pfaffian(), gauss(-1, 0));
    }

    #[test]
    fn pauli_algebra() {
        let s1 = m(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        let s2 = m(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]);
        let s3 = m(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]);
        assert_eq!(s1.commutator(&s2), s3.scale(&gauss(0, 2)));
        assert!(s2.is_hermitian());
        assert_eq!((&s1 * &s1).as_scalar(), Some(gauss(1, 0)));
        assert_eq!(s1.trace_product(&s1), gauss(2, 0));
    }
}
