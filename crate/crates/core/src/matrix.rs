//! Small dense complex matrices over a [`Scalar`] field.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Dense row-major square or rectangular complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

/// `e^{2πik/d}` in `T`, if exactly representable.
pub fn root_of_unity<T: Scalar>(k: u64, d: u64) -> Option<Complex<T>> {
    T::unit_root(k % d, d).map(|(c, s)| Complex::new(c, s))
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v[i].clone() * v[j].conj());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&Complex<T>) -> Complex<U>) -> CMatrix<U> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Some(out)
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        Some(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.add(&other.scale(&Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn scale_real(&self, s: &T) -> Self {
        self.scale(&Complex::new(s.clone(), T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Option<Complex<T>> {
        if self.cols != other.rows || self.rows != other.cols {
            return None;
        }
        let mut acc = Complex::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, i);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        Some(acc)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.clone() * other.get(k, l).clone());
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> Option<Self> {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Some(out)
    }

    /// Largest entrywise modulus of `self − other`, as `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let d = a.clone() - b.clone();
                (d.re.to_f64().powi(2) + d.im.to_f64().powi(2)).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Entrywise equality up to the scalar tolerance (exact for rationals).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| {
                let d = a.clone() - b.clone();
                d.re.is_negligible() && d.im.is_negligible()
            })
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && self.approx_eq(&self.adjoint())
    }

    pub fn to_f64(&self) -> CMatrix<f64> {
        self.map(|v| Complex::new(v.re.to_f64(), v.im.to_f64()))
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }
}

impl CMatrix<f64> {
    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| {
            let v = self.get(i, j);
            nalgebra::Complex::new(v.re, v.im)
        });
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        ev
    }
}

impl<T: Scalar> fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let v = self.get(i, j);
                    format!("{:.3}{:+.3}i", v.re.to_f64(), v.im.to_f64())
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn c(re: i64, im: i64) -> Complex<Rational> {
        Complex::new(rational(re, 1), rational(im, 1))
    }

    #[test]
    fn pauli_products_are_exact() {
        let x = CMatrix::from_rows(vec![vec![c(0, 0), c(1, 0)], vec![c(1, 0), c(0, 0)]]).unwrap();
        let z = CMatrix::from_rows(vec![vec![c(1, 0), c(0, 0)], vec![c(0, 0), c(-1, 0)]]).unwrap();
        let xz = x.mul(&z).unwrap();
        let zx = z.mul(&x).unwrap();
        assert_eq!(xz.add(&zx).unwrap(), CMatrix::zeros(2, 2));
        assert_eq!(x.mul(&x).unwrap(), CMatrix::identity(2));
        assert_eq!(x.kron(&z).trace(), c(0, 0));
        assert_eq!(x.trace_product(&x).unwrap(), c(2, 0));
        assert!(xz.scale(&c(0, 1)).is_hermitian());
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let y = CMatrix::<f64>::from_rows(vec![
            vec![Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)],
            vec![Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
        ])
        .unwrap();
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
