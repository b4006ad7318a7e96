use std::fmt;

use super::AlgebraError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = extended_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u64, b: u64, d: u64) -> u64 {
    ((a as u128 + b as u128) % d as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, d: u64) -> u64 {
    ((a as u128 + d as u128 - (b % d) as u128) % d as u128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, d: u64) -> u64 {
    ((a as u128 * b as u128) % d as u128) as u64
}

#[inline]
pub fn neg_mod(a: u64, d: u64) -> u64 {
    (d - a % d) % d
}

/// Reduce a signed integer into `[0, d)`.
#[inline]
pub fn reduce(a: i64, d: u64) -> u64 {
    a.rem_euclid(d as i64) as u64
}

/// Dense matrix with entries in `Z_d`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ZdMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ZdMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows of residues; entries are reduced mod `modulus`.
    pub fn from_rows(rows: &[Vec<u64>], cols: usize, modulus: u64) -> Result<Self, AlgebraError> {
        let mut m = Self::zeros(rows.len(), cols, modulus);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(AlgebraError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % modulus);
            }
        }
        Ok(m)
    }

    pub fn from_signed_rows(rows: &[Vec<i64>], cols: usize, modulus: u64) -> Result<Self, AlgebraError> {
        let unsigned: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| reduce(v, modulus)).collect())
            .collect();
        Self::from_rows(&unsigned, cols, modulus)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Add `v` to entry `(i, j)`, modulo `d`.
    #[inline]
    pub fn accumulate(&mut self, i: usize, j: usize, v: i64) {
        let cur = self.get(i, j);
        self.set(i, j, add_mod(cur, reduce(v, self.modulus), self.modulus));
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &ZdMatrix) -> Result<ZdMatrix, AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.cols != other.rows {
            return Err(AlgebraError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        let d = self.modulus;
        let mut out = ZdMatrix::zeros(self.rows, other.cols, d);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, add_mod(cur, mul_mod(a, b, d), d));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape {
                expected: self.cols,
                found: v.len(),
            });
        }
        let d = self.modulus;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &x)| add_mod(acc, mul_mod(a, x % d, d), d))
            })
            .collect())
    }

    /// `vᵀ·A`.
    pub fn vec_mul(&self, v: &[u64]) -> Result<Vec<u64>, AlgebraError> {
        self.transpose().mul_vec(v)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ZdMatrix) -> Result<ZdMatrix, AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.cols != other.cols {
            return Err(AlgebraError::Shape {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ZdMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        })
    }
}

impl fmt::Debug for ZdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZdMatrix({}x{}, mod {})", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_gcd() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        let (g, s, t) = extended_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(s * 240 + t * 46, 2);
        assert!(is_prime(2) && is_prime(3) && !is_prime(4) && !is_prime(1));
    }

    #[test]
    fn multiplication_reduces_mod_d() {
        let a = ZdMatrix::from_rows(&[vec![1, 2], vec![2, 2]], 2, 3).unwrap();
        let b = a.mul(&a).unwrap();
        assert_eq!(b.to_rows(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(a.mul_vec(&[1, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn mismatched_modulus_is_rejected() {
        let a = ZdMatrix::identity(2, 3);
        let b = ZdMatrix::identity(2, 5);
        assert!(matches!(a.mul(&b), Err(AlgebraError::ModulusMismatch(3, 5))));
    }
}
