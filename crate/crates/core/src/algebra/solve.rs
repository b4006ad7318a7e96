//! Solving `A·x = b` over `Z_d`.

use super::echelon::{howell_form, HowellForm};
use super::ring::ResidueRing;
use super::snf::smith_normal_form;
use super::zmod::{add_mod, is_prime, mod_inverse, mul_mod, sub_mod, ZdMatrix};
use super::AlgebraError;

/// The full solution set `{ x : A·x = b }` over `Z_d`.
///
/// Every solution is `particular + Σ c_i kernel[i]` with
/// `0 ≤ c_i < kernel_orders[i]`, and each such sum is a distinct solution.
/// When the system is inconsistent `particular` is `None` and `certificate`
/// holds a row vector `y` with `y·A = 0` and `y·b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub modulus: u64,
    pub particular: Option<Vec<u64>>,
    pub kernel: Vec<Vec<u64>>,
    pub kernel_orders: Vec<u64>,
    pub certificate: Option<Vec<u64>>,
}

impl AffineSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn variables(&self) -> usize {
        match (&self.particular, self.kernel.first()) {
            (Some(p), _) => p.len(),
            (None, Some(k)) => k.len(),
            (None, None) => 0,
        }
    }

    /// `log_d` of the number of solutions (0 for an empty set).
    pub fn log_size(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let d = (self.modulus as f64).ln();
        self.kernel_orders.iter().map(|&o| (o as f64).ln() / d).sum()
    }

    /// Number of solutions, if it fits.
    pub fn size(&self) -> Option<u128> {
        if self.is_empty() {
            return Some(0);
        }
        self.kernel_orders
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    /// True when every kernel generator has full order `d`, in which case
    /// `size = d^{kernel.len()}`.
    pub fn is_free(&self) -> bool {
        self.kernel_orders.iter().all(|&o| o == self.modulus)
    }

    /// The member with coefficients `coeffs` on the kernel generators.
    pub fn member(&self, coeffs: &[u64]) -> Option<Vec<u64>> {
        let d = self.modulus;
        let mut x = self.particular.clone()?;
        for (k, &c) in self.kernel.iter().zip(coeffs) {
            for (xi, &ki) in x.iter_mut().zip(k) {
                *xi = add_mod(*xi, mul_mod(c, ki, d), d);
            }
        }
        Some(x)
    }

    /// Every member, in order of the kernel coefficients. Intended for small
    /// sets only.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut coeffs = vec![0u64; self.kernel.len()];
        loop {
            out.push(self.member(&coeffs).expect("nonempty"));
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < self.kernel_orders[i] {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// Howell form of the kernel, for membership tests and coset search.
    pub fn kernel_form(&self) -> HowellForm {
        howell_form(&self.kernel, self.variables(), self.modulus)
    }

    /// Whether `x` solves the system this set was computed from.
    pub fn contains(&self, x: &[u64]) -> bool {
        let Some(p) = &self.particular else {
            return false;
        };
        let diff: Vec<u64> = x
            .iter()
            .zip(p)
            .map(|(&a, &b)| sub_mod(a, b, self.modulus))
            .collect();
        self.kernel_form().contains(&diff)
    }
}

/// Solve `A·x = b` over `Z_d`. Prime `d` uses elimination over the field;
/// composite `d` goes through the Smith form over `Z_d`.
pub fn solve_mod_d(a: &ZdMatrix, b: &[u64]) -> Result<AffineSolutionSet, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::Shape {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if is_prime(a.modulus()) {
        Ok(solve_prime(a, b))
    } else {
        Ok(solve_composite(a, b))
    }
}

fn solve_prime(a: &ZdMatrix, b: &[u64]) -> AffineSolutionSet {
    let p = a.modulus();
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.to_rows();
    // Row operations are mirrored on `t` so that t·A = r at all times.
    let mut t: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(src) = (row..m).find(|&i| r[i][col] != 0) else {
            continue;
        };
        r.swap(row, src);
        t.swap(row, src);
        let inv = mod_inverse(r[row][col], p).expect("nonzero element of a field");
        for v in r[row].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for v in t[row].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..m {
            let f = r[i][col];
            if i == row || f == 0 {
                continue;
            }
            let (pr, pt) = (r[row].clone(), t[row].clone());
            for (v, &w) in r[i].iter_mut().zip(&pr) {
                *v = sub_mod(*v, mul_mod(f, w, p), p);
            }
            for (v, &w) in t[i].iter_mut().zip(&pt) {
                *v = sub_mod(*v, mul_mod(f, w, p), p);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let rank = row;
    let tb: Vec<u64> = t
        .iter()
        .map(|ti| ti.iter().zip(b).fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y % p, p), p)))
        .collect();

    if let Some(i) = (rank..m).find(|&i| tb[i] != 0) {
        // t_i·A = 0 while t_i·b ≠ 0; scale so that y·b = 1.
        let inv = mod_inverse(tb[i], p).expect("nonzero");
        let y = t[i].iter().map(|&v| mul_mod(v, inv, p)).collect();
        return AffineSolutionSet {
            modulus: p,
            particular: None,
            kernel: Vec::new(),
            kernel_orders: Vec::new(),
            certificate: Some(y),
        };
    }

    let mut particular = vec![0u64; n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular[c] = tb[i];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel: Vec<Vec<u64>> = free
        .iter()
        .map(|&f| {
            let mut k = vec![0u64; n];
            k[f] = 1;
            for (i, &c) in pivot_cols.iter().enumerate() {
                k[c] = (p - r[i][f]) % p;
            }
            k
        })
        .collect();
    AffineSolutionSet {
        modulus: p,
        particular: Some(particular),
        kernel_orders: vec![p; kernel.len()],
        kernel,
        certificate: None,
    }
}

fn solve_composite(a: &ZdMatrix, b: &[u64]) -> AffineSolutionSet {
    let d = a.modulus();
    let (m, n) = (a.rows(), a.cols());
    let ring = ResidueRing::new(d);
    let snf = smith_normal_form(&ring, &a.to_rows(), n);
    let rank = snf.rank();
    let ub: Vec<u64> = snf
        .left
        .iter()
        .map(|u| u.iter().zip(b).fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y % d, d), d)))
        .collect();

    // D·y = U·b row by row; invariants are divisors of d.
    let mut y = vec![0u64; n];
    for i in 0..m {
        let g = if i < rank { snf.invariants[i] } else { d };
        if ub[i] % g != 0 {
            // (d/g)·U_i annihilates A but not b, since g ∤ (U·b)_i.
            let scale = d / g;
            let cert = snf.left[i].iter().map(|&v| mul_mod(v, scale, d)).collect();
            return AffineSolutionSet {
                modulus: d,
                particular: None,
                kernel: Vec::new(),
                kernel_orders: Vec::new(),
                certificate: Some(cert),
            };
        }
        if i < rank && i < n {
            y[i] = ub[i] / g;
        }
    }
    let column = |j: usize| -> Vec<u64> { snf.right.iter().map(|row| row[j]).collect() };
    let particular = snf
        .right
        .iter()
        .map(|row| row.iter().zip(&y).fold(0, |acc, (&v, &w)| add_mod(acc, mul_mod(v, w, d), d)))
        .collect();

    let mut kernel = Vec::new();
    let mut kernel_orders = Vec::new();
    for j in 0..n {
        let (step, order) = if j < rank {
            let g = snf.invariants[j];
            (d / g, g)
        } else {
            (1, d)
        };
        if order == 1 {
            continue;
        }
        kernel.push(column(j).iter().map(|&v| mul_mod(v, step, d)).collect());
        kernel_orders.push(order);
    }
    AffineSolutionSet {
        modulus: d,
        particular: Some(particular),
        kernel,
        kernel_orders,
        certificate: None,
    }
}
