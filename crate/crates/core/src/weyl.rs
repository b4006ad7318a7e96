//! Generalised Pauli (Weyl) operators on `n` qudits of dimension `d`.
//!
//! A label `a = (z | x)` stands for the operator `Z^z X^x` up to a phase,
//! with `Z|j⟩ = ω^j|j⟩`, `X|j⟩ = |j+1⟩` and `ω = e^{2πi/d}`. Qudit 1 is the
//! most significant tensor factor.
//!
//! The canonical representative `B(a)` is
//! * `d = 2`: `(−i)^{z·x} Z^z X^x`, the usual Hermitian Pauli string
//!   (`Y = iXZ`);
//! * odd `d`: `ω^{−2⁻¹ z·x} Z^z X^x`.
//!
//! A [`PhaseConvention`] multiplies each representative by `ω^{γ(a)}`.
//! Even `d > 2` has no representative with spectrum in the `d`-th roots for
//! every label and is rejected; such scenarios use the abstract backend.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::zmod::{add_mod, mod_inverse, mul_mod, neg_mod, sub_mod};
use crate::matrix::{root_of_unity, CMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeylError {
    #[error("labels act on {0} and {1} qudits")]
    DimensionMismatch(usize, usize),
    #[error("{0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("{0} + {1} is the identity")]
    IdentitySum(String, String),
    #[error("phase ratio is not a {d}-th root of unity (distance {distance:e})")]
    NotRootOfUnity { d: u64, distance: f64 },
    #[error("matrix phase {matrix} disagrees with algebraic phase {algebraic} for {a}·{b}")]
    OracleMismatch {
        a: String,
        b: String,
        matrix: u64,
        algebraic: u64,
    },
    #[error("dimension d = {0} is not supported by the Weyl backend (use d = 2 or odd d)")]
    UnsupportedModulus(u64),
    #[error("{0}-th roots of unity are not exact in this scalar type")]
    InexactScalar(u64),
    #[error("cannot parse label {0:?}: {1}")]
    Parse(String, String),
    #[error("the identity is not an admissible label")]
    IdentityLabel,
    #[error("duplicate label {0}")]
    Duplicate(String),
    #[error("[β] ≠ 0: no phase convention makes β vanish")]
    NotExact,
}

/// Symplectic vector `(z | x)` over `Z_d^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label {
    z: Vec<u64>,
    x: Vec<u64>,
}

impl Label {
    pub fn new(z: Vec<u64>, x: Vec<u64>, d: u64) -> Result<Self, WeylError> {
        if z.len() != x.len() {
            return Err(WeylError::DimensionMismatch(z.len(), x.len()));
        }
        Ok(Self {
            z: z.into_iter().map(|v| v % d).collect(),
            x: x.into_iter().map(|v| v % d).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            z: vec![0; n],
            x: vec![0; n],
        }
    }

    pub fn z(&self) -> &[u64] {
        &self.z
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn qudits(&self) -> usize {
        self.z.len()
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&v| v == 0)
    }

    pub fn add(&self, other: &Label, d: u64) -> Label {
        Label {
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| add_mod(a, b, d)).collect(),
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| add_mod(a, b, d)).collect(),
        }
    }

    pub fn sub(&self, other: &Label, d: u64) -> Label {
        Label {
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| sub_mod(a, b, d)).collect(),
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| sub_mod(a, b, d)).collect(),
        }
    }

    pub fn scale(&self, k: u64, d: u64) -> Label {
        Label {
            z: self.z.iter().map(|&a| mul_mod(a, k, d)).collect(),
            x: self.x.iter().map(|&a| mul_mod(a, k, d)).collect(),
        }
    }

    /// `z·x`, the exponent entering the canonical phase.
    fn zx(&self, d: u64) -> u64 {
        self.z
            .iter()
            .zip(&self.x)
            .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, d), d))
    }

    /// Parse `"X1*Y2*Y3"`, `"X1Y2Y3"`, `"Z1^2*X3"` or `"I"`.
    pub fn parse(text: &str, n: usize, d: u64) -> Result<Label, WeylError> {
        let err = |msg: &str| WeylError::Parse(text.to_string(), msg.to_string());
        let mut z = vec![0u64; n];
        let mut x = vec![0u64; n];
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty label"));
        }
        if s == ['I'] {
            return Ok(Label { z, x });
        }
        let mut i = 0;
        while i < s.len() {
            if s[i] == '*' {
                i += 1;
                continue;
            }
            let kind = s[i];
            if !matches!(kind, 'X' | 'Y' | 'Z' | 'I') {
                return Err(err("expected X, Y, Z or I"));
            }
            i += 1;
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err("missing qudit index"));
            }
            let site: usize = s[start..i].iter().collect::<String>().parse().map_err(|_| err("bad index"))?;
            if site == 0 || site > n {
                return Err(err("qudit index out of range"));
            }
            let mut power = 1u64;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                power = s[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("bad exponent"))?;
            }
            let j = site - 1;
            let p = power % d;
            match kind {
                'X' => x[j] = add_mod(x[j], p, d),
                'Z' => z[j] = add_mod(z[j], p, d),
                'Y' => {
                    x[j] = add_mod(x[j], p, d);
                    z[j] = add_mod(z[j], p, d);
                }
                _ => {}
            }
        }
        Ok(Label { z, x })
    }

    /// Pauli-string form such as `X1*Y2*Y3`.
    pub fn to_pauli_string(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        let pow = |k: u64| if k == 1 { String::new() } else { format!("^{k}") };
        let mut parts = Vec::new();
        for j in 0..self.qudits() {
            let (z, x) = (self.z[j], self.x[j]);
            let site = j + 1;
            match (z, x) {
                (0, 0) => {}
                (0, x) => parts.push(format!("X{site}{}", pow(x))),
                (z, 0) => parts.push(format!("Z{site}{}", pow(z))),
                (z, x) if z == x => parts.push(format!("Y{site}{}", pow(z))),
                (z, x) => {
                    parts.push(format!("Z{site}{}", pow(z)));
                    parts.push(format!("X{site}{}", pow(x)));
                }
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pauli_string())
    }
}

/// `⟨a, b⟩ = a_z·b_x − a_x·b_z mod d`.
pub fn symplectic_form(a: &Label, b: &Label, d: u64) -> Result<u64, WeylError> {
    if a.qudits() != b.qudits() {
        return Err(WeylError::DimensionMismatch(a.qudits(), b.qudits()));
    }
    let mut s = 0;
    for j in 0..a.qudits() {
        s = add_mod(s, mul_mod(a.z[j], b.x[j], d), d);
        s = sub_mod(s, mul_mod(a.x[j], b.z[j], d), d);
    }
    Ok(s)
}

pub fn commutes(a: &Label, b: &Label, d: u64) -> Result<bool, WeylError> {
    Ok(symplectic_form(a, b, d)? == 0)
}

fn check_modulus(d: u64) -> Result<(), WeylError> {
    if d == 2 || (d >= 3 && d % 2 == 1) {
        Ok(())
    } else {
        Err(WeylError::UnsupportedModulus(d))
    }
}

/// Ordered list of distinct non-identity labels: the set `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    d: u64,
    n: usize,
    labels: Vec<Label>,
    index: BTreeMap<Label, usize>,
}

impl LabelSet {
    pub fn new(d: u64, n: usize, labels: Vec<Label>) -> Result<Self, WeylError> {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.qudits() != n {
                return Err(WeylError::DimensionMismatch(n, l.qudits()));
            }
            if l.is_identity() {
                return Err(WeylError::IdentityLabel);
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(WeylError::Duplicate(l.to_string()));
            }
        }
        Ok(Self { d, n, labels, index })
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index.contains_key(l)
    }

    /// Append `l` if new; returns its index.
    pub fn insert(&mut self, l: Label) -> Result<usize, WeylError> {
        if l.is_identity() {
            return Err(WeylError::IdentityLabel);
        }
        if let Some(i) = self.position(&l) {
            return Ok(i);
        }
        self.index.insert(l.clone(), self.labels.len());
        self.labels.push(l);
        Ok(self.labels.len() - 1)
    }
}

/// Phase choice `η(a) = ω^{γ(a)} B(a)`; unspecified labels have `γ = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseConvention {
    gamma: BTreeMap<Label, u64>,
}

impl PhaseConvention {
    /// The convention with `γ ≡ 0`.
    pub fn natural() -> Self {
        Self::default()
    }

    pub fn from_gamma(gamma: BTreeMap<Label, u64>) -> Self {
        Self { gamma }
    }

    pub fn gamma(&self, a: &Label) -> u64 {
        self.gamma.get(a).copied().unwrap_or(0)
    }

    pub fn set_gamma(&mut self, a: Label, k: u64) {
        self.gamma.insert(a, k);
    }

    /// Shift `γ` by `−s` on the labels of `set`.
    pub fn shifted(&self, set: &LabelSet, s: &[u64]) -> Self {
        let d = set.modulus();
        let mut out = self.clone();
        for (l, &v) in set.labels().iter().zip(s) {
            let g = sub_mod(out.gamma(l), v, d);
            out.gamma.insert(l.clone(), g);
        }
        out.gamma.retain(|_, v| *v != 0);
        out
    }

    pub fn gamma_table(&self) -> &BTreeMap<Label, u64> {
        &self.gamma
    }

    /// Explicit `d^n × d^n` matrix of `η(a)`.
    pub fn matrix<T: Scalar>(&self, a: &Label, d: u64) -> Result<CMatrix<T>, WeylError> {
        let base = weyl_base_matrix::<T>(a, d)?;
        let phase = root_of_unity::<T>(self.gamma(a), d).ok_or(WeylError::InexactScalar(d))?;
        Ok(base.scale(&phase))
    }
}

/// The canonical representative `B(a)`.
pub fn weyl_base_matrix<T: Scalar>(a: &Label, d: u64) -> Result<CMatrix<T>, WeylError> {
    check_modulus(d)?;
    let n = a.qudits();
    let dim = (d as usize).pow(n as u32);
    // Phase exponents are tracked in units of e^{2πi/(2d)} to include (−i).
    let two_d = 2 * d;
    let global = if d == 2 {
        // (−i)^{z·x} = e^{2πi·3(z·x)/4}
        mul_mod(3, a.z.iter().zip(&a.x).map(|(&z, &x)| z * x).sum::<u64>() % 4, 4)
    } else {
        let half = mod_inverse(2, d).expect("d odd");
        // ω^{−2⁻¹ z·x} = e^{2πi·2(−2⁻¹ z·x mod d)/(2d)}
        2 * neg_mod(mul_mod(half, a.zx(d), d), d)
    };
    let mut m = CMatrix::zeros(dim, dim);
    let mut cache: BTreeMap<u64, Complex<T>> = BTreeMap::new();
    for col in 0..dim {
        let digits = to_digits(col, n, d);
        // Z^z X^x |j⟩ = ω^{z·(j+x)} |j+x⟩
        let shifted: Vec<u64> = digits.iter().zip(&a.x).map(|(&j, &x)| add_mod(j, x, d)).collect();
        let zphase = shifted
            .iter()
            .zip(&a.z)
            .fold(0, |acc, (&j, &z)| add_mod(acc, mul_mod(j, z, d), d));
        let k = add_mod(global, 2 * zphase, two_d);
        let v = match cache.get(&k) {
            Some(v) => v.clone(),
            None => {
                let v = root_of_unity::<T>(k, two_d).ok_or(WeylError::InexactScalar(d))?;
                cache.insert(k, v.clone());
                v
            }
        };
        m.set(from_digits(&shifted, d), col, v);
    }
    Ok(m)
}

/// Basis index → digits, most significant first.
pub fn to_digits(mut index: usize, n: usize, d: u64) -> Vec<u64> {
    let mut out = vec![0; n];
    for j in (0..n).rev() {
        out[j] = (index % d as usize) as u64;
        index /= d as usize;
    }
    out
}

pub fn from_digits(digits: &[u64], d: u64) -> usize {
    digits.iter().fold(0, |acc, &v| acc * d as usize + v as usize)
}

/// `κ(a, b)` with `B(a)·B(b) = ω^κ B(a+b)`, for commuting `a`, `b`.
fn base_cocycle(a: &Label, b: &Label, d: u64) -> u64 {
    if d == 2 {
        // B(a)B(b) = (−i)^f B(a+b), f = Σ a_z a_x + b_z b_x + 2 a_x b_z − c_z c_x;
        // f is even for commuting pairs and (−i)^f = (−1)^{f/2}.
        let mut f: i64 = 0;
        for j in 0..a.qudits() {
            let (az, ax, bz, bx) = (a.z[j] as i64, a.x[j] as i64, b.z[j] as i64, b.x[j] as i64);
            let (cz, cx) = ((az + bz) % 2, (ax + bx) % 2);
            f += az * ax + bz * bx + 2 * ax * bz - cz * cx;
        }
        debug_assert_eq!(f.rem_euclid(2), 0);
        ((f / 2).rem_euclid(2)) as u64
    } else {
        // W(a)W(b) = ω^{2⁻¹⟨a,b⟩} W(a+b), and ⟨a,b⟩ = 0 here.
        let half = mod_inverse(2, d).expect("d odd");
        mul_mod(half, symplectic_form(a, b, d).unwrap_or(0), d)
    }
}

/// `β(a, b)` from the symplectic data and `γ`: the exponent with
/// `η(a+b) = ω^β η(a)η(b)`.
pub fn beta_fast(a: &Label, b: &Label, eta: &PhaseConvention, d: u64) -> Result<u64, WeylError> {
    check_modulus(d)?;
    if !commutes(a, b, d)? {
        return Err(WeylError::NonCommuting(a.to_string(), b.to_string()));
    }
    let c = a.add(b, d);
    if c.is_identity() {
        return Err(WeylError::IdentitySum(a.to_string(), b.to_string()));
    }
    // η(c) = ω^{γ(c)} B(c) = ω^{γ(c) − κ} B(a)B(b) = ω^{γ(c) − κ − γ(a) − γ(b)} η(a)η(b)
    let k = sub_mod(eta.gamma(&c), base_cocycle(a, b, d), d);
    Ok(sub_mod(sub_mod(k, eta.gamma(a), d), eta.gamma(b), d))
}

/// `β(a, b)` by multiplying the explicit matrices and reading off the scalar
/// ratio; cross-checked against [`beta_fast`].
pub fn beta(a: &Label, b: &Label, eta: &PhaseConvention, d: u64) -> Result<u64, WeylError> {
    let fast = beta_fast(a, b, eta, d)?;
    let matrix = beta_matrix(a, b, eta, d)?;
    if matrix != fast {
        return Err(WeylError::OracleMismatch {
            a: a.to_string(),
            b: b.to_string(),
            matrix,
            algebraic: fast,
        });
    }
    Ok(fast)
}

/// Matrix oracle for `β`: find `k` with `η(a+b) = ω^k η(a)η(b)`.
pub fn beta_matrix(a: &Label, b: &Label, eta: &PhaseConvention, d: u64) -> Result<u64, WeylError> {
    let c = a.add(b, d);
    let ea = eta.matrix::<f64>(a, d)?;
    let eb = eta.matrix::<f64>(b, d)?;
    let ec = eta.matrix::<f64>(&c, d)?;
    let prod = ea.mul(&eb).expect("square matrices of equal size");
    // Ratio at the largest entry of the product.
    let (idx, _) = prod
        .entries()
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.norm()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let ratio = ec.entries()[idx] / prod.entries()[idx];
    let mut best = (0u64, f64::INFINITY);
    for k in 0..d {
        let w = root_of_unity::<f64>(k, d).expect("float roots");
        let dist = (ratio - w).norm();
        if dist < best.1 {
            best = (k, dist);
        }
    }
    let (k, dist) = best;
    let w = root_of_unity::<f64>(k, d).expect("float roots");
    let residual = ec.max_abs_diff(&prod.scale(&w));
    let distance = dist.max(residual);
    if distance > 1e-9 {
        return Err(WeylError::NotRootOfUnity { d, distance });
    }
    Ok(k)
}

/// A convention `η_0` under which `β` vanishes on every face of `complex`.
///
/// Solves `ds = −β` and sets `γ_0 = γ − s`, so that `β_0 = β + ds = 0`.
/// Returns the shift `s` (indexed like `set`) along with `η_0`.
pub fn regauge_to_eta0(
    set: &LabelSet,
    eta: &PhaseConvention,
    complex: &crate::complex::ChainComplex,
) -> Result<(PhaseConvention, Vec<u64>), WeylError> {
    let d = set.modulus();
    let system = complex.boundary2().transpose();
    let rhs: Vec<u64> = complex.beta().values.iter().map(|&v| neg_mod(v, d)).collect();
    let sol = crate::algebra::solve_mod_d(&system, &rhs).map_err(|_| WeylError::NotExact)?;
    let s = sol.particular.ok_or(WeylError::NotExact)?;
    Ok((eta.shifted(set, &s), s))
}

/// `P_{a,k} = (1/d) Σ_m ω^{−km} η(a)^m`.
pub fn eigenprojector<T: Scalar>(a: &Label, k: u64, eta: &PhaseConvention, d: u64) -> Result<CMatrix<T>, WeylError> {
    let t = eta.matrix::<T>(a, d)?;
    let dim = t.rows();
    let mut acc = CMatrix::<T>::zeros(dim, dim);
    let mut power = CMatrix::<T>::identity(dim);
    for m in 0..d {
        let w = root_of_unity::<T>(neg_mod(mul_mod(k, m, d), d), d).ok_or(WeylError::InexactScalar(d))?;
        acc = acc.add(&power.scale(&w)).expect("same shape");
        power = power.mul(&t).expect("same shape");
    }
    let inv_d = T::from_ratio(1, d as i64);
    Ok(acc.scale_real(&inv_d))
}

/// Eigenvalue exponent `k` of `η(a)` on a state vector, if it is an
/// eigenvector.
pub fn eigen_exponent(a: &Label, eta: &PhaseConvention, d: u64, psi: &[Complex<f64>]) -> Result<Option<u64>, WeylError> {
    let t = eta.matrix::<f64>(a, d)?;
    let mut tpsi = vec![Complex::zero(); psi.len()];
    for (i, out) in tpsi.iter_mut().enumerate() {
        for (j, v) in psi.iter().enumerate() {
            *out += t.get(i, j) * v;
        }
    }
    for k in 0..d {
        let w = root_of_unity::<f64>(k, d).expect("float roots");
        if tpsi.iter().zip(psi).all(|(u, v): (&Complex<f64>, &Complex<f64>)| (u - w * v).norm() < 1e-9) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Identity matrix on `n` qudits.
pub fn identity_matrix<T: Scalar>(n: usize, d: u64) -> CMatrix<T> {
    CMatrix::identity((d as usize).pow(n as u32))
}

/// Whether `M` equals `ω^k · I` for some `k`; returns that `k`.
pub fn scalar_phase<T: Scalar>(m: &CMatrix<T>, d: u64) -> Option<u64> {
    let one = CMatrix::<T>::identity(m.rows());
    (0..d).find(|&k| {
        root_of_unity::<T>(k, d).map_or(false, |w| m.approx_eq(&one.scale(&w)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::One;

    fn l(s: &str) -> Label {
        Label::parse(s, 3, 2).unwrap()
    }

    #[test]
    fn parsing_and_display_round_trip() {
        for s in ["X1*Y2*Y3", "Z1", "Y1*X3", "Z2*Z3"] {
            assert_eq!(l(s).to_string(), s);
        }
        assert_eq!(l("X1Y2Y3"), l("X1*Y2*Y3"));
        assert_eq!(l("X1*Z1"), l("Y1"));
        let q = Label::parse("Z1^2*X1", 1, 3).unwrap();
        assert_eq!(q.to_string(), "Z1^2*X1");
        assert!(Label::parse("Q1", 3, 2).is_err());
        assert!(Label::parse("X4", 3, 2).is_err());
    }

    #[test]
    fn commutation_examples() {
        let x1 = Label::parse("X1", 2, 2).unwrap();
        let x2 = Label::parse("X2", 2, 2).unwrap();
        let z1 = Label::parse("Z1", 2, 2).unwrap();
        assert!(commutes(&x1, &x2, 2).unwrap());
        assert!(!commutes(&x1, &z1, 2).unwrap());
        assert!(commutes(&l("X1X2X3"), &l("X1Y2Y3"), 2).unwrap());
        assert!(commutes(&x1, &l("X1"), 2).is_err());
    }

    #[test]
    fn qubit_base_is_the_hermitian_pauli_string() {
        let y = weyl_base_matrix::<Rational>(&Label::parse("Y1", 1, 2).unwrap(), 2).unwrap();
        let i = |re: i64, im: i64| Complex::new(crate::scalar::rational(re, 1), crate::scalar::rational(im, 1));
        let expected = CMatrix::from_rows(vec![vec![i(0, 0), i(0, -1)], vec![i(0, 1), i(0, 0)]]).unwrap();
        assert_eq!(y, expected);
        for s in ["X1*Y2*Y3", "Y1*Y2*X3", "Z1*Y3"] {
            let m = weyl_base_matrix::<Rational>(&l(s), 2).unwrap();
            assert!(m.is_hermitian());
            assert_eq!(m.mul(&m).unwrap(), CMatrix::identity(8));
        }
    }

    #[test]
    fn beta_examples() {
        let eta = PhaseConvention::natural();
        assert_eq!(beta(&l("X1"), &l("X2"), &eta, 2).unwrap(), 0);
        // (X⊗X⊗X)(X⊗Y⊗Y) = I⊗(iZ)⊗(iZ) = −Z2Z3
        assert_eq!(beta(&l("X1X2X3"), &l("X1Y2Y3"), &eta, 2).unwrap(), 1);
        assert_eq!(beta(&l("Y1X2Y3"), &l("Y1Y2X3"), &eta, 2).unwrap(), 0);
        assert!(matches!(
            beta(&l("X1"), &l("Z1"), &eta, 2),
            Err(WeylError::NonCommuting(..))
        ));
    }

    #[test]
    fn star_context_product_is_minus_identity() {
        let eta = PhaseConvention::natural();
        let mut prod = identity_matrix::<Rational>(3, 2);
        for s in ["X1X2X3", "X1Y2Y3", "Y1X2Y3", "Y1Y2X3"] {
            prod = prod.mul(&eta.matrix(&l(s), 2).unwrap()).unwrap();
        }
        assert_eq!(scalar_phase(&prod, 2), Some(1));
    }

    #[test]
    fn qutrit_beta_agrees_with_matrices() {
        let d = 3;
        let mut eta = PhaseConvention::natural();
        let a = Label::new(vec![1, 0], vec![1, 2], d).unwrap();
        let b = Label::new(vec![1, 0], vec![1, 0], d).unwrap();
        assert!(commutes(&a, &b, d).unwrap());
        eta.set_gamma(a.clone(), 2);
        eta.set_gamma(a.add(&b, d), 1);
        assert_eq!(beta_fast(&a, &b, &eta, d).unwrap(), beta_matrix(&a, &b, &eta, d).unwrap());
    }

    #[test]
    fn projectors_resolve_the_identity() {
        let eta = PhaseConvention::natural();
        let z1 = l("Z1");
        let p0 = eigenprojector::<Rational>(&z1, 0, &eta, 2).unwrap();
        let expected = weyl_base_matrix::<Rational>(&Label::identity(1), 2)
            .unwrap();
        let ket0 = CMatrix::from_rows(vec![
            vec![Complex::one(), Complex::zero()],
            vec![Complex::zero(), Complex::zero()],
        ])
        .unwrap();
        assert_eq!(p0, ket0.kron(&expected).kron(&expected));
        let a = l("X1X2X3");
        let q0 = eigenprojector::<Rational>(&a, 0, &eta, 2).unwrap();
        let q1 = eigenprojector::<Rational>(&a, 1, &eta, 2).unwrap();
        assert_eq!(q0.trace(), Complex::new(crate::scalar::rational(4, 1), Rational::zero()));
        assert_eq!(q0.add(&q1).unwrap(), CMatrix::identity(8));
        assert_eq!(q0.mul(&q1).unwrap(), CMatrix::zeros(8, 8));
        assert!(even_d_rejected());
    }

    fn even_d_rejected() -> bool {
        let a = Label::new(vec![1], vec![0], 4).unwrap();
        matches!(weyl_base_matrix::<f64>(&a, 4), Err(WeylError::UnsupportedModulus(4)))
    }
}
