//! Dense density matrices, expectation values and empirical models.

use num_complex::Complex;
use num_traits::One;
use thiserror::Error;

use crate::matrix::CMatrix;
use crate::scalar::Scalar;
use crate::weyl::{commutes, eigenprojector, from_digits, to_digits, LabelSet, PhaseConvention, WeylError};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;
/// Largest context handled by the dense joint-outcome tables.
pub const MAX_CONTEXT: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("expected a {expected}×{expected} matrix, found {rows}×{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, not 1")]
    Trace(f64),
    #[error("matrix has a negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("the GHZ fixture needs d = 2 and n ≥ 2 (got d = {d}, n = {n})")]
    Ghz { d: u64, n: usize },
    #[error("context {0} has {1} measurements; at most {MAX_CONTEXT} are supported")]
    ContextTooLarge(usize, usize),
    #[error("context {ctx}: table has {found} entries, expected {expected}")]
    TableShape { ctx: usize, expected: usize, found: usize },
    #[error("context {ctx}: entry {outcome} is negative")]
    Negative { ctx: usize, outcome: usize },
    #[error("context {ctx}: probabilities sum to {sum}")]
    Normalisation { ctx: usize, sum: f64 },
    #[error("contexts {0} and {1} disagree on the marginal of {2}")]
    Disturbance(usize, usize, String),
    #[error("unknown measurement index {0}")]
    UnknownMeasurement(usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

fn close<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>, tol: f64) -> bool {
    if T::EXACT {
        a.approx_eq(b)
    } else {
        a.max_abs_diff(b) <= tol
    }
}

fn near<T: Scalar>(a: &T, b: &T, tol: f64) -> bool {
    if T::EXACT {
        a == b
    } else {
        (a.to_f64() - b.to_f64()).abs() <= tol
    }
}

/// A validated density matrix on `n` qudits of dimension `d`.
#[derive(Clone)]
pub struct DensityState<T> {
    matrix: CMatrix<T>,
    d: u64,
    n: usize,
}

impl<T: Scalar> DensityState<T> {
    pub fn new(matrix: CMatrix<T>, d: u64, n: usize) -> Result<Self, QuantumError> {
        let dim = (d as usize).pow(n as u32);
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(QuantumError::Shape {
                expected: dim,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !close(&matrix, &matrix.adjoint(), HERMITIAN_TOL) {
            return Err(QuantumError::NotHermitian(matrix.max_abs_diff(&matrix.adjoint())));
        }
        let tr = matrix.trace();
        if !near(&tr.re, &T::one(), TRACE_TOL) || !near(&tr.im, &T::zero(), TRACE_TOL) {
            return Err(QuantumError::Trace(tr.re.to_f64()));
        }
        if let Some(&lowest) = matrix.to_f64().hermitian_eigenvalues().first() {
            if lowest < PSD_TOL {
                return Err(QuantumError::NotPositive(lowest));
            }
        }
        Ok(Self { matrix, d, n })
    }

    /// `|ψ⟩⟨ψ|`; `ψ` must already be normalised.
    pub fn from_vector(psi: &[Complex<T>], d: u64, n: usize) -> Result<Self, QuantumError> {
        Self::new(CMatrix::outer(psi), d, n)
    }

    pub fn maximally_mixed(d: u64, n: usize) -> Self {
        let dim = (d as usize).pow(n as u32);
        let w = T::from_ratio(1, dim as i64);
        Self {
            matrix: CMatrix::identity(dim).scale_real(&w),
            d,
            n,
        }
    }

    /// `|0…0⟩⟨0…0|`.
    pub fn all_zero(d: u64, n: usize) -> Self {
        let dim = (d as usize).pow(n as u32);
        let mut m = CMatrix::zeros(dim, dim);
        m.set(0, 0, Complex::one());
        Self { matrix: m, d, n }
    }

    /// `λ·self + (1 − λ)·other`.
    pub fn mix(&self, other: &Self, lambda: &T) -> Result<Self, QuantumError> {
        let a = self.matrix.scale_real(lambda);
        let b = other.matrix.scale_real(&(T::one() - lambda.clone()));
        let m = a.add(&b).ok_or(QuantumError::Shape {
            expected: self.matrix.rows(),
            rows: other.matrix.rows(),
            cols: other.matrix.cols(),
        })?;
        Self::new(m, self.d, self.n)
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

impl<T: Scalar> std::fmt::Debug for DensityState<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensityState(d = {}, n = {}) {:?}", self.d, self.n, self.matrix)
    }
}

/// `(|0…0⟩ + |1…1⟩)/√2` as a density matrix; exact, since every entry is
/// `0` or `1/2`.
pub fn ghz_state<T: Scalar>(n: usize, d: u64) -> Result<DensityState<T>, QuantumError> {
    if d != 2 || n < 2 {
        return Err(QuantumError::Ghz { d, n });
    }
    let dim = 1usize << n;
    let half = Complex::new(T::from_ratio(1, 2), T::zero());
    let mut m = CMatrix::zeros(dim, dim);
    for &i in &[0, dim - 1] {
        for &j in &[0, dim - 1] {
            m.set(i, j, half.clone());
        }
    }
    DensityState::new(m, d, n)
}

/// `tr(M ρ)`.
pub fn expectation<T: Scalar>(rho: &DensityState<T>, m: &CMatrix<T>) -> Result<Complex<T>, QuantumError> {
    m.trace_product(&rho.matrix).ok_or(QuantumError::Shape {
        expected: rho.dim(),
        rows: m.rows(),
        cols: m.cols(),
    })
}

/// Outcome distributions for jointly measured contexts.
///
/// Tables are dense over `Z_d^{|M|}`, indexed by the outcome digits with the
/// first measurement of the context most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalModel<T> {
    modulus: u64,
    measurements: Vec<String>,
    contexts: Vec<Vec<usize>>,
    tables: Vec<Vec<T>>,
}

impl<T: Scalar> EmpiricalModel<T> {
    pub fn new(
        modulus: u64,
        measurements: Vec<String>,
        contexts: Vec<Vec<usize>>,
        tables: Vec<Vec<T>>,
    ) -> Result<Self, QuantumError> {
        for (ci, (ctx, table)) in contexts.iter().zip(&tables).enumerate() {
            if ctx.len() > MAX_CONTEXT {
                return Err(QuantumError::ContextTooLarge(ci, ctx.len()));
            }
            if let Some(&m) = ctx.iter().find(|&&m| m >= measurements.len()) {
                return Err(QuantumError::UnknownMeasurement(m));
            }
            let expected = (modulus as usize).pow(ctx.len() as u32);
            if table.len() != expected {
                return Err(QuantumError::TableShape {
                    ctx: ci,
                    expected,
                    found: table.len(),
                });
            }
            if let Some(o) = table.iter().position(|p| p.is_strictly_negative()) {
                return Err(QuantumError::Negative { ctx: ci, outcome: o });
            }
            let sum = table.iter().fold(T::zero(), |acc, p| acc + p.clone());
            if !near(&sum, &T::one(), TRACE_TOL) {
                return Err(QuantumError::Normalisation { ctx: ci, sum: sum.to_f64() });
            }
        }
        if contexts.len() != tables.len() {
            return Err(QuantumError::TableShape {
                ctx: contexts.len().min(tables.len()),
                expected: contexts.len(),
                found: tables.len(),
            });
        }
        Ok(Self {
            modulus,
            measurements,
            contexts,
            tables,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn measurements(&self) -> &[String] {
        &self.measurements
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn tables(&self) -> &[Vec<T>] {
        &self.tables
    }

    pub fn table(&self, ctx: usize) -> &[T] {
        &self.tables[ctx]
    }

    /// Probability of the joint outcome `outcome` (one digit per
    /// measurement of the context).
    pub fn probability(&self, ctx: usize, outcome: &[u64]) -> &T {
        &self.tables[ctx][from_digits(outcome, self.modulus)]
    }

    /// Marginal of context `ctx` on the measurements `keep` (global indices,
    /// which must all belong to the context), in the order given.
    pub fn marginal(&self, ctx: usize, keep: &[usize]) -> Result<Vec<T>, QuantumError> {
        let members = &self.contexts[ctx];
        let pos: Vec<usize> = keep
            .iter()
            .map(|m| members.iter().position(|x| x == m).ok_or(QuantumError::UnknownMeasurement(*m)))
            .collect::<Result<_, _>>()?;
        let d = self.modulus;
        let mut out = vec![T::zero(); (d as usize).pow(keep.len() as u32)];
        for (i, p) in self.tables[ctx].iter().enumerate() {
            let digits = to_digits(i, members.len(), d);
            let sub: Vec<u64> = pos.iter().map(|&j| digits[j]).collect();
            let k = from_digits(&sub, d);
            out[k] = out[k].clone() + p.clone();
        }
        Ok(out)
    }

    /// Every pair of contexts agrees on the marginal of its shared
    /// measurements.
    pub fn check_no_disturbance(&self) -> Result<(), QuantumError> {
        for i in 0..self.contexts.len() {
            for j in i + 1..self.contexts.len() {
                let shared: Vec<usize> = self.contexts[i]
                    .iter()
                    .copied()
                    .filter(|m| self.contexts[j].contains(m))
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let a = self.marginal(i, &shared)?;
                let b = self.marginal(j, &shared)?;
                if a.iter().zip(&b).any(|(x, y)| !near(x, y, TRACE_TOL)) {
                    let names: Vec<&str> = shared.iter().map(|&m| self.measurements[m].as_str()).collect();
                    return Err(QuantumError::Disturbance(i, j, names.join(",")));
                }
            }
        }
        Ok(())
    }

    /// `λ·self + (1 − λ)·other` over the same cover.
    pub fn mix(&self, other: &Self, lambda: &T) -> Result<Self, QuantumError> {
        let mu = T::one() - lambda.clone();
        let tables = self
            .tables
            .iter()
            .zip(&other.tables)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| lambda.clone() * x.clone() + mu.clone() * y.clone()).collect())
            .collect();
        Self::new(self.modulus, self.measurements.clone(), self.contexts.clone(), tables)
    }

    pub fn to_f64(&self) -> EmpiricalModel<f64> {
        EmpiricalModel {
            modulus: self.modulus,
            measurements: self.measurements.clone(),
            contexts: self.contexts.clone(),
            tables: self.tables.iter().map(|t| t.iter().map(Scalar::to_f64).collect()).collect(),
        }
    }
}

/// The model of `ρ` measured in `contexts` (lists of indices into `set`).
///
/// Measurements are the labels that occur in some context, in order of
/// first appearance; `e_M(o) = tr(ρ Π_{a∈M} P_{a,o_a})`.
pub fn empirical_model<T: Scalar>(
    rho: &DensityState<T>,
    set: &LabelSet,
    contexts: &[Vec<usize>],
    eta: &PhaseConvention,
) -> Result<EmpiricalModel<T>, QuantumError> {
    let d = set.modulus();
    let mut measurements: Vec<usize> = Vec::new();
    for ctx in contexts {
        for &a in ctx {
            if a >= set.len() {
                return Err(QuantumError::UnknownMeasurement(a));
            }
            if !measurements.contains(&a) {
                measurements.push(a);
            }
        }
    }
    let mut projectors: Vec<Vec<CMatrix<T>>> = Vec::with_capacity(measurements.len());
    for &a in &measurements {
        let row = (0..d)
            .map(|k| eigenprojector::<T>(set.get(a), k, eta, d))
            .collect::<Result<Vec<_>, _>>()?;
        projectors.push(row);
    }
    let mut local_contexts = Vec::with_capacity(contexts.len());
    let mut tables = Vec::with_capacity(contexts.len());
    for (ci, ctx) in contexts.iter().enumerate() {
        if ctx.len() > MAX_CONTEXT {
            return Err(QuantumError::ContextTooLarge(ci, ctx.len()));
        }
        for (i, &a) in ctx.iter().enumerate() {
            for &b in &ctx[..i] {
                if !commutes(set.get(a), set.get(b), d)? {
                    return Err(WeylError::NonCommuting(set.get(a).to_string(), set.get(b).to_string()).into());
                }
            }
        }
        let local: Vec<usize> = ctx
            .iter()
            .map(|a| measurements.iter().position(|m| m == a).expect("collected above"))
            .collect();
        let count = (d as usize).pow(ctx.len() as u32);
        let mut table = Vec::with_capacity(count);
        for o in 0..count {
            let digits = to_digits(o, ctx.len(), d);
            let mut prod = rho.matrix().clone();
            for (&m, &k) in local.iter().zip(&digits) {
                prod = projectors[m][k as usize].mul(&prod).expect("same shape");
            }
            table.push(prod.trace().re);
        }
        local_contexts.push(local);
        tables.push(table);
    }
    let names = measurements.iter().map(|&a| set.get(a).to_string()).collect();
    EmpiricalModel::new(d, names, local_contexts, tables)
}
