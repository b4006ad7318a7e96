//! Classical cost of reproducing a function that a contextual scenario
//! computes: exception-list evaluators, the memory bound, Walsh–Hadamard
//! distance to linear functions and the success bound for
//! two-setting measurement-based computation with linear side-processing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::zmod::{add_mod, sub_mod};
use crate::algebra::SearchLimits;
use crate::assignments::{beta_compatible_set, hamming_to_set, AssignmentError, CompatibleSet};
use crate::complex::{ChainComplex, ComplexError, WeylBackend, DEFAULT_VOLUME_CAP};
use crate::scalar::{ceil_to_u64, rational_from_usize, Rational};
use crate::weyl::{regauge_to_eta0, LabelSet, PhaseConvention, WeylError};

/// Calibrated constant in the operation-count bound `c·m·log₂(max(2, CF·ℍ))`.
pub const OPERATION_CONSTANT: u64 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error("the compatible set is empty")]
    EmptySet,
    #[error("list of {requested} exceptions requested but only {available} disagreements exist")]
    Oversize { requested: usize, available: usize },
    #[error("functions have different domains ({0} vs {1} points)")]
    DomainMismatch(usize, usize),
    #[error("truth table has {0} entries, which is not a power of two")]
    TableLength(usize),
    #[error("invalid truth table: {0}")]
    Parse(String),
    #[error("regauging failed: {0}")]
    Regauge(WeylError),
    #[error("β does not vanish after regauging")]
    RegaugeResidue,
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `𝔰_opt`: a member of `Λ̄` closest to `χ` on `E_0`.
///
/// Ties go to the lexicographically smallest restriction to `E_0`, then to
/// the lexicographically smallest member.
pub fn best_assignment(
    chi: &[u64],
    lambda: &CompatibleSet,
    e0: &[usize],
    limits: &SearchLimits,
) -> Result<(Vec<u64>, usize), ClassicalError> {
    let h = hamming_to_set(chi, lambda, e0, limits)?;
    let c = h.closest().ok_or(ClassicalError::EmptySet)?;
    Ok((c.member.clone(), c.distance))
}

/// How the evaluator computes its base value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// Explicit values on the domain.
    Table(Vec<u64>),
    /// `x ↦ w·x` over `Z_2^m`, inputs encoded as integers with bit `i`
    /// holding `x_{i+1}`.
    Linear { m: usize, w: u64 },
}

impl Base {
    fn domain(&self) -> usize {
        match self {
            Base::Table(t) => t.len(),
            Base::Linear { m, .. } => 1 << m,
        }
    }

    fn value(&self, x: usize) -> u64 {
        match self {
            Base::Table(t) => t[x],
            Base::Linear { w, .. } => ((x as u64 & w).count_ones() % 2) as u64,
        }
    }
}

/// A base function plus a sorted list of corrections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionEvaluator {
    pub base: Base,
    pub modulus: u64,
    /// `L`: input ↦ correction `δ`, sorted by input.
    pub exceptions: Vec<(usize, u64)>,
    /// `|L_max|`: the number of points where base and target disagree.
    pub max_exceptions: usize,
}

/// The evaluator for `target` that corrects the first `list_size`
/// disagreements of `base` (in input order).
pub fn build_evaluator(
    base: Base,
    target: &[u64],
    modulus: u64,
    list_size: usize,
) -> Result<ExceptionEvaluator, ClassicalError> {
    if base.domain() != target.len() {
        return Err(ClassicalError::DomainMismatch(base.domain(), target.len()));
    }
    let l_max: Vec<(usize, u64)> = target
        .iter()
        .enumerate()
        .filter_map(|(x, &t)| {
            let delta = sub_mod(t % modulus, base.value(x), modulus);
            (delta != 0).then_some((x, delta))
        })
        .collect();
    if list_size > l_max.len() {
        return Err(ClassicalError::Oversize {
            requested: list_size,
            available: l_max.len(),
        });
    }
    Ok(ExceptionEvaluator {
        base,
        modulus,
        max_exceptions: l_max.len(),
        exceptions: l_max[..list_size].to_vec(),
    })
}

/// `⌈log₂ k⌉` for `k ≥ 1`.
pub fn ceil_log2(k: u64) -> u64 {
    if k <= 1 {
        0
    } else {
        64 - (k - 1).leading_zeros() as u64
    }
}

impl ExceptionEvaluator {
    pub fn domain(&self) -> usize {
        self.base.domain()
    }

    pub fn evaluate(&self, x: usize) -> u64 {
        self.evaluate_counted(x).0
    }

    /// Output together with the number of abstract operations: `2m` for a
    /// linear form (`m` for a table read), `m` per comparison over a
    /// fixed-depth binary search of depth `⌈log₂(|L| + 1)⌉`, and 1 for the
    /// final correction.
    pub fn evaluate_counted(&self, x: usize) -> (u64, u64) {
        let m = ceil_log2(self.domain() as u64).max(1);
        let mut ops = match self.base {
            Base::Linear { m, .. } => 2 * m as u64,
            Base::Table(_) => m,
        };
        let base = self.base.value(x);
        // Branch-free lower bound search: always `depth` probes.
        let depth = ceil_log2(self.exceptions.len() as u64 + 1);
        let (mut lo, mut len) = (0usize, self.exceptions.len());
        for _ in 0..depth {
            ops += m;
            let half = len / 2;
            if half < len && self.exceptions[lo + half].0 < x {
                lo += half + 1;
                len -= half + 1;
            } else {
                len = half;
            }
        }
        ops += 1;
        let delta = match self.exceptions.get(lo) {
            Some(&(k, d)) if k == x => d,
            _ => 0,
        };
        (add_mod(base, delta, self.modulus), ops)
    }

    /// `1 − (|L_max| − |L|)/|domain|`.
    pub fn success_probability(&self) -> Rational {
        Rational::one()
            - rational_from_usize(self.max_exceptions - self.exceptions.len()) / rational_from_usize(self.domain())
    }

    /// Fraction of inputs on which the evaluator matches `target`.
    pub fn measured_success(&self, target: &[u64]) -> Rational {
        let hits = (0..self.domain()).filter(|&x| self.evaluate(x) == target[x] % self.modulus).count();
        rational_from_usize(hits) / rational_from_usize(self.domain())
    }
}

/// `I ≤ C·⌈CF·ℍ⌉ + D` with `C = ⌈log₂|E_0|⌉ + ⌈log₂(d−1)⌉` and
/// `D = ⌈log₂ d⌉ · log_d|Λ̄|`.
#[derive(Clone, Debug, PartialEq)]
pub struct MemoryCost {
    pub c: u64,
    pub list_len: u64,
    pub d_bits: u64,
    /// `log_d |Λ̄|`.
    pub lambda_log_d: f64,
    pub lambda_size: Option<u128>,
    pub total: u64,
}

pub fn memory_cost(e0_len: usize, d: u64, cf: &Rational, h: usize, lambda_log_d: f64, lambda_size: Option<u128>) -> MemoryCost {
    let c = ceil_log2(e0_len as u64) + ceil_log2(d - 1);
    let list_len = ceil_to_u64(&(cf * rational_from_usize(h)));
    // Nearest integer first: log_d of an exact power can land a hair above it.
    let d_real = ceil_log2(d) as f64 * lambda_log_d;
    let d_bits = if (d_real - d_real.round()).abs() < 1e-9 {
        d_real.round() as u64
    } else {
        d_real.ceil() as u64
    };
    MemoryCost {
        c,
        list_len,
        d_bits,
        lambda_log_d,
        lambda_size,
        total: c * list_len + d_bits,
    }
}

/// Regauge to a convention with `β ≡ 0`, rebuild the complex and evaluate
/// the memory bound. `Λ̄` is then a group containing `0`.
pub fn memory_cost_bound(
    set: &LabelSet,
    eta: &PhaseConvention,
    chi: &[u64],
    e0: &[usize],
    cf: &Rational,
    limits: &SearchLimits,
) -> Result<(MemoryCost, PhaseConvention, usize), ClassicalError> {
    let complex = ChainComplex::build(&WeylBackend::new(set.clone(), eta.clone()), DEFAULT_VOLUME_CAP)?;
    let (eta0, s) = regauge_to_eta0(set, eta, &complex).map_err(ClassicalError::Regauge)?;
    let c0 = ChainComplex::build(&WeylBackend::new(set.clone(), eta0.clone()), DEFAULT_VOLUME_CAP)?;
    if !c0.beta().is_zero() {
        return Err(ClassicalError::RegaugeResidue);
    }
    let lambda = beta_compatible_set(&c0)?;
    let d = set.modulus();
    // χ ↦ χ − s|_{E_0} under the regauging.
    let chi0: Vec<u64> = chi.iter().zip(e0).map(|(&v, &a)| sub_mod(v, s[a], d)).collect();
    let h = hamming_to_set(&chi0, &lambda, e0, limits)?
        .value()
        .ok_or(ClassicalError::EmptySet)?;
    Ok((
        memory_cost(e0.len(), d, cf, h, lambda.log_size(), lambda.size()),
        eta0,
        h,
    ))
}

/// A Boolean function `Z_2^m → Z_2`; input `x` has bit `i` equal to
/// `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    m: usize,
    table: Vec<u64>,
}

impl BooleanFunction {
    pub fn new(table: Vec<u64>) -> Result<Self, ClassicalError> {
        let n = table.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(ClassicalError::TableLength(n));
        }
        if table.iter().any(|&b| b > 1) {
            return Err(ClassicalError::Parse("entries must be 0 or 1".into()));
        }
        Ok(Self {
            m: n.trailing_zeros() as usize,
            table,
        })
    }

    /// Hex truth table, most significant nibble first; bit `x` of the
    /// number is `f(x)`.
    pub fn from_hex(m: usize, hex: &str) -> Result<Self, ClassicalError> {
        let digits = hex.trim().trim_start_matches("0x");
        let mut table = vec![0u64; 1 << m];
        for (i, ch) in digits.chars().rev().enumerate() {
            let v = ch.to_digit(16).ok_or_else(|| ClassicalError::Parse(format!("bad hex digit {ch:?}")))?;
            for b in 0..4 {
                let x = 4 * i + b;
                if v >> b & 1 == 1 {
                    if x >= table.len() {
                        return Err(ClassicalError::Parse(format!("bit {x} outside a table of {}", table.len())));
                    }
                    table[x] = 1;
                }
            }
        }
        Self::new(table)
    }

    pub fn or(m: usize) -> Self {
        Self::new((0..1usize << m).map(|x| (x != 0) as u64).collect()).expect("power of two")
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> u64 {
        self.table[x]
    }
}

/// `F̂(w) = Σ_x (−1)^{f(x) + w·x}` by the fast transform.
pub fn walsh_hadamard(f: &BooleanFunction) -> Vec<i64> {
    let mut v: Vec<i64> = f.table.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect();
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
    v
}

/// Distance to the closest linear function, `(2^m − max_w F̂(w))/2`, and
/// the maximising `w` (the largest one on ties).
pub fn distance_to_linear(f: &BooleanFunction) -> (usize, u64) {
    let spec = walsh_hadamard(f);
    let (w, best) = spec
        .iter()
        .enumerate()
        .fold((0, i64::MIN), |acc, (w, &v)| if v >= acc.1 { (w, v) } else { acc });
    (((1i64 << f.m) - best) as usize / 2, w as u64)
}

/// Distance to the closest affine function, using `max |F̂|`. Returns the
/// distance, `w`, and the constant term.
pub fn distance_to_affine(f: &BooleanFunction) -> (usize, u64, u64) {
    let spec = walsh_hadamard(f);
    let (w, best) = spec
        .iter()
        .enumerate()
        .fold((0, i64::MIN), |acc, (w, &v)| if v.abs() >= acc.1 { (w, v.abs()) } else { acc });
    let constant = (spec[w] < 0) as u64;
    (((1i64 << f.m) - best) as usize / 2, w as u64, constant)
}

/// `1 − (1 − CF)·ℍ(f, ℒ)/2^m`.
pub fn l2mbqc_success_bound(h: usize, m: usize, cf: &Rational) -> Rational {
    Rational::one() - (Rational::one() - cf) * rational_from_usize(h) / rational_from_usize(1 << m)
}

/// `c·m·log₂(max(2, CF·ℍ))`, rounded up.
pub fn operation_bound(m: usize, cf: &Rational, h: usize) -> u64 {
    let x = crate::scalar::Scalar::to_f64(&(cf * rational_from_usize(h))).max(2.0);
    (OPERATION_CONSTANT as f64 * m as f64 * x.log2()).ceil() as u64
}

/// Evaluate with the linear evaluator and return `(output, operations)`.
pub fn operational_cost(evaluator: &ExceptionEvaluator, x: usize) -> (u64, u64) {
    evaluator.evaluate_counted(x)
}

/// Exception list built from the closest linear function.
pub fn linear_evaluator(f: &BooleanFunction, list_size: usize) -> Result<ExceptionEvaluator, ClassicalError> {
    let (_, w) = distance_to_linear(f);
    build_evaluator(Base::Linear { m: f.m, w }, &f.table, 2, list_size)
}

/// Table of `(CF, bound)` over a grid.
pub fn success_bound_table(h: usize, m: usize, grid: &[Rational]) -> BTreeMap<String, Rational> {
    grid.iter()
        .map(|cf| (crate::scalar::format_rational(cf), l2mbqc_success_bound(h, m, cf)))
        .collect()
}

/// `⌈CF·ℍ⌉` exceptions, the list length used by the evaluators.
pub fn list_size_for(cf: &Rational, h: usize) -> usize {
    if cf.is_zero() {
        0
    } else {
        ceil_to_u64(&(cf * rational_from_usize(h))) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn or_gate() {
        let f = BooleanFunction::or(2);
        assert_eq!(distance_to_linear(&f), (1, 0b11));
        assert_eq!(l2mbqc_success_bound(1, 2, &rational(0, 1)), rational(3, 4));
        assert_eq!(l2mbqc_success_bound(1, 2, &rational(1, 1)), rational(1, 1));
        let ev = linear_evaluator(&f, 1).unwrap();
        assert_eq!(ev.success_probability(), rational(1, 1));
        assert_eq!(operational_cost(&ev, 3), (1, 7));
        let ev0 = linear_evaluator(&f, 0).unwrap();
        assert_eq!(ev0.success_probability(), rational(3, 4));
        assert_eq!(operational_cost(&ev0, 3).1, 5);
    }

    #[test]
    fn hex_parsing() {
        let f = BooleanFunction::from_hex(2, "e").unwrap();
        assert_eq!(f, BooleanFunction::or(2));
        assert!(BooleanFunction::from_hex(2, "1e").is_err());
        assert!(BooleanFunction::new(vec![0, 1, 1]).is_err());
    }

    #[test]
    fn linear_functions_have_distance_zero() {
        for w in 0..8u64 {
            let f = BooleanFunction::new((0..8u64).map(|x| ((x & w).count_ones() % 2) as u64).collect()).unwrap();
            assert_eq!(distance_to_linear(&f), (0, w));
            assert_eq!(l2mbqc_success_bound(0, 3, &rational(0, 1)), rational(1, 1));
        }
    }

    #[test]
    fn affine_variant_uses_complements() {
        let f = BooleanFunction::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(distance_to_linear(&f).0, 2);
        assert_eq!(distance_to_affine(&f), (0, 0, 1));
    }

    #[test]
    fn memory_constants_for_qubits() {
        let m = memory_cost(4, 2, &rational(1, 1), 1, 6.0, Some(64));
        assert_eq!((m.c, m.list_len, m.d_bits, m.total), (2, 1, 6, 8));
        let m = memory_cost(4, 2, &rational(0, 1), 1, 6.0, Some(64));
        assert_eq!(m.total, 6);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
    }

    #[test]
    fn evaluator_errors() {
        assert!(matches!(
            build_evaluator(Base::Table(vec![0, 0]), &[1, 1], 2, 3),
            Err(ClassicalError::Oversize { .. })
        ));
        assert!(build_evaluator(Base::Table(vec![0]), &[1, 1], 2, 0).is_err());
    }
}
