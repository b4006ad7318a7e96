//! Non-contextual fraction of an empirical model by linear programming.
//!
//! Variables are weights `x_g ≥ 0` on global assignments
//! `g: measurements → Z_d`; the program maximises `Σ x_g` subject to
//! `Σ_{g|_M = o} x_g ≤ e_M(o)` for every context `M` and outcome `o`.

use thiserror::Error;

use crate::algebra::{certify_optimality, lp_maximize, AlgebraError, Constraint, ConstraintKind, LinearProgram};
use crate::quantum::{EmpiricalModel, QuantumError};
use crate::scalar::Scalar;
use crate::weyl::{from_digits, to_digits};

pub const DEFAULT_ASSIGNMENT_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractionError {
    #[error("{count} global assignments exceed the cap of {cap}")]
    AssignmentCap { count: u128, cap: u128 },
    #[error("the LP optimum failed its optimality certificate")]
    Uncertified,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionResult<T> {
    pub ncf: T,
    pub cf: T,
    /// Nonzero weights, keyed by the assignment's values on the measurements.
    pub weights: Vec<(Vec<u64>, T)>,
    /// One multiplier per `(context, outcome)` row: a Bell-type inequality
    /// `Σ y_{M,o} e_M(o) ≥ NCF` valid for every non-contextual model.
    pub duals: Vec<T>,
    pub variables: usize,
    pub constraints: usize,
    pub pivots: usize,
}

/// Restriction of global assignment `g` to each context, as table indices.
fn restrictions(g: &[u64], contexts: &[Vec<usize>], d: u64) -> Vec<usize> {
    contexts
        .iter()
        .map(|ctx| {
            let sub: Vec<u64> = ctx.iter().map(|&m| g[m]).collect();
            from_digits(&sub, d)
        })
        .collect()
}

pub fn noncontextual_fraction<T: Scalar>(e: &EmpiricalModel<T>, cap: u128) -> Result<FractionResult<T>, FractionError> {
    let d = e.modulus();
    let m = e.measurements().len();
    let count = (d as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(FractionError::AssignmentCap { count, cap });
    }
    let count = count as usize;
    let offsets: Vec<usize> = e
        .tables()
        .iter()
        .scan(0, |acc, t| {
            let o = *acc;
            *acc += t.len();
            Some(o)
        })
        .collect();
    let rows: usize = e.tables().iter().map(Vec::len).sum();
    let mut coeffs = vec![vec![T::zero(); count]; rows];
    for gi in 0..count {
        let g = to_digits(gi, m, d);
        for (ci, o) in restrictions(&g, e.contexts(), d).into_iter().enumerate() {
            coeffs[offsets[ci] + o][gi] = T::one();
        }
    }
    let rhs: Vec<T> = e.tables().iter().flatten().cloned().collect();
    let lp = LinearProgram {
        objective: vec![T::one(); count],
        constraints: coeffs
            .into_iter()
            .zip(rhs)
            .map(|(c, b)| Constraint::new(c, ConstraintKind::Le, b))
            .collect(),
    };
    let sol = lp_maximize(&lp, true)?;
    if !certify_optimality(&lp, &sol, true) {
        return Err(FractionError::Uncertified);
    }
    let weights = sol
        .witness
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_negligible())
        .map(|(gi, w)| (to_digits(gi, m, d), w.clone()))
        .collect();
    Ok(FractionResult {
        cf: T::one() - sol.optimum.clone(),
        ncf: sol.optimum,
        weights,
        duals: sol.duals,
        variables: count,
        constraints: rows,
        pivots: sol.pivots,
    })
}

/// The model of a single global assignment over the same cover.
pub fn deterministic_model<T: Scalar>(e: &EmpiricalModel<T>, g: &[u64]) -> Result<EmpiricalModel<T>, FractionError> {
    let d = e.modulus();
    let tables = e
        .tables()
        .iter()
        .zip(restrictions(g, e.contexts(), d))
        .map(|(t, o)| (0..t.len()).map(|i| if i == o { T::one() } else { T::zero() }).collect())
        .collect();
    Ok(EmpiricalModel::new(
        d,
        e.measurements().to_vec(),
        e.contexts().to_vec(),
        tables,
    )?)
}

/// `e = NCF·e^NC + CF·e^C`; a part is `None` when its weight is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub noncontextual: Option<EmpiricalModel<T>>,
    pub contextual: Option<EmpiricalModel<T>>,
}

pub fn decompose<T: Scalar>(e: &EmpiricalModel<T>, result: &FractionResult<T>) -> Result<Decomposition<T>, FractionError> {
    let d = e.modulus();
    let mut nc: Vec<Vec<T>> = e.tables().iter().map(|t| vec![T::zero(); t.len()]).collect();
    for (g, w) in &result.weights {
        for (ci, o) in restrictions(g, e.contexts(), d).into_iter().enumerate() {
            nc[ci][o] = nc[ci][o].clone() + w.clone();
        }
    }
    let build = |tables: Vec<Vec<T>>| EmpiricalModel::new(d, e.measurements().to_vec(), e.contexts().to_vec(), tables);
    let noncontextual = if result.ncf.is_negligible() {
        None
    } else {
        let scaled = nc
            .iter()
            .map(|t| t.iter().map(|v| v.clone() / result.ncf.clone()).collect())
            .collect();
        Some(build(scaled)?)
    };
    let contextual = if result.cf.is_negligible() {
        None
    } else {
        let rest = e
            .tables()
            .iter()
            .zip(&nc)
            .map(|(t, n)| t.iter().zip(n).map(|(x, y)| (x.clone() - y.clone()) / result.cf.clone()).collect())
            .collect();
        Some(build(rest)?)
    };
    Ok(Decomposition {
        noncontextual,
        contextual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn single_context(p: Vec<Rational>) -> EmpiricalModel<Rational> {
        EmpiricalModel::new(2, vec!["A".into(), "B".into()], vec![vec![0, 1]], vec![p]).unwrap()
    }

    #[test]
    fn one_context_is_always_noncontextual() {
        let e = single_context(vec![rational(1, 2), rational(0, 1), rational(1, 4), rational(1, 4)]);
        let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert_eq!(r.ncf, rational(1, 1));
        let parts = decompose(&e, &r).unwrap();
        assert_eq!(parts.noncontextual.as_ref(), Some(&e));
        assert!(parts.contextual.is_none());
    }

    /// PR box over two measurements per party: maximally contextual.
    #[test]
    fn pr_box_has_no_noncontextual_part() {
        let half = rational(1, 2);
        let zero = rational(0, 1);
        let corr = vec![half.clone(), zero.clone(), zero.clone(), half.clone()];
        let anti = vec![zero.clone(), half.clone(), half, zero];
        let e = EmpiricalModel::new(
            2,
            vec!["A0".into(), "A1".into(), "B0".into(), "B1".into()],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
            vec![corr.clone(), corr.clone(), corr, anti],
        )
        .unwrap();
        let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert_eq!(r.ncf, rational(0, 1));
        assert_eq!(r.cf, rational(1, 1));
        let parts = decompose(&e, &r).unwrap();
        assert_eq!(parts.contextual.as_ref(), Some(&e));
    }

    #[test]
    fn cap_is_enforced() {
        let e = single_context(vec![rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)]);
        assert!(matches!(
            noncontextual_fraction(&e, 2),
            Err(FractionError::AssignmentCap { count: 4, cap: 2 })
        ));
    }
}
