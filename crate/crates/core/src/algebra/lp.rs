//! Two-phase primal simplex with Bland's rule, generic over [`Scalar`].
//!
//! With [`crate::Rational`] every pivot is exact and the returned optimum,
//! witness and dual vector can be checked by re-substitution.

use crate::scalar::Scalar;

use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub kind: ConstraintKind,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(coeffs: Vec<T>, kind: ConstraintKind, rhs: T) -> Self {
        Self { coeffs, kind, rhs }
    }

    fn lhs(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone())
    }
}

/// Maximise `objective · x` subject to `constraints`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub optimum: T,
    /// Primal optimum.
    pub witness: Vec<T>,
    /// One multiplier per constraint: `≥ 0` on `≤` rows, `≤ 0` on `≥` rows.
    pub duals: Vec<T>,
    pub pivots: usize,
}

struct Tableau<T> {
    /// `rows × (cols + 1)`; the last entry of each row is the right-hand side.
    a: Vec<Vec<T>>,
    /// Reduced costs `c_B B⁻¹ A_j − c_j`; last entry is the objective value.
    obj: Vec<T>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        let support: Vec<usize> = (0..=self.cols).filter(|&j| !self.a[r][j].is_zero()).collect();
        let pivot_row = self.a[r].clone();
        for i in 0..self.a.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][c].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.a[i];
            for &j in &support {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
            if !T::EXACT {
                row[c] = T::zero();
            }
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for &j in &support {
                self.obj[j] = self.obj[j].clone() - f.clone() * pivot_row[j].clone();
            }
            if !T::EXACT {
                self.obj[c] = T::zero();
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Install objective `cost` (over all columns) and price out the basis.
    fn set_objective(&mut self, cost: &[T]) {
        self.obj = cost.iter().map(|c| -c.clone()).collect();
        self.obj.push(T::zero());
        for r in 0..self.a.len() {
            let cb = cost[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..=self.cols {
                let v = self.a[r][j].clone();
                if !v.is_zero() {
                    self.obj[j] = self.obj[j].clone() + cb.clone() * v;
                }
            }
        }
    }

    /// Run Bland's rule until optimal. Columns with `allowed[j] == false`
    /// never enter.
    fn optimise(&mut self, allowed: &[bool]) -> Result<(), AlgebraError> {
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed[j] && self.obj[j].is_strictly_negative())
            else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.a.len() {
                let coef = &self.a[r][c];
                if !coef.is_strictly_positive() {
                    continue;
                }
                let ratio = self.a[r][self.cols].clone() / coef.clone();
                best = match best {
                    None => Some((r, ratio)),
                    Some((br, bratio)) => {
                        let smaller = ratio < bratio.clone() - T::tolerance();
                        let tie = !smaller && !(ratio > bratio.clone() + T::tolerance());
                        if smaller || (tie && self.basis[r] < self.basis[br]) {
                            Some((r, ratio))
                        } else {
                            Some((br, bratio))
                        }
                    }
                };
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(AlgebraError::Unbounded),
            }
        }
    }
}

/// Maximise `lp.objective · x` subject to the constraints. With
/// `nonneg = true` every variable is restricted to `x ≥ 0`; otherwise the
/// variables are free.
pub fn lp_maximize<T: Scalar>(lp: &LinearProgram<T>, nonneg: bool) -> Result<LpSolution<T>, AlgebraError> {
    let n = lp.objective.len();
    for c in &lp.constraints {
        if c.coeffs.len() != n {
            return Err(AlgebraError::Shape {
                expected: n,
                found: c.coeffs.len(),
            });
        }
    }
    if nonneg {
        return solve_nonneg(lp);
    }
    // x = x⁺ − x⁻
    let split = LinearProgram {
        objective: lp
            .objective
            .iter()
            .cloned()
            .chain(lp.objective.iter().map(|c| -c.clone()))
            .collect(),
        constraints: lp
            .constraints
            .iter()
            .map(|c| Constraint {
                coeffs: c
                    .coeffs
                    .iter()
                    .cloned()
                    .chain(c.coeffs.iter().map(|v| -v.clone()))
                    .collect(),
                kind: c.kind,
                rhs: c.rhs.clone(),
            })
            .collect(),
    };
    let sol = solve_nonneg(&split)?;
    let witness = (0..n)
        .map(|i| sol.witness[i].clone() - sol.witness[n + i].clone())
        .collect();
    Ok(LpSolution {
        optimum: sol.optimum,
        witness,
        duals: sol.duals,
        pivots: sol.pivots,
    })
}

fn solve_nonneg<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>, AlgebraError> {
    let n = lp.objective.len();
    let m = lp.constraints.len();

    // Normalise to b ≥ 0, remembering which rows were negated.
    let mut flipped = vec![false; m];
    let mut kinds = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let neg = c.rhs.is_strictly_negative();
        flipped[i] = neg;
        kinds.push(match (c.kind, neg) {
            (ConstraintKind::Le, true) => ConstraintKind::Ge,
            (ConstraintKind::Ge, true) => ConstraintKind::Le,
            (k, _) => k,
        });
    }

    // Column layout: structural | slack or surplus per inequality | artificial.
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    let mut cols = n;
    for (i, k) in kinds.iter().enumerate() {
        if *k != ConstraintKind::Eq {
            slack_col[i] = Some(cols);
            cols += 1;
        }
    }
    let first_art = cols;
    for (i, k) in kinds.iter().enumerate() {
        if *k != ConstraintKind::Le {
            art_col[i] = Some(cols);
            cols += 1;
        }
    }

    let mut a = vec![vec![T::zero(); cols + 1]; m];
    let mut basis = vec![0; m];
    for (i, c) in lp.constraints.iter().enumerate() {
        let sign = if flipped[i] { -T::one() } else { T::one() };
        for (j, v) in c.coeffs.iter().enumerate() {
            if !v.is_zero() {
                a[i][j] = sign.clone() * v.clone();
            }
        }
        a[i][cols] = sign * c.rhs.clone();
        if let Some(s) = slack_col[i] {
            a[i][s] = if kinds[i] == ConstraintKind::Le { T::one() } else { -T::one() };
        }
        if let Some(art) = art_col[i] {
            a[i][art] = T::one();
            basis[i] = art;
        } else {
            basis[i] = slack_col[i].expect("≤ row has a slack");
        }
    }
    let mut tab = Tableau {
        a,
        obj: Vec::new(),
        basis,
        cols,
        pivots: 0,
    };

    if first_art < cols {
        let phase1: Vec<T> = (0..cols)
            .map(|j| if j >= first_art { -T::one() } else { T::zero() })
            .collect();
        tab.set_objective(&phase1);
        tab.optimise(&vec![true; cols])?;
        if tab.obj[cols].is_strictly_negative() {
            return Err(AlgebraError::Infeasible);
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| !tab.a[r][j].is_negligible()) {
                    tab.pivot(r, j);
                }
            }
        }
    }

    let mut cost = vec![T::zero(); cols];
    cost[..n].clone_from_slice(&lp.objective);
    tab.set_objective(&cost);
    let allowed: Vec<bool> = (0..cols).map(|j| j < first_art).collect();
    tab.optimise(&allowed)?;

    let mut witness = vec![T::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            witness[b] = tab.a[r][cols].clone();
        }
    }
    let duals = (0..m)
        .map(|i| {
            let unit = art_col[i].or(slack_col[i]).expect("every row has a unit column");
            let y = tab.obj[unit].clone();
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpSolution {
        optimum: tab.obj[cols].clone(),
        witness,
        duals,
        pivots: tab.pivots,
    })
}

/// Check primal feasibility, dual feasibility and zero duality gap.
pub fn certify_optimality<T: Scalar>(lp: &LinearProgram<T>, sol: &LpSolution<T>, nonneg: bool) -> bool {
    let tol = T::tolerance();
    if nonneg && sol.witness.iter().any(|x| x.is_strictly_negative()) {
        return false;
    }
    for c in &lp.constraints {
        let lhs = c.lhs(&sol.witness);
        let ok = match c.kind {
            ConstraintKind::Le => lhs <= c.rhs.clone() + tol.clone(),
            ConstraintKind::Ge => lhs >= c.rhs.clone() - tol.clone(),
            ConstraintKind::Eq => (lhs - c.rhs.clone()).is_negligible(),
        };
        if !ok {
            return false;
        }
    }
    for (c, y) in lp.constraints.iter().zip(&sol.duals) {
        let ok = match c.kind {
            ConstraintKind::Le => !y.is_strictly_negative(),
            ConstraintKind::Ge => !y.is_strictly_positive(),
            ConstraintKind::Eq => true,
        };
        if !ok {
            return false;
        }
    }
    // Aᵀy ≥ c for x ≥ 0, Aᵀy = c for free x.
    for (j, cj) in lp.objective.iter().enumerate() {
        let col = lp
            .constraints
            .iter()
            .zip(&sol.duals)
            .fold(T::zero(), |acc, (c, y)| acc + c.coeffs[j].clone() * y.clone());
        let reduced = col - cj.clone();
        if reduced.is_strictly_negative() || (!nonneg && !reduced.is_negligible()) {
            return false;
        }
    }
    let primal = lp
        .objective
        .iter()
        .zip(&sol.witness)
        .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
    let dual = lp
        .constraints
        .iter()
        .zip(&sol.duals)
        .fold(T::zero(), |acc, (c, y)| acc + c.rhs.clone() * y.clone());
    (primal.clone() - sol.optimum.clone()).is_negligible() && (primal - dual).is_negligible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use ConstraintKind::*;

    fn r(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn single_variable() {
        let lp = LinearProgram {
            objective: vec![r(1, 1)],
            constraints: vec![Constraint::new(vec![r(1, 1)], Le, r(1, 1))],
        };
        let sol = lp_maximize(&lp, true).unwrap();
        assert_eq!(sol.optimum, r(1, 1));
        assert!(certify_optimality(&lp, &sol, true));
    }

    #[test]
    fn two_variable_vertex() {
        let lp = LinearProgram {
            objective: vec![r(1, 1), r(1, 1)],
            constraints: vec![
                Constraint::new(vec![r(1, 1), r(2, 1)], Le, r(2, 1)),
                Constraint::new(vec![r(2, 1), r(1, 1)], Le, r(2, 1)),
            ],
        };
        let sol = lp_maximize(&lp, true).unwrap();
        assert_eq!(sol.optimum, r(4, 3));
        assert_eq!(sol.witness, vec![r(2, 3), r(2, 3)]);
        assert!(certify_optimality(&lp, &sol, true));
        // Duals (1/3, 1/3) by symmetry.
        assert_eq!(sol.duals, vec![r(1, 3), r(1, 3)]);
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x - y  s.t.  x + y = 3, x ≥ 1, y ≥ 1/2
        let lp = LinearProgram {
            objective: vec![r(1, 1), r(-1, 1)],
            constraints: vec![
                Constraint::new(vec![r(1, 1), r(1, 1)], Eq, r(3, 1)),
                Constraint::new(vec![r(1, 1), r(0, 1)], Ge, r(1, 1)),
                Constraint::new(vec![r(0, 1), r(1, 1)], Ge, r(1, 2)),
            ],
        };
        let sol = lp_maximize(&lp, true).unwrap();
        assert_eq!(sol.optimum, r(2, 1));
        assert!(certify_optimality(&lp, &sol, true));
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // max -x s.t. -x ≤ -2  (x ≥ 2)
        let lp = LinearProgram {
            objective: vec![r(-1, 1)],
            constraints: vec![Constraint::new(vec![r(-1, 1)], Le, r(-2, 1))],
        };
        let sol = lp_maximize(&lp, true).unwrap();
        assert_eq!(sol.optimum, r(-2, 1));
        assert!(certify_optimality(&lp, &sol, true));
    }

    #[test]
    fn free_variables() {
        // max x s.t. x ≤ -1 with x free
        let lp = LinearProgram {
            objective: vec![r(1, 1)],
            constraints: vec![Constraint::new(vec![r(1, 1)], Le, r(-1, 1))],
        };
        let sol = lp_maximize(&lp, false).unwrap();
        assert_eq!(sol.witness, vec![r(-1, 1)]);
        assert!(certify_optimality(&lp, &sol, false));
    }

    #[test]
    fn unbounded_and_infeasible() {
        let lp = LinearProgram {
            objective: vec![r(1, 1)],
            constraints: vec![Constraint::new(vec![r(-1, 1)], Le, r(1, 1))],
        };
        assert_eq!(lp_maximize(&lp, true).unwrap_err(), AlgebraError::Unbounded);
        let lp = LinearProgram {
            objective: vec![r(1, 1)],
            constraints: vec![
                Constraint::new(vec![r(1, 1)], Le, r(1, 1)),
                Constraint::new(vec![r(1, 1)], Ge, r(2, 1)),
            ],
        };
        assert_eq!(lp_maximize(&lp, true).unwrap_err(), AlgebraError::Infeasible);
    }

    #[test]
    fn float_path_agrees() {
        let lp = LinearProgram {
            objective: vec![1.0f64, 1.0],
            constraints: vec![
                Constraint::new(vec![1.0, 2.0], Le, 2.0),
                Constraint::new(vec![2.0, 1.0], Le, 2.0),
            ],
        };
        let sol = lp_maximize(&lp, true).unwrap();
        assert!((sol.optimum - 4.0 / 3.0).abs() < 1e-12);
        assert!(certify_optimality(&lp, &sol, true));
    }
}
