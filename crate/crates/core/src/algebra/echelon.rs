//! Howell normal form of a subgroup of `Z_d^n` and minimum-weight coset
//! search.
//!
//! In Howell form every element of the row span has a unique expansion
//! `Σ c_j h_j` with `0 ≤ c_j < d / g_j`, where `g_j` is the pivot entry of
//! row `j`. Choosing the coefficients in row order fixes the columns left
//! to right, which is what makes the depth-first search below both prunable
//! and lexicographic.

use super::ring::{EuclideanRing, ResidueRing};
use super::zmod::{add_mod, gcd, mul_mod};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    modulus: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Howell form of the subgroup generated by `gens` (each of length `cols`).
pub fn howell_form(gens: &[Vec<u64>], cols: usize, modulus: u64) -> HowellForm {
    let ring = ResidueRing::new(modulus);
    let d = modulus;
    let mut work: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| g.iter().map(|v| v % d).collect::<Vec<u64>>())
        .filter(|g| g.iter().any(|&v| v != 0))
        .collect();
    let mut rows = Vec::new();
    let mut pivots = Vec::new();

    for col in 0..cols {
        let (mut hits, rest): (Vec<Vec<u64>>, Vec<Vec<u64>>) =
            work.into_iter().partition(|r| r[col] != 0);
        work = rest;
        let Some(mut pivot) = hits.pop() else { continue };
        for mut other in hits {
            let bz = ring.bezout(&pivot[col], &other[col]);
            let nb = ring.neg(&bz.b_over_gcd);
            for j in col..cols {
                let (a, b) = (pivot[j], other[j]);
                pivot[j] = add_mod(mul_mod(bz.s, a, d), mul_mod(bz.t, b, d), d);
                other[j] = add_mod(mul_mod(nb, a, d), mul_mod(bz.a_over_gcd, b, d), d);
            }
            debug_assert_eq!(other[col], 0);
            if other.iter().any(|&v| v != 0) {
                work.push(other);
            }
        }
        let (unit, _) = ring.normalize(&pivot[col]);
        for v in pivot.iter_mut().skip(col) {
            *v = mul_mod(unit, *v, d);
        }
        let g = pivot[col];
        let annihilator: Vec<u64> = pivot.iter().map(|&v| mul_mod(d / g, v, d)).collect();
        if annihilator.iter().any(|&v| v != 0) {
            work.push(annihilator);
        }
        rows.push(pivot);
        pivots.push(col);
    }

    // Reduce entries above each pivot into [0, g).
    for j in 0..rows.len() {
        let (p, g) = (pivots[j], rows[j][pivots[j]]);
        for i in 0..j {
            let q = rows[i][p] / g;
            if q != 0 {
                let factor = (d - q % d) % d;
                for c in p..cols {
                    rows[i][c] = add_mod(rows[i][c], mul_mod(factor, rows[j][c], d), d);
                }
            }
        }
    }

    HowellForm {
        modulus,
        cols,
        rows,
        pivots,
    }
}

impl HowellForm {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of admissible coefficient values of each row.
    pub fn orders(&self) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &p)| self.modulus / r[p])
            .collect()
    }

    /// `log_d` of the subgroup order.
    pub fn log_size(&self) -> f64 {
        let d = (self.modulus as f64).ln();
        self.orders().iter().map(|&o| (o as f64).ln() / d).sum()
    }

    /// Subgroup order, if it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        self.orders()
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    /// Express `v` in the canonical coefficients, if it lies in the span.
    pub fn coefficients(&self, v: &[u64]) -> Option<Vec<u64>> {
        let d = self.modulus;
        let mut rem: Vec<u64> = v.iter().map(|x| x % d).collect();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        let mut next = 0;
        for c in 0..self.cols {
            if next < self.pivots.len() && self.pivots[next] == c {
                let g = self.rows[next][c];
                if rem[c] % g != 0 {
                    return None;
                }
                let k = rem[c] / g;
                let factor = (d - k) % d;
                for j in c..self.cols {
                    rem[j] = add_mod(rem[j], mul_mod(factor, self.rows[next][j], d), d);
                }
                coeffs.push(k);
                next += 1;
            } else if rem[c] != 0 {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coefficients(v).is_some()
    }

    /// Lexicographically smallest element of `offset + span`.
    pub fn lex_min(&self, offset: &[u64]) -> Vec<u64> {
        let mut x: Vec<u64> = offset.iter().map(|v| v % self.modulus).collect();
        self.lex_min_from(&mut x, 0);
        x
    }

    fn lex_min_from(&self, x: &mut [u64], first_row: usize) {
        let d = self.modulus;
        for (row, &p) in self.rows.iter().zip(&self.pivots).skip(first_row) {
            let g = row[p];
            // (x_p + c·g) mod d is smallest at c ≡ -(x_p div g) mod d/g
            let k = (x[p] / g) % (d / g);
            let c = (d / g - k) % (d / g);
            if c != 0 {
                for j in p..self.cols {
                    x[j] = add_mod(x[j], mul_mod(c, row[j], d), d);
                }
            }
        }
    }

    /// Search `offset + span` for an element whose first `weight_cols`
    /// coordinates are closest to `target` in Hamming distance.
    ///
    /// Among minimisers the one with the lexicographically smallest first
    /// block is returned, and among those the lexicographically smallest
    /// full vector.
    pub fn min_weight_coset(
        &self,
        offset: &[u64],
        target: &[u64],
        weight_cols: usize,
        limits: &SearchLimits,
    ) -> Result<CosetMinimum, AlgebraError> {
        assert_eq!(offset.len(), self.cols);
        assert_eq!(target.len(), weight_cols);
        let d = self.modulus;
        let active = self.pivots.iter().take_while(|&&p| p < weight_cols).count();
        let space: Option<u128> = self.orders()[..active]
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128));
        let exhaustive = space.map_or(false, |s| s <= limits.exhaustive_cap as u128);

        let mut state = Search {
            form: self,
            target,
            weight_cols,
            active,
            prune: !exhaustive,
            node_cap: limits.node_cap,
            nodes: 0,
            best: usize::MAX,
            best_point: Vec::new(),
        };
        let mut x: Vec<u64> = offset.iter().map(|v| v % d).collect();
        state.descend(&mut x, 0, 0)?;
        let nodes = state.nodes;
        let mut point = state.best_point;
        self.lex_min_from(&mut point, active);
        Ok(CosetMinimum {
            distance: state.best,
            point,
            nodes,
            exhaustive,
        })
    }
}

/// Budget for [`HowellForm::min_weight_coset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Enumerate every candidate when there are at most this many.
    pub exhaustive_cap: u64,
    /// Give up with `CapExceeded` after visiting this many search nodes.
    pub node_cap: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            exhaustive_cap: 1 << 20,
            node_cap: 1 << 26,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMinimum {
    pub distance: usize,
    pub point: Vec<u64>,
    pub nodes: u64,
    /// True when every candidate was visited rather than branch-and-bound.
    pub exhaustive: bool,
}

struct Search<'a> {
    form: &'a HowellForm,
    target: &'a [u64],
    weight_cols: usize,
    active: usize,
    prune: bool,
    node_cap: u64,
    nodes: u64,
    best: usize,
    best_point: Vec<u64>,
}

impl Search<'_> {
    /// Mismatches in columns `from..to` of the weighted block.
    fn mismatches(&self, x: &[u64], from: usize, to: usize) -> usize {
        (from..to.min(self.weight_cols))
            .filter(|&c| x[c] != self.target[c])
            .count()
    }

    fn descend(&mut self, x: &mut [u64], row: usize, fixed: usize) -> Result<(), AlgebraError> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(AlgebraError::CapExceeded {
                what: "coset search nodes",
                limit: self.node_cap,
            });
        }
        let form = self.form;
        let d = form.modulus;
        if row == self.active {
            let total = fixed + self.mismatches(x, self.fixed_upto(row), self.weight_cols);
            if total < self.best {
                self.best = total;
                self.best_point = x.to_vec();
            }
            return Ok(());
        }
        let p = form.pivots[row];
        let h = &form.rows[row];
        let g = h[p];
        let order = d / g;
        // Columns strictly before this pivot are now final.
        let fixed = fixed + self.mismatches(x, self.fixed_upto(row), p);
        if self.prune && fixed >= self.best {
            return Ok(());
        }
        // Visit coefficients in increasing order of the pivot value.
        let base = x[p] % g;
        let start = x[p] / g;
        let saved: Vec<u64> = x[p..].to_vec();
        for t in 0..order {
            let c = (order - start + t) % order;
            for j in p..form.cols {
                x[j] = add_mod(saved[j - p], mul_mod(c, h[j], d), d);
            }
            debug_assert_eq!(x[p], base + t * g);
            self.descend(x, row + 1, fixed)?;
        }
        x[p..].copy_from_slice(&saved);
        Ok(())
    }

    /// First column not yet counted when entering `row`.
    fn fixed_upto(&self, row: usize) -> usize {
        if row == 0 {
            0
        } else {
            self.form.pivots[row - 1]
        }
    }
}

/// Order of `v` in `Z_d^n`.
pub fn element_order(v: &[u64], modulus: u64) -> u64 {
    let g = v.iter().fold(modulus, |acc, &x| gcd(acc, x % modulus));
    modulus / g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_elements(gens: &[Vec<u64>], cols: usize, d: u64) -> Vec<Vec<u64>> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(vec![0; cols]);
        let mut frontier = vec![vec![0; cols]];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    #[test]
    fn howell_form_counts_and_membership() {
        let d = 12;
        let gens = vec![vec![4, 6, 1], vec![6, 3, 0], vec![2, 0, 4]];
        let hf = howell_form(&gens, 3, d);
        let all = span_elements(&gens, 3, d);
        assert_eq!(hf.size(), Some(all.len() as u128));
        for v in &all {
            assert!(hf.contains(v));
        }
        let total = (d as usize).pow(3);
        assert!(all.len() < total);
        let mut outside = 0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if !all.contains(&vec![a, b, c]) {
                        outside += 1;
                        assert!(!hf.contains(&[a, b, c]));
                    }
                }
            }
        }
        assert_eq!(outside + all.len(), total);
    }

    #[test]
    fn annihilator_rows_are_added() {
        // Over Z_4 the span of (2, 1) contains (0, 2), which an echelon form
        // without the annihilator row would not expose.
        let hf = howell_form(&[vec![2, 1]], 2, 4);
        assert_eq!(hf.rows(), &[vec![2, 1], vec![0, 2]]);
        assert!(hf.contains(&[0, 2]));
        assert_eq!(hf.size(), Some(4));
    }

    #[test]
    fn coset_search_matches_brute_force() {
        let d = 6;
        let gens = vec![vec![1, 2, 3, 0], vec![0, 3, 3, 2], vec![2, 2, 0, 4]];
        let offset = vec![5, 1, 0, 2];
        let target = vec![0, 0, 1];
        let hf = howell_form(&gens, 4, d);
        let best = hf
            .min_weight_coset(&offset, &target, 3, &SearchLimits::default())
            .unwrap();
        let brute = span_elements(&gens, 4, d)
            .into_iter()
            .map(|s| {
                let x: Vec<u64> = s.iter().zip(&offset).map(|(a, b)| (a + b) % d).collect();
                let w = x[..3].iter().zip(&target).filter(|(a, b)| a != b).count();
                (w, x[..3].to_vec(), x)
            })
            .min()
            .unwrap();
        assert_eq!(best.distance, brute.0);
        assert_eq!(best.point, brute.2);

        let pruned = hf
            .min_weight_coset(
                &offset,
                &target,
                3,
                &SearchLimits {
                    exhaustive_cap: 1,
                    node_cap: 1 << 20,
                },
            )
            .unwrap();
        assert!(!pruned.exhaustive);
        assert_eq!(pruned.point, best.point);
    }

    #[test]
    fn node_cap_is_reported() {
        let gens: Vec<Vec<u64>> = (0..8)
            .map(|i| (0..8).map(|j| u64::from(i == j)).collect())
            .collect();
        let hf = howell_form(&gens, 8, 2);
        let err = hf
            .min_weight_coset(
                &[0; 8],
                &[1; 8],
                8,
                &SearchLimits {
                    exhaustive_cap: 4,
                    node_cap: 5,
                },
            )
            .unwrap_err();
        assert!(matches!(err, AlgebraError::CapExceeded { .. }));
    }

    #[test]
    fn lex_min_of_coset() {
        let hf = howell_form(&[vec![1, 1, 0], vec![0, 1, 1]], 3, 2);
        assert_eq!(hf.lex_min(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(element_order(&[2, 4], 6), 3);
    }
}
