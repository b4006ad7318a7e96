//! Smith normal form over a principal ideal ring.

use super::ring::EuclideanRing;

/// `left · A · right = diagonal`, with `left` and `right` invertible and the
/// diagonal entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub left: Vec<Vec<E>>,
    pub diagonal: Vec<Vec<E>>,
    pub right: Vec<Vec<E>>,
    /// Nonzero diagonal entries in order; their count is the rank.
    pub invariants: Vec<E>,
}

impl<E: Clone> SmithForm<E> {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

fn identity<R: EuclideanRing>(ring: &R, n: usize) -> Vec<Vec<R::Elem>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

/// rows (i, k) ← [[s, t], [u, v]] · rows (i, k)
fn combine_rows<R: EuclideanRing>(
    ring: &R,
    m: &mut [Vec<R::Elem>],
    i: usize,
    k: usize,
    coeffs: [&R::Elem; 4],
) {
    let [s, t, u, v] = coeffs;
    for j in 0..m[i].len() {
        let (a, b) = (m[i][j].clone(), m[k][j].clone());
        m[i][j] = ring.add(&ring.mul(s, &a), &ring.mul(t, &b));
        m[k][j] = ring.add(&ring.mul(u, &a), &ring.mul(v, &b));
    }
}

/// columns (i, k) ← columns (i, k) · [[s, u], [t, v]]
fn combine_cols<R: EuclideanRing>(
    ring: &R,
    m: &mut [Vec<R::Elem>],
    i: usize,
    k: usize,
    coeffs: [&R::Elem; 4],
) {
    let [s, t, u, v] = coeffs;
    for row in m.iter_mut() {
        let (a, b) = (row[i].clone(), row[k].clone());
        row[i] = ring.add(&ring.mul(s, &a), &ring.mul(t, &b));
        row[k] = ring.add(&ring.mul(u, &a), &ring.mul(v, &b));
    }
}

/// Compute the Smith normal form of the `rows × cols` matrix `a`.
pub fn smith_normal_form<R: EuclideanRing>(
    ring: &R,
    a: &[Vec<R::Elem>],
    cols: usize,
) -> SmithForm<R::Elem> {
    let rows = a.len();
    let mut d: Vec<Vec<R::Elem>> = a.to_vec();
    let mut left = identity(ring, rows);
    let mut right = identity(ring, cols);
    let zero = ring.zero();
    let one = ring.one();
    let mut invariants = Vec::new();

    for t in 0..rows.min(cols) {
        // Cheapest nonzero pivot in the trailing block.
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !ring.is_zero(v) {
                    let c = ring.pivot_cost(v);
                    if best.map_or(true, |(bc, _, _)| c < bc) {
                        best = Some((c, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        d.swap(t, pi);
        left.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in right.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Clear column t below the pivot with row operations.
            for i in t + 1..rows {
                if ring.is_zero(&d[i][t]) {
                    continue;
                }
                if let Some(q) = ring.divide(&d[i][t], &d[t][t]) {
                    let nq = ring.neg(&q);
                    combine_rows(ring, &mut d, t, i, [&one, &zero, &nq, &one]);
                    combine_rows(ring, &mut left, t, i, [&one, &zero, &nq, &one]);
                } else {
                    let bz = ring.bezout(&d[t][t], &d[i][t]);
                    let nb = ring.neg(&bz.b_over_gcd);
                    let c = [&bz.s, &bz.t, &nb, &bz.a_over_gcd];
                    combine_rows(ring, &mut d, t, i, c);
                    combine_rows(ring, &mut left, t, i, c);
                }
            }
            // Clear row t right of the pivot with column operations.
            let mut column_dirty = false;
            for j in t + 1..cols {
                if ring.is_zero(&d[t][j]) {
                    continue;
                }
                if let Some(q) = ring.divide(&d[t][j], &d[t][t]) {
                    let nq = ring.neg(&q);
                    combine_cols(ring, &mut d, t, j, [&one, &zero, &nq, &one]);
                    combine_cols(ring, &mut right, t, j, [&one, &zero, &nq, &one]);
                } else {
                    let bz = ring.bezout(&d[t][t], &d[t][j]);
                    let nb = ring.neg(&bz.b_over_gcd);
                    let c = [&bz.s, &bz.t, &nb, &bz.a_over_gcd];
                    combine_cols(ring, &mut d, t, j, c);
                    combine_cols(ring, &mut right, t, j, c);
                    column_dirty = true;
                }
            }
            if column_dirty && (t + 1..rows).any(|i| !ring.is_zero(&d[i][t])) {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !ring.divides(&d[t][t], &d[i][j]))
            });
            match offender {
                Some(i) => {
                    combine_rows(ring, &mut d, t, i, [&one, &one, &zero, &one]);
                    combine_rows(ring, &mut left, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }

        let (unit, canonical) = ring.normalize(&d[t][t]);
        for j in 0..cols {
            d[t][j] = ring.mul(&unit, &d[t][j]);
        }
        for j in 0..rows {
            left[t][j] = ring.mul(&unit, &left[t][j]);
        }
        debug_assert_eq!(d[t][t], canonical);
        invariants.push(canonical);
    }

    SmithForm {
        left,
        diagonal: d,
        right,
        invariants,
    }
}

/// Plain matrix product over `ring`.
pub fn mat_mul<R: EuclideanRing>(
    ring: &R,
    a: &[Vec<R::Elem>],
    b: &[Vec<R::Elem>],
    b_cols: usize,
) -> Vec<Vec<R::Elem>> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ring.zero(), |acc, (x, brow)| ring.add(&acc, &ring.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Determinant by cofactor-free fraction-free elimination (Bareiss) over the
/// integers. Used to certify unimodularity of the transforms.
pub fn integer_determinant(m: &[Vec<num_bigint::BigInt>]) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{IntegerRing, ResidueRing};
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn check_integer(a: &[Vec<BigInt>], cols: usize) -> SmithForm<BigInt> {
        let ring = IntegerRing::<BigInt>::new();
        let snf = smith_normal_form(&ring, a, cols);
        let uav = mat_mul(&ring, &mat_mul(&ring, &snf.left, a, cols), &snf.right, cols);
        assert_eq!(uav, snf.diagonal);
        assert_eq!(integer_determinant(&snf.left).abs(), BigInt::from(1));
        assert_eq!(integer_determinant(&snf.right).abs(), BigInt::from(1));
        for w in snf.invariants.windows(2) {
            assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        for (i, row) in snf.diagonal.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    assert_eq!(*v, BigInt::from(0));
                }
            }
        }
        snf
    }

    #[test]
    fn two_by_two_example() {
        let snf = check_integer(&big(&[&[2, 4], &[6, 8]]), 2);
        assert_eq!(snf.invariants, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let snf = check_integer(&big(&[&[1, 0], &[0, 1]]), 2);
        assert_eq!(snf.diagonal, big(&[&[1, 0], &[0, 1]]));
        let snf = check_integer(&big(&[&[0]]), 1);
        assert_eq!(snf.diagonal, big(&[&[0]]));
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn rectangular_matrix() {
        let snf = check_integer(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(
            snf.invariants,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        check_integer(&big(&[&[3, 1, 4, 1], &[5, 9, 2, 6]]), 4);
        check_integer(&big(&[&[3, 1], &[4, 1], &[5, 9]]), 2);
    }

    #[test]
    fn residue_ring_smith_form() {
        let ring = ResidueRing::new(12);
        let a = vec![vec![4, 6, 0], vec![2, 3, 9], vec![8, 0, 6]];
        let snf = smith_normal_form(&ring, &a, 3);
        let uav = mat_mul(&ring, &mat_mul(&ring, &snf.left, &a, 3), &snf.right, 3);
        assert_eq!(uav, snf.diagonal);
        for w in snf.invariants.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for v in &snf.invariants {
            assert_eq!(12 % v, 0, "invariants are divisors of d");
        }
    }
}
