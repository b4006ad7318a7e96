//! Exhaustive reference computations for small instances.
//!
//! Everything here enumerates `Z_d^E` directly and reads faces as triples
//! `(a, b, a+b)`, without going through the linear-algebra layer.

use crate::complex::ChainComplex;

/// `d^{|E|}`, or `None` when it overflows `usize`.
pub fn space_size(c: &ChainComplex) -> Option<usize> {
    (c.modulus() as usize).checked_pow(c.edge_count() as u32)
}

fn assignments(m: usize, d: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (d as usize).pow(m as u32);
    (0..total).map(move |mut i| {
        let mut s = vec![0u64; m];
        for v in s.iter_mut() {
            *v = (i % d as usize) as u64;
            i /= d as usize;
        }
        s
    })
}

fn ds(c: &ChainComplex, s: &[u64], f: usize) -> u64 {
    let d = c.modulus();
    let face = c.faces()[f];
    (s[face.a] + s[face.b] + d - s[face.sum]) % d
}

fn moved(c: &ChainComplex, perm: &[usize], f: usize) -> usize {
    let face = c.faces()[f];
    c.faces()
        .iter()
        .position(|g| g.a == perm[face.a] && g.b == perm[face.b])
        .expect("action maps faces to faces")
}

/// All `𝔰` with `d𝔰 = −β`.
pub fn lambda(c: &ChainComplex) -> Vec<Vec<u64>> {
    let d = c.modulus();
    let beta = c.beta().values;
    assignments(c.edge_count(), d)
        .filter(|s| (0..c.faces().len()).all(|f| (ds(c, s, f) + beta[f]) % d == 0))
        .collect()
}

/// All `𝔰` with `d𝔰(qf) − d𝔰(f) = −(β(qf) − β(f))` for every `q`, `f`.
pub fn lambda_q(c: &ChainComplex, action: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let d = c.modulus();
    let beta = c.beta().values;
    let moves: Vec<Vec<usize>> = action
        .iter()
        .map(|p| (0..c.faces().len()).map(|f| moved(c, p, f)).collect())
        .collect();
    assignments(c.edge_count(), d)
        .filter(|s| {
            let dsv: Vec<u64> = (0..c.faces().len()).map(|f| ds(c, s, f)).collect();
            moves.iter().all(|mv| {
                mv.iter()
                    .enumerate()
                    .all(|(f, &g)| (dsv[g] + beta[g] + 2 * d - dsv[f] - beta[f]) % d == 0)
            })
        })
        .collect()
}

/// `min_𝔰 ℍ(χ, 𝔰|_{E_0})`, `None` for an empty set.
pub fn hamming(chi: &[u64], members: &[Vec<u64>], e0: &[usize]) -> Option<usize> {
    members
        .iter()
        .map(|s| e0.iter().zip(chi).filter(|(&a, &v)| s[a] != v).count())
        .min()
}

/// `min_𝔰 ℍ(d^hχ, d^h𝔰)` over `Q × E_0`.
pub fn hamming_dh(chi: &[u64], members: &[Vec<u64>], action: &[Vec<usize>], e0: &[usize], d: u64) -> Option<usize> {
    let at = |a: usize| e0.iter().position(|&x| x == a).expect("E_0 closed under the action");
    members
        .iter()
        .map(|s| {
            action
                .iter()
                .flat_map(|p| e0.iter().map(move |&a| (p[a], a)))
                .filter(|&(qa, a)| (chi[at(qa)] + d - chi[at(a)]) % d != (s[qa] + d - s[a]) % d)
                .count()
        })
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let all: Vec<Vec<u64>> = assignments(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1], vec![1, 0]);
        assert_eq!(all[3], vec![0, 1]);
    }
}
