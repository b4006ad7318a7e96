//! Value assignments compatible with `β`, their symmetry-relaxed superset,
//! and Hamming distances from a restricted assignment `χ` to either set.

use thiserror::Error;

use crate::algebra::zmod::{add_mod, mul_mod, neg_mod, sub_mod};
use crate::algebra::{howell_form, solve_mod_d, AffineSolutionSet, AlgebraError, SearchLimits, ZdMatrix};
use crate::complex::{ChainComplex, ComplexError, RelativeComplex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssignmentError {
    #[error("functions have different domains ({0} vs {1} points)")]
    DomainMismatch(usize, usize),
    #[error("the action sends face {0} outside the complex")]
    ActionInconsistent(String),
    #[error("the action does not preserve E_0 (moves {0} outside it)")]
    E0NotPreserved(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompatibleKind {
    /// `d𝔰 = −β`
    Lambda,
    /// `d^v d^h 𝔰 = −d^h β`
    LambdaQ,
}

/// Solution set of one of the defining linear systems, together with the
/// system itself for re-substitution.
#[derive(Clone, Debug)]
pub struct CompatibleSet {
    pub kind: CompatibleKind,
    pub solution: AffineSolutionSet,
    system: ZdMatrix,
    rhs: Vec<u64>,
}

impl CompatibleSet {
    pub fn is_empty(&self) -> bool {
        self.solution.is_empty()
    }

    /// `log_d |set|`.
    pub fn log_size(&self) -> f64 {
        self.solution.log_size()
    }

    pub fn size(&self) -> Option<u128> {
        self.solution.size()
    }

    /// Whether `s` satisfies the defining system.
    pub fn satisfies(&self, s: &[u64]) -> bool {
        s.len() == self.system.cols() && self.system.mul_vec(s).map_or(false, |v| v == self.rhs)
    }

    pub fn system(&self) -> &ZdMatrix {
        &self.system
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }
}

/// `Λ̄ = { 𝔰 : 𝔰(a) + 𝔰(b) − 𝔰(a+b) = −β(a,b) on every face }`.
pub fn beta_compatible_set(c: &ChainComplex) -> Result<CompatibleSet, AssignmentError> {
    let d = c.modulus();
    let system = c.boundary2().transpose();
    let rhs: Vec<u64> = c.beta().values.iter().map(|&v| neg_mod(v, d)).collect();
    let solution = solve_mod_d(&system, &rhs)?;
    Ok(CompatibleSet {
        kind: CompatibleKind::Lambda,
        solution,
        system,
        rhs,
    })
}

/// Image of face `f` under the label permutation `perm`.
pub fn moved_face(c: &ChainComplex, perm: &[usize], f: usize) -> Result<usize, AssignmentError> {
    let face = c.faces()[f];
    c.face_position(perm[face.a], perm[face.b])
        .filter(|&g| c.faces()[g].sum == perm[face.sum])
        .ok_or_else(|| AssignmentError::ActionInconsistent(c.face_name(f)))
}

/// `Λ̄_Q`: solutions of `𝔰(∂ qf) − 𝔰(∂f) = −(β(qf) − β(f))` for every
/// `q` in `action` (given as label permutations) and every face `f`.
pub fn lambda_q_set(c: &ChainComplex, action: &[Vec<usize>]) -> Result<CompatibleSet, AssignmentError> {
    let d = c.modulus();
    let m = c.edge_count();
    let beta = c.beta().values;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for perm in action {
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            continue;
        }
        for f in 0..c.faces().len() {
            let g = moved_face(c, perm, f)?;
            let mut row = vec![0u64; m];
            for (e, k) in c.face_boundary(g) {
                row[e] = add_mod(row[e], k, d);
            }
            for (e, k) in c.face_boundary(f) {
                row[e] = sub_mod(row[e], k, d);
            }
            rows.push(row);
            rhs.push(neg_mod(sub_mod(beta[g], beta[f], d), d));
        }
    }
    let system = ZdMatrix::from_rows(&rows, m, d)?;
    let solution = solve_mod_d(&system, &rhs)?;
    Ok(CompatibleSet {
        kind: CompatibleKind::LambdaQ,
        solution,
        system,
        rhs,
    })
}

/// Number of points where `f` and `g` differ.
pub fn hamming(f: &[u64], g: &[u64]) -> Result<usize, AssignmentError> {
    if f.len() != g.len() {
        return Err(AssignmentError::DomainMismatch(f.len(), g.len()));
    }
    Ok(f.iter().zip(g).filter(|(a, b)| a != b).count())
}

/// Minimum Hamming distance, or the empty-set sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(Closest),
    /// The compatible set is empty: a state-independent obstruction, for
    /// which the distance-based thresholds are undefined.
    EmptySet,
}

impl Distance {
    pub fn value(&self) -> Option<usize> {
        match self {
            Distance::Finite(c) => Some(c.distance),
            Distance::EmptySet => None,
        }
    }

    pub fn closest(&self) -> Option<&Closest> {
        match self {
            Distance::Finite(c) => Some(c),
            Distance::EmptySet => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closest {
    pub distance: usize,
    /// Image of the minimiser (restriction to `E_0`, or `d^h𝔰` on `Q × E_0`).
    pub image: Vec<u64>,
    /// A full member attaining the minimum.
    pub member: Vec<u64>,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Minimise `hamming(target, L·𝔰)` over `𝔰` in `set`, where each row of
/// `map` is a sparse linear form over the variables.
///
/// Ties go to the lexicographically smallest image, then to the
/// lexicographically smallest member.
pub fn min_distance_under_map(
    set: &AffineSolutionSet,
    map: &[Vec<(usize, u64)>],
    target: &[u64],
    limits: &SearchLimits,
) -> Result<Distance, AssignmentError> {
    let Some(p) = &set.particular else {
        return Ok(Distance::EmptySet);
    };
    if map.len() != target.len() {
        return Err(AssignmentError::DomainMismatch(map.len(), target.len()));
    }
    let d = set.modulus;
    let apply = |v: &[u64]| -> Vec<u64> {
        map.iter()
            .map(|row| row.iter().fold(0, |acc, &(i, k)| add_mod(acc, mul_mod(k, v[i], d), d)))
            .collect()
    };
    let extend = |v: &[u64]| -> Vec<u64> {
        let mut out = apply(v);
        out.extend_from_slice(v);
        out
    };
    let w = map.len();
    let gens: Vec<Vec<u64>> = set.kernel.iter().map(|k| extend(k)).collect();
    let form = howell_form(&gens, w + p.len(), d);
    let best = form.min_weight_coset(&extend(p), target, w, limits)?;
    Ok(Distance::Finite(Closest {
        distance: best.distance,
        image: best.point[..w].to_vec(),
        member: best.point[w..].to_vec(),
        exhaustive: best.exhaustive,
        nodes: best.nodes,
    }))
}

/// The coordinate projection onto `E_0`.
pub fn restriction_map(e0: &[usize]) -> Vec<Vec<(usize, u64)>> {
    e0.iter().map(|&e| vec![(e, 1)]).collect()
}

/// `ℍ(χ, Λ)`: the smallest number of points of `E_0` on which `χ` and a
/// member's restriction disagree.
pub fn hamming_to_set(
    chi: &[u64],
    set: &CompatibleSet,
    e0: &[usize],
    limits: &SearchLimits,
) -> Result<Distance, AssignmentError> {
    if chi.len() != e0.len() {
        return Err(AssignmentError::DomainMismatch(chi.len(), e0.len()));
    }
    let d = set.solution.modulus;
    let target: Vec<u64> = chi.iter().map(|v| v % d).collect();
    min_distance_under_map(&set.solution, &restriction_map(e0), &target, limits)
}

/// `(q, a) ↦ position of qa in e0`, q-major.
fn e0_orbit_positions(action: &[Vec<usize>], e0: &[usize], c: &ChainComplex) -> Result<Vec<Vec<usize>>, AssignmentError> {
    action
        .iter()
        .map(|perm| {
            e0.iter()
                .map(|&a| {
                    e0.iter()
                        .position(|&b| b == perm[a])
                        .ok_or_else(|| AssignmentError::E0NotPreserved(c.edge_name(a).to_string()))
                })
                .collect()
        })
        .collect()
}

/// `d^hχ(q, a) = χ(qa) − χ(a)` on `Q × E_0`, q-major.
pub fn dh_of_restricted(
    chi: &[u64],
    action: &[Vec<usize>],
    e0: &[usize],
    c: &ChainComplex,
) -> Result<Vec<u64>, AssignmentError> {
    if chi.len() != e0.len() {
        return Err(AssignmentError::DomainMismatch(chi.len(), e0.len()));
    }
    let d = c.modulus();
    let pos = e0_orbit_positions(action, e0, c)?;
    Ok(pos
        .iter()
        .flat_map(|row| row.iter().enumerate().map(|(i, &j)| sub_mod(chi[j], chi[i], d)))
        .collect())
}

/// The linear map `𝔰 ↦ d^h𝔰|_{Q × E_0}`, q-major.
pub fn dh_map(action: &[Vec<usize>], e0: &[usize], d: u64) -> Vec<Vec<(usize, u64)>> {
    let mut rows = Vec::new();
    for perm in action {
        for &a in e0 {
            let qa = perm[a];
            if qa == a {
                rows.push(Vec::new());
            } else {
                rows.push(vec![(qa, 1), (a, d - 1)]);
            }
        }
    }
    rows
}

/// `ℍ(d^hχ, d^h Λ̄_Q)` over `Q × E_0`.
pub fn hamming_dh(
    chi: &[u64],
    set: &CompatibleSet,
    action: &[Vec<usize>],
    e0: &[usize],
    c: &ChainComplex,
    limits: &SearchLimits,
) -> Result<Distance, AssignmentError> {
    let target = dh_of_restricted(chi, action, e0, c)?;
    min_distance_under_map(&set.solution, &dh_map(action, e0, c.modulus()), &target, limits)
}

/// Outcome of comparing the classes `[β_χ]` and `[β_χ′]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceVerdict {
    pub classes_equal: bool,
    pub distance: Option<usize>,
    pub distance_other: Option<usize>,
    /// False only if the classes agree but the distances do not.
    pub consistent: bool,
}

/// Decide `[β_χ] = [β_χ′]` by solving `ds = β_χ′ − β_χ` over
/// `C^1(E, E_0)`, and compare `ℍ(χ, Λ̄)` with `ℍ(χ′, Λ̄)`.
pub fn invariance_check_parity(
    chi: &[u64],
    chi_other: &[u64],
    rc: &RelativeComplex,
    lambda: &CompatibleSet,
    limits: &SearchLimits,
) -> Result<InvarianceVerdict, AssignmentError> {
    let c = rc.parent();
    let beta = c.beta();
    let b1 = rc.beta_chi(&beta, chi)?;
    let b2 = rc.beta_chi(&beta, chi_other)?;
    // ds = b2 − b1  ⇔  ds = −(b1 − b2)
    let classes_equal = rc.class_trivial(&b1.sub(&b2))?.trivial;
    let h1 = hamming_to_set(chi, lambda, rc.e0(), limits)?.value();
    let h2 = hamming_to_set(chi_other, lambda, rc.e0(), limits)?.value();
    Ok(InvarianceVerdict {
        classes_equal,
        distance: h1,
        distance_other: h2,
        consistent: !classes_equal || h1 == h2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{WeylBackend, DEFAULT_VOLUME_CAP};
    use crate::weyl::{Label, LabelSet, PhaseConvention};

    fn complex(labels: &[&str], n: usize) -> ChainComplex {
        let set = LabelSet::new(2, n, labels.iter().map(|s| Label::parse(s, n, 2).unwrap()).collect()).unwrap();
        ChainComplex::build(&WeylBackend::new(set, PhaseConvention::natural()), DEFAULT_VOLUME_CAP).unwrap()
    }

    #[test]
    fn no_faces_means_every_assignment() {
        let c = complex(&["X1", "Z2", "Y3"], 3);
        let set = beta_compatible_set(&c).unwrap();
        assert_eq!(set.size(), Some(8));
    }

    #[test]
    fn hamming_basics() {
        assert_eq!(hamming(&[0, 1, 1, 1], &[0, 1, 1, 1]).unwrap(), 0);
        assert_eq!(hamming(&[0, 1, 1, 1], &[1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(hamming(&[0, 0, 0, 0], &[1, 1, 1, 1]).unwrap(), 4);
        assert!(hamming(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn realizable_chi_has_distance_zero() {
        let c = complex(&["X1", "X2", "X1X2"], 2);
        let set = beta_compatible_set(&c).unwrap();
        // 𝔰 = (1, 1, 0) is a member, so χ = 𝔰|_{X1, X1X2} is at distance 0.
        assert!(set.satisfies(&[1, 1, 0]));
        let h = hamming_to_set(&[1, 0], &set, &[0, 2], &SearchLimits::default()).unwrap();
        assert_eq!(h.value(), Some(0));
    }

    #[test]
    fn trivial_action_gives_everything() {
        let c = complex(&["X1", "X2", "X1X2"], 2);
        let set = lambda_q_set(&c, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(set.size(), Some(8));
    }
}
