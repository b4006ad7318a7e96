//! Symmetries of a label set, the quotient `Q = H/N`, the cocycle `Φ_χ`
//! with values in `U_0 = B_1^*`, and triviality of its class in
//! `H^1(Q, U_0)`.
//!
//! A symmetry `g` acts by `g(T_a) = ω^{Φ̃_g(a)} T_{ga}`. Composition is
//! `(gh)(T_a) = g(h(T_a))`, so `Φ̃_{gh}(a) = Φ̃_g(ha) + Φ̃_h(a)`.
//!
//! Functionals on `B_1 = ∂_R C_2(E, E_0)` are stored by their values on the
//! generators `∂_R f`, one entry per face.

use std::collections::{BTreeSet, VecDeque};

use num_complex::Complex;
use thiserror::Error;

use crate::algebra::zmod::{add_mod, mul_mod, sub_mod};
use crate::algebra::{solve_mod_d, AlgebraError, ZdMatrix};
use crate::assignments::{moved_face, AssignmentError};
use crate::complex::{ChainComplex, ComplexError, RelativeComplex};
use crate::matrix::CMatrix;
use crate::scalar::{Rational, Scalar};
use crate::weyl::{scalar_phase, Label, LabelSet, PhaseConvention, WeylError};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("permutation is not a bijection of the {0} labels")]
    NotBijection(usize),
    #[error("face law fails on {0}")]
    FaceLaw(String),
    #[error("the image of {0} is not (a phase times) a label of E")]
    NoImage(String),
    #[error("matrix realisation disagrees with the element on {0}")]
    MatrixMismatch(String),
    #[error("group closure exceeded {0} elements")]
    GroupCap(usize),
    #[error("H moves {0} outside E_0")]
    E0NotPreserved(String),
    #[error("h·χ ≠ χ at {0}")]
    ChiNotInvariant(String),
    #[error("Φ̃_χ does not vanish on {0}, so Φ_χ is not defined on B_1")]
    IllDefined(String),
    #[error("identity fails: {0}")]
    Identity(String),
    #[error(transparent)]
    Assignment(#[from] AssignmentError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A label permutation with its phase function `Φ̃_g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetryElement {
    pub perm: Vec<usize>,
    pub phase: Vec<u64>,
}

impl SymmetryElement {
    pub fn identity(m: usize) -> Self {
        Self {
            perm: (0..m).collect(),
            phase: vec![0; m],
        }
    }

    pub fn new(perm: Vec<usize>, phase: Vec<u64>) -> Result<Self, SymmetryError> {
        let m = perm.len();
        let image: BTreeSet<usize> = perm.iter().copied().collect();
        if phase.len() != m || image.len() != m || image.iter().any(|&i| i >= m) {
            return Err(SymmetryError::NotBijection(m));
        }
        Ok(Self { perm, phase })
    }

    pub fn fixes_every_label(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, d: u64) -> Self {
        let perm = other.perm.iter().map(|&a| self.perm[a]).collect();
        let phase = other
            .perm
            .iter()
            .zip(&other.phase)
            .map(|(&ha, &ph)| add_mod(self.phase[ha], ph, d))
            .collect();
        Self { perm, phase }
    }

    /// `(g·𝔰)(a) = 𝔰(ga) + Φ̃_g(a)`.
    pub fn transform_assignment(&self, s: &[u64], d: u64) -> Vec<u64> {
        self.perm
            .iter()
            .zip(&self.phase)
            .map(|(&ga, &ph)| add_mod(s[ga], ph, d))
            .collect()
    }

    /// Read perm and phase off the conjugation `T_a ↦ U T_a U†`.
    pub fn from_matrix<T: Scalar>(u: &CMatrix<T>, set: &LabelSet, eta: &PhaseConvention) -> Result<Self, SymmetryError> {
        let d = set.modulus();
        let ud = u.adjoint();
        let mats: Vec<CMatrix<T>> = set
            .labels()
            .iter()
            .map(|l| eta.matrix::<T>(l, d))
            .collect::<Result<_, _>>()?;
        let mut perm = Vec::with_capacity(set.len());
        let mut phase = Vec::with_capacity(set.len());
        for (a, ta) in mats.iter().enumerate() {
            let img = u.mul(ta).and_then(|m| m.mul(&ud)).ok_or(SymmetryError::NotBijection(set.len()))?;
            let hit = mats.iter().enumerate().find_map(|(b, tb)| {
                let ratio = img.mul(&tb.adjoint())?;
                scalar_phase(&ratio, d).map(|k| (b, k))
            });
            let (b, k) = hit.ok_or_else(|| SymmetryError::NoImage(set.get(a).to_string()))?;
            perm.push(b);
            phase.push(k);
        }
        Self::new(perm, phase)
    }
}

/// `Φ̃_g(a+b) + β(ga, gb) = Φ̃_g(a) + Φ̃_g(b) + β(a, b)` on every face.
pub fn verify_symmetry(g: &SymmetryElement, c: &ChainComplex) -> Result<(), SymmetryError> {
    let d = c.modulus();
    if g.perm.len() != c.edge_count() {
        return Err(SymmetryError::NotBijection(c.edge_count()));
    }
    let beta = c.beta().values;
    for (f, face) in c.faces().iter().enumerate() {
        let gf = moved_face(c, &g.perm, f).map_err(|_| SymmetryError::FaceLaw(c.face_name(f)))?;
        let lhs = add_mod(g.phase[face.sum], beta[gf], d);
        let rhs = add_mod(add_mod(g.phase[face.a], g.phase[face.b], d), beta[f], d);
        if lhs != rhs {
            return Err(SymmetryError::FaceLaw(c.face_name(f)));
        }
    }
    Ok(())
}

/// [`verify_symmetry`] plus agreement with a matrix realisation.
pub fn verify_with_matrix<T: Scalar>(
    g: &SymmetryElement,
    c: &ChainComplex,
    u: &CMatrix<T>,
    set: &LabelSet,
    eta: &PhaseConvention,
) -> Result<(), SymmetryError> {
    let m = SymmetryElement::from_matrix(u, set, eta)?;
    if let Some(a) = (0..set.len()).find(|&a| m.perm[a] != g.perm[a] || m.phase[a] != g.phase[a]) {
        return Err(SymmetryError::MatrixMismatch(set.get(a).to_string()));
    }
    verify_symmetry(g, c)
}

/// Finite group generated by a list of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    modulus: u64,
    /// Sorted; the identity comes first.
    elements: Vec<SymmetryElement>,
}

impl SymmetryGroup {
    /// Breadth-first closure under composition with the generators.
    pub fn generate(gens: &[SymmetryElement], m: usize, d: u64, cap: usize) -> Result<Self, SymmetryError> {
        let id = SymmetryElement::identity(m);
        let mut seen: BTreeSet<SymmetryElement> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                if g.perm.len() != m {
                    return Err(SymmetryError::NotBijection(m));
                }
                let y = g.compose(&x, d);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(SymmetryError::GroupCap(cap));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self {
            modulus: d,
            elements: seen.into_iter().collect(),
        })
    }

    pub fn elements(&self) -> &[SymmetryElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Every element verifies, and `Φ̃_{gh}(a) = Φ̃_g(ha) + Φ̃_h(a)` stays
    /// inside the list.
    pub fn verify(&self, c: &ChainComplex) -> Result<(), SymmetryError> {
        for g in &self.elements {
            verify_symmetry(g, c)?;
        }
        let set: BTreeSet<&SymmetryElement> = self.elements.iter().collect();
        for g in &self.elements {
            for h in &self.elements {
                if !set.contains(&g.compose(h, self.modulus)) {
                    return Err(SymmetryError::Identity("closure under composition".into()));
                }
            }
        }
        Ok(())
    }

    /// `H` preserves `E_0` and `h·χ = χ` there.
    pub fn check_fixes_chi(&self, rc: &RelativeComplex, chi: &[u64]) -> Result<(), SymmetryError> {
        let c = rc.parent();
        let d = self.modulus;
        let chibar = rc.extend_by_zero(chi)?.values;
        for h in &self.elements {
            for &a in rc.e0() {
                if !rc.in_e0(h.perm[a]) {
                    return Err(SymmetryError::E0NotPreserved(c.edge_name(a).to_string()));
                }
                if add_mod(chibar[h.perm[a]], h.phase[a], d) != chibar[a] {
                    return Err(SymmetryError::ChiNotInvariant(c.edge_name(a).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// `Q = H/N` with `N` the elements fixing every label. Cosets are the
/// classes of equal permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAction {
    /// Coset representatives' permutations, sorted; the identity first.
    perms: Vec<Vec<usize>>,
    /// Indices into the group's elements, per coset.
    cosets: Vec<Vec<usize>>,
    /// `θ(q)`: index into the group's elements.
    section: Vec<usize>,
    kernel_size: usize,
}

impl QuotientAction {
    /// Uses the lexicographically smallest element of each coset as `θ`.
    pub fn new(group: &SymmetryGroup) -> Self {
        let mut perms: Vec<Vec<usize>> = group.elements.iter().map(|g| g.perm.clone()).collect();
        perms.sort();
        perms.dedup();
        let cosets: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| (0..group.len()).filter(|&i| &group.elements[i].perm == p).collect())
            .collect();
        // Elements are sorted, so the first member of each coset is its lex-min.
        let section = cosets.iter().map(|c| c[0]).collect();
        let kernel_size = cosets.first().map_or(0, Vec::len);
        Self {
            perms,
            cosets,
            section,
            kernel_size,
        }
    }

    /// Replace the representative of coset `q` by its `k`-th member.
    pub fn with_section(&self, q: usize, k: usize) -> Self {
        let mut out = self.clone();
        out.section[q] = self.cosets[q][k % self.cosets[q].len()];
        out
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// `|N|`.
    pub fn kernel_size(&self) -> usize {
        self.kernel_size
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }
}

/// `Φ̃_χ(g, a) = Φ̃_g(a) + χ̄(ga) − χ̄(a)`, indexed `[g][edge]` in group
/// order.
pub fn phi_chi_tilde(group: &SymmetryGroup, rc: &RelativeComplex, chi: &[u64]) -> Result<Vec<Vec<u64>>, SymmetryError> {
    group.check_fixes_chi(rc, chi)?;
    let d = group.modulus;
    let chibar = rc.extend_by_zero(chi)?.values;
    Ok(group
        .elements
        .iter()
        .map(|g| {
            (0..chibar.len())
                .map(|a| add_mod(g.phase[a], sub_mod(chibar[g.perm[a]], chibar[a], d), d))
                .collect()
        })
        .collect())
}

/// Check `Φ̃_χ|_{E_0} = 0`, `d^hΦ̃_χ = 0` on every `(g_1, g_2, a)` and
/// `d^vΦ̃_χ = d^hβ_χ` on every `(g, face)`.
pub fn check_lemma_identities(
    group: &SymmetryGroup,
    rc: &RelativeComplex,
    chi: &[u64],
    phi: &[Vec<u64>],
) -> Result<(), SymmetryError> {
    let c = rc.parent();
    let d = group.modulus;
    let els = &group.elements;
    for (gi, g) in els.iter().enumerate() {
        if let Some(&a) = rc.e0().iter().find(|&&a| phi[gi][a] != 0) {
            return Err(SymmetryError::Identity(format!("Φ̃_χ({gi}, {}) ≠ 0", c.edge_name(a))));
        }
        for (hi, h) in els.iter().enumerate() {
            let gh = g.compose(h, d);
            let ghi = els.binary_search(&gh).map_err(|_| SymmetryError::Identity("closure".into()))?;
            for a in 0..c.edge_count() {
                // Φ̃(gh, a) = Φ̃(g, ha) + Φ̃(h, a)
                if phi[ghi][a] != add_mod(phi[gi][h.perm[a]], phi[hi][a], d) {
                    return Err(SymmetryError::Identity(format!("d^hΦ̃_χ({gi}, {hi}, {})", c.edge_name(a))));
                }
            }
        }
    }
    let beta_chi = rc.beta_chi(&c.beta(), chi)?.values;
    for (gi, g) in els.iter().enumerate() {
        for (f, face) in c.faces().iter().enumerate() {
            let gf = moved_face(c, &g.perm, f)?;
            let dv = sub_mod(add_mod(phi[gi][face.a], phi[gi][face.b], d), phi[gi][face.sum], d);
            let dh = sub_mod(beta_chi[gf], beta_chi[f], d);
            if dv != dh {
                return Err(SymmetryError::Identity(format!("d^vΦ̃_χ = d^hβ_χ at ({gi}, {})", c.face_name(f))));
            }
        }
    }
    Ok(())
}

/// `U_0 = B_1^*` with `B_1 = ∂_R C_2(E, E_0)`.
#[derive(Clone, Debug)]
pub struct U0Space {
    boundary: ZdMatrix,
    rank: usize,
    log_size: f64,
}

impl U0Space {
    pub fn new(rc: &RelativeComplex) -> Result<Self, SymmetryError> {
        let boundary = rc.relative_boundary2();
        let d = boundary.modulus();
        let gens: Vec<Vec<u64>> = boundary.transpose().to_rows();
        let form = crate::algebra::howell_form(&gens, boundary.rows(), d);
        let rank = form.orders().iter().filter(|&&o| o > 1).count();
        // |B_1^*| = |B_1| because Z_d is self-injective.
        let log_size = form.log_size();
        Ok(Self {
            boundary,
            rank,
            log_size,
        })
    }

    /// Number of cyclic factors of `B_1` (its dimension for prime `d`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `log_d |U_0|`.
    pub fn log_size(&self) -> f64 {
        self.log_size
    }

    /// `∂_R`, `|E \ E_0| × |F|`.
    pub fn boundary(&self) -> &ZdMatrix {
        &self.boundary
    }
}

/// `Φ_χ(q)`: the functional `∂_R f ↦ Φ̃_χ(θ(q), ∂_R f)`, as a face vector.
pub fn phi_chi(
    action: &QuotientAction,
    phi_tilde: &[Vec<u64>],
    rc: &RelativeComplex,
) -> Result<Vec<Vec<u64>>, SymmetryError> {
    let c = rc.parent();
    let d = c.modulus();
    let mut out = Vec::with_capacity(action.len());
    for &g in &action.section {
        let cochain = &phi_tilde[g];
        if let Some(&a) = rc.e0().iter().find(|&&a| cochain[a] != 0) {
            return Err(SymmetryError::IllDefined(c.edge_name(a).to_string()));
        }
        out.push(
            (0..c.faces().len())
                .map(|f| {
                    c.face_boundary(f)
                        .into_iter()
                        .fold(0, |acc, (e, k)| add_mod(acc, mul_mod(k, cochain[e], d), d))
                })
                .collect(),
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Decision {
    pub trivial: bool,
    /// `u ∈ U_0` (face vector) with `Φ_χ(q) = q·u − u`.
    pub u: Option<Vec<u64>>,
    /// A relative 1-cochain `φ` with `u = dφ`.
    pub potential: Option<Vec<u64>>,
}

/// Solve `Φ_χ(q) = q·u − u` for `u ∈ U_0`, where `(q·u)(∂_R f) = u(∂_R qf)`.
///
/// Every `u` is `dφ` for a relative 1-cochain `φ`, so the unknowns are the
/// values of `φ` on `E \ E_0`.
pub fn h1_class_trivial(
    phi: &[Vec<u64>],
    action: &QuotientAction,
    rc: &RelativeComplex,
) -> Result<H1Decision, SymmetryError> {
    let c = rc.parent();
    let d = c.modulus();
    let surv = rc.surviving_edges();
    let col: Vec<Option<usize>> = (0..c.edge_count())
        .map(|e| surv.iter().position(|&x| x == e))
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (q, perm) in action.perms.iter().enumerate() {
        for f in 0..c.faces().len() {
            let qf = moved_face(c, perm, f)?;
            let mut row = vec![0u64; surv.len()];
            for (e, k) in c.face_boundary(qf) {
                if let Some(j) = col[e] {
                    row[j] = add_mod(row[j], k, d);
                }
            }
            for (e, k) in c.face_boundary(f) {
                if let Some(j) = col[e] {
                    row[j] = sub_mod(row[j], k, d);
                }
            }
            rows.push(row);
            rhs.push(phi[q][f]);
        }
    }
    let system = ZdMatrix::from_rows(&rows, surv.len(), d)?;
    let sol = solve_mod_d(&system, &rhs)?;
    Ok(match sol.particular {
        Some(p) => {
            let mut potential = vec![0; c.edge_count()];
            for (&e, &v) in surv.iter().zip(&p) {
                potential[e] = v;
            }
            let u = (0..c.faces().len())
                .map(|f| {
                    c.face_boundary(f)
                        .into_iter()
                        .fold(0, |acc, (e, k)| add_mod(acc, mul_mod(k, potential[e], d), d))
                })
                .collect();
            H1Decision {
                trivial: true,
                u: Some(u),
                potential: Some(potential),
            }
        }
        None => H1Decision {
            trivial: false,
            u: None,
            potential: None,
        },
    })
}

/// `[Φ_χ] = [Φ_χ′]`.
pub fn h1_classes_equal(
    phi: &[Vec<u64>],
    phi_other: &[Vec<u64>],
    action: &QuotientAction,
    rc: &RelativeComplex,
) -> Result<bool, SymmetryError> {
    let d = rc.parent().modulus();
    let diff: Vec<Vec<u64>> = phi
        .iter()
        .zip(phi_other)
        .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, d)).collect())
        .collect();
    Ok(h1_class_trivial(&diff, action, rc)?.trivial)
}

fn c(re: i64, im: i64) -> Complex<Rational> {
    Complex::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
}

fn single_qubit(m: [[Complex<Rational>; 2]; 2], site: usize, n: usize) -> CMatrix<Rational> {
    let one = CMatrix::<Rational>::identity(2);
    let gate = CMatrix::from_rows(m.iter().map(|r| r.to_vec()).collect()).expect("2×2");
    (0..n).fold(CMatrix::identity(1), |acc, j| acc.kron(if j == site { &gate } else { &one }))
}

/// The unitary `Z_1 · S_1 · S_2` on three qubits.
pub fn star_generator_matrix() -> CMatrix<Rational> {
    let s = [[c(1, 0), c(0, 0)], [c(0, 0), c(0, 1)]];
    let z = [[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]];
    single_qubit(z, 0, 3)
        .mul(&single_qubit(s.clone(), 0, 3))
        .and_then(|m| m.mul(&single_qubit(s, 1, 3)))
        .expect("8×8")
}

/// A symmetry of the Mermin star: `X_1 ↦ −Y_1`, `Y_1 ↦ X_1`, `X_2 ↦ Y_2`,
/// `Y_2 ↦ −X_2`, qubit 3 fixed. It swaps `XXX ↔ YYX` and `XYY ↔ YXY`.
pub fn derived_star_generator(set: &LabelSet, eta: &PhaseConvention) -> Result<(SymmetryElement, CMatrix<Rational>), SymmetryError> {
    let u = star_generator_matrix();
    let g = SymmetryElement::from_matrix(&u, set, eta)?;
    Ok((g, u))
}

/// Matrix of `η(a)` conjugated by `u`; helper for oracle tests.
pub fn conjugate<T: Scalar>(u: &CMatrix<T>, a: &Label, eta: &PhaseConvention, d: u64) -> Result<CMatrix<T>, SymmetryError> {
    let t = eta.matrix::<T>(a, d)?;
    Ok(u.mul(&t).and_then(|m| m.mul(&u.adjoint())).expect("square"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{WeylBackend, DEFAULT_VOLUME_CAP};

    fn complex(labels: &[&str], n: usize) -> (LabelSet, ChainComplex) {
        let set = LabelSet::new(2, n, labels.iter().map(|s| Label::parse(s, n, 2).unwrap()).collect()).unwrap();
        let c = ChainComplex::build(&WeylBackend::new(set.clone(), PhaseConvention::natural()), DEFAULT_VOLUME_CAP).unwrap();
        (set, c)
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(SymmetryElement::new(vec![0, 0], vec![0, 0]).is_err());
        assert!(SymmetryElement::new(vec![1, 0], vec![0]).is_err());
        assert!(SymmetryElement::new(vec![1, 0], vec![0, 1]).is_ok());
    }

    #[test]
    fn composition_adds_phases_along_the_orbit() {
        let g = SymmetryElement::new(vec![1, 2, 0], vec![1, 0, 0]).unwrap();
        let h = SymmetryElement::new(vec![2, 0, 1], vec![0, 1, 1]).unwrap();
        let gh = g.compose(&h, 2);
        assert_eq!(gh.perm, vec![0, 1, 2]);
        // Φ̃_{gh}(a) = Φ̃_g(ha) + Φ̃_h(a)
        assert_eq!(gh.phase, vec![0, 0, 1]);
        let s = [0, 1, 1];
        assert_eq!(gh.transform_assignment(&s, 2), g.compose(&h, 2).transform_assignment(&s, 2));
    }

    #[test]
    fn swap_of_qubits() {
        let (set, cx) = complex(&["X1", "X2", "X1X2", "Z1", "Z2", "Z1Z2"], 2);
        let swap = SymmetryElement::new(vec![1, 0, 2, 4, 3, 5], vec![0; 6]).unwrap();
        verify_symmetry(&swap, &cx).unwrap();
        let grp = SymmetryGroup::generate(&[swap.clone()], 6, 2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(grp.len(), 2);
        assert_eq!(grp.elements()[0], SymmetryElement::identity(6));
        let q = QuotientAction::new(&grp);
        assert_eq!((q.len(), q.kernel_size()), (2, 1));
        // The SWAP unitary realises the same element.
        let h = |i: usize, j: usize| if (i == 1 && j == 2) || (i == 2 && j == 1) || (i == j && (i == 0 || i == 3)) { 1 } else { 0 };
        let u = CMatrix::from_rows((0..4).map(|i| (0..4).map(|j| c(h(i, j), 0)).collect()).collect()).unwrap();
        assert_eq!(SymmetryElement::from_matrix(&u, &set, &PhaseConvention::natural()).unwrap(), swap);
    }

    #[test]
    fn broken_phase_is_rejected() {
        let (_, c) = complex(&["X1", "X2", "X1X2"], 2);
        let bad = SymmetryElement::new(vec![0, 1, 2], vec![1, 0, 0]).unwrap();
        assert!(matches!(verify_symmetry(&bad, &c), Err(SymmetryError::FaceLaw(_))));
    }

    #[test]
    fn group_cap() {
        let g = SymmetryElement::new(vec![1, 2, 0], vec![0; 3]).unwrap();
        assert!(matches!(SymmetryGroup::generate(&[g], 3, 2, 2), Err(SymmetryError::GroupCap(2))));
    }
}
