//! The chain complex `C_*(E)` of a label set, its relative version
//! `C_*(E, E_0)`, cochains and cohomology-class decisions.
//!
//! Degree 1 is spanned by the labels, degree 2 by ordered pairs `[a|b]` of
//! commuting labels with `a + b ∈ E`, degree 3 by triples `[a|b|c]` of
//! pairwise commuting labels with `a + b`, `b + c`, `a + b + c ∈ E`:
//!
//! ```text
//! ∂[a|b]   = [b] − [a+b] + [a]
//! ∂[a|b|c] = [b|c] − [a+b|c] + [a|b+c] − [a|b]
//! ```

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::zmod::{add_mod, mod_inverse, mul_mod, neg_mod, sub_mod};
use crate::algebra::{solve_mod_d, AlgebraError, ZdMatrix};
use crate::weyl::{beta_fast, beta_matrix, commutes, Label, LabelSet, PhaseConvention, WeylError};

pub const DEFAULT_VOLUME_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("more than {0} volumes")]
    VolumeCap(usize),
    #[error("coboundary of a degree-{0} cochain is not defined")]
    DegreeOverflow(u8),
    #[error("E_0 spans the face [{0}|{1}]; its complex must be one-dimensional")]
    E0NotOneDimensional(String, String),
    #[error("relative cochain is nonzero on {0} ∈ E_0")]
    NotRelative(String),
    #[error("cochain has {found} values, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("abstract backend: {0}")]
    Abstract(String),
}

/// What the complex needs to know about a set of labels.
pub trait LabelAlgebra {
    fn modulus(&self) -> u64;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn name(&self, i: usize) -> String;
    fn commutes(&self, i: usize, j: usize) -> bool;
    /// Index of `a_i + a_j` when it is an element of `E` and the pair commutes.
    fn face_sum(&self, i: usize, j: usize) -> Option<usize>;
    fn beta(&self, i: usize, j: usize) -> Result<u64, ComplexError>;
}

/// Weyl labels with a phase convention.
#[derive(Clone, Debug)]
pub struct WeylBackend {
    pub labels: LabelSet,
    pub eta: PhaseConvention,
    /// Cross-check every `β` against the explicit matrices.
    pub verify_with_matrices: bool,
}

impl WeylBackend {
    pub fn new(labels: LabelSet, eta: PhaseConvention) -> Self {
        let dim = (labels.modulus() as usize).saturating_pow(labels.qudits() as u32);
        Self {
            labels,
            eta,
            verify_with_matrices: dim <= 64,
        }
    }
}

impl LabelAlgebra for WeylBackend {
    fn modulus(&self) -> u64 {
        self.labels.modulus()
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn name(&self, i: usize) -> String {
        self.labels.get(i).to_string()
    }

    fn commutes(&self, i: usize, j: usize) -> bool {
        commutes(self.labels.get(i), self.labels.get(j), self.modulus()).unwrap_or(false)
    }

    fn face_sum(&self, i: usize, j: usize) -> Option<usize> {
        if !self.commutes(i, j) {
            return None;
        }
        let s = self.labels.get(i).add(self.labels.get(j), self.modulus());
        self.labels.position(&s)
    }

    fn beta(&self, i: usize, j: usize) -> Result<u64, ComplexError> {
        let (a, b, d) = (self.labels.get(i), self.labels.get(j), self.modulus());
        let fast = beta_fast(a, b, &self.eta, d)?;
        if self.verify_with_matrices {
            let m = beta_matrix(a, b, &self.eta, d)?;
            if m != fast {
                return Err(WeylError::OracleMismatch {
                    a: a.to_string(),
                    b: b.to_string(),
                    matrix: m,
                    algebraic: fast,
                }
                .into());
            }
        }
        Ok(fast)
    }
}

/// Opaque symbols with an explicit partial addition and `β` table.
#[derive(Clone, Debug, Default)]
pub struct AbstractBackend {
    pub modulus: u64,
    pub symbols: Vec<String>,
    /// `(a, b) ↦ a + b`, only for pairs that form a face.
    pub sums: BTreeMap<(usize, usize), usize>,
    /// `β(a, b)`; missing entries are 0.
    pub beta: BTreeMap<(usize, usize), u64>,
    /// Commuting pairs beyond those implied by `sums`.
    pub commuting: Vec<(usize, usize)>,
}

impl AbstractBackend {
    pub fn position(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }
}

impl LabelAlgebra for AbstractBackend {
    fn modulus(&self) -> u64 {
        self.modulus
    }

    fn len(&self) -> usize {
        self.symbols.len()
    }

    fn name(&self, i: usize) -> String {
        self.symbols[i].clone()
    }

    fn commutes(&self, i: usize, j: usize) -> bool {
        i == j
            || self.sums.contains_key(&(i, j))
            || self.sums.contains_key(&(j, i))
            || self.commuting.contains(&(i, j))
            || self.commuting.contains(&(j, i))
    }

    fn face_sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sums.get(&(i, j)).copied()
    }

    fn beta(&self, i: usize, j: usize) -> Result<u64, ComplexError> {
        Ok(self.beta.get(&(i, j)).copied().unwrap_or(0) % self.modulus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub a: usize,
    pub b: usize,
    pub sum: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Volume {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `[b|c]`, `[a+b|c]`, `[a|b+c]`, `[a|b]`, entering with signs `+ − + −`.
    pub faces: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    modulus: u64,
    edge_names: Vec<String>,
    faces: Vec<Face>,
    volumes: Vec<Volume>,
    face_index: HashMap<(usize, usize), usize>,
    beta: Vec<u64>,
}

impl ChainComplex {
    /// Enumerate faces and volumes and evaluate `β` on every face.
    pub fn build(algebra: &dyn LabelAlgebra, volume_cap: usize) -> Result<Self, ComplexError> {
        let m = algebra.len();
        let d = algebra.modulus();
        let mut faces = Vec::new();
        let mut face_index = HashMap::new();
        for a in 0..m {
            for b in 0..m {
                if let Some(sum) = algebra.face_sum(a, b) {
                    face_index.insert((a, b), faces.len());
                    faces.push(Face { a, b, sum });
                }
            }
        }
        let mut beta = Vec::with_capacity(faces.len());
        for f in &faces {
            beta.push(algebra.beta(f.a, f.b)? % d);
        }
        let mut volumes = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            let (a, b, ab) = (f.a, f.b, f.sum);
            for c in 0..m {
                if !algebra.commutes(a, c) {
                    continue;
                }
                let (Some(&bc_face), Some(&abc_face)) = (face_index.get(&(b, c)), face_index.get(&(ab, c))) else {
                    continue;
                };
                let bc = faces[bc_face].sum;
                let Some(&a_bc_face) = face_index.get(&(a, bc)) else {
                    continue;
                };
                if volumes.len() >= volume_cap {
                    return Err(ComplexError::VolumeCap(volume_cap));
                }
                volumes.push(Volume {
                    a,
                    b,
                    c,
                    faces: [bc_face, abc_face, a_bc_face, i],
                });
            }
        }
        Ok(Self {
            modulus: d,
            edge_names: (0..m).map(|i| algebra.name(i)).collect(),
            faces,
            volumes,
            face_index,
            beta,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn edge_name(&self, i: usize) -> &str {
        &self.edge_names[i]
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn volumes(&self) -> &[Volume] {
        &self.volumes
    }

    pub fn face_position(&self, a: usize, b: usize) -> Option<usize> {
        self.face_index.get(&(a, b)).copied()
    }

    pub fn face_name(&self, f: usize) -> String {
        let face = self.faces[f];
        format!("[{}|{}]", self.edge_names[face.a], self.edge_names[face.b])
    }

    /// `β` as a plain 2-cochain.
    pub fn beta(&self) -> Cochain {
        Cochain {
            degree: 2,
            home: Home::Plain,
            modulus: self.modulus,
            values: self.beta.clone(),
        }
    }

    /// `∂[a|b]` as `(edge, coefficient)` pairs, coefficients merged.
    pub fn face_boundary(&self, f: usize) -> Vec<(usize, u64)> {
        let d = self.modulus;
        let face = self.faces[f];
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        for (e, c) in [(face.b, 1), (face.sum, d - 1), (face.a, 1)] {
            let v = acc.entry(e).or_insert(0);
            *v = add_mod(*v, c, d);
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// `∂₂` as an `|E| × |F|` matrix.
    pub fn boundary2(&self) -> ZdMatrix {
        let mut m = ZdMatrix::zeros(self.edge_count(), self.faces.len(), self.modulus);
        for f in 0..self.faces.len() {
            for (e, c) in self.face_boundary(f) {
                m.accumulate(e, f, c as i64);
            }
        }
        m
    }

    /// `∂₃` as an `|F| × |V|` matrix.
    pub fn boundary3(&self) -> ZdMatrix {
        let mut m = ZdMatrix::zeros(self.faces.len(), self.volumes.len(), self.modulus);
        for (v, vol) in self.volumes.iter().enumerate() {
            for (k, &f) in vol.faces.iter().enumerate() {
                m.accumulate(f, v, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// `(dα)(x) = α(∂x)`.
    pub fn coboundary(&self, alpha: &Cochain) -> Result<Cochain, ComplexError> {
        let d = self.modulus;
        let values = match alpha.degree {
            0 => {
                self.expect_len(alpha, 1)?;
                // A single vertex and ∂[a] = 0.
                vec![0; self.edge_count()]
            }
            1 => {
                self.expect_len(alpha, self.edge_count())?;
                (0..self.faces.len())
                    .map(|f| {
                        self.face_boundary(f)
                            .into_iter()
                            .fold(0, |acc, (e, c)| add_mod(acc, mul_mod(c, alpha.values[e], d), d))
                    })
                    .collect()
            }
            2 => {
                self.expect_len(alpha, self.faces.len())?;
                self.volumes
                    .iter()
                    .map(|vol| {
                        let [f0, f1, f2, f3] = vol.faces;
                        let v = add_mod(alpha.values[f0], alpha.values[f2], d);
                        sub_mod(v, add_mod(alpha.values[f1], alpha.values[f3], d), d)
                    })
                    .collect()
            }
            k => return Err(ComplexError::DegreeOverflow(k)),
        };
        Ok(Cochain {
            degree: alpha.degree + 1,
            home: alpha.home,
            modulus: d,
            values,
        })
    }

    pub fn is_cocycle(&self, alpha: &Cochain) -> Result<bool, ComplexError> {
        Ok(self.coboundary(alpha)?.is_zero())
    }

    fn expect_len(&self, alpha: &Cochain, n: usize) -> Result<(), ComplexError> {
        if alpha.values.len() != n {
            return Err(ComplexError::Shape {
                expected: n,
                found: alpha.values.len(),
            });
        }
        Ok(())
    }

    /// Sum of `β` (or any 2-cochain) over a 2-chain.
    pub fn pair(&self, alpha: &Cochain, chain: &[u64]) -> u64 {
        let d = self.modulus;
        alpha
            .values
            .iter()
            .zip(chain)
            .fold(0, |acc, (&a, &c)| add_mod(acc, mul_mod(a, c, d), d))
    }

    /// `∂` of a 2-chain given by face coefficients.
    pub fn boundary_of_chain(&self, chain: &[u64]) -> Vec<u64> {
        let d = self.modulus;
        let mut out = vec![0; self.edge_count()];
        for (f, &k) in chain.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (e, c) in self.face_boundary(f) {
                out[e] = add_mod(out[e], mul_mod(k, c, d), d);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Home {
    Plain,
    Relative,
}

/// A cochain of degree 0..=3 with values in `Z_d`.
///
/// Degree-1 values are indexed by all labels; a relative 1-cochain is one
/// that vanishes on `E_0`. Since the relative complex keeps every face and
/// volume, relative 2- and 3-cochains use the same indexing as plain ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: u8,
    pub home: Home,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl Cochain {
    pub fn zero(degree: u8, len: usize, modulus: u64, home: Home) -> Self {
        Self {
            degree,
            home,
            modulus,
            values: vec![0; len],
        }
    }

    pub fn new(degree: u8, values: Vec<u64>, modulus: u64, home: Home) -> Self {
        Self {
            degree,
            home,
            modulus,
            values: values.into_iter().map(|v| v % modulus).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let d = self.modulus;
        Cochain {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| add_mod(a, b, d))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            values: self.values.iter().map(|&v| neg_mod(v, self.modulus)).collect(),
            ..self.clone()
        }
    }

    pub fn as_relative(mut self) -> Cochain {
        self.home = Home::Relative;
        self
    }
}

/// `C_*(E, E_0)`: `C_*(E)` with the basis elements of `C_*(E_0)` erased.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    parent: ChainComplex,
    e0: Vec<usize>,
    in_e0: Vec<bool>,
    surviving: Vec<usize>,
}

impl RelativeComplex {
    /// Requires `C_2(E_0) = 0`: no face has all of `a`, `b`, `a+b` in `E_0`.
    pub fn new(parent: ChainComplex, e0: &[usize]) -> Result<Self, ComplexError> {
        let mut in_e0 = vec![false; parent.edge_count()];
        for &e in e0 {
            if e >= in_e0.len() {
                return Err(ComplexError::UnknownLabel(format!("#{e}")));
            }
            in_e0[e] = true;
        }
        for f in parent.faces() {
            if in_e0[f.a] && in_e0[f.b] && in_e0[f.sum] {
                return Err(ComplexError::E0NotOneDimensional(
                    parent.edge_name(f.a).to_string(),
                    parent.edge_name(f.b).to_string(),
                ));
            }
        }
        let surviving = (0..parent.edge_count()).filter(|&e| !in_e0[e]).collect();
        Ok(Self {
            parent,
            e0: e0.to_vec(),
            in_e0,
            surviving,
        })
    }

    pub fn parent(&self) -> &ChainComplex {
        &self.parent
    }

    pub fn e0(&self) -> &[usize] {
        &self.e0
    }

    pub fn in_e0(&self, e: usize) -> bool {
        self.in_e0[e]
    }

    pub fn surviving_edges(&self) -> &[usize] {
        &self.surviving
    }

    /// `∂_R` on faces: `|E \ E_0| × |F|`.
    pub fn relative_boundary2(&self) -> ZdMatrix {
        let full = self.parent.boundary2();
        let mut m = ZdMatrix::zeros(self.surviving.len(), full.cols(), self.parent.modulus());
        for (r, &e) in self.surviving.iter().enumerate() {
            for f in 0..full.cols() {
                m.set(r, f, full.get(e, f));
            }
        }
        m
    }

    /// `∂_R` of a 2-chain, over the surviving edges.
    pub fn relative_boundary_of_chain(&self, chain: &[u64]) -> Vec<u64> {
        let full = self.parent.boundary_of_chain(chain);
        self.surviving.iter().map(|&e| full[e]).collect()
    }

    /// `χ̄`: `χ` on `E_0` (in the order of `e0`), zero elsewhere.
    pub fn extend_by_zero(&self, chi: &[u64]) -> Result<Cochain, ComplexError> {
        if chi.len() != self.e0.len() {
            return Err(ComplexError::Shape {
                expected: self.e0.len(),
                found: chi.len(),
            });
        }
        let d = self.parent.modulus();
        let mut values = vec![0; self.parent.edge_count()];
        for (&e, &v) in self.e0.iter().zip(chi) {
            values[e] = v % d;
        }
        Ok(Cochain::new(1, values, d, Home::Plain))
    }

    /// `β_χ = β + dχ̄`.
    pub fn beta_chi(&self, beta: &Cochain, chi: &[u64]) -> Result<Cochain, ComplexError> {
        let chibar = self.extend_by_zero(chi)?;
        Ok(beta.add(&self.parent.coboundary(&chibar)?).as_relative())
    }

    fn check_relative(&self, alpha: &Cochain) -> Result<(), ComplexError> {
        if alpha.degree == 1 {
            for &e in &self.e0 {
                if alpha.values.get(e).copied().unwrap_or(0) != 0 {
                    return Err(ComplexError::NotRelative(self.parent.edge_name(e).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Relative coboundary; 1-cochains must vanish on `E_0`.
    pub fn coboundary(&self, alpha: &Cochain) -> Result<Cochain, ComplexError> {
        self.check_relative(alpha)?;
        Ok(self.parent.coboundary(alpha)?.as_relative())
    }

    pub fn is_cocycle(&self, alpha: &Cochain) -> Result<bool, ComplexError> {
        Ok(self.coboundary(alpha)?.is_zero())
    }

    /// Decide whether the relative 2-cocycle `α` is a coboundary.
    ///
    /// Solves `ds = −α` for `s ∈ C^1(E, E_0)`. On failure returns a 2-chain
    /// `z` with `∂_R z = 0` and `α(z) ≠ 0` (normalised to `α(z) = 1` when
    /// `d` is prime).
    pub fn class_trivial(&self, alpha: &Cochain) -> Result<ClassDecision, ComplexError> {
        let d = self.parent.modulus();
        let nf = self.parent.faces().len();
        if alpha.values.len() != nf {
            return Err(ComplexError::Shape {
                expected: nf,
                found: alpha.values.len(),
            });
        }
        let system = self.relative_boundary2().transpose();
        let rhs: Vec<u64> = alpha.values.iter().map(|&v| neg_mod(v, d)).collect();
        let sol = solve_mod_d(&system, &rhs)?;
        if let Some(p) = &sol.particular {
            let mut values = vec![0; self.parent.edge_count()];
            for (&e, &v) in self.surviving.iter().zip(p) {
                values[e] = v;
            }
            return Ok(ClassDecision {
                trivial: true,
                witness: Some(Cochain::new(1, values, d, Home::Relative)),
                certificate: None,
                certificate_value: 0,
            });
        }
        let y = sol.certificate.expect("inconsistent systems carry a certificate");
        // y·(−α) ≠ 0 with yA = 0, so z = −y pairs with α to y·(−α).
        let mut z: Vec<u64> = y.iter().map(|&v| neg_mod(v, d)).collect();
        let mut value = self.parent.pair(alpha, &z);
        if let Some(inv) = mod_inverse(value, d) {
            z = z.iter().map(|&v| mul_mod(v, inv, d)).collect();
            value = 1;
        }
        Ok(ClassDecision {
            trivial: false,
            witness: None,
            certificate: Some(z),
            certificate_value: value,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecision {
    pub trivial: bool,
    /// `s ∈ C^1(E, E_0)` with `ds = −α`.
    pub witness: Option<Cochain>,
    /// Face coefficients of a relative 2-cycle on which `α` is nonzero.
    pub certificate: Option<Vec<u64>>,
    pub certificate_value: u64,
}

/// Add `a + b` for commuting pairs inside each context until nothing
/// changes. Only pairs within one context are combined; the closed contexts
/// are returned.
pub fn close_within_contexts(set: &mut LabelSet, contexts: &[Vec<Label>]) -> Result<Vec<Vec<Label>>, ComplexError> {
    let d = set.modulus();
    let mut closed = Vec::new();
    for ctx in contexts {
        let mut members: Vec<Label> = ctx.clone();
        let mut i = 0;
        while i < members.len() {
            for j in 0..=i {
                let (a, b) = (&members[i], &members[j]);
                if !commutes(a, b, d)? {
                    return Err(WeylError::NonCommuting(a.to_string(), b.to_string()).into());
                }
                let s = a.add(b, d);
                if !s.is_identity() && !members.contains(&s) {
                    members.push(s);
                }
            }
            i += 1;
        }
        for l in &members {
            set.insert(l.clone())?;
        }
        closed.push(members);
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl(labels: &[&str], n: usize) -> WeylBackend {
        let set = LabelSet::new(2, n, labels.iter().map(|s| Label::parse(s, n, 2).unwrap()).collect()).unwrap();
        WeylBackend::new(set, PhaseConvention::natural())
    }

    #[test]
    fn face_enumeration_examples() {
        let c = ChainComplex::build(&weyl(&["X1", "Z2"], 2), DEFAULT_VOLUME_CAP).unwrap();
        assert_eq!(c.faces().len(), 0);
        let c = ChainComplex::build(&weyl(&["X1", "X2", "X1X2"], 2), DEFAULT_VOLUME_CAP).unwrap();
        let pairs: Vec<(usize, usize)> = c.faces().iter().map(|f| (f.a, f.b)).collect();
        // X1 + X1X2 = X2 and X2 + X1X2 = X1 are faces as well.
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn boundaries_compose_to_zero() {
        let labels = ["X1", "X2", "X3", "X1X2", "X2X3", "X1X3", "X1X2X3"];
        let c = ChainComplex::build(&weyl(&labels, 3), DEFAULT_VOLUME_CAP).unwrap();
        assert!(!c.volumes().is_empty());
        assert!(c.boundary2().mul(&c.boundary3()).unwrap().is_zero());
        assert!(c.is_cocycle(&c.beta()).unwrap());
    }

    #[test]
    fn relative_complex_rejects_two_dimensional_e0() {
        let c = ChainComplex::build(&weyl(&["X1", "X2", "X1X2"], 2), DEFAULT_VOLUME_CAP).unwrap();
        assert!(matches!(
            RelativeComplex::new(c.clone(), &[0, 1, 2]),
            Err(ComplexError::E0NotOneDimensional(..))
        ));
        assert!(RelativeComplex::new(c, &[0, 1]).is_ok());
    }

    #[test]
    fn exact_cochains_are_trivial() {
        let labels = ["X1", "X2", "X3", "X1X2", "X2X3", "X1X3", "X1X2X3"];
        let c = ChainComplex::build(&weyl(&labels, 3), DEFAULT_VOLUME_CAP).unwrap();
        let rc = RelativeComplex::new(c.clone(), &[6]).unwrap();
        let gamma = Cochain::new(1, vec![1, 0, 1, 1, 0, 0, 0], 2, Home::Relative);
        let alpha = rc.coboundary(&gamma).unwrap();
        let decision = rc.class_trivial(&alpha).unwrap();
        assert!(decision.trivial);
        let s = decision.witness.unwrap();
        assert_eq!(rc.coboundary(&s).unwrap(), alpha.neg());
    }

    #[test]
    fn closure_stays_inside_contexts() {
        let d = 2;
        let ctx: Vec<Label> = ["X1X2X3", "X1Y2Y3", "Y1X2Y3", "Y1Y2X3"]
            .iter()
            .map(|s| Label::parse(s, 3, d).unwrap())
            .collect();
        let mut set = LabelSet::new(d, 3, ctx.clone()).unwrap();
        let closed = close_within_contexts(&mut set, &[ctx]).unwrap();
        assert_eq!(closed[0].len(), 7);
        assert_eq!(set.len(), 7);
        for s in ["Z2*Z3", "Z1*Z3", "Z1*Z2"] {
            assert!(set.contains(&Label::parse(s, 3, d).unwrap()));
        }
    }
}
