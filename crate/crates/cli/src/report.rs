//! Runs the pipeline over a scenario and assembles the JSON report.

use std::fmt::Display;

use contextuality::algebra::{AlgebraError, SearchLimits};
use contextuality::assignments::*;
use contextuality::classical::*;
use contextuality::complex::*;
use contextuality::fraction::{noncontextual_fraction, FractionError, DEFAULT_ASSIGNMENT_CAP};
use contextuality::quantum::*;
use contextuality::scalar::{format_rational, parse_rational, rational, Scalar};
use contextuality::symmetry::*;
use contextuality::weyl::{LabelSet, PhaseConvention};
use contextuality::witness::*;
use contextuality::Rational;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::scenario::{Algebra, Generator, Mode, Scenario, StateKind, StateSpec, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Validate,
    Complex,
    Cohomology,
    Assignments,
    Witness,
    Fraction,
    Symmetry,
    ClassicalCost,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::Validate,
        Section::Complex,
        Section::Cohomology,
        Section::Assignments,
        Section::Witness,
        Section::Fraction,
        Section::Symmetry,
        Section::ClassicalCost,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Section::Validate => "scenario",
            Section::Complex => "complex",
            Section::Cohomology => "cohomology",
            Section::Assignments => "assignments",
            Section::Witness => "witness",
            Section::Fraction => "fraction",
            Section::Symmetry => "symmetry",
            Section::ClassicalCost => "classical_cost",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub mode: Mode,
    pub limits: SearchLimits,
    pub cap_assignments: u128,
}

impl RunOptions {
    /// Scenario options, overridden by whatever the caller sets afterwards.
    pub fn from_scenario(sc: &Scenario) -> Self {
        let mut limits = SearchLimits::default();
        if let Some(cap) = sc.options.cap_kernel {
            limits.node_cap = cap;
            limits.exhaustive_cap = limits.exhaustive_cap.min(cap);
        }
        Self {
            mode: sc.options.mode,
            limits,
            cap_assignments: sc.options.cap_assignments.unwrap_or(DEFAULT_ASSIGNMENT_CAP),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProblemKind {
    Error,
    Cap,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub module: &'static str,
    pub kind: ProblemKind,
    pub message: String,
}

/// Whether an error reports an exceeded resource cap.
pub trait CapAware: Display {
    fn is_cap(&self) -> bool;
}

fn algebra_cap(e: &AlgebraError) -> bool {
    matches!(e, AlgebraError::CapExceeded { .. })
}

impl CapAware for AlgebraError {
    fn is_cap(&self) -> bool {
        algebra_cap(self)
    }
}

impl CapAware for ComplexError {
    fn is_cap(&self) -> bool {
        match self {
            ComplexError::VolumeCap(_) => true,
            ComplexError::Algebra(e) => algebra_cap(e),
            _ => false,
        }
    }
}

impl CapAware for AssignmentError {
    fn is_cap(&self) -> bool {
        match self {
            AssignmentError::Algebra(e) => algebra_cap(e),
            AssignmentError::Complex(e) => e.is_cap(),
            _ => false,
        }
    }
}

impl CapAware for SymmetryError {
    fn is_cap(&self) -> bool {
        match self {
            SymmetryError::GroupCap(_) => true,
            SymmetryError::Algebra(e) => algebra_cap(e),
            SymmetryError::Assignment(e) => e.is_cap(),
            SymmetryError::Complex(e) => e.is_cap(),
            _ => false,
        }
    }
}

impl CapAware for FractionError {
    fn is_cap(&self) -> bool {
        match self {
            FractionError::AssignmentCap { .. } => true,
            FractionError::Algebra(e) => algebra_cap(e),
            _ => false,
        }
    }
}

impl CapAware for ClassicalError {
    fn is_cap(&self) -> bool {
        match self {
            ClassicalError::Assignment(e) => e.is_cap(),
            ClassicalError::Complex(e) => e.is_cap(),
            _ => false,
        }
    }
}

impl CapAware for WitnessError {
    fn is_cap(&self) -> bool {
        false
    }
}

impl CapAware for QuantumError {
    fn is_cap(&self) -> bool {
        false
    }
}

/// The finished report.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub summary: Vec<String>,
    pub problems: Vec<Problem>,
}

impl Report {
    /// 0 = ran, 3 = cap exceeded, 4 = invariant violated.
    pub fn exit_code(&self) -> i32 {
        match self.problems.iter().map(|p| p.kind).max() {
            Some(ProblemKind::Invariant) => 4,
            Some(ProblemKind::Cap) => 3,
            _ => 0,
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialise");
        s.push('\n');
        s
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn num<T: Scalar>(x: &T) -> Value {
    match x.to_rational() {
        Some(r) if T::EXACT => rat(&r),
        _ => json!(x.to_f64()),
    }
}

fn big(n: Option<u128>) -> Value {
    match n {
        Some(v) if v <= u64::MAX as u128 => json!(v as u64),
        Some(v) => Value::String(v.to_string()),
        None => Value::Null,
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Contextual => "contextual",
        Verdict::Inconclusive => "inconclusive",
    }
}

struct StateResult<T> {
    name: String,
    rho: Option<DensityState<T>>,
    p_chi: Option<T>,
    p_dh: Option<T>,
    ncf: Option<T>,
}

struct Ctx<'a, T> {
    sc: &'a Scenario,
    opts: &'a RunOptions,
    problems: Vec<Problem>,
    summary: Vec<String>,
    complex: Option<Option<ChainComplex>>,
    relative: Option<Option<RelativeComplex>>,
    lambda: Option<Option<CompatibleSet>>,
    hamming: Option<Option<Distance>>,
    class_trivial: Option<bool>,
    group: Option<Option<(SymmetryGroup, QuotientAction)>>,
    lambda_q: Option<Option<CompatibleSet>>,
    hamming_q: Option<Option<Distance>>,
    hamming_dh: Option<Option<Distance>>,
    states: Option<Vec<StateResult<T>>>,
    fractions_done: bool,
}

impl<'a, T: Scalar> Ctx<'a, T> {
    fn new(sc: &'a Scenario, opts: &'a RunOptions) -> Self {
        Self {
            sc,
            opts,
            problems: Vec::new(),
            summary: Vec::new(),
            complex: None,
            relative: None,
            lambda: None,
            hamming: None,
            class_trivial: None,
            group: None,
            lambda_q: None,
            hamming_q: None,
            hamming_dh: None,
            states: None,
            fractions_done: false,
        }
    }

    fn problem(&mut self, module: &'static str, kind: ProblemKind, message: impl Into<String>) {
        let p = Problem {
            module,
            kind,
            message: message.into(),
        };
        if !self.problems.contains(&p) {
            self.problems.push(p);
        }
    }

    fn fail<E: CapAware>(&mut self, module: &'static str, e: E) {
        let kind = if e.is_cap() { ProblemKind::Cap } else { ProblemKind::Error };
        self.problem(module, kind, e.to_string());
    }

    fn invariant(&mut self, module: &'static str, message: impl Into<String>) {
        self.problem(module, ProblemKind::Invariant, message);
    }

    fn weyl(&self) -> Option<(&'a LabelSet, &'a PhaseConvention)> {
        match &self.sc.algebra {
            Some(Algebra::Weyl { set, eta }) => Some((set, eta)),
            _ => None,
        }
    }

    fn has_e0(&self) -> bool {
        !self.sc.e0.is_empty()
    }

    fn complex(&mut self) -> Option<ChainComplex> {
        if self.complex.is_none() {
            let built = match &self.sc.algebra {
                Some(Algebra::Weyl { set, eta }) => {
                    ChainComplex::build(&WeylBackend::new(set.clone(), eta.clone()), DEFAULT_VOLUME_CAP)
                }
                Some(Algebra::Abstract(b)) => ChainComplex::build(b, DEFAULT_VOLUME_CAP),
                None => {
                    self.complex = Some(None);
                    return None;
                }
            };
            let c = match built {
                Ok(c) => Some(c),
                Err(e) => {
                    self.fail("complex", e);
                    None
                }
            };
            self.complex = Some(c);
        }
        self.complex.clone().flatten()
    }

    fn relative(&mut self) -> Option<RelativeComplex> {
        if self.relative.is_none() {
            let c = self.complex();
            let rc = c.and_then(|c| match RelativeComplex::new(c, &self.sc.e0) {
                Ok(rc) => Some(rc),
                Err(e) => {
                    self.fail("complex", e);
                    None
                }
            });
            self.relative = Some(rc);
        }
        self.relative.clone().flatten()
    }

    fn lambda(&mut self) -> Option<CompatibleSet> {
        if self.lambda.is_none() {
            let c = self.complex();
            let l = c.and_then(|c| match beta_compatible_set(&c) {
                Ok(l) => Some(l),
                Err(e) => {
                    self.fail("assignments", e);
                    None
                }
            });
            self.lambda = Some(l);
        }
        self.lambda.clone().flatten()
    }

    fn hamming(&mut self) -> Option<Distance> {
        if self.hamming.is_none() {
            let l = if self.has_e0() { self.lambda() } else { None };
            let h = l.and_then(|l| match hamming_to_set(&self.sc.chi, &l, &self.sc.e0, &self.opts.limits) {
                Ok(h) => Some(h),
                Err(e) => {
                    self.fail("assignments", e);
                    None
                }
            });
            self.hamming = Some(h);
        }
        self.hamming.clone().flatten()
    }

    fn group(&mut self) -> Option<(SymmetryGroup, QuotientAction)> {
        if self.group.is_none() {
            let g = self.build_group();
            self.group = Some(g);
        }
        self.group.clone().flatten()
    }

    fn build_group(&mut self) -> Option<(SymmetryGroup, QuotientAction)> {
        if self.sc.generators.is_empty() {
            return None;
        }
        let c = self.complex()?;
        let d = c.modulus();
        let mut elements = Vec::new();
        for g in &self.sc.generators {
            let el = match g {
                Generator::Explicit(e) => e.clone(),
                Generator::Unitary(u) => {
                    let (set, eta) = self.weyl()?;
                    match SymmetryElement::from_matrix(u, set, eta) {
                        Ok(e) => e,
                        Err(e) => {
                            self.fail("symmetry", e);
                            return None;
                        }
                    }
                }
            };
            if el.perm.len() != c.edge_count() {
                self.problem("symmetry", ProblemKind::Error, "generator does not act on every label of E");
                return None;
            }
            if let Err(e) = verify_symmetry(&el, &c) {
                self.fail("symmetry", e);
                return None;
            }
            elements.push(el);
        }
        let grp = match SymmetryGroup::generate(&elements, c.edge_count(), d, DEFAULT_GROUP_CAP) {
            Ok(g) => g,
            Err(e) => {
                self.fail("symmetry", e);
                return None;
            }
        };
        if let Err(e) = grp.verify(&c) {
            self.invariant("symmetry", format!("closure of verified generators fails: {e}"));
            return None;
        }
        Some((grp.clone(), QuotientAction::new(&grp)))
    }

    fn lambda_q(&mut self) -> Option<CompatibleSet> {
        if self.lambda_q.is_none() {
            let r = match (self.complex(), self.group()) {
                (Some(c), Some((_, qa))) => match lambda_q_set(&c, qa.perms()) {
                    Ok(l) => Some(l),
                    Err(e) => {
                        self.fail("assignments", e);
                        None
                    }
                },
                _ => None,
            };
            self.lambda_q = Some(r);
        }
        self.lambda_q.clone().flatten()
    }

    fn hamming_q(&mut self) -> Option<Distance> {
        if self.hamming_q.is_none() {
            let r = match (self.has_e0(), self.lambda_q()) {
                (true, Some(lq)) => match hamming_to_set(&self.sc.chi, &lq, &self.sc.e0, &self.opts.limits) {
                    Ok(h) => Some(h),
                    Err(e) => {
                        self.fail("assignments", e);
                        None
                    }
                },
                _ => None,
            };
            self.hamming_q = Some(r);
        }
        self.hamming_q.clone().flatten()
    }

    fn hamming_dh(&mut self) -> Option<Distance> {
        if self.hamming_dh.is_none() {
            let r = match (self.has_e0(), self.lambda_q(), self.complex(), self.group()) {
                (true, Some(lq), Some(c), Some((_, qa))) => {
                    match hamming_dh(&self.sc.chi, &lq, qa.perms(), &self.sc.e0, &c, &self.opts.limits) {
                        Ok(h) => Some(h),
                        Err(e) => {
                            self.fail("assignments", e);
                            None
                        }
                    }
                }
                _ => None,
            };
            self.hamming_dh = Some(r);
        }
        self.hamming_dh.clone().flatten()
    }

    fn class_trivial(&mut self) -> Option<bool> {
        if self.class_trivial.is_none() && self.has_e0() {
            let rc = self.relative()?;
            let bc = rc.beta_chi(&rc.parent().beta(), &self.sc.chi).ok()?;
            self.class_trivial = rc.class_trivial(&bc).ok().map(|d| d.trivial);
        }
        self.class_trivial
    }

    fn build_state(&mut self, spec: &StateSpec, earlier: &[StateResult<T>]) -> Option<DensityState<T>> {
        let (set, _) = self.weyl()?;
        let (d, n) = (set.modulus(), set.qudits());
        let dim = (d as usize).pow(n as u32);
        let rho = match spec.kind {
            StateKind::Ghz => ghz_state::<T>(n, d),
            StateKind::MaximallyMixed => Ok(DensityState::maximally_mixed(d, n)),
            StateKind::Basis => {
                let i = spec.index.unwrap_or(0);
                if i >= dim {
                    self.problem("quantum", ProblemKind::Error, format!("basis index {i} ≥ {dim}"));
                    return None;
                }
                let psi: Vec<Complex<T>> = (0..dim)
                    .map(|j| if j == i { Complex::one() } else { Complex::zero() })
                    .collect();
                DensityState::from_vector(&psi, d, n)
            }
            StateKind::Vector => {
                let psi: Vec<Complex<T>> = spec
                    .amplitudes
                    .iter()
                    .map(|(re, im)| {
                        let (re, im) = (parse_rational(re).expect("validated"), parse_rational(im).expect("validated"));
                        Complex::new(T::from_rational(&re), T::from_rational(&im))
                    })
                    .collect();
                if psi.len() != dim {
                    self.problem(
                        "quantum",
                        ProblemKind::Error,
                        format!("state {} has {} amplitudes, expected {dim}", spec.name, psi.len()),
                    );
                    return None;
                }
                DensityState::from_vector(&psi, d, n)
            }
            StateKind::Mixture => {
                let find = |name: &Option<String>| {
                    earlier
                        .iter()
                        .find(|s| Some(&s.name) == name.as_ref())
                        .and_then(|s| s.rho.clone())
                };
                let (Some(a), Some(b)) = (find(&spec.first), find(&spec.second)) else {
                    self.problem("quantum", ProblemKind::Error, format!("mixture {} refers to a failed state", spec.name));
                    return None;
                };
                let lambda = parse_rational(spec.lambda.as_deref().unwrap_or("")).expect("validated");
                a.mix(&b, &T::from_rational(&lambda))
            }
        };
        match rho {
            Ok(r) => Some(r),
            Err(e) => {
                self.fail("quantum", e);
                None
            }
        }
    }

    fn states(&mut self) -> &mut Vec<StateResult<T>> {
        if self.states.is_none() {
            let mut out: Vec<StateResult<T>> = Vec::new();
            let specs = self.sc.states.clone();
            for spec in &specs {
                let rho = self.build_state(spec, &out);
                let mut r = StateResult {
                    name: spec.name.clone(),
                    rho,
                    p_chi: None,
                    p_dh: None,
                    ncf: None,
                };
                if let (Some(rho), Some((set, eta)), true) = (&r.rho, self.weyl(), self.has_e0()) {
                    match p_chi(rho, set, &self.sc.e0, &self.sc.chi, eta) {
                        Ok(p) => r.p_chi = Some(p),
                        Err(e) => self.fail("witness", e),
                    }
                }
                out.push(r);
            }
            if let Some((_, qa)) = self.group() {
                if let Some((set, eta)) = self.weyl() {
                    for r in out.iter_mut() {
                        if let (Some(rho), true) = (&r.rho, !self.sc.e0.is_empty()) {
                            match p_dh_chi(rho, set, &self.sc.e0, &self.sc.chi, qa.perms(), eta) {
                                Ok(p) => r.p_dh = Some(p),
                                Err(e) => {
                                    let kind = if e.is_cap() { ProblemKind::Cap } else { ProblemKind::Error };
                                    let p = Problem {
                                        module: "witness",
                                        kind,
                                        message: e.to_string(),
                                    };
                                    if !self.problems.contains(&p) {
                                        self.problems.push(p);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            self.states = Some(out);
        }
        self.states.as_mut().expect("just set")
    }

    fn run_fractions(&mut self) {
        if self.fractions_done {
            return;
        }
        self.fractions_done = true;
        let Some((set, eta)) = self.weyl() else { return };
        if self.sc.contexts.is_empty() {
            return;
        }
        let contexts = self.sc.contexts.clone();
        let cap = self.opts.cap_assignments;
        let n = self.states().len();
        for i in 0..n {
            let Some(rho) = self.states()[i].rho.clone() else { continue };
            let e = match empirical_model(&rho, set, &contexts, eta) {
                Ok(e) => e,
                Err(e) => {
                    self.fail("fraction", e);
                    continue;
                }
            };
            if let Err(err) = e.check_no_disturbance() {
                self.invariant("fraction", format!("quantum model violates no-disturbance: {err}"));
                continue;
            }
            match noncontextual_fraction(&e, cap) {
                Ok(r) => self.states()[i].ncf = Some(r.ncf),
                Err(err) => self.fail("fraction", err),
            }
        }
    }
}

fn decision_json(c: &ChainComplex, dec: &ClassDecision) -> Value {
    let mut m = Map::new();
    m.insert("trivial".into(), json!(dec.trivial));
    if let Some(cert) = &dec.certificate {
        let terms: Vec<Value> = cert
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(f, &k)| json!({"face": c.face_name(f), "coefficient": k}))
            .collect();
        m.insert("certificate".into(), Value::Array(terms));
        m.insert("certificate_value".into(), json!(dec.certificate_value));
    }
    if let Some(w) = &dec.witness {
        let vals: Map<String, Value> = w
            .values
            .iter()
            .enumerate()
            .map(|(e, &v)| (c.edge_name(e).to_string(), json!(v)))
            .collect();
        m.insert("witness".into(), Value::Object(vals));
    }
    Value::Object(m)
}

fn set_json(s: &CompatibleSet) -> Value {
    json!({
        "empty": s.is_empty(),
        "size": big(s.size()),
        "log_d_size": if s.is_empty() { Value::Null } else { json!(s.log_size()) },
    })
}

fn distance_json(c: &ChainComplex, h: &Distance) -> Value {
    match h.closest() {
        None => json!({"distance": Value::Null, "reason": "empty set"}),
        Some(cl) => {
            let member: Map<String, Value> = cl
                .member
                .iter()
                .enumerate()
                .map(|(e, &v)| (c.edge_name(e).to_string(), json!(v)))
                .collect();
            json!({
                "distance": cl.distance,
                "closest_image": cl.image,
                "closest_member": member,
                "exhaustive": cl.exhaustive,
            })
        }
    }
}

fn section_scenario<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    let sc = ctx.sc;
    let names = sc.label_names();
    let mut m = Map::new();
    m.insert("valid".into(), json!(true));
    m.insert("modulus".into(), json!(sc.modulus()));
    if let Some((set, _)) = ctx.weyl() {
        m.insert("qudits".into(), json!(set.qudits()));
    }
    m.insert("labels".into(), json!(names));
    m.insert("e0".into(), json!(sc.e0.iter().map(|&e| names[e].clone()).collect::<Vec<_>>()));
    m.insert("chi".into(), json!(sc.chi));
    m.insert(
        "contexts".into(),
        json!(sc
            .contexts
            .iter()
            .map(|c| c.iter().map(|&e| names[e].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    m.insert("states".into(), json!(sc.states.iter().map(|s| s.name.clone()).collect::<Vec<_>>()));
    m.insert("symmetry_generators".into(), json!(sc.generators.len()));
    m.insert("boolean_arity".into(), json!(sc.boolean.as_ref().map(|f| f.arity())));
    ctx.summary.push(format!("scenario {}: {} labels, |E_0| = {}", sc.name, names.len(), sc.e0.len()));
    Value::Object(m)
}

fn section_complex<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    let Some(c) = ctx.complex() else { return Value::Null };
    let dd_zero = c.volumes().is_empty() || c.boundary2().mul(&c.boundary3()).is_ok_and(|m| m.is_zero());
    if !dd_zero {
        ctx.invariant("complex", "∂∂ ≠ 0");
    }
    let beta_cocycle = c.is_cocycle(&c.beta()).unwrap_or(false);
    if !beta_cocycle {
        ctx.invariant("complex", "dβ ≠ 0");
    }
    ctx.summary.push(format!(
        "complex: {} edges, {} faces, {} volumes",
        c.edge_count(),
        c.faces().len(),
        c.volumes().len()
    ));
    json!({
        "modulus": c.modulus(),
        "edges": c.edge_count(),
        "faces": c.faces().len(),
        "volumes": c.volumes().len(),
        "boundary_squares_to_zero": dd_zero,
        "beta_is_cocycle": beta_cocycle,
    })
}

fn check_decision<T: Scalar>(ctx: &mut Ctx<T>, rc: &RelativeComplex, alpha: &Cochain, dec: &ClassDecision, what: &str) {
    let c = rc.parent();
    if let Some(cert) = &dec.certificate {
        let closed = rc.relative_boundary_of_chain(cert).iter().all(|&v| v == 0);
        let value = c.pair(alpha, cert);
        if !closed || value == 0 || value != dec.certificate_value {
            ctx.invariant("cohomology", format!("certificate for {what} fails its check"));
        }
    }
    if let Some(w) = &dec.witness {
        let ok = rc.coboundary(w).is_ok_and(|ds| ds.add(alpha).is_zero());
        if !ok {
            ctx.invariant("cohomology", format!("witness for {what} does not solve ds = −α"));
        }
    }
    if dec.trivial == dec.certificate.is_some() {
        ctx.invariant("cohomology", format!("decision for {what} is inconsistent"));
    }
}

fn section_cohomology<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    let Some(c) = ctx.complex() else { return Value::Null };
    let mut m = Map::new();
    let absolute = RelativeComplex::new(c.clone(), &[]).expect("empty E_0");
    let beta = c.beta();
    match absolute.class_trivial(&beta) {
        Ok(dec) => {
            check_decision(ctx, &absolute, &beta, &dec, "[β]");
            ctx.summary.push(if dec.trivial {
                "[β] = 0".to_string()
            } else {
                format!("[β] ≠ 0 (certificate value {})", dec.certificate_value)
            });
            m.insert("beta".into(), decision_json(&c, &dec));
        }
        Err(e) => ctx.fail("cohomology", e),
    }
    if ctx.has_e0() {
        if let Some(rc) = ctx.relative() {
            match rc.beta_chi(&beta, &ctx.sc.chi) {
                Ok(bc) => {
                    if !rc.is_cocycle(&bc).unwrap_or(false) {
                        ctx.invariant("cohomology", "dβ_χ ≠ 0");
                    }
                    match rc.class_trivial(&bc) {
                        Ok(dec) => {
                            check_decision(ctx, &rc, &bc, &dec, "[β_χ]");
                            ctx.class_trivial = Some(dec.trivial);
                            ctx.summary.push(if dec.trivial {
                                "[β_χ] = 0".to_string()
                            } else {
                                format!("[β_χ] ≠ 0 (certificate value {})", dec.certificate_value)
                            });
                            m.insert("beta_chi".into(), decision_json(&c, &dec));
                        }
                        Err(e) => ctx.fail("cohomology", e),
                    }
                }
                Err(e) => ctx.fail("cohomology", e),
            }
        }
    }
    Value::Object(m)
}

fn section_assignments<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    let Some(c) = ctx.complex() else { return Value::Null };
    let mut m = Map::new();
    if let Some(l) = ctx.lambda() {
        m.insert("lambda".into(), set_json(&l));
        ctx.summary.push(match l.size() {
            Some(s) => format!("|Λ̄| = {s}"),
            None => format!("log_d |Λ̄| = {}", l.log_size()),
        });
    }
    if let Some(h) = ctx.hamming() {
        if let Some(v) = h.value() {
            ctx.summary.push(format!("ℍ(χ, Λ̄) = {v}"));
        }
        m.insert("hamming".into(), distance_json(&c, &h));
    }
    if let Some(lq) = ctx.lambda_q() {
        m.insert("lambda_q".into(), set_json(&lq));
        if let Some(h) = ctx.hamming_q() {
            if let Some(v) = h.value() {
                ctx.summary.push(format!("ℍ(χ, Λ̄_Q) = {v}"));
            }
            m.insert("hamming_q".into(), distance_json(&c, &h));
        }
        if let Some(h) = ctx.hamming_dh() {
            if let Some(v) = h.value() {
                ctx.summary.push(format!("ℍ(d^hχ, d^hΛ̄_Q) = {v}"));
            }
            m.insert(
                "hamming_dh".into(),
                json!({"distance": h.value(), "closest_image": h.closest().map(|c| c.image.clone())}),
            );
        }
    }
    Value::Object(m)
}

fn witness_json<T: Scalar>(p: &T, threshold: Rational, kind: ThresholdKind) -> (Value, Verdict) {
    let r = WitnessReport::new(p, threshold, kind);
    let mut m = Map::new();
    m.insert("threshold".into(), rat(&r.threshold));
    m.insert("verdict".into(), json!(verdict_name(r.verdict)));
    if let Some(d) = &r.delta {
        if T::EXACT {
            m.insert("delta".into(), rat(d));
        } else {
            m.insert("delta".into(), json!(p.to_f64() - Scalar::to_f64(&r.threshold)));
        }
    }
    (Value::Object(m), r.verdict)
}

fn section_witness<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    if !ctx.has_e0() || ctx.weyl().is_none() {
        return Value::Null;
    }
    let e0_len = ctx.sc.e0.len();
    let h = ctx.hamming();
    let trivial = ctx.class_trivial();
    let q_len = ctx.group().map(|(_, qa)| qa.len());
    let h_dh = ctx.hamming_dh();
    let h_q = ctx.hamming_q();
    let mut thresholds = Map::new();
    let parity = h.as_ref().map(|h| threshold_parity(h, e0_len));
    if let Some(t) = &parity {
        thresholds.insert(
            "parity".into(),
            match t {
                Ok(t) => rat(t),
                Err(e) => json!(e.to_string()),
            },
        );
    }
    let weak = trivial.map(|t| threshold_weak(t, e0_len));
    if let Some(Ok(t)) = &weak {
        thresholds.insert("weak".into(), rat(t));
    }
    let sym = match (&h_dh, q_len) {
        (Some(h), Some(q)) => Some(threshold_symmetry(h, q, e0_len)),
        _ => None,
    };
    if let Some(Ok(t)) = &sym {
        thresholds.insert("symmetry".into(), rat(t));
    }
    let sym_parity = h_q.as_ref().map(|h| threshold_symmetry_parity(h, e0_len));
    if let Some(Ok(t)) = &sym_parity {
        thresholds.insert("symmetry_parity".into(), rat(t));
    }

    let states: Vec<(String, Option<T>, Option<T>)> =
        ctx.states().iter().map(|s| (s.name.clone(), s.p_chi.clone(), s.p_dh.clone())).collect();
    let mut per_state = Vec::new();
    for (name, p, p_dh) in states {
        let mut m = Map::new();
        m.insert("state".into(), json!(name));
        if let Some(p) = &p {
            m.insert("p_chi".into(), num(p));
            if let Some(Ok(t)) = &parity {
                let (v, verdict) = witness_json(p, t.clone(), ThresholdKind::Parity);
                ctx.summary.push(format!(
                    "{name}: p_χ = {} vs {} → {}",
                    fmt_num(p),
                    format_rational(t),
                    verdict_name(verdict)
                ));
                m.insert("parity".into(), v);
            }
            if let Some(Ok(t)) = &weak {
                m.insert("weak".into(), witness_json(p, t.clone(), ThresholdKind::Weak).0);
            }
            if let Some(Ok(t)) = &sym_parity {
                m.insert("symmetry_parity".into(), witness_json(p, t.clone(), ThresholdKind::SymmetryParity).0);
            }
        }
        if let Some(p) = &p_dh {
            m.insert("p_dh_chi".into(), num(p));
            if let Some(Ok(t)) = &sym {
                m.insert("symmetry".into(), witness_json(p, t.clone(), ThresholdKind::Symmetry).0);
            }
        }
        per_state.push(Value::Object(m));
    }
    json!({"thresholds": thresholds, "states": per_state})
}

fn fmt_num<T: Scalar>(x: &T) -> String {
    match num(x) {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

fn section_fraction<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    if ctx.weyl().is_none() || ctx.sc.contexts.is_empty() {
        return Value::Null;
    }
    ctx.run_fractions();
    let e0_len = ctx.sc.e0.len();
    let h = ctx.hamming().and_then(|h| h.value());
    let h_dh = ctx.hamming_dh().and_then(|h| h.value());
    let q_len = ctx.group().map(|(_, qa)| qa.len());
    let measurements: usize = {
        let mut all: Vec<usize> = ctx.sc.contexts.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let d = ctx.sc.modulus().unwrap_or(2);
    let variables = (d as u128).checked_pow(measurements as u32);
    let constraints: u128 = ctx.sc.contexts.iter().map(|c| (d as u128).pow(c.len() as u32)).sum();
    let rows: Vec<(String, Option<T>, Option<T>, Option<T>)> = ctx
        .states()
        .iter()
        .map(|s| (s.name.clone(), s.ncf.clone(), s.p_chi.clone(), s.p_dh.clone()))
        .collect();
    let mut per_state = Vec::new();
    for (name, ncf, p, p_dh) in rows {
        let Some(ncf) = ncf else { continue };
        let cf = T::one() - ncf.clone();
        ctx.summary.push(format!("{name}: NCF = {}, CF = {}", fmt_num(&ncf), fmt_num(&cf)));
        let mut m = Map::new();
        m.insert("state".into(), json!(name));
        m.insert("ncf".into(), num(&ncf));
        m.insert("cf".into(), num(&cf));
        let ncf_r = ncf.to_rational().unwrap_or_else(Rational::zero);
        let mut bounds = Map::new();
        if let (Some(p), Some(h)) = (&p, h) {
            let b = cf_refined_bounds(p, &ncf_r, h, e0_len, 1);
            if !b.p_holds || !b.delta_holds {
                ctx.invariant("fraction", format!("{name}: contextual-fraction bound fails for the parity witness"));
            }
            bounds.insert("parity".into(), bound_json::<T>(&b));
        }
        if let (Some(p), Some(h), Some(q)) = (&p_dh, h_dh, q_len) {
            let b = cf_refined_bounds(p, &ncf_r, h, e0_len, q);
            if !b.p_holds {
                ctx.invariant("fraction", format!("{name}: contextual-fraction bound fails for the symmetry witness"));
            }
            bounds.insert("symmetry".into(), bound_json::<T>(&b));
        }
        m.insert("bounds".into(), Value::Object(bounds));
        per_state.push(Value::Object(m));
    }
    json!({
        "measurements": measurements,
        "variables": big(variables),
        "constraints": big(Some(constraints)),
        "states": per_state,
    })
}

fn bound_json<T: Scalar>(b: &BoundReport) -> Value {
    let mut m = Map::new();
    m.insert("bound".into(), rat(&b.bound));
    m.insert("p_within_bound".into(), json!(b.p_holds));
    if T::EXACT {
        m.insert("slack".into(), rat(&b.slack));
        m.insert("delta".into(), rat(&b.delta));
    }
    m.insert("delta_bound".into(), rat(&b.delta_bound));
    m.insert("delta_within_bound".into(), json!(b.delta_holds));
    Value::Object(m)
}

fn section_symmetry<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    if ctx.sc.generators.is_empty() {
        return Value::Null;
    }
    let Some((grp, qa)) = ctx.group() else {
        return json!({"verified": false});
    };
    let mut m = Map::new();
    m.insert("verified".into(), json!(true));
    m.insert("group_order".into(), json!(grp.len()));
    m.insert("quotient_order".into(), json!(qa.len()));
    m.insert("kernel_order".into(), json!(qa.kernel_size()));
    let c = ctx.complex().expect("group implies complex");
    let names: Vec<String> = (0..c.edge_count()).map(|e| c.edge_name(e).to_string()).collect();
    let gens: Vec<Value> = grp
        .elements()
        .iter()
        .map(|g| {
            let perm: Map<String, Value> = g
                .perm
                .iter()
                .enumerate()
                .map(|(a, &b)| (names[a].clone(), json!(names[b])))
                .collect();
            json!({"perm": perm, "phase": g.phase})
        })
        .collect();
    m.insert("elements".into(), Value::Array(gens));
    ctx.summary.push(format!("symmetry: |H| = {}, |Q| = {}", grp.len(), qa.len()));
    if let (true, Some(rc)) = (ctx.has_e0(), ctx.relative()) {
        if let Err(e) = grp.check_fixes_chi(&rc, &ctx.sc.chi) {
            ctx.fail("symmetry", e);
            return Value::Object(m);
        }
        let pt = match phi_chi_tilde(&grp, &rc, &ctx.sc.chi) {
            Ok(p) => p,
            Err(e) => {
                ctx.fail("symmetry", e);
                return Value::Object(m);
            }
        };
        let lemma = check_lemma_identities(&grp, &rc, &ctx.sc.chi, &pt);
        if let Err(e) = &lemma {
            ctx.invariant("symmetry", format!("phase identities fail: {e}"));
        }
        m.insert("phase_identities_hold".into(), json!(lemma.is_ok()));
        match phi_chi(&qa, &pt, &rc).and_then(|phi| h1_class_trivial(&phi, &qa, &rc)) {
            Ok(dec) => {
                ctx.summary.push(format!("[Φ_χ] {} 0", if dec.trivial { "=" } else { "≠" }));
                m.insert("phi_chi_class_trivial".into(), json!(dec.trivial));
                if let Ok(u0) = U0Space::new(&rc) {
                    m.insert("u0_rank".into(), json!(u0.rank()));
                }
            }
            Err(e) => ctx.fail("symmetry", e),
        }
    }
    Value::Object(m)
}

fn section_classical<T: Scalar>(ctx: &mut Ctx<T>) -> Value {
    let mut m = Map::new();
    let grid: Vec<Rational> = if ctx.sc.cf_grid.is_empty() {
        (0..=4).map(|k| rational(k, 4)).collect()
    } else {
        ctx.sc.cf_grid.clone()
    };
    if let (Some((set, eta)), true) = (ctx.weyl(), ctx.has_e0()) {
        if let (Some(lambda), Some(c)) = (ctx.lambda(), ctx.complex()) {
            let d = c.modulus();
            let e0 = ctx.sc.e0.clone();
            let chi = ctx.sc.chi.clone();
            match best_assignment(&chi, &lambda, &e0, &ctx.opts.limits) {
                Ok((member, h)) => {
                    let base: Vec<u64> = e0.iter().map(|&a| member[a]).collect();
                    m.insert("best_assignment".into(), json!({"distance": h, "restriction": base}));
                    // CF values: from the LP when available, the grid otherwise.
                    ctx.run_fractions();
                    let mut cfs: Vec<(String, Rational)> = ctx
                        .states()
                        .iter()
                        .filter_map(|s| s.ncf.as_ref().and_then(|n| n.to_rational()).map(|n| (s.name.clone(), Rational::one() - n)))
                        .collect();
                    if cfs.is_empty() || !T::EXACT {
                        cfs = grid.iter().map(|g| (format!("CF={}", format_rational(g)), g.clone())).collect();
                    }
                    let mut rows = Vec::new();
                    for (label, cf) in cfs {
                        let list = list_size_for(&cf, h).min(h);
                        let ev = match build_evaluator(Base::Table(base.clone()), &chi, d, list) {
                            Ok(ev) => ev,
                            Err(e) => {
                                ctx.fail("classical", e);
                                continue;
                            }
                        };
                        let closed = ev.success_probability();
                        let measured = ev.measured_success(&chi);
                        if closed != measured {
                            ctx.invariant("classical", "evaluator success differs from its closed form");
                        }
                        let mem = match memory_cost_bound(set, eta, &chi, &e0, &cf, &ctx.opts.limits) {
                            Ok((mem, _, _)) => json!({
                                "c": mem.c,
                                "list_length": mem.list_len,
                                "d_bits": mem.d_bits,
                                "lambda_size": big(mem.lambda_size),
                                "bits": mem.total,
                            }),
                            Err(e) => {
                                ctx.fail("classical", e);
                                Value::Null
                            }
                        };
                        if let Some(bits) = mem.get("bits") {
                            ctx.summary.push(format!("{label}: memory bound I ≤ {bits} bits"));
                        }
                        rows.push(json!({
                            "source": label,
                            "cf": rat(&cf),
                            "exceptions": list,
                            "success": rat(&closed),
                            "memory": mem,
                        }));
                    }
                    m.insert("evaluators".into(), Value::Array(rows));
                }
                Err(ClassicalError::EmptySet) => {
                    m.insert("best_assignment".into(), Value::Null);
                }
                Err(e) => ctx.fail("classical", e),
            }
        }
    }
    if let Some(f) = ctx.sc.boolean.clone() {
        let (h, w) = distance_to_linear(&f);
        let (ha, wa, ca) = distance_to_affine(&f);
        let arity = f.arity();
        ctx.summary.push(format!("boolean: ℍ(f, linear) = {h}, closest w = {w:#b}"));
        let mut rows = Vec::new();
        for cf in &grid {
            let bound = l2mbqc_success_bound(h, arity, cf);
            let list = list_size_for(cf, h).min(h);
            let ev = linear_evaluator(&f, list).expect("list within L_max");
            let (_, ops) = operational_cost(&ev, 0);
            let allowed = operation_bound(arity, cf, h);
            if ev.measured_success(f.table()) != ev.success_probability() {
                ctx.invariant("classical", "evaluator success differs from its closed form");
            }
            rows.push(json!({
                "cf": rat(cf),
                "success_bound": rat(&bound),
                "exceptions": list,
                "evaluator_success": rat(&ev.success_probability()),
                "operations": ops,
                "operation_bound": allowed,
            }));
        }
        m.insert(
            "boolean".into(),
            json!({
                "arity": arity,
                "distance_to_linear": h,
                "closest_linear": w,
                "distance_to_affine": ha,
                "closest_affine": {"w": wa, "constant": ca},
                "table": rows,
            }),
        );
    }
    if m.is_empty() {
        Value::Null
    } else {
        Value::Object(m)
    }
}

fn run_typed<T: Scalar>(sc: &Scenario, sections: &[Section], opts: &RunOptions) -> Report {
    let mut ctx = Ctx::<T>::new(sc, opts);
    let mut root = Map::new();
    root.insert("schema_version".into(), json!(SCHEMA_VERSION));
    root.insert("name".into(), json!(sc.name));
    root.insert(
        "mode".into(),
        json!(match opts.mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }),
    );
    let mut wanted = sections.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    for s in wanted {
        let v = match s {
            Section::Validate => section_scenario(&mut ctx),
            Section::Complex => section_complex(&mut ctx),
            Section::Cohomology => section_cohomology(&mut ctx),
            Section::Assignments => section_assignments(&mut ctx),
            Section::Witness => section_witness(&mut ctx),
            Section::Fraction => section_fraction(&mut ctx),
            Section::Symmetry => section_symmetry(&mut ctx),
            Section::ClassicalCost => section_classical(&mut ctx),
        };
        root.insert(s.key().into(), v);
    }
    let problems = ctx.problems.clone();
    root.insert(
        "errors".into(),
        Value::Array(
            problems
                .iter()
                .map(|p| {
                    json!({
                        "module": p.module,
                        "kind": match p.kind {
                            ProblemKind::Error => "error",
                            ProblemKind::Cap => "cap",
                            ProblemKind::Invariant => "invariant",
                        },
                        "message": p.message,
                    })
                })
                .collect(),
        ),
    );
    Report {
        json: Value::Object(root),
        summary: ctx.summary,
        problems,
    }
}

/// Run the requested sections. Module failures are collected, not raised.
pub fn run_report(sc: &Scenario, sections: &[Section], opts: &RunOptions) -> Report {
    match opts.mode {
        Mode::Exact => run_typed::<Rational>(sc, sections, opts),
        Mode::Float => run_typed::<f64>(sc, sections, opts),
    }
}
