//! Scenario files: JSON schema, parsing and validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use contextuality::algebra::zmod::add_mod;
use contextuality::classical::BooleanFunction;
use contextuality::complex::{close_within_contexts, AbstractBackend};
use contextuality::matrix::CMatrix;
use contextuality::scalar::parse_rational;
use contextuality::symmetry::SymmetryElement;
use contextuality::weyl::{commutes, Label, LabelSet, PhaseConvention};
use contextuality::Rational;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Deserialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub modulus: Option<u64>,
    #[serde(default)]
    pub qudits: Option<usize>,
    /// Pauli strings such as `X1Y2` or symplectic vectors `(z1,..|x1,..)`.
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default, rename = "abstract")]
    pub abstract_algebra: Option<AbstractSpec>,
    /// Groups of labels to close under sums before building the complex.
    #[serde(default)]
    pub closure: Vec<Vec<String>>,
    /// Measurement contexts of the empirical model.
    #[serde(default)]
    pub contexts: Vec<Vec<String>>,
    #[serde(default)]
    pub e0: Vec<String>,
    #[serde(default)]
    pub chi: Vec<u64>,
    /// Phase exponents `γ(a)` overriding the natural convention.
    #[serde(default)]
    pub gamma: BTreeMap<String, u64>,
    #[serde(default)]
    pub symmetry: Option<SymmetrySpec>,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub boolean: Option<BooleanSpec>,
    #[serde(default)]
    pub cf_grid: Vec<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractSpec {
    pub symbols: Vec<String>,
    /// `[a, b, a+b, β(a,b)]`.
    pub faces: Vec<(String, String, String, u64)>,
    #[serde(default)]
    pub commuting: Vec<(String, String)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySpec {
    pub generators: Vec<GeneratorSpec>,
}

/// Either a product of qubit gates, applied as the matrix product in the
/// listed order, or an explicit label map with phases.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub gates: Vec<(String, Vec<usize>)>,
    #[serde(default)]
    pub perm: BTreeMap<String, String>,
    #[serde(default)]
    pub phase: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub name: String,
    pub kind: StateKind,
    /// Basis state index for `basis`.
    #[serde(default)]
    pub index: Option<usize>,
    /// `[re, im]` rational strings for `vector`.
    #[serde(default)]
    pub amplitudes: Vec<(String, String)>,
    /// `λ·first + (1−λ)·second` for `mixture`, naming earlier states.
    #[serde(default)]
    pub lambda: Option<String>,
    #[serde(default)]
    pub first: Option<String>,
    #[serde(default)]
    pub second: Option<String>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Ghz,
    MaximallyMixed,
    Basis,
    Vector,
    Mixture,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BooleanSpec {
    pub arity: usize,
    /// Hex digits (bit `x` of the number is `f(x)`) or an explicit bit list.
    pub table: TableSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TableSpec {
    Hex(String),
    Bits(Vec<u64>),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub cap_kernel: Option<u64>,
    #[serde(default)]
    pub cap_assignments: Option<u128>,
}

/// A schema violation, with the line of the offending text when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Algebra {
    Weyl { set: LabelSet, eta: PhaseConvention },
    Abstract(AbstractBackend),
}

#[derive(Clone, Debug)]
pub enum Generator {
    Unitary(CMatrix<Rational>),
    Explicit(SymmetryElement),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub algebra: Option<Algebra>,
    /// Label indices per context.
    pub contexts: Vec<Vec<usize>>,
    pub e0: Vec<usize>,
    pub chi: Vec<u64>,
    pub generators: Vec<Generator>,
    pub states: Vec<StateSpec>,
    pub boolean: Option<BooleanFunction>,
    pub cf_grid: Vec<Rational>,
    pub options: Options,
}

impl Scenario {
    pub fn modulus(&self) -> Option<u64> {
        match &self.algebra {
            Some(Algebra::Weyl { set, .. }) => Some(set.modulus()),
            Some(Algebra::Abstract(b)) => Some(b.modulus),
            None => None,
        }
    }

    pub fn label_names(&self) -> Vec<String> {
        match &self.algebra {
            Some(Algebra::Weyl { set, .. }) => set.labels().iter().map(|l| l.to_string()).collect(),
            Some(Algebra::Abstract(b)) => b.symbols.clone(),
            None => Vec::new(),
        }
    }
}

struct Checker<'a> {
    text: &'a str,
    violations: Vec<Violation>,
}

impl<'a> Checker<'a> {
    /// First line containing `"needle"` as a JSON string.
    fn line_of(&self, needle: &str) -> Option<usize> {
        let quoted = format!("\"{needle}\"");
        self.text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
    }

    fn fail(&mut self, near: Option<&str>, message: impl Into<String>) {
        let line = near.and_then(|n| self.line_of(n));
        self.violations.push(Violation {
            line,
            message: message.into(),
        });
    }
}

fn parse_label(text: &str, n: usize, d: u64) -> Result<Label, String> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (zs, xs) = inner.split_once('|').ok_or("expected (z|x)")?;
        let parse = |s: &str| -> Result<Vec<u64>, String> {
            s.split(',')
                .map(|v| v.trim().parse::<u64>().map_err(|_| format!("bad digit {v:?}")))
                .collect()
        };
        let (z, x) = (parse(zs)?, parse(xs)?);
        if z.len() != n || x.len() != n {
            return Err(format!("expected {n} digits on each side"));
        }
        if z.iter().chain(&x).any(|&v| v >= d) {
            return Err(format!("digits must be below d = {d}"));
        }
        return Label::new(z, x, d).map_err(|e| e.to_string());
    }
    Label::parse(t, n, d).map_err(|e| e.to_string())
}

fn qubit_gate(name: &str, sites: &[usize], n: usize) -> Result<CMatrix<Rational>, String> {
    let c = |re: i64, im: i64| Complex::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()));
    let one = |m: [[(i64, i64); 2]; 2]| -> CMatrix<Rational> {
        CMatrix::from_rows(m.iter().map(|r| r.iter().map(|&(a, b)| c(a, b)).collect()).collect()).expect("2×2")
    };
    let dim = 1usize << n;
    // Basis index bit for qubit k (1-based, most significant first).
    let bit = |x: usize, k: usize| x >> (n - k) & 1;
    for &s in sites {
        if s == 0 || s > n {
            return Err(format!("gate {name}: qubit {s} out of range"));
        }
    }
    let single = match name {
        "X" => Some(one([[(0, 0), (1, 0)], [(1, 0), (0, 0)]])),
        "Y" => Some(one([[(0, 0), (0, -1)], [(0, 1), (0, 0)]])),
        "Z" => Some(one([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]])),
        "S" => Some(one([[(1, 0), (0, 0)], [(0, 0), (0, 1)]])),
        "Sdg" => Some(one([[(1, 0), (0, 0)], [(0, 0), (0, -1)]])),
        _ => None,
    };
    if let Some(g) = single {
        let [site] = sites else {
            return Err(format!("gate {name} takes one qubit"));
        };
        return Ok((1..=n).fold(CMatrix::identity(1), |acc, k| {
            acc.kron(&if k == *site { g.clone() } else { CMatrix::identity(2) })
        }));
    }
    let [a, b] = sites else {
        return Err(format!("gate {name} takes two qubits"));
    };
    if a == b {
        return Err(format!("gate {name} needs distinct qubits"));
    }
    let mut m = CMatrix::<Rational>::zeros(dim, dim);
    for x in 0..dim {
        let (ba, bb) = (bit(x, *a), bit(x, *b));
        let (y, sign) = match name {
            "CZ" => (x, if ba & bb == 1 { -1 } else { 1 }),
            "CNOT" => (if ba == 1 { x ^ (1 << (n - b)) } else { x }, 1),
            "SWAP" => {
                let y = if ba != bb { x ^ (1 << (n - a)) ^ (1 << (n - b)) } else { x };
                (y, 1)
            }
            _ => return Err(format!("unknown gate {name}")),
        };
        m.set(y, x, c(sign, 0));
    }
    Ok(m)
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, Vec<Violation>> {
        serde_json::from_str(text).map_err(|e| {
            vec![Violation {
                line: Some(e.line()),
                message: e.to_string(),
            }]
        })
    }
}

pub fn load(path: &Path) -> Result<Scenario, Vec<Violation>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![Violation {
            line: None,
            message: format!("{}: {e}", path.display()),
        }]
    })?;
    parse_scenario(&text)
}

/// Parse and validate scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, Vec<Violation>> {
    let file = ScenarioFile::parse(text)?;
    let mut ck = Checker {
        text,
        violations: Vec::new(),
    };
    if file.schema_version != SCHEMA_VERSION {
        ck.fail(
            None,
            format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", file.schema_version),
        );
        return Err(ck.violations);
    }
    let scenario = resolve(&file, &mut ck);
    if ck.violations.is_empty() {
        Ok(scenario.expect("no violations"))
    } else {
        Err(ck.violations)
    }
}

fn resolve(file: &ScenarioFile, ck: &mut Checker) -> Option<Scenario> {
    let mut algebra = None;
    if !file.labels.is_empty() && file.abstract_algebra.is_some() {
        ck.fail(Some("abstract"), "give either labels or an abstract algebra, not both");
        return None;
    }
    if file.labels.is_empty() && file.abstract_algebra.is_none() && file.boolean.is_none() {
        ck.fail(None, "scenario has neither labels, an abstract algebra, nor a Boolean function");
        return None;
    }
    let d = file.modulus;
    if (!file.labels.is_empty() || file.abstract_algebra.is_some()) && d.is_none_or(|d| d < 2) {
        ck.fail(Some("modulus"), "modulus d ≥ 2 is required");
        return None;
    }

    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    if !file.labels.is_empty() {
        let d = d.expect("checked");
        let Some(n) = file.qudits.filter(|&n| n >= 1) else {
            ck.fail(Some("qudits"), "qudits n ≥ 1 is required with labels");
            return None;
        };
        let mut labels = Vec::new();
        for s in &file.labels {
            match parse_label(s, n, d) {
                Ok(l) if l.is_identity() => ck.fail(Some(s), format!("label {s:?} is the identity")),
                Ok(l) => labels.push(l),
                Err(e) => ck.fail(Some(s), format!("label {s:?}: {e}")),
            }
        }
        if !ck.violations.is_empty() {
            return None;
        }
        let mut set = match LabelSet::new(d, n, labels) {
            Ok(s) => s,
            Err(e) => {
                ck.fail(None, e.to_string());
                return None;
            }
        };
        let lookup = |s: &str, ck: &mut Checker| -> Option<Label> {
            match parse_label(s, n, d) {
                Ok(l) => Some(l),
                Err(e) => {
                    ck.fail(Some(s), format!("label {s:?}: {e}"));
                    None
                }
            }
        };
        let mut groups = Vec::new();
        for g in &file.closure {
            let group: Option<Vec<Label>> = g.iter().map(|s| lookup(s, ck)).collect();
            groups.push(group?);
        }
        if let Err(e) = close_within_contexts(&mut set, &groups) {
            ck.fail(Some("closure"), format!("closure: {e}"));
            return None;
        }
        let mut eta = PhaseConvention::natural();
        for (s, &k) in &file.gamma {
            if k >= d {
                ck.fail(Some(s), format!("gamma for {s:?} must be below d = {d}"));
            }
            if let Some(l) = lookup(s, ck) {
                if !set.contains(&l) {
                    ck.fail(Some(s), format!("gamma given for {s:?}, which is not in E"));
                }
                eta.set_gamma(l, k);
            }
        }
        // Every spelling in the file maps to its label's position.
        for (i, l) in set.labels().iter().enumerate() {
            index.insert(l.to_string(), i);
        }
        let all_names = file
            .contexts
            .iter()
            .flatten()
            .chain(&file.e0)
            .chain(&file.labels)
            .chain(file.closure.iter().flatten());
        for s in all_names {
            if let Ok(l) = parse_label(s, n, d) {
                if let Some(p) = set.position(&l) {
                    index.insert(s.clone(), p);
                }
            }
        }
        // Contexts must commute pairwise.
        for ctx in &file.contexts {
            let ls: Vec<Option<Label>> = ctx.iter().map(|s| parse_label(s, n, d).ok()).collect();
            for i in 0..ls.len() {
                for j in 0..i {
                    if let (Some(a), Some(b)) = (&ls[i], &ls[j]) {
                        if !commutes(a, b, d).unwrap_or(false) {
                            ck.fail(Some(&ctx[i]), format!("context contains non-commuting {} and {}", ctx[j], ctx[i]));
                        }
                    }
                }
            }
        }
        algebra = Some(Algebra::Weyl { set, eta });
    } else if let Some(spec) = &file.abstract_algebra {
        let d = d.expect("checked");
        for (i, s) in spec.symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                ck.fail(Some(s), format!("duplicate symbol {s:?}"));
            }
        }
        let mut b = AbstractBackend {
            modulus: d,
            symbols: spec.symbols.clone(),
            ..Default::default()
        };
        for (x, y, z, beta) in &spec.faces {
            let ids: Vec<Option<usize>> = [x, y, z].iter().map(|s| index.get(*s).copied()).collect();
            match ids[..] {
                [Some(a), Some(bb), Some(c)] => {
                    b.sums.insert((a, bb), c);
                    b.beta.insert((a, bb), beta % d);
                }
                _ => ck.fail(Some(x), format!("face [{x}|{y}] names an unknown symbol")),
            }
        }
        for (x, y) in &spec.commuting {
            match (index.get(x), index.get(y)) {
                (Some(&a), Some(&bb)) => b.commuting.push((a, bb)),
                _ => ck.fail(Some(x), format!("commuting pair ({x}, {y}) names an unknown symbol")),
            }
        }
        if !file.contexts.is_empty() || !file.states.is_empty() {
            ck.fail(Some("contexts"), "contexts and states need Weyl labels");
        }
        algebra = Some(Algebra::Abstract(b));
    }

    let to_index = |s: &String, ck: &mut Checker| -> Option<usize> {
        let found = index.get(s).copied();
        if found.is_none() {
            ck.fail(Some(s), format!("{s:?} is not in E"));
        }
        found
    };
    let contexts: Vec<Vec<usize>> = file
        .contexts
        .iter()
        .map(|c| c.iter().filter_map(|s| to_index(s, ck)).collect())
        .collect();
    let e0: Vec<usize> = file.e0.iter().filter_map(|s| to_index(s, ck)).collect();
    {
        let mut sorted = e0.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != e0.len() {
            ck.fail(Some("e0"), "E_0 lists a label twice");
        }
    }
    if let Some(Algebra::Weyl { set, .. }) = &algebra {
        let d = set.modulus();
        'outer: for (i, &a) in e0.iter().enumerate() {
            for &b in &e0[..=i] {
                let (la, lb) = (set.get(a), set.get(b));
                let sum = la.add(lb, d);
                if commutes(la, lb, d).unwrap_or(false) && e0.iter().any(|&c| set.get(c) == &sum) {
                    ck.fail(Some("e0"), format!("E_0 spans a face: {} + {} is in E_0", file.e0[i], lb));
                    break 'outer;
                }
            }
        }
    }
    if file.chi.len() != file.e0.len() {
        ck.fail(
            Some("chi"),
            format!("χ has {} values but E_0 has {} labels", file.chi.len(), file.e0.len()),
        );
    }
    if let Some(d) = d {
        if file.chi.iter().any(|&v| v >= d) {
            ck.fail(Some("chi"), format!("χ values must be below d = {d}"));
        }
    }

    let mut generators = Vec::new();
    if let Some(sym) = &file.symmetry {
        for g in &sym.generators {
            match (&algebra, g.gates.is_empty(), g.perm.is_empty()) {
                (Some(Algebra::Weyl { set, .. }), false, true) if g.phase.is_empty() => {
                    if set.modulus() != 2 {
                        ck.fail(Some("gates"), "gate generators are qubit gates; use perm/phase for d > 2");
                        continue;
                    }
                    let n = set.qudits();
                    let mut u = CMatrix::identity(1usize << n);
                    for (name, sites) in &g.gates {
                        match qubit_gate(name, sites, n) {
                            Ok(m) => u = u.mul(&m).expect("same dimension"),
                            Err(e) => ck.fail(Some(name), e),
                        }
                    }
                    generators.push(Generator::Unitary(u));
                }
                (Some(alg), true, false) => {
                    let m = index.values().max().map_or(0, |&x| x + 1);
                    let dd = d.unwrap_or(2);
                    let mut perm: Vec<usize> = (0..m).collect();
                    let mut phase = vec![0u64; m];
                    for (a, b) in &g.perm {
                        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                            perm[i] = j;
                        } else {
                            ck.fail(Some(a), format!("perm entry {a} → {b} names a label outside E"));
                        }
                    }
                    for (a, &k) in &g.phase {
                        match index.get(a) {
                            Some(&i) => phase[i] = add_mod(0, k, dd),
                            None => ck.fail(Some(a), format!("phase entry {a} names a label outside E")),
                        }
                    }
                    let _ = alg;
                    match SymmetryElement::new(perm, phase) {
                        Ok(e) => generators.push(Generator::Explicit(e)),
                        Err(e) => ck.fail(Some("perm"), e.to_string()),
                    }
                }
                _ => ck.fail(Some("generators"), "each generator needs either gates or perm (with optional phase)"),
            }
        }
    }

    let mut names: Vec<&str> = Vec::new();
    for s in &file.states {
        if names.contains(&s.name.as_str()) {
            ck.fail(Some(&s.name), format!("duplicate state name {:?}", s.name));
        }
        match s.kind {
            StateKind::Ghz if d != Some(2) => ck.fail(Some(&s.name), "the GHZ state is defined for d = 2"),
            StateKind::Basis if s.index.is_none() => ck.fail(Some(&s.name), "a basis state needs an index"),
            StateKind::Mixture => {
                let lambda = s.lambda.clone().unwrap_or_default();
                if parse_rational(&lambda).is_none_or(|l| l < Rational::zero() || l > Rational::one()) {
                    ck.fail(Some(&s.name), format!("mixture weight {lambda:?} must be a rational in [0, 1]"));
                }
                for r in [&s.first, &s.second] {
                    match r {
                        Some(r) if names.contains(&r.as_str()) => {}
                        _ => ck.fail(Some(&s.name), format!("mixture {:?} must name two earlier states", s.name)),
                    }
                }
            }
            StateKind::Vector
                if (s.amplitudes.is_empty()
                    || s.amplitudes
                        .iter()
                        .any(|(re, im)| parse_rational(re).is_none() || parse_rational(im).is_none()))
                => {
                    ck.fail(Some(&s.name), "amplitudes must be a nonempty list of rational [re, im] pairs");
                }
            _ => {}
        }
        names.push(&s.name);
    }

    let boolean = file.boolean.as_ref().and_then(|b| {
        let f = match &b.table {
            TableSpec::Hex(h) => BooleanFunction::from_hex(b.arity, h),
            TableSpec::Bits(bits) => BooleanFunction::new(bits.clone()),
        };
        match f {
            Ok(f) if f.arity() == b.arity => Some(f),
            Ok(f) => {
                ck.fail(Some("table"), format!("table has arity {} but arity {} was declared", f.arity(), b.arity));
                None
            }
            Err(e) => {
                ck.fail(Some("table"), e.to_string());
                None
            }
        }
    });
    let cf_grid: Vec<Rational> = file
        .cf_grid
        .iter()
        .filter_map(|s| match parse_rational(s) {
            Some(r) if r >= Rational::zero() && r <= Rational::one() => Some(r),
            _ => {
                ck.fail(Some(s), format!("CF grid value {s:?} must be a rational in [0, 1]"));
                None
            }
        })
        .collect();

    Some(Scenario {
        name: file.name.clone(),
        algebra,
        contexts,
        e0,
        chi: file.chi.clone(),
        generators,
        states: file.states.clone(),
        boolean,
        cf_grid,
        options: file.options.clone(),
    })
}
