//! Random Weyl scenarios for property checks.
//!
//! Label sets are unions of commuting spans, so they carry faces. A
//! symmetric scenario is closed under the cyclic shift of qudits and comes
//! with that shift as a symmetry element.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{ChainComplex, RelativeComplex, WeylBackend, DEFAULT_VOLUME_CAP};
use crate::symmetry::SymmetryElement;
use crate::weyl::{Label, LabelSet, PhaseConvention};

#[derive(Clone, Debug)]
pub struct RandomScenario {
    pub set: LabelSet,
    pub complex: ChainComplex,
    pub e0: Vec<usize>,
    /// Cyclic qudit shift, present for symmetric scenarios.
    pub shift: Option<SymmetryElement>,
}

impl RandomScenario {
    pub fn modulus(&self) -> u64 {
        self.set.modulus()
    }

    pub fn relative(&self) -> RelativeComplex {
        RelativeComplex::new(self.complex.clone(), &self.e0).expect("E_0 drawn from E")
    }

    /// Orbits of the shift on `E_0`, as positions in `e0`.
    fn e0_orbits(&self) -> Vec<Vec<usize>> {
        let Some(g) = &self.shift else {
            return (0..self.e0.len()).map(|i| vec![i]).collect();
        };
        let mut seen = vec![false; self.e0.len()];
        let mut orbits = Vec::new();
        for i in 0..self.e0.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut e = self.e0[i];
            loop {
                let pos = self.e0.iter().position(|&x| x == e).expect("E_0 closed");
                if seen[pos] {
                    break;
                }
                seen[pos] = true;
                orbit.push(pos);
                e = g.perm[e];
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// A random `χ`, constant on shift orbits when the scenario is symmetric.
    pub fn random_chi<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        let d = self.modulus();
        let mut chi = vec![0; self.e0.len()];
        for orbit in self.e0_orbits() {
            let v = rng.gen_range(0..d);
            for p in orbit {
                chi[p] = v;
            }
        }
        chi
    }
}

fn random_label<R: Rng>(rng: &mut R, n: usize, d: u64) -> Label {
    loop {
        let z: Vec<u64> = (0..n).map(|_| rng.gen_range(0..d)).collect();
        let x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..d)).collect();
        let l = Label::new(z, x, d).expect("digits below d");
        if !l.is_identity() {
            return l;
        }
    }
}

fn shifted(l: &Label, d: u64) -> Label {
    let n = l.qudits();
    let rot = |v: &[u64]| (0..n).map(|j| v[(j + n - 1) % n]).collect::<Vec<u64>>();
    Label::new(rot(l.z()), rot(l.x()), d).expect("digits below d")
}

/// Nonzero elements of the span of `gens`.
fn span(gens: &[Label], d: u64) -> Vec<Label> {
    let n = gens[0].qudits();
    let mut out: Vec<Label> = vec![Label::identity(n)];
    for g in gens {
        let mut next = Vec::new();
        for base in &out {
            for k in 0..d {
                let l = base.add(&g.scale(k, d), d);
                if !next.contains(&l) {
                    next.push(l);
                }
            }
        }
        out = next;
    }
    out.retain(|l| !l.is_identity());
    out
}

/// Draw a scenario on `n` qudits with at most `max_edges` labels.
///
/// Contexts are spans of one or two commuting labels; with `symmetric`
/// every context is added together with its shifts.
pub fn random_scenario<R: Rng>(rng: &mut R, n: usize, d: u64, max_edges: usize, symmetric: bool) -> RandomScenario {
    // A single qubit has no faces at all, so stop insisting after a while.
    for attempt in 0.. {
        let mut labels: Vec<Label> = Vec::new();
        for _ in 0..6 {
            let a = random_label(rng, n, d);
            let mut gens = vec![a.clone()];
            if rng.gen_bool(0.7) {
                let b = random_label(rng, n, d);
                if crate::weyl::commutes(&a, &b, d).expect("same shape") {
                    gens.push(b);
                }
            }
            let mut block = span(&gens, d);
            if symmetric {
                let mut images = block.clone();
                for _ in 1..n {
                    images = images.iter().map(|l| shifted(l, d)).collect();
                    block.extend(images.iter().cloned());
                }
            }
            let mut candidate = labels.clone();
            for l in block {
                if !candidate.contains(&l) {
                    candidate.push(l);
                }
            }
            if candidate.len() <= max_edges {
                labels = candidate;
            }
        }
        if labels.len() < 2 {
            continue;
        }
        let set = LabelSet::new(d, n, labels).expect("distinct labels");
        let complex = ChainComplex::build(&WeylBackend::new(set.clone(), PhaseConvention::natural()), DEFAULT_VOLUME_CAP)
            .expect("small complex");
        if complex.faces().is_empty() && attempt < 20 {
            continue;
        }
        let shift = symmetric.then(|| {
            let perm = set
                .labels()
                .iter()
                .map(|l| set.position(&shifted(l, d)).expect("closed under the shift"))
                .collect();
            SymmetryElement::new(perm, vec![0; set.len()]).expect("permutation")
        });
        // E_0: whole shift orbits, leaving at least one edge outside.
        let m = set.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        let target = rng.gen_range(1..=m.min(5));
        let mut e0: Vec<usize> = Vec::new();
        for start in order {
            if e0.len() >= target || e0.contains(&start) {
                continue;
            }
            let mut orbit = vec![start];
            if let Some(g) = &shift {
                let mut e = g.perm[start];
                while e != start {
                    orbit.push(e);
                    e = g.perm[e];
                }
            }
            let mut grown = e0.clone();
            grown.extend(orbit);
            // E_0 may not contain a whole face.
            let spans_face = complex
                .faces()
                .iter()
                .any(|f| [f.a, f.b, f.sum].iter().all(|x| grown.contains(x)));
            if grown.len() < m && !spans_face {
                e0 = grown;
            }
        }
        if e0.is_empty() {
            continue;
        }
        e0.sort_unstable();
        return RandomScenario {
            set,
            complex,
            e0,
            shift,
        };
    }
    unreachable!()
}
