//! The Mermin-star scenarios used throughout the tests and the CLI.

use crate::complex::{close_within_contexts, ComplexError};
use crate::weyl::{Label, LabelSet, WeylError};

/// Labels of the curated star: the six local observables, the four
/// two-qubit intermediates and the four three-qubit observables of `E_0`.
pub const STAR_LABELS: [&str; 14] = [
    "X1", "X2", "X3", "Y1", "Y2", "Y3", "X1X2", "X1Y2", "Y1X2", "Y1Y2", "X1X2X3", "X1Y2Y3", "Y1X2Y3", "Y1Y2X3",
];

/// `E_0 = {XXX, XYY, YXY, YYX}`.
pub const STAR_E0: [usize; 4] = [10, 11, 12, 13];

/// `χ(XXX) = 0`, `χ(XYY) = χ(YXY) = χ(YYX) = 1`: the GHZ eigenvalues.
pub const STAR_CHI: [u64; 4] = [0, 1, 1, 1];

/// The four lines through the local observables, over [`STAR_LABELS`]
/// indices. These are the contexts whose relations are faces of the complex.
pub fn star_contexts() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2, 10], vec![0, 4, 5, 11], vec![3, 1, 5, 12], vec![3, 4, 2, 13]]
}

/// All five lines, including the `E_0` line. Its joint constraint together
/// with the other four has no solution, so every state is fully contextual
/// on this cover.
pub fn full_star_contexts() -> Vec<Vec<usize>> {
    let mut c = star_contexts();
    c.push(STAR_E0.to_vec());
    c
}

#[derive(Clone, Debug)]
pub struct StarScenario {
    pub set: LabelSet,
    pub e0: Vec<usize>,
    pub chi: Vec<u64>,
    pub contexts: Vec<Vec<usize>>,
}

fn parse_all(names: &[&str]) -> Result<Vec<Label>, WeylError> {
    names.iter().map(|s| Label::parse(s, 3, 2)).collect()
}

/// The state-dependent star with `E_0` and `χ`.
pub fn mermin_star_sd() -> Result<StarScenario, WeylError> {
    Ok(StarScenario {
        set: LabelSet::new(2, 3, parse_all(&STAR_LABELS)?)?,
        e0: STAR_E0.to_vec(),
        chi: STAR_CHI.to_vec(),
        contexts: star_contexts(),
    })
}

/// The curated star with the `E_0` line closed under sums, which adds
/// `Z_2Z_3`, `Z_1Z_3` and `Z_1Z_2`. No `E_0` is distinguished.
pub fn mermin_star_si() -> Result<StarScenario, ComplexError> {
    let labels = parse_all(&STAR_LABELS)?;
    let mut set = LabelSet::new(2, 3, labels.clone())?;
    close_within_contexts(&mut set, &[labels[10..].to_vec()])?;
    Ok(StarScenario {
        set,
        e0: Vec::new(),
        chi: Vec::new(),
        contexts: star_contexts(),
    })
}
