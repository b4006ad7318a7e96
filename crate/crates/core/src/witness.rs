//! Witness probabilities, non-contextuality thresholds and the
//! contextual-fraction refinements of those thresholds.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::zmod::sub_mod;
use crate::assignments::Distance;
use crate::quantum::{expectation, DensityState, QuantumError};
use crate::scalar::{rational_from_usize, Rational, Scalar};
use crate::weyl::{commutes, eigenprojector, scalar_phase, LabelSet, PhaseConvention, WeylError};

/// Float witnesses must clear a threshold by this much to count.
pub const FLOAT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("E_0 is empty")]
    EmptyE0,
    #[error("assignment has {0} values but E_0 has {1} labels")]
    Length(usize, usize),
    #[error("the compatible set is empty: state-independent obstruction, threshold undefined")]
    EmptySet,
    #[error("[β_χ] is trivial: no threshold applies")]
    TrivialClass,
    #[error("{0} and its image {1} do not commute")]
    NotCommuting(String, String),
    #[error("the action moves {0} outside E_0")]
    E0NotPreserved(String),
    #[error("{0}·{1}⁻¹ is not proportional to a Weyl operator")]
    NoPhase(String, String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `p_χ(ρ) = (1/|E_0|) Σ_{a∈E_0} tr(ρ P_{a,χ(a)})`.
pub fn p_chi<T: Scalar>(
    rho: &DensityState<T>,
    set: &LabelSet,
    e0: &[usize],
    chi: &[u64],
    eta: &PhaseConvention,
) -> Result<T, WitnessError> {
    if e0.is_empty() {
        return Err(WitnessError::EmptyE0);
    }
    if chi.len() != e0.len() {
        return Err(WitnessError::Length(chi.len(), e0.len()));
    }
    let d = set.modulus();
    let mut acc = T::zero();
    for (&a, &k) in e0.iter().zip(chi) {
        let p = eigenprojector::<T>(set.get(a), k, eta, d)?;
        acc = acc + expectation(rho, &p)?.re;
    }
    Ok(acc / T::from_ratio(e0.len() as i64, 1))
}

/// `p_{d^hχ}(ρ)`: the average over `(q, a) ∈ Q × E_0` of the probability
/// that `T_{qa} T_a⁻¹` shows the eigenvalue `ω^{χ(qa) − χ(a)}`.
///
/// With `T_{qa} T_a⁻¹ = ω^k T_{qa−a}` this is the projector of `T_{qa−a}`
/// onto `ω^{d^hχ(q,a) − k}`. Terms with `qa = a` contribute 1 when the
/// required exponent is 0 and 0 otherwise.
pub fn p_dh_chi<T: Scalar>(
    rho: &DensityState<T>,
    set: &LabelSet,
    e0: &[usize],
    chi: &[u64],
    action: &[Vec<usize>],
    eta: &PhaseConvention,
) -> Result<T, WitnessError> {
    if e0.is_empty() {
        return Err(WitnessError::EmptyE0);
    }
    if chi.len() != e0.len() {
        return Err(WitnessError::Length(chi.len(), e0.len()));
    }
    let d = set.modulus();
    let mut acc = T::zero();
    for perm in action {
        for (i, &a) in e0.iter().enumerate() {
            let qa = perm[a];
            let j = e0
                .iter()
                .position(|&b| b == qa)
                .ok_or_else(|| WitnessError::E0NotPreserved(set.get(a).to_string()))?;
            let dh = sub_mod(chi[j], chi[i], d);
            if qa == a {
                if dh == 0 {
                    acc = acc + T::one();
                }
                continue;
            }
            let (la, lqa) = (set.get(a), set.get(qa));
            if !commutes(la, lqa, d)? {
                return Err(WitnessError::NotCommuting(la.to_string(), lqa.to_string()));
            }
            let c = lqa.sub(la, d);
            let ratio = eta.matrix::<T>(lqa, d)?.mul(&eta.matrix::<T>(la, d)?.adjoint()).expect("same shape");
            let tc = eta.matrix::<T>(&c, d)?;
            let k = scalar_phase(&ratio.mul(&tc.adjoint()).expect("same shape"), d)
                .ok_or_else(|| WitnessError::NoPhase(lqa.to_string(), la.to_string()))?;
            let p = eigenprojector::<T>(&c, sub_mod(dh, k, d), eta, d)?;
            acc = acc + expectation(rho, &p)?.re;
        }
    }
    Ok(acc / T::from_ratio((action.len() * e0.len()) as i64, 1))
}

fn one_minus(h: usize, total: usize) -> Rational {
    Rational::one() - rational_from_usize(h) / rational_from_usize(total)
}

fn finite(h: &Distance) -> Result<usize, WitnessError> {
    h.value().ok_or(WitnessError::EmptySet)
}

/// `1 − ℍ(χ, Λ̄)/|E_0|`.
pub fn threshold_parity(h: &Distance, e0_len: usize) -> Result<Rational, WitnessError> {
    if e0_len == 0 {
        return Err(WitnessError::EmptyE0);
    }
    Ok(one_minus(finite(h)?, e0_len))
}

/// `1 − 1/|E_0|`, available only when `[β_χ] ≠ 0`.
pub fn threshold_weak(class_trivial: bool, e0_len: usize) -> Result<Rational, WitnessError> {
    if e0_len == 0 {
        return Err(WitnessError::EmptyE0);
    }
    if class_trivial {
        return Err(WitnessError::TrivialClass);
    }
    Ok(one_minus(1, e0_len))
}

/// `1 − ℍ(d^hχ, d^hΛ̄_Q)/(|Q||E_0|)`.
pub fn threshold_symmetry(h_dh: &Distance, q_len: usize, e0_len: usize) -> Result<Rational, WitnessError> {
    if e0_len == 0 {
        return Err(WitnessError::EmptyE0);
    }
    Ok(one_minus(finite(h_dh)?, q_len * e0_len))
}

/// `1 − ℍ(χ, Λ̄_Q)/|E_0|`.
pub fn threshold_symmetry_parity(h_q: &Distance, e0_len: usize) -> Result<Rational, WitnessError> {
    threshold_parity(h_q, e0_len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Contextual,
    Inconclusive,
}

/// `p > threshold`, exactly for exact scalars and with a margin of
/// [`FLOAT_MARGIN`] otherwise.
pub fn exceeds<T: Scalar>(p: &T, threshold: &Rational) -> bool {
    if T::EXACT {
        p.to_rational().map_or(false, |r| &r > threshold)
    } else {
        p.to_f64() - Scalar::to_f64(threshold) > FLOAT_MARGIN
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    /// `1 − ℍ(χ, Λ̄)/|E_0|`
    Parity,
    /// `1 − 1/|E_0|` from `[β_χ] ≠ 0`
    Weak,
    /// `1 − ℍ(d^hχ, d^hΛ̄_Q)/(|Q||E_0|)`
    Symmetry,
    /// `1 − ℍ(χ, Λ̄_Q)/|E_0|`
    SymmetryParity,
}

impl ThresholdKind {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdKind::Parity => "parity",
            ThresholdKind::Weak => "weak",
            ThresholdKind::Symmetry => "symmetry",
            ThresholdKind::SymmetryParity => "symmetry-parity",
        }
    }
}

/// A witness probability compared with one threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub p: Rational,
    pub p_exact: bool,
    pub threshold: Rational,
    /// `p − threshold`; reported for the parity witness only.
    pub delta: Option<Rational>,
    pub verdict: Verdict,
    pub bound_checked: Vec<(String, bool)>,
    pub provenance: ThresholdKind,
}

impl WitnessReport {
    pub fn new<T: Scalar>(p: &T, threshold: Rational, provenance: ThresholdKind) -> Self {
        let verdict = if exceeds(p, &threshold) {
            Verdict::Contextual
        } else {
            Verdict::Inconclusive
        };
        let pr = p.to_rational().unwrap_or_else(Rational::zero);
        let delta = match provenance {
            ThresholdKind::Parity | ThresholdKind::Weak => Some(&pr - &threshold),
            _ => None,
        };
        Self {
            p: pr,
            p_exact: T::EXACT,
            threshold,
            delta,
            verdict,
            bound_checked: Vec::new(),
            provenance,
        }
    }
}

/// Comparison of a witness with its contextual-fraction refinement.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// `1 − NCF·ℍ/(|Q||E_0|)`
    pub bound: Rational,
    pub p_holds: bool,
    /// `bound − p`
    pub slack: Rational,
    /// `p − (1 − ℍ/(|Q||E_0|))`
    pub delta: Rational,
    /// `CF·ℍ/(|Q||E_0|)`
    pub delta_bound: Rational,
    pub delta_holds: bool,
}

/// Check `p ≤ 1 − NCF·ℍ/(|Q||E_0|)` and `Δ ≤ CF·ℍ/(|Q||E_0|)`. Pass
/// `q_len = 1` for the parity witness.
pub fn cf_refined_bounds<T: Scalar>(p: &T, ncf: &Rational, h: usize, e0_len: usize, q_len: usize) -> BoundReport {
    let total = rational_from_usize(q_len * e0_len);
    let hr = rational_from_usize(h);
    let cf = Rational::one() - ncf;
    let bound = Rational::one() - ncf * &hr / &total;
    let pr = p.to_rational().unwrap_or_else(Rational::zero);
    let delta = &pr - (Rational::one() - &hr / &total);
    let delta_bound = cf * hr / total;
    let tol = if T::EXACT {
        Rational::zero()
    } else {
        crate::scalar::rationalize(FLOAT_MARGIN, 1_000_000_000_000)
    };
    let slack = &bound - &pr;
    BoundReport {
        p_holds: !(-&slack > tol),
        delta_holds: !(&delta - &delta_bound > tol),
        bound,
        slack,
        delta,
        delta_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignments::Closest;
    use crate::quantum::ghz_state;
    use crate::scalar::rational;
    use crate::weyl::Label;

    fn star() -> (LabelSet, Vec<usize>) {
        let names = ["X1X2X3", "X1Y2Y3", "Y1X2Y3", "Y1Y2X3"];
        let set = LabelSet::new(2, 3, names.iter().map(|s| Label::parse(s, 3, 2).unwrap()).collect()).unwrap();
        (set, vec![0, 1, 2, 3])
    }

    fn dist(h: usize) -> Distance {
        Distance::Finite(Closest {
            distance: h,
            image: vec![],
            member: vec![],
            exhaustive: true,
            nodes: 0,
        })
    }

    #[test]
    fn ghz_saturates_the_star_witness() {
        let (set, e0) = star();
        let rho = ghz_state::<Rational>(3, 2).unwrap();
        let eta = PhaseConvention::natural();
        assert_eq!(p_chi(&rho, &set, &e0, &[0, 1, 1, 1], &eta).unwrap(), rational(1, 1));
        let mixed = DensityState::<Rational>::maximally_mixed(2, 3);
        assert_eq!(p_chi(&mixed, &set, &e0, &[0, 1, 1, 1], &eta).unwrap(), rational(1, 2));
    }

    #[test]
    fn swap_symmetry_on_ghz() {
        let (set, e0) = star();
        let rho = ghz_state::<Rational>(3, 2).unwrap();
        let eta = PhaseConvention::natural();
        let action = vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]];
        assert_eq!(p_dh_chi(&rho, &set, &e0, &[0, 1, 1, 1], &action, &eta).unwrap(), rational(1, 1));
        let only_identity = vec![vec![0, 1, 2, 3]];
        assert_eq!(p_dh_chi(&rho, &set, &e0, &[0, 1, 1, 1], &only_identity, &eta).unwrap(), rational(1, 1));
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold_parity(&dist(1), 4).unwrap(), rational(3, 4));
        assert_eq!(threshold_parity(&dist(0), 4).unwrap(), rational(1, 1));
        assert_eq!(threshold_parity(&dist(4), 4).unwrap(), rational(0, 1));
        assert_eq!(threshold_parity(&Distance::EmptySet, 4), Err(WitnessError::EmptySet));
        assert_eq!(threshold_weak(false, 4).unwrap(), rational(3, 4));
        assert_eq!(threshold_weak(false, 1).unwrap(), rational(0, 1));
        assert_eq!(threshold_weak(true, 4), Err(WitnessError::TrivialClass));
        assert_eq!(threshold_symmetry(&dist(2), 2, 4).unwrap(), rational(3, 4));
    }

    #[test]
    fn verdicts_compare_exactly() {
        let t = rational(3, 4);
        assert!(!exceeds(&rational(3, 4), &t));
        assert!(exceeds(&rational(4, 5), &t));
        assert!(!exceeds(&(0.75 + 1e-12), &t));
        let r = WitnessReport::new(&rational(1, 1), t, ThresholdKind::Parity);
        assert_eq!(r.verdict, Verdict::Contextual);
        assert_eq!(r.delta, Some(rational(1, 4)));
    }

    #[test]
    fn refined_bounds() {
        let r = cf_refined_bounds(&rational(1, 1), &rational(0, 1), 1, 4, 1);
        assert_eq!(r.bound, rational(1, 1));
        assert_eq!(r.slack, rational(0, 1));
        assert_eq!(r.delta, r.delta_bound);
        assert!(r.p_holds && r.delta_holds);
        let r = cf_refined_bounds(&rational(1, 2), &rational(1, 1), 1, 4, 1);
        assert_eq!(r.bound, rational(3, 4));
        assert_eq!(r.slack, rational(1, 4));
        assert!(r.p_holds);
        let r = cf_refined_bounds(&rational(1, 1), &rational(1, 1), 1, 4, 1);
        assert!(!r.p_holds);
    }
}
