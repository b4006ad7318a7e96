use contextuality::fixtures::*;
use contextuality::fraction::*;
use contextuality::quantum::*;
use contextuality::scalar::rational;
use contextuality::weyl::PhaseConvention;
use contextuality::witness::cf_refined_bounds;
use contextuality::Rational;

fn model(rho: &DensityState<Rational>, contexts: &[Vec<usize>]) -> EmpiricalModel<Rational> {
    let s = mermin_star_sd().unwrap();
    empirical_model(rho, &s.set, contexts, &PhaseConvention::natural()).unwrap()
}

/// `Σ y·e ≥ NCF` must hold with equality at the optimum.
fn dual_value(e: &EmpiricalModel<Rational>, r: &FractionResult<Rational>) -> Rational {
    e.tables().iter().flatten().zip(&r.duals).map(|(p, y)| p * y).sum()
}

#[test]
fn ghz_on_the_full_cover() {
    let e = model(&ghz_state(3, 2).unwrap(), &full_star_contexts());
    let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
    assert_eq!((r.variables, r.constraints), (1024, 80));
    assert_eq!(r.ncf, rational(0, 1));
    assert_eq!(r.cf, rational(1, 1));
    assert_eq!(dual_value(&e, &r), r.ncf);
}

#[test]
fn full_cover_is_state_independent() {
    // Every line of the star has fixed parity, so no global assignment fits.
    let e = model(&DensityState::maximally_mixed(2, 3), &full_star_contexts());
    let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
    assert_eq!(r.ncf, rational(0, 1));
}

#[test]
fn local_lines() {
    let ghz = ghz_state(3, 2).unwrap();
    let e = model(&ghz, &star_contexts());
    let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
    assert_eq!((r.variables, r.constraints), (1024, 64));
    assert_eq!(r.ncf, rational(0, 1));
    let b = cf_refined_bounds(&rational(1, 1), &r.ncf, 1, 4, 1);
    assert!(b.p_holds);
    assert_eq!(b.delta, rational(1, 4));
    assert_eq!(b.delta_bound, rational(1, 4));

    let e = model(&DensityState::maximally_mixed(2, 3), &star_contexts());
    let r = noncontextual_fraction(&e, DEFAULT_ASSIGNMENT_CAP).unwrap();
    assert_eq!(r.ncf, rational(1, 1));
    let parts = decompose(&e, &r).unwrap();
    assert!(parts.contextual.is_none());
    assert_eq!(parts.noncontextual.unwrap(), e);
}
