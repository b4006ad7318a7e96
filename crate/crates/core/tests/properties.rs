use contextuality::algebra::SearchLimits;
use contextuality::assignments::*;
use contextuality::brute;
use contextuality::complex::{Cochain, Home};
use contextuality::sampling::{random_scenario, RandomScenario};
use contextuality::symmetry::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw(seed: u64, symmetric: bool) -> (RandomScenario, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let d = if rng.gen_bool(0.5) { 2 } else { 3 };
    let max = if d == 2 { 12 } else { 10 };
    (random_scenario(&mut rng, n, d, max, symmetric), rng)
}

fn quotient(s: &RandomScenario) -> (SymmetryGroup, QuotientAction) {
    let g = s.shift.clone().expect("symmetric scenario");
    let grp = SymmetryGroup::generate(&[g], s.set.len(), s.modulus(), DEFAULT_GROUP_CAP).unwrap();
    let qa = QuotientAction::new(&grp);
    (grp, qa)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_and_coboundaries_square_to_zero(seed in any::<u64>()) {
        let (s, mut rng) = draw(seed, false);
        let c = &s.complex;
        let d = c.modulus();
        if !c.volumes().is_empty() {
            prop_assert!(c.boundary2().mul(&c.boundary3()).unwrap().is_zero());
        }
        let alpha = Cochain::new(1, (0..c.edge_count()).map(|_| rng.gen_range(0..d)).collect(), d, Home::Plain);
        let da = c.coboundary(&alpha).unwrap();
        prop_assert!(c.coboundary(&da).unwrap().is_zero());
        prop_assert!(c.is_cocycle(&c.beta()).unwrap());
        let rc = s.relative();
        let chi = s.random_chi(&mut rng);
        let bc = rc.beta_chi(&c.beta(), &chi).unwrap();
        prop_assert!(rc.is_cocycle(&bc).unwrap());
    }

    #[test]
    fn lambda_matches_enumeration(seed in any::<u64>()) {
        let (s, mut rng) = draw(seed, false);
        let c = &s.complex;
        prop_assume!(brute::space_size(c).is_some_and(|n| n <= 1 << 16));
        let set = beta_compatible_set(c).unwrap();
        let members = brute::lambda(c);
        prop_assert_eq!(set.size().unwrap() as usize, members.len());
        prop_assert!(members.iter().all(|m| set.satisfies(m)));
        let chi = s.random_chi(&mut rng);
        let h = hamming_to_set(&chi, &set, &s.e0, &SearchLimits::default()).unwrap();
        prop_assert_eq!(h.value(), brute::hamming(&chi, &members, &s.e0));
    }

    #[test]
    fn lambda_q_matches_enumeration(seed in any::<u64>()) {
        let (s, mut rng) = draw(seed, true);
        let c = &s.complex;
        prop_assume!(brute::space_size(c).is_some_and(|n| n <= 1 << 16));
        let (_, qa) = quotient(&s);
        let set = lambda_q_set(c, qa.perms()).unwrap();
        let members = brute::lambda_q(c, qa.perms());
        prop_assert_eq!(set.size().unwrap() as usize, members.len());
        prop_assert!(members.iter().all(|m| set.satisfies(m)));
        // Λ̄ ⊆ Λ̄_Q
        prop_assert!(brute::lambda(c).iter().all(|m| set.satisfies(m)));
        let chi = s.random_chi(&mut rng);
        let limits = SearchLimits::default();
        let h = hamming_to_set(&chi, &set, &s.e0, &limits).unwrap();
        prop_assert_eq!(h.value(), brute::hamming(&chi, &members, &s.e0));
        let hdh = hamming_dh(&chi, &set, qa.perms(), &s.e0, c, &limits).unwrap();
        prop_assert_eq!(hdh.value(), brute::hamming_dh(&chi, &members, qa.perms(), &s.e0, c.modulus()));
    }

    #[test]
    fn equal_relative_classes_give_equal_distances(seed in any::<u64>()) {
        let (s, mut rng) = draw(seed, false);
        let rc = s.relative();
        let set = beta_compatible_set(&s.complex).unwrap();
        let chi = s.random_chi(&mut rng);
        let other = s.random_chi(&mut rng);
        let v = invariance_check_parity(&chi, &other, &rc, &set, &SearchLimits::default()).unwrap();
        prop_assert!(v.consistent);
        let same = invariance_check_parity(&chi, &chi, &rc, &set, &SearchLimits::default()).unwrap();
        prop_assert!(same.classes_equal);
    }

    #[test]
    fn equal_group_classes_give_equal_distances(seed in any::<u64>()) {
        let (s, mut rng) = draw(seed, true);
        let rc = s.relative();
        let c = &s.complex;
        let (grp, qa) = quotient(&s);
        let set = lambda_q_set(c, qa.perms()).unwrap();
        let limits = SearchLimits::default();
        let chi = s.random_chi(&mut rng);
        let other = s.random_chi(&mut rng);
        let phi = phi_chi(&qa, &phi_chi_tilde(&grp, &rc, &chi).unwrap(), &rc).unwrap();
        let pt_other = phi_chi_tilde(&grp, &rc, &other).unwrap();
        check_lemma_identities(&grp, &rc, &other, &pt_other).unwrap();
        let phi_other = phi_chi(&qa, &pt_other, &rc).unwrap();
        if h1_classes_equal(&phi, &phi_other, &qa, &rc).unwrap() {
            let a = hamming_dh(&chi, &set, qa.perms(), &s.e0, c, &limits).unwrap().value();
            let b = hamming_dh(&other, &set, qa.perms(), &s.e0, c, &limits).unwrap().value();
            prop_assert_eq!(a, b);
            let a = hamming_to_set(&chi, &set, &s.e0, &limits).unwrap().value();
            let b = hamming_to_set(&other, &set, &s.e0, &limits).unwrap().value();
            prop_assert_eq!(a, b);
        }
    }
}
