mod support;

use homlts_core::cohomology::{
    coboundary, coboundary_membership, cochain_basis, cohomology_basis, is_cochain, ComplexContext,
};
use homlts_core::deformations::{
    apply_isomorphism, check_isomorphism, deformations_equivalent, extend_to_order, obstruction,
    try_extend, verify_deformation, Deformation,
};
use homlts_core::exactlin::{int, Matrix};
use homlts_core::structures::{section5, HomLts};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::instances::{random_instance, z2};
use support::{obstruction_by_formula, oracle, random_first_order, random_psi};

fn s5() -> Deformation {
    let ex = section5();
    Deformation::new(ex.lts, ex.action, ex.deformation_terms).unwrap()
}

/// Checks every obstruction of a run and the extension it produced.
fn check_run(d: &Deformation, target: usize) -> Option<usize> {
    let ctx = d.context().unwrap();
    let run = extend_to_order(d, target).unwrap();
    for ob in &run.obstructions {
        assert!(is_cochain(&ctx, &ob.cochain).unwrap().passed());
        assert!(coboundary(&ctx, &ob.cochain).unwrap().is_zero());
        let terms: Vec<_> = (1..ob.target_order).map(|r| run.deformation.mu(r)).collect();
        let formula = obstruction_by_formula(&terms, d.base().alpha(), ob.target_order);
        assert_eq!(ob.cochain.coeffs(), &formula[..]);
        let membership = coboundary_membership(&ctx, &ob.cochain).unwrap();
        assert_eq!(membership.is_some(), ob.witness.is_some());
    }
    assert!(verify_deformation(&run.deformation, run.deformation.order()).unwrap().passed());
    run.first_blocked
}

#[test]
fn section5_obstructions_vanish_through_order_three() {
    assert_eq!(check_run(&s5(), 3), None);
    let ob = obstruction(&s5(), 2).unwrap();
    assert!(ob.cochain.value(&[1, 0, 0, 0, 0]).iter().all(Zero::is_zero));
    let ctx = s5().context().unwrap();
    let raw = oracle::delta(&ctx, ob.cochain.coeffs(), 5);
    assert!(raw.iter().all(Zero::is_zero));
}

#[test]
fn try_extend_agrees_with_membership_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut runs, mut blocked) = (0, 0);
    for _ in 0..30 {
        let inst = random_instance(&mut rng);
        let Some(d) = random_first_order(&mut rng, &inst) else { continue };
        runs += 1;
        if check_run(&d, 3).is_some() {
            blocked += 1;
        }
        let ob = obstruction(&d, 2).unwrap();
        let ctx = d.context().unwrap();
        let ext = try_extend(&d).unwrap();
        assert_eq!(ext.is_some(), coboundary_membership(&ctx, &ob.cochain).unwrap().is_some());
        if let Some(e) = ext {
            assert!(verify_deformation(&e, 2).unwrap().passed());
            assert_eq!(coboundary(&ctx, &e.term_cochain(2)).unwrap(), ob.cochain);
        }
    }
    assert!(runs >= 10, "{runs}");
    assert!(blocked >= 1, "{blocked}");
}

#[test]
fn blocked_fixture_is_detected_by_rank() {
    let t = HomLts::zero(Matrix::identity(2)).unwrap();
    let action = z2(&t, Matrix::identity(2).scale(&int(-1))).unwrap();
    let ctx = ComplexContext::adjoint(t.clone(), Some(action.clone()), true).unwrap();
    let mut blocked = 0;
    for rep in cohomology_basis(&ctx, 3).unwrap().representatives() {
        let d = Deformation::new(t.clone(), Some(action.clone()), vec![rep.coeffs().to_vec()]).unwrap();
        let ob = obstruction(&d, 2).unwrap();
        let images: Vec<_> = cochain_basis(&ctx, 3)
            .unwrap()
            .columns()
            .iter()
            .map(|c| oracle::delta(&ctx, c.coeffs(), 3))
            .collect();
        let width = cochain_basis(&ctx, 5).unwrap().raw_len();
        let mut aug = images.clone();
        aug.push(ob.cochain.coeffs().to_vec());
        let solvable = oracle::rank(&aug, width) == oracle::rank(&images, width);
        assert_eq!(try_extend(&d).unwrap().is_some(), solvable);
        blocked += usize::from(!solvable);
    }
    assert!(blocked >= 1);
}

#[test]
fn first_order_transport_is_a_coboundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = extend_to_order(&s5(), 3).unwrap().deformation;
    let ctx = d.context().unwrap();
    for _ in 0..10 {
        let psi = random_psi(&mut rng, &d, 3);
        let moved = apply_isomorphism(&psi, &d, 3).unwrap();
        assert!(verify_deformation(&moved, 3).unwrap().passed());
        let diff = d.term_cochain(1).sub(&moved.term_cochain(1)).unwrap();
        let psi1: Vec<_> = (0..2).flat_map(|i| psi.psi(1).column(i)).collect();
        assert_eq!(diff.coeffs(), &oracle::delta(&ctx, &psi1, 1)[..]);
        let found = deformations_equivalent(&d, &moved, 3).unwrap().expect("witness");
        assert!(check_isomorphism(&found, &d, &moved, 3).unwrap().passed());
    }
}

#[test]
fn random_instances_recover_constructed_equivalences() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for _ in 0..40 {
        let inst = random_instance(&mut rng);
        let Some(d) = random_first_order(&mut rng, &inst) else { continue };
        let Some(d) = try_extend(&d).unwrap() else { continue };
        let psi = random_psi(&mut rng, &d, 2);
        let moved = apply_isomorphism(&psi, &d, 2).unwrap();
        let found = deformations_equivalent(&d, &moved, 2).unwrap().expect("witness");
        assert!(check_isomorphism(&found, &d, &moved, 2).unwrap().passed(), "{}", inst.name);
        pairs += 1;
    }
    assert!(pairs >= 10, "{pairs}");
}

#[test]
fn non_cohomologous_infinitesimals_are_inequivalent() {
    let d = s5();
    let ctx = d.context().unwrap();
    let reps = cohomology_basis(&ctx, 3).unwrap().representatives().to_vec();
    assert!(!reps.is_empty());
    for c in [1, 2, -1] {
        let shifted = d.term_cochain(1).add(&reps[0].scale(&int(c))).unwrap();
        let other = Deformation::new(d.base().clone(), d.action().cloned(), vec![shifted.into_coeffs()]).unwrap();
        let diff = d.term_cochain(1).sub(&other.term_cochain(1)).unwrap();
        assert!(coboundary_membership(&ctx, &diff).unwrap().is_none());
        assert!(deformations_equivalent(&d, &other, 1).unwrap().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transport_round_trips_through_the_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = extend_to_order(&s5(), 2).unwrap().deformation;
        let psi = random_psi(&mut rng, &d, 2);
        let moved = apply_isomorphism(&psi, &d, 2).unwrap();
        prop_assert!(check_isomorphism(&psi, &d, &moved, 2).unwrap().passed());
        prop_assert_eq!(apply_isomorphism(&psi.inverse(2), &moved, 2).unwrap(), d);
    }

    #[test]
    fn extended_terms_solve_the_deformation_equation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        if let Some(d) = random_first_order(&mut rng, &inst) {
            let ob = obstruction(&d, 2).unwrap();
            prop_assert!(ob.in_cochain_space && ob.is_cocycle);
            if let Some(e) = try_extend(&d).unwrap() {
                let ctx = d.context().unwrap();
                prop_assert_eq!(coboundary(&ctx, &e.term_cochain(2)).unwrap(), ob.cochain);
            }
        }
    }
}
