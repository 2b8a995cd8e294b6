use std::sync::Arc;

use super::*;
use crate::algebra::{RationalAlgebra, RightModule};
use crate::aqft::check_aqft;
use crate::aqft::models::{cl2, lambda2};
use crate::fincat::build_circle_model;
use crate::grouprep::{invariants, FiniteGroup, GroupAction};
use crate::random;

fn z2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2))
}

fn parity(a: Arc<RationalAlgebra>) -> Arc<GroupAction> {
    let signs: Vec<i64> = (0..a.dim())
        .map(|m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    Arc::new(GroupAction::parity(a, &signs).unwrap())
}

#[test]
fn orbifold_of_trivial_and_clifford() {
    let model = build_circle_model(3).unwrap();
    let t = trivial_theory(&model.opens, z2());
    let (orb, _) = orbifold_invariants(&t);
    assert!(orb.same_data(&t.theory));

    let c = clifford_parity(&model);
    let (orb, _) = orbifold_invariants(&c);
    assert!(check_aqft(&orb).passed());
    for obj in model.opens.base().objects() {
        assert_eq!(orb.algebras[obj].dim() * 2, c.theory.algebras[obj].dim());
    }
}

#[test]
fn truncation_matches_orbifold() {
    let model = build_circle_model(3).unwrap();
    for e in [trivial_theory(&model.opens, z2()), clifford_parity(&model)] {
        let t = truncate(&gauge(&e)).unwrap();
        assert!(t.is_two_sided_inverse());
        assert!(check_aqft(&t.theory).passed());
    }
    let t = truncate(&gauge(&trivial_theory(&model.opens, z2()))).unwrap();
    assert!(t.theory.algebras.iter().all(|a| a.dim() == 1));
}

#[test]
fn trivial_group_truncates_to_the_theory() {
    let model = build_circle_model(3).unwrap();
    let theory = crate::aqft::models::clifford_theory(&model);
    let e = EquivariantAqft::trivial_action(theory.clone(), Arc::new(FiniteGroup::trivial()));
    let t = truncate(&gauge(&e)).unwrap();
    for obj in model.opens.base().objects() {
        assert_eq!(t.theory.algebras[obj].dim(), theory.algebras[obj].dim());
    }
    assert!(t.orbifold.same_data(&theory));
}

#[test]
fn clifford_even_part_end_algebra() {
    let model = build_circle_model(2).unwrap();
    let e = EquivariantAqft::trivial_action(crate::aqft::models::constant_theory(&model.opens, cl2()), z2());
    let e = EquivariantAqft::new(e.theory.clone(), z2(), vec![parity(cl2()); e.actions.len()]).unwrap();
    let t = truncate(&gauge(&e)).unwrap();
    assert!(t.ends.iter().all(|end| end.algebra.dim() == 2));
}

#[test]
fn canonical_map_dimensions() {
    let k = GroupAction::trivial(z2(), Arc::new(RationalAlgebra::field()));
    let v = is_hopf_galois(&k).unwrap();
    assert_eq!((v.source_dim, v.target_dim), (1, 2));
    assert_eq!(v.status, GaloisStatus::NotSurjective);
    assert!(v.witness_is_valid());

    let o = GroupAction::translation(z2());
    let v = is_hopf_galois(&o).unwrap();
    assert_eq!((v.source_dim, v.target_dim, v.rank), (4, 4, 4));
    assert!(v.is_bijective());

    let v = is_hopf_galois(&parity(cl2())).unwrap();
    assert_eq!((v.source_dim, v.target_dim, v.rank), (8, 8, 8));
    assert!(v.is_bijective());

    let v = is_hopf_galois(&parity(lambda2())).unwrap();
    assert_eq!(v.status, GaloisStatus::NotSurjective);
    assert!(v.rank < 8);
    // 1 ⊗ e_identity
    assert_eq!(v.witness.as_ref().unwrap(), &crate::exactlin::vector::unit(8, 0));
    assert!(v.witness_is_valid());
}

#[test]
fn truncatedness_verdicts() {
    let model = build_circle_model(3).unwrap();
    assert!(!is_truncated(&trivial_theory(&model.opens, z2())).unwrap().truncated);
    assert!(is_truncated(&clifford_parity(&model)).unwrap().truncated);
    let ext = is_truncated(&exterior_parity(&model)).unwrap();
    assert!(!ext.truncated);
    assert!(ext.per_object.iter().all(|(_, v)| !v.is_bijective()));
}

#[test]
fn unit_on_b_is_iso() {
    for act in [
        parity(cl2()),
        parity(lambda2()),
        Arc::new(GroupAction::translation(z2())),
    ] {
        let inv = invariants(&act);
        let b = RightModule::free(inv.algebra.clone(), 1);
        assert!(unit_component(&act, &inv, &b).is_iso());
    }
}

#[test]
fn counit_on_random_modules_for_translation() {
    let act = Arc::new(GroupAction::translation(z2()));
    let inv = invariants(&act);
    let mut rng = random::rng(11);
    let modules: Vec<_> = (0..10).map(|_| random_equivariant_module(&mut rng, &act, 4)).collect();
    assert!(modules.iter().all(|m| m.dim() <= 4 && m.validate().is_ok()));
    let b_modules: Vec<_> = (0..5)
        .map(|_| RightModule::random(&mut rng, inv.algebra.clone(), 3))
        .collect();
    let (report, witness) = phi_psi_check(&act, &inv, &b_modules, &modules, 4);
    assert_eq!(report.counit_isos, 10);
    assert_eq!(report.unit_isos, 5);
    assert!(witness.is_none());
}

#[test]
fn counit_fails_on_sign_for_trivial_action() {
    let act = Arc::new(GroupAction::trivial(z2(), Arc::new(RationalAlgebra::field())));
    let inv = invariants(&act);
    let w = counit_failure_witness(&act, &inv, 4).unwrap();
    assert_eq!(w.module.dim(), 1);
    assert_eq!(w.component.source_dim, 0);
}

#[test]
fn exterior_has_counit_witness() {
    let act = parity(lambda2());
    let inv = invariants(&act);
    let w = counit_failure_witness(&act, &inv, 8).unwrap();
    assert!(!w.component.is_iso());
}
