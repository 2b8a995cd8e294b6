//! Invariants of four Z2 actions: which are Hopf-Galois, and which gauged
//! circle theories are truncated.

use std::sync::Arc;

use aqftlab::algebra::RationalAlgebra;
use aqftlab::aqft::models::{cl2, lambda2};
use aqftlab::fincat::build_circle_model;
use aqftlab::gauging::{clifford_parity, exterior_parity, is_hopf_galois, is_truncated, trivial_theory};
use aqftlab::grouprep::{FiniteGroup, GroupAction};

fn parity(a: Arc<RationalAlgebra>) -> GroupAction {
    let signs: Vec<i64> = (0..a.dim())
        .map(|m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    GroupAction::parity(a, &signs).expect("parity is an automorphism")
}

fn main() {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let cases = [
        (
            "K, trivial",
            GroupAction::trivial(z2.clone(), Arc::new(RationalAlgebra::field())),
        ),
        ("O(Z2), translation", GroupAction::translation(z2.clone())),
        ("Cl2, parity", parity(cl2())),
        ("Lambda2, parity", parity(lambda2())),
    ];
    for (name, act) in &cases {
        let v = is_hopf_galois(act).expect("canonical map is defined");
        println!(
            "{name}: {} -> {}, rank {}: {}",
            v.source_dim,
            v.target_dim,
            v.rank,
            v.status.as_str()
        );
    }
    let model = build_circle_model(3).expect("n = 3");
    for (name, e) in [
        ("trivial", trivial_theory(&model.opens, z2)),
        ("Clifford", clifford_parity(&model)),
        ("exterior", exterior_parity(&model)),
    ] {
        let v = is_truncated(&e).expect("canonical map is defined");
        println!("{name} theory truncated: {}", v.truncated);
    }
}
