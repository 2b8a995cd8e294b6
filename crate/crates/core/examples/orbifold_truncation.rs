//! Gauging the Clifford theory by parity and truncating recovers the
//! even (orbifold) subtheory.

use aqftlab::fincat::build_circle_model;
use aqftlab::gauging::{clifford_parity, gauge, truncate};

fn main() {
    let model = build_circle_model(3).expect("n = 3");
    let e = clifford_parity(&model);
    let g = gauge(&e);
    let t = truncate(&g).expect("comparison maps are invertible");
    let base = model.opens.base();
    for c in base.objects() {
        println!(
            "{}: algebra dim {}, pointing dim {}, End dim {}, invariants dim {}",
            base.object_name(c),
            e.theory.algebras[c].dim(),
            g.pointings[c].dim(),
            t.theory.algebras[c].dim(),
            t.orbifold.algebras[c].dim()
        );
    }
    println!("iso and inverse compose to identities: {}", t.is_two_sided_inverse());
}
