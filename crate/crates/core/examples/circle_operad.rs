//! The prefactorization operad of the circle model and its axiom check.

use aqftlab::fincat::build_circle_model;
use aqftlab::operad::{check_operad_axioms, operations_into};

fn main() {
    for n in [2, 3, 4] {
        let model = build_circle_model(n).expect("n >= 2");
        let base = model.opens.base();
        let s1 = model.circle();
        let binary = operations_into(&model.opens, s1, 2)
            .iter()
            .filter(|op| op.arity() == 2)
            .count();
        let report = check_operad_axioms(&model.opens, 3);
        println!(
            "n={n}: {} objects, {} morphisms, {} binary operations into S1, {} axiom instances, {} violations",
            base.num_objects(),
            base.num_morphisms(),
            binary,
            report.instances_checked,
            report.violation_count
        );
    }
}
