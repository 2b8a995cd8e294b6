//! A theory on the circle, its prefactorization algebra, and back; then a
//! functor that fails orthogonal commutativity.

use aqftlab::aqft::models::{clifford_counterexample, clifford_theory};
use aqftlab::aqft::{check_aqft, from_prefactorization, same_products, to_prefactorization};
use aqftlab::fincat::build_circle_model;

fn main() {
    let model = build_circle_model(3).expect("n = 3");
    let a = clifford_theory(&model);
    let f = to_prefactorization(&a, 3).expect("orthogonally commutative");
    let back = from_prefactorization(&f).expect("prefactorization axioms hold");
    let again = to_prefactorization(&back, 3).expect("still commutative");
    println!("Clifford theory on n=3: {} factorization products", f.products.len());
    println!("from(to(A)) = A: {}", back.same_data(&a));
    println!("to(from(F)) = F: {}", same_products(&again, &f));

    let bad = clifford_counterexample();
    let report = check_aqft(&bad);
    let base = bad.site.base();
    for w in &report.violations {
        println!(
            "not commutative: images of {} and {} fail to commute",
            base.morphism_name(w.f1),
            base.morphism_name(w.f2)
        );
    }
    println!(
        "to_prefactorization refuses it: {}",
        to_prefactorization(&bad, 3).is_err()
    );
}
