//! Extending theories from a smaller site: the constant field on the
//! circle, and the free product of two dual-number algebras.

use std::sync::Arc;

use aqftlab::algebra::RationalAlgebra;
use aqftlab::aqft::models::constant_theory;
use aqftlab::fincat::build_circle_model;
use aqftlab::fredenhagen::{check_cocone, free_product_fixture, universal_algebra};
use aqftlab::operad::DEFAULT_TUPLE_CAP;

fn main() {
    let model = build_circle_model(3).expect("n = 3");
    let k = constant_theory(&model.disks, Arc::new(RationalAlgebra::field()));
    for bound in 2..=6 {
        let res = universal_algebra(&k, &model.j, &model.opens, &[model.circle()], DEFAULT_TUPLE_CAP, bound)
            .expect("within the tuple cap");
        println!("constant field, degree bound {bound}: dim {}", res.algebra.dim());
    }
    let (a, j, target) = free_product_fixture();
    let res = universal_algebra(&a, &j, &target, &[2], DEFAULT_TUPLE_CAP, 3).expect("within the tuple cap");
    let words: Vec<String> = res.algebra.basis().iter().map(|w| res.algebra.word_label(w)).collect();
    println!("free product at degree 3: {} words: {}", words.len(), words.join(" "));
    println!("cocone commutes: {}", check_cocone(&res).passed());
}
