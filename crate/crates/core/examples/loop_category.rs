//! Simple objects of the loop category and the coaction round trip.

use std::sync::Arc;

use aqftlab::fredenhagen::{
    coaction_to_theta, count_simple_loop_objects, loop_category_check, random_theta_object, theta_to_coaction,
    LoopModel, DEFAULT_PRIME_BOUND,
};
use aqftlab::grouprep::FiniteGroup;
use aqftlab::random;

fn main() {
    for (name, g) in [
        ("trivial", FiniteGroup::trivial()),
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z3", FiniteGroup::cyclic(3)),
        ("S3", FiniteGroup::symmetric(3)),
    ] {
        let c = count_simple_loop_objects(&g, DEFAULT_PRIME_BOUND, 0).expect("oracles agree");
        println!(
            "{name}: {} simple objects (prime {}, center dim {})",
            c.count, c.prime, c.center_dim
        );
    }
    let model = LoopModel::new(&Arc::new(FiniteGroup::symmetric(3)));
    let mut rng = random::rng(7);
    let obj = random_theta_object(&mut rng, &model, 4);
    let m = theta_to_coaction(&model, &obj).expect("valid object");
    let back = coaction_to_theta(&model, &m).expect("valid coaction");
    println!(
        "S3 object of dim {}: valid {}, round trip exact {}",
        obj.v.dim,
        loop_category_check(&model, &obj).passed(),
        back.theta == obj.theta
    );
}
