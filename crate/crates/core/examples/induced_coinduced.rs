//! Induction and coinduction along every homomorphism S3 -> S3 agree.

use std::sync::Arc;

use aqftlab::grouprep::{all_homomorphisms, induced_coinduced_check, random_representation, FiniteGroup};
use aqftlab::random;

fn main() {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let mut rng = random::rng(1);
    for (name, target) in [("S3", &s3), ("Z2", &z2)] {
        for phi in all_homomorphisms(&s3, target) {
            let v = random_representation(&mut rng, &s3, 3);
            let r = induced_coinduced_check(&s3, target, &phi, &v, None).expect("a homomorphism");
            println!(
                "S3 -> {name} {phi:?}: dim V {}, induced {}, coinduced {}, iso {}",
                v.dim,
                r.induced_dim,
                r.coinduced_dim,
                r.passed()
            );
        }
    }
}
