//! Modules over the universal algebra as descent objects, and a broken
//! coherence map that the cocycle check rejects.

use aqftlab::algebra::PresentedModule;
use aqftlab::exactlin::{Matrix, Rational};
use aqftlab::fredenhagen::{
    descent_check, descent_hom, free_product_fixture, module_to_descent, presented_hom, universal_algebra,
};
use aqftlab::operad::DEFAULT_TUPLE_CAP;

fn main() {
    let (a, j, target) = free_product_fixture();
    let res = universal_algebra(&a, &j, &target, &[2], DEFAULT_TUPLE_CAP, 3).expect("within the tuple cap");
    let unit_at = |r: usize, c: usize| {
        let mut m = Matrix::zeros(2, 2);
        m.set(r, c, Rational::one());
        m
    };
    let module = |x: &Matrix, y: &Matrix| {
        let mut generators = vec![Matrix::zeros(2, 2); res.algebra.generators().len()];
        for s in res.slice.singletons() {
            let off = res.generator_offset[s].expect("singletons carry generators");
            generators[off] = Matrix::identity(2);
            generators[off + 1] = if res.slice.objects[s].tuple[0] == 0 {
                x.clone()
            } else {
                y.clone()
            };
        }
        PresentedModule { dim: 2, generators }
    };
    let v = module(&unit_at(0, 1), &unit_at(1, 0));
    let w = module(&unit_at(0, 1), &unit_at(0, 1));
    let (xv, xw) = (
        module_to_descent(&res, &v).unwrap(),
        module_to_descent(&res, &w).unwrap(),
    );
    println!(
        "descent object from V: {}",
        if descent_check(&res, &xv).unwrap().passed() {
            "valid"
        } else {
            "invalid"
        }
    );
    for (name, m, n, dm, dn) in [
        ("V", &v, &v, &xv, &xv),
        ("W", &w, &w, &xw, &xw),
        ("V->W", &v, &w, &xv, &xw),
    ] {
        println!(
            "Hom {name}: modules {}, descent objects {}",
            presented_hom(m, n).dim(),
            descent_hom(&res, dm, dn).dim()
        );
    }
    let mut broken = xv.clone();
    let u = (0..res.slice.morphisms.len())
        .find(|&m| !res.slice.category.is_identity(m))
        .unwrap();
    broken.xi[u] = Matrix::zeros(2, 2);
    println!(
        "zeroed coherence map: {:?}",
        descent_check(&res, &broken).unwrap().violation
    );
}
