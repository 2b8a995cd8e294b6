//! The documents shipped in `fixtures/`, built from the library's models.
//! The integration tests compare the files against this catalogue.

use std::sync::Arc;

use serde_json::{json, Value};

use super::docs::{
    action_document, algebra_document, aqft_document, circle_site_document, descent_document, equivariant_document,
    group_document, CirclePart,
};
use crate::algebra::{PresentedModule, RationalAlgebra};
use crate::aqft::models::{cl2, clifford_counterexample, constant_theory, lambda2};
use crate::aqft::Aqft;
use crate::exactlin::{Matrix, Rational};
use crate::fincat::{build_circle_model, OrthogonalCategory};
use crate::fredenhagen::{free_product_fixture, module_to_descent, universal_algebra};
use crate::gauging::{clifford_parity, exterior_parity, trivial_theory, EquivariantAqft};
use crate::grouprep::{FiniteGroup, GroupAction};
use crate::operad::DEFAULT_TUPLE_CAP;

/// `(file name, documents)` for every fixture. Group documents live in
/// `z2.json` and `s3.json` except in `parity.json`, which carries its own.
pub fn catalogue() -> Vec<(&'static str, Value)> {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let circle3 = build_circle_model(3).expect("n = 3");
    vec![
        ("z2.json", group_document("z2", &z2)),
        ("s3.json", group_document("s3", &FiniteGroup::symmetric(3))),
        ("groups.json", small_groups()),
        ("clifford2.json", algebra_document("cl2", &cl2())),
        ("parity.json", parity_file(cl2(), "cl2", true)),
        ("exterior2.json", exterior_file()),
        (
            "clifford_circle3.json",
            equivariant_file(&clifford_parity(&circle3), "circle3", 3),
        ),
        (
            "exterior_circle3.json",
            equivariant_file(&exterior_parity(&circle3), "circle3", 3),
        ),
        (
            "trivial_theory.json",
            equivariant_file(&trivial_theory(&circle3.opens, z2), "circle3", 3),
        ),
        ("counterexample.json", counterexample_file()),
        ("constant_field.json", constant_field_file()),
        ("free_product.json", free_product_file()),
        ("descent.json", descent_file()),
    ]
}

/// Every group of order at most 6, up to isomorphism.
fn small_groups() -> Value {
    let c2 = FiniteGroup::cyclic(2);
    let groups = [
        ("trivial", FiniteGroup::trivial()),
        ("c2", c2.clone()),
        ("c3", FiniteGroup::cyclic(3)),
        ("c4", FiniteGroup::cyclic(4)),
        ("klein", FiniteGroup::power(&c2, 2)),
        ("c5", FiniteGroup::cyclic(5)),
        ("c6", FiniteGroup::cyclic(6)),
        ("s3", FiniteGroup::symmetric(3)),
    ];
    Value::Array(groups.iter().map(|(id, g)| group_document(id, g)).collect())
}

/// The parity action on a Clifford-type algebra, with or without the group.
fn parity_file(a: Arc<RationalAlgebra>, name: &str, with_group: bool) -> Value {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let signs: Vec<i64> = (0..a.dim())
        .map(|m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    let act = GroupAction::parity(a.clone(), &signs).expect("parity");
    let mut docs = Vec::new();
    if with_group {
        docs.push(group_document("z2", &g));
    }
    docs.push(action_document(&format!("{name}_parity"), name, "z2", &act));
    Value::Array(docs)
}

/// `Λ₂` with its parity action; the group comes from `z2.json`.
fn exterior_file() -> Value {
    let a = lambda2();
    let mut docs = vec![algebra_document("lambda2", &a)];
    if let Value::Array(rest) = parity_file(a, "lambda2", false) {
        docs.extend(rest);
    }
    Value::Array(docs)
}

/// Algebra documents for a theory, one per distinct algebra, and the id of
/// each object's algebra.
fn algebra_ids(a: &Aqft, prefix: &str) -> (Vec<Value>, Vec<String>) {
    let mut docs: Vec<(Value, String)> = Vec::new();
    let mut ids = Vec::new();
    for alg in &a.algebras {
        let body = algebra_document("", alg);
        let id = match docs.iter().find(|(b, _)| *b == body) {
            Some((_, id)) => id.clone(),
            None => {
                let id = format!("{prefix}{}", docs.len());
                docs.push((body, id.clone()));
                id
            }
        };
        ids.push(id);
    }
    let docs = docs
        .into_iter()
        .map(|(mut body, id)| {
            body["id"] = json!(id);
            body
        })
        .collect();
    (docs, ids)
}

fn equivariant_file(e: &EquivariantAqft, site: &str, n: usize) -> Value {
    let (mut docs, alg_ids) = algebra_ids(&e.theory, "alg");
    let base = e.site().base();
    docs.insert(0, circle_site_document(site, n, CirclePart::Opens));
    let mut action_ids = Vec::new();
    let mut actions: Vec<(Value, String)> = Vec::new();
    for c in base.objects() {
        let body = action_document("", &alg_ids[c], "z2", &e.actions[c]);
        let id = match actions.iter().find(|(b, _)| *b == body) {
            Some((_, id)) => id.clone(),
            None => {
                let id = format!("act{}", actions.len());
                actions.push((body, id.clone()));
                id
            }
        };
        action_ids.push(id);
    }
    docs.extend(actions.into_iter().map(|(mut body, id)| {
        body["id"] = json!(id);
        body
    }));
    docs.push(aqft_document("theory", site, &e.theory, &alg_ids));
    docs.push(equivariant_document(
        "gauge_theory",
        "theory",
        "z2",
        e.site(),
        &action_ids,
    ));
    Value::Array(docs)
}

fn counterexample_file() -> Value {
    let a = clifford_counterexample();
    let (mut docs, ids) = algebra_ids(&a, "alg");
    docs.insert(0, circle_site_document("circle2", 2, CirclePart::Opens));
    docs.push(aqft_document("counterexample", "circle2", &a, &ids));
    Value::Array(docs)
}

fn constant_field_file() -> Value {
    let model = build_circle_model(3).expect("n = 3");
    let a = constant_theory(&model.disks, Arc::new(RationalAlgebra::field()));
    let (mut docs, ids) = algebra_ids(&a, "field");
    docs.insert(0, circle_site_document("disks3", 3, CirclePart::Disks));
    docs.insert(1, circle_site_document("opens3", 3, CirclePart::Opens));
    docs.push(aqft_document("constant", "disks3", &a, &ids));
    Value::Array(docs)
}

/// Objects and generating `leq` pairs of a poset site.
pub fn poset_site_document(id: &str, site: &OrthogonalCategory) -> Value {
    let base = site.base();
    let objects: Vec<&str> = base.objects().map(|c| base.object_name(c)).collect();
    let leq: Vec<(&str, &str)> = base
        .morphism_ids()
        .filter(|&f| !base.is_identity(f))
        .map(|f| (base.object_name(base.source(f)), base.object_name(base.target(f))))
        .collect();
    json!({"kind": "orthogonal_category", "id": id, "objects": objects, "leq": leq})
}

fn free_product_docs() -> Vec<Value> {
    let (a, _, target) = free_product_fixture();
    let (mut docs, ids) = algebra_ids(&a, "dual");
    docs.insert(0, poset_site_document("pair", &a.site));
    docs.insert(1, poset_site_document("joined", &target));
    docs.push(aqft_document("free", "pair", &a, &ids));
    docs
}

fn free_product_file() -> Value {
    Value::Array(free_product_docs())
}

fn descent_file() -> Value {
    const BOUND: usize = 3;
    let (a, j, target) = free_product_fixture();
    let res = universal_algebra(&a, &j, &target, &[2], DEFAULT_TUPLE_CAP, BOUND).expect("free product");
    let mut generators = vec![Matrix::zeros(2, 2); res.algebra.generators().len()];
    for s in res.slice.singletons() {
        let off = res.generator_offset[s].expect("singleton generators");
        let (r, c) = if res.slice.objects[s].tuple[0] == 0 {
            (0, 1)
        } else {
            (1, 0)
        };
        let mut nil = Matrix::zeros(2, 2);
        nil.set(r, c, Rational::from_integer(1.into()));
        generators[off] = Matrix::identity(2);
        generators[off + 1] = nil;
    }
    let v = PresentedModule { dim: 2, generators };
    let x = module_to_descent(&res, &v).expect("restriction");
    let mut broken = x.clone();
    let u = (0..res.slice.morphisms.len())
        .find(|&m| !res.slice.category.is_identity(m))
        .expect("a non-identity slice morphism");
    broken.xi[u] = Matrix::zeros(2, 2);
    let mut docs = free_product_docs();
    docs.push(descent_document(
        "restricted",
        "free",
        "joined",
        &["p"],
        DEFAULT_TUPLE_CAP,
        BOUND,
        &x,
    ));
    docs.push(descent_document(
        "singular",
        "free",
        "joined",
        &["p"],
        DEFAULT_TUPLE_CAP,
        BOUND,
        &broken,
    ));
    Value::Array(docs)
}
