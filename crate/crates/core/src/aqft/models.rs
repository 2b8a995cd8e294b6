//! Concrete theories on finite sites.

use std::sync::Arc;

use super::theory::Aqft;
use crate::algebra::{clifford_algebra, tensor_all, AlgebraMorphism, RationalAlgebra};
use crate::exactlin::{q, vector, Matrix, Rational};
use crate::fincat::{build_circle_model, CircleModel, ObjId, OrthogonalCategory};

/// The same algebra everywhere with identity maps. ⊥-commutative exactly
/// when the algebra is commutative or the relation is empty.
pub fn constant_theory(site: &OrthogonalCategory, a: Arc<RationalAlgebra>) -> Aqft {
    let base = site.base();
    let algebras = vec![a.clone(); base.num_objects()];
    let maps = base
        .morphism_ids()
        .map(|_| AlgebraMorphism::identity(a.clone()))
        .collect();
    Aqft::new(site.clone(), algebras, maps).expect("constant functor")
}

/// Points of an object of the circle model, increasing.
pub fn object_points(model: &CircleModel, c: ObjId) -> Vec<usize> {
    if c == model.circle() {
        (0..model.n).collect()
    } else {
        let mut pts = model.arcs[c].points(model.n);
        pts.sort_unstable();
        pts
    }
}

/// A local net on the circle model: `𝔄(I) = ⊗_{p ∈ I} P_p` over the
/// points of `I` in increasing order, with inclusions inserting units.
pub fn local_tensor_theory(model: &CircleModel, points: &[Arc<RationalAlgebra>]) -> Aqft {
    assert_eq!(points.len(), model.n, "one algebra per point");
    let site = &model.opens;
    let base = site.base();
    let algebras: Vec<Arc<RationalAlgebra>> = base
        .objects()
        .map(|c| Arc::new(tensor_all(object_points(model, c).iter().map(|&p| &*points[p]))))
        .collect();
    let maps = base
        .morphism_ids()
        .map(|f| {
            let (c, t) = (base.source(f), base.target(f));
            let m = inclusion_matrix(&object_points(model, c), &object_points(model, t), points);
            AlgebraMorphism::new_unchecked(algebras[c].clone(), algebras[t].clone(), m)
        })
        .collect();
    Aqft::new(site.clone(), algebras, maps).expect("local net")
}

/// `⊗_{p ∈ small} P_p -> ⊗_{p ∈ large} P_p`, both in increasing order.
pub fn inclusion_matrix(small: &[usize], large: &[usize], points: &[Arc<RationalAlgebra>]) -> Matrix {
    let dims: Vec<usize> = small.iter().map(|&p| points[p].dim()).collect();
    let total: usize = dims.iter().product();
    let cols: Vec<Vec<Rational>> = (0..total)
        .map(|flat| {
            let multi = super::pfa::split_index(flat, &dims);
            large.iter().fold(vec![Rational::one()], |acc, &p| {
                let factor = match small.iter().position(|&s| s == p) {
                    Some(k) => points[p].basis_vector(multi[k]),
                    None => points[p].unit().to_vec(),
                };
                vector::kron(&acc, &factor)
            })
        })
        .collect();
    let rows = large.iter().map(|&p| points[p].dim()).product();
    Matrix::from_columns(rows, &cols)
}

/// `Q[x]/(x² - 1)`.
pub fn cl1() -> Arc<RationalAlgebra> {
    Arc::new(clifford_algebra(&[q(1)]))
}

/// `Q[x]/(x²)`.
pub fn lambda1() -> Arc<RationalAlgebra> {
    Arc::new(clifford_algebra(&[q(0)]))
}

pub fn cl2() -> Arc<RationalAlgebra> {
    Arc::new(clifford_algebra(&[q(1), q(1)]))
}

pub fn lambda2() -> Arc<RationalAlgebra> {
    Arc::new(clifford_algebra(&[q(0), q(0)]))
}

/// The Clifford local net: `Cl₂` at point 0, `Cl₁` elsewhere.
pub fn clifford_theory(model: &CircleModel) -> Aqft {
    let points: Vec<_> = (0..model.n).map(|p| if p == 0 { cl2() } else { cl1() }).collect();
    local_tensor_theory(model, &points)
}

/// The degenerate counterpart: `Λ₂` at point 0, `Λ₁` elsewhere.
pub fn exterior_theory(model: &CircleModel) -> Aqft {
    let points: Vec<_> = (0..model.n)
        .map(|p| if p == 0 { lambda2() } else { lambda1() })
        .collect();
    local_tensor_theory(model, &points)
}

/// The constant theory with the commutative algebra `Q × Q`.
pub fn commutative_theory(site: &OrthogonalCategory) -> Aqft {
    let split = RationalAlgebra::from_left_matrices(
        vec![
            Matrix::from_i64(&[&[1, 0], &[0, 0]]),
            Matrix::from_i64(&[&[0, 0], &[0, 1]]),
        ],
        vec![q(1), q(1)],
    )
    .expect("Q x Q");
    constant_theory(site, Arc::new(split))
}

/// A functor that is not ⊥-commutative: on the two-point circle the arcs
/// `{0}` and `{1}` go to the anticommuting generators of `Cl₂ = 𝔄(S1)`.
pub fn clifford_counterexample() -> Aqft {
    let model = build_circle_model(2).expect("n = 2");
    let base = model.opens.base();
    let s1 = model.circle();
    let cl = cl2();
    let algebras: Vec<_> = base
        .objects()
        .map(|c| if c == s1 { cl.clone() } else { cl1() })
        .collect();
    let maps = base
        .morphism_ids()
        .map(|f| {
            let (c, t) = (base.source(f), base.target(f));
            let m = if c == t {
                Matrix::identity(algebras[c].dim())
            } else {
                // x ↦ x for {0}, x ↦ y for {1} (basis 1, x, y, xy)
                let generator = if model.arcs[c].start == 0 { 1 } else { 2 };
                Matrix::from_columns(4, &[vector::unit(4, 0), vector::unit(4, generator)])
            };
            AlgebraMorphism::new_unchecked(algebras[c].clone(), algebras[t].clone(), m)
        })
        .collect();
    Aqft::new(model.opens.clone(), algebras, maps).expect("functor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aqft::{check_aqft, check_pfa_axioms, from_prefactorization, same_products, to_prefactorization};

    #[test]
    fn theories_are_orthogonal_commutative() {
        let model = build_circle_model(3).unwrap();
        for a in [
            constant_theory(&model.opens, Arc::new(RationalAlgebra::field())),
            commutative_theory(&model.opens),
            clifford_theory(&model),
            exterior_theory(&model),
        ] {
            assert!(check_aqft(&a).passed());
        }
        assert_eq!(clifford_theory(&model).algebras[model.circle()].dim(), 16);
    }

    #[test]
    fn counterexample_has_witness() {
        let a = clifford_counterexample();
        let r = check_aqft(&a);
        assert!(!r.passed());
        let w = &r.violations[0];
        assert_eq!((w.i, w.j), (1, 1));
        assert!(to_prefactorization(&a, 2).is_err());
    }

    #[test]
    fn round_trips() {
        let model = build_circle_model(3).unwrap();
        for a in [commutative_theory(&model.opens), clifford_theory(&model)] {
            let f = to_prefactorization(&a, 3).unwrap();
            assert!(check_pfa_axioms(&f, 3).passed());
            let back = from_prefactorization(&f).unwrap();
            assert!(back.same_data(&a));
            assert!(same_products(&to_prefactorization(&back, 3).unwrap(), &f));
        }
    }

    #[test]
    fn nullary_and_unary_products() {
        let model = build_circle_model(3).unwrap();
        let a = clifford_theory(&model);
        let f = to_prefactorization(&a, 2).unwrap();
        let s1 = model.circle();
        let unit = &f.products[&crate::operad::PFOperation::unit(s1)];
        assert_eq!(unit.column(0), a.algebras[s1].unit().to_vec());
        for m in model.opens.base().morphisms_into(s1) {
            let op = crate::operad::PFOperation::new(&model.opens, s1, vec![*m]).unwrap();
            assert_eq!(f.products[&op], a.maps[*m].matrix);
        }
    }

    #[test]
    fn corrupted_product_fails_composition() {
        let model = build_circle_model(3).unwrap();
        let a = commutative_theory(&model.opens);
        let mut f = to_prefactorization(&a, 2).unwrap();
        let s1 = model.circle();
        let op = f
            .products
            .keys()
            .find(|op| op.target == s1 && op.arity() == 2)
            .unwrap()
            .clone();
        let flip = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let m = &flip * &f.products[&op];
        f.products.insert(op, m);
        let r = check_pfa_axioms(&f, 2);
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == crate::aqft::PfaAxiom::Composition));
    }
}
