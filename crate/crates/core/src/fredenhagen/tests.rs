use std::sync::Arc;

use super::*;
use crate::exactlin::{Matrix, Rational};
use crate::grouprep::{FiniteGroup, Representation};
use crate::random;

fn model(g: FiniteGroup) -> LoopModel {
    LoopModel::new(&Arc::new(g))
}

#[test]
fn trivial_group_identity_theta() {
    let m = model(FiniteGroup::trivial());
    let v = Representation::trivial(m.group.clone(), 3);
    let obj = ThetaObject {
        v,
        theta: Matrix::identity(3),
    };
    assert!(loop_category_check(&m, &obj).passed());
    let coaction = theta_to_coaction(&m, &obj).unwrap();
    assert!(coaction.module.action[0].is_identity());
}

fn z2_canonical(m: &LoopModel) -> ThetaObject {
    // ϑ(v) = e ⊗ v: block column k of θ is (1,k)·((1,e) ⊗ v).
    let v = Representation::trivial(m.group.clone(), 1);
    let mut theta = Matrix::zeros(2, 2);
    theta.set(0, 0, Rational::one());
    theta.set(1, 1, Rational::one());
    ThetaObject { v, theta }
}

#[test]
fn z2_canonical_theta_is_valid() {
    let m = model(FiniteGroup::cyclic(2));
    assert!(loop_category_check(&m, &z2_canonical(&m)).passed());
}

#[test]
fn scaled_block_breaks_counit() {
    let m = model(FiniteGroup::cyclic(2));
    let mut obj = z2_canonical(&m);
    obj.theta.set(0, 0, Rational::from(2));
    obj.theta.set(1, 1, Rational::from(2));
    assert_eq!(loop_category_check(&m, &obj).violation, Some(LoopViolation::Counit));
}

#[test]
fn non_idempotent_grading_breaks_cocycle() {
    // ϑ_e = ϑ_g = 1/2 on the trivial representation: counit holds, the
    // coaction is not coassociative.
    let m = model(FiniteGroup::cyclic(2));
    let half = Rational::new(1, 2);
    let obj = ThetaObject {
        v: Representation::trivial(m.group.clone(), 1),
        theta: Matrix::from_fn(2, 2, |_, _| half.clone()),
    };
    let theta = Matrix::from_fn(2, 2, |r, c| {
        if r == c {
            Rational::new(3, 2)
        } else {
            Rational::new(-1, 2)
        }
    });
    let obj2 = ThetaObject { theta, ..obj.clone() };
    let r1 = loop_category_check(&m, &obj);
    let r2 = loop_category_check(&m, &obj2);
    assert!(!r1.passed() && !r2.passed(), "{r1:?} {r2:?}");
    assert_eq!(r2.violation, Some(LoopViolation::Cocycle));
}

#[test]
fn random_objects_round_trip() {
    for (g, seed) in [
        (FiniteGroup::cyclic(2), 1),
        (FiniteGroup::symmetric(3), 2),
        (FiniteGroup::cyclic(3), 3),
    ] {
        let m = model(g);
        let mut rng = random::rng(seed);
        for _ in 0..5 {
            let obj = random_theta_object(&mut rng, &m, 4);
            let report = loop_category_check(&m, &obj);
            assert!(report.passed(), "{report:?}");
            let coaction = theta_to_coaction(&m, &obj).unwrap();
            let back = coaction_to_theta(&m, &coaction).unwrap();
            assert_eq!(back.theta, obj.theta);
            let again = theta_to_coaction(&m, &back).unwrap();
            assert_eq!(again.module.action, coaction.module.action);
        }
    }
}

#[test]
fn simple_counts() {
    for (g, expected) in [
        (FiniteGroup::trivial(), 1),
        (FiniteGroup::cyclic(2), 4),
        (FiniteGroup::cyclic(3), 9),
        (FiniteGroup::cyclic(4), 16),
        (FiniteGroup::symmetric(3), 8),
    ] {
        let count = count_simple_loop_objects(&g, DEFAULT_PRIME_BOUND, 0).unwrap();
        assert_eq!(count.count, expected);
        assert_eq!(count.center_dim, expected);
    }
}

#[test]
fn no_prime_below_bound() {
    assert!(matches!(
        count_simple_loop_objects(&FiniteGroup::symmetric(3), 5, 0),
        Err(LoopError::NoPrime { .. })
    ));
}

mod extension {
    use super::*;
    use crate::algebra::{PresentedModule, RationalAlgebra};
    use crate::aqft::models::constant_theory;
    use crate::fincat::{build_circle_model, CircleModel, FinFunctor};
    use crate::gauging::{gauge, trivial_theory};
    use crate::grouprep::EquivariantModule;
    use crate::operad::{EnvelopeMorphism, DEFAULT_TUPLE_CAP};

    fn constant_k(n: usize, bound: usize) -> (CircleModel, UniversalAlgebraResult) {
        let model = build_circle_model(n).unwrap();
        let a = constant_theory(&model.disks, Arc::new(RationalAlgebra::field()));
        let res = universal_algebra(&a, &model.j, &model.opens, &[model.circle()], DEFAULT_TUPLE_CAP, bound).unwrap();
        (model, res)
    }

    fn free_product(bound: usize) -> UniversalAlgebraResult {
        let (a, j, target) = free_product_fixture();
        universal_algebra(&a, &j, &target, &[2], DEFAULT_TUPLE_CAP, bound).unwrap()
    }

    /// Words of length at most `bound` in two letters with no letter repeated.
    fn alternating_words(bound: usize) -> usize {
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut frontier = words.clone();
        for _ in 0..bound {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    [0u8, 1].into_iter().filter(|x| w.last() != Some(x)).map(|x| {
                        let mut w2 = w.clone();
                        w2.push(x);
                        w2
                    })
                })
                .collect();
            words.extend(frontier.iter().cloned());
        }
        words.len()
    }

    /// `x ↦ x_mat` on the slot `a`, `y ↦ y_mat` on `b`, units to the identity.
    fn free_product_module(res: &UniversalAlgebraResult, x: &Matrix, y: &Matrix) -> PresentedModule {
        let dim = x.rows();
        let mut generators = vec![Matrix::zeros(dim, dim); res.algebra.generators().len()];
        for s in res.slice.singletons() {
            let off = res.generator_offset[s].unwrap();
            let nilpotent = if res.slice.objects[s].tuple[0] == 0 { x } else { y };
            generators[off] = Matrix::identity(dim);
            generators[off + 1] = nilpotent.clone();
        }
        PresentedModule { dim, generators }
    }

    fn elementary(n: usize, r: usize, c: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m.set(r, c, Rational::one());
        m
    }

    #[test]
    fn constant_field_extends_to_field() {
        for bound in 2..=6 {
            let (_, res) = constant_k(3, bound);
            assert_eq!(res.algebra.dim(), 1, "bound {bound}");
            assert!(check_cocone(&res).passed());
        }
    }

    #[test]
    fn free_product_word_count() {
        for bound in 2..=4 {
            let res = free_product(bound);
            assert_eq!(res.algebra.dim(), alternating_words(bound), "bound {bound}");
            assert!(check_cocone(&res).passed());
        }
        assert_eq!(free_product(3).algebra.dim(), 7);
    }

    #[test]
    fn degree_bound_below_two() {
        let (a, j, target) = free_product_fixture();
        assert_eq!(
            universal_algebra(&a, &j, &target, &[2], 4, 1).unwrap_err(),
            UniversalError::DegreeBound(1)
        );
    }

    #[test]
    fn restricted_modules_are_descent_objects() {
        let res = free_product(3);
        let v = free_product_module(&res, &elementary(2, 0, 1), &elementary(2, 1, 0));
        let x = module_to_descent(&res, &v).unwrap();
        assert!(descent_check(&res, &x).unwrap().passed());
        let zero = module_to_descent(&res, &PresentedModule::zero(res.algebra.generators().len())).unwrap();
        assert!(descent_check(&res, &zero).unwrap().passed());
        assert!(zero.modules.iter().all(|m| m.dim == 0));
        assert_eq!(descent_hom(&res, &x, &zero).dim(), 0);
    }

    #[test]
    fn singular_xi_is_rejected() {
        let res = free_product(3);
        let v = free_product_module(&res, &elementary(2, 0, 1), &elementary(2, 1, 0));
        let mut x = module_to_descent(&res, &v).unwrap();
        let u = (0..res.slice.morphisms.len())
            .find(|&m| !res.slice.category.is_identity(m))
            .unwrap();
        x.xi[u] = Matrix::zeros(2, 2);
        let report = descent_check(&res, &x).unwrap();
        assert_eq!(report.violation, Some(DescentViolation::NotInvertible { morphism: u }));
    }

    #[test]
    fn composition_violation_names_a_chain() {
        let (_, res) = constant_k(3, 3);
        let v = PresentedModule {
            dim: 1,
            generators: vec![Matrix::identity(1); res.algebra.generators().len()],
        };
        let mut x = module_to_descent(&res, &v).unwrap();
        let cat = &res.slice.category;
        let empty = (0..res.slice.objects.len())
            .find(|&o| res.slice.objects[o].tuple.is_empty())
            .unwrap();
        let u = cat
            .morphisms_from(empty)
            .iter()
            .copied()
            .find(|&m| !cat.is_identity(m) && res.slice.objects[cat.target(m)].tuple.len() == 1)
            .unwrap();
        x.xi[u] = Matrix::scalar(1, &Rational::from(2));
        let report = descent_check(&res, &x).unwrap();
        let Some(DescentViolation::Composition { first, second }) = report.violation else {
            panic!("{report:?}");
        };
        assert_eq!(cat.target(first), cat.source(second));
        assert!(first == u || second == u || cat.compose(second, first).is_some_and(|c| c == u));
    }

    #[test]
    fn descent_homs_match_module_homs() {
        let res = free_product(3);
        let mut rng = random::rng(11);
        let n = 2;
        let base = [
            free_product_module(&res, &elementary(n, 0, 1), &elementary(n, 1, 0)),
            free_product_module(&res, &elementary(n, 0, 1), &elementary(n, 0, 1)),
            free_product_module(&res, &Matrix::zeros(n, n), &Matrix::zeros(n, n)),
        ];
        for v in &base {
            for w in &base {
                let p = random::invertible(&mut rng, n);
                let p_inv = p.inverse().unwrap();
                let w = PresentedModule {
                    dim: n,
                    generators: w.generators.iter().map(|g| &(&p * g) * &p_inv).collect(),
                };
                let (xv, xw) = (
                    module_to_descent(&res, v).unwrap(),
                    module_to_descent(&res, &w).unwrap(),
                );
                assert_eq!(descent_hom(&res, &xv, &xw).dim(), presented_hom(v, &w).dim());
            }
        }
        let (_, res) = constant_k(3, 3);
        let k = |d: usize| PresentedModule {
            dim: d,
            generators: vec![Matrix::identity(d); res.algebra.generators().len()],
        };
        let (x2, x3) = (
            module_to_descent(&res, &k(2)).unwrap(),
            module_to_descent(&res, &k(3)).unwrap(),
        );
        assert_eq!(descent_hom(&res, &x2, &x3).dim(), 6);
        assert!(descent_hom(&res, &x2, &x2).space.contains(
            &descent_hom(&res, &x2, &x2)
                .family(&x2.modules.iter().map(|m| Matrix::identity(m.dim)).collect::<Vec<_>>())
        ));
    }

    fn two_arcs_into_one(model: &CircleModel) -> EnvelopeMorphism {
        let base = model.disks.base();
        let point = |p: usize| model.arc_id(crate::fincat::CyclicArc { start: p, len: 1 }).unwrap();
        let whole = model.arc_id(crate::fincat::CyclicArc { start: 0, len: 2 }).unwrap();
        let (p0, p1) = (point(0), point(1));
        EnvelopeMorphism {
            source: vec![p0, p1],
            target: vec![whole],
            alpha: vec![0, 0],
            components: vec![base.hom(p0, whole)[0], base.hom(p1, whole)[0]],
        }
    }

    #[test]
    fn transport_doubles_for_z2() {
        let model = build_circle_model(4).unwrap();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let g = gauge(&trivial_theory(&model.disks, z2));
        let j = FinFunctor::identity(model.disks.base_arc().clone());
        let u = two_arcs_into_one(&model);
        let act = tuple_action(&g, &u.target);
        for dim in 1..=3 {
            let w = Representation::trivial(act.group.clone(), dim);
            let v = EquivariantModule::free_on(act.clone(), &w);
            let t = factorization_right_adjoint(&g, &j, &u, &v).unwrap();
            t.validate().unwrap();
            assert_eq!(t.dim(), 2 * v.dim());
        }
        let id = EnvelopeMorphism::identity(model.disks.base(), &u.target);
        let v = EquivariantModule::pointing(act.clone());
        let t = factorization_right_adjoint(&g, &j, &id, &v).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dim(), v.dim());
    }

    #[test]
    fn transport_for_trivial_group_is_restriction() {
        let model = build_circle_model(4).unwrap();
        let g = gauge(&trivial_theory(&model.disks, Arc::new(FiniteGroup::trivial())));
        let j = FinFunctor::identity(model.disks.base_arc().clone());
        let u = two_arcs_into_one(&model);
        let act = tuple_action(&g, &u.target);
        let v = EquivariantModule::free_on(act.clone(), &Representation::trivial(act.group.clone(), 2));
        let t = factorization_right_adjoint(&g, &j, &u, &v).unwrap();
        assert_eq!(t.dim(), v.dim());
        let f = tuple_map(&g.base.theory, &u);
        for (b, m) in t.module.action.iter().enumerate() {
            assert_eq!(*m, v.module.action_matrix(&f.column(b)));
        }
    }
}
