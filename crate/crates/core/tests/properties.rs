//! Property tests for the structural invariants of each layer.

use std::sync::Arc;

use proptest::prelude::*;

use aqftlab::algebra::{
    clifford_algebra, relative_tensor, tensor_algebra, unit_iso, Bimodule, PresentedAlgebra, RationalAlgebra,
    RewriteRule, RightModule,
};
use aqftlab::aqft::models::{clifford_theory, commutative_theory, constant_theory, exterior_theory};
use aqftlab::aqft::{check_aqft, from_prefactorization, same_products, to_prefactorization, Aqft};
use aqftlab::exactlin::{q, Matrix, Rational, Subspace};
use aqftlab::fincat::{
    build_circle_model, closure, slice_category, validate_orthogonal_category, FinCategory, FinFunctor,
    OrthogonalCategory,
};
use aqftlab::fredenhagen::{
    coaction_to_theta, count_simple_loop_objects, descent_check, free_product_fixture, module_to_descent,
    random_theta_object, theta_to_coaction, universal_algebra, LoopModel, DEFAULT_PRIME_BOUND,
};
use aqftlab::gauging::{
    counit_component, counit_failure_witness, is_hopf_galois, random_equivariant_module, EquivariantAqft,
};
use aqftlab::grouprep::{
    action_from_coaction, coaction_from_action, invariants, random_representation, FiniteGroup, GroupAction,
};
use aqftlab::operad::{all_permutations, check_operad_axioms, enumerate_operations, permute, DEFAULT_TUPLE_CAP};
use aqftlab::random;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(move |rows| Matrix::from_fn(r, c, |i, j| Rational::from_integer(rows[i][j])))
    })
}

/// A random poset on up to five objects with random generating orthogonal pairs.
fn random_site(seed: u64) -> OrthogonalCategory {
    let mut rng = random::rng(seed);
    let n = 2 + random::index(&mut rng, 4);
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
        for x in row.iter_mut().skip(i + 1) {
            *x = random::index(&mut rng, 2) == 0;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let names = (0..n).map(|i| format!("o{i}")).collect();
    let base = Arc::new(FinCategory::poset(names, |a, b| rel[a][b]));
    let mut pairs = Vec::new();
    for t in base.objects() {
        let into: Vec<_> = base.morphisms_into(t).to_vec();
        for &f1 in &into {
            for &f2 in &into {
                if f1 < f2 && !base.is_identity(f1) && !base.is_identity(f2) && random::index(&mut rng, 3) == 0 {
                    pairs.push((f1, f2));
                }
            }
        }
    }
    OrthogonalCategory::from_generators(base, pairs).expect("poset pairs share targets")
}

fn random_algebra(seed: u64) -> Arc<RationalAlgebra> {
    let mut rng = random::rng(seed);
    let k = random::index(&mut rng, 3);
    let form: Vec<Rational> = (0..k).map(|_| random::small_int(&mut rng, 2)).collect();
    Arc::new(clifford_algebra(&form))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent(m in small_matrix(5, 5)) {
        let reduced = m.rref().reduced;
        prop_assert_eq!(reduced.rref().reduced, reduced);
    }

    #[test]
    fn rank_nullity(m in small_matrix(5, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn kronecker_is_associative(a in small_matrix(2, 2), b in small_matrix(2, 3), c in small_matrix(3, 2)) {
        prop_assert_eq!(a.kronecker(&b).kronecker(&c), a.kronecker(&b.kronecker(&c)));
    }

    #[test]
    fn orthogonality_closure_is_idempotent(seed in any::<u64>()) {
        let c = random_site(seed);
        let report = validate_orthogonal_category(&c).unwrap();
        prop_assert!(report.violations.is_empty());
        let once: std::collections::BTreeSet<_> = closure(c.base(), &c.pairs()).into_iter().collect();
        prop_assert_eq!(once.into_iter().collect::<Vec<_>>(), c.pairs());
    }

    #[test]
    fn slice_over_identity_has_terminal_object(seed in any::<u64>()) {
        let c = random_site(seed);
        let base = c.base_arc().clone();
        let id = FinFunctor::identity(base.clone());
        for d in base.objects() {
            let s = slice_category(&id, d);
            let terminal = s.objects.iter().position(|&(o, h)| o == d && h == base.identity(d)).unwrap();
            for x in s.category.objects() {
                prop_assert_eq!(s.category.hom(x, terminal).len(), 1);
            }
        }
    }

    #[test]
    fn operad_axioms_hold_on_random_sites(seed in any::<u64>()) {
        let c = random_site(seed);
        let r = check_operad_axioms(&c, 3);
        prop_assert_eq!(r.violation_count, 0, "{:?}", r.violations.first());
    }

    #[test]
    fn permutation_is_a_bijection_on_operations(seed in any::<u64>()) {
        let c = random_site(seed);
        let base = c.base();
        let mut rng = random::rng(seed ^ 1);
        let t = random::index(&mut rng, base.num_objects());
        let arity = 1 + random::index(&mut rng, 3);
        let sources: Vec<usize> = (0..arity).map(|_| random::index(&mut rng, base.num_objects())).collect();
        let ops = enumerate_operations(&c, t, &sources);
        for sigma in all_permutations(arity) {
            let permuted_sources: Vec<usize> = sigma.iter().map(|&i| sources[i]).collect();
            let mut moved: Vec<_> = ops.iter().map(|o| permute(o, &sigma).unwrap().morphisms).collect();
            let mut direct: Vec<_> = enumerate_operations(&c, t, &permuted_sources).into_iter().map(|o| o.morphisms).collect();
            moved.sort();
            direct.sort();
            prop_assert_eq!(moved, direct);
        }
    }

    #[test]
    fn tensor_algebra_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (random_algebra(s1), random_algebra(s2), random_algebra(s3));
        let left = tensor_algebra(&tensor_algebra(&a, &b), &c);
        let right = tensor_algebra(&a, &tensor_algebra(&b, &c));
        prop_assert_eq!(left.structure_constants(), right.structure_constants());
        prop_assert_eq!(left.unit(), right.unit());
    }

    #[test]
    fn unit_iso_composites_are_identities(seed in any::<u64>()) {
        let a = random_algebra(seed);
        let (forward, backward, _) = unit_iso(&a).unwrap();
        prop_assert!((&backward.matrix * &forward.matrix).is_identity());
        prop_assert!((&forward.matrix * &backward.matrix).is_identity());
    }

    #[test]
    fn a_tensor_over_a_is_a(seed in any::<u64>()) {
        let a = random_algebra(seed);
        let t = relative_tensor(&RightModule::free(a.clone(), 1), &Bimodule::regular(a.clone())).unwrap();
        prop_assert_eq!(t.dim, a.dim());
        // a ⊗ b ↦ ab descends to a bijection
        let mult = Matrix::from_columns(
            a.dim(),
            &(0..a.dim() * a.dim())
                .map(|k| a.product_of_basis(k / a.dim(), k % a.dim()))
                .collect::<Vec<_>>(),
        );
        prop_assert!((&mult * &t.section).is_invertible());
    }

    #[test]
    fn presented_products_match_truncated_polynomials(p in 2usize..5, r in 2usize..5, bound in 2usize..6) {
        // y x -> x y, x^p -> 0, y^r -> 0
        let rules = vec![
            RewriteRule { lead: vec![1, 0], tail: vec![(vec![0, 1], q(1))] },
            RewriteRule { lead: vec![0; p], tail: vec![] },
            RewriteRule { lead: vec![1; r], tail: vec![] },
        ];
        let alg = PresentedAlgebra::new(vec!["x".into(), "y".into()], rules, bound).unwrap();
        let exps = |w: &[usize]| (w.iter().filter(|&&g| g == 0).count(), w.iter().filter(|&&g| g == 1).count());
        let expected_dim = (0..p).flat_map(|a| (0..r).map(move |b| (a, b))).filter(|(a, b)| a + b <= bound).count();
        prop_assert_eq!(alg.dim(), expected_dim);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let ((a, b), (c, d)) = (exps(&alg.basis()[i]), exps(&alg.basis()[j]));
                let got = alg.multiply_basis(i, j);
                if a + c >= p || b + d >= r {
                    prop_assert_eq!(got.unwrap(), vec![Rational::zero(); alg.dim()]);
                } else if a + b + c + d > bound {
                    prop_assert!(got.is_err());
                } else {
                    let word: Vec<usize> = std::iter::repeat_n(0, a + c).chain(std::iter::repeat_n(1, b + d)).collect();
                    let k = alg.basis_index(&word).unwrap();
                    let mut e = vec![Rational::zero(); alg.dim()];
                    e[k] = Rational::one();
                    prop_assert_eq!(got.unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn invariants_form_a_unital_subalgebra(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(FiniteGroup::cyclic(2 + random::index(&mut rng, 3)));
        let actions = [
            GroupAction::translation(g.clone()),
            GroupAction::adjoint_on_functions(g.clone()),
            GroupAction::adjoint_on_group_algebra(g.clone()),
        ];
        let act = &actions[random::index(&mut rng, actions.len())];
        let inv = invariants(act);
        prop_assert!(inv.subspace.contains(act.algebra.unit()));
        for x in inv.subspace.basis() {
            for y in inv.subspace.basis() {
                prop_assert!(inv.subspace.contains(&act.algebra.mul(&x, &y)));
            }
        }
    }

    #[test]
    fn fixed_space_is_image_of_averaging(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let groups = [FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::power(&FiniteGroup::cyclic(2), 2)];
        let g = Arc::new(groups[random::index(&mut rng, groups.len())].clone());
        let rep = random_representation(&mut rng, &g, 4);
        let fixed = rep.fixed_space();
        let image = Subspace::from_vectors(rep.dim, rep.averaging().columns());
        prop_assert!(fixed.is_subspace_of(&image) && image.is_subspace_of(&fixed));
    }

    #[test]
    fn coaction_conversion_is_a_bijection(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(FiniteGroup::symmetric(3));
        let rep = random_representation(&mut rng, &g, 4);
        let c = coaction_from_action(&rep);
        let back = action_from_coaction(&c).unwrap();
        prop_assert_eq!(&back.matrices, &rep.matrices);
        prop_assert_eq!(coaction_from_action(&back).matrix, c.matrix);
    }

    #[test]
    fn products_on_distinct_factors_commute(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let model = build_circle_model(3).unwrap();
        let theories: [Aqft; 4] = [
            constant_theory(&model.opens, random_algebra(seed).clone()),
            commutative_theory(&model.opens),
            clifford_theory(&model),
            exterior_theory(&model),
        ];
        let a = &theories[random::index(&mut rng, theories.len())];
        if !check_aqft(a).passed() {
            prop_assert!(to_prefactorization(a, 3).is_err());
            return Ok(());
        }
        let f = to_prefactorization(a, 3).unwrap();
        let back = from_prefactorization(&f).unwrap();
        prop_assert!(back.same_data(a));
        prop_assert!(same_products(&to_prefactorization(&back, 3).unwrap(), &f));
        for (op, product) in &f.products {
            let dims: Vec<usize> = op.sources.iter().map(|&s| a.algebras[s].dim()).collect();
            let t = &a.algebras[op.target];
            if dims.len() != 2 {
                continue;
            }
            let (i, j) = (random::index(&mut rng, dims[0]), random::index(&mut rng, dims[1]));
            let (x, y) = (product.column(i * dims[1]), product.column(j));
            prop_assert_eq!(t.mul(&x, &y), t.mul(&y, &x));
        }
    }

    #[test]
    fn canonical_map_dimension_law(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(FiniteGroup::cyclic(2 + random::index(&mut rng, 2)));
        let actions = [
            GroupAction::translation(g.clone()),
            GroupAction::trivial(g.clone(), random_algebra(seed)),
            GroupAction::adjoint_on_functions(g.clone()),
        ];
        let act = &actions[random::index(&mut rng, actions.len())];
        let v = is_hopf_galois(act).unwrap();
        let d = act.algebra.dim();
        prop_assert!(v.source_dim <= d * d);
        prop_assert_eq!(v.target_dim, d * g.order());
    }

    #[test]
    fn galois_verdict_predicts_counit(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(FiniteGroup::cyclic(2));
        let actions = [
            Arc::new(GroupAction::translation(g.clone())),
            Arc::new(GroupAction::trivial(g.clone(), Arc::new(RationalAlgebra::field()))),
        ];
        let act = &actions[random::index(&mut rng, actions.len())];
        let inv = invariants(act);
        let v = is_hopf_galois(act).unwrap();
        if v.is_bijective() {
            let m = random_equivariant_module(&mut rng, act, 6);
            prop_assert!(counit_component(&inv, &m).is_iso());
        } else {
            let w = counit_failure_witness(act, &inv, 6).unwrap();
            prop_assert!(!counit_component(&inv, &w.module).is_iso());
        }
    }

    #[test]
    fn abelian_loop_counts_are_squares(n in 2usize..5, seed in any::<u64>()) {
        let c = count_simple_loop_objects(&FiniteGroup::cyclic(n), DEFAULT_PRIME_BOUND, seed).unwrap();
        prop_assert_eq!(c.count, n * n);
    }

    #[test]
    fn coaction_round_trip_on_random_objects(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let model = LoopModel::new(&Arc::new(FiniteGroup::cyclic(3)));
        let obj = random_theta_object(&mut rng, &model, 3);
        let back = coaction_to_theta(&model, &theta_to_coaction(&model, &obj).unwrap()).unwrap();
        prop_assert_eq!(back.theta, obj.theta);
    }

    #[test]
    fn restricted_modules_are_descent_objects(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (a, j, target) = free_product_fixture();
        let res = universal_algebra(&a, &j, &target, &[2], DEFAULT_TUPLE_CAP, 3).unwrap();
        // random square-zero matrices for the two nilpotent generators
        let dim = 1 + random::index(&mut rng, 3);
        let nilpotent = |rng: &mut random::SeededRng| {
            let p = random::invertible(rng, dim);
            let mut n = Matrix::zeros(dim, dim);
            if dim > 1 {
                n.set(0, dim - 1, Rational::one());
            }
            &(&p * &n) * &p.inverse().unwrap()
        };
        let mut generators = vec![Matrix::zeros(dim, dim); res.algebra.generators().len()];
        for s in res.slice.singletons() {
            let off = res.generator_offset[s].unwrap();
            generators[off] = Matrix::identity(dim);
            generators[off + 1] = nilpotent(&mut rng);
        }
        let v = aqftlab::algebra::PresentedModule { dim, generators };
        let x = module_to_descent(&res, &v).unwrap();
        prop_assert!(descent_check(&res, &x).unwrap().passed());
    }
}

#[test]
fn circle_models_validate() {
    for n in 2..=6 {
        let model = build_circle_model(n).unwrap();
        for site in [&model.disks, &model.opens] {
            assert!(
                validate_orthogonal_category(site).unwrap().violations.is_empty(),
                "n = {n}"
            );
            let closed: std::collections::BTreeSet<_> = closure(site.base(), &site.pairs()).into_iter().collect();
            assert_eq!(closed.into_iter().collect::<Vec<_>>(), site.pairs(), "n = {n}");
        }
    }
}

#[test]
fn equivariant_theories_refuse_unnatural_actions() {
    let model = build_circle_model(2).unwrap();
    let theory = clifford_theory(&model);
    let g = Arc::new(FiniteGroup::cyclic(2));
    let mut actions: Vec<Arc<GroupAction>> = theory
        .algebras
        .iter()
        .map(|a| Arc::new(GroupAction::trivial(g.clone(), a.clone())))
        .collect();
    // parity on the whole circle only: not natural along the arc inclusions
    let s1 = model.circle();
    let a = theory.algebras[s1].clone();
    let signs: Vec<i64> = (0..a.dim())
        .map(|m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    actions[s1] = Arc::new(GroupAction::parity(a, &signs).unwrap());
    assert!(EquivariantAqft::new(theory, g, actions).is_err());
}
