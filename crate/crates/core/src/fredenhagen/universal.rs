//! The universal algebra of a theory on a site of "small" regions,
//! presented as a colimit over the slice of the envelope functor.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::presented::{element_of_word, rules_from_relations, DegLex, Element, Overflow};
use crate::algebra::{tensor_all, AlgebraMorphism, PresentationError, PresentedAlgebra, RationalAlgebra};
use crate::aqft::{flip_matrix, multiply_images, split_index, Aqft, AqftError};
use crate::exactlin::{Matrix, Rational};
use crate::fincat::{FinCategory, FinFunctor, ObjId, OrthogonalCategory};
use crate::operad::{envelope_functor, envelope_slice, EnvelopeMorphism, EnvelopeSlice, OperadError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniversalError {
    #[error("degree bound {0} is below 2")]
    DegreeBound(usize),
    #[error(transparent)]
    Embedding(#[from] OperadError),
    #[error("the theory is defined on a different site than the embedding source")]
    SiteMismatch,
    #[error("the relations force 1 = 0")]
    Collapsed,
    #[error(transparent)]
    Presentation(PresentationError),
}

/// The image of a slice object's tuple algebra. Entry `i` is `χ(e_i)` or
/// the overflow met while multiplying it out.
#[derive(Debug, Clone)]
pub struct CoconeMap {
    pub columns: Vec<Result<Vec<Rational>, Overflow>>,
}

impl CoconeMap {
    pub fn overflowed(&self) -> usize {
        self.columns.iter().filter(|c| c.is_err()).count()
    }
}

#[derive(Debug, Clone)]
pub struct UniversalAlgebraResult {
    pub algebra: PresentedAlgebra,
    pub slice: EnvelopeSlice,
    /// Tuple algebra `⊗_k 𝔄(c_k)` of every slice object.
    pub tuple_algebras: Vec<Arc<RationalAlgebra>>,
    /// For every slice object and slot, the singleton slice object of that slot.
    pub slots: Vec<Vec<usize>>,
    /// First generator index of every singleton slice object (others: `None`).
    pub generator_offset: Vec<Option<usize>>,
    pub cocone: Vec<CoconeMap>,
    /// Tuple algebra map of every slice morphism.
    pub tuple_maps: Vec<Matrix>,
    pub degree_bound: usize,
}

impl UniversalAlgebraResult {
    /// `χ_s(e_i)` for a singleton `s`, as a reduced element (degree at most one).
    pub fn singleton_image(&self, s: usize, i: usize) -> Element {
        let g = self.generator_offset[s].expect("singleton slice object") + i;
        self.algebra.reduce(&element_of_word(&[g]))
    }
}

/// `𝔄 ∘ j` on the source site of `j`.
pub fn restrict_along(a: &Aqft, j: &FinFunctor, source: &OrthogonalCategory) -> Result<Aqft, AqftError> {
    let base = source.base();
    let algebras = base.objects().map(|c| a.algebras[j.map_object(c)].clone()).collect();
    let maps = base
        .morphism_ids()
        .map(|f| {
            let m = &a.maps[j.map_morphism(f)];
            AlgebraMorphism::new_unchecked(
                a.algebras[j.map_object(base.source(f))].clone(),
                a.algebras[j.map_object(base.target(f))].clone(),
                m.matrix.clone(),
            )
        })
        .collect();
    Aqft::new(source.clone(), algebras, maps)
}

/// The algebra map `⊗_{x} 𝔄 -> ⊗_{y} 𝔄` of an envelope morphism: slot
/// `j` of the target receives the ordered product of its fiber.
pub fn tuple_map(a: &Aqft, u: &EnvelopeMorphism) -> Matrix {
    let dims_x: Vec<usize> = u.source.iter().map(|&c| a.algebras[c].dim()).collect();
    let mut order = Vec::new();
    let mut blocks = Vec::new();
    for (j, &t) in u.target.iter().enumerate() {
        let fiber = u.fiber(j);
        let maps: Vec<Matrix> = fiber.iter().map(|&k| a.maps[u.components[k]].matrix.clone()).collect();
        blocks.push(multiply_images(&a.algebras[t], &maps));
        order.extend(fiber);
    }
    let mut sigma = vec![0; order.len()];
    for (p, &k) in order.iter().enumerate() {
        sigma[k] = p;
    }
    let dims_out: Vec<usize> = order.iter().map(|&k| dims_x[k]).collect();
    &Matrix::kronecker_all(blocks.iter()) * &flip_matrix(&dims_out, &sigma)
}

pub fn tuple_algebra(a: &Aqft, tuple: &[ObjId]) -> RationalAlgebra {
    tensor_all(tuple.iter().map(|&c| &*a.algebras[c]))
}

fn slot_object(slice: &EnvelopeSlice, x: usize, k: usize) -> usize {
    let o = &slice.objects[x];
    (0..slice.objects.len())
        .find(|&s| {
            let so = &slice.objects[s];
            so.tuple == [o.tuple[k]] && so.h.alpha == [o.h.alpha[k]] && so.h.components == [o.h.components[k]]
        })
        .expect("every slot is a singleton slice object")
}

fn add(e: &mut Element, w: Vec<usize>, c: Rational) {
    let key = DegLex(w);
    let v = e.entry(key.clone()).or_insert_with(Rational::zero);
    *v += &c;
    if v.is_zero() {
        e.remove(&key);
    }
}

/// Presents the colimit of `a` (a theory on the source of `j`) over the
/// slice `J⊗/d`, with tuples up to `cap`. Generators are the basis
/// elements of the singleton algebras; tuples are generated by their
/// slots.
pub fn universal_algebra(
    a: &Aqft,
    j: &FinFunctor,
    target: &OrthogonalCategory,
    d: &[ObjId],
    cap: usize,
    degree_bound: usize,
) -> Result<UniversalAlgebraResult, UniversalError> {
    if degree_bound < 2 {
        return Err(UniversalError::DegreeBound(degree_bound));
    }
    let base = a.site.base();
    if !Arc::ptr_eq(&j.source, a.site.base_arc())
        && (j.source.num_objects(), j.source.num_morphisms()) != (base.num_objects(), base.num_morphisms())
    {
        return Err(UniversalError::SiteMismatch);
    }
    let ef = envelope_functor(j, &a.site, target)?;
    let slice = envelope_slice(&ef, d, cap);
    let n = slice.objects.len();

    let mut generators = Vec::new();
    let mut generator_offset = vec![None; n];
    for s in slice.singletons() {
        generator_offset[s] = Some(generators.len());
        let c = slice.objects[s].tuple[0];
        for i in 0..a.algebras[c].dim() {
            generators.push(format!("{}:e{i}", slice.object_name(s)));
        }
    }
    let gen = |s: usize, i: usize| generator_offset[s].expect("singleton") + i;
    let slots: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..slice.objects[x].tuple.len())
                .map(|k| slot_object(&slice, x, k))
                .collect()
        })
        .collect();

    let mut linear = Vec::new();
    let mut quadratic = Vec::new();
    for s in slice.singletons() {
        let alg = &*a.algebras[slice.objects[s].tuple[0]];
        let mut unit = Element::new();
        add(&mut unit, vec![], -Rational::one());
        for (i, u) in alg.unit().iter().enumerate() {
            add(&mut unit, vec![gen(s, i)], u.clone());
        }
        linear.push(unit);
        for i in 0..alg.dim() {
            for k in 0..alg.dim() {
                let mut rel = Element::new();
                add(&mut rel, vec![gen(s, i), gen(s, k)], Rational::one());
                for (m, c) in alg.product_of_basis(i, k).into_iter().enumerate() {
                    add(&mut rel, vec![gen(s, m)], -c);
                }
                quadratic.push(rel);
            }
        }
    }
    for m in &slice.morphisms {
        let (x, y) = (m.source, m.target);
        if slice.objects[x].tuple.len() != 1 || slice.objects[y].tuple.len() != 1 || m.u.is_identity(base) {
            continue;
        }
        let f = &a.maps[m.u.components[0]].matrix;
        for i in 0..f.cols() {
            let mut rel = Element::new();
            add(&mut rel, vec![gen(x, i)], Rational::one());
            for k in 0..f.rows() {
                add(&mut rel, vec![gen(y, k)], -f.get(k, i).clone());
            }
            linear.push(rel);
        }
    }
    for x in 0..n {
        if slice.objects[x].tuple.len() != 2 {
            continue;
        }
        let (s1, s2) = (slots[x][0], slots[x][1]);
        let (d1, d2) = (
            a.algebras[slice.objects[s1].tuple[0]].dim(),
            a.algebras[slice.objects[s2].tuple[0]].dim(),
        );
        for i in 0..d1 {
            for k in 0..d2 {
                let mut rel = Element::new();
                add(&mut rel, vec![gen(s1, i), gen(s2, k)], Rational::one());
                add(&mut rel, vec![gen(s2, k), gen(s1, i)], -Rational::one());
                quadratic.push(rel);
            }
        }
    }

    let linear_rules = rules_from_relations(&linear);
    if linear_rules.iter().any(|r| r.lead.is_empty()) {
        return Err(UniversalError::Collapsed);
    }
    let eliminate = PresentedAlgebra::new(generators.clone(), linear_rules, 0).map_err(UniversalError::Presentation)?;
    let mut relations = linear;
    relations.extend(quadratic.iter().map(|r| eliminate.reduce(r)).filter(|r| !r.is_empty()));
    let rules = rules_from_relations(&relations);
    if rules.iter().any(|r| r.lead.is_empty()) {
        return Err(UniversalError::Collapsed);
    }
    let algebra = PresentedAlgebra::new(generators, rules, degree_bound).map_err(UniversalError::Presentation)?;

    let tuple_algebras: Vec<Arc<RationalAlgebra>> = slice
        .objects
        .iter()
        .map(|o| Arc::new(tuple_algebra(a, &o.tuple)))
        .collect();
    let cocone = (0..n)
        .map(|x| {
            let dims: Vec<usize> = slice.objects[x].tuple.iter().map(|&c| a.algebras[c].dim()).collect();
            let total = tuple_algebras[x].dim();
            let columns = (0..total)
                .map(|flat| {
                    let multi = split_index(flat, &dims);
                    let mut e = element_of_word(&[]);
                    for (k, &i) in multi.iter().enumerate() {
                        let factor = algebra.reduce(&element_of_word(&[gen(slots[x][k], i)]));
                        let mut prod = Element::new();
                        for (w1, c1) in &e {
                            for (w2, c2) in &factor {
                                add(&mut prod, [w1.0.as_slice(), w2.0.as_slice()].concat(), c1 * c2);
                            }
                        }
                        e = prod;
                    }
                    algebra.coordinates(&e)
                })
                .collect();
            CoconeMap { columns }
        })
        .collect();
    let tuple_maps = slice.morphisms.iter().map(|m| tuple_map(a, &m.u)).collect();
    Ok(UniversalAlgebraResult {
        algebra,
        slice,
        tuple_algebras,
        slots,
        generator_offset,
        cocone,
        tuple_maps,
        degree_bound,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CoconeReport {
    pub morphisms_checked: usize,
    pub entries_checked: usize,
    /// Entries skipped because a side left the degree bound.
    pub entries_flagged: usize,
    /// `(slice morphism, basis index)` of the first failure.
    pub failure: Option<(usize, usize)>,
}

impl CoconeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `χ_y ∘ 𝔄(u) = χ_x` for every slice morphism `u: x -> y`, on every
/// basis element where both sides stay within the bound.
pub fn check_cocone(res: &UniversalAlgebraResult) -> CoconeReport {
    let mut report = CoconeReport::default();
    for (mi, m) in res.slice.morphisms.iter().enumerate() {
        report.morphisms_checked += 1;
        let f = &res.tuple_maps[mi];
        let (cx, cy) = (&res.cocone[m.source], &res.cocone[m.target]);
        for i in 0..f.cols() {
            let Ok(lhs) = &cx.columns[i] else {
                report.entries_flagged += 1;
                continue;
            };
            let mut rhs = vec![Rational::zero(); res.algebra.dim()];
            let mut flagged = false;
            for (k, c) in f.column(i).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &cy.columns[k] {
                    Ok(col) => crate::exactlin::vector::axpy(&mut rhs, c, col),
                    Err(_) => flagged = true,
                }
            }
            if flagged {
                report.entries_flagged += 1;
                continue;
            }
            report.entries_checked += 1;
            if *lhs != rhs && report.failure.is_none() {
                report.failure = Some((mi, i));
            }
        }
    }
    report
}

/// Two objects with no orthogonality, both carrying `K[x]/(x²)`, embedded
/// into a site with a third object receiving both.
pub fn free_product_fixture() -> (Aqft, FinFunctor, OrthogonalCategory) {
    let names: Vec<String> = vec!["a".into(), "b".into(), "p".into()];
    let target_base = Arc::new(FinCategory::poset(names.clone(), |x, y| x == y || y == 2));
    let source_base = Arc::new(FinCategory::discrete(names[..2].to_vec()));
    let source = OrthogonalCategory::empty(source_base.clone());
    let target = OrthogonalCategory::empty(target_base.clone());
    let morphism_map = source_base
        .morphism_ids()
        .map(|m| target_base.identity(source_base.source(m)))
        .collect();
    let j = FinFunctor::new(source_base, target_base, vec![0, 1], morphism_map).expect("inclusion");
    let dual = Arc::new(crate::algebra::clifford_algebra(&[Rational::zero()]));
    let a = crate::aqft::models::constant_theory(&source, dual);
    (a, j, target)
}
