//! The loop category of `Rep(G)`: pairs `(V, θ)` with `θ: δ¹V -> δ⁰V` in
//! `Rep(G²)` subject to the counit and cocycle conditions, and its
//! equivalence with `G`-equivariant `O(G)`-modules.
//!
//! All induction functors use the coset model. `Δ_!V` has the transversal
//! `(1, k)`, so its blocks are indexed by `k ∈ G`.

use std::sync::Arc;

use serde::Serialize;

use super::prime_field::{primitive_idempotents, splitting_prime, FpAlgebra, PrimeField};
use crate::algebra::RightModule;
use crate::exactlin::{Matrix, Rational};
use crate::grouprep::{CosetInduction, EquivariantModule, FiniteGroup, GroupAction, Representation};
use crate::random::{self, SeededRng};

#[derive(Debug, Clone)]
pub struct ThetaObject {
    pub v: Representation,
    pub theta: Matrix,
}

/// The groups `G, G², G³` with the induction data for `Δ`, the three
/// cofaces `φⁱ: G² -> G³` and the triagonal `G -> G³`.
#[derive(Debug, Clone)]
pub struct LoopModel {
    pub group: Arc<FiniteGroup>,
    pub square: Arc<FiniteGroup>,
    pub cube: Arc<FiniteGroup>,
    pub diagonal: CosetInduction,
    pub faces: [CosetInduction; 3],
    pub triagonal: CosetInduction,
}

impl LoopModel {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let square = Arc::new(FiniteGroup::power(group, 2));
        let cube = Arc::new(FiniteGroup::power(group, 3));
        let e = group.identity();
        let pair = |a: usize, b: usize| a * n + b;
        let triple = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let delta: Vec<usize> = group.elements().map(|g| pair(g, g)).collect();
        let transversal = group.elements().map(|k| pair(e, k)).collect();
        let diagonal =
            CosetInduction::with_transversal(group, &square, &delta, transversal).expect("diagonal embedding");
        let face = |f: &dyn Fn(usize, usize) -> usize| {
            let phi: Vec<usize> = square.elements().map(|x| f(x / n, x % n)).collect();
            CosetInduction::new(&square, &cube, &phi).expect("coface embedding")
        };
        let faces = [
            face(&|a, b| triple(a, a, b)),
            face(&|a, b| triple(a, b, b)),
            face(&|a, b| triple(a, b, a)),
        ];
        let tri: Vec<usize> = group.elements().map(|g| triple(g, g, g)).collect();
        let triagonal = CosetInduction::new(group, &cube, &tri).expect("triagonal embedding");
        LoopModel {
            group: group.clone(),
            square,
            cube,
            diagonal,
            faces,
            triagonal,
        }
    }

    /// `δ⁰V = δ¹V = Δ_!V`.
    pub fn delta(&self, v: &Representation) -> Representation {
        self.diagonal.rep(v)
    }

    /// `ε⁰(θ)` on `V ≅ p₁_!Δ_!V`, `(1,k) ⊗ v ↦ v`.
    pub fn counit(&self, v: &Representation, theta: &Matrix) -> Matrix {
        let d = v.dim;
        let n = self.group.order();
        let e = self.group.identity();
        let collapse = Matrix::from_fn(d, n * d, |r, c| {
            let k = c / d;
            let g = self.diagonal.transversal[k] / n;
            v.matrices[g].get(r, c % d).clone()
        });
        &(&collapse * theta) * &self.section(v.dim, e)
    }

    fn section(&self, d: usize, k: usize) -> Matrix {
        let n = self.group.order();
        Matrix::from_fn(n * d, d, |r, c| {
            if r / d == k && r % d == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `δⁱ(θ)` transported to `T_!V` along the composition isomorphism.
    pub fn face_on_triagonal(&self, i: usize, v: &Representation, theta: &Matrix) -> Matrix {
        let face = &self.faces[i];
        let c = face.composition_iso(&self.diagonal, &self.triagonal, v);
        let c_inv = face.composition_iso_inverse(&self.diagonal, &self.triagonal, v);
        &(&c * &face.map(theta)) * &c_inv
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopViolation {
    Shape,
    NotEquivariant { element: usize },
    NotInvertible,
    Counit,
    Cocycle,
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopReport {
    pub group_order: usize,
    pub dim: usize,
    pub violation: Option<LoopViolation>,
}

impl LoopReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn loop_category_check(model: &LoopModel, candidate: &ThetaObject) -> LoopReport {
    let report = |violation| LoopReport {
        group_order: model.group.order(),
        dim: candidate.v.dim,
        violation,
    };
    let v = &candidate.v;
    let theta = &candidate.theta;
    let n = model.group.order() * v.dim;
    if *v.group != *model.group || theta.shape() != (n, n) || v.validate().is_err() {
        return report(Some(LoopViolation::Shape));
    }
    let delta = model.delta(v);
    if let Some(y) = model
        .square
        .elements()
        .find(|&y| &delta.matrices[y] * theta != theta * &delta.matrices[y])
    {
        return report(Some(LoopViolation::NotEquivariant { element: y }));
    }
    if !theta.is_invertible() {
        return report(Some(LoopViolation::NotInvertible));
    }
    if !model.counit(v, theta).is_identity() {
        return report(Some(LoopViolation::Counit));
    }
    let d0 = model.face_on_triagonal(0, v, theta);
    let d1 = model.face_on_triagonal(1, v, theta);
    let d2 = model.face_on_triagonal(2, v, theta);
    if &d0 * &d2 != d1 {
        return report(Some(LoopViolation::Cocycle));
    }
    report(None)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("not an object of the loop category: {0:?}")]
    Invalid(LoopViolation),
    #[error("the extracted maps do not form an equivariant O(G)-module")]
    NotCoaction,
    #[error("no prime p <= {bound} with p coprime to {order} and p = 1 mod {exponent}")]
    NoPrime { bound: u64, order: usize, exponent: usize },
    #[error("idempotent splitting over F_{prime} failed with seed {seed}")]
    SplittingFailed { prime: u64, seed: u64 },
    #[error("simple counts disagree: centralizers give {centralizer}, F_{prime} gives {prime_field} (seed {seed})")]
    Mismatch {
        centralizer: usize,
        prime_field: usize,
        prime: u64,
        seed: u64,
    },
}

/// `ϑ(v) = θ((1,e) ⊗ v)`, with `ϑ_h` the block of `(1,h)`, as the
/// `O(G)`-module `v · e_h = ϑ_h(v)` with the adjoint action on `O(G)`.
pub fn theta_to_coaction(model: &LoopModel, obj: &ThetaObject) -> Result<EquivariantModule, LoopError> {
    let report = loop_category_check(model, obj);
    if let Some(v) = report.violation {
        return Err(LoopError::Invalid(v));
    }
    let d = obj.v.dim;
    let column = &obj.theta * &model.section(d, model.group.identity());
    let action: Vec<Matrix> = model
        .group
        .elements()
        .map(|h| Matrix::from_fn(d, d, |r, c| column.get(h * d + r, c).clone()))
        .collect();
    let oga = Arc::new(GroupAction::adjoint_on_functions(model.group.clone()));
    let module = RightModule {
        algebra: oga.algebra.clone(),
        dim: d,
        action,
    };
    EquivariantModule::new(oga, module, obj.v.clone()).map_err(|_| LoopError::NotCoaction)
}

/// The inverse: block column `k` of `θ` is `(1,k) · ϑ`.
pub fn coaction_to_theta(model: &LoopModel, m: &EquivariantModule) -> Result<ThetaObject, LoopError> {
    if *m.action.group != *model.group
        || *m.action.algebra != *GroupAction::adjoint_on_functions(model.group.clone()).algebra
        || m.validate().is_err()
    {
        return Err(LoopError::NotCoaction);
    }
    let d = m.dim();
    let n = model.group.order();
    let mut column = Matrix::zeros(n * d, d);
    for (h, block) in m.module.action.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                column.set(h * d + r, c, block.get(r, c).clone());
            }
        }
    }
    let delta = model.delta(&m.rep);
    let mut theta = Matrix::zeros(n * d, n * d);
    for (k, &r_k) in model.diagonal.transversal.iter().enumerate() {
        let block = &delta.matrices[r_k] * &column;
        for r in 0..n * d {
            for c in 0..d {
                theta.set(r, k * d + c, block.get(r, c).clone());
            }
        }
    }
    Ok(ThetaObject {
        v: m.rep.clone(),
        theta,
    })
}

/// The simple object attached to a class representative `c` and a
/// representation `u` of its centralizer: `Ind(u)` graded by
/// `r_k ⊗ u ↦ r_k c r_k⁻¹`.
pub fn twisted_sector(model: &LoopModel, c: usize, u: &Representation, emb: &[usize]) -> EquivariantModule {
    let g = &model.group;
    let ind = CosetInduction::new(&u.group, g, emb).expect("centralizer embedding");
    let rep = ind.rep(u);
    let d = u.dim;
    let action = g
        .elements()
        .map(|h| {
            let mut m = Matrix::zeros(rep.dim, rep.dim);
            for (k, &r) in ind.transversal.iter().enumerate() {
                if g.conjugate(r, c) == h {
                    for i in 0..d {
                        m.set(k * d + i, k * d + i, Rational::one());
                    }
                }
            }
            m
        })
        .collect();
    let oga = Arc::new(GroupAction::adjoint_on_functions(g.clone()));
    EquivariantModule {
        module: RightModule {
            algebra: oga.algebra.clone(),
            dim: rep.dim,
            action,
        },
        action: oga,
        rep,
    }
}

/// A seeded random valid object of dimension at most `max_dim` (and at
/// least one): a direct sum of twisted sectors in a random basis.
pub fn random_theta_object(rng: &mut SeededRng, model: &LoopModel, max_dim: usize) -> ThetaObject {
    let g = &model.group;
    let classes = g.conjugacy_classes();
    let mut total: Option<EquivariantModule> = None;
    let target = 1 + random::index(rng, max_dim);
    loop {
        let have = total.as_ref().map_or(0, |m| m.dim());
        let room = target - have;
        let fitting: Vec<(usize, Vec<usize>)> = classes
            .iter()
            .map(|cl| (cl[0], cl.len()))
            .filter(|&(_, size)| size <= room)
            .map(|(c, _)| (c, g.centralizer(c)))
            .collect();
        if fitting.is_empty() {
            break;
        }
        let (c, cent) = &fitting[random::index(rng, fitting.len())];
        let (sub, emb) = g.subgroup(cent);
        let sub = Arc::new(sub);
        let u = crate::grouprep::random_representation(rng, &sub, room / (g.order() / sub.order()));
        let sector = twisted_sector(model, *c, &u, &emb);
        total = Some(match total {
            None => sector,
            Some(t) => t.direct_sum(&sector),
        });
        if total.as_ref().map_or(0, |m| m.dim()) >= target {
            break;
        }
    }
    let m = total.expect("the identity class always fits");
    let m = m.conjugate(&random::invertible(rng, m.dim()));
    coaction_to_theta(model, &m).expect("twisted sectors are coactions")
}

/// Both counts of simple objects, with the prime and seed used.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleCount {
    pub count: usize,
    /// `(class representative, class size, number of centralizer classes)`.
    pub per_class: Vec<(usize, usize, usize)>,
    pub prime: u64,
    pub seed: u64,
    pub center_dim: usize,
    pub primitive_idempotents: usize,
}

/// The number of simple objects, as `Σ_classes #classes(C(c))` and as the
/// number of primitive central idempotents of `F_p[G//G]`; an error if
/// the two disagree.
pub fn count_simple_loop_objects(g: &FiniteGroup, prime_bound: u64, seed: u64) -> Result<SimpleCount, LoopError> {
    let per_class: Vec<(usize, usize, usize)> = g
        .conjugacy_classes()
        .iter()
        .map(|cl| {
            let (cent, _) = g.subgroup(&g.centralizer(cl[0]));
            (cl[0], cl.len(), cent.conjugacy_classes().len())
        })
        .collect();
    let centralizer: usize = per_class.iter().map(|c| c.2).sum();

    let (order, exponent) = (g.order(), g.exponent());
    let p = splitting_prime(order as u64, exponent as u64, prime_bound).ok_or(LoopError::NoPrime {
        bound: prime_bound,
        order,
        exponent,
    })?;
    let alg = groupoid_algebra(g, PrimeField::new(p));
    let center = alg.center();
    let idems = primitive_idempotents(&alg, &center, &mut random::rng(seed), 50)
        .ok_or(LoopError::SplittingFailed { prime: p, seed })?;
    if idems.len() != centralizer {
        return Err(LoopError::Mismatch {
            centralizer,
            prime_field: idems.len(),
            prime: p,
            seed,
        });
    }
    Ok(SimpleCount {
        count: centralizer,
        per_class,
        prime: p,
        seed,
        center_dim: center.len(),
        primitive_idempotents: idems.len(),
    })
}

/// `F_p[G//G]` on arrows `(g, x): x -> gxg⁻¹` at index `g·|G| + x`, with
/// `(g', y)(g, x) = (g'g, x)` when `y = gxg⁻¹` and zero otherwise.
pub fn groupoid_algebra(g: &FiniteGroup, field: PrimeField) -> FpAlgebra {
    let n = g.order();
    let table = (0..n * n)
        .map(|a| {
            let (g2, y) = (a / n, a % n);
            (0..n * n)
                .map(|b| {
                    let (g1, x) = (b / n, b % n);
                    let mut out = vec![0; n * n];
                    if y == g.conjugate(g1, x) {
                        out[g.mul(g2, g1) * n + x] = 1;
                    }
                    out
                })
                .collect()
        })
        .collect();
    let mut unit = vec![0; n * n];
    for x in g.elements() {
        unit[g.identity() * n + x] = 1;
    }
    FpAlgebra { field, table, unit }
}
