//! `Φ = (−) ⊗_B A` from `B`-modules to equivariant `A`-modules and
//! `Ψ = (−)^G` back, with their unit and counit components.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{relative_tensor, Bimodule, RightModule};
use crate::exactlin::{vector, Matrix, Rational, Subspace};
use crate::grouprep::{
    all_homomorphisms, building_blocks, random_representation, EquivariantModule, FiniteGroup, GroupAction, Invariants,
    Representation,
};
use crate::random::{self, SeededRng};

/// `Φ(W) = W ⊗_B A` with `g` acting on the `A` factor.
pub fn phi(action: &Arc<GroupAction>, inv: &Invariants, w: &RightModule) -> EquivariantModule {
    let tensor = relative_tensor(w, &Bimodule::from_morphism(&inv.inclusion)).expect("module over B");
    let id_w = Matrix::identity(w.dim);
    let matrices = action
        .matrices
        .iter()
        .map(|r| &(&tensor.projection * &id_w.kronecker(r)) * &tensor.section)
        .collect();
    EquivariantModule {
        action: action.clone(),
        module: tensor.module,
        rep: Representation {
            group: action.group.clone(),
            dim: tensor.dim,
            matrices,
        },
    }
}

/// `Ψ(V) = V^G` as a `B`-module, with its inclusion into `V`.
pub fn psi(v: &EquivariantModule, inv: &Invariants) -> (RightModule, Matrix) {
    v.invariant_module(inv)
}

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub matrix: Matrix,
}

impl Component {
    fn new(matrix: Matrix) -> Self {
        Component {
            source_dim: matrix.cols(),
            target_dim: matrix.rows(),
            rank: matrix.rank(),
            matrix,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

/// `η_W: W -> Ψ Φ(W)`, `w ↦ w ⊗ 1`.
pub fn unit_component(action: &Arc<GroupAction>, inv: &Invariants, w: &RightModule) -> Component {
    let tensor = relative_tensor(w, &Bimodule::from_morphism(&inv.inclusion)).expect("module over B");
    let phi_w = phi(action, inv, w);
    let (_, incl) = psi(&phi_w, inv);
    let unit = action.algebra.unit();
    let cols: Vec<Vec<Rational>> = (0..w.dim)
        .map(|j| {
            let image = tensor.projection.apply(&vector::kron(&vector::unit(w.dim, j), unit));
            incl.solve(&image).expect("w ⊗ 1 is invariant")
        })
        .collect();
    Component::new(Matrix::from_columns(incl.cols(), &cols))
}

/// `ε_V: Φ Ψ(V) -> V`, `v ⊗ a ↦ v · a`.
pub fn counit_component(inv: &Invariants, v: &EquivariantModule) -> Component {
    let (fixed, incl) = psi(v, inv);
    let tensor = relative_tensor(&fixed, &Bimodule::from_morphism(&inv.inclusion)).expect("module over B");
    let d = v.module.algebra.dim();
    let cols: Vec<Vec<Rational>> = (0..fixed.dim * d)
        .map(|k| v.module.action[k % d].apply(&incl.column(k / d)))
        .collect();
    let ambient = Matrix::from_columns(v.dim(), &cols);
    let descended = &ambient * &tensor.section;
    debug_assert_eq!(&descended * &tensor.projection, ambient);
    Component::new(descended)
}

fn equivariant_closure(m: &EquivariantModule, vectors: Vec<Vec<Rational>>) -> Subspace {
    let mut sub = Subspace::from_vectors(m.dim(), vectors);
    loop {
        let mut more = sub.basis();
        for x in sub.basis() {
            for r in m.module.action.iter().chain(&m.rep.matrices) {
                more.push(r.apply(&x));
            }
        }
        let next = Subspace::from_vectors(m.dim(), more);
        if next.dim() == sub.dim() {
            return sub;
        }
        sub = next;
    }
}

/// Quotient of an equivariant module by the equivariant submodule
/// generated by `vectors`.
pub fn equivariant_quotient(m: &EquivariantModule, vectors: Vec<Vec<Rational>>) -> EquivariantModule {
    let sub = equivariant_closure(m, vectors);
    let q = crate::exactlin::quotient(&sub);
    let conj = |r: &Matrix| &(&q.projection * r) * &q.section;
    EquivariantModule {
        action: m.action.clone(),
        module: RightModule {
            algebra: m.module.algebra.clone(),
            dim: q.dim,
            action: m.module.action.iter().map(conj).collect(),
        },
        rep: Representation {
            group: m.rep.group.clone(),
            dim: q.dim,
            matrices: m.rep.matrices.iter().map(conj).collect(),
        },
    }
}

/// A seeded random equivariant module: a quotient of `W ⊗ A` for a random
/// representation `W`, in a random basis.
pub fn random_equivariant_module(rng: &mut SeededRng, action: &Arc<GroupAction>, max_dim: usize) -> EquivariantModule {
    let w_dim = (max_dim / action.algebra.dim()).max(1);
    let w = random_representation(rng, &action.group, w_dim);
    let free = EquivariantModule::free_on(action.clone(), &w);
    let relations: Vec<Vec<Rational>> = (0..random::index(rng, 2))
        .map(|_| random::vector(rng, free.dim(), 1))
        .collect();
    let q = equivariant_quotient(&free, relations);
    q.conjugate(&random::invertible(rng, q.dim()))
}

/// A module on which the counit fails, with the failing component.
#[derive(Debug, Clone)]
pub struct CounitWitness {
    pub module: EquivariantModule,
    pub description: String,
    pub component: Component,
}

/// Searches `χ ⊗ A` for the sign characters `χ` of `G`, then `W ⊗ A` for
/// the small building-block representations, then quotients of those by
/// single generated submodules, stopping at the first module (of dimension
/// at most `cap`) whose counit is not an isomorphism.
pub fn counit_failure_witness(action: &Arc<GroupAction>, inv: &Invariants, cap: usize) -> Option<CounitWitness> {
    let group: &Arc<FiniteGroup> = &action.group;
    let z2 = FiniteGroup::cyclic(2);
    let mut candidates: Vec<(String, EquivariantModule)> = all_homomorphisms(group, &z2)
        .iter()
        .map(|s| {
            let chi = Representation::sign(group.clone(), s);
            (
                format!("sign character {s:?} tensor A"),
                EquivariantModule::free_on(action.clone(), &chi),
            )
        })
        .collect();
    for (k, w) in building_blocks(group, cap).iter().enumerate() {
        candidates.push((
            format!("block {k} tensor A"),
            EquivariantModule::free_on(action.clone(), w),
        ));
    }
    let firsts: Vec<(String, EquivariantModule)> = candidates.clone();
    for (name, m) in &firsts {
        for i in 0..m.dim() {
            let q = equivariant_quotient(m, vec![vector::unit(m.dim(), i)]);
            if q.dim() > 0 {
                candidates.push((format!("{name} modulo the submodule generated by e{i}"), q));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|(_, m)| m.dim() <= cap && m.dim() > 0)
        .find_map(|(description, module)| {
            let component = counit_component(inv, &module);
            (!component.is_iso()).then_some(CounitWitness {
                module,
                description,
                component,
            })
        })
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiPsiReport {
    pub unit_isos: usize,
    pub unit_checked: usize,
    pub counit_isos: usize,
    pub counit_checked: usize,
    /// Description and counit rank of a failure witness, if one was found.
    pub witness: Option<(String, usize, usize)>,
}

/// Unit components on `b_modules`, counit components on `modules`, and a
/// witness search when some counit is not an isomorphism or none was
/// tested.
pub fn phi_psi_check(
    action: &Arc<GroupAction>,
    inv: &Invariants,
    b_modules: &[RightModule],
    modules: &[EquivariantModule],
    witness_cap: usize,
) -> (PhiPsiReport, Option<CounitWitness>) {
    let unit_isos = b_modules
        .iter()
        .filter(|w| unit_component(action, inv, w).is_iso())
        .count();
    let counit_isos = modules.iter().filter(|v| counit_component(inv, v).is_iso()).count();
    let witness = counit_failure_witness(action, inv, witness_cap);
    let report = PhiPsiReport {
        unit_isos,
        unit_checked: b_modules.len(),
        counit_isos,
        counit_checked: modules.len(),
        witness: witness
            .as_ref()
            .map(|w| (w.description.clone(), w.component.rank, w.module.dim())),
    };
    (report, witness)
}
