use std::sync::Arc;

use crate::algebra::{AlgebraMorphism, RationalAlgebra};
use crate::aqft::models::{cl1, cl2, constant_theory, lambda1, lambda2, local_tensor_theory, object_points};
use crate::aqft::Aqft;
use crate::exactlin::Matrix;
use crate::fincat::{CircleModel, MorId, ObjId, OrthogonalCategory};
use crate::grouprep::{invariants, ActionError, FiniteGroup, GroupAction, Invariants};

/// A theory with a group acting on every object algebra by automorphisms
/// that commute with all morphism maps.
#[derive(Debug, Clone)]
pub struct EquivariantAqft {
    pub theory: Aqft,
    pub group: Arc<FiniteGroup>,
    pub actions: Vec<Arc<GroupAction>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantAqftError {
    #[error("expected one action per object ({expected}), found {found}")]
    Count { expected: usize, found: usize },
    #[error("action at object {0} is for a different group or algebra")]
    Mismatch(ObjId),
    #[error("action at object {0}: {1}")]
    Action(ObjId, ActionError),
    #[error("ρ({g}) does not commute with the map of morphism {f}")]
    NotNatural { f: MorId, g: usize },
}

impl EquivariantAqft {
    pub fn new(
        theory: Aqft,
        group: Arc<FiniteGroup>,
        actions: Vec<Arc<GroupAction>>,
    ) -> Result<Self, EquivariantAqftError> {
        let e = EquivariantAqft { theory, group, actions };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<(), EquivariantAqftError> {
        let base = self.theory.site.base();
        if self.actions.len() != base.num_objects() {
            return Err(EquivariantAqftError::Count {
                expected: base.num_objects(),
                found: self.actions.len(),
            });
        }
        for (c, act) in self.actions.iter().enumerate() {
            if *act.group != *self.group || *act.algebra != *self.theory.algebras[c] {
                return Err(EquivariantAqftError::Mismatch(c));
            }
            act.validate().map_err(|e| EquivariantAqftError::Action(c, e))?;
        }
        for f in base.morphism_ids() {
            let (c, t) = (base.source(f), base.target(f));
            let m = &self.theory.maps[f].matrix;
            for g in self.group.elements() {
                if &self.actions[t].matrices[g] * m != m * &self.actions[c].matrices[g] {
                    return Err(EquivariantAqftError::NotNatural { f, g });
                }
            }
        }
        Ok(())
    }

    pub fn site(&self) -> &OrthogonalCategory {
        &self.theory.site
    }

    /// The trivial action of `group` on every object.
    pub fn trivial_action(theory: Aqft, group: Arc<FiniteGroup>) -> Self {
        let actions = theory
            .algebras
            .iter()
            .map(|a| Arc::new(GroupAction::trivial(group.clone(), a.clone())))
            .collect();
        EquivariantAqft { theory, group, actions }
    }
}

/// On a local net, the action that is the tensor product of actions at
/// each point.
pub fn local_tensor_action(model: &CircleModel, theory: Aqft, points: &[GroupAction]) -> EquivariantAqft {
    let group = points[0].group.clone();
    let actions = theory
        .site
        .base()
        .objects()
        .map(|c| {
            let pts = object_points(model, c);
            let matrices = group
                .elements()
                .map(|g| Matrix::kronecker_all(pts.iter().map(|&p| &points[p].matrices[g])))
                .collect();
            Arc::new(GroupAction {
                group: group.clone(),
                algebra: theory.algebras[c].clone(),
                matrices,
            })
        })
        .collect();
    EquivariantAqft::new(theory, group, actions).expect("pointwise action is natural")
}

fn parity_of(a: Arc<RationalAlgebra>) -> GroupAction {
    // basis monomials indexed by bitmasks; odd monomials flip sign
    let signs: Vec<i64> = (0..a.dim())
        .map(|m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    GroupAction::parity(a, &signs).expect("parity is an automorphism")
}

fn local_parity(
    model: &CircleModel,
    at_zero: Arc<RationalAlgebra>,
    elsewhere: Arc<RationalAlgebra>,
) -> EquivariantAqft {
    let points: Vec<Arc<RationalAlgebra>> = (0..model.n)
        .map(|p| if p == 0 { at_zero.clone() } else { elsewhere.clone() })
        .collect();
    let theory = local_tensor_theory(model, &points);
    let actions: Vec<GroupAction> = points.into_iter().map(parity_of).collect();
    local_tensor_action(model, theory, &actions)
}

/// The Clifford local net with the parity action at every point.
pub fn clifford_parity(model: &CircleModel) -> EquivariantAqft {
    local_parity(model, cl2(), cl1())
}

/// The exterior local net with the parity action at every point.
pub fn exterior_parity(model: &CircleModel) -> EquivariantAqft {
    local_parity(model, lambda2(), lambda1())
}

/// The constant theory `Q` with the trivial action of `group`.
pub fn trivial_theory(site: &OrthogonalCategory, group: Arc<FiniteGroup>) -> EquivariantAqft {
    let theory = constant_theory(site, Arc::new(RationalAlgebra::field()));
    EquivariantAqft::trivial_action(theory, group)
}

/// Object-wise invariant subalgebras with the restricted maps.
pub fn orbifold_invariants(e: &EquivariantAqft) -> (Aqft, Vec<Invariants>) {
    let invs: Vec<Invariants> = e.actions.iter().map(|a| invariants(a)).collect();
    let base = e.site().base();
    let maps = base
        .morphism_ids()
        .map(|f| {
            let (c, t) = (base.source(f), base.target(f));
            let image = &e.theory.maps[f].matrix * &invs[c].inclusion.matrix;
            let cols: Vec<_> = image
                .columns()
                .iter()
                .map(|v| invs[t].subspace.coordinates(v).expect("invariants map to invariants"))
                .collect();
            AlgebraMorphism::new_unchecked(
                invs[c].algebra.clone(),
                invs[t].algebra.clone(),
                Matrix::from_columns(invs[t].algebra.dim(), &cols),
            )
        })
        .collect();
    let algebras = invs.iter().map(|i| i.algebra.clone()).collect();
    let theory = Aqft::new(e.theory.site.clone(), algebras, maps).expect("restriction is functorial");
    (theory, invs)
}
