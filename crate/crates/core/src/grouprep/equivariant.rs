use std::sync::Arc;

use super::action::{GroupAction, Invariants};
use super::rep::{fixed_space, RepError, Representation};
use crate::algebra::{intertwiners, AlgebraError, RightModule};
use crate::exactlin::{Matrix, Subspace};

/// A right module over `A` with a compatible `G`-representation:
/// `rep(g)(v·a) = rep(g)(v)·ρ(g)(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantModule {
    pub action: Arc<GroupAction>,
    pub module: RightModule,
    pub rep: Representation,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Module(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("module, representation and action do not share algebra and group")]
    Mismatch,
    #[error("compatibility fails for group element {g} and basis element e{j}")]
    NotCompatible { g: usize, j: usize },
}

impl EquivariantModule {
    pub fn new(action: Arc<GroupAction>, module: RightModule, rep: Representation) -> Result<Self, EquivariantError> {
        let m = EquivariantModule { action, module, rep };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), EquivariantError> {
        if *self.module.algebra != *self.action.algebra
            || *self.rep.group != *self.action.group
            || self.rep.dim != self.module.dim
        {
            return Err(EquivariantError::Mismatch);
        }
        self.module.validate()?;
        self.rep.validate()?;
        for g in self.action.group.elements() {
            for j in 0..self.module.action.len() {
                let moved = self.action.matrices[g].column(j);
                let lhs = &self.rep.matrices[g] * &self.module.action[j];
                let rhs = &self.module.action_matrix(&moved) * &self.rep.matrices[g];
                if lhs != rhs {
                    return Err(EquivariantError::NotCompatible { g, j });
                }
            }
        }
        Ok(())
    }

    /// `A` over itself with the given action: the pointing.
    pub fn pointing(action: Arc<GroupAction>) -> Self {
        EquivariantModule {
            module: RightModule::free(action.algebra.clone(), 1),
            rep: action.representation(),
            action,
        }
    }

    /// `W ⊗ A` with the diagonal representation and `A` acting on the
    /// right factor.
    pub fn free_on(action: Arc<GroupAction>, w: &Representation) -> Self {
        let a = RightModule::free(action.algebra.clone(), 1);
        let id_w = Matrix::identity(w.dim);
        let module = RightModule {
            algebra: action.algebra.clone(),
            dim: w.dim * a.dim,
            action: a.action.iter().map(|r| id_w.kronecker(r)).collect(),
        };
        let rep = w.tensor(&action.representation());
        EquivariantModule { action, module, rep }
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn direct_sum(&self, other: &EquivariantModule) -> EquivariantModule {
        EquivariantModule {
            action: self.action.clone(),
            module: self.module.direct_sum(&other.module),
            rep: self.rep.direct_sum(&other.rep),
        }
    }

    pub fn conjugate(&self, p: &Matrix) -> EquivariantModule {
        EquivariantModule {
            action: self.action.clone(),
            module: self.module.conjugate(p),
            rep: self.rep.conjugate(p),
        }
    }

    /// `G`-fixed vectors, a right module over the invariant subalgebra,
    /// with the inclusion (columns are the basis vectors).
    pub fn invariant_module(&self, inv: &Invariants) -> (RightModule, Matrix) {
        let fixed = fixed_space(self.dim(), &self.rep.matrices);
        let incl = fixed.basis_matrix();
        let action = (0..inv.algebra.dim())
            .map(|k| {
                let r = self.module.action_matrix(&inv.inclusion.matrix.column(k));
                let cols: Vec<_> = fixed
                    .basis()
                    .iter()
                    .map(|v| fixed.coordinates(&r.apply(v)).expect("fixed space is a B-submodule"))
                    .collect();
                Matrix::from_columns(fixed.dim(), &cols)
            })
            .collect();
        (
            RightModule {
                algebra: inv.algebra.clone(),
                dim: fixed.dim(),
                action,
            },
            incl,
        )
    }
}

/// Equivariant module maps `m -> n` as flattened matrices.
pub fn equivariant_hom_space(m: &EquivariantModule, n: &EquivariantModule) -> Subspace {
    let mut pairs: Vec<(&Matrix, &Matrix)> = m.module.action.iter().zip(&n.module.action).collect();
    pairs.extend(m.rep.matrices.iter().zip(&n.rep.matrices));
    intertwiners(m.dim(), n.dim(), &pairs)
}
