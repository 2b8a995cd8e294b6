use std::sync::Arc;

use super::group::FiniteGroup;
use super::hopf::{function_algebra, group_algebra};
use super::rep::{extend_from_generators, fixed_space, RepError, Representation};
use crate::algebra::{AlgebraError, AlgebraMorphism, RationalAlgebra};
use crate::exactlin::{Matrix, Rational, Subspace};

/// A group acting on an algebra by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: Arc<FiniteGroup>,
    pub algebra: Arc<RationalAlgebra>,
    pub matrices: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("ρ({0}) is not an algebra automorphism: {1}")]
    NotAutomorphism(usize, AlgebraError),
}

impl GroupAction {
    pub fn new(
        group: Arc<FiniteGroup>,
        algebra: Arc<RationalAlgebra>,
        matrices: Vec<Matrix>,
    ) -> Result<Self, ActionError> {
        let a = GroupAction {
            group,
            algebra,
            matrices,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn from_generators(
        group: Arc<FiniteGroup>,
        algebra: Arc<RationalAlgebra>,
        generators: &[(usize, Matrix)],
    ) -> Result<Self, ActionError> {
        let matrices = extend_from_generators(&group, algebra.dim(), generators)?;
        GroupAction::new(group, algebra, matrices)
    }

    pub fn validate(&self) -> Result<(), ActionError> {
        self.representation().validate()?;
        for (g, m) in self.matrices.iter().enumerate() {
            AlgebraMorphism::new(self.algebra.clone(), self.algebra.clone(), m.clone())
                .map_err(|e| ActionError::NotAutomorphism(g, e))?;
        }
        Ok(())
    }

    pub fn representation(&self) -> Representation {
        Representation {
            group: self.group.clone(),
            dim: self.algebra.dim(),
            matrices: self.matrices.clone(),
        }
    }

    pub fn automorphism(&self, g: usize) -> AlgebraMorphism {
        AlgebraMorphism::new_unchecked(self.algebra.clone(), self.algebra.clone(), self.matrices[g].clone())
    }

    pub fn trivial(group: Arc<FiniteGroup>, algebra: Arc<RationalAlgebra>) -> Self {
        let matrices = vec![Matrix::identity(algebra.dim()); group.order()];
        GroupAction {
            group,
            algebra,
            matrices,
        }
    }

    /// `Z_2` acting on a basis by the given signs.
    pub fn parity(algebra: Arc<RationalAlgebra>, signs: &[i64]) -> Result<Self, ActionError> {
        let flip = Matrix::from_fn(signs.len(), signs.len(), |r, c| {
            if r == c {
                Rational::from_integer(signs[r])
            } else {
                Rational::zero()
            }
        });
        GroupAction::from_generators(Arc::new(FiniteGroup::cyclic(2)), algebra, &[(1, flip)])
    }

    /// Conjugation on `O(G)`: `g · e_h = e_{ghg⁻¹}`.
    pub fn adjoint_on_functions(group: Arc<FiniteGroup>) -> Self {
        let algebra = Arc::new(function_algebra(&group));
        let matrices = conjugation_matrices(&group);
        GroupAction {
            group,
            algebra,
            matrices,
        }
    }

    /// Conjugation on `K[G]`: `g · h = ghg⁻¹`.
    pub fn adjoint_on_group_algebra(group: Arc<FiniteGroup>) -> Self {
        let algebra = Arc::new(group_algebra(&group));
        let matrices = conjugation_matrices(&group);
        GroupAction {
            group,
            algebra,
            matrices,
        }
    }

    /// Translation on `O(G)`: `(g · f)(x) = f(xg)`, so `g · e_h = e_{hg⁻¹}`.
    pub fn translation(group: Arc<FiniteGroup>) -> Self {
        let algebra = Arc::new(function_algebra(&group));
        let matrices = group
            .elements()
            .map(|g| {
                let perm: Vec<usize> = group.elements().map(|h| group.mul(h, group.inv(g))).collect();
                Matrix::permutation(&perm)
            })
            .collect();
        GroupAction {
            group,
            algebra,
            matrices,
        }
    }

    /// Orbits of the basis under the action, when every `ρ(g)` permutes the
    /// basis; `None` otherwise.
    pub fn basis_orbits(&self) -> Option<Vec<Vec<usize>>> {
        let d = self.algebra.dim();
        let mut images = vec![vec![0; d]; self.matrices.len()];
        for (g, m) in self.matrices.iter().enumerate() {
            for (j, image) in images[g].iter_mut().enumerate() {
                let col = m.column(j);
                let nonzero: Vec<usize> = (0..d).filter(|&r| !col[r].is_zero()).collect();
                if nonzero.len() != 1 || !col[nonzero[0]].is_one() {
                    return None;
                }
                *image = nonzero[0];
            }
        }
        let mut seen = vec![false; d];
        let mut orbits = Vec::new();
        for j in 0..d {
            if !seen[j] {
                let mut orbit: Vec<usize> = images.iter().map(|im| im[j]).collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &k in &orbit {
                    seen[k] = true;
                }
                orbits.push(orbit);
            }
        }
        Some(orbits)
    }
}

fn conjugation_matrices(group: &FiniteGroup) -> Vec<Matrix> {
    group
        .elements()
        .map(|g| {
            let perm: Vec<usize> = group.elements().map(|h| group.conjugate(g, h)).collect();
            Matrix::permutation(&perm)
        })
        .collect()
}

/// The invariant subalgebra `B = A^G` with its inclusion.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub algebra: Arc<RationalAlgebra>,
    pub inclusion: AlgebraMorphism,
    pub subspace: Subspace,
}

pub fn invariants(action: &GroupAction) -> Invariants {
    let subspace = fixed_space(action.algebra.dim(), &action.matrices);
    let (b, incl) = action
        .algebra
        .subalgebra(&subspace)
        .expect("fixed points of automorphisms form a subalgebra");
    let algebra = Arc::new(b);
    Invariants {
        inclusion: AlgebraMorphism::new_unchecked(algebra.clone(), action.algebra.clone(), incl),
        algebra,
        subspace,
    }
}
