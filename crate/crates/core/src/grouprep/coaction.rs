use std::sync::Arc;

use super::group::FiniteGroup;
use super::hopf::function_hopf_algebra;
use super::rep::{RepError, Representation};
use crate::exactlin::{Matrix, Rational};

/// A right `O(G)`-coaction `δ: V -> V ⊗ O(G)`. Row `i·|G| + g` of
/// `matrix` holds the `e_i ⊗ e_g` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coaction {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoactionError {
    #[error("coaction matrix has the wrong shape")]
    Shape,
    #[error("coaction is not coassociative")]
    NotCoassociative,
    #[error("coaction is not counital")]
    NotCounital,
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl Coaction {
    pub fn validate(&self) -> Result<(), CoactionError> {
        let n = self.group.order();
        if self.matrix.shape() != (self.dim * n, self.dim) {
            return Err(CoactionError::Shape);
        }
        let hopf = function_hopf_algebra(&self.group);
        let id_v = Matrix::identity(self.dim);
        let lhs = &self.matrix.kronecker(&Matrix::identity(n)) * &self.matrix;
        let rhs = &id_v.kronecker(&hopf.coproduct) * &self.matrix;
        if lhs != rhs {
            return Err(CoactionError::NotCoassociative);
        }
        if !(&id_v.kronecker(&hopf.counit) * &self.matrix).is_identity() {
            return Err(CoactionError::NotCounital);
        }
        Ok(())
    }
}

/// `δ(v) = Σ_g ρ(g)v ⊗ e_g`.
pub fn coaction_from_action(rep: &Representation) -> Coaction {
    let n = rep.group.order();
    let d = rep.dim;
    let matrix = Matrix::from_fn(d * n, d, |r, c| rep.matrices[r % n].get(r / n, c).clone());
    Coaction {
        group: rep.group.clone(),
        dim: d,
        matrix,
    }
}

/// `ρ(g)(v) = (id ⊗ ev_g) δ(v)`, after validating the coaction.
pub fn action_from_coaction(coaction: &Coaction) -> Result<Representation, CoactionError> {
    coaction.validate()?;
    let n = coaction.group.order();
    let d = coaction.dim;
    let matrices = coaction
        .group
        .elements()
        .map(|g| Matrix::from_fn(d, d, |r, c| coaction.matrix.get(r * n + g, c).clone()))
        .collect();
    Ok(Representation::new(coaction.group.clone(), d, matrices)?)
}

/// `v ↦ v ⊗ 1` with `1 = Σ_g e_g`.
pub fn trivial_coaction(group: Arc<FiniteGroup>, dim: usize) -> Coaction {
    let n = group.order();
    let matrix = Matrix::from_fn(dim * n, dim, |r, c| {
        if r / n == c {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    Coaction { group, dim, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::rep::random_representation;
    use crate::random;

    #[test]
    fn trivial_rep_matches_trivial_coaction() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let rep = Representation::trivial(z2.clone(), 2);
        assert_eq!(coaction_from_action(&rep), trivial_coaction(z2, 2));
    }

    #[test]
    fn sign_rep_round_trip() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let sign = Representation::sign(z2, &[0, 1]);
        let co = coaction_from_action(&sign);
        co.validate().unwrap();
        assert_eq!(action_from_coaction(&co).unwrap(), sign);
    }

    #[test]
    fn random_z3_round_trips() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let mut rng = random::rng(11);
        for _ in 0..5 {
            let rep = random_representation(&mut rng, &z3, 3);
            let co = coaction_from_action(&rep);
            assert_eq!(action_from_coaction(&co).unwrap(), rep);
            assert_eq!(coaction_from_action(&action_from_coaction(&co).unwrap()), co);
        }
    }

    #[test]
    fn broken_coaction_is_rejected() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let mut co = trivial_coaction(z2, 1);
        co.matrix.set(0, 0, Rational::from_integer(2));
        assert!(action_from_coaction(&co).is_err());
    }
}
