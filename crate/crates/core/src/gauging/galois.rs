use serde::Serialize;

use super::equivariant::EquivariantAqft;
use crate::algebra::{relative_tensor, Bimodule, RelativeTensor, RightModule};
use crate::exactlin::{vector, Matrix, Rational};
use crate::grouprep::{invariants, GroupAction, Invariants};

/// `β: A ⊗_B A -> A ⊗ O(G)`, `a ⊗ a' ↦ Σ_g a ρ(g)(a') ⊗ e_g`, in the
/// quotient coordinates of `A ⊗_B A` and the left-major basis of the
/// target.
#[derive(Debug, Clone)]
pub struct CanonicalMap {
    pub beta: Matrix,
    pub source_dim: usize,
    pub target_dim: usize,
    pub tensor: RelativeTensor,
    pub invariants: Invariants,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the canonical map does not descend to the relative tensor product")]
pub struct NotWellDefined;

pub fn canonical_map(action: &GroupAction) -> Result<CanonicalMap, NotWellDefined> {
    let a = &*action.algebra;
    let d = a.dim();
    let n = action.group.order();
    let inv = invariants(action);
    let as_b_module = RightModule::free(action.algebra.clone(), 1).restrict(&inv.inclusion);
    let tensor =
        relative_tensor(&as_b_module, &Bimodule::from_morphism(&inv.inclusion)).expect("same invariant algebra");
    let mut ambient = Matrix::zeros(d * n, d * d);
    for i in 0..d {
        for j in 0..d {
            for g in 0..n {
                let moved = action.matrices[g].column(j);
                let prod = a.mul(&a.basis_vector(i), &moved);
                for (k, x) in prod.iter().enumerate() {
                    if !x.is_zero() {
                        *ambient.entry_mut(k * n + g, i * d + j) += x;
                    }
                }
            }
        }
    }
    let beta = &ambient * &tensor.section;
    if &beta * &tensor.projection != ambient {
        return Err(NotWellDefined);
    }
    Ok(CanonicalMap {
        source_dim: tensor.dim,
        target_dim: d * n,
        beta,
        tensor,
        invariants: inv,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisStatus {
    Bijective,
    NotInjective,
    NotSurjective,
}

impl GaloisStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisStatus::Bijective => "bijective",
            GaloisStatus::NotInjective => "not_injective",
            GaloisStatus::NotSurjective => "not_surjective",
        }
    }
}

/// The verdict on `β`. When `β` is neither injective nor surjective the
/// status is `not_surjective` and `injective` records the other half.
/// The witness is a kernel vector (source coordinates) for
/// `not_injective` and a target vector outside the image for
/// `not_surjective`.
#[derive(Debug, Clone, Serialize)]
pub struct HopfGaloisVerdict {
    pub status: GaloisStatus,
    pub injective: bool,
    pub surjective: bool,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub witness: Option<Vec<Rational>>,
    pub beta: Matrix,
}

impl HopfGaloisVerdict {
    pub fn is_bijective(&self) -> bool {
        self.status == GaloisStatus::Bijective
    }

    /// Re-checks the witness against `beta`.
    pub fn witness_is_valid(&self) -> bool {
        match (&self.status, &self.witness) {
            (GaloisStatus::Bijective, None) => true,
            (GaloisStatus::NotInjective, Some(w)) => !vector::is_zero(w) && vector::is_zero(&self.beta.apply(w)),
            (GaloisStatus::NotSurjective, Some(w)) => {
                w.len() == self.target_dim && !self.beta.column_space().contains(w)
            }
            _ => false,
        }
    }
}

pub fn verdict_of(map: &CanonicalMap) -> HopfGaloisVerdict {
    let beta = &map.beta;
    let rank = beta.rank();
    let injective = rank == map.source_dim;
    let surjective = rank == map.target_dim;
    let (status, witness) = if !surjective {
        let image = beta.column_space();
        let missed = (0..map.target_dim)
            .map(|k| vector::unit(map.target_dim, k))
            .find(|e| !image.contains(e))
            .expect("a proper subspace misses a standard vector");
        (GaloisStatus::NotSurjective, Some(missed))
    } else if !injective {
        let kernel = beta.kernel();
        (GaloisStatus::NotInjective, kernel.basis().into_iter().next())
    } else {
        (GaloisStatus::Bijective, None)
    };
    HopfGaloisVerdict {
        status,
        injective,
        surjective,
        rank,
        source_dim: map.source_dim,
        target_dim: map.target_dim,
        witness,
        beta: beta.clone(),
    }
}

pub fn is_hopf_galois(action: &GroupAction) -> Result<HopfGaloisVerdict, NotWellDefined> {
    Ok(verdict_of(&canonical_map(action)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncatedVerdict {
    pub truncated: bool,
    /// `(object name, verdict)` in object order.
    pub per_object: Vec<(String, HopfGaloisVerdict)>,
}

pub fn is_truncated(e: &EquivariantAqft) -> Result<TruncatedVerdict, NotWellDefined> {
    let base = e.site().base();
    let mut per_object = Vec::new();
    for (c, act) in e.actions.iter().enumerate() {
        per_object.push((base.object_name(c).to_string(), is_hopf_galois(act)?));
    }
    Ok(TruncatedVerdict {
        truncated: per_object.iter().all(|(_, v)| v.is_bijective()),
        per_object,
    })
}
