use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraError, AlgebraMorphism, RationalAlgebra};
use crate::exactlin::{Matrix, Rational};
use crate::fincat::{MorId, ObjId, OrthogonalCategory};

/// A functor from an orthogonal category to algebras: `algebras[c]` for
/// each object, `maps[f]` for each morphism.
#[derive(Debug, Clone)]
pub struct Aqft {
    pub site: OrthogonalCategory,
    pub algebras: Vec<Arc<RationalAlgebra>>,
    pub maps: Vec<AlgebraMorphism>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AqftError {
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("map of morphism {0} has the wrong source or target algebra")]
    Endpoints(MorId),
    #[error("map of morphism {0} is not an algebra map: {1}")]
    NotAlgebraMap(MorId, AlgebraError),
    #[error("identity of object {0} is not sent to the identity")]
    Identity(ObjId),
    #[error("composite {g} ∘ {f} is not preserved")]
    Composition { g: MorId, f: MorId },
    #[error("orthogonal morphisms {f1} and {f2} have non-commuting images")]
    NotOrthogonalCommutative { f1: MorId, f2: MorId },
    #[error("prefactorization axiom {0:?} fails")]
    PfaAxiom(super::pfa::PfaAxiom),
    #[error("component at object {0} is not natural or not an algebra map")]
    NotNatural(ObjId),
}

impl Aqft {
    /// Validates functoriality (not ⊥-commutativity; see [`check_aqft`]).
    pub fn new(
        site: OrthogonalCategory,
        algebras: Vec<Arc<RationalAlgebra>>,
        maps: Vec<AlgebraMorphism>,
    ) -> Result<Self, AqftError> {
        let a = Aqft { site, algebras, maps };
        a.validate()?;
        Ok(a)
    }

    /// Builds the maps from matrices, one per morphism.
    pub fn from_matrices(
        site: OrthogonalCategory,
        algebras: Vec<Arc<RationalAlgebra>>,
        matrices: Vec<Matrix>,
    ) -> Result<Self, AqftError> {
        let base = site.base();
        if matrices.len() != base.num_morphisms() || algebras.len() != base.num_objects() {
            return Err(AqftError::Count {
                what: "morphism matrices",
                expected: base.num_morphisms(),
                found: matrices.len(),
            });
        }
        let maps = matrices
            .into_iter()
            .enumerate()
            .map(|(f, m)| {
                AlgebraMorphism::new_unchecked(algebras[base.source(f)].clone(), algebras[base.target(f)].clone(), m)
            })
            .collect();
        Aqft::new(site, algebras, maps)
    }

    pub fn validate(&self) -> Result<(), AqftError> {
        let base = self.site.base();
        if self.algebras.len() != base.num_objects() {
            return Err(AqftError::Count {
                what: "object algebras",
                expected: base.num_objects(),
                found: self.algebras.len(),
            });
        }
        if self.maps.len() != base.num_morphisms() {
            return Err(AqftError::Count {
                what: "morphism maps",
                expected: base.num_morphisms(),
                found: self.maps.len(),
            });
        }
        for (f, m) in self.maps.iter().enumerate() {
            if *m.source != *self.algebras[base.source(f)] || *m.target != *self.algebras[base.target(f)] {
                return Err(AqftError::Endpoints(f));
            }
            m.validate().map_err(|e| AqftError::NotAlgebraMap(f, e))?;
        }
        for c in base.objects() {
            if !self.maps[base.identity(c)].matrix.is_identity() {
                return Err(AqftError::Identity(c));
            }
        }
        for ((g, f), gf) in base.composition_table() {
            if &self.maps[g].matrix * &self.maps[f].matrix != self.maps[gf].matrix {
                return Err(AqftError::Composition { g, f });
            }
        }
        Ok(())
    }

    pub fn algebra(&self, c: ObjId) -> &Arc<RationalAlgebra> {
        &self.algebras[c]
    }

    pub fn map(&self, f: MorId) -> &AlgebraMorphism {
        &self.maps[f]
    }

    /// Same algebras and maps (the sites are assumed to agree).
    pub fn same_data(&self, other: &Aqft) -> bool {
        self.algebras == other.algebras
            && self.maps.len() == other.maps.len()
            && self.maps.iter().zip(&other.maps).all(|(a, b)| a.matrix == b.matrix)
    }
}

/// A failed commutation `[𝔄(f1)(e_i), 𝔄(f2)(e_j)] ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorWitness {
    pub f1: MorId,
    pub f2: MorId,
    pub i: usize,
    pub j: usize,
    pub commutator: Vec<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AqftReport {
    pub pairs_checked: usize,
    pub violations: Vec<CommutatorWitness>,
}

impl AqftReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks ⊥-commutativity on basis pairs for every orthogonal pair; at most
/// one witness per pair is recorded.
pub fn check_aqft(a: &Aqft) -> AqftReport {
    let mut violations = Vec::new();
    let pairs = a.site.pairs();
    for &(f1, f2) in &pairs {
        if f1 > f2 && a.site.is_orthogonal(f2, f1) {
            continue;
        }
        let t = &*a.maps[f1].target;
        let m1 = &a.maps[f1].matrix;
        let m2 = &a.maps[f2].matrix;
        'pair: for i in 0..m1.cols() {
            let x = m1.column(i);
            for j in 0..m2.cols() {
                let y = m2.column(j);
                let c = t.commutator(&x, &y);
                if c.iter().any(|v| !v.is_zero()) {
                    violations.push(CommutatorWitness {
                        f1,
                        f2,
                        i,
                        j,
                        commutator: c,
                    });
                    break 'pair;
                }
            }
        }
    }
    AqftReport {
        pairs_checked: pairs.len(),
        violations,
    }
}

/// A natural transformation with algebra-map components.
#[derive(Debug, Clone)]
pub struct AqftMorphism {
    pub components: Vec<AlgebraMorphism>,
}

impl AqftMorphism {
    pub fn validate(&self, source: &Aqft, target: &Aqft) -> Result<(), AqftError> {
        let base = source.site.base();
        if self.components.len() != base.num_objects() {
            return Err(AqftError::Count {
                what: "components",
                expected: base.num_objects(),
                found: self.components.len(),
            });
        }
        for (c, k) in self.components.iter().enumerate() {
            if *k.source != *source.algebras[c] || *k.target != *target.algebras[c] || k.validate().is_err() {
                return Err(AqftError::NotNatural(c));
            }
        }
        for f in base.morphism_ids() {
            let (c, t) = (base.source(f), base.target(f));
            let lhs = &self.components[t].matrix * &source.maps[f].matrix;
            let rhs = &target.maps[f].matrix * &self.components[c].matrix;
            if lhs != rhs {
                return Err(AqftError::NotNatural(c));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(|k| k.matrix.is_invertible())
    }
}
