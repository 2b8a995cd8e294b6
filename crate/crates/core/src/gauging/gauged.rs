use super::equivariant::{orbifold_invariants, EquivariantAqft};
use crate::algebra::{relative_tensor, AlgebraMorphism, Bimodule, EndAlgebra, RelativeTensor};
use crate::aqft::{Aqft, AqftError, AqftMorphism};
use crate::exactlin::{Matrix, Rational};
use crate::fincat::MorId;
use crate::grouprep::{equivariant_hom_space, EquivariantModule, Representation};

/// The gauged theory in algebra-presented form: at each object the
/// category of equivariant right modules over `(𝔄(c), ρ_c)`, pointed by
/// `𝔄(c)` itself; along `f: c -> t` the induction `(−) ⊗_{𝔄(c)} 𝔄(t)`.
#[derive(Debug, Clone)]
pub struct GaugedTheory {
    pub base: EquivariantAqft,
    pub pointings: Vec<EquivariantModule>,
}

pub fn gauge(e: &EquivariantAqft) -> GaugedTheory {
    let pointings = e
        .actions
        .iter()
        .map(|a| EquivariantModule::pointing(a.clone()))
        .collect();
    GaugedTheory {
        base: e.clone(),
        pointings,
    }
}

impl GaugedTheory {
    fn bimodule(&self, f: MorId) -> Bimodule {
        Bimodule::from_morphism(&self.base.theory.maps[f])
    }

    /// Induction along `f` with the diagonal representation.
    pub fn induce(&self, f: MorId, v: &EquivariantModule) -> (EquivariantModule, RelativeTensor) {
        let t = self.base.site().base().target(f);
        let tensor = relative_tensor(&v.module, &self.bimodule(f)).expect("module over the source algebra");
        let act_t = &self.base.actions[t];
        let matrices = act_t
            .group
            .elements()
            .map(|g| {
                let ambient = v.rep.matrices[g].kronecker(&act_t.matrices[g]);
                &(&tensor.projection * &ambient) * &tensor.section
            })
            .collect();
        let rep = Representation {
            group: act_t.group.clone(),
            dim: tensor.dim,
            matrices,
        };
        let module = EquivariantModule {
            action: act_t.clone(),
            module: tensor.module.clone(),
            rep,
        };
        (module, tensor)
    }

    /// The coherence `𝔄(c) ⊗_{𝔄(c)} 𝔄(t) -> 𝔄(t)`, `x ⊗ y ↦ 𝔄(f)(x) y`.
    pub fn pointing_coherence(&self, f: MorId) -> Matrix {
        let c = self.base.site().base().source(f);
        let (_, tensor) = self.induce(f, &self.pointings[c]);
        self.coherence_on(f, &tensor)
    }

    fn coherence_on(&self, f: MorId, tensor: &RelativeTensor) -> Matrix {
        let base = self.base.site().base();
        let (c, t) = (base.source(f), base.target(f));
        let a_t = &*self.base.theory.algebras[t];
        let map = &self.base.theory.maps[f].matrix;
        let dc = self.base.theory.algebras[c].dim();
        let cols: Vec<Vec<Rational>> = (0..dc * a_t.dim())
            .map(|k| a_t.mul(&map.column(k / a_t.dim()), &a_t.basis_vector(k % a_t.dim())))
            .collect();
        &Matrix::from_columns(a_t.dim(), &cols) * &tensor.section
    }
}

/// The truncation with its isomorphism from the orbifold invariants.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub theory: Aqft,
    pub ends: Vec<EndAlgebra>,
    pub orbifold: Aqft,
    /// `B_c -> End(pointing_c)`, `b ↦ b · (−)`.
    pub iso: AqftMorphism,
    /// `φ ↦ φ(1)`.
    pub inverse: AqftMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruncationError {
    #[error(transparent)]
    Aqft(#[from] AqftError),
    #[error("the comparison map at object {0} is not invertible")]
    NotInvertible(usize),
}

pub fn truncate(g: &GaugedTheory) -> Result<Truncation, TruncationError> {
    let base = g.base.site().base();
    let ends: Vec<EndAlgebra> = g
        .pointings
        .iter()
        .map(|p| {
            EndAlgebra::from_space(p.dim(), equivariant_hom_space(p, p))
                .expect("equivariant endomorphisms form an algebra")
        })
        .collect();
    let maps = base
        .morphism_ids()
        .map(|f| {
            let (c, t) = (base.source(f), base.target(f));
            let (_, tensor) = g.induce(f, &g.pointings[c]);
            let kappa = g.coherence_on(f, &tensor);
            let kappa_inv = kappa.inverse().expect("pointing coherence is invertible");
            let id_t = Matrix::identity(g.base.theory.algebras[t].dim());
            let cols: Vec<Vec<Rational>> = ends[c]
                .matrices
                .iter()
                .map(|phi| {
                    let induced = &(&tensor.projection * &phi.kronecker(&id_t)) * &tensor.section;
                    let moved = &(&kappa * &induced) * &kappa_inv;
                    ends[t]
                        .coordinates(&moved)
                        .expect("induced endomorphism is equivariant")
                })
                .collect();
            AlgebraMorphism::new_unchecked(
                ends[c].algebra.clone(),
                ends[t].algebra.clone(),
                Matrix::from_columns(ends[t].algebra.dim(), &cols),
            )
        })
        .collect();
    let algebras = ends.iter().map(|e| e.algebra.clone()).collect();
    let theory = Aqft::new(g.base.theory.site.clone(), algebras, maps)?;

    let (orbifold, invs) = orbifold_invariants(&g.base);
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (c, inv) in invs.iter().enumerate() {
        let a = &*g.base.theory.algebras[c];
        let cols: Vec<Vec<Rational>> = inv
            .inclusion
            .matrix
            .columns()
            .iter()
            .map(|b| {
                ends[c]
                    .coordinates(&a.left_mult(b))
                    .expect("left multiplication by an invariant")
            })
            .collect();
        let zeta = Matrix::from_columns(ends[c].algebra.dim(), &cols);
        if !zeta.is_invertible() {
            return Err(TruncationError::NotInvertible(c));
        }
        let back_cols: Vec<Vec<Rational>> = ends[c]
            .matrices
            .iter()
            .map(|phi| {
                inv.subspace
                    .coordinates(&phi.apply(a.unit()))
                    .expect("φ(1) is invariant")
            })
            .collect();
        forward.push(AlgebraMorphism::new_unchecked(
            inv.algebra.clone(),
            ends[c].algebra.clone(),
            zeta,
        ));
        backward.push(AlgebraMorphism::new_unchecked(
            ends[c].algebra.clone(),
            inv.algebra.clone(),
            Matrix::from_columns(inv.algebra.dim(), &back_cols),
        ));
    }
    let iso = AqftMorphism { components: forward };
    let inverse = AqftMorphism { components: backward };
    iso.validate(&orbifold, &theory)?;
    inverse.validate(&theory, &orbifold)?;
    Ok(Truncation {
        theory,
        ends,
        orbifold,
        iso,
        inverse,
    })
}

impl Truncation {
    /// Both composites of `iso` and `inverse` are identities.
    pub fn is_two_sided_inverse(&self) -> bool {
        self.iso
            .components
            .iter()
            .zip(&self.inverse.components)
            .all(|(f, b)| (&f.matrix * &b.matrix).is_identity() && (&b.matrix * &f.matrix).is_identity())
    }
}
