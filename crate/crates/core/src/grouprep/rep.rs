use std::collections::BTreeSet;
use std::sync::Arc;

use super::group::{FiniteGroup, GroupError};
use crate::exactlin::{Matrix, Rational, Subspace};
use crate::random::{self, SeededRng};

/// A linear representation: `matrices[g]` is `ρ(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("expected {expected} matrices of size {dim}, found {found}")]
    Shape { expected: usize, dim: usize, found: usize },
    #[error("ρ(e) is not the identity")]
    IdentityNotPreserved,
    #[error("ρ({0})ρ({1}) differs from ρ({0}·{1})")]
    NotMultiplicative(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl Representation {
    pub fn new(group: Arc<FiniteGroup>, dim: usize, matrices: Vec<Matrix>) -> Result<Self, RepError> {
        let r = Representation { group, dim, matrices };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), RepError> {
        let g = &*self.group;
        if self.matrices.len() != g.order() || self.matrices.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(RepError::Shape {
                expected: g.order(),
                dim: self.dim,
                found: self.matrices.len(),
            });
        }
        if !self.matrices[g.identity()].is_identity() {
            return Err(RepError::IdentityNotPreserved);
        }
        for a in g.elements() {
            for b in g.elements() {
                if &self.matrices[a] * &self.matrices[b] != self.matrices[g.mul(a, b)] {
                    return Err(RepError::NotMultiplicative(a, b));
                }
            }
        }
        Ok(())
    }

    /// Extends generator images to the whole group and validates.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        dim: usize,
        generators: &[(usize, Matrix)],
    ) -> Result<Self, RepError> {
        let matrices = extend_from_generators(&group, dim, generators)?;
        Representation::new(group, dim, matrices)
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let matrices = vec![Matrix::identity(dim); group.order()];
        Representation { group, dim, matrices }
    }

    /// One-dimensional representation through a homomorphism to `{±1}`
    /// (`signs[g]` is `0` for `+1` and `1` for `-1`).
    pub fn sign(group: Arc<FiniteGroup>, signs: &[usize]) -> Self {
        let matrices = signs
            .iter()
            .map(|&s| Matrix::scalar(1, &Rational::from_integer(if s == 0 { 1 } else { -1 })))
            .collect();
        Representation {
            group,
            dim: 1,
            matrices,
        }
    }

    /// Left regular representation `g · e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let matrices = group
            .elements()
            .map(|g| {
                let perm: Vec<usize> = group.elements().map(|h| group.mul(g, h)).collect();
                Matrix::permutation(&perm)
            })
            .collect();
        Representation {
            dim: group.order(),
            group,
            matrices,
        }
    }

    /// Permutation representation on the left cosets of `subgroup`.
    pub fn on_cosets(group: Arc<FiniteGroup>, subgroup: &BTreeSet<usize>) -> Self {
        let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
        for x in group.elements() {
            let c: BTreeSet<usize> = subgroup.iter().map(|&h| group.mul(x, h)).collect();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let coset_of = |x: usize| cosets.iter().position(|c| c.contains(&x)).expect("coset");
        let matrices = group
            .elements()
            .map(|g| {
                let perm: Vec<usize> = cosets
                    .iter()
                    .map(|c| coset_of(group.mul(g, *c.iter().next().expect("nonempty"))))
                    .collect();
                Matrix::permutation(&perm)
            })
            .collect();
        Representation {
            dim: cosets.len(),
            group,
            matrices,
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            group: self.group.clone(),
            dim: self.dim + other.dim,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    pub fn tensor(&self, other: &Representation) -> Representation {
        Representation {
            group: self.group.clone(),
            dim: self.dim * other.dim,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.kronecker(b))
                .collect(),
        }
    }

    /// New coordinates `w = p⁻¹ v`.
    pub fn conjugate(&self, p: &Matrix) -> Representation {
        let inv = p.inverse().expect("conjugate: singular basis change");
        Representation {
            group: self.group.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| &(&inv * m) * p).collect(),
        }
    }

    /// Pullback along a homomorphism `phi: H -> G`.
    pub fn pullback(&self, source: Arc<FiniteGroup>, phi: &[usize]) -> Representation {
        Representation {
            dim: self.dim,
            matrices: source.elements().map(|h| self.matrices[phi[h]].clone()).collect(),
            group: source,
        }
    }

    /// `(1/|G|) Σ_g ρ(g)`.
    pub fn averaging(&self) -> Matrix {
        let sum = self
            .matrices
            .iter()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, m| &acc + m);
        sum.scale(&Rational::new(1, self.group.order() as i64))
    }

    /// `∩_g ker(ρ(g) − id)`.
    pub fn fixed_space(&self) -> Subspace {
        fixed_space(self.dim, &self.matrices)
    }

    /// Equivariant maps `self -> other` as flattened `other.dim x self.dim`
    /// matrices.
    pub fn hom_space(&self, other: &Representation) -> Subspace {
        let pairs: Vec<_> = self.matrices.iter().zip(&other.matrices).collect();
        crate::algebra::intertwiners(self.dim, other.dim, &pairs)
    }
}

pub(crate) fn fixed_space(dim: usize, matrices: &[Matrix]) -> Subspace {
    let id = Matrix::identity(dim);
    let stacked = matrices
        .iter()
        .fold(Matrix::zeros(0, dim), |acc, m| acc.vstack(&(m - &id)));
    stacked.kernel()
}

pub(crate) fn extend_from_generators(
    group: &FiniteGroup,
    dim: usize,
    generators: &[(usize, Matrix)],
) -> Result<Vec<Matrix>, RepError> {
    if generators
        .iter()
        .any(|(g, m)| *g >= group.order() || m.shape() != (dim, dim))
    {
        return Err(RepError::Shape {
            expected: group.order(),
            dim,
            found: generators.len(),
        });
    }
    let gens: Vec<usize> = generators.iter().map(|(g, _)| *g).collect();
    if group.closure(&gens).len() != group.order() {
        return Err(GroupError::NotGenerating.into());
    }
    let tree = group.spanning_tree(&gens);
    let mut out: Vec<Option<Matrix>> = vec![None; group.order()];
    out[group.identity()] = Some(Matrix::identity(dim));
    let mut pending: Vec<usize> = group.elements().filter(|&x| x != group.identity()).collect();
    while !pending.is_empty() {
        pending.retain(|&x| {
            let (prev, g) = tree[x].expect("reachable");
            match &out[prev] {
                Some(m) => {
                    let gm = &generators.iter().find(|(h, _)| *h == g).expect("gen").1;
                    out[x] = Some(m * gm);
                    false
                }
                None => true,
            }
        });
    }
    let out: Vec<Matrix> = out.into_iter().map(|m| m.expect("filled")).collect();
    for (g, m) in generators {
        if &out[*g] != m {
            return Err(GroupError::InconsistentGenerators(*g).into());
        }
    }
    Ok(out)
}

/// Small representations used to assemble random ones: the sign
/// characters and the permutation representations on cosets of subgroups
/// generated by at most two elements.
pub fn building_blocks(group: &Arc<FiniteGroup>, max_dim: usize) -> Vec<Representation> {
    let z2 = FiniteGroup::cyclic(2);
    let mut blocks: Vec<Representation> = super::group::all_homomorphisms(group, &z2)
        .iter()
        .map(|s| Representation::sign(group.clone(), s))
        .collect();
    let mut subgroups: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in group.elements() {
        for b in group.elements() {
            subgroups.insert(group.closure(&[a, b]));
        }
    }
    for h in &subgroups {
        let index = group.order() / h.len();
        if (2..=max_dim).contains(&index) {
            blocks.push(Representation::on_cosets(group.clone(), h));
        }
    }
    blocks
}

/// A random representation of dimension in `1..=max_dim`: a direct sum of
/// building blocks in a random basis.
pub fn random_representation(rng: &mut SeededRng, group: &Arc<FiniteGroup>, max_dim: usize) -> Representation {
    let blocks = building_blocks(group, max_dim);
    let target = 1 + random::index(rng, max_dim);
    let mut rep = Representation::trivial(group.clone(), 0);
    while rep.dim < target {
        let fitting: Vec<&Representation> = blocks.iter().filter(|b| rep.dim + b.dim <= target).collect();
        rep = rep.direct_sum(fitting[random::index(rng, fitting.len())]);
    }
    rep.conjugate(&random::invertible(rng, rep.dim))
}
