use serde::Serialize;

use crate::fincat::{MorId, ObjId, OrthogonalCategory};

/// An operation `(f_1, ..., f_n): (c_1, ..., c_n) -> t` of the
/// prefactorization operad: pairwise orthogonal morphisms `f_i: c_i -> t`.
/// The empty tuple is the unique nullary operation `*_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PFOperation {
    pub target: ObjId,
    pub sources: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("expected {expected} inner operations, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("inner operation {index} has target {found}, expected {expected}")]
    TargetMismatch {
        index: usize,
        expected: ObjId,
        found: ObjId,
    },
    #[error("composite of morphisms {g} and {f} is missing")]
    MissingComposite { g: MorId, f: MorId },
    #[error("components {i} and {j} ({mi}, {mj}) are not orthogonal")]
    NotOrthogonal { i: usize, j: usize, mi: MorId, mj: MorId },
    #[error("morphism {morphism} at position {index} does not go from {from} to {to}")]
    BadMorphism {
        index: usize,
        morphism: MorId,
        from: ObjId,
        to: ObjId,
    },
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("functor does not preserve orthogonality of ({0}, {1})")]
    NotPreserved(MorId, MorId),
    #[error("envelope morphisms are not composable")]
    NotComposable,
}

impl PFOperation {
    /// Validates endpoints and pairwise orthogonality.
    pub fn new(c: &OrthogonalCategory, target: ObjId, morphisms: Vec<MorId>) -> Result<Self, OperadError> {
        let base = c.base();
        for (index, &m) in morphisms.iter().enumerate() {
            if base.target(m) != target {
                return Err(OperadError::BadMorphism {
                    index,
                    morphism: m,
                    from: base.source(m),
                    to: target,
                });
            }
        }
        check_pairwise(c, &morphisms)?;
        Ok(PFOperation {
            target,
            sources: morphisms.iter().map(|&m| base.source(m)).collect(),
            morphisms,
        })
    }

    /// The nullary operation `*_t`.
    pub fn unit(t: ObjId) -> Self {
        PFOperation {
            target: t,
            sources: Vec::new(),
            morphisms: Vec::new(),
        }
    }

    /// The unary operation `(id_t)`.
    pub fn identity(c: &OrthogonalCategory, t: ObjId) -> Self {
        PFOperation {
            target: t,
            sources: vec![t],
            morphisms: vec![c.base().identity(t)],
        }
    }

    pub fn arity(&self) -> usize {
        self.morphisms.len()
    }
}

pub(crate) fn check_pairwise(c: &OrthogonalCategory, ms: &[MorId]) -> Result<(), OperadError> {
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            if i != j && !c.is_orthogonal(ms[i], ms[j]) {
                return Err(OperadError::NotOrthogonal {
                    i,
                    j,
                    mi: ms[i],
                    mj: ms[j],
                });
            }
        }
    }
    Ok(())
}

/// All operations `sources -> t`, in lexicographic order of morphism ids.
pub fn enumerate_operations(c: &OrthogonalCategory, t: ObjId, sources: &[ObjId]) -> Vec<PFOperation> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(sources.len());
    fn go(c: &OrthogonalCategory, t: ObjId, sources: &[ObjId], chosen: &mut Vec<MorId>, out: &mut Vec<PFOperation>) {
        let i = chosen.len();
        if i == sources.len() {
            out.push(PFOperation {
                target: t,
                sources: sources.to_vec(),
                morphisms: chosen.clone(),
            });
            return;
        }
        let mut candidates = c.base().hom(sources[i], t).to_vec();
        candidates.sort_unstable();
        for f in candidates {
            if chosen.iter().all(|&g| c.is_orthogonal(g, f) && c.is_orthogonal(f, g)) {
                chosen.push(f);
                go(c, t, sources, chosen, out);
                chosen.pop();
            }
        }
    }
    go(c, t, sources, &mut chosen, &mut out);
    out
}

/// All operations into `t` of arity at most `max_arity`, ordered by arity
/// and then lexicographically by morphism ids.
pub fn operations_into(c: &OrthogonalCategory, t: ObjId, max_arity: usize) -> Vec<PFOperation> {
    let base = c.base();
    let mut into = base.morphisms_into(t).to_vec();
    into.sort_unstable();
    let mut out = Vec::new();
    for arity in 0..=max_arity {
        let mut chosen = Vec::new();
        collect(c, &into, arity, &mut chosen, &mut |ms| {
            out.push(PFOperation {
                target: t,
                sources: ms.iter().map(|&m| base.source(m)).collect(),
                morphisms: ms.to_vec(),
            })
        });
    }
    out
}

fn collect(
    c: &OrthogonalCategory,
    into: &[MorId],
    arity: usize,
    chosen: &mut Vec<MorId>,
    emit: &mut impl FnMut(&[MorId]),
) {
    if chosen.len() == arity {
        emit(chosen);
        return;
    }
    for &f in into {
        if chosen.iter().all(|&g| c.is_orthogonal(g, f) && c.is_orthogonal(f, g)) {
            chosen.push(f);
            collect(c, into, arity, chosen, emit);
            chosen.pop();
        }
    }
}

/// Operadic composition `f̱ · (g̱_1, ..., g̱_n)`: the concatenation of the
/// tuples `f_i ∘ g̱_i`.
pub fn compose(
    c: &OrthogonalCategory,
    outer: &PFOperation,
    inners: &[PFOperation],
) -> Result<PFOperation, OperadError> {
    if inners.len() != outer.arity() {
        return Err(OperadError::ArityMismatch {
            expected: outer.arity(),
            found: inners.len(),
        });
    }
    let base = c.base();
    let mut sources = Vec::new();
    let mut morphisms = Vec::new();
    for (index, (f, g)) in outer.morphisms.iter().zip(inners).enumerate() {
        if g.target != outer.sources[index] {
            return Err(OperadError::TargetMismatch {
                index,
                expected: outer.sources[index],
                found: g.target,
            });
        }
        for (&gm, &s) in g.morphisms.iter().zip(&g.sources) {
            let fg = base
                .compose(*f, gm)
                .ok_or(OperadError::MissingComposite { g: *f, f: gm })?;
            morphisms.push(fg);
            sources.push(s);
        }
    }
    check_pairwise(c, &morphisms)?;
    Ok(PFOperation {
        target: outer.target,
        sources,
        morphisms,
    })
}

/// Right action of a permutation: `f̱σ = (f_σ(0), ..., f_σ(n-1))`.
pub fn permute(op: &PFOperation, sigma: &[usize]) -> Result<PFOperation, OperadError> {
    if !is_permutation(sigma) || sigma.len() != op.arity() {
        return Err(OperadError::BadPermutation(op.arity()));
    }
    Ok(PFOperation {
        target: op.target,
        sources: sigma.iter().map(|&i| op.sources[i]).collect(),
        morphisms: sigma.iter().map(|&i| op.morphisms[i]).collect(),
    })
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma
        .iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}

/// `(σ ∘ τ)(i) = σ(τ(i))`.
pub fn compose_permutations(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&i| sigma[i]).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
