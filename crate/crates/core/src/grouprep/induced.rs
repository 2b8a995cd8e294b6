//! Induction `K[G″] ⊗_{K[G′]} V` and coinduction `Hom_{K[G′]}(K[G″], V)`
//! along a homomorphism `φ: G′ -> G″`, and the averaging isomorphism
//! `Ψ(x ⊗ v)(y) = Σ_{φ(h) = yx} h·v` between them.

use std::sync::Arc;

use serde::Serialize;

use super::group::{FiniteGroup, GroupError};
use super::rep::Representation;
use crate::exactlin::{quotient, vector, Matrix, Rational, Subspace};

/// Coordinates on `K[G″] ⊗ V` are `x·dim V + i`; on `Map(G″, V)` they are
/// `y·dim V + i` for the `i`th coordinate of `f(y)`.
#[derive(Debug, Clone)]
pub struct Induced {
    pub rep: Representation,
    pub projection: Matrix,
    pub section: Matrix,
}

#[derive(Debug, Clone)]
pub struct Coinduced {
    pub rep: Representation,
    pub subspace: Subspace,
}

impl Coinduced {
    pub fn inclusion(&self) -> Matrix {
        self.subspace.basis_matrix()
    }

    /// Coordinates of every column of `m` (which must lie in the subspace).
    pub fn coordinates_of(&self, m: &Matrix) -> Matrix {
        let cols: Vec<_> = m
            .columns()
            .iter()
            .map(|c| {
                self.subspace
                    .coordinates(c)
                    .expect("column lies in the coinduced subspace")
            })
            .collect();
        Matrix::from_columns(self.subspace.dim(), &cols)
    }
}

fn left_translation(target: &FiniteGroup, y: usize, dim: usize) -> Matrix {
    let perm: Vec<usize> = target.elements().map(|x| target.mul(y, x)).collect();
    Matrix::permutation(&perm).kronecker(&Matrix::identity(dim))
}

pub fn induced(target: &Arc<FiniteGroup>, phi: &[usize], v: &Representation) -> Induced {
    let (n, d) = (target.order(), v.dim);
    let mut relations = Vec::new();
    for x in target.elements() {
        for h in v.group.elements() {
            for i in 0..d {
                let lhs = vector::unit(n * d, target.mul(x, phi[h]) * d + i);
                let moved = v.matrices[h].column(i);
                let mut rhs = vector::zeros(n * d);
                rhs[x * d..(x + 1) * d].clone_from_slice(&moved);
                let rel = vector::sub(&lhs, &rhs);
                if !vector::is_zero(&rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let q = quotient(&Subspace::from_vectors(n * d, relations));
    let matrices = target
        .elements()
        .map(|y| &(&q.projection * &left_translation(target, y, d)) * &q.section)
        .collect();
    Induced {
        rep: Representation {
            group: target.clone(),
            dim: q.dim,
            matrices,
        },
        projection: q.projection,
        section: q.section,
    }
}

pub fn coinduced(target: &Arc<FiniteGroup>, phi: &[usize], v: &Representation) -> Coinduced {
    let (n, d) = (target.order(), v.dim);
    // f(φ(h) y) − ρ(h) f(y) = 0
    let mut rows = Vec::new();
    for h in v.group.elements() {
        for y in target.elements() {
            let moved = target.mul(phi[h], y);
            for i in 0..d {
                let mut row = vector::zeros(n * d);
                row[moved * d + i] += Rational::one();
                for k in 0..d {
                    row[y * d + k] -= v.matrices[h].get(i, k);
                }
                if !vector::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let subspace = if rows.is_empty() {
        Subspace::full(n * d)
    } else {
        Matrix::from_rows(n * d, rows).expect("row length").kernel()
    };
    let incl = subspace.basis_matrix();
    let matrices = target
        .elements()
        .map(|g| {
            // (g · f)(y) = f(yg)
            let shift = Matrix::from_fn(n * d, n * d, |r, c| {
                let (y, i) = (r / d, r % d);
                if c == target.mul(y, g) * d + i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            });
            let moved = &shift * &incl;
            let cols: Vec<_> = moved
                .columns()
                .iter()
                .map(|c| subspace.coordinates(c).expect("coinduced is G″-stable"))
                .collect();
            Matrix::from_columns(subspace.dim(), &cols)
        })
        .collect();
    Coinduced {
        rep: Representation {
            group: target.clone(),
            dim: subspace.dim(),
            matrices,
        },
        subspace,
    }
}

/// `Ψ` on `K[G″] ⊗ V -> Map(G″, V)` before passing to the quotient.
pub fn averaging_map(target: &FiniteGroup, phi: &[usize], v: &Representation) -> Matrix {
    let (n, d) = (target.order(), v.dim);
    let mut out = Matrix::zeros(n * d, n * d);
    for h in v.group.elements() {
        for x in target.elements() {
            // φ(h) = yx  ⇔  y = φ(h) x⁻¹
            let y = target.mul(phi[h], target.inv(x));
            for r in 0..d {
                for c in 0..d {
                    *out.entry_mut(y * d + r, x * d + c) += v.matrices[h].get(r, c);
                }
            }
        }
    }
    out
}

/// `Ind(T)` for an equivariant `t: v -> w`.
pub fn induced_map(target: &FiniteGroup, v: &Induced, w: &Induced, t: &Matrix) -> Matrix {
    let lifted = Matrix::identity(target.order()).kronecker(t);
    &(&w.projection * &lifted) * &v.section
}

/// `CoInd(T)` for an equivariant `t: v -> w`.
pub fn coinduced_map(target: &FiniteGroup, v: &Coinduced, w: &Coinduced, t: &Matrix) -> Matrix {
    let lifted = Matrix::identity(target.order()).kronecker(t);
    w.coordinates_of(&(&lifted * &v.inclusion()))
}

/// The isomorphism `Ind(V) -> CoInd(V)` in the quotient and subspace
/// coordinates, or `None` if `Ψ` fails to be well defined.
pub fn induced_to_coinduced(
    target: &FiniteGroup,
    phi: &[usize],
    v: &Representation,
    ind: &Induced,
    coind: &Coinduced,
) -> Option<Matrix> {
    let psi = averaging_map(target, phi, v);
    let descended = &psi * &ind.section;
    if &descended * &ind.projection != psi {
        return None;
    }
    if descended.columns().iter().any(|c| !coind.subspace.contains(c)) {
        return None;
    }
    Some(coind.coordinates_of(&descended))
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedCoinducedReport {
    pub induced_dim: usize,
    pub coinduced_dim: usize,
    pub well_defined: bool,
    pub bijective: bool,
    pub equivariant: bool,
    pub natural: bool,
}

impl InducedCoinducedReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.bijective && self.equivariant && self.natural
    }
}

/// Builds both functors on `v`, the averaging isomorphism, and checks it is
/// an equivariant bijection natural with respect to `test: v -> w`. Without
/// a test morphism the diagonal `v -> v ⊕ v` is used.
pub fn induced_coinduced_check(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    phi: &[usize],
    v: &Representation,
    test: Option<(&Representation, &Matrix)>,
) -> Result<InducedCoinducedReport, GroupError> {
    source.is_homomorphism_to(target, phi)?;
    let ind = induced(target, phi, v);
    let coind = coinduced(target, phi, v);
    let iso = induced_to_coinduced(target, phi, v, &ind, &coind);
    let mut report = InducedCoinducedReport {
        induced_dim: ind.rep.dim,
        coinduced_dim: coind.rep.dim,
        well_defined: iso.is_some(),
        bijective: false,
        equivariant: false,
        natural: false,
    };
    let Some(iso) = iso else {
        return Ok(report);
    };
    report.bijective = iso.is_square() && iso.is_invertible();
    report.equivariant = target
        .elements()
        .all(|y| &iso * &ind.rep.matrices[y] == &coind.rep.matrices[y] * &iso);

    let doubled;
    let diagonal;
    let (w, t) = match test {
        Some(pair) => pair,
        None => {
            doubled = v.direct_sum(v);
            diagonal = Matrix::identity(v.dim).vstack(&Matrix::identity(v.dim));
            (&doubled, &diagonal)
        }
    };
    let t_equivariant = v.matrices.iter().zip(&w.matrices).all(|(a, b)| t * a == b * t);
    if t_equivariant {
        let ind_w = induced(target, phi, w);
        let coind_w = coinduced(target, phi, w);
        if let Some(iso_w) = induced_to_coinduced(target, phi, w, &ind_w, &coind_w) {
            let lhs = &iso_w * &induced_map(target, &ind, &ind_w, t);
            let rhs = &coinduced_map(target, &coind, &coind_w, t) * &iso;
            report.natural = lhs == rhs;
        }
    }
    Ok(report)
}

/// `K[G″] ⊗_{K[G′]} V` along an injective `φ` in the basis `r_k ⊗ e_i`
/// (index `k·dim V + i`) for a transversal `r_k` of `G″/φ(G′)`.
#[derive(Debug, Clone)]
pub struct CosetInduction {
    pub target: Arc<FiniteGroup>,
    pub phi: Vec<usize>,
    pub transversal: Vec<usize>,
    /// For every `x ∈ G″`, the `(k, h)` with `x = r_k φ(h)`.
    pub decomposition: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosetError {
    #[error("the homomorphism is not injective")]
    NotInjective,
    #[error("the given elements are not a transversal of the cosets")]
    NotTransversal,
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl CosetInduction {
    /// Uses the least element of every coset as its representative.
    pub fn new(source: &FiniteGroup, target: &Arc<FiniteGroup>, phi: &[usize]) -> Result<Self, CosetError> {
        let mut seen = vec![false; target.order()];
        let mut transversal = Vec::new();
        for x in target.elements() {
            if !seen[x] {
                transversal.push(x);
                for &p in phi {
                    seen[target.mul(x, p)] = true;
                }
            }
        }
        Self::with_transversal(source, target, phi, transversal)
    }

    pub fn with_transversal(
        source: &FiniteGroup,
        target: &Arc<FiniteGroup>,
        phi: &[usize],
        transversal: Vec<usize>,
    ) -> Result<Self, CosetError> {
        source.is_homomorphism_to(target, phi)?;
        let mut preimage = vec![None; target.order()];
        for (h, &p) in phi.iter().enumerate() {
            if preimage[p].replace(h).is_some() {
                return Err(CosetError::NotInjective);
            }
        }
        let mut decomposition = vec![None; target.order()];
        for (k, &r) in transversal.iter().enumerate() {
            for (h, &p) in phi.iter().enumerate() {
                let x = target.mul(r, p);
                if decomposition[x].replace((k, h)).is_some() {
                    return Err(CosetError::NotTransversal);
                }
            }
        }
        let decomposition = decomposition
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(CosetError::NotTransversal)?;
        Ok(CosetInduction {
            target: target.clone(),
            phi: phi.to_vec(),
            transversal,
            decomposition,
        })
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// `y · (r_k ⊗ v) = r_k′ ⊗ h v` where `y r_k = r_k′ φ(h)`.
    pub fn rep(&self, v: &Representation) -> Representation {
        let d = v.dim;
        let m = self.index();
        let matrices = self
            .target
            .elements()
            .map(|y| {
                let mut out = Matrix::zeros(m * d, m * d);
                for (k, &r) in self.transversal.iter().enumerate() {
                    let (k2, h) = self.decomposition[self.target.mul(y, r)];
                    place(&mut out, k2 * d, k * d, &v.matrices[h]);
                }
                out
            })
            .collect();
        Representation {
            group: self.target.clone(),
            dim: m * d,
            matrices,
        }
    }

    /// `Ind(T) = id ⊗ T`.
    pub fn map(&self, t: &Matrix) -> Matrix {
        Matrix::identity(self.index()).kronecker(t)
    }

    /// `K[G″] ⊗ V -> Ind(V)`, `x ⊗ v ↦ r_k ⊗ h v`.
    pub fn projection(&self, v: &Representation) -> Matrix {
        let d = v.dim;
        let mut out = Matrix::zeros(self.index() * d, self.target.order() * d);
        for x in self.target.elements() {
            let (k, h) = self.decomposition[x];
            place(&mut out, k * d, x * d, &v.matrices[h]);
        }
        out
    }

    /// `φ_!(ψ_! V) -> (φψ)_! V`, `r_k ⊗ (s_l ⊗ v) ↦ t_j ⊗ h v` where
    /// `r_k φ(s_l) = t_j (φψ)(h)`. `self` induces along `φ`, `inner` along
    /// `ψ` and `composite` along `φψ`.
    pub fn composition_iso(&self, inner: &CosetInduction, composite: &CosetInduction, v: &Representation) -> Matrix {
        let d = v.dim;
        let inner_dim = inner.index() * d;
        let mut out = Matrix::zeros(composite.index() * d, self.index() * inner_dim);
        for (k, &r) in self.transversal.iter().enumerate() {
            for (l, &s) in inner.transversal.iter().enumerate() {
                let x = self.target.mul(r, self.phi[s]);
                let (j, h) = composite.decomposition[x];
                place(&mut out, j * d, k * inner_dim + l * d, &v.matrices[h]);
            }
        }
        out
    }
    /// The inverse of [`CosetInduction::composition_iso`].
    pub fn composition_iso_inverse(
        &self,
        inner: &CosetInduction,
        composite: &CosetInduction,
        v: &Representation,
    ) -> Matrix {
        let d = v.dim;
        let inner_dim = inner.index() * d;
        let mut out = Matrix::zeros(self.index() * inner_dim, composite.index() * d);
        for (k, &r) in self.transversal.iter().enumerate() {
            for (l, &s) in inner.transversal.iter().enumerate() {
                let x = self.target.mul(r, self.phi[s]);
                let (j, h) = composite.decomposition[x];
                place(&mut out, k * inner_dim + l * d, j * d, &v.matrices[v.group.inv(h)]);
            }
        }
        out
    }
}

fn place(out: &mut Matrix, row: usize, col: usize, block: &Matrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let x = block.get(r, c);
            if !x.is_zero() {
                out.set(row + r, col + c, x.clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::group::all_homomorphisms;
    use crate::grouprep::rep::random_representation;
    use crate::random;

    #[test]
    fn identity_is_identity() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let phi: Vec<usize> = z3.elements().collect();
        let v = random_representation(&mut random::rng(1), &z3, 3);
        let r = induced_coinduced_check(&z3, &z3, &phi, &v, None).unwrap();
        assert!(r.passed());
        assert_eq!((r.induced_dim, r.coinduced_dim), (v.dim, v.dim));
    }

    #[test]
    fn trivial_into_z2_doubles() {
        let e = Arc::new(FiniteGroup::trivial());
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let v = Representation::trivial(e.clone(), 1);
        let r = induced_coinduced_check(&e, &z2, &[0], &v, None).unwrap();
        assert!(r.passed());
        assert_eq!((r.induced_dim, r.coinduced_dim), (2, 2));
    }

    #[test]
    fn diagonal_into_square() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z2sq = Arc::new(FiniteGroup::power(&z2, 2));
        let diag = vec![0, 3];
        let mut rng = random::rng(5);
        for _ in 0..4 {
            let v = random_representation(&mut rng, &z2, 3);
            let r = induced_coinduced_check(&z2, &z2sq, &diag, &v, None).unwrap();
            assert!(r.passed());
            assert_eq!(r.induced_dim, 2 * v.dim);
        }
    }

    #[test]
    fn non_injective_maps() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let mut rng = random::rng(9);
        for phi in all_homomorphisms(&s3, &z2) {
            let v = random_representation(&mut rng, &s3, 4);
            let r = induced_coinduced_check(&s3, &z2, &phi, &v, None).unwrap();
            assert!(r.passed(), "{phi:?} {r:?}");
        }
    }

    #[test]
    fn rejects_non_homomorphism() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let v = Representation::trivial(z2.clone(), 1);
        assert!(induced_coinduced_check(&z2, &z3, &[0, 1], &v, None).is_err());
    }

    #[test]
    fn coset_model_matches_quotient_model() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let s3sq = Arc::new(FiniteGroup::power(&s3, 2));
        let diag: Vec<usize> = s3.elements().map(|g| g * 6 + g).collect();
        let mut rng = random::rng(3);
        let v = random_representation(&mut rng, &s3, 2);
        let coset = CosetInduction::new(&s3, &s3sq, &diag).unwrap();
        let ind = coset.rep(&v);
        ind.validate().unwrap();
        let p = coset.projection(&v);
        for y in s3sq.elements() {
            assert_eq!(&p * &left_translation(&s3sq, y, v.dim), &ind.matrices[y] * &p);
        }
        let quotient = induced(&s3sq, &diag, &v);
        assert_eq!(p.kernel().dim(), quotient.projection.kernel().dim());
        let both = p
            .kernel()
            .basis()
            .into_iter()
            .chain(quotient.projection.kernel().basis());
        assert_eq!(Subspace::from_vectors(p.cols(), both).dim(), p.kernel().dim());
    }

    #[test]
    fn coset_composition_is_equivariant_iso() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z2sq = Arc::new(FiniteGroup::power(&z2, 2));
        let z2cube = Arc::new(FiniteGroup::power(&z2, 3));
        let psi = vec![0, 3];
        let phi: Vec<usize> = z2sq.elements().map(|x| (x / 2) * 4 + (x % 2) * 2 + (x % 2)).collect();
        let composite: Vec<usize> = psi.iter().map(|&x| phi[x]).collect();
        let v = random_representation(&mut random::rng(4), &z2, 2);
        let inner = CosetInduction::new(&z2, &z2sq, &psi).unwrap();
        let outer = CosetInduction::new(&z2sq, &z2cube, &phi).unwrap();
        let comp = CosetInduction::new(&z2, &z2cube, &composite).unwrap();
        let iso = outer.composition_iso(&inner, &comp, &v);
        assert!((&iso * &outer.composition_iso_inverse(&inner, &comp, &v)).is_identity());
        let nested = outer.rep(&inner.rep(&v));
        let direct = comp.rep(&v);
        for y in z2cube.elements() {
            assert_eq!(&iso * &nested.matrices[y], &direct.matrices[y] * &iso);
        }
    }

    #[test]
    fn coset_rejects_non_injective() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let e = FiniteGroup::trivial();
        assert_eq!(
            CosetInduction::new(&z2, &Arc::new(e), &[0, 0]).unwrap_err(),
            CosetError::NotInjective
        );
    }
}
