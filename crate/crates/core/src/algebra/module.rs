use std::sync::Arc;

use super::structure::{AlgebraError, AlgebraMorphism, RationalAlgebra};
use crate::exactlin::{quotient, vector, Matrix, Rational, Subspace};
use crate::random::{self, SeededRng};

/// A right module. `action[j]` is the matrix of `v ↦ v · e_j`, so
/// `action(ab) = action(b) · action(a)` as matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    pub algebra: Arc<RationalAlgebra>,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl RightModule {
    pub fn new(algebra: Arc<RationalAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self, AlgebraError> {
        let m = RightModule { algebra, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let a = &*self.algebra;
        if self.action.len() != a.dim() {
            return Err(AlgebraError::Length {
                expected: a.dim(),
                found: self.action.len(),
            });
        }
        if self.action.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(AlgebraError::Length {
                expected: self.dim,
                found: 0,
            });
        }
        if !self.action_matrix(a.unit()).is_identity() {
            return Err(AlgebraError::ActionNotUnital);
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action_matrix(&a.product_of_basis(i, j));
                if lhs != &self.action[j] * &self.action[i] {
                    return Err(AlgebraError::ActionNotAssociative(i, j));
                }
            }
        }
        Ok(())
    }

    /// Matrix of `v ↦ v · a`.
    pub fn action_matrix(&self, a: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out = &out + &self.action[i].scale(ai);
            }
        }
        out
    }

    pub fn act(&self, v: &[Rational], a: &[Rational]) -> Vec<Rational> {
        self.action_matrix(a).apply(v)
    }

    /// The free module `A^k` with blocks in order.
    pub fn free(algebra: Arc<RationalAlgebra>, k: usize) -> Self {
        let d = algebra.dim();
        let action = (0..d)
            .map(|j| {
                let r = algebra.right_mult(&algebra.basis_vector(j));
                (0..k).fold(Matrix::zeros(0, 0), |acc, _| acc.direct_sum(&r))
            })
            .collect();
        RightModule {
            dim: d * k,
            algebra,
            action,
        }
    }

    pub fn zero(algebra: Arc<RationalAlgebra>) -> Self {
        let action = vec![Matrix::zeros(0, 0); algebra.dim()];
        RightModule {
            algebra,
            dim: 0,
            action,
        }
    }

    /// Restriction of scalars along `phi: B -> A`.
    pub fn restrict(&self, phi: &AlgebraMorphism) -> RightModule {
        assert_eq!(*phi.target, *self.algebra, "restrict: algebra mismatch");
        let b = &*phi.source;
        RightModule {
            algebra: phi.source.clone(),
            dim: self.dim,
            action: (0..b.dim())
                .map(|i| self.action_matrix(&phi.matrix.column(i)))
                .collect(),
        }
    }

    /// Transport along an invertible `p`: new coordinates `w = p⁻¹ v`.
    pub fn conjugate(&self, p: &Matrix) -> RightModule {
        let inv = p.inverse().expect("conjugate: singular basis change");
        RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self.action.iter().map(|r| &(&inv * r) * p).collect(),
        }
    }

    pub fn direct_sum(&self, other: &RightModule) -> RightModule {
        RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// The submodule generated by `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<Rational>]) -> Subspace {
        let mut sub = Subspace::from_vectors(self.dim, vectors.iter().cloned());
        loop {
            let mut more = sub.basis();
            for v in sub.basis() {
                for r in &self.action {
                    more.push(r.apply(&v));
                }
            }
            let next = Subspace::from_vectors(self.dim, more);
            if next.dim() == sub.dim() {
                return sub;
            }
            sub = next;
        }
    }

    /// A seeded random module of dimension at most `max_dim` (and at least
    /// one when the algebra fits): a quotient of a free module by the
    /// submodule generated by random vectors, in a random basis.
    pub fn random(rng: &mut SeededRng, algebra: Arc<RationalAlgebra>, max_dim: usize) -> RightModule {
        let d = algebra.dim();
        let k = 1 + random::index(rng, (max_dim / d).max(1));
        let free = RightModule::free(algebra, k);
        let relations: Vec<Vec<Rational>> = (0..random::index(rng, 3))
            .map(|_| random::vector(rng, free.dim, 1))
            .collect();
        let (q, _) = free.quotient_by(&free.generated_submodule(&relations));
        q.conjugate(&random::invertible(rng, q.dim))
    }

    /// Quotient by a submodule, with the projection matrix.
    pub fn quotient_by(&self, sub: &Subspace) -> (RightModule, Matrix) {
        let q = quotient(sub);
        let action = self.action.iter().map(|r| &(&q.projection * r) * &q.section).collect();
        (
            RightModule {
                algebra: self.algebra.clone(),
                dim: q.dim,
                action,
            },
            q.projection,
        )
    }
}

/// A bimodule: `left_action[i]` is `v ↦ e_i · v` (so `left(ab) = left(a)
/// left(b)`), `right_action[j]` is `v ↦ v · e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub left_algebra: Arc<RationalAlgebra>,
    pub right_algebra: Arc<RationalAlgebra>,
    pub dim: usize,
    pub left_action: Vec<Matrix>,
    pub right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let la = &*self.left_algebra;
        let right = RightModule {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            action: self.right_action.clone(),
        };
        right.validate()?;
        let left_of = |a: &[Rational]| {
            let mut out = Matrix::zeros(self.dim, self.dim);
            for (i, ai) in a.iter().enumerate() {
                if !ai.is_zero() {
                    out = &out + &self.left_action[i].scale(ai);
                }
            }
            out
        };
        if !left_of(la.unit()).is_identity() {
            return Err(AlgebraError::ActionNotUnital);
        }
        for i in 0..la.dim() {
            for j in 0..la.dim() {
                if left_of(&la.product_of_basis(i, j)) != &self.left_action[i] * &self.left_action[j] {
                    return Err(AlgebraError::ActionNotAssociative(i, j));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l * r != r * l {
                    return Err(AlgebraError::ActionsDoNotCommute(i, j));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(a: Arc<RationalAlgebra>) -> Self {
        Self::from_morphism(&AlgebraMorphism::identity(a))
    }

    /// The target `A` of `phi: B -> A` as a `B`-`A` bimodule.
    pub fn from_morphism(phi: &AlgebraMorphism) -> Self {
        let a = &*phi.target;
        Bimodule {
            left_algebra: phi.source.clone(),
            right_algebra: phi.target.clone(),
            dim: a.dim(),
            left_action: (0..phi.source.dim())
                .map(|i| a.left_mult(&phi.matrix.column(i)))
                .collect(),
            right_action: (0..a.dim()).map(|j| a.right_mult(&a.basis_vector(j))).collect(),
        }
    }

    pub fn as_right_module(&self) -> RightModule {
        RightModule {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            action: self.right_action.clone(),
        }
    }
}

/// `M ⊗_B N` as a quotient of `M ⊗ N` (left-major coordinates).
#[derive(Debug, Clone)]
pub struct RelativeTensor {
    pub dim: usize,
    /// `dim x (dim M · dim N)`
    pub projection: Matrix,
    /// `(dim M · dim N) x dim`
    pub section: Matrix,
    /// The induced right action of the right algebra of `N`.
    pub module: RightModule,
}

pub fn relative_tensor(m: &RightModule, n: &Bimodule) -> Result<RelativeTensor, AlgebraError> {
    if *m.algebra != *n.left_algebra {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let (dm, dn) = (m.dim, n.dim);
    let mut relations = Vec::new();
    for (rb, lb) in m.action.iter().zip(&n.left_action) {
        for p in 0..dm {
            let vb = rb.column(p);
            let ep = vector::unit(dm, p);
            for qi in 0..dn {
                let eq = vector::unit(dn, qi);
                let rel = vector::sub(&vector::kron(&vb, &eq), &vector::kron(&ep, &lb.column(qi)));
                if !vector::is_zero(&rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let sub = Subspace::from_vectors(dm * dn, relations);
    let q = quotient(&sub);
    let id_m = Matrix::identity(dm);
    let action = n
        .right_action
        .iter()
        .map(|r| &(&q.projection * &id_m.kronecker(r)) * &q.section)
        .collect();
    Ok(RelativeTensor {
        dim: q.dim,
        module: RightModule {
            algebra: n.right_algebra.clone(),
            dim: q.dim,
            action,
        },
        projection: q.projection,
        section: q.section,
    })
}

/// Solutions `φ` (an `n x m` matrix) of `φ A_k = B_k φ` for all pairs.
pub fn intertwiners(m: usize, n: usize, pairs: &[(&Matrix, &Matrix)]) -> Subspace {
    let unknowns = n * m;
    let mut rows = Vec::new();
    for (a, b) in pairs {
        for r in 0..n {
            for c in 0..m {
                let mut row = vector::zeros(unknowns);
                for k in 0..m {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        row[r * m + k] += x;
                    }
                }
                for k in 0..n {
                    let x = b.get(r, k);
                    if !x.is_zero() {
                        row[k * m + c] -= x;
                    }
                }
                if !vector::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(unknowns);
    }
    Matrix::from_rows(unknowns, rows).expect("row length").kernel()
}

pub fn flatten(m: &Matrix) -> Vec<Rational> {
    m.to_rows().concat()
}

pub fn unflatten(rows: usize, cols: usize, v: &[Rational]) -> Matrix {
    Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone())
}

/// Module homomorphisms `M -> N` as a subspace of flattened matrices.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<Subspace, AlgebraError> {
    if *m.algebra != *n.algebra {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let pairs: Vec<_> = m.action.iter().zip(&n.action).collect();
    Ok(intertwiners(m.dim, n.dim, &pairs))
}

/// An algebra of matrices given as a subspace of flattened `d x d`
/// matrices closed under composition, with product `φ · ψ = φ ∘ ψ`.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub algebra: Arc<RationalAlgebra>,
    /// Basis matrices, in the order of the algebra basis.
    pub matrices: Vec<Matrix>,
    pub space: Subspace,
    pub module_dim: usize,
}

impl EndAlgebra {
    pub fn from_space(module_dim: usize, space: Subspace) -> Result<Self, AlgebraError> {
        let d = module_dim;
        let matrices: Vec<Matrix> = space.basis().iter().map(|v| unflatten(d, d, v)).collect();
        let coords = |m: &Matrix| space.coordinates(&flatten(m)).ok_or(AlgebraError::NotSubalgebra);
        let unit = coords(&Matrix::identity(d))?;
        let mut left = Vec::with_capacity(matrices.len());
        for a in &matrices {
            let cols: Result<Vec<_>, _> = matrices.iter().map(|b| coords(&(a * b))).collect();
            left.push(Matrix::from_columns(matrices.len(), &cols?));
        }
        let algebra = Arc::new(RationalAlgebra::from_left_matrices(left, unit)?);
        Ok(EndAlgebra {
            algebra,
            matrices,
            space,
            module_dim,
        })
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.space.coordinates(&flatten(m))
    }

    pub fn matrix_of(&self, coords: &[Rational]) -> Matrix {
        let v = self.space.vector_from_coordinates(coords);
        unflatten(self.module_dim, self.module_dim, &v)
    }
}

pub fn endomorphism_algebra(m: &RightModule) -> Result<EndAlgebra, AlgebraError> {
    EndAlgebra::from_space(m.dim, hom_space(m, m)?)
}

/// `A ≅ End_A(A)`: `a ↦ a · (−)` and `h ↦ h(1)`.
pub fn unit_iso(a: &Arc<RationalAlgebra>) -> Result<(AlgebraMorphism, AlgebraMorphism, EndAlgebra), AlgebraError> {
    let end = endomorphism_algebra(&RightModule::free(a.clone(), 1))?;
    let cols: Option<Vec<_>> = (0..a.dim())
        .map(|i| end.coordinates(&a.left_mult(&a.basis_vector(i))))
        .collect();
    let forward = AlgebraMorphism::new(
        a.clone(),
        end.algebra.clone(),
        Matrix::from_columns(end.algebra.dim(), &cols.ok_or(AlgebraError::NotSubalgebra)?),
    )?;
    let back_cols: Vec<_> = end.matrices.iter().map(|h| h.apply(a.unit())).collect();
    let backward = AlgebraMorphism::new(
        end.algebra.clone(),
        a.clone(),
        Matrix::from_columns(a.dim(), &back_cols),
    )?;
    Ok((forward, backward, end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::clifford_algebra;
    use crate::exactlin::q;

    fn cl2() -> Arc<RationalAlgebra> {
        Arc::new(clifford_algebra(&[q(1), q(1)]))
    }

    fn even_inclusion(a: &Arc<RationalAlgebra>) -> AlgebraMorphism {
        let sub = Subspace::from_vectors(4, vec![a.basis_vector(0), a.basis_vector(3)]);
        let (b, incl) = a.subalgebra(&sub).unwrap();
        AlgebraMorphism::new(Arc::new(b), a.clone(), incl).unwrap()
    }

    #[test]
    fn free_module_is_valid() {
        RightModule::free(cl2(), 2).validate().unwrap();
    }

    #[test]
    fn tensor_over_field_is_plain() {
        let k = Arc::new(RationalAlgebra::field());
        let m = RightModule::free(k.clone(), 3);
        let n = Bimodule::regular(k.clone());
        let n2 = Bimodule {
            dim: 2,
            left_action: vec![Matrix::identity(2)],
            right_action: vec![Matrix::identity(2)],
            ..n
        };
        assert_eq!(relative_tensor(&m, &n2).unwrap().dim, 6);
    }

    #[test]
    fn a_tensor_a_over_a() {
        let a = cl2();
        let t = relative_tensor(&RightModule::free(a.clone(), 1), &Bimodule::regular(a.clone())).unwrap();
        assert_eq!(t.dim, 4);
        // multiplication A ⊗ A -> A factors through the quotient bijectively
        let mut mu_cols = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                mu_cols.push(a.product_of_basis(i, j));
            }
        }
        let mu = Matrix::from_columns(4, &mu_cols);
        assert!((&mu * &t.section).is_invertible());
    }

    #[test]
    fn clifford_over_even_part() {
        let a = cl2();
        let incl = even_inclusion(&a);
        let m = RightModule::free(a.clone(), 1).restrict(&incl);
        let n = Bimodule::from_morphism(&incl);
        n.validate().unwrap();
        assert_eq!(relative_tensor(&m, &n).unwrap().dim, 8);
    }

    #[test]
    fn endomorphisms() {
        let a = cl2();
        let end = endomorphism_algebra(&RightModule::free(a.clone(), 1)).unwrap();
        assert_eq!(end.algebra.dim(), 4);
        let k = Arc::new(RationalAlgebra::field());
        let end = endomorphism_algebra(&RightModule::free(k, 2)).unwrap();
        assert_eq!(end.algebra.dim(), 4);
    }

    #[test]
    fn unit_iso_round_trips() {
        for a in [Arc::new(RationalAlgebra::field()), cl2()] {
            let (fw, bw, _) = unit_iso(&a).unwrap();
            assert!(bw.after(&fw).matrix.is_identity());
            assert!(fw.after(&bw).matrix.is_identity());
        }
    }

    #[test]
    fn quotient_module() {
        let a = cl2();
        let m = RightModule::free(a.clone(), 1);
        // right ideal generated by 1 + x1
        let sub = m.generated_submodule(&[vec![q(1), q(1), q(0), q(0)]]);
        assert_eq!(sub.dim(), 2);
        let (qm, _) = m.quotient_by(&sub);
        qm.validate().unwrap();
        assert_eq!(qm.dim, 2);
    }
}
