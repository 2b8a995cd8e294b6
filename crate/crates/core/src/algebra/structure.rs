use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactlin::{vector, Matrix, Rational, Subspace};

/// A finite-dimensional unital associative algebra over the rationals.
///
/// Stored as left-multiplication matrices: column `j` of `left[i]` holds the
/// coordinates of `e_i · e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalAlgebra {
    dim: usize,
    left: Vec<Matrix>,
    unit: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("(e{i} e{j}) e{k} differs from e{i} (e{j} e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element e{0}")]
    BadUnit(usize),
    #[error("structure constant index out of range: ({0}, {1}, {2})")]
    IndexOutOfRange(usize, usize, usize),
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("map does not preserve the unit")]
    UnitNotPreserved,
    #[error("map does not preserve the product of e{0} and e{1}")]
    ProductNotPreserved(usize, usize),
    #[error("right action is not unital")]
    ActionNotUnital,
    #[error("action law fails for basis elements e{0}, e{1}")]
    ActionNotAssociative(usize, usize),
    #[error("left and right actions do not commute for e{0}, e{1}")]
    ActionsDoNotCommute(usize, usize),
    #[error("the algebras of the two arguments differ")]
    AlgebraMismatch,
    #[error("subspace is not a unital subalgebra")]
    NotSubalgebra,
}

/// Sparse structure constant `e_i · e_j = ... + c e_k + ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant(pub usize, pub usize, pub usize, pub Rational);

impl RationalAlgebra {
    /// Validated algebra from sparse structure constants.
    pub fn new(dim: usize, constants: &[StructureConstant], unit: Vec<Rational>) -> Result<Self, AlgebraError> {
        let mut left = vec![Matrix::zeros(dim, dim); dim];
        for StructureConstant(i, j, k, c) in constants {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(AlgebraError::IndexOutOfRange(*i, *j, *k));
            }
            *left[*i].entry_mut(*k, *j) += c;
        }
        Self::from_left_matrices(left, unit)
    }

    pub fn from_left_matrices(left: Vec<Matrix>, unit: Vec<Rational>) -> Result<Self, AlgebraError> {
        let a = Self::from_left_matrices_unchecked(left, unit)?;
        a.validate()?;
        Ok(a)
    }

    /// Checks only shapes. Used to inject defects in tests.
    pub fn from_left_matrices_unchecked(left: Vec<Matrix>, unit: Vec<Rational>) -> Result<Self, AlgebraError> {
        let dim = left.len();
        if unit.len() != dim {
            return Err(AlgebraError::Length {
                expected: dim,
                found: unit.len(),
            });
        }
        if let Some(m) = left.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(AlgebraError::Length {
                expected: dim,
                found: m.rows(),
            });
        }
        Ok(RationalAlgebra { dim, left, unit })
    }

    /// Exhaustive check of associativity and the unit laws on basis
    /// elements.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            let ei = vector::unit(n, i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k)  <=>  L(e_i e_j) = L_i L_j
        for i in 0..n {
            for j in 0..n {
                let eij = self.left[i].column(j);
                let lhs = self.left_mult(&eij);
                let rhs = &self.left[i] * &self.left[j];
                if lhs != rhs {
                    let k = (0..n)
                        .find(|&k| lhs.column(k) != rhs.column(k))
                        .expect("differing column");
                    return Err(AlgebraError::NotAssociative { i, j, k });
                }
            }
        }
        Ok(())
    }

    /// The ground field as a one-dimensional algebra.
    pub fn field() -> Self {
        RationalAlgebra {
            dim: 1,
            left: vec![Matrix::identity(1)],
            unit: vec![Rational::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        vector::unit(self.dim, i)
    }

    pub fn left_matrices(&self) -> &[Matrix] {
        &self.left
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.left[i].column(j)
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vector::zeros(self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                vector::axpy(&mut out, ai, &self.left[i].apply(b));
            }
        }
        out
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out = &out + &self.left[i].scale(ai);
            }
        }
        out
    }

    /// Matrix of `x ↦ x b`.
    pub fn right_mult(&self, b: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.left[i].apply(b)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn commutator(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        vector::sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// First pair of basis elements that do not commute.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.product_of_basis(i, j) != self.product_of_basis(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// Sparse structure constants in `(i, j, k)` order.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.left[i].get(k, j);
                    if !c.is_zero() {
                        out.push(StructureConstant(i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// The subalgebra spanned by `sub`, with its RREF basis, and the
    /// inclusion matrix (columns are the basis vectors).
    pub fn subalgebra(&self, sub: &Subspace) -> Result<(RationalAlgebra, Matrix), AlgebraError> {
        let basis = sub.basis();
        let d = basis.len();
        let unit = sub.coordinates(&self.unit).ok_or(AlgebraError::NotSubalgebra)?;
        let mut left = Vec::with_capacity(d);
        for a in &basis {
            let mut cols = Vec::with_capacity(d);
            for b in &basis {
                let ab = self.mul(a, b);
                cols.push(sub.coordinates(&ab).ok_or(AlgebraError::NotSubalgebra)?);
            }
            left.push(Matrix::from_columns(d, &cols));
        }
        let alg = RationalAlgebra::from_left_matrices(left, unit)?;
        Ok((alg, sub.basis_matrix()))
    }
}

/// `(a⊗b)(a'⊗b') = (aa')⊗(bb')` with left-major basis order.
pub fn tensor_algebra(a: &RationalAlgebra, b: &RationalAlgebra) -> RationalAlgebra {
    let mut left = Vec::with_capacity(a.dim * b.dim);
    for la in &a.left {
        for lb in &b.left {
            left.push(la.kronecker(lb));
        }
    }
    RationalAlgebra {
        dim: a.dim * b.dim,
        left,
        unit: vector::kron(&a.unit, &b.unit),
    }
}

/// Iterated tensor product; the empty product is the ground field.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a RationalAlgebra>) -> RationalAlgebra {
    factors
        .into_iter()
        .fold(RationalAlgebra::field(), |acc, x| tensor_algebra(&acc, x))
}

/// Clifford algebra with generators `x_i`, `x_i² = q_i`, `x_i x_j = -x_j x_i`.
/// Basis element `m` is the increasing monomial over the set bits of `m`.
pub fn clifford_algebra(q: &[Rational]) -> RationalAlgebra {
    let n = q.len();
    let dim = 1usize << n;
    let mut left = vec![Matrix::zeros(dim, dim); dim];
    for s in 0..dim {
        for t in 0..dim {
            // Sign from moving each generator of t past the larger ones in s.
            let mut swaps = 0;
            for j in 0..n {
                if t >> j & 1 == 1 {
                    swaps += (s >> (j + 1)).count_ones();
                }
            }
            let mut c = if swaps % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for (i, qi) in q.iter().enumerate() {
                if (s & t) >> i & 1 == 1 {
                    c = &c * qi;
                }
            }
            if !c.is_zero() {
                left[s].set(s ^ t, t, c);
            }
        }
    }
    RationalAlgebra {
        dim,
        left,
        unit: vector::unit(dim, 0),
    }
}

/// A unital algebra homomorphism given by its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: Arc<RationalAlgebra>,
    pub target: Arc<RationalAlgebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<RationalAlgebra>,
        target: Arc<RationalAlgebra>,
        matrix: Matrix,
    ) -> Result<Self, AlgebraError> {
        let m = AlgebraMorphism { source, target, matrix };
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(source: Arc<RationalAlgebra>, target: Arc<RationalAlgebra>, matrix: Matrix) -> Self {
        AlgebraMorphism { source, target, matrix }
    }

    pub fn identity(a: Arc<RationalAlgebra>) -> Self {
        AlgebraMorphism {
            matrix: Matrix::identity(a.dim()),
            source: a.clone(),
            target: a,
        }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let (s, t) = (&*self.source, &*self.target);
        if self.matrix.shape() != (t.dim(), s.dim()) {
            return Err(AlgebraError::Length {
                expected: t.dim() * s.dim(),
                found: self.matrix.rows() * self.matrix.cols(),
            });
        }
        if self.matrix.apply(s.unit()) != t.unit() {
            return Err(AlgebraError::UnitNotPreserved);
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.matrix.apply(&s.product_of_basis(i, j));
                let rhs = t.mul(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    return Err(AlgebraError::ProductNotPreserved(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(a)
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraMorphism) -> AlgebraMorphism {
        AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    #[test]
    fn field_is_one_dimensional() {
        let k = RationalAlgebra::field();
        k.validate().unwrap();
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn group_algebra_of_z2_from_table() {
        let consts = vec![
            StructureConstant(0, 0, 0, q(1)),
            StructureConstant(0, 1, 1, q(1)),
            StructureConstant(1, 0, 1, q(1)),
            StructureConstant(1, 1, 0, q(1)),
        ];
        let a = RationalAlgebra::new(2, &consts, vec![q(1), q(0)]).unwrap();
        assert!(a.is_commutative());
        assert_eq!(a.structure_constants(), consts);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // e1 e1 = e2, e1 e2 = e1, e2 e1 = e2, e2 e2 = 0: (e1 e1) e2 = 0 but
        // e1 (e1 e2) = e2.
        let bad = vec![
            StructureConstant(0, 0, 0, q(1)),
            StructureConstant(0, 1, 1, q(1)),
            StructureConstant(0, 2, 2, q(1)),
            StructureConstant(1, 0, 1, q(1)),
            StructureConstant(2, 0, 2, q(1)),
            StructureConstant(1, 1, 2, q(1)),
            StructureConstant(1, 2, 1, q(1)),
            StructureConstant(2, 1, 2, q(1)),
        ];
        let err = RationalAlgebra::new(3, &bad, vec![q(1), q(0), q(0)]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn tensor_dims_and_unit() {
        let a = clifford_algebra(&[q(1)]);
        let b = clifford_algebra(&[q(1), q(1)]);
        let t = tensor_algebra(&a, &b);
        t.validate().unwrap();
        assert_eq!(t.dim(), 8);
        let tk = tensor_algebra(&a, &RationalAlgebra::field());
        assert_eq!(tk, a);
    }

    #[test]
    fn clifford_relations() {
        let c1 = clifford_algebra(&[q(1)]);
        c1.validate().unwrap();
        assert_eq!(c1.product_of_basis(1, 1), vec![q(1), q(0)]);

        let c2 = clifford_algebra(&[q(1), q(1)]);
        c2.validate().unwrap();
        assert_eq!(c2.dim(), 4);
        // (x1 x2)² = -1
        let x1x2 = c2.basis_vector(3);
        assert_eq!(c2.mul(&x1x2, &x1x2), vec![q(-1), q(0), q(0), q(0)]);
        // x2 x1 = -x1 x2
        assert_eq!(c2.product_of_basis(2, 1), vec![q(0), q(0), q(0), q(-1)]);

        let ext = clifford_algebra(&[q(0), q(0)]);
        ext.validate().unwrap();
        assert!(vector::is_zero(&ext.product_of_basis(1, 1)));
    }

    #[test]
    fn morphism_checks() {
        let a = Arc::new(clifford_algebra(&[q(1)]));
        AlgebraMorphism::identity(a.clone()).validate().unwrap();
        // x ↦ -x is an automorphism, x ↦ 2x is not.
        let flip = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        AlgebraMorphism::new(a.clone(), a.clone(), flip).unwrap();
        let dbl = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(AlgebraMorphism::new(a.clone(), a, dbl).is_err());
    }
}
