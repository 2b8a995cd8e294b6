use std::sync::Arc;

use super::group::FiniteGroup;
use crate::algebra::{tensor_algebra, RationalAlgebra};
use crate::exactlin::{vector, Matrix, Rational};

/// A finite-dimensional Hopf algebra given by matrices in the basis of
/// `algebra`. Tensor squares use left-major coordinates.
#[derive(Debug, Clone)]
pub struct HopfData {
    pub algebra: Arc<RationalAlgebra>,
    /// `dim² x dim`
    pub coproduct: Matrix,
    /// `1 x dim`
    pub counit: Matrix,
    pub antipode: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("matrix shapes do not match the algebra")]
    Shape,
    #[error("coproduct is not coassociative")]
    NotCoassociative,
    #[error("counit law fails")]
    Counit,
    #[error("antipode law fails")]
    Antipode,
    #[error("coproduct or counit is not an algebra map")]
    NotBialgebra,
}

impl HopfData {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Multiplication `A ⊗ A -> A`.
    pub fn multiplication(&self) -> Matrix {
        multiplication_matrix(&self.algebra)
    }

    pub fn validate(&self) -> Result<(), HopfError> {
        let d = self.dim();
        if self.coproduct.shape() != (d * d, d) || self.counit.shape() != (1, d) || self.antipode.shape() != (d, d) {
            return Err(HopfError::Shape);
        }
        let id = Matrix::identity(d);
        let delta = &self.coproduct;
        if &delta.kronecker(&id) * delta != &id.kronecker(delta) * delta {
            return Err(HopfError::NotCoassociative);
        }
        if !(&self.counit.kronecker(&id) * delta).is_identity() || !(&id.kronecker(&self.counit) * delta).is_identity()
        {
            return Err(HopfError::Counit);
        }
        let mu = self.multiplication();
        let unit = Matrix::from_columns(d, &[self.algebra.unit().to_vec()]);
        let eta_eps = &unit * &self.counit;
        if &(&mu * &self.antipode.kronecker(&id)) * delta != eta_eps
            || &(&mu * &id.kronecker(&self.antipode)) * delta != eta_eps
        {
            return Err(HopfError::Antipode);
        }
        let square = tensor_algebra(&self.algebra, &self.algebra);
        if delta.apply(self.algebra.unit()) != square.unit()
            || self.counit.apply(self.algebra.unit()) != vec![Rational::one()]
        {
            return Err(HopfError::NotBialgebra);
        }
        for i in 0..d {
            for j in 0..d {
                let ab = self.algebra.product_of_basis(i, j);
                let lhs = delta.apply(&ab);
                let rhs = square.mul(&delta.column(i), &delta.column(j));
                if lhs != rhs {
                    return Err(HopfError::NotBialgebra);
                }
                let e = |v: &[Rational]| self.counit.apply(v)[0].clone();
                if e(&ab) != &e(&self.algebra.basis_vector(i)) * &e(&self.algebra.basis_vector(j)) {
                    return Err(HopfError::NotBialgebra);
                }
            }
        }
        Ok(())
    }
}

/// Matrix of `a ⊗ b ↦ ab`.
pub fn multiplication_matrix(a: &RationalAlgebra) -> Matrix {
    let d = a.dim();
    let cols: Vec<Vec<Rational>> = (0..d * d).map(|k| a.product_of_basis(k / d, k % d)).collect();
    Matrix::from_columns(d, &cols)
}

/// `K[G]` with basis the group elements.
pub fn group_algebra(g: &FiniteGroup) -> RationalAlgebra {
    let n = g.order();
    let left = g
        .elements()
        .map(|a| {
            let perm: Vec<usize> = g.elements().map(|b| g.mul(a, b)).collect();
            Matrix::permutation(&perm)
        })
        .collect();
    RationalAlgebra::from_left_matrices(left, vector::unit(n, g.identity())).expect("group algebra")
}

/// `O(G)`: delta functions `e_h` with the pointwise product.
pub fn function_algebra(g: &FiniteGroup) -> RationalAlgebra {
    let n = g.order();
    let left = (0..n)
        .map(|h| {
            let mut m = Matrix::zeros(n, n);
            m.set(h, h, Rational::one());
            m
        })
        .collect();
    RationalAlgebra::from_left_matrices(left, vec![Rational::one(); n]).expect("function algebra")
}

/// `O(G)` with `Δ(e_h) = Σ_{xy=h} e_x ⊗ e_y`, `ε(e_h) = δ_{h,e}`,
/// `S(e_h) = e_{h⁻¹}`.
pub fn function_hopf_algebra(g: &FiniteGroup) -> HopfData {
    let n = g.order();
    let mut coproduct = Matrix::zeros(n * n, n);
    for x in g.elements() {
        for y in g.elements() {
            coproduct.set(x * n + y, g.mul(x, y), Rational::one());
        }
    }
    let mut counit = Matrix::zeros(1, n);
    counit.set(0, g.identity(), Rational::one());
    let inv: Vec<usize> = g.elements().map(|h| g.inv(h)).collect();
    HopfData {
        algebra: Arc::new(function_algebra(g)),
        coproduct,
        counit,
        antipode: Matrix::permutation(&inv),
    }
}

/// `K[G]` with `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_hopf_algebra(g: &FiniteGroup) -> HopfData {
    let n = g.order();
    let mut coproduct = Matrix::zeros(n * n, n);
    for x in g.elements() {
        coproduct.set(x * n + x, x, Rational::one());
    }
    let inv: Vec<usize> = g.elements().map(|h| g.inv(h)).collect();
    HopfData {
        algebra: Arc::new(group_algebra(g)),
        coproduct,
        counit: Matrix::from_fn(1, n, |_, _| Rational::one()),
        antipode: Matrix::permutation(&inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_identities_hold() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric(3),
        ] {
            function_hopf_algebra(&g).validate().unwrap();
            group_hopf_algebra(&g).validate().unwrap();
        }
    }

    #[test]
    fn group_algebra_shapes() {
        assert_eq!(group_algebra(&FiniteGroup::trivial()), RationalAlgebra::field());
        let z2 = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(z2.product_of_basis(1, 1), z2.unit().to_vec());
        let s3 = group_algebra(&FiniteGroup::symmetric(3));
        assert_eq!(s3.dim(), 6);
        let (a, b) = s3.noncommuting_pair().unwrap();
        assert_ne!(s3.product_of_basis(a, b), s3.product_of_basis(b, a));
    }

    #[test]
    fn counit_of_unit_is_one() {
        let h = function_hopf_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(h.counit.apply(h.algebra.unit()), vec![Rational::one()]);
        assert!(h.algebra.is_commutative());
    }

    #[test]
    fn broken_antipode_is_caught() {
        let mut h = function_hopf_algebra(&FiniteGroup::cyclic(3));
        h.antipode = Matrix::identity(3);
        assert_eq!(h.validate(), Err(HopfError::Antipode));
    }
}
