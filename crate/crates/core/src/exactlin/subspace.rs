use super::matrix::{vector, Matrix, Rref};
use super::rational::Rational;

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis, so that equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let rows: Vec<Vec<Rational>> = vectors.into_iter().collect();
        let m = Matrix::from_rows(ambient, rows).expect("vector length differs from ambient");
        Self::from_row_matrix(&m)
    }

    /// Span of the rows of `m`.
    pub fn from_row_matrix(m: &Matrix) -> Self {
        let Rref {
            rank,
            reduced,
            pivot_columns,
        } = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: reduced.select_rows(&(0..rank).collect::<Vec<_>>()),
            pivots: pivot_columns,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors (the RREF rows).
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.basis.to_rows()
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Subtracts the basis rows to clear every pivot entry of `v`. The
    /// result is zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut out, &-c, self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "contains: length mismatch");
        vector::is_zero(&self.reduce(v))
    }

    /// Coordinates of a member with respect to the RREF basis: these are
    /// the entries at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn vector_from_coordinates(&self, coords: &[Rational]) -> Vec<Rational> {
        self.basis.transpose().apply(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.to_rows().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_row_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve a·B1 = b·B2 via the kernel of [B1; -B2]^T.
        let stacked = self.basis.vstack(&(-&other.basis));
        let kernel = stacked.transpose().kernel();
        let b1t = self.basis.transpose();
        let vectors = kernel.basis().into_iter().map(|k| b1t.apply(&k[..self.dim()]));
        Subspace::from_vectors(self.ambient, vectors)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        Subspace::from_vectors(map.rows(), self.basis().iter().map(|v| map.apply(v)))
    }
}

/// A quotient `V / U` with explicit projection and a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    /// `dim x ambient`; its kernel is `U`.
    pub projection: Matrix,
    /// `ambient x dim`; `projection * section = id`.
    pub section: Matrix,
}

/// Quotient of `Q^ambient` by `sub`. The complement is spanned by the
/// standard basis vectors at the non-pivot columns of `sub`.
pub fn quotient(sub: &Subspace) -> Quotient {
    let n = sub.ambient();
    let mut is_pivot = vec![false; n];
    for &p in sub.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut projection = Matrix::zeros(free.len(), n);
    for j in 0..n {
        let reduced = sub.reduce(&vector::unit(n, j));
        for (i, &f) in free.iter().enumerate() {
            projection.set(i, j, reduced[f].clone());
        }
    }
    let mut section = Matrix::zeros(n, free.len());
    for (i, &f) in free.iter().enumerate() {
        section.set(f, i, Rational::one());
    }
    Quotient {
        dim: free.len(),
        projection,
        section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::q;

    #[test]
    fn quotient_by_diagonal() {
        let u = Subspace::from_vectors(3, vec![vec![q(1), q(1), q(1)]]);
        let qt = quotient(&u);
        assert_eq!(qt.dim, 2);
        assert!(vector::is_zero(&qt.projection.apply(&[q(1), q(1), q(1)])));
        assert!((&qt.projection * &qt.section).is_identity());
        assert_eq!(qt.projection.kernel(), u);
    }

    #[test]
    fn quotient_extremes() {
        assert_eq!(quotient(&Subspace::zero(2)).dim, 2);
        assert_eq!(quotient(&Subspace::full(2)).dim, 0);
    }

    #[test]
    fn coordinates_and_membership() {
        let u = Subspace::from_vectors(3, vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(1)]]);
        assert_eq!(u.dim(), 2);
        let v = vec![q(2), q(5), q(1)];
        let c = u.coordinates(&v).unwrap();
        assert_eq!(u.vector_from_coordinates(&c), v);
        assert!(!u.contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::from_vectors(3, vec![vector::unit(3, 0), vector::unit(3, 1)]);
        let yz = Subspace::from_vectors(3, vec![vector::unit(3, 1), vector::unit(3, 2)]);
        assert_eq!(
            xy.intersection(&yz),
            Subspace::from_vectors(3, vec![vector::unit(3, 1)])
        );
        assert_eq!(xy.sum(&yz), Subspace::full(3));
    }
}
