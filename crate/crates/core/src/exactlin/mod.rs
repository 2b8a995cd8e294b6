//! Exact linear algebra over the rationals.
//!
//! Everything downstream is finite-dimensional and computed in coordinates:
//! vectors are `Vec<Rational>`, linear maps are [`Matrix`] values acting on
//! columns, and tensor products use the left-factor-major basis order
//! produced by [`Matrix::kronecker`].

mod matrix;
mod rational;
mod subspace;

pub use matrix::{vector, Matrix, Rref, ShapeError};
pub use rational::{q, ParseRationalError, Rational};
pub use subspace::{quotient, Quotient, Subspace};
