//! Seeded random test data. Everything here is deterministic given the
//! seed, so reports that depend on it are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Matrix, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut SeededRng, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound))
}

pub fn vector(rng: &mut SeededRng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| small_int(rng, bound)).collect()
}

pub fn matrix(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_int(rng, bound))
}

/// A random integer matrix with determinant ±1 (product of unit triangular
/// factors and a permutation).
pub fn invertible(rng: &mut SeededRng, n: usize) -> Matrix {
    let lower = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Greater => small_int(rng, 1),
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Less => Rational::zero(),
    });
    let upper = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Less => small_int(rng, 1),
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Greater => Rational::zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    &(&lower * &upper) * &Matrix::permutation(&perm)
}

pub fn index(rng: &mut SeededRng, n: usize) -> usize {
    rng.gen_range(0..n)
}
