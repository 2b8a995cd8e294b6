//! Arithmetic in `F_p` and the splitting of a commutative semisimple
//! `F_p`-algebra into primitive idempotents.

use rand::Rng;

use crate::random::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut out = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        out
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The least prime `p ≤ bound` with `p ∤ order` and `p ≡ 1 (mod exponent)`.
pub fn splitting_prime(order: u64, exponent: u64, bound: u64) -> Option<u64> {
    (2..=bound).find(|&p| is_prime(p) && !order.is_multiple_of(p) && p % exponent == 1 % exponent)
}

/// Row reduction in place; returns the pivot columns.
pub fn rref(f: PrimeField, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let s = rows[i][c];
                for k in 0..cols {
                    let t = f.mul(s, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: PrimeField, vectors: &[Vec<u64>]) -> usize {
    rref(f, &mut vectors.to_vec()).len()
}

/// A basis of `{x : Mx = 0}` for `M` given by rows of length `cols`.
pub fn kernel(f: PrimeField, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(f, &mut reduced);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                x[pc] = f.sub(0, row[free]);
            }
            x
        })
        .collect()
}

/// A finite-dimensional algebra over `F_p` given by structure constants:
/// `table[i][j]` is `b_i b_j` in the basis.
#[derive(Debug, Clone)]
pub struct FpAlgebra {
    pub field: PrimeField,
    pub table: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
}

impl FpAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let s = f.mul(x, y);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    if t != 0 {
                        *o = f.add(*o, f.mul(s, t));
                    }
                }
            }
        }
        out
    }

    /// A basis of the center.
    pub fn center(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        let f = self.field;
        let mut rows = Vec::new();
        for j in 0..n {
            // Σ_i z_i (b_i b_j − b_j b_i) = 0, one row per output coordinate.
            for k in 0..n {
                let row: Vec<u64> = (0..n)
                    .map(|i| f.sub(self.table[i][j][k], self.table[j][i][k]))
                    .collect();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        kernel(f, &rows, n)
    }
}

fn combine(f: PrimeField, terms: &[(u64, &Vec<u64>)], n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for (s, v) in terms {
        for (o, &x) in out.iter_mut().zip(v.iter()) {
            *o = f.add(*o, f.mul(*s, x));
        }
    }
    out
}

/// Splits the unit of the commutative subalgebra spanned by `basis`
/// (closed under the product of `alg`, containing `alg.unit`) into
/// primitive idempotents, by repeatedly splitting an idempotent `e` along
/// the eigenvalues of a random element of `eZ`. Requires the subalgebra to
/// be split semisimple over `F_p`.
pub fn primitive_idempotents(
    alg: &FpAlgebra,
    basis: &[Vec<u64>],
    rng: &mut SeededRng,
    attempts: usize,
) -> Option<Vec<Vec<u64>>> {
    let f = alg.field;
    let n = alg.dim();
    let mut pending = vec![alg.unit.clone()];
    let mut done = Vec::new();
    while let Some(e) = pending.pop() {
        let corner: Vec<Vec<u64>> = basis.iter().map(|b| alg.mul(&e, b)).collect();
        let corner_dim = rank(f, &corner);
        if corner_dim == 1 {
            done.push(e);
            continue;
        }
        let mut split = None;
        for _ in 0..attempts {
            let terms: Vec<(u64, &Vec<u64>)> = corner.iter().map(|c| (rng.gen_range(0..f.p), c)).collect();
            let z = combine(f, &terms, n);
            let roots = eigenvalues(alg, &e, &z);
            if roots.len() > 1 {
                split = Some((z, roots));
                break;
            }
        }
        let (z, roots) = split?;
        for &lambda in &roots {
            let mut idem = e.clone();
            for &mu in roots.iter().filter(|&&mu| mu != lambda) {
                let shifted = combine(f, &[(1, &z), (f.sub(0, mu), &e)], n);
                let scale = f.inv(f.sub(lambda, mu));
                idem = alg.mul(&idem, &shifted).iter().map(|&x| f.mul(x, scale)).collect();
            }
            pending.push(idem);
        }
    }
    Some(done)
}

/// The distinct roots in `F_p` of the minimal polynomial of `z` in `eZ`
/// (unit `e`), or a single root when that polynomial does not split into
/// distinct linear factors.
fn eigenvalues(alg: &FpAlgebra, e: &[u64], z: &[u64]) -> Vec<u64> {
    let f = alg.field;
    let mut powers = vec![e.to_vec()];
    let coeffs = loop {
        let next = alg.mul(powers.last().expect("nonempty"), z);
        // Solve Σ c_k z^k = z^m for the first dependent power.
        let n = alg.dim();
        let m = powers.len();
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = powers.iter().map(|p| p[i]).collect();
                row.push(next[i]);
                row
            })
            .collect();
        let pivots = rref(f, &mut rows);
        if !pivots.contains(&m) {
            let mut c = vec![0; m];
            for (row, &pc) in rows.iter().zip(&pivots) {
                c[pc] = row[m];
            }
            break c;
        }
        powers.push(next);
    };
    // t^m − Σ c_k t^k
    let m = coeffs.len();
    let value = |t: u64| {
        let mut acc = f.pow(t, m as u64);
        for (k, &c) in coeffs.iter().enumerate() {
            acc = f.sub(acc, f.mul(c, f.pow(t, k as u64)));
        }
        acc
    };
    let roots: Vec<u64> = (0..f.p).filter(|&t| value(t) == 0).collect();
    if roots.len() == m {
        roots
    } else {
        roots.into_iter().take(1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn primes() {
        assert_eq!(splitting_prime(6, 6, 100), Some(7));
        assert_eq!(splitting_prime(2, 2, 100), Some(3));
        assert_eq!(splitting_prime(4, 4, 100), Some(5));
        assert_eq!(splitting_prime(1, 1, 100), Some(2));
        assert_eq!(splitting_prime(6, 6, 6), None);
    }

    #[test]
    fn splits_product_of_fields() {
        // F_5 × F_5 × F_5 in a skewed basis: b0 = 1, b1 = (0,1,2), b2 = (0,0,1).
        let f = PrimeField::new(5);
        let coords = |v: [u64; 3]| -> Vec<u64> {
            // Solve a·(1,1,1) + b·(0,1,2) + c·(0,0,1) = v.
            let a = v[0];
            let b = f.sub(v[1], a);
            let c = f.sub(f.sub(v[2], a), f.mul(2, b));
            vec![a, b, c]
        };
        let elems = [[1u64, 1, 1], [0, 1, 2], [0, 0, 1]];
        let table = elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .map(|y| coords([f.mul(x[0], y[0]), f.mul(x[1], y[1]), f.mul(x[2], y[2])]))
                    .collect()
            })
            .collect();
        let alg = FpAlgebra {
            field: f,
            table,
            unit: vec![1, 0, 0],
        };
        assert_eq!(alg.center().len(), 3);
        let basis: Vec<Vec<u64>> = (0..3).map(|i| (0..3).map(|j| u64::from(i == j)).collect()).collect();
        let idems = primitive_idempotents(&alg, &basis, &mut random::rng(0), 20).unwrap();
        assert_eq!(idems.len(), 3);
        for e in &idems {
            assert_eq!(&alg.mul(e, e), e);
        }
    }
}
