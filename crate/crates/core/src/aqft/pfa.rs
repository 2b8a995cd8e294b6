use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::theory::{check_aqft, Aqft, AqftError};
use crate::algebra::{AlgebraMorphism, RationalAlgebra};
use crate::exactlin::{vector, Matrix, Rational};
use crate::fincat::OrthogonalCategory;
use crate::operad::{all_permutations, compose, operations_into, permute, PFOperation};

/// Factorization products `𝔉(f̱): 𝔉(c_1) ⊗ ... ⊗ 𝔉(c_n) -> 𝔉(t)` for all
/// operations of arity at most `max_arity`. Higher arities are recovered
/// from the unary ones by [`PrefactorizationAlgebra::product`].
#[derive(Debug, Clone)]
pub struct PrefactorizationAlgebra {
    pub site: OrthogonalCategory,
    pub algebras: Vec<Arc<RationalAlgebra>>,
    pub max_arity: usize,
    pub products: BTreeMap<PFOperation, Matrix>,
}

impl PrefactorizationAlgebra {
    pub fn source_dims(&self, op: &PFOperation) -> Vec<usize> {
        op.sources.iter().map(|&c| self.algebras[c].dim()).collect()
    }

    /// The stored product, or the product of the unary images for
    /// operations above the arity bound.
    pub fn product(&self, op: &PFOperation) -> Option<Matrix> {
        if let Some(m) = self.products.get(op) {
            return Some(m.clone());
        }
        let unary: Option<Vec<Matrix>> = op
            .morphisms
            .iter()
            .zip(&op.sources)
            .map(|(&f, &c)| {
                self.products
                    .get(&PFOperation {
                        target: op.target,
                        sources: vec![c],
                        morphisms: vec![f],
                    })
                    .cloned()
            })
            .collect();
        Some(multiply_images(&self.algebras[op.target], &unary?))
    }
}

/// Matrix of `a_1 ⊗ ... ⊗ a_n ↦ m_1(a_1) ··· m_n(a_n)`.
pub fn multiply_images(target: &RationalAlgebra, maps: &[Matrix]) -> Matrix {
    let dims: Vec<usize> = maps.iter().map(Matrix::cols).collect();
    let total: usize = dims.iter().product();
    let columns: Vec<Vec<Vec<Rational>>> = maps.iter().map(Matrix::columns).collect();
    let cols: Vec<Vec<Rational>> = (0..total)
        .map(|flat| {
            split_index(flat, &dims)
                .iter()
                .enumerate()
                .fold(target.unit().to_vec(), |acc, (k, &i)| target.mul(&acc, &columns[k][i]))
        })
        .collect();
    Matrix::from_columns(target.dim(), &cols)
}

/// Left-major multi-index of a flat tensor index.
pub fn split_index(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

pub fn join_index(multi: &[usize], dims: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// `e_I · e_J` in `A_1 ⊗ ... ⊗ A_n`.
pub fn tensor_basis_product(algebras: &[&RationalAlgebra], i: usize, j: usize) -> Vec<Rational> {
    let dims: Vec<usize> = algebras.iter().map(|a| a.dim()).collect();
    let (ii, jj) = (split_index(i, &dims), split_index(j, &dims));
    algebras.iter().enumerate().fold(vec![Rational::one()], |acc, (k, a)| {
        vector::kron(&acc, &a.product_of_basis(ii[k], jj[k]))
    })
}

pub fn tensor_unit(algebras: &[&RationalAlgebra]) -> Vec<Rational> {
    algebras
        .iter()
        .fold(vec![Rational::one()], |acc, a| vector::kron(&acc, a.unit()))
}

/// Whether `m` is a unital algebra map out of the tensor product.
pub fn is_algebra_map_from_tensor(sources: &[&RationalAlgebra], target: &RationalAlgebra, m: &Matrix) -> bool {
    let total: usize = sources.iter().map(|a| a.dim()).product();
    if m.shape() != (target.dim(), total) || m.apply(&tensor_unit(sources)) != target.unit() {
        return false;
    }
    let cols = m.columns();
    (0..total)
        .all(|i| (0..total).all(|j| m.apply(&tensor_basis_product(sources, i, j)) == target.mul(&cols[i], &cols[j])))
}

/// The matrix `τ_σ` sending `⊗_k A_{c_σ(k)}` to `⊗_i A_{c_i}`: slot `k` of
/// the source moves to slot `σ(k)`.
pub fn flip_matrix(dims: &[usize], sigma: &[usize]) -> Matrix {
    let permuted: Vec<usize> = sigma.iter().map(|&i| dims[i]).collect();
    let total: usize = dims.iter().product();
    let mut perm = vec![0; total];
    for (flat, p) in perm.iter_mut().enumerate() {
        let src = split_index(flat, &permuted);
        let mut dst = vec![0; dims.len()];
        for (k, &s) in sigma.iter().enumerate() {
            dst[s] = src[k];
        }
        *p = join_index(&dst, dims);
    }
    Matrix::permutation(&perm)
}

pub fn to_prefactorization(a: &Aqft, max_arity: usize) -> Result<PrefactorizationAlgebra, AqftError> {
    let report = check_aqft(a);
    if let Some(w) = report.violations.first() {
        return Err(AqftError::NotOrthogonalCommutative { f1: w.f1, f2: w.f2 });
    }
    let base = a.site.base();
    let mut products = BTreeMap::new();
    for t in base.objects() {
        for op in operations_into(&a.site, t, max_arity) {
            let maps: Vec<Matrix> = op.morphisms.iter().map(|&f| a.maps[f].matrix.clone()).collect();
            let m = multiply_images(&a.algebras[t], &maps);
            let sources: Vec<&RationalAlgebra> = op.sources.iter().map(|&c| &*a.algebras[c]).collect();
            debug_assert!(is_algebra_map_from_tensor(&sources, &a.algebras[t], &m));
            products.insert(op, m);
        }
    }
    Ok(PrefactorizationAlgebra {
        site: a.site.clone(),
        algebras: a.algebras.clone(),
        max_arity,
        products,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PfaAxiom {
    AlgebraMap,
    Unit,
    Composition,
    Permutation,
}

#[derive(Debug, Clone, Serialize)]
pub struct PfaViolation {
    pub axiom: PfaAxiom,
    pub operation: PFOperation,
    pub inners: Vec<PFOperation>,
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PfaReport {
    pub max_arity: usize,
    pub instances_checked: usize,
    pub violations: Vec<PfaViolation>,
}

impl PfaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_pfa_axioms(f: &PrefactorizationAlgebra, max_arity: usize) -> PfaReport {
    let bound = max_arity.min(f.max_arity);
    let base = f.site.base();
    let mut report = PfaReport {
        max_arity: bound,
        instances_checked: 0,
        violations: Vec::new(),
    };
    let fail = |axiom, operation: &PFOperation, inners: &[PFOperation], permutation: &[usize]| PfaViolation {
        axiom,
        operation: operation.clone(),
        inners: inners.to_vec(),
        permutation: permutation.to_vec(),
    };
    let ops: Vec<PFOperation> = base
        .objects()
        .flat_map(|t| operations_into(&f.site, t, bound))
        .collect();
    for op in &ops {
        let Some(m) = f.products.get(op) else {
            report.violations.push(fail(PfaAxiom::AlgebraMap, op, &[], &[]));
            continue;
        };
        report.instances_checked += 1;
        let sources: Vec<&RationalAlgebra> = op.sources.iter().map(|&c| &*f.algebras[c]).collect();
        if !is_algebra_map_from_tensor(&sources, &f.algebras[op.target], m) {
            report.violations.push(fail(PfaAxiom::AlgebraMap, op, &[], &[]));
        }
        if op.arity() == 1 && base.is_identity(op.morphisms[0]) {
            report.instances_checked += 1;
            if !m.is_identity() {
                report.violations.push(fail(PfaAxiom::Unit, op, &[], &[]));
            }
        }
        let dims = f.source_dims(op);
        for sigma in all_permutations(op.arity()).into_iter().skip(1) {
            report.instances_checked += 1;
            let moved = permute(op, &sigma).expect("valid permutation");
            let ok = f
                .products
                .get(&moved)
                .is_some_and(|pm| *pm == m * &flip_matrix(&dims, &sigma));
            if !ok {
                report.violations.push(fail(PfaAxiom::Permutation, op, &[], &sigma));
            }
        }
        let inner_options: Vec<Vec<&PFOperation>> = op
            .sources
            .iter()
            .map(|&c| ops.iter().filter(|g| g.target == c).collect())
            .collect();
        let mut choice: Vec<&PFOperation> = Vec::with_capacity(op.arity());
        compositions(&inner_options, bound, &mut choice, &mut |inners| {
            report.instances_checked += 1;
            let owned: Vec<PFOperation> = inners.iter().map(|&g| g.clone()).collect();
            let composite = compose(&f.site, op, &owned).expect("operations compose");
            let inner_mats: Vec<&Matrix> = inners.iter().map(|g| &f.products[*g]).collect();
            let rhs = m * &Matrix::kronecker_all(inner_mats);
            if f.products.get(&composite) != Some(&rhs) {
                report.violations.push(fail(PfaAxiom::Composition, op, &owned, &[]));
            }
        });
    }
    report
}

fn compositions<'a>(
    options: &[Vec<&'a PFOperation>],
    budget: usize,
    choice: &mut Vec<&'a PFOperation>,
    emit: &mut impl FnMut(&[&'a PFOperation]),
) {
    let k = choice.len();
    if k == options.len() {
        emit(choice);
        return;
    }
    for &g in &options[k] {
        if g.arity() <= budget {
            choice.push(g);
            compositions(options, budget - g.arity(), choice, emit);
            choice.pop();
        }
    }
}

pub fn from_prefactorization(f: &PrefactorizationAlgebra) -> Result<Aqft, AqftError> {
    let report = check_pfa_axioms(f, f.max_arity);
    if let Some(v) = report.violations.first() {
        return Err(AqftError::PfaAxiom(v.axiom));
    }
    let base = f.site.base();
    let maps = base
        .morphism_ids()
        .map(|m| {
            let op = PFOperation {
                target: base.target(m),
                sources: vec![base.source(m)],
                morphisms: vec![m],
            };
            AlgebraMorphism::new_unchecked(
                f.algebras[base.source(m)].clone(),
                f.algebras[base.target(m)].clone(),
                f.products[&op].clone(),
            )
        })
        .collect();
    let a = Aqft::new(f.site.clone(), f.algebras.clone(), maps)?;
    if let Some(w) = check_aqft(&a).violations.first() {
        return Err(AqftError::NotOrthogonalCommutative { f1: w.f1, f2: w.f2 });
    }
    Ok(a)
}

/// Whether two prefactorization algebras agree on every stored operation.
pub fn same_products(a: &PrefactorizationAlgebra, b: &PrefactorizationAlgebra) -> bool {
    a.algebras == b.algebras && a.products == b.products
}
