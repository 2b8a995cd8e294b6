//! Algebraic quantum field theories on orthogonal categories and their
//! prefactorization algebra counterparts.

pub mod models;
mod pfa;
mod theory;

pub use pfa::{
    check_pfa_axioms, flip_matrix, from_prefactorization, is_algebra_map_from_tensor, join_index, multiply_images,
    same_products, split_index, tensor_basis_product, tensor_unit, to_prefactorization, PfaAxiom, PfaReport,
    PfaViolation, PrefactorizationAlgebra,
};
pub use theory::{check_aqft, Aqft, AqftError, AqftMorphism, AqftReport, CommutatorWitness};
