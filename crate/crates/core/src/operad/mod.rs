//! The prefactorization operad of an orthogonal category and its monoidal
//! envelope.

mod axioms;
pub mod envelope;
mod operation;

pub use axioms::{check_operad_axioms, Axiom, OperadReport, OperadViolation};
pub use envelope::{
    braiding, compose_envelope, envelope_functor, envelope_hom, envelope_slice, monoidal_envelope, EnvelopeFunctor,
    EnvelopeMorphism, EnvelopeSlice, MonoidalEnvelope, SliceMorphism, SliceObject, Tuple,
};
pub use operation::{
    all_permutations, compose, compose_permutations, enumerate_operations, is_permutation, operations_into, permute,
    OperadError, PFOperation,
};

/// Default bound on envelope tuple length.
pub const DEFAULT_TUPLE_CAP: usize = 4;
