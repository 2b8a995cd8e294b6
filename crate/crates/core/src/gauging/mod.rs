//! Finite-group gauging of theories and the Hopf-Galois truncation test.

mod adjunction;
mod equivariant;
mod galois;
mod gauged;

pub use adjunction::{
    counit_component, counit_failure_witness, equivariant_quotient, phi, phi_psi_check, psi, random_equivariant_module,
    unit_component, Component, CounitWitness, PhiPsiReport,
};
pub use equivariant::{
    clifford_parity, exterior_parity, local_tensor_action, orbifold_invariants, trivial_theory, EquivariantAqft,
    EquivariantAqftError,
};
pub use galois::{
    canonical_map, is_hopf_galois, is_truncated, verdict_of, CanonicalMap, GaloisStatus, HopfGaloisVerdict,
    NotWellDefined, TruncatedVerdict,
};
pub use gauged::{gauge, truncate, GaugedTheory, Truncation, TruncationError};

#[cfg(test)]
mod tests;
