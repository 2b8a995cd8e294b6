//! Local-to-global extension: the universal algebra as a colimit over the
//! slice of the monoidal envelope, descent data over it, and the loop
//! category of a gauged trivial theory.

pub mod descent;
pub mod loops;
pub mod prime_field;
pub mod universal;

#[cfg(test)]
mod tests;

pub use descent::{
    descent_check, descent_hom, factorization_right_adjoint, module_to_descent, presented_hom, tuple_action,
    DescentError, DescentHom, DescentObject, DescentReport, DescentViolation, TransportError,
};
pub use loops::{
    coaction_to_theta, count_simple_loop_objects, groupoid_algebra, loop_category_check, random_theta_object,
    theta_to_coaction, twisted_sector, LoopError, LoopModel, LoopReport, LoopViolation, SimpleCount, ThetaObject,
};
pub use universal::{
    check_cocone, free_product_fixture, restrict_along, tuple_algebra, tuple_map, universal_algebra, CoconeMap,
    CoconeReport, UniversalAlgebraResult, UniversalError,
};

/// Default bound when searching for a splitting prime.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
