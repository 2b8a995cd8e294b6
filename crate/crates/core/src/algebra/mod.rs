//! Finite-dimensional algebras over the rationals, their modules and
//! bimodules, and degree-bounded presented algebras.

mod module;
pub mod presented;
mod structure;

pub use module::{
    endomorphism_algebra, flatten, hom_space, intertwiners, relative_tensor, unflatten, unit_iso, Bimodule, EndAlgebra,
    RelativeTensor, RightModule,
};
pub use presented::{
    rules_from_relations, Overflow, PresentationError, PresentedAlgebra, PresentedModule, RewriteRule, Word,
};
pub use structure::{
    clifford_algebra, tensor_algebra, tensor_all, AlgebraError, AlgebraMorphism, RationalAlgebra, StructureConstant,
};

/// Default degree bound for presented algebras.
pub const DEFAULT_DEGREE_BOUND: usize = 6;
