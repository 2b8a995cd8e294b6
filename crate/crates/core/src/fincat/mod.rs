//! Finite categories, functors, orthogonality relations and slices.

mod category;
pub mod circle;
mod orthogonal;

pub use category::{
    slice_category, CategoryError, FinCategory, FinFunctor, FunctorError, MorId, Morphism, ObjId, Slice,
};
pub use circle::{build_circle_model, CircleModel, CircleSizeError, CyclicArc};
pub use orthogonal::{
    closure, validate_orthogonal_category, OrthogonalCategory, OrthogonalityError, OrthogonalityReport,
    OrthogonalityViolation,
};
