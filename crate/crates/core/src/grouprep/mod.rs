//! Finite groups, their Hopf algebras, actions on algebras,
//! representations, equivariant modules and induction.

mod action;
mod coaction;
mod equivariant;
mod group;
mod hopf;
pub mod induced;
mod rep;

pub use action::{invariants, ActionError, GroupAction, Invariants};
pub use coaction::{action_from_coaction, coaction_from_action, trivial_coaction, Coaction, CoactionError};
pub use equivariant::{equivariant_hom_space, EquivariantError, EquivariantModule};
pub use group::{all_homomorphisms, FiniteGroup, GroupError};
pub use hopf::{
    function_algebra, function_hopf_algebra, group_algebra, group_hopf_algebra, multiplication_matrix, HopfData,
    HopfError,
};
pub use induced::{induced_coinduced_check, CosetError, CosetInduction, InducedCoinducedReport};
pub use rep::{building_blocks, random_representation, RepError, Representation};
