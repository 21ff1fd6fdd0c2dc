//! Lie algebras by structure constants, actions, cocycles and formal groups.

pub mod algebra;
pub mod cocycle;
pub mod group;

pub use algebra::{semidirect, LieAction, LieAlgebra};
pub use cocycle::{check_cocycle_law, LieCocycle};
pub use group::{bch, bch_many, GroupLog};
