//! Finite permutation and unitriangular matrix groups, chains of them, and
//! the normal-subgroup condition on consecutive levels.

mod chain;
mod group;
mod matrix;
mod perm;

pub use chain::{alt_chain, c2_in_c4, condition51, ut_chain, ChainKind, ChainSpec};
pub use group::{
    alternating, closure, normal_closure, symmetric, symmetric_on, trivial, unitriangular, FiniteGroup, ORDER_GUARD,
};
pub use matrix::UtMatrix;
pub use perm::Perm;
pub use crate::psystem::{finite_psystem, sym7_control_psystem};
