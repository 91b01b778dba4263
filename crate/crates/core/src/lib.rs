pub mod amalgam;
pub mod bassserre;
pub mod error;
pub mod foldengine;
pub mod group;
pub mod limitprobe;
pub mod permsys;
pub mod psystem;
pub mod report;
pub mod thompson;

pub use error::{Error, Result};
pub use group::GroupElement;
