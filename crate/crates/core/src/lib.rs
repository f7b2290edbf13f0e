//! Reduced Heisenberg-picture dynamics of a subsystem S coupled to an
//! environment R, with checks for environment-dependent symmetries and
//! environment-dependent constants of the motion.

pub mod constants;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod model;
pub mod scenario;
pub mod symmetry;
pub mod verdict;

pub use error::{Error, Result};
