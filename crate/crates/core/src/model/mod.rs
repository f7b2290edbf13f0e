//! Composite-system layout, canonical operators and environment states.

mod operators;
mod space;
mod states;

pub use operators::{
    extend_subsystem, fock_vector, ladder, ladder_sparse, lift, lift_sparse, number, pauli, sigma_pm, Operator, Sign,
    SparseOperator,
};
pub use space::{Factor, SpaceSpec};
pub use states::{env_state, DensityMatrix, EnvState, STATE_TOLERANCE};
