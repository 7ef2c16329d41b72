//! Exact sparse statevector simulation of the QPU registers.
//!
//! After every uncompute query the work registers return to zero, so the
//! state factorizes into clean work registers times an address superposition.
//! Keeping only nonzero branches bounds the branch count by `K` regardless of
//! the precision `t`.

mod gates;
mod pipeline;
mod state;

pub use gates::{
    circular_shift, controlled_z_sign, phase_cascade, phase_cascade_gatewise, ry_cascade,
    ry_cascade_gatewise,
};
pub use pipeline::{
    marker_check, marker_tolerance, prepare, prepare_complex, prepare_matrix, prepare_real,
    prepare_with, PrepareOptions, Preparation, SimMode, DEFAULT_PRUNE,
};
pub use state::{BasisLabel, BranchState, RegisterLayout};
