//! Classical simulation and verification of BBQRAM-based amplitude encoding.
//!
//! The pipeline mirrors the classical/quantum split of the preparation
//! procedure:
//!
//! 1. [`matrix`] loads and pads a complex matrix and computes squared moduli.
//! 2. [`weight_tree`] aggregates the squared moduli bottom-up.
//! 3. [`angles`] turns sibling weights into splitting angles and attaches the
//!    leaf phase (or sign) layer.
//! 4. [`bbqram`] quantizes everything into fixed-width memory cells and models
//!    the XOR query together with its routing cost.
//! 5. [`sim`] runs the magnitude loop and the phase (or sign) step on an exact
//!    sparse statevector.
//! 6. [`verify`] compares the prepared state to an independent oracle and
//!    produces resource reports and precision sweeps.
//!
//! ```
//! use bbqram_prep::{prepare_matrix, ComplexMatrix, EncodingMode, SimMode};
//! use bbqram_prep::verify::{oracle_state, state_error};
//!
//! let m = ComplexMatrix::from_real(1, 2, &[3.0, -4.0]).unwrap();
//! let run = prepare_matrix(&m, EncodingMode::RealSigned, SimMode::Ideal, 16).unwrap();
//! let err = state_error(&run.state, &oracle_state(&m).unwrap()).unwrap();
//! assert!(err < 1e-12);
//! assert_eq!(run.ledger.query_count(), 4);
//! ```

pub mod angles;
pub mod bbqram;
pub mod cli;
mod error;
pub mod example;
pub mod fixedpoint;
pub mod matrix;
pub mod random;
pub mod sim;
pub mod verify;
pub mod weight_tree;

pub use angles::{ComplexAngleTree, EncodingMode};
pub use bbqram::{CellEncoding, MemoryImage, QueryLedger};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use sim::{prepare, prepare_matrix, BranchState, Preparation, SimMode};
pub use weight_tree::WeightTree;
