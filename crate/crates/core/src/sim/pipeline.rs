//! The full preparation procedures on a memory image.
//!
//! Magnitude loop, for `h = 1..=k`: query, `R_y` cascade, uncompute query,
//! circular shift. Then one query, the phase cascade (complex) or the
//! controlled-Z sign step (real-signed), and the uncompute query. That is
//! `2k + 2` queries in either mode.

use crate::angles::{ComplexAngleTree, EncodingMode};
use crate::bbqram::{CellEncoding, MemoryImage, QueryLedger};
use crate::matrix::ComplexMatrix;
use crate::weight_tree::WeightTree;
use crate::{Error, Result};

use super::gates;
use super::state::BranchState;

/// Modulus threshold below which branches are dropped in fixed-point runs.
pub const DEFAULT_PRUNE: f64 = 1e-15;

/// Whether angles pass through the `t`-bit codec or bypass quantization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    Fixed,
    Ideal,
}

impl std::str::FromStr for SimMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(SimMode::Fixed),
            "ideal" => Ok(SimMode::Ideal),
            other => Err(Error::Parse(format!("unknown simulation mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepareOptions {
    pub prune_below: Option<f64>,
    /// Use the bit-by-bit reference cascades instead of the composed ones.
    pub gatewise: bool,
}

impl PrepareOptions {
    /// Pruning on for fixed-point images, off for exact ones.
    pub fn for_encoding(encoding: CellEncoding) -> Self {
        let prune_below = match encoding {
            CellEncoding::Fixed { .. } => Some(DEFAULT_PRUNE),
            CellEncoding::Exact => None,
        };
        PrepareOptions { prune_below, gatewise: false }
    }
}

/// Result of a preparation run.
#[derive(Debug, Clone)]
pub struct Preparation {
    /// Final state: clean work registers, `v = 1`, leaf amplitudes on the address.
    pub state: BranchState,
    pub ledger: QueryLedger,
    /// Clean state after each magnitude iteration, `iterations[h - 1]`.
    pub iterations: Vec<BranchState>,
    /// Distinct addresses routed by the loading query of each magnitude iteration.
    pub accessed: Vec<Vec<u64>>,
    /// Addresses routed by the final phase or sign query.
    pub leaf_accessed: Vec<u64>,
}

/// Runs the procedure matching the image's mode.
pub fn prepare(image: &MemoryImage) -> Result<Preparation> {
    prepare_with(image, PrepareOptions::for_encoding(image.encoding()))
}

/// Complex two-step procedure: magnitudes, then leaf phases.
pub fn prepare_complex(image: &MemoryImage) -> Result<Preparation> {
    if image.mode() != EncodingMode::Complex {
        return Err(Error::WrongMode("real_signed"));
    }
    prepare(image)
}

/// Real-signed procedure: magnitudes, then a controlled-Z from the sign bit.
pub fn prepare_real(image: &MemoryImage) -> Result<Preparation> {
    if image.mode() != EncodingMode::RealSigned {
        return Err(Error::WrongMode("complex"));
    }
    prepare(image)
}

fn addresses(state: &BranchState) -> Vec<u64> {
    let mut out: Vec<u64> = state.iter().map(|(l, _)| l.address).collect();
    out.dedup();
    out
}

pub fn prepare_with(image: &MemoryImage, options: PrepareOptions) -> Result<Preparation> {
    let k = image.address_bits();
    let mut state =
        BranchState::init(k, image.mode(), image.encoding())?.with_pruning(options.prune_below);
    let mut ledger = QueryLedger::new(k);
    let mut iterations = Vec::with_capacity(k as usize);
    let mut accessed = Vec::with_capacity(k as usize);

    for _h in 1..=k {
        accessed.push(addresses(&state));
        image.query(&mut state, &mut ledger)?;
        if options.gatewise {
            gates::ry_cascade_gatewise(&mut state)?;
        } else {
            gates::ry_cascade(&mut state);
        }
        image.query(&mut state, &mut ledger)?;
        gates::circular_shift(&mut state)?;
        iterations.push(state.clone());
    }

    let leaf_accessed = addresses(&state);
    image.query(&mut state, &mut ledger)?;
    match (image.mode(), options.gatewise) {
        (EncodingMode::Complex, false) => gates::phase_cascade(&mut state)?,
        (EncodingMode::Complex, true) => gates::phase_cascade_gatewise(&mut state)?,
        (EncodingMode::RealSigned, _) => gates::controlled_z_sign(&mut state)?,
    }
    image.query(&mut state, &mut ledger)?;
    if !state.is_clean() {
        return Err(Error::DirtyWorkRegisters);
    }

    Ok(Preparation { state, ledger, iterations, accessed, leaf_accessed })
}

/// Preprocesses `m`, lays it out and runs the matching procedure.
///
/// `t` is ignored in [`SimMode::Ideal`].
pub fn prepare_matrix(
    m: &ComplexMatrix,
    mode: EncodingMode,
    sim: SimMode,
    t: u32,
) -> Result<Preparation> {
    let gamma = ComplexAngleTree::build(m, mode)?;
    let encoding = match sim {
        SimMode::Fixed => CellEncoding::fixed(t)?,
        SimMode::Ideal => CellEncoding::Exact,
    };
    prepare(&MemoryImage::from_tree(&gamma, encoding)?)
}

/// Tolerance used by [`marker_check`]: `k * 2^(1-t) + 1e-10`, or `1e-10` for
/// exact encodings.
pub fn marker_tolerance(state: &BranchState) -> f64 {
    let layout = state.layout();
    match layout.encoding {
        CellEncoding::Fixed { t } => layout.k as f64 * 2f64.powi(1 - t as i32) + 1e-10,
        CellEncoding::Exact => 1e-10,
    }
}

/// Checks the routing-marker state after magnitude iteration `h`.
///
/// For `h < k` every branch must have clean work registers, `v = 0`, and
/// address `0^{k-h-1} 1 bin_h(p)`; for `h = k`, `v = 1` and address
/// `bin_k(p)`. Each amplitude modulus must equal `sqrt(T_{h,p}) / ||A||_F`.
pub fn marker_check(state: &BranchState, h: u32, weights: &WeightTree) -> bool {
    let k = state.layout().k;
    if h == 0 || h > k || weights.depth() != k {
        return false;
    }
    let tol = marker_tolerance(state);
    let norm = weights.total().sqrt();
    let level = weights.level(h);
    let mut seen = vec![false; level.len()];
    for (label, amp) in state.iter() {
        if label.data != 0 || label.v != (h == k) {
            return false;
        }
        let p = if h < k {
            if label.address >> h != 1 {
                return false;
            }
            (label.address - (1 << h)) as usize
        } else {
            label.address as usize
        };
        if (amp.norm() - level[p].sqrt() / norm).abs() > tol {
            return false;
        }
        seen[p] = true;
    }
    level
        .iter()
        .zip(seen)
        .all(|(w, present)| present || w.sqrt() / norm <= tol)
}
