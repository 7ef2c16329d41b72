//! Oracle states, error measurement and resource accounting.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::angles::EncodingMode;
use crate::bbqram::MemoryImage;
use crate::fixedpoint;
use crate::matrix::ComplexMatrix;
use crate::sim::{prepare_matrix, BranchState, SimMode};
use crate::{Error, Result};

/// Target amplitudes `a_z / ||A||_F`, computed directly from the entries.
pub fn oracle_state(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let norm = m
        .entries()
        .iter()
        .map(|a| a.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return Err(Error::AllZeroMatrix);
    }
    Ok(m.entries().iter().map(|a| a / norm).collect())
}

/// The state a memory image encodes, read straight off its decoded fields.
///
/// Leaf `z` gets the product of `cos(theta/2)` or `sin(theta/2)` along its
/// root-to-leaf path times the leaf phase factor. No simulation is involved.
pub fn image_target_state(image: &MemoryImage) -> Result<Vec<Complex64>> {
    let k = image.address_bits();
    let mut out = Vec::with_capacity(image.len());
    for leaf in 0..image.len() {
        let mut modulus = 1.0;
        let mut node = 1usize;
        for level in (0..k).rev() {
            let bit = leaf >> level & 1;
            let half = image.angle(node)? / 2.0;
            modulus *= if bit == 1 { half.sin() } else { half.cos() };
            node = 2 * node + bit;
        }
        let phase = match image.mode() {
            EncodingMode::Complex => image.encoding().phase_factor(image.fields(leaf)?.1),
            EncodingMode::RealSigned => {
                Complex64::new(if image.fields(leaf)?.1 == 1 { -1.0 } else { 1.0 }, 0.0)
            }
        };
        out.push(phase * modulus);
    }
    Ok(out)
}

/// `|| prepared - oracle ||_2` over the address register, with no global
/// phase alignment.
pub fn state_error(prepared: &BranchState, oracle: &[Complex64]) -> Result<f64> {
    let amps = prepared.address_amplitudes()?;
    if amps.len() != oracle.len() {
        return Err(Error::LengthMismatch {
            what: "oracle state",
            expected: amps.len(),
            found: oracle.len(),
        });
    }
    Ok(amps
        .iter()
        .zip(oracle)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Per-term error budget of the fixed-point pipeline with exact cascades.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget {
    pub k: u32,
    pub t: u32,
    pub delta_theta: f64,
    pub delta_phi: f64,
    pub eps_y: f64,
    pub eps_phi: f64,
}

impl ErrorBudget {
    pub fn new(k: u32, t: u32) -> Self {
        ErrorBudget {
            k,
            t,
            delta_theta: 2f64.powi(1 - t as i32),
            delta_phi: std::f64::consts::PI * 2f64.powi(-(t as i32)),
            eps_y: 0.0,
            eps_phi: 0.0,
        }
    }

    /// `k (delta_theta / 2 + eps_y) + delta_phi + eps_phi`.
    pub fn bound(&self) -> f64 {
        self.k as f64 * (self.delta_theta / 2.0 + self.eps_y) + self.delta_phi + self.eps_phi
    }
}

/// `(k + pi) 2^-t`.
pub fn error_bound(k: u32, t: u32) -> f64 {
    ErrorBudget::new(k, t).bound()
}

/// Smallest `t` in the codec range whose bound does not exceed `eta`.
pub fn precision_for(k: u32, eta: f64) -> Option<u32> {
    (fixedpoint::MIN_PRECISION..=fixedpoint::MAX_PRECISION).find(|&t| error_bound(k, t) <= eta)
}

/// Closed-form resource counts for one preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub mode: EncodingMode,
    #[serde(rename = "K")]
    pub size: u64,
    pub k: u32,
    pub t: u32,
    pub qpu_qubits: u32,
    /// Angle register, target and address only (the magnitude loop without
    /// a sign or phase register).
    pub magnitude_loop_qubits: u32,
    pub cell_width_bits: u32,
    pub memory_bits: u64,
    pub query_count: u64,
    pub routing_time: u64,
    pub preprocessing_ops: u64,
}

impl ResourceReport {
    pub fn new(size: u64, t: u32, mode: EncodingMode) -> Result<Self> {
        if size < 2 || !size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(size as usize));
        }
        fixedpoint::check_precision(t)?;
        let k = size.trailing_zeros();
        let (qpu_qubits, cell_width_bits) = match mode {
            EncodingMode::Complex => (k + 2 * t + 1, 2 * t),
            EncodingMode::RealSigned => (k + t + 2, t + 1),
        };
        let query_count = 2 * k as u64 + 2;
        Ok(ResourceReport {
            mode,
            size,
            k,
            t,
            qpu_qubits,
            magnitude_loop_qubits: k + t + 1,
            cell_width_bits,
            memory_bits: cell_width_bits as u64 * size,
            query_count,
            routing_time: query_count * k as u64,
            preprocessing_ops: 2 * size - 1,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Convenience wrapper for [`ResourceReport::new`].
pub fn resource_report(size: u64, t: u32, mode: EncodingMode) -> Result<ResourceReport> {
    ResourceReport::new(size, t, mode)
}

/// One row of a precision sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: u32,
    pub measured_error: f64,
    pub bound: f64,
}

/// Runs the fixed-point pipeline at every `t` and records error and bound.
///
/// Rows are independent and computed in parallel; the result is sorted by `t`.
pub fn precision_sweep(
    m: &ComplexMatrix,
    mode: EncodingMode,
    t_values: &[u32],
) -> Result<Vec<SweepRow>> {
    let oracle = oracle_state(m)?;
    let k = m.address_bits();
    let mut rows = t_values
        .par_iter()
        .map(|&t| {
            let run = prepare_matrix(m, mode, SimMode::Fixed, t)?;
            Ok(SweepRow {
                t,
                measured_error: state_error(&run.state, &oracle)?,
                bound: error_bound(k, t),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.t);
    Ok(rows)
}

/// `t,measured_error,bound` with shortest round-trip decimal formatting.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("t,measured_error,bound\n");
    for r in rows {
        out.push_str(&format!("{},{:e},{:e}\n", r.t, r.measured_error, r.bound));
    }
    out
}
