//! Register-level operations of the preparation loop.
//!
//! The cascades apply the composed rotation per branch. The `*_gatewise`
//! variants apply one controlled gate per register bit and exist to check that
//! the composition is exact.

use num_complex::Complex64;

use crate::angles::EncodingMode;
use crate::bbqram::CellEncoding;
use crate::fixedpoint::{FixedAngle, FixedPhase};
use crate::{Error, Result};

use super::state::{BasisLabel, BranchState};

/// `R_y(theta) = [[cos theta/2, -sin theta/2], [sin theta/2, cos theta/2]]` on
/// `v` of a single branch.
fn emit_ry(
    label: BasisLabel,
    amp: Complex64,
    theta: f64,
    emit: &mut dyn FnMut(BasisLabel, Complex64),
) {
    let (s, c) = (theta / 2.0).sin_cos();
    let zero = BasisLabel { v: false, ..label };
    let one = BasisLabel { v: true, ..label };
    if label.v {
        emit(zero, -amp * s);
        emit(one, amp * c);
    } else {
        emit(zero, amp * c);
        emit(one, amp * s);
    }
}

/// Rotates `v` by the angle held in the angle work register of each branch.
pub fn ry_cascade(state: &mut BranchState) {
    let layout = state.layout();
    state.apply(|label, amp, emit| {
        let theta = layout.encoding.decode_angle(label.fields(&layout).0);
        emit_ry(label, amp, theta, emit);
    });
}

/// Reference path: `t` controlled `R_y(2^(j+2-t))` gates, one per angle bit.
pub fn ry_cascade_gatewise(state: &mut BranchState) -> Result<()> {
    let layout = state.layout();
    let CellEncoding::Fixed { t } = layout.encoding else {
        return Err(Error::WrongMode("exact-encoding"));
    };
    for j in 0..t {
        let weight = FixedAngle::bit_weight(j, t);
        state.apply(|label, amp, emit| {
            if label.fields(&layout).0 >> j & 1 == 1 {
                emit_ry(label, amp, weight, emit);
            } else {
                emit(label, amp);
            }
        });
    }
    Ok(())
}

/// Multiplies every `v = 1` branch by `e^{i phi}` for the phase in its
/// auxiliary work register.
pub fn phase_cascade(state: &mut BranchState) -> Result<()> {
    let layout = state.layout();
    if layout.mode != EncodingMode::Complex {
        return Err(Error::WrongMode("real_signed"));
    }
    state.apply(|label, amp, emit| {
        if label.v {
            emit(label, amp * layout.encoding.phase_factor(label.fields(&layout).1));
        } else {
            emit(label, amp);
        }
    });
    Ok(())
}

/// Reference path: `t` controlled phase gates `P(2pi 2^(j-t))`.
pub fn phase_cascade_gatewise(state: &mut BranchState) -> Result<()> {
    let layout = state.layout();
    if layout.mode != EncodingMode::Complex {
        return Err(Error::WrongMode("real_signed"));
    }
    let CellEncoding::Fixed { t } = layout.encoding else {
        return Err(Error::WrongMode("exact-encoding"));
    };
    for j in 0..t {
        let factor = Complex64::from_polar(1.0, FixedPhase::bit_weight(j, t));
        state.apply(|label, amp, emit| {
            if label.v && label.fields(&layout).1 >> j & 1 == 1 {
                emit(label, amp * factor);
            } else {
                emit(label, amp);
            }
        });
    }
    Ok(())
}

/// Controlled-Z from the sign bit onto `v`: `(-1)^s` on the `v = 1` branch.
pub fn controlled_z_sign(state: &mut BranchState) -> Result<()> {
    let layout = state.layout();
    if layout.mode != EncodingMode::RealSigned {
        return Err(Error::WrongMode("complex"));
    }
    state.apply(|label, amp, emit| {
        if label.v && label.fields(&layout).1 == 1 {
            emit(label, -amp);
        } else {
            emit(label, amp);
        }
    });
    Ok(())
}

/// Left circular shift on `(v, a_{k-1}, ..., a_0)`:
/// `|b>_v |a_{k-1} ... a_0>` becomes `|a_{k-1}>_v |a_{k-2} ... a_0 b>`.
pub fn circular_shift(state: &mut BranchState) -> Result<()> {
    if !state.is_clean() {
        return Err(Error::DirtyWorkRegisters);
    }
    let k = state.layout().k;
    let mask = (1u64 << k) - 1;
    state.permute_labels(|label| BasisLabel {
        v: label.address >> (k - 1) & 1 == 1,
        address: (label.address << 1 & mask) | label.v as u64,
        data: 0,
    });
    Ok(())
}
