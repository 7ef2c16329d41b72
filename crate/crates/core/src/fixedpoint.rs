//! Unsigned fixed-point codecs for magnitude angles and phases.
//!
//! Magnitude angles live on the grid `bits * 2^(2-t)` covering `[0, 4)`, so bit
//! `j` of the register contributes `2^(j+2-t)`. Phases live on the grid
//! `bits * 2*pi / 2^t` covering `[0, 2*pi)` and are reduced modulo `2*pi` before
//! rounding. Both encoders round to the nearest grid point, ties away from zero.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

pub const MIN_PRECISION: u32 = 2;
pub const MAX_PRECISION: u32 = 62;

/// Rejects precisions outside `MIN_PRECISION..=MAX_PRECISION`.
pub fn check_precision(t: u32) -> Result<()> {
    if (MIN_PRECISION..=MAX_PRECISION).contains(&t) {
        Ok(())
    } else {
        Err(Error::PrecisionOutOfRange(t))
    }
}

/// Grid spacing of the magnitude convention, `2^(2-t)`.
pub fn angle_step(t: u32) -> f64 {
    2f64.powi(2 - t as i32)
}

/// Grid spacing of the phase convention, `2*pi / 2^t`.
pub fn phase_step(t: u32) -> f64 {
    TAU * 2f64.powi(-(t as i32))
}

/// A `t`-bit magnitude angle with value `bits * 2^(2-t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedAngle {
    bits: u64,
    t: u32,
}

impl FixedAngle {
    pub fn from_bits(bits: u64, t: u32) -> Result<Self> {
        check_precision(t)?;
        if bits >> t != 0 {
            return Err(Error::InvalidDimensions(format!("{bits} does not fit in {t} bits")));
        }
        Ok(FixedAngle { bits, t })
    }

    /// Rounds `theta` to the nearest representable angle.
    ///
    /// Any `theta` in `[0, 4 - step/2)` is accepted; the splitting angles this
    /// crate produces never exceed `pi`.
    pub fn encode(theta: f64, t: u32) -> Result<Self> {
        check_precision(t)?;
        if !theta.is_finite() || theta < 0.0 {
            return Err(Error::AngleOutOfRange(theta));
        }
        // Scaling by a power of two is exact, so this is the true grid ratio.
        let scaled = (theta * 2f64.powi(t as i32 - 2)).round();
        if scaled >= 2f64.powi(t as i32) {
            return Err(Error::AngleOutOfRange(theta));
        }
        Ok(FixedAngle { bits: scaled as u64, t })
    }

    pub fn decode(self) -> f64 {
        self.bits as f64 * angle_step(self.t)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn precision(self) -> u32 {
        self.t
    }

    /// Weight `2^(j+2-t)` of register bit `j`.
    pub fn bit_weight(j: u32, t: u32) -> f64 {
        2f64.powi(j as i32 + 2 - t as i32)
    }
}

/// A `t`-bit phase with value `bits * 2*pi / 2^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedPhase {
    bits: u64,
    t: u32,
}

impl FixedPhase {
    pub fn from_bits(bits: u64, t: u32) -> Result<Self> {
        check_precision(t)?;
        if bits >> t != 0 {
            return Err(Error::InvalidDimensions(format!("{bits} does not fit in {t} bits")));
        }
        Ok(FixedPhase { bits, t })
    }

    /// Reduces `phi` modulo `2*pi` and rounds to the nearest grid point.
    pub fn encode(phi: f64, t: u32) -> Result<Self> {
        check_precision(t)?;
        if !phi.is_finite() {
            return Err(Error::AngleOutOfRange(phi));
        }
        let reduced = phi.rem_euclid(TAU);
        let scaled = (reduced * 2f64.powi(t as i32) / TAU).round() as u64;
        let mask = (1u64 << t) - 1;
        Ok(FixedPhase { bits: scaled & mask, t })
    }

    pub fn decode(self) -> f64 {
        self.bits as f64 * phase_step(self.t)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn precision(self) -> u32 {
        self.t
    }

    /// `e^{i * decode()}`, exact at multiples of a quarter turn.
    pub fn cis(self) -> Complex64 {
        let t = self.t;
        if t >= 2 && self.bits & ((1u64 << (t - 2)) - 1) == 0 {
            return quarter_turn(self.bits >> (t - 2));
        }
        Complex64::from_polar(1.0, self.decode())
    }

    /// Phase increment controlled by register bit `j`, `2*pi * 2^(j-t)`.
    pub fn bit_weight(j: u32, t: u32) -> f64 {
        TAU * 2f64.powi(j as i32 - t as i32)
    }
}

fn quarter_turn(q: u64) -> Complex64 {
    match q & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `e^{i phi}` for an unquantized phase, exact at the quarter turns `0, pi/2,
/// pi, 3pi/2` as produced by `atan2` on axis-aligned entries.
pub fn cis_exact(phi: f64) -> Complex64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    if phi == 0.0 {
        quarter_turn(0)
    } else if phi == FRAC_PI_2 {
        quarter_turn(1)
    } else if phi == PI {
        quarter_turn(2)
    } else if phi == 3.0 * FRAC_PI_2 {
        quarter_turn(3)
    } else {
        Complex64::from_polar(1.0, phi)
    }
}

/// Distance on the circle, `min |a - b + 2*pi*n|`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
