//! Classical precomputation of splitting angles, the leaf phase layer and the
//! leaf sign layer.

use std::f64::consts::TAU;

use crate::matrix::ComplexMatrix;
use crate::weight_tree::{level_position, WeightTree};
use crate::{Error, Result};

/// How leaf information beyond the modulus is carried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingMode {
    /// A `t`-bit phase per leaf.
    Complex,
    /// A single sign bit per leaf; only valid for real matrices.
    RealSigned,
}

impl EncodingMode {
    pub fn name(self) -> &'static str {
        match self {
            EncodingMode::Complex => "complex",
            EncodingMode::RealSigned => "real_signed",
        }
    }
}

impl std::str::FromStr for EncodingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(EncodingMode::Complex),
            "real_signed" | "real-signed" | "real" => Ok(EncodingMode::RealSigned),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// `theta_z = 2 asin(sqrt(T_R / (T_L + T_R)))`, evaluated as
/// `2 atan2(sqrt(T_R), sqrt(T_L))`, or `0` for an empty subtree.
///
/// `R_y(theta_z)|0>` then carries amplitude `sqrt(T_L / (T_L + T_R))` on `|0>`
/// and `sqrt(T_R / (T_L + T_R))` on `|1>`.
pub fn splitting_angle(tree: &WeightTree, z: usize) -> Result<f64> {
    let (left, right) = tree.sibling_weights(z)?;
    let sum = left + right;
    if sum <= 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * right.max(0.0).sqrt().atan2(left.max(0.0).sqrt()))
}

/// Splitting angles for every internal node, indexed by memory index `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTree {
    // thetas[z - 1] = theta_z for z in 1..K
    thetas: Vec<f64>,
}

impl AngleTree {
    pub fn build(tree: &WeightTree) -> Self {
        let thetas = (1..tree.leaves())
            .map(|z| splitting_angle(tree, z).expect("z < K by construction"))
            .collect();
        AngleTree { thetas }
    }

    /// Wraps precomputed angles `theta_1..theta_{K-1}`.
    pub fn from_angles(thetas: Vec<f64>) -> Result<Self> {
        let len = thetas.len() + 1;
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Ok(AngleTree { thetas })
    }

    /// Angle at memory index `z` in `1..K`.
    pub fn get(&self, z: usize) -> Result<f64> {
        if z == 0 || z > self.thetas.len() {
            return Err(Error::IndexOutOfRange { index: z, bound: self.thetas.len() + 1 });
        }
        Ok(self.thetas[z - 1])
    }

    /// Node `(h, p)` of the angle tree, stored at `z = 2^h + p`.
    pub fn node(&self, h: u32, p: usize) -> Result<f64> {
        if p >= 1 << h {
            return Err(Error::IndexOutOfRange { index: p, bound: 1 << h });
        }
        self.get((1 << h) + p)
    }

    /// `theta_1, ..., theta_{K-1}`.
    pub fn as_slice(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// `atan2(Im a_z, Re a_z) mod 2pi`, with `0` for zero entries.
pub fn build_phase_layer(m: &ComplexMatrix) -> Vec<f64> {
    m.entries()
        .iter()
        .map(|a| {
            if a.re == 0.0 && a.im == 0.0 {
                0.0
            } else {
                let phi = a.im.atan2(a.re).rem_euclid(TAU);
                // rem_euclid can round a tiny negative angle up to exactly 2pi.
                if phi >= TAU {
                    0.0
                } else {
                    phi
                }
            }
        })
        .collect()
}

/// `s_z = 1` iff `a_z < 0`, including the dummy-angle cell `z = 0`.
pub fn build_sign_layer(m: &ComplexMatrix) -> Result<Vec<bool>> {
    if let Some(z) = m.entries().iter().position(|a| a.im != 0.0) {
        return Err(Error::NotRealMatrix(z));
    }
    Ok(m.entries().iter().map(|a| a.re < 0.0).collect())
}

/// The angle tree together with its leaf layer.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexAngleTree {
    pub weights: WeightTree,
    pub thetas: AngleTree,
    /// `phi_bar_z` for every leaf. In real-signed mode these are `0` or `pi`.
    pub phases: Vec<f64>,
    /// Present only in real-signed mode.
    pub signs: Option<Vec<bool>>,
    pub mode: EncodingMode,
}

impl ComplexAngleTree {
    pub fn build(m: &ComplexMatrix, mode: EncodingMode) -> Result<Self> {
        let weights = WeightTree::build(&m.squared_moduli())?;
        let thetas = AngleTree::build(&weights);
        let phases = build_phase_layer(m);
        let signs = match mode {
            EncodingMode::Complex => None,
            EncodingMode::RealSigned => Some(build_sign_layer(m)?),
        };
        Ok(ComplexAngleTree { weights, thetas, phases, signs, mode })
    }

    pub fn complex(m: &ComplexMatrix) -> Result<Self> {
        Self::build(m, EncodingMode::Complex)
    }

    pub fn real_signed(m: &ComplexMatrix) -> Result<Self> {
        Self::build(m, EncodingMode::RealSigned)
    }

    /// Number of classical angle, phase and sign evaluations performed.
    pub fn preprocessing_ops(&self) -> usize {
        self.thetas.len() + self.phases.len()
    }
}

/// Level of the angle tree an index belongs to, `l(z) - 1`.
pub fn angle_level(z: usize) -> Result<u32> {
    level_position(z).map(|(l, _)| l - 1)
}
