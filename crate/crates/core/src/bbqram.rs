//! Logical model of the bucket-brigade memory.
//!
//! A [`MemoryImage`] is `K` classical cells of uniform width. Each cell packs
//! the angle field in its high bits and the phase (complex) or sign
//! (real-signed) field in its low bits. A query XORs the addressed cell into
//! the data register of every branch, so querying twice is the identity.
//!
//! Routing switches are not simulated. The [`QueryLedger`] charges one time
//! unit per tree level per query.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::{ComplexAngleTree, EncodingMode};
use crate::fixedpoint::{self, FixedAngle, FixedPhase};
use crate::sim::{BranchState, RegisterLayout};
use crate::{Error, Result};

/// How angle and phase values are represented inside a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellEncoding {
    /// `t`-bit unsigned fixed point in both fields.
    Fixed { t: u32 },
    /// Raw IEEE-754 bit patterns; bypasses quantization entirely.
    Exact,
}

const EXACT_FIELD_BITS: u32 = 64;

impl CellEncoding {
    pub fn fixed(t: u32) -> Result<Self> {
        fixedpoint::check_precision(t)?;
        Ok(CellEncoding::Fixed { t })
    }

    pub fn precision(self) -> Option<u32> {
        match self {
            CellEncoding::Fixed { t } => Some(t),
            CellEncoding::Exact => None,
        }
    }

    pub fn angle_width(self) -> u32 {
        match self {
            CellEncoding::Fixed { t } => t,
            CellEncoding::Exact => EXACT_FIELD_BITS,
        }
    }

    pub fn aux_width(self, mode: EncodingMode) -> u32 {
        match mode {
            EncodingMode::RealSigned => 1,
            EncodingMode::Complex => self.angle_width(),
        }
    }

    pub fn encode_angle(self, theta: f64) -> Result<u64> {
        match self {
            CellEncoding::Fixed { t } => FixedAngle::encode(theta, t).map(FixedAngle::bits),
            CellEncoding::Exact => {
                if !(0.0..4.0).contains(&theta) {
                    return Err(Error::AngleOutOfRange(theta));
                }
                Ok(theta.to_bits())
            }
        }
    }

    pub fn decode_angle(self, bits: u64) -> f64 {
        match self {
            CellEncoding::Fixed { t } => bits as f64 * fixedpoint::angle_step(t),
            CellEncoding::Exact => f64::from_bits(bits),
        }
    }

    pub fn encode_phase(self, phi: f64) -> Result<u64> {
        match self {
            CellEncoding::Fixed { t } => FixedPhase::encode(phi, t).map(FixedPhase::bits),
            CellEncoding::Exact => {
                if !phi.is_finite() {
                    return Err(Error::AngleOutOfRange(phi));
                }
                Ok(phi.to_bits())
            }
        }
    }

    pub fn decode_phase(self, bits: u64) -> f64 {
        match self {
            CellEncoding::Fixed { t } => bits as f64 * fixedpoint::phase_step(t),
            CellEncoding::Exact => f64::from_bits(bits),
        }
    }

    /// `e^{i phi}` for a stored phase field.
    pub fn phase_factor(self, bits: u64) -> Complex64 {
        match self {
            CellEncoding::Fixed { t } => FixedPhase::from_bits(bits, t)
                .expect("phase field fits its width")
                .cis(),
            CellEncoding::Exact => fixedpoint::cis_exact(f64::from_bits(bits)),
        }
    }
}

/// Packs an angle field and an auxiliary field into one cell value.
pub fn pack_cell(angle: u64, aux: u64, aux_width: u32) -> u128 {
    ((angle as u128) << aux_width) | aux as u128
}

/// Splits a cell value into `(angle, aux)` fields.
pub fn unpack_cell(cell: u128, aux_width: u32) -> (u64, u64) {
    let mask = (1u128 << aux_width) - 1;
    ((cell >> aux_width) as u64, (cell & mask) as u64)
}

/// Contents of the `K` memory cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryImage {
    mode: EncodingMode,
    encoding: CellEncoding,
    k: u32,
    cells: Vec<u128>,
}

#[derive(Serialize, Deserialize)]
struct ImageJson {
    mode: EncodingMode,
    t: u32,
    k: u32,
    cells: Vec<u128>,
}

fn check_lengths(thetas: usize, leaves: usize) -> Result<u32> {
    if leaves < 2 || !leaves.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(leaves));
    }
    if thetas + 1 != leaves {
        return Err(Error::LengthMismatch { what: "angles", expected: leaves - 1, found: thetas });
    }
    Ok(leaves.trailing_zeros())
}

impl MemoryImage {
    /// Complex layout with `t`-bit fields: cell 0 is `0^t || phi_0`, cell `z`
    /// is `theta_z || phi_z`.
    pub fn layout_complex(thetas: &[f64], phases: &[f64], t: u32) -> Result<Self> {
        Self::layout_complex_with(thetas, phases, CellEncoding::fixed(t)?)
    }

    pub fn layout_complex_with(
        thetas: &[f64],
        phases: &[f64],
        encoding: CellEncoding,
    ) -> Result<Self> {
        let k = check_lengths(thetas.len(), phases.len())?;
        let aux_width = encoding.aux_width(EncodingMode::Complex);
        let cells = phases
            .iter()
            .enumerate()
            .map(|(z, &phi)| {
                let angle = if z == 0 { 0 } else { encoding.encode_angle(thetas[z - 1])? };
                Ok(pack_cell(angle, encoding.encode_phase(phi)?, aux_width))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MemoryImage { mode: EncodingMode::Complex, encoding, k, cells })
    }

    /// Real-signed layout with a `t`-bit angle and one sign bit per cell.
    pub fn layout_real_signed(thetas: &[f64], signs: &[bool], t: u32) -> Result<Self> {
        Self::layout_real_signed_with(thetas, signs, CellEncoding::fixed(t)?)
    }

    pub fn layout_real_signed_with(
        thetas: &[f64],
        signs: &[bool],
        encoding: CellEncoding,
    ) -> Result<Self> {
        let k = check_lengths(thetas.len(), signs.len())?;
        let cells = signs
            .iter()
            .enumerate()
            .map(|(z, &s)| {
                let angle = if z == 0 { 0 } else { encoding.encode_angle(thetas[z - 1])? };
                Ok(pack_cell(angle, s as u64, 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MemoryImage { mode: EncodingMode::RealSigned, encoding, k, cells })
    }

    /// Lays out a precomputed tree in its own mode.
    pub fn from_tree(gamma: &ComplexAngleTree, encoding: CellEncoding) -> Result<Self> {
        match (&gamma.signs, gamma.mode) {
            (Some(signs), EncodingMode::RealSigned) => {
                Self::layout_real_signed_with(gamma.thetas.as_slice(), signs, encoding)
            }
            _ => Self::layout_complex_with(gamma.thetas.as_slice(), &gamma.phases, encoding),
        }
    }

    pub fn mode(&self) -> EncodingMode {
        self.mode
    }

    pub fn encoding(&self) -> CellEncoding {
        self.encoding
    }

    /// Address width `k = log2 K`.
    pub fn address_bits(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell width `w`: `2t` for complex, `t + 1` for real-signed.
    pub fn width(&self) -> u32 {
        self.encoding.angle_width() + self.aux_width()
    }

    pub fn aux_width(&self) -> u32 {
        self.encoding.aux_width(self.mode)
    }

    /// Total stored bits, `w * K`.
    pub fn memory_bits(&self) -> u64 {
        self.width() as u64 * self.cells.len() as u64
    }

    pub fn cells(&self) -> &[u128] {
        &self.cells
    }

    pub fn cell(&self, z: usize) -> Result<u128> {
        self.cells
            .get(z)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: z, bound: self.cells.len() })
    }

    /// `(angle, aux)` fields of cell `z`.
    pub fn fields(&self, z: usize) -> Result<(u64, u64)> {
        Ok(unpack_cell(self.cell(z)?, self.aux_width()))
    }

    /// Decoded angle field of cell `z`.
    pub fn angle(&self, z: usize) -> Result<f64> {
        Ok(self.encoding.decode_angle(self.fields(z)?.0))
    }

    /// Decoded leaf phase of cell `z`; a sign bit decodes to `0` or `pi`.
    pub fn phase(&self, z: usize) -> Result<f64> {
        let aux = self.fields(z)?.1;
        Ok(match self.mode {
            EncodingMode::Complex => self.encoding.decode_phase(aux),
            EncodingMode::RealSigned => std::f64::consts::PI * aux as f64,
        })
    }

    /// Register layout a state must have to be queried against this image.
    pub fn register_layout(&self) -> RegisterLayout {
        RegisterLayout::new(self.k, self.mode, self.encoding)
    }

    /// XORs `cells[address]` into every branch's data register.
    pub fn query(&self, state: &mut BranchState, ledger: &mut QueryLedger) -> Result<()> {
        if state.layout() != self.register_layout() {
            return Err(Error::WidthMismatch(format!(
                "state {:?} vs image {:?}",
                state.layout(),
                self.register_layout()
            )));
        }
        state.permute_labels(|mut label| {
            label.data ^= self.cells[label.address as usize];
            label
        });
        ledger.record();
        Ok(())
    }

    /// Serializes a fixed-point image to the interchange JSON.
    pub fn to_json(&self) -> Result<String> {
        let CellEncoding::Fixed { t } = self.encoding else {
            return Err(Error::WrongMode("exact-encoding"));
        };
        let doc = ImageJson { mode: self.mode, t, k: self.k, cells: self.cells.clone() };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ImageJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("memory image: {e}")))?;
        let encoding = CellEncoding::fixed(doc.t)?;
        if doc.k == 0 || doc.k > 40 || doc.cells.len() != 1usize << doc.k {
            return Err(Error::LengthMismatch {
                what: "memory cells",
                expected: 1usize.checked_shl(doc.k).unwrap_or(0),
                found: doc.cells.len(),
            });
        }
        let image = MemoryImage { mode: doc.mode, encoding, k: doc.k, cells: doc.cells };
        let width = image.width();
        if let Some(z) = image.cells.iter().position(|&c| c >> width != 0) {
            return Err(Error::Parse(format!("cell {z} exceeds {width} bits")));
        }
        if image.fields(0)?.0 != 0 {
            return Err(Error::Parse("cell 0 angle field must be zero".into()));
        }
        Ok(image)
    }
}

/// Running count of memory queries and the routing time they cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    query_count: u64,
    k: u32,
}

impl QueryLedger {
    pub fn new(k: u32) -> Self {
        QueryLedger { query_count: 0, k }
    }

    pub fn record(&mut self) {
        self.query_count += 1;
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    /// `query_count * k`: one unit per tree level under pipelined routing.
    pub fn routing_time(&self) -> u64 {
        query_cost(self, self.k)
    }
}

/// Routing time of the recorded queries on a `k`-level memory tree.
pub fn query_cost(ledger: &QueryLedger, k: u32) -> u64 {
    ledger.query_count * k as u64
}
