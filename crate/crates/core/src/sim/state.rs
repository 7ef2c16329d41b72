use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::angles::EncodingMode;
use crate::bbqram::{unpack_cell, CellEncoding};
use crate::{Error, Result};

/// Widths of the four QPU registers: angle work register, auxiliary
/// (phase or sign) work register, target qubit `v`, and the `k`-bit address.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub k: u32,
    pub mode: EncodingMode,
    pub encoding: CellEncoding,
}

impl RegisterLayout {
    pub fn new(k: u32, mode: EncodingMode, encoding: CellEncoding) -> Self {
        RegisterLayout { k, mode, encoding }
    }

    pub fn angle_width(&self) -> u32 {
        self.encoding.angle_width()
    }

    pub fn aux_width(&self) -> u32 {
        self.encoding.aux_width(self.mode)
    }

    /// Data register width, equal to the memory cell width.
    pub fn data_width(&self) -> u32 {
        self.angle_width() + self.aux_width()
    }

    /// Total QPU qubits: work registers, target and address.
    pub fn qubits(&self) -> u32 {
        self.data_width() + 1 + self.k
    }

    fn address_mask(&self) -> u64 {
        (1u64 << self.k) - 1
    }
}

/// One computational basis state of the QPU registers.
///
/// Ordering is by address first, which is the order used for state dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    /// `a_{k-1} ... a_0`, most significant routing bit first.
    pub address: u64,
    /// The target qubit.
    pub v: bool,
    /// Both work registers packed like a memory cell: angle field high, aux low.
    pub data: u128,
}

impl BasisLabel {
    pub fn fields(&self, layout: &RegisterLayout) -> (u64, u64) {
        unpack_cell(self.data, layout.aux_width())
    }
}

/// Sparse statevector: the nonzero amplitudes keyed by basis label.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    layout: RegisterLayout,
    branches: BTreeMap<BasisLabel, Complex64>,
    prune_below: Option<f64>,
}

impl BranchState {
    /// Clean work registers, `v = 0`, address `0^{k-1}1`, amplitude one.
    pub fn init(k: u32, mode: EncodingMode, encoding: CellEncoding) -> Result<Self> {
        if k == 0 || k > 62 {
            return Err(Error::InvalidDimensions(format!("address width k = {k}")));
        }
        if let Some(t) = encoding.precision() {
            crate::fixedpoint::check_precision(t)?;
        }
        let mut branches = BTreeMap::new();
        branches.insert(BasisLabel { address: 1, v: false, data: 0 }, Complex64::new(1.0, 0.0));
        Ok(BranchState {
            layout: RegisterLayout::new(k, mode, encoding),
            branches,
            prune_below: None,
        })
    }

    /// Builds an arbitrary state; labels must fit the layout.
    pub fn from_branches(
        layout: RegisterLayout,
        branches: impl IntoIterator<Item = (BasisLabel, Complex64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, amp) in branches {
            if label.address > layout.address_mask() || label.data.checked_shr(layout.data_width()).unwrap_or(0) != 0 {
                return Err(Error::WidthMismatch(format!("label {label:?} exceeds layout")));
            }
            *map.entry(label).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        map.retain(|_, a: &mut Complex64| *a != Complex64::new(0.0, 0.0));
        Ok(BranchState { layout, branches: map, prune_below: None })
    }

    /// Drops branches whose modulus falls below `threshold` after each
    /// non-permutation operation. Exact zeros are always dropped.
    pub fn with_pruning(mut self, threshold: Option<f64>) -> Self {
        self.prune_below = threshold;
        self
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &Complex64)> {
        self.branches.iter()
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Complex64 {
        self.branches.get(label).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.branches.values().map(|a| a.norm_sqr()).sum()
    }

    /// True when every branch has both work registers at zero.
    pub fn is_clean(&self) -> bool {
        self.branches.keys().all(|l| l.data == 0)
    }

    /// Relabels every branch through a bijection. Amplitudes are untouched.
    pub fn permute_labels(&mut self, mut f: impl FnMut(BasisLabel) -> BasisLabel) {
        let old = std::mem::take(&mut self.branches);
        for (label, amp) in old {
            let prev = self.branches.insert(f(label), amp);
            debug_assert!(prev.is_none(), "relabeling is not injective");
        }
    }

    /// Applies a linear map given as, for each input branch, the list of
    /// output branches it feeds.
    pub(crate) fn apply(
        &mut self,
        mut f: impl FnMut(BasisLabel, Complex64, &mut dyn FnMut(BasisLabel, Complex64)),
    ) {
        let old = std::mem::take(&mut self.branches);
        let mut out: BTreeMap<BasisLabel, Complex64> = BTreeMap::new();
        for (label, amp) in old {
            f(label, amp, &mut |l, a| {
                *out.entry(l).or_insert(Complex64::new(0.0, 0.0)) += a;
            });
        }
        let floor = self.prune_below.unwrap_or(0.0);
        out.retain(|_, a| a.norm() > floor);
        self.branches = out;
    }

    /// Address-register amplitudes of a finished preparation, indexed by leaf.
    pub fn address_amplitudes(&self) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); 1usize << self.layout.k];
        for (label, amp) in &self.branches {
            if label.data != 0 || !label.v {
                return Err(Error::DirtyState);
            }
            out[label.address as usize] = *amp;
        }
        Ok(out)
    }

    /// State dump: `{"k", "branches": [{"address", "v", "amp": [re, im]}]}`
    /// sorted by address. Fails if any work register is nonzero.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Branch {
            address: u64,
            v: u8,
            amp: [f64; 2],
        }
        #[derive(Serialize)]
        struct Dump {
            k: u32,
            branches: Vec<Branch>,
        }
        if !self.is_clean() {
            return Err(Error::DirtyWorkRegisters);
        }
        let dump = Dump {
            k: self.layout.k,
            branches: self
                .branches
                .iter()
                .map(|(l, a)| Branch { address: l.address, v: l.v as u8, amp: [a.re, a.im] })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }
}
