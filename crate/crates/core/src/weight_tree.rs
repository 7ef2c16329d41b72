//! Bottom-up sum tree over squared moduli.
//!
//! Node `(h, p)` holds the total weight of the leaf range
//! `[p * K / 2^h, (p + 1) * K / 2^h)`. Memory index `z >= 1` names the internal
//! node `(l(z) - 1, d(z))` whose two children are `(l(z), 2 d(z))` and
//! `(l(z), 2 d(z) + 1)`.

use crate::{Error, Result};

/// Complete binary tree of subtree weights, stored one flat vector per height.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTree {
    levels: Vec<Vec<f64>>,
}

impl WeightTree {
    /// Builds the tree from `K = 2^k` non-negative leaf weights, `k >= 1`.
    pub fn build(weights: &[f64]) -> Result<Self> {
        let len = weights.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        if let Some(z) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::NonFinite(z));
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::AllZeroWeights);
        }
        let depth = len.trailing_zeros() as usize;
        let mut levels = vec![Vec::new(); depth + 1];
        levels[depth] = weights.to_vec();
        for h in (0..depth).rev() {
            levels[h] = levels[h + 1].chunks_exact(2).map(|c| c[0] + c[1]).collect();
        }
        Ok(WeightTree { levels })
    }

    /// Tree depth `k`.
    pub fn depth(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    /// Number of leaves `K`.
    pub fn leaves(&self) -> usize {
        1 << self.depth()
    }

    pub fn level(&self, h: u32) -> &[f64] {
        &self.levels[h as usize]
    }

    pub fn node(&self, h: u32, p: usize) -> Result<f64> {
        let level = self
            .levels
            .get(h as usize)
            .ok_or(Error::IndexOutOfRange { index: h as usize, bound: self.levels.len() })?;
        level
            .get(p)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: p, bound: level.len() })
    }

    /// Root weight, the squared Frobenius norm.
    pub fn total(&self) -> f64 {
        self.levels[0][0]
    }

    /// Child weights `(T_L, T_R)` split by the angle stored at memory index `z`.
    pub fn sibling_weights(&self, z: usize) -> Result<(f64, f64)> {
        if z >= self.leaves() {
            return Err(Error::IndexOutOfRange { index: z, bound: self.leaves() });
        }
        let (l, d) = level_position(z)?;
        let children = &self.levels[l as usize];
        Ok((children[2 * d], children[2 * d + 1]))
    }
}

/// Level and position of memory index `z >= 1`:
/// `l = floor(log2 z) + 1`, `d = z - 2^floor(log2 z)`.
pub fn level_position(z: usize) -> Result<(u32, usize)> {
    if z == 0 {
        return Err(Error::IndexOutOfRange { index: 0, bound: 0 });
    }
    let floor_log = z.ilog2();
    Ok((floor_log + 1, z - (1 << floor_log)))
}
