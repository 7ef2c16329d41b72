//! Independent checks shared by the acceptance gate and the property suite.
#![allow(dead_code)]

use bbqram_prep::fixedpoint::{FixedAngle, FixedPhase};
use bbqram_prep::random::{random_complex, random_real, square_shape};
use bbqram_prep::sim::{
    circular_shift, controlled_z_sign, marker_check, phase_cascade, phase_cascade_gatewise,
    ry_cascade, ry_cascade_gatewise, BasisLabel, BranchState, RegisterLayout, DEFAULT_PRUNE,
};
use bbqram_prep::bbqram::pack_cell;
use bbqram_prep::{
    CellEncoding, ComplexAngleTree, ComplexMatrix, EncodingMode, MemoryImage, QueryLedger,
    WeightTree,
};
use num_complex::Complex64;
use rand::Rng;

pub type Check = std::result::Result<(), String>;

/// Random matrix with `2^k` padded entries and a random fraction of zeros.
pub fn matrix_with_k<R: Rng>(rng: &mut R, k: u32, real: bool) -> ComplexMatrix {
    let (rows, cols) = square_shape(1 << k);
    let zeros = if rng.gen_bool(0.3) { rng.gen_range(0.0..0.6) } else { 0.0 };
    if real {
        random_real(rng, rows, cols, zeros)
    } else {
        random_complex(rng, rows, cols, zeros)
    }
}

/// Kahan-Babuska (Neumaier) compensated sum.
pub fn neumaier_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

/// `R_y(theta)` as an explicit 2x2 matrix applied to `(amp0, amp1)`.
pub fn direct_ry(theta: f64, amp0: Complex64, amp1: Complex64) -> (Complex64, Complex64) {
    let (s, c) = (theta / 2.0).sin_cos();
    (amp0 * c - amp1 * s, amp0 * s + amp1 * c)
}

/// Composed cascade, gate-by-gate cascade and the direct 2x2 unitary agree
/// on a two-branch input carrying angle `bits`.
pub fn cascade_agreement(angle_bits: u64, phase_bits: u64, t: u32, tol: f64) -> Check {
    let layout = RegisterLayout::new(2, EncodingMode::Complex, CellEncoding::Fixed { t });
    let data = pack_cell(angle_bits, phase_bits, t);
    let (a0, a1) = (Complex64::new(0.6, 0.1), Complex64::new(-0.3, 0.7348469228349533));
    let zero = BasisLabel { address: 2, v: false, data };
    let one = BasisLabel { v: true, ..zero };
    let start = BranchState::from_branches(layout, [(zero, a0), (one, a1)]).unwrap();

    let theta = FixedAngle::from_bits(angle_bits, t).unwrap().decode();
    let (d0, d1) = direct_ry(theta, a0, a1);
    let mut composed = start.clone();
    ry_cascade(&mut composed);
    let mut gatewise = start.clone();
    ry_cascade_gatewise(&mut gatewise).unwrap();
    for (name, s) in [("composed", &composed), ("gatewise", &gatewise)] {
        let e = (s.amplitude(&zero) - d0).norm().max((s.amplitude(&one) - d1).norm());
        if e > tol {
            return Err(format!("{name} R_y cascade off by {e:e} at bits {angle_bits}, t {t}"));
        }
    }

    let factor = FixedPhase::from_bits(phase_bits, t).unwrap().cis();
    let mut composed = start.clone();
    phase_cascade(&mut composed).unwrap();
    let mut gatewise = start;
    phase_cascade_gatewise(&mut gatewise).unwrap();
    for (name, s) in [("composed", &composed), ("gatewise", &gatewise)] {
        let e = (s.amplitude(&one) - a1 * factor).norm() + (s.amplitude(&zero) - a0).norm();
        if e > tol {
            return Err(format!("{name} phase cascade off by {e:e} at bits {phase_bits}, t {t}"));
        }
    }
    Ok(())
}

/// Querying twice restores an arbitrary superposition exactly.
pub fn query_involution<R: Rng>(rng: &mut R, image: &MemoryImage) -> Check {
    let layout = image.register_layout();
    let mask = if image.width() >= 128 { u128::MAX } else { (1u128 << image.width()) - 1 };
    let branches: Vec<(BasisLabel, Complex64)> = (0..8)
        .map(|_| {
            let label = BasisLabel {
                address: rng.gen_range(0..image.len() as u64),
                v: rng.gen(),
                data: rng.gen::<u128>() & mask,
            };
            (label, Complex64::new(rng.gen(), rng.gen()))
        })
        .collect();
    let start = BranchState::from_branches(layout, branches).map_err(|e| e.to_string())?;
    let mut state = start.clone();
    let mut ledger = QueryLedger::new(image.address_bits());
    image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
    image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
    if state != start {
        return Err("query applied twice is not the identity".into());
    }
    if ledger.query_count() != 2 {
        return Err(format!("ledger counted {} queries", ledger.query_count()));
    }
    Ok(())
}

/// `sum_p T_{h,p}` equals the root at every level.
pub fn level_conservation(tree: &WeightTree, rel: f64) -> Check {
    let total = tree.total();
    for h in 0..=tree.depth() {
        let s = neumaier_sum(tree.level(h).iter().copied());
        if (s - total).abs() > rel * total {
            return Err(format!("level {h} sums to {s}, root is {total}"));
        }
    }
    Ok(())
}

/// Runs the preparation operation by operation, checking unit norm after
/// every step and the routing marker after every magnitude iteration.
/// Returns the final state.
pub fn stepwise(image: &MemoryImage, weights: &WeightTree, tol: f64) -> Result<BranchState, String> {
    let k = image.address_bits();
    let prune = match image.encoding() {
        CellEncoding::Fixed { .. } => Some(DEFAULT_PRUNE),
        CellEncoding::Exact => None,
    };
    let mut state = BranchState::init(k, image.mode(), image.encoding())
        .map_err(|e| e.to_string())?
        .with_pruning(prune);
    let mut ledger = QueryLedger::new(k);
    let norm = |s: &BranchState, what: &str| -> Check {
        let n = s.norm_sqr();
        if (n - 1.0).abs() > tol {
            Err(format!("norm {n} after {what}"))
        } else {
            Ok(())
        }
    };
    for h in 1..=k {
        image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
        norm(&state, "load query")?;
        ry_cascade(&mut state);
        norm(&state, "R_y cascade")?;
        image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
        norm(&state, "uncompute query")?;
        if !state.is_clean() {
            return Err(format!("dirty work registers after iteration {h}"));
        }
        circular_shift(&mut state).map_err(|e| e.to_string())?;
        norm(&state, "shift")?;
        if !marker_check(&state, h, weights) {
            return Err(format!("routing marker fails after iteration {h}"));
        }
        if state.len() > 1 << h {
            return Err(format!("{} branches after iteration {h}", state.len()));
        }
    }
    image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
    match image.mode() {
        EncodingMode::Complex => phase_cascade(&mut state),
        EncodingMode::RealSigned => controlled_z_sign(&mut state),
    }
    .map_err(|e| e.to_string())?;
    norm(&state, "leaf step")?;
    image.query(&mut state, &mut ledger).map_err(|e| e.to_string())?;
    norm(&state, "final query")?;
    if ledger.query_count() != 2 * k as u64 + 2 {
        return Err(format!("{} queries for k = {k}", ledger.query_count()));
    }
    Ok(state)
}

/// Real-signed and complex pipelines produce the same amplitudes on a real matrix.
pub fn real_matches_complex(m: &ComplexMatrix, encoding: CellEncoding, tol: f64) -> Check {
    let real = MemoryImage::from_tree(&ComplexAngleTree::real_signed(m).unwrap(), encoding).unwrap();
    let complex = MemoryImage::from_tree(&ComplexAngleTree::complex(m).unwrap(), encoding).unwrap();
    let a = bbqram_prep::prepare(&real).unwrap().state.address_amplitudes().unwrap();
    let b = bbqram_prep::prepare(&complex).unwrap().state.address_amplitudes().unwrap();
    let gap = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if gap > tol {
        return Err(format!("pipelines differ by {gap:e}"));
    }
    Ok(())
}
