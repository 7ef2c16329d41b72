//! The 2x4 worked example, embedded, with a step-by-step replay that checks
//! every intermediate quantity.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use num_complex::Complex64;

use crate::angles::{ComplexAngleTree, EncodingMode};
use crate::bbqram::{CellEncoding, MemoryImage};
use crate::fixedpoint::{self, circular_distance};
use crate::matrix::{load_matrix, ComplexMatrix, Format};
use crate::sim::{marker_check, prepare, prepare_matrix, BasisLabel, SimMode};
use crate::verify::{oracle_state, state_error};
use crate::{Error, Result};

/// JSON source of the worked example matrix
/// `[[2+i, -1+2i, 3, -i], [1-i, 2i, -2+i, 1+i]]`.
pub const EXAMPLE_JSON: &str = include_str!("../data/example_matrix.json");

pub const SQUARED_MODULI: [f64; 8] = [5., 5., 9., 1., 2., 4., 5., 2.];
/// Tree levels 0..=2.
pub const TREE_LEVELS: [&[f64]; 3] = [&[33.], &[20., 13.], &[10., 10., 6., 7.]];
/// `theta_1..theta_7` as displayed (three decimals).
pub const ANGLES: [f64; 7] = [1.357, FRAC_PI_2, 1.648, FRAC_PI_2, 0.644, 1.911, 1.128];
/// Signed phase representatives `phi_0..phi_7` as displayed.
pub const PHASES: [f64; 8] = [0.464, 2.034, 0.0, -FRAC_PI_2, -0.785, FRAC_PI_2, 2.678, 0.785];

/// Tolerance for values displayed with three decimals.
pub const DISPLAY_TOL: f64 = 1e-3;
pub const INTERMEDIATE_TOL: f64 = 1e-6;
pub const FINAL_TOL: f64 = 1e-10;

pub fn example_matrix() -> ComplexMatrix {
    load_matrix(EXAMPLE_JSON.as_bytes(), Format::Json).expect("embedded example is valid")
}

fn check(out: &mut dyn Write, ok: bool, what: &str, detail: String) -> Result<()> {
    writeln!(out, "  [{}] {what}: {detail}", if ok { "pass" } else { "FAIL" })?;
    if ok {
        Ok(())
    } else {
        Err(Error::AssertionFailure(format!("{what}: {detail}")))
    }
}

fn fmt_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| format!("{x:.3}")).collect();
    format!("[{}]", items.join(", "))
}

/// Replays the worked example, writing a transcript to `out`.
///
/// Stops at the first mismatch with [`Error::AssertionFailure`] naming it.
pub fn replay(out: &mut dyn Write) -> Result<()> {
    let m = example_matrix();
    writeln!(out, "Worked example: A = [[2+i, -1+2i, 3, -i], [1-i, 2i, -2+i, 1+i]]")?;
    check(
        out,
        (m.rows(), m.cols(), m.len(), m.address_bits()) == (2, 4, 8, 3),
        "dimensions",
        format!("M = {}, N = {}, K = {}, k = {}", m.rows(), m.cols(), m.len(), m.address_bits()),
    )?;

    writeln!(out, "Classical preprocessing")?;
    let moduli = m.squared_moduli();
    check(out, moduli == SQUARED_MODULI, "squared moduli", fmt_list(&moduli))?;
    let total: f64 = moduli.iter().sum();
    check(out, total == 33.0, "normalization", format!("sum of squared moduli = {total}"))?;

    let gamma = ComplexAngleTree::complex(&m)?;
    for (h, want) in TREE_LEVELS.iter().enumerate() {
        let got = gamma.weights.level(h as u32);
        check(out, got == *want, &format!("tree level {h}"), fmt_list(got))?;
    }

    let thetas = gamma.thetas.as_slice();
    let worst = thetas.iter().zip(ANGLES).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    check(
        out,
        worst <= DISPLAY_TOL,
        "angles theta_1..theta_7",
        format!("{} (max deviation {worst:.1e})", fmt_list(thetas)),
    )?;
    let worst = gamma
        .phases
        .iter()
        .zip(PHASES)
        .map(|(a, b)| circular_distance(*a, b))
        .fold(0.0, f64::max);
    check(
        out,
        worst <= DISPLAY_TOL,
        "phases phi_0..phi_7 (mod 2pi)",
        format!("{} (max deviation {worst:.1e})", fmt_list(&gamma.phases)),
    )?;

    let t = 12;
    let image = MemoryImage::from_tree(&gamma, CellEncoding::fixed(t)?)?;
    let angle_slack = DISPLAY_TOL + fixedpoint::angle_step(t) / 2.0;
    let phase_slack = DISPLAY_TOL + fixedpoint::phase_step(t) / 2.0;
    let mut cells_ok = image.fields(0)?.0 == 0;
    for z in 0..8 {
        if z > 0 {
            cells_ok &= (image.angle(z)? - ANGLES[z - 1]).abs() <= angle_slack;
        }
        cells_ok &= circular_distance(image.phase(z)?, PHASES[z]) <= phase_slack;
    }
    check(
        out,
        cells_ok,
        "memory cells at t = 12",
        format!("{} cells of {} bits, dummy angle in cell 0", image.len(), image.width()),
    )?;

    writeln!(out, "Step 1: amplitude preparation (ideal angles)")?;
    let run = prepare_matrix(&m, EncodingMode::Complex, SimMode::Ideal, t)?;
    let norm = 33f64.sqrt();
    for h in 1..=3u32 {
        let state = &run.iterations[h as usize - 1];
        let level = gamma.weights.level(h);
        let mut worst: f64 = 0.0;
        let mut terms = Vec::new();
        for (p, w) in level.iter().enumerate() {
            let label = if h < 3 {
                BasisLabel { address: (1 << h) + p as u64, v: false, data: 0 }
            } else {
                BasisLabel { address: p as u64, v: true, data: 0 }
            };
            let amp = state.amplitude(&label);
            worst = worst.max((amp - Complex64::new(w.sqrt() / norm, 0.0)).norm());
            terms.push(format!("sqrt({w})|{:03b}>", label.address));
        }
        let ok = worst <= INTERMEDIATE_TOL
            && state.len() == level.len()
            && marker_check(state, h, &gamma.weights);
        check(
            out,
            ok,
            &format!("state after h = {h}"),
            format!("(1/sqrt(33))({}) (max deviation {worst:.1e})", terms.join(" + ")),
        )?;
    }

    writeln!(out, "Step 2: phase encoding")?;
    let oracle = oracle_state(&m)?;
    let err = state_error(&run.state, &oracle)?;
    check(
        out,
        err <= FINAL_TOL,
        "final state equals A / sqrt(33)",
        format!("l2 error {err:.2e}"),
    )?;
    check(
        out,
        run.ledger.query_count() == 8 && run.ledger.routing_time() == 24,
        "query ledger",
        format!(
            "{} queries, routing time {}",
            run.ledger.query_count(),
            run.ledger.routing_time()
        ),
    )?;

    let fixed = prepare(&image)?;
    let err = state_error(&fixed.state, &oracle)?;
    let bound = crate::verify::error_bound(3, t);
    check(
        out,
        err <= 4.0 * bound,
        "fixed-point run at t = 12",
        format!("l2 error {err:.2e} vs bound {bound:.2e}"),
    )?;
    writeln!(out, "All checks passed.")?;
    Ok(())
}
