//! Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use bbqram_prep::example::{example_matrix, replay};
use bbqram_prep::verify::{error_bound, oracle_state, precision_for, resource_report, state_error};
use bbqram_prep::{
    prepare, prepare_matrix, CellEncoding, ComplexAngleTree, ComplexMatrix, EncodingMode,
    MemoryImage, SimMode, WeightTree,
};
use common::Check;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn worked_example() -> Check {
    let mut transcript = Vec::new();
    replay(&mut transcript).map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A11);
    for i in 0..200 {
        let k = 1 + i % 10;
        let m = common::matrix_with_k(&mut rng, k, false);
        let run = prepare_matrix(&m, EncodingMode::Complex, SimMode::Ideal, 0).map_err(|e| e.to_string())?;
        let err = state_error(&run.state, &oracle_state(&m).unwrap()).unwrap();
        if err > 1e-10 {
            return Err(format!("matrix {i} (k = {k}): ideal error {err:e}"));
        }
    }
    Ok(())
}

fn bound_holds(m: &ComplexMatrix, label: &str) -> Check {
    let oracle = oracle_state(m).unwrap();
    let k = m.address_bits();
    for t in 6..=20 {
        let run = prepare_matrix(m, EncodingMode::Complex, SimMode::Fixed, t).map_err(|e| e.to_string())?;
        let err = state_error(&run.state, &oracle).unwrap();
        if err > 4.0 * error_bound(k, t) {
            return Err(format!("{label}, t = {t}: error {err:e} exceeds 4 x {:e}", error_bound(k, t)));
        }
    }
    for eta in [1e-3, 1e-6] {
        let t = precision_for(k, eta).ok_or(format!("no t reaches {eta:e}"))?;
        let run = prepare_matrix(m, EncodingMode::Complex, SimMode::Fixed, t).map_err(|e| e.to_string())?;
        let err = state_error(&run.state, &oracle).unwrap();
        if err > 4.0 * eta {
            return Err(format!("{label}, eta = {eta:e}, t = {t}: error {err:e}"));
        }
    }
    Ok(())
}

fn precision_bound() -> Check {
    bound_holds(&example_matrix(), "example")?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0D);
    for i in 0..50 {
        let k = rng.gen_range(1..=8);
        bound_holds(&common::matrix_with_k(&mut rng, k, false), &format!("random matrix {i}"))?;
    }
    Ok(())
}

fn query_and_resource_counts() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0);
    for k in 1..=10u32 {
        for (mode, real) in [(EncodingMode::Complex, false), (EncodingMode::RealSigned, true)] {
            let m = common::matrix_with_k(&mut rng, k, real);
            let run = prepare_matrix(&m, mode, SimMode::Fixed, 12).map_err(|e| e.to_string())?;
            let q = run.ledger.query_count();
            if q != 2 * k as u64 + 2 || run.ledger.routing_time() != q * k as u64 {
                return Err(format!("{} k = {k}: {q} queries", mode.name()));
            }
        }
    }
    for (size, qubits, bits, queries) in [
        (1u64 << 10, 75, 65_536u64, 22),
        (1 << 20, 85, 67_108_864, 42),
        (1 << 30, 95, 68_719_476_736, 62),
    ] {
        let r = resource_report(size, 32, EncodingMode::Complex).map_err(|e| e.to_string())?;
        if (r.qpu_qubits, r.memory_bits, r.query_count) != (qubits, bits, queries) {
            return Err(format!("K = {size}: got {r:?}"));
        }
    }
    Ok(())
}

fn invariant_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DEA);
    for _ in 0..1000 {
        let t = rng.gen_range(2..=24);
        common::cascade_agreement(rng.gen_range(0..1 << t), rng.gen_range(0..1 << t), t, 1e-12)?;
    }
    for i in 0..100 {
        let k = rng.gen_range(1..=8);
        let real = i % 2 == 0;
        let m = common::matrix_with_k(&mut rng, k, real);
        let weights = WeightTree::build(&m.squared_moduli()).unwrap();
        common::level_conservation(&weights, 1e-12)?;
        let mode = if real { EncodingMode::RealSigned } else { EncodingMode::Complex };
        let gamma = ComplexAngleTree::build(&m, mode).unwrap();
        for encoding in [CellEncoding::Exact, CellEncoding::fixed(rng.gen_range(4..=30)).unwrap()] {
            let image = MemoryImage::from_tree(&gamma, encoding).unwrap();
            common::query_involution(&mut rng, &image)?;
            let state = common::stepwise(&image, &weights, 1e-12)?;
            if state != prepare(&image).unwrap().state {
                return Err("stepwise run differs from prepare".into());
            }
        }
        if real {
            common::real_matches_complex(&m, CellEncoding::Exact, 1e-12)?;
            common::real_matches_complex(&m, CellEncoding::fixed(16).unwrap(), 1e-12)?;
        }
    }
    Ok(())
}

/// Asymptotic query time and physical cost are not measurable in simulation;
/// the exact ledger accounting stands in for them.
fn substituted_accounting() -> Check {
    let m = example_matrix();
    let run = prepare_matrix(&m, EncodingMode::Complex, SimMode::Ideal, 0).map_err(|e| e.to_string())?;
    if run.ledger.routing_time() != run.ledger.query_count() * m.address_bits() as u64 {
        return Err("routing time is not queries x k".into());
    }
    for k in 1..=40u32 {
        let r = resource_report(1 << k, 32, EncodingMode::Complex).unwrap();
        if r.routing_time != (2 * k as u64 + 2) * k as u64 {
            return Err(format!("k = {k}: routing time {}", r.routing_time));
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 6] = [
        ("1 worked-example replay", worked_example, Duration::from_secs(1)),
        ("2 oracle equivalence", oracle_equivalence, Duration::from_secs(30)),
        ("3 precision bound", precision_bound, Duration::from_secs(60)),
        ("4 query and resource counts", query_and_resource_counts, Duration::from_secs(1)),
        ("5 invariant suite", invariant_suite, Duration::from_secs(60)),
        ("6 substituted query-time accounting", substituted_accounting, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over {limit:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name}: {verdict} [{:.2}s]", elapsed.as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
