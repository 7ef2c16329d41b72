// Loads a complex matrix, prepares its state at a few precisions and reports
// the query ledger and the error against the exact normalized matrix.

use bbqram_prep::example::example_matrix;
use bbqram_prep::verify::{error_bound, oracle_state, state_error};
use bbqram_prep::{prepare_matrix, EncodingMode, SimMode};

fn main() -> bbqram_prep::Result<()> {
    let m = example_matrix();
    let k = m.address_bits();
    let oracle = oracle_state(&m)?;

    let ideal = prepare_matrix(&m, EncodingMode::Complex, SimMode::Ideal, 0)?;
    println!(
        "ideal   queries {} routing_time {} error {:.2e}",
        ideal.ledger.query_count(),
        ideal.ledger.routing_time(),
        state_error(&ideal.state, &oracle)?
    );

    for t in [8, 12, 16, 24] {
        let run = prepare_matrix(&m, EncodingMode::Complex, SimMode::Fixed, t)?;
        let err = state_error(&run.state, &oracle)?;
        println!("t = {t:2}  error {err:.2e}  bound {:.2e}", error_bound(k, t));
        assert!(err <= 4.0 * error_bound(k, t));
    }

    for (z, amp) in ideal.state.address_amplitudes()?.iter().enumerate() {
        println!("|{z:03b}>  {:+.4} {:+.4}i", amp.re, amp.im);
    }
    Ok(())
}
