// Real matrices: the sign-bit pipeline against the general complex one.

use bbqram_prep::verify::{oracle_state, state_error};
use bbqram_prep::{prepare_matrix, ComplexMatrix, EncodingMode, SimMode};

fn main() -> bbqram_prep::Result<()> {
    let m = ComplexMatrix::from_real(2, 4, &[0.5, -1.0, 2.0, 0.0, -0.25, 1.5, -3.0, 1.0])?;
    let oracle = oracle_state(&m)?;
    let t = 14;

    let real = prepare_matrix(&m, EncodingMode::RealSigned, SimMode::Fixed, t)?;
    let complex = prepare_matrix(&m, EncodingMode::Complex, SimMode::Fixed, t)?;
    println!("real_signed  qubits {}  error {:.2e}", real.state.layout().qubits(), state_error(&real.state, &oracle)?);
    println!("complex      qubits {}  error {:.2e}", complex.state.layout().qubits(), state_error(&complex.state, &oracle)?);

    let a = real.state.address_amplitudes()?;
    let b = complex.state.address_amplitudes()?;
    let gap = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("max amplitude gap between pipelines {gap:.1e}");
    assert!(gap < 1e-12);

    let complex_input = bbqram_prep::example::example_matrix();
    if let Err(e) = prepare_matrix(&complex_input, EncodingMode::RealSigned, SimMode::Fixed, t) {
        println!("complex input in real_signed mode: {e}");
    }
    Ok(())
}
