// Builds a memory image, inspects its cells, round-trips it through JSON and
// shows that a query applied twice is the identity.

use bbqram_prep::example::example_matrix;
use bbqram_prep::sim::BranchState;
use bbqram_prep::{CellEncoding, ComplexAngleTree, MemoryImage, QueryLedger};

fn main() -> bbqram_prep::Result<()> {
    let gamma = ComplexAngleTree::complex(&example_matrix())?;
    let image = MemoryImage::from_tree(&gamma, CellEncoding::fixed(12)?)?;
    println!("{} cells x {} bits = {} bits", image.len(), image.width(), image.memory_bits());
    for z in 0..image.len() {
        let (angle_bits, phase_bits) = image.fields(z)?;
        println!(
            "z = {z}  angle {:>5} ({:.4})  phase {:>5} ({:.4})",
            angle_bits,
            image.angle(z)?,
            phase_bits,
            image.phase(z)?
        );
    }

    let json = image.to_json()?;
    assert_eq!(MemoryImage::from_json(&json)?, image);

    let mut state = BranchState::init(3, image.mode(), image.encoding())?;
    let before = state.clone();
    let mut ledger = QueryLedger::new(3);
    image.query(&mut state, &mut ledger)?;
    assert!(!state.is_clean());
    image.query(&mut state, &mut ledger)?;
    assert_eq!(state, before);
    println!("two queries restore the state; routing time {}", ledger.routing_time());
    Ok(())
}
