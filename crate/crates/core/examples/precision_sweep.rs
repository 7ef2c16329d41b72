// Measured error and analytic bound across precisions for a random matrix.

use bbqram_prep::random::random_complex;
use bbqram_prep::verify::{precision_for, precision_sweep, sweep_csv};
use bbqram_prep::EncodingMode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbqram_prep::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let m = random_complex(&mut rng, 8, 16, 0.1);
    let ts: Vec<u32> = (6..=20).collect();
    let rows = precision_sweep(&m, EncodingMode::Complex, &ts)?;
    print!("{}", sweep_csv(&rows));
    for eta in [1e-3, 1e-6] {
        println!("# smallest t with bound <= {eta:e}: {:?}", precision_for(m.address_bits(), eta));
    }
    assert!(rows.iter().all(|r| r.measured_error <= 4.0 * r.bound));
    Ok(())
}
