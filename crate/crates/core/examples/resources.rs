// Closed-form resource counts for large sizes.

use bbqram_prep::verify::resource_report;
use bbqram_prep::EncodingMode;

fn main() -> bbqram_prep::Result<()> {
    println!("{:>12} {:>4} {:>7} {:>14} {:>8} {:>8}", "K", "t", "qubits", "memory bits", "queries", "routing");
    for mode in [EncodingMode::Complex, EncodingMode::RealSigned] {
        println!("{}", mode.name());
        for size in [1u64 << 10, 1 << 20, 1 << 30] {
            let r = resource_report(size, 32, mode)?;
            println!(
                "{:>12} {:>4} {:>7} {:>14} {:>8} {:>8}",
                r.size, r.t, r.qpu_qubits, r.memory_bits, r.query_count, r.routing_time
            );
        }
    }
    println!("{}", resource_report(8, 12, EncodingMode::Complex)?.to_json());
    Ok(())
}
