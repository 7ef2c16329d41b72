// Reads matrices from CSV and JSON text, including padding of ragged sizes.

use bbqram_prep::matrix::{load_matrix, Format};

const CSV: &str = "\
# 3 x 3, padded to 4 x 4
1, -2i, 0.5+0.5i
3, 0, -1-1i
i, 2, 0
";

const JSON: &str = r#"{"rows": 1, "cols": 3, "entries": [[1, 0], [0, 1], [-1, 0]]}"#;

fn main() -> bbqram_prep::Result<()> {
    let m = load_matrix(CSV.as_bytes(), Format::Csv)?;
    println!("csv: {:?} padded to {} x {} (k = {})", m.original_dims(), m.rows(), m.cols(), m.address_bits());
    println!("frobenius norm {:.6}", m.frobenius_norm());

    let m = load_matrix(JSON.as_bytes(), Format::Json)?;
    println!("json: {:?} padded to {} x {}", m.original_dims(), m.rows(), m.cols());
    println!("{}", m.to_json());

    for bad in ["1, 2\n3\n", "nan, 1\n", "0, 0\n0, 0\n"] {
        println!("{bad:?} -> {}", load_matrix(bad.as_bytes(), Format::Csv).unwrap_err());
    }
    Ok(())
}
