//! Matrix ingestion: parsing, validation, zero padding and row-major indexing.

use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Supported on-disk matrix formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `{"rows": M, "cols": N, "entries": [[re, im], ...]}` in row-major order.
    Json,
    /// One matrix row per line, complex literals such as `2+1i`, `-i`, `3`.
    Csv,
}

impl Format {
    /// Picks a format from a file extension, defaulting to JSON.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// A dense complex matrix padded to power-of-two dimensions.
///
/// Entries are stored row-major, so the entry at `(i, j)` lives at flat index
/// `z = i * cols + j`. Padding rows and columns hold exactly `0 + 0i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    original_rows: usize,
    original_cols: usize,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl ComplexMatrix {
    /// Validates an `rows x cols` row-major matrix and zero-pads each dimension
    /// to the next power of two.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                what: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(z) = entries.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite(z));
        }
        if entries.iter().all(|a| a.re == 0.0 && a.im == 0.0) {
            return Err(Error::AllZeroMatrix);
        }
        let padded_rows = rows.next_power_of_two();
        let padded_cols = cols.next_power_of_two();
        if padded_rows * padded_cols < 2 {
            return Err(Error::SingleEntry);
        }
        let mut padded = vec![Complex64::new(0.0, 0.0); padded_rows * padded_cols];
        for (i, row) in entries.chunks(cols).enumerate() {
            padded[i * padded_cols..i * padded_cols + cols].copy_from_slice(row);
        }
        Ok(ComplexMatrix {
            rows: padded_rows,
            cols: padded_cols,
            original_rows: rows,
            original_cols: cols,
            entries: padded,
        })
    }

    /// Builds a matrix from real row-major values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Padded row count `M`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Padded column count `N`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn original_dims(&self) -> (usize, usize) {
        (self.original_rows, self.original_cols)
    }

    /// Number of amplitudes `K = M * N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Address width `k = log2 K`.
    pub fn address_bits(&self) -> u32 {
        self.entries.len().trailing_zeros()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Result<Complex64> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { index: i, bound: self.rows });
        }
        Ok(self.entries[flat_index(i, j, self.cols)?])
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|a| a.im == 0.0)
    }

    /// `|a_z|^2 = Re(a_z)^2 + Im(a_z)^2` for every flat index.
    pub fn squared_moduli(&self) -> Vec<f64> {
        self.entries.iter().map(|a| a.re * a.re + a.im * a.im).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.squared_moduli().iter().sum::<f64>().sqrt()
    }

    /// Serializes the padded matrix in the JSON interchange format.
    pub fn to_json(&self) -> String {
        let doc = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("matrix serialization cannot fail")
    }
}

/// Row-major flat index `z = i * cols + j`.
pub fn flat_index(i: usize, j: usize, cols: usize) -> Result<usize> {
    if j >= cols {
        return Err(Error::IndexOutOfRange { index: j, bound: cols });
    }
    Ok(i * cols + j)
}

/// Inverse of [`flat_index`].
pub fn split_index(z: usize, cols: usize) -> (usize, usize) {
    (z / cols, z % cols)
}

/// Reads and validates a matrix from `source`.
pub fn load_matrix<R: Read>(mut source: R, format: Format) -> Result<ComplexMatrix> {
    match format {
        Format::Json => {
            let mut text = String::new();
            source.read_to_string(&mut text)?;
            parse_json(&text)
        }
        Format::Csv => parse_csv(source),
    }
}

fn parse_json(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    let entries = doc
        .entries
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::new(doc.rows, doc.cols, entries)
}

fn parse_csv<R: Read>(source: R) -> Result<ComplexMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source);
    let mut entries = Vec::new();
    let mut rows = 0;
    let mut cols = None;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("matrix CSV: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        match cols {
            None => cols = Some(record.len()),
            Some(n) if n != record.len() => {
                return Err(Error::Parse(format!(
                    "matrix CSV: row {rows} has {} columns, expected {n}",
                    record.len()
                )))
            }
            Some(_) => {}
        }
        for field in record.iter() {
            entries.push(parse_complex(field)?);
        }
        rows += 1;
    }
    ComplexMatrix::new(rows, cols.unwrap_or(0), entries)
}

/// Parses a complex literal of the form `a`, `bi`, `a+bi` or `a-bi`.
///
/// The imaginary unit may be written `i` or `j`; a bare unit means a
/// coefficient of one (`-i`, `2+i`).
pub fn parse_complex(literal: &str) -> Result<Complex64> {
    let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex literal {literal:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            4,
            vec![
                c(2., 1.),
                c(-1., 2.),
                c(3., 0.),
                c(0., -1.),
                c(1., -1.),
                c(0., 2.),
                c(-2., 1.),
                c(1., 1.),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_dimensions() {
        let m = example();
        assert_eq!((m.rows(), m.cols(), m.len(), m.address_bits()), (2, 4, 8, 3));
        assert_eq!(m.squared_moduli(), vec![5., 5., 9., 1., 2., 4., 5., 2.]);
        assert_eq!(m.squared_moduli().iter().sum::<f64>(), 33.0);
    }

    #[test]
    fn flat_index_examples() {
        assert_eq!(flat_index(1, 2, 4).unwrap(), 6);
        assert_eq!(example().entries()[6], c(-2., 1.));
        assert_eq!(flat_index(0, 0, 4).unwrap(), 0);
        assert_eq!(flat_index(1, 3, 4).unwrap(), 7);
        assert!(matches!(flat_index(0, 4, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(example().get(2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(ComplexMatrix::from_real(1, 1, &[0.0]), Err(Error::AllZeroMatrix)));
        assert!(matches!(ComplexMatrix::from_real(2, 2, &[0.0; 4]), Err(Error::AllZeroMatrix)));
        assert!(matches!(ComplexMatrix::from_real(1, 1, &[3.0]), Err(Error::SingleEntry)));
        assert!(matches!(ComplexMatrix::from_real(0, 3, &[]), Err(Error::EmptyMatrix)));
        assert!(matches!(
            ComplexMatrix::from_real(2, 2, &[1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite(1))
        ));
        assert!(matches!(
            ComplexMatrix::from_real(2, 2, &[1.0; 3]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn pads_each_dimension() {
        let m = ComplexMatrix::from_real(2, 3, &[1., 2., 3., 4., 5., 6.]).unwrap();
        assert_eq!((m.rows(), m.cols(), m.original_dims()), (2, 4, (2, 3)));
        assert_eq!(m.get(0, 3).unwrap(), c(0., 0.));
        assert_eq!(m.get(1, 3).unwrap(), c(0., 0.));
        assert_eq!(m.get(1, 0).unwrap(), c(4., 0.));

        let v = ComplexMatrix::from_real(1, 3, &[1., 0., 2.]).unwrap();
        assert_eq!((v.rows(), v.cols(), v.len()), (1, 4, 4));
        let col = ComplexMatrix::from_real(3, 1, &[1., 0., 2.]).unwrap();
        assert_eq!((col.rows(), col.cols()), (4, 1));
        assert_eq!(col.entries()[3], c(0., 0.));
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2+1i").unwrap(), c(2., 1.));
        assert_eq!(parse_complex("2+i").unwrap(), c(2., 1.));
        assert_eq!(parse_complex("-1+2i").unwrap(), c(-1., 2.));
        assert_eq!(parse_complex("1-i").unwrap(), c(1., -1.));
        assert_eq!(parse_complex("-i").unwrap(), c(0., -1.));
        assert_eq!(parse_complex("i").unwrap(), c(0., 1.));
        assert_eq!(parse_complex("3").unwrap(), c(3., 0.));
        assert_eq!(parse_complex(" 2.5i ").unwrap(), c(0., 2.5));
        assert_eq!(parse_complex("1e-3-2E+2i").unwrap(), c(1e-3, -200.));
        assert_eq!(parse_complex("-1.5e2").unwrap(), c(-150., 0.));
        assert_eq!(parse_complex("4-3j").unwrap(), c(4., -3.));
        for bad in ["", "abc", "1+2", "1++2i", "i2"] {
            assert!(parse_complex(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn loads_csv_and_json() {
        let csv = "2+i, -1+2i, 3, -i\n1-i, 2i, -2+i, 1+i\n";
        let from_csv = load_matrix(csv.as_bytes(), Format::Csv).unwrap();
        assert_eq!(from_csv, example());
        let from_json = load_matrix(example().to_json().as_bytes(), Format::Json).unwrap();
        assert_eq!(from_json, example());
        let ragged = "1, 2\n3\n";
        assert!(matches!(load_matrix(ragged.as_bytes(), Format::Csv), Err(Error::Parse(_))));
        let short = r#"{"rows": 2, "cols": 2, "entries": [[1,0]]}"#;
        assert!(matches!(
            load_matrix(short.as_bytes(), Format::Json),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(load_matrix("{".as_bytes(), Format::Json), Err(Error::Parse(_))));
        assert!(matches!(load_matrix("".as_bytes(), Format::Csv), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn index_round_trip() {
        let cols = 8;
        for z in 0..64 {
            let (i, j) = split_index(z, cols);
            assert_eq!(flat_index(i, j, cols).unwrap(), z);
        }
    }
}
