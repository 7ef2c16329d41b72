//! Seeded random matrices for demos, sweeps and property tests.

use num_complex::Complex64;
use rand::Rng;

use crate::matrix::ComplexMatrix;

/// `rows x cols` matrix with entries uniform in the unit square; each entry is
/// zero with probability `zero_fraction`. Falls back to a nonzero first entry
/// if every draw came out zero.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    zero_fraction: f64,
) -> ComplexMatrix {
    let entries = draw(rng, rows * cols, zero_fraction, |rng| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    ComplexMatrix::new(rows, cols, entries).expect("random matrix is valid")
}

/// Real-valued variant of [`random_complex`].
pub fn random_real<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    zero_fraction: f64,
) -> ComplexMatrix {
    let entries = draw(rng, rows * cols, zero_fraction, |rng| {
        Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
    });
    ComplexMatrix::new(rows, cols, entries).expect("random matrix is valid")
}

fn draw<R: Rng>(
    rng: &mut R,
    len: usize,
    zero_fraction: f64,
    mut sample: impl FnMut(&mut R) -> Complex64,
) -> Vec<Complex64> {
    let mut entries: Vec<Complex64> = (0..len)
        .map(|_| {
            if rng.gen_bool(zero_fraction) {
                Complex64::default()
            } else {
                sample(rng)
            }
        })
        .collect();
    if entries.iter().all(|a| *a == Complex64::default()) {
        entries[0] = Complex64::new(1.0, 0.0);
    }
    entries
}

/// Splits `size = 2^k` into a near-square `rows x cols` shape.
pub fn square_shape(size: usize) -> (usize, usize) {
    let k = size.trailing_zeros();
    let rows = 1usize << (k / 2);
    (rows, size / rows)
}
