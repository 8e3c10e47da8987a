//! Deterministic parallel reductions: fixed chunking, ordered combine.

use num_complex::Complex64;
use rayon::prelude::*;

const CHUNK: usize = 4096;

pub(crate) fn sum_complex<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let parts: Vec<Complex64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).map(&f).fold(Complex64::new(0.0, 0.0), |a, b| a + b)
        })
        .collect();
    parts.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

pub(crate) fn sum_real<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let parts: Vec<f64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).map(&f).sum::<f64>()
        })
        .collect();
    parts.into_iter().sum()
}
