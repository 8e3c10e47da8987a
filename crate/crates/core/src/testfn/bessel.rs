//! Bessel function of the first kind, order zero.

use std::f64::consts::PI;

/// J0(x): periodic trapezoid of the integral representation up to 40, Hankel expansion above.
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 40.0 {
        const N: usize = 128;
        let mut s = 0.0;
        for k in 0..N {
            let tau = 2.0 * PI * (k as f64 + 0.5) / N as f64;
            s += (x * tau.sin()).cos();
        }
        s / N as f64
    } else {
        let mut p = 0.0;
        let mut q = 0.0;
        let mut b = 1.0;
        let mut xp = 1.0;
        let mut last = f64::INFINITY;
        for k in 0..30usize {
            if k > 0 {
                let m = (2 * k - 1) as f64;
                b *= m * m / (8.0 * k as f64);
                xp *= x;
            }
            let term = b / xp;
            if term > last {
                break;
            }
            last = term;
            match k % 4 {
                0 => p += term,
                1 => q -= term,
                2 => p -= term,
                _ => q += term,
            }
            if term < 1e-18 {
                break;
            }
        }
        let chi = x - PI / 4.0;
        (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}
