//! Recover an integer minimal polynomial from floating conjugates.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gcd::content;
use super::IntPolynomial;
use crate::error::{Error, Result};

/// Best rational p/q with q <= max_den, by continued fractions.
fn rational_approx(x: f64, max_den: i64) -> (i64, i64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 9.0e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = match (a.checked_mul(p1).and_then(|v| v.checked_add(p0)), a.checked_mul(q1).and_then(|v| v.checked_add(q0))) {
            (Some(p), Some(q)) => (p, q),
            _ => break,
        };
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = r - a as f64;
        if frac.abs() < 1e-13 || (x - p1 as f64 / q1 as f64).abs() <= 1e-13 * (1.0 + x.abs()) {
            break;
        }
        r = 1.0 / frac;
    }
    (p1, q1)
}

/// Integer minimal polynomial whose roots are exactly `values` (assumed distinct and Galois-stable).
pub fn recognize_minimal_polynomial(values: &[Complex64], max_den: i64) -> Result<IntPolynomial> {
    if values.is_empty() {
        return Err(Error::Recognition("no values".into()));
    }
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for v in values {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (j, a) in c.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * v;
        }
        c = next;
    }
    let mut nums = Vec::with_capacity(c.len());
    let mut dens = Vec::with_capacity(c.len());
    for z in &c {
        let scale = 1.0 + z.norm();
        if z.im.abs() > 1e-7 * scale {
            return Err(Error::Recognition(format!("coefficient {z} is not real")));
        }
        let (p, q) = rational_approx(z.re, max_den);
        if q == 0 || (z.re - p as f64 / q as f64).abs() > 1e-7 * scale {
            return Err(Error::Recognition(format!("coefficient {} is not a small rational", z.re)));
        }
        nums.push(BigInt::from(p));
        dens.push(BigInt::from(q));
    }
    let l = dens.iter().fold(BigInt::one(), |acc, q| acc.lcm(q));
    let mut ints: Vec<BigInt> = nums.iter().zip(&dens).map(|(p, q)| p * (&l / q)).collect();
    let g = content(&ints);
    if !g.is_zero() {
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
    }
    IntPolynomial::new_allow_zero_constant(ints)
}

/// Weil height of the conjugate set `values`: m(P)/deg with P the recognized minimal polynomial.
pub fn height_from_conjugates(values: &[Complex64]) -> Result<f64> {
    let p = recognize_minimal_polynomial(values, 1_000_000)?;
    let lead = super::bigint_abs_ln(p.leading());
    let s: f64 = values.iter().map(|v| v.norm().ln().max(0.0)).sum();
    Ok((lead + s) / values.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_conjugates() {
        let r = 2f64.sqrt();
        let p = recognize_minimal_polynomial(&[Complex64::new(r, 0.0), Complex64::new(-r, 0.0)], 1000).unwrap();
        assert_eq!(p.to_string(), "2: -2 0 1");
    }

    #[test]
    fn non_monic_recovered() {
        let v = [Complex64::new(0.5, 0.0), Complex64::new(-1.0 / 3.0, 0.0)];
        let p = recognize_minimal_polynomial(&v, 1000).unwrap();
        assert_eq!(p.to_string(), "2: -1 -1 6");
        let h = height_from_conjugates(&v).unwrap();
        assert!((h - 6f64.ln() / 2.0).abs() < 1e-12);
    }
}
