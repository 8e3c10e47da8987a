//! Exact polynomial arithmetic over the integers: pseudo-remainders and the
//! subresultant remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn degree(v: &[BigInt]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let mut e = r.len() - b.len() + 1;
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        trim(&mut r);
        e -= 1;
    }
    let f = num_traits::pow(lb.clone(), e);
    for c in r.iter_mut() {
        *c *= &f;
    }
    r
}

fn div_scalar_exact(v: &mut [BigInt], s: &BigInt) {
    for c in v.iter_mut() {
        debug_assert!((&*c % s).is_zero());
        *c = &*c / s;
    }
}

/// Degree of gcd(a, b) over the rationals via the subresultant sequence.
pub(crate) fn gcd_degree(a: &[BigInt], b: &[BigInt]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let Some(_) = degree(&b) else {
        return degree(&a).unwrap_or(0);
    };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        match degree(&r) {
            None => return b.len() - 1,
            Some(0) => return 0,
            Some(_) => {}
        }
        a = b;
        b = r;
        let denom = &g * num_traits::pow(h.clone(), delta);
        div_scalar_exact(&mut b, &denom);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1),
        };
    }
}

/// Exact quotient a / b, assuming b divides a over the integers.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let (t, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &t * c;
        }
        q[shift] = t;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c)).abs()
}
