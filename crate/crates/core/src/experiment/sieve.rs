//! Primes in dyadic windows.

use crate::error::{Error, Result};

/// All primes below `n`.
pub fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 3 {
        return vec![];
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The `count` smallest primes p with 2^k < p < 2^{k+1}.
pub fn dyadic_primes(k: u32, count: usize) -> Result<Vec<u64>> {
    if k >= 40 {
        return Err(Error::InvalidConfig(format!("k = {k} is beyond the sieve range")));
    }
    let lo = 1u64 << k;
    let hi = lo << 1;
    let found: Vec<u64> = primes_below(hi).into_iter().filter(|&p| p > lo).take(count).collect();
    if found.len() < count {
        return Err(Error::NoPrimesInWindow { lo, hi, needed: count });
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(dyadic_primes(4, 2).unwrap(), vec![17, 19]);
        assert_eq!(dyadic_primes(10, 1).unwrap(), vec![1031]);
        assert!(matches!(dyadic_primes(1, 2), Err(Error::NoPrimesInWindow { .. })));
    }
}
