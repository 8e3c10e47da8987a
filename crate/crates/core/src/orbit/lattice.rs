//! Integer lattice enumeration by norm shells.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormP {
    #[serde(rename = "1")]
    L1,
    #[serde(rename = "2")]
    L2,
    #[serde(rename = "inf")]
    Inf,
}

impl NormP {
    pub fn norm(self, n: &[i64]) -> f64 {
        match self {
            NormP::L1 => n.iter().map(|v| v.unsigned_abs() as f64).sum(),
            NormP::L2 => n.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt(),
            NormP::Inf => n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64,
        }
    }

    /// Smallest value of this norm on the l1 sphere of radius `r` in dimension `dim`.
    pub fn lower_bound_on_l1_shell(self, r: u64, dim: usize) -> f64 {
        let r = r as f64;
        match self {
            NormP::L1 => r,
            NormP::L2 => r / (dim as f64).sqrt(),
            NormP::Inf => (r / dim as f64).ceil(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NormP::L1 => "1",
            NormP::L2 => "2",
            NormP::Inf => "inf",
        }
    }
}

impl std::str::FromStr for NormP {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "1" => Ok(NormP::L1),
            "2" => Ok(NormP::L2),
            "inf" | "Inf" | "infinity" => Ok(NormP::Inf),
            _ => Err(crate::Error::Parse(format!("norm must be 1, 2 or inf, got `{s}`"))),
        }
    }
}

pub fn l1_norm(n: &[i64]) -> u64 {
    n.iter().map(|v| v.unsigned_abs()).sum()
}

pub fn linf_norm(n: &[i64]) -> u64 {
    n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
}

fn shell_rec(dim: usize, r: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if dim == 1 {
        for v in [-r, r] {
            prefix.push(v);
            out.push(prefix.clone());
            prefix.pop();
            if r == 0 {
                break;
            }
        }
        return;
    }
    for a in -r..=r {
        prefix.push(a);
        shell_rec(dim - 1, r - a.abs(), prefix, out);
        prefix.pop();
    }
}

/// All n with ||n||_1 = r, in lexicographic order.
pub fn l1_shell(dim: usize, r: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    shell_rec(dim, r as i64, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Representatives of the l1 shell modulo n ~ -n: first nonzero entry positive.
pub fn l1_shell_canonical(dim: usize, r: u64) -> Vec<Vec<i64>> {
    l1_shell(dim, r)
        .into_iter()
        .filter(|n| n.iter().find(|&&v| v != 0).map_or(false, |&v| v > 0))
        .collect()
}

/// Visits every n with 0 < ||n||_inf <= m in lexicographic order.
pub fn for_each_in_linf_box<F: FnMut(&[i64])>(dim: usize, m: u64, mut f: F) {
    let m = m as i64;
    let mut n = vec![-m; dim];
    if m == 0 {
        return;
    }
    loop {
        if n.iter().any(|&v| v != 0) {
            f(&n);
        }
        let mut j = dim;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if n[j] < m {
                n[j] += 1;
                for v in n.iter_mut().skip(j + 1) {
                    *v = -m;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_sizes() {
        assert_eq!(l1_shell(1, 3), vec![vec![-3], vec![3]]);
        assert_eq!(l1_shell(2, 1), vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(l1_shell(2, 5).len(), 20);
        assert_eq!(l1_shell(3, 2).len(), 18);
        assert_eq!(l1_shell_canonical(2, 1), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn box_count() {
        let mut c = 0;
        for_each_in_linf_box(2, 3, |_| c += 1);
        assert_eq!(c, 48);
    }
}
