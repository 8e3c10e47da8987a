//! Gap-based clustering of values in log-polar form.

use num_complex::Complex64;

use crate::error::{Error, Result};

const LADDER: [f64; 3] = [1e-6, 1e-8, 1e-4];

/// Groups of indices whose (log-modulus, angle-in-turns) agree within `tol`.
fn clusters(pts: &[(f64, f64)], tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].0.total_cmp(&pts[b].0));
    let mut out = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() {
            let (p, q) = (pts[order[end - 1]].0, pts[order[end]].0);
            if q - p > tol * (1.0 + p.abs()) {
                break;
            }
            end += 1;
        }
        let mut band: Vec<usize> = order[start..end].to_vec();
        band.sort_by(|&a, &b| pts[a].1.total_cmp(&pts[b].1));
        let mut groups: Vec<Vec<usize>> = vec![vec![band[0]]];
        for w in band.windows(2) {
            if pts[w[1]].1 - pts[w[0]].1 > tol {
                groups.push(vec![]);
            }
            groups.last_mut().unwrap().push(w[1]);
        }
        if groups.len() > 1 {
            let wrap = pts[band[0]].1 + 1.0 - pts[*band.last().unwrap()].1;
            if wrap <= tol {
                let last = groups.pop().unwrap();
                groups[0].extend(last);
            }
        }
        out.extend(groups);
        start = end;
    }
    out
}

fn consistent(groups: &[Vec<usize>], size: usize) -> bool {
    let k = groups.len();
    k > 0 && size % k == 0 && groups.iter().all(|g| g.len() == size / k)
}

fn settle(pts: &[(f64, f64)], size: usize) -> Result<Vec<Vec<usize>>> {
    for tol in LADDER {
        let g = clusters(pts, tol);
        if consistent(&g, size) {
            return Ok(g);
        }
    }
    Err(Error::AmbiguousClustering(format!(
        "no tolerance in {LADDER:?} splits {size} values into equal classes"
    )))
}

/// Number of distinct values, validated by equal class sizes dividing |S|.
pub(crate) fn orbit_cluster_count(pts: &[(f64, f64)], size: usize) -> Result<usize> {
    settle(pts, size).map(|g| g.len())
}

/// One (log-modulus, angle) representative per class.
pub(crate) fn orbit_cluster_representatives(pts: &[(f64, f64)], size: usize) -> Result<Vec<(f64, f64)>> {
    let groups = settle(pts, size)?;
    Ok(groups
        .iter()
        .map(|g| {
            let l = g.iter().map(|&i| pts[i].0).sum::<f64>() / g.len() as f64;
            let a0 = pts[g[0]].1;
            let da = g
                .iter()
                .map(|&i| {
                    let d = pts[i].1 - a0;
                    d - d.round()
                })
                .sum::<f64>()
                / g.len() as f64;
            (l, a0 + da)
        })
        .collect())
}

/// Distinct complex numbers up to relative tolerance.
pub(crate) fn distinct_complex(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for z in sorted {
        if !out.iter().any(|w| (w - z).norm() <= tol * (1.0 + z.norm())) {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraparound_merges() {
        let pts = [(0.0, 0.0), (0.0, 1.0 - 1e-12), (0.0, 0.5), (0.0, 0.5 + 1e-12)];
        assert_eq!(orbit_cluster_count(&pts, 4).unwrap(), 2);
    }

    #[test]
    fn unequal_classes_rejected() {
        let pts = [(0.0, 0.0), (0.0, 0.0), (0.0, 0.5)];
        assert!(matches!(orbit_cluster_count(&pts, 3), Err(Error::AmbiguousClustering(_))));
    }
}
