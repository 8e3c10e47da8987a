//! Box discrepancy of angular point sets on the torus and its upper bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::lattice::for_each_in_linf_box;
use crate::orbit::GaloisOrbit;

/// Default cap on the number of points for the exact two-dimensional computation.
pub const DEFAULT_CAP: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoints {
    Closed,
    Open,
    HalfOpen,
}

/// One arc of the circle R/Z, possibly wrapping past 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: f64,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusBox {
    pub arcs: Vec<Arc>,
    pub endpoints: Endpoints,
}

impl TorusBox {
    pub fn volume(&self) -> f64 {
        self.arcs.iter().map(|a| a.length).product()
    }

    /// Whether a point lies in the box under its endpoint convention.
    pub fn contains(&self, p: &[f64]) -> bool {
        self.arcs.iter().zip(p).all(|(a, &x)| {
            let off = arc_length(a.start, x);
            match self.endpoints {
                Endpoints::Closed => off <= a.length || (a.length >= 1.0),
                Endpoints::Open => off > 0.0 && off < a.length,
                Endpoints::HalfOpen => off < a.length,
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscrepancyResult {
    /// Supremum over all boxes of |count/|S| − volume|.
    pub value: f64,
    /// Largest deviation attained by a half-open box with endpoints at point coordinates.
    pub value_half_open: f64,
    pub witness: TorusBox,
    /// True when `value` is only a lower bound (N ≥ 3).
    pub lower_bound: bool,
    pub etk_m: Option<u64>,
    pub etk_value: Option<f64>,
    pub thm_a1_value: Option<f64>,
}

/// Forward length from a to b on R/Z, in [0, 1).
#[inline]
pub fn arc_length(a: f64, b: f64) -> f64 {
    let l = b - a;
    if l < 0.0 {
        l + 1.0
    } else {
        l
    }
}

/// Sorted distinct values, their multiplicities, and prefix counts.
struct Axis {
    vals: Vec<f64>,
    prefix: Vec<usize>,
}

impl Axis {
    fn new(xs: &[f64]) -> (Self, Vec<usize>) {
        let mut vals = xs.to_vec();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        let index: Vec<usize> = xs.iter().map(|x| vals.binary_search_by(|v| v.total_cmp(x)).unwrap()).collect();
        let mut counts = vec![0usize; vals.len()];
        for &i in &index {
            counts[i] += 1;
        }
        let mut prefix = vec![0usize; vals.len() + 1];
        for i in 0..vals.len() {
            prefix[i + 1] = prefix[i] + counts[i];
        }
        (Axis { vals, prefix }, index)
    }
}

struct Best {
    value: f64,
    witness: TorusBox,
}

impl Best {
    fn offer(&mut self, v: f64, mk: impl FnOnce() -> TorusBox) {
        if v > self.value {
            self.value = v;
            self.witness = mk();
        }
    }
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let dim = points.first().map(|p| p.len()).ok_or_else(|| Error::DegenerateInput("empty point set".into()))?;
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::DegenerateInput("points must share one positive dimension".into()));
    }
    if points.iter().flatten().any(|&x| !(0.0..1.0).contains(&x)) {
        return Err(Error::DegenerateInput("coordinates must lie in [0, 1)".into()));
    }
    Ok(dim)
}

/// Exact discrepancy for N = 1 over closed, open and half-open arcs with endpoints at the points.
fn exact_1d(xs: &[f64]) -> (Best, f64) {
    let d = xs.len() as f64;
    let (ax, _) = Axis::new(xs);
    let m = ax.vals.len();
    let p = &ax.prefix;
    let total = xs.len();
    let mut best = Best { value: 0.0, witness: TorusBox { arcs: vec![Arc { start: 0.0, length: 1.0 }], endpoints: Endpoints::Closed } };
    let mut half = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (ax.vals[i], ax.vals[j]);
            // closed [a, b]
            let (len, count) = if j >= i {
                (b - a, p[j + 1] - p[i])
            } else {
                (arc_length(a, b), total - (p[i] - p[j + 1]))
            };
            best.offer(count as f64 / d - len, || TorusBox { arcs: vec![Arc { start: a, length: len }], endpoints: Endpoints::Closed });
            // open (a, b)
            let (len, count) = if j > i {
                (b - a, p[j] - p[i + 1])
            } else if j < i {
                (arc_length(a, b), total - p[i + 1] + p[j])
            } else {
                (1.0, total - (p[i + 1] - p[i]))
            };
            best.offer(len - count as f64 / d, || TorusBox { arcs: vec![Arc { start: a, length: len }], endpoints: Endpoints::Open });
            // half-open [a, b)
            if i != j {
                let (len, count) = if j > i { (b - a, p[j] - p[i]) } else { (arc_length(a, b), total - p[i] + p[j]) };
                half = half.max((count as f64 / d - len).abs());
            }
        }
    }
    (best, half)
}

/// Exact discrepancy for N = 2 by rectangle sums on the doubled grid of distinct coordinates.
fn exact_2d(points: &[Vec<f64>]) -> (Best, f64) {
    let xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = points.iter().map(|p| p[1]).collect();
    let (ax, ix) = Axis::new(&xs);
    let (ay, iy) = Axis::new(&ys);
    let (p, q) = (ax.vals.len(), ay.vals.len());
    let d = points.len() as f64;
    // s[a][b] = #points with doubled x-index < a and doubled y-index < b
    let w = 2 * q + 1;
    let mut s = vec![0u32; (2 * p + 1) * w];
    let mut grid = vec![0u32; p * q];
    for (&i, &j) in ix.iter().zip(&iy) {
        grid[i * q + j] += 1;
    }
    for a in 0..2 * p {
        for b in 0..2 * q {
            let g = grid[(a % p) * q + (b % q)];
            s[(a + 1) * w + b + 1] = g + s[a * w + b + 1] + s[(a + 1) * w + b] - s[a * w + b];
        }
    }
    let rect = |a0: usize, a1: usize, b0: usize, b1: usize| -> u32 {
        // doubled indices [a0, a1) × [b0, b1)
        if a1 <= a0 || b1 <= b0 {
            return 0;
        }
        s[a1 * w + b1] + s[a0 * w + b0] - s[a0 * w + b1] - s[a1 * w + b0]
    };
    let len = |axis: &Axis, i: usize, j: usize| -> f64 {
        let n = axis.vals.len();
        if j >= n {
            axis.vals[j - n] - axis.vals[i] + 1.0
        } else {
            axis.vals[j] - axis.vals[i]
        }
    };
    let rows: Vec<(Best, f64)> = (0..p)
        .into_par_iter()
        .map(|i| {
            let mut best = Best { value: f64::NEG_INFINITY, witness: TorusBox { arcs: vec![], endpoints: Endpoints::Closed } };
            let mut half = 0.0f64;
            for j in i..i + p {
                let lx = len(&ax, i, j);
                for k in 0..q {
                    for l in k..k + q {
                        let ly = len(&ay, k, l);
                        let c = rect(i, j + 1, k, l + 1) as f64;
                        best.offer(c / d - lx * ly, || TorusBox {
                            arcs: vec![Arc { start: ax.vals[i], length: lx }, Arc { start: ay.vals[k], length: ly }],
                            endpoints: Endpoints::Closed,
                        });
                    }
                }
            }
            for j in i + 1..=i + p {
                let lx = if j == i + p { 1.0 } else { len(&ax, i, j) };
                for k in 0..q {
                    for l in k + 1..=k + q {
                        let ly = if l == k + q { 1.0 } else { len(&ay, k, l) };
                        let c = rect(i + 1, j, k + 1, l) as f64;
                        best.offer(lx * ly - c / d, || TorusBox {
                            arcs: vec![Arc { start: ax.vals[i], length: lx }, Arc { start: ay.vals[k], length: ly }],
                            endpoints: Endpoints::Open,
                        });
                        if j < i + p && l < k + q {
                            let c = rect(i, j, k, l) as f64;
                            half = half.max((c / d - lx * ly).abs());
                        }
                    }
                }
            }
            (best, half)
        })
        .collect();
    let mut best = Best { value: 0.0, witness: TorusBox { arcs: vec![Arc { start: 0.0, length: 1.0 }; 2], endpoints: Endpoints::Closed } };
    let mut half = 0.0f64;
    for (b, h) in rows {
        if b.value > best.value {
            best = b;
        }
        half = half.max(h);
    }
    (best, half)
}

/// Exact box discrepancy for N ≤ 2; `cap` bounds |S| for N = 2.
pub fn exact_discrepancy(points: &[Vec<f64>], cap: usize) -> Result<DiscrepancyResult> {
    let dim = check_points(points)?;
    let (best, half) = match dim {
        1 => {
            let xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
            exact_1d(&xs)
        }
        2 => {
            if points.len() > cap {
                return Err(Error::CapExceeded { count: points.len(), cap });
            }
            exact_2d(points)
        }
        n => return Err(Error::DimensionUnsupported(n)),
    };
    Ok(DiscrepancyResult {
        value: best.value,
        value_half_open: half,
        witness: best.witness,
        lower_bound: false,
        etk_m: None,
        etk_value: None,
        thm_a1_value: None,
    })
}

/// Deviation of one box.
fn box_deviation(points: &[Vec<f64>], b: &TorusBox) -> f64 {
    let c = points.iter().filter(|p| b.contains(p)).count() as f64;
    (c / points.len() as f64 - b.volume()).abs()
}

/// A seeded lower bound for any N: random boxes with endpoints at point coordinates,
/// then coordinate-wise refinement of the best one.
pub fn discrepancy_lower_bound(points: &[Vec<f64>], seed: u64, samples: usize) -> Result<DiscrepancyResult> {
    let dim = check_points(points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<Vec<f64>> = (0..dim)
        .map(|j| {
            let mut v: Vec<f64> = points.iter().map(|p| p[j]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    let make = |ends: &[(usize, usize)], e: Endpoints| TorusBox {
        arcs: ends
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| {
                let (s, t) = (coords[j][a], coords[j][b]);
                let l = if a == b && e == Endpoints::Open { 1.0 } else { arc_length(s, t) };
                Arc { start: s, length: l }
            })
            .collect(),
        endpoints: e,
    };
    let mut best = (0.0, make(&vec![(0, 0); dim], Endpoints::Closed), vec![(0, 0); dim]);
    for _ in 0..samples {
        let ends: Vec<(usize, usize)> =
            coords.iter().map(|c| (rng.gen_range(0..c.len()), rng.gen_range(0..c.len()))).collect();
        for e in [Endpoints::Closed, Endpoints::Open] {
            let b = make(&ends, e);
            let v = box_deviation(points, &b);
            if v > best.0 {
                best = (v, b, ends.clone());
            }
        }
    }
    let mut improved = true;
    while improved {
        improved = false;
        for j in 0..dim {
            for side in 0..2 {
                for k in 0..coords[j].len() {
                    let mut ends = best.2.clone();
                    if side == 0 {
                        ends[j].0 = k;
                    } else {
                        ends[j].1 = k;
                    }
                    let b = make(&ends, best.1.endpoints);
                    let v = box_deviation(points, &b);
                    if v > best.0 + 1e-15 {
                        best = (v, b, ends);
                        improved = true;
                    }
                }
            }
        }
    }
    Ok(DiscrepancyResult {
        value: best.0,
        value_half_open: f64::NAN,
        witness: best.1,
        lower_bound: true,
        etk_m: None,
        etk_value: None,
        thm_a1_value: None,
    })
}

/// Direct enumeration of closed and open boxes with endpoints at point coordinates,
/// counting membership point by point. O(|S|^{2N+1}); for cross-checks only.
pub fn brute_force_discrepancy(points: &[Vec<f64>]) -> Result<f64> {
    let dim = check_points(points)?;
    let coords: Vec<Vec<f64>> = (0..dim)
        .map(|j| {
            let mut v: Vec<f64> = points.iter().map(|p| p[j]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    let mut best = 0.0f64;
    let mut idx = vec![(0usize, 0usize); dim];
    loop {
        for e in [Endpoints::Closed, Endpoints::Open] {
            let arcs = idx
                .iter()
                .enumerate()
                .map(|(j, &(a, b))| {
                    let (s, t) = (coords[j][a], coords[j][b]);
                    let l = if a == b && e == Endpoints::Open { 1.0 } else { arc_length(s, t) };
                    Arc { start: s, length: l }
                })
                .collect();
            let b = TorusBox { arcs, endpoints: e };
            let c = points.iter().filter(|p| b.contains(p)).count() as f64 / points.len() as f64;
            let v = if e == Endpoints::Closed { c - b.volume() } else { b.volume() - c };
            best = best.max(v);
        }
        let mut j = 0;
        loop {
            if j == dim {
                return Ok(best);
            }
            idx[j].1 += 1;
            if idx[j].1 == coords[j].len() {
                idx[j].1 = 0;
                idx[j].0 += 1;
                if idx[j].0 == coords[j].len() {
                    idx[j].0 = 0;
                    j += 1;
                    continue;
                }
            }
            break;
        }
    }
}

/// The orbit's angular coordinates as points.
pub fn orbit_points(orbit: &GaloisOrbit) -> Vec<Vec<f64>> {
    (0..orbit.size()).map(|k| orbit.theta(k).to_vec()).collect()
}

/// (3/2)^N (2/(M+1) + Σ_{0<‖n‖∞≤M} |exp_sum(n)| / r(n)), r(n) = Π max(1, |n_i|).
pub fn etk_bound(orbit: &GaloisOrbit, m: u64) -> Result<f64> {
    let dim = orbit.dim();
    let mut sum = 0.0;
    let mut err = None;
    for_each_in_linf_box(dim, m, |n| {
        if err.is_some() {
            return;
        }
        match orbit.exp_sum(n) {
            Ok(z) => {
                let r: f64 = n.iter().map(|&v| v.unsigned_abs().max(1) as f64).product();
                sum += z.norm() / r;
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(1.5f64.powi(dim as i32) * (2.0 / (m as f64 + 1.0) + sum))
}

fn require_small_height(hd: f64) -> Result<()> {
    if hd > (-1.0f64).exp() {
        return Err(Error::PreconditionHeight(hd));
    }
    Ok(())
}

/// ⌊e^{−3/2} h_D^{−1/3} |log h_D|^{−2(N−1)/3}⌋, requiring h_D ≤ 1/e.
pub fn paper_m(hd: f64, dim: usize) -> Result<u64> {
    require_small_height(hd)?;
    let v = (-1.5f64).exp() * hd.powf(-1.0 / 3.0) * hd.ln().abs().powf(-2.0 * (dim as f64 - 1.0) / 3.0);
    Ok(v.floor() as u64)
}

/// The proof's truncation M and the ETK bound there.
pub fn etk_paper_m(orbit: &GaloisOrbit) -> Result<(u64, f64)> {
    let m = paper_m(orbit.h_d()?, orbit.dim())?;
    Ok((m, etk_bound(orbit, m)?))
}

/// (9(3/2)^N + 14N) h_D^{1/3} |log h_D|^{2(N−1)/3}, requiring h_D ≤ 1/e.
pub fn thm_a1_value(hd: f64, dim: usize) -> Result<f64> {
    require_small_height(hd)?;
    let n = dim as f64;
    Ok((9.0 * 1.5f64.powi(dim as i32) + 14.0 * n) * hd.cbrt() * hd.ln().abs().powf(2.0 * (n - 1.0) / 3.0))
}

pub fn thm_a1_bound(orbit: &GaloisOrbit) -> Result<f64> {
    thm_a1_value(orbit.h_d()?, orbit.dim())
}

/// Options for [`orbit_discrepancy`].
#[derive(Clone, Copy, Debug)]
pub struct DiscrepancyOptions {
    pub cap: usize,
    /// Fixed ETK truncation; None uses the proof's M when h_D ≤ 1/e.
    pub m: Option<u64>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for DiscrepancyOptions {
    fn default() -> Self {
        DiscrepancyOptions { cap: DEFAULT_CAP, m: None, seed: 0, samples: 4096 }
    }
}

/// Discrepancy of an orbit with its ETK and Theorem A.1 companions.
pub fn orbit_discrepancy(orbit: &GaloisOrbit, opts: &DiscrepancyOptions) -> Result<DiscrepancyResult> {
    let pts = orbit_points(orbit);
    let mut r = if orbit.dim() <= 2 {
        exact_discrepancy(&pts, opts.cap)?
    } else {
        discrepancy_lower_bound(&pts, opts.seed, opts.samples)?
    };
    let hd = orbit.h_d()?;
    let m = match opts.m {
        Some(m) => Some(m),
        None => paper_m(hd, orbit.dim()).ok(),
    };
    if let Some(m) = m {
        r.etk_m = Some(m);
        r.etk_value = Some(etk_bound(orbit, m)?);
    }
    r.thm_a1_value = thm_a1_value(hd, orbit.dim()).ok();
    Ok(r)
}
