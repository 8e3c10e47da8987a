//! Galois orbits on the torus in log-polar coordinates.

mod cluster;
pub mod lattice;

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{height_from_conjugates, IntPolynomial, RootConfig};
pub use lattice::NormP;

/// How the orbit is obtained.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum OrbitSpec {
    /// All conjugates of one algebraic number given by its minimal polynomial.
    Single {
        poly: IntPolynomial,
        #[serde(default)]
        root_index: usize,
    },
    /// Tuple of algebraic numbers with pairwise coprime degrees; the orbit is the product of conjugate sets.
    Product { polys: Vec<IntPolynomial> },
    /// A user-supplied orbit; per-coordinate degrees are declared, heights optionally.
    Explicit {
        tuples: Vec<Vec<Complex64>>,
        degrees: Vec<usize>,
        #[serde(default)]
        heights: Option<Vec<f64>>,
    },
    /// Roots of x^d - d for distinct primes d, in closed form.
    XdMinusD { primes: Vec<u64> },
}

/// Conjugates of one coordinate.
#[derive(Clone, Debug)]
pub struct Coordinate {
    pub values: Vec<Complex64>,
    pub theta: Vec<f64>,
    pub s: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Structure {
    Explicit,
    Product,
    XdMinusD(Vec<u64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeReport {
    /// The minimum of ||n||_p deg(chi^n(xi)); an integer for p = 1 and p = inf.
    #[serde(rename = "D")]
    pub d: f64,
    pub witness_n: Vec<i64>,
    pub p_norm: NormP,
    pub h_d: f64,
}

/// A measured quantity next to the bound it must respect.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Checked {
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

impl Checked {
    fn new(value: f64, bound: f64) -> Self {
        Checked { value, bound, holds: value <= bound + 1e-12 }
    }
}

/// A finite Galois orbit S of a point in the N-dimensional torus.
#[derive(Debug)]
pub struct GaloisOrbit {
    dim: usize,
    size: usize,
    tuples: Vec<Complex64>,
    theta: Vec<f64>,
    s: Vec<f64>,
    degrees: Vec<usize>,
    coord_heights: Vec<f64>,
    coords: Option<Vec<Coordinate>>,
    structure: Structure,
    warnings: Vec<String>,
    degree_cache: OnceLock<DegreeReport>,
}

/// Angle in turns in [0, 1) for arg in [0, 2 pi).
pub fn turns(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    let t = if a < 0.0 { a / (2.0 * PI) + 1.0 } else { a / (2.0 * PI) };
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

#[inline]
fn frac(x: f64) -> f64 {
    x - x.floor()
}

#[inline]
fn cis_turns(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * frac(t)).sin_cos();
    Complex64::new(c, s)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn coordinate_from_polynomial(p: &IntPolynomial) -> Result<(Coordinate, f64, bool)> {
    let roots = p
        .find_roots(&RootConfig::default())
        .map_err(|e| Error::RootFindingFailure(format!("{p}: {e}")))?;
    let values = roots.roots().to_vec();
    let theta = values.iter().map(|&z| turns(z)).collect();
    let s = roots.log_moduli().to_vec();
    let m = crate::poly::bigint_abs_ln(p.leading()) + s.iter().map(|l: &f64| l.max(0.0)).sum::<f64>();
    Ok((Coordinate { values, theta, s }, m / p.degree() as f64, p.is_squarefree()))
}

fn closed_form_coordinate(d: u64) -> Coordinate {
    let df = d as f64;
    let r = df.powf(1.0 / df);
    let sv = df.ln() / df;
    let theta: Vec<f64> = (0..d).map(|k| k as f64 / df).collect();
    let values = theta.iter().map(|&t| cis_turns(t) * r).collect();
    Coordinate { values, theta, s: vec![sv; d as usize] }
}

impl GaloisOrbit {
    pub fn build(spec: &OrbitSpec) -> Result<Self> {
        match spec {
            OrbitSpec::Single { poly, root_index } => {
                if *root_index >= poly.degree() {
                    return Err(Error::InvalidConfig(format!(
                        "root index {root_index} out of range for degree {}",
                        poly.degree()
                    )));
                }
                let (mut c, h, sqf) = coordinate_from_polynomial(poly)?;
                c.values.rotate_left(*root_index);
                c.theta.rotate_left(*root_index);
                c.s.rotate_left(*root_index);
                let mut warnings = Vec::new();
                if !sqf {
                    warnings.push(format!("{poly} is not square-free; it cannot be a minimal polynomial"));
                }
                Ok(Self::from_coordinates(vec![c], vec![h], Structure::Product, warnings))
            }
            OrbitSpec::Product { polys } => {
                if polys.is_empty() {
                    return Err(Error::InvalidConfig("product orbit needs at least one polynomial".into()));
                }
                for i in 0..polys.len() {
                    for j in i + 1..polys.len() {
                        let (a, b) = (polys[i].degree(), polys[j].degree());
                        if a.gcd(&b) != 1 {
                            return Err(Error::CoprimalityViolation(a, b));
                        }
                    }
                }
                let mut coords = Vec::new();
                let mut hs = Vec::new();
                let mut warnings = Vec::new();
                for p in polys {
                    let (c, h, sqf) = coordinate_from_polynomial(p)?;
                    if !sqf {
                        warnings.push(format!("{p} is not square-free; it cannot be a minimal polynomial"));
                    }
                    coords.push(c);
                    hs.push(h);
                }
                Ok(Self::from_coordinates(coords, hs, Structure::Product, warnings))
            }
            OrbitSpec::XdMinusD { primes } => {
                if primes.is_empty() {
                    return Err(Error::InvalidConfig("need at least one prime".into()));
                }
                for (i, &p) in primes.iter().enumerate() {
                    if !is_prime(p) {
                        return Err(Error::InvalidConfig(format!("{p} is not prime")));
                    }
                    if primes[..i].contains(&p) {
                        return Err(Error::CoprimalityViolation(p as usize, p as usize));
                    }
                }
                let coords: Vec<Coordinate> = primes.iter().map(|&d| closed_form_coordinate(d)).collect();
                let hs = primes.iter().map(|&d| (d as f64).ln() / d as f64).collect();
                Ok(Self::from_coordinates(coords, hs, Structure::XdMinusD(primes.clone()), vec![]))
            }
            OrbitSpec::Explicit { tuples, degrees, heights } => Self::explicit(tuples, degrees, heights.as_deref()),
        }
    }

    fn explicit(tuples: &[Vec<Complex64>], degrees: &[usize], heights: Option<&[f64]>) -> Result<Self> {
        let dim = degrees.len();
        if tuples.is_empty() || dim == 0 {
            return Err(Error::InvalidConfig("explicit orbit needs tuples and degrees".into()));
        }
        if tuples.iter().any(|t| t.len() != dim) {
            return Err(Error::InvalidConfig(format!("every tuple must have {dim} coordinates")));
        }
        if tuples.iter().flatten().any(|z| z.norm() == 0.0 || !z.norm().is_finite()) {
            return Err(Error::DegenerateInput("orbit coordinates must be nonzero and finite".into()));
        }
        let size = tuples.len();
        let mut coord_heights = Vec::with_capacity(dim);
        for j in 0..dim {
            let col: Vec<Complex64> = tuples.iter().map(|t| t[j]).collect();
            let distinct = cluster::distinct_complex(&col, 1e-9);
            if distinct.len() != degrees[j] || size % degrees[j] != 0 {
                return Err(Error::InvalidConfig(format!(
                    "coordinate {j}: declared degree {} but {} distinct values among {size} tuples",
                    degrees[j],
                    distinct.len()
                )));
            }
            coord_heights.push(match heights {
                Some(h) => *h.get(j).ok_or_else(|| Error::InvalidConfig("one height per coordinate".into()))?,
                None => height_from_conjugates(&distinct)?,
            });
        }
        let flat: Vec<Complex64> = tuples.iter().flatten().copied().collect();
        let theta = flat.iter().map(|&z| turns(z)).collect();
        let s = flat.iter().map(|z| z.norm().ln()).collect();
        Ok(GaloisOrbit {
            dim,
            size,
            tuples: flat,
            theta,
            s,
            degrees: degrees.to_vec(),
            coord_heights,
            coords: None,
            structure: Structure::Explicit,
            warnings: vec![],
            degree_cache: OnceLock::new(),
        })
    }

    fn from_coordinates(coords: Vec<Coordinate>, hs: Vec<f64>, structure: Structure, warnings: Vec<String>) -> Self {
        let dim = coords.len();
        let degrees: Vec<usize> = coords.iter().map(|c| c.values.len()).collect();
        let size: usize = degrees.iter().product();
        let mut tuples = Vec::with_capacity(size * dim);
        let mut theta = Vec::with_capacity(size * dim);
        let mut s = Vec::with_capacity(size * dim);
        let mut idx = vec![0usize; dim];
        for _ in 0..size {
            for j in 0..dim {
                let c = &coords[j];
                tuples.push(c.values[idx[j]]);
                theta.push(c.theta[idx[j]]);
                s.push(c.s[idx[j]]);
            }
            for j in (0..dim).rev() {
                idx[j] += 1;
                if idx[j] < degrees[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        GaloisOrbit {
            dim,
            size,
            tuples,
            theta,
            s,
            degrees,
            coord_heights: hs,
            coords: Some(coords),
            structure,
            warnings,
            degree_cache: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// |S|.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Weil height h = sum of the coordinate heights.
    pub fn height(&self) -> f64 {
        self.coord_heights.iter().sum()
    }

    pub fn coordinate_heights(&self) -> &[f64] {
        &self.coord_heights
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn tuple(&self, k: usize) -> &[Complex64] {
        &self.tuples[k * self.dim..(k + 1) * self.dim]
    }

    pub fn theta(&self, k: usize) -> &[f64] {
        &self.theta[k * self.dim..(k + 1) * self.dim]
    }

    pub fn s(&self, k: usize) -> &[f64] {
        &self.s[k * self.dim..(k + 1) * self.dim]
    }

    /// Flat angular coordinates, `dim` per tuple.
    pub fn all_theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn all_s(&self) -> &[f64] {
        &self.s
    }

    /// Primes of a closed-form x^d - d orbit.
    pub fn closed_form_primes(&self) -> Option<&[u64]> {
        match &self.structure {
            Structure::XdMinusD(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_single(&self) -> bool {
        self.dim == 1 && self.structure != Structure::Explicit
    }

    fn check_n(&self, n: &[i64]) -> Result<()> {
        if n.len() != self.dim {
            return Err(Error::InvalidConfig(format!(
                "lattice vector has {} entries, orbit dimension is {}",
                n.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// (1/|S|) sum over the orbit of e^{2 pi i n.theta}.
    pub fn exp_sum(&self, n: &[i64]) -> Result<Complex64> {
        self.check_n(n)?;
        if let Structure::XdMinusD(primes) = &self.structure {
            let all = n.iter().zip(primes).all(|(&v, &d)| v.rem_euclid(d as i64) == 0);
            return Ok(Complex64::new(if all { 1.0 } else { 0.0 }, 0.0));
        }
        if let Some(coords) = &self.coords {
            let mut acc = Complex64::new(1.0, 0.0);
            for (c, &v) in coords.iter().zip(n) {
                if v == 0 {
                    continue;
                }
                let s: Complex64 = c.theta.iter().map(|&t| cis_turns(v as f64 * t)).sum();
                acc *= s / c.theta.len() as f64;
            }
            return Ok(acc);
        }
        let dim = self.dim;
        let sum = par::sum_complex(self.size, |k| {
            let th = &self.theta[k * dim..(k + 1) * dim];
            cis_turns(th.iter().zip(n).map(|(&t, &v)| v as f64 * t).sum())
        });
        Ok(sum / self.size as f64)
    }

    /// |(1/|S|) sum e^{2 pi i n.theta}(e^{2 pi i t.s} - 1)| against min{2 sqrt(8 pi h ||t||_inf), 2}.
    pub fn char_defect(&self, n: &[i64], t: &[f64]) -> Result<Checked> {
        self.check_n(n)?;
        if t.len() != self.dim {
            return Err(Error::InvalidConfig("t must have one entry per coordinate".into()));
        }
        let dim = self.dim;
        let sum = par::sum_complex(self.size, |k| {
            let th = &self.theta[k * dim..(k + 1) * dim];
            let sv = &self.s[k * dim..(k + 1) * dim];
            let a: f64 = th.iter().zip(n).map(|(&x, &v)| v as f64 * x).sum();
            let b: f64 = sv.iter().zip(t).map(|(&x, &v)| v * x).sum();
            cis_turns(a) * (Complex64::from_polar(1.0, 2.0 * PI * b) - 1.0)
        });
        let value = (sum / self.size as f64).norm();
        let tinf = t.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let bound = (2.0 * (8.0 * PI * self.height() * tinf).sqrt()).min(2.0);
        Ok(Checked::new(value, bound))
    }

    /// Points (sum n_j s_j, frac(sum n_j theta_j)) representing chi^n over the orbit.
    fn chi_points(&self, n: &[i64]) -> Vec<(f64, f64)> {
        let dim = self.dim;
        (0..self.size)
            .map(|k| {
                let th = &self.theta[k * dim..(k + 1) * dim];
                let sv = &self.s[k * dim..(k + 1) * dim];
                let l: f64 = sv.iter().zip(n).map(|(&x, &v)| v as f64 * x).sum();
                let a: f64 = th.iter().zip(n).map(|(&x, &v)| v as f64 * x).sum();
                (l, frac(a))
            })
            .collect()
    }

    /// deg(chi^n(xi)): the number of distinct values of chi^n on the orbit.
    pub fn chi_degree(&self, n: &[i64]) -> Result<u64> {
        self.check_n(n)?;
        if n.iter().all(|&v| v == 0) {
            return Err(Error::DegenerateInput("chi_degree needs n != 0".into()));
        }
        if let Structure::XdMinusD(primes) = &self.structure {
            return Ok(n
                .iter()
                .zip(primes)
                .filter(|(&v, &d)| v.rem_euclid(d as i64) != 0)
                .map(|(_, &d)| d)
                .product());
        }
        let pts = self.chi_points(n);
        cluster::orbit_cluster_count(&pts, self.size).map(|c| c as u64)
    }

    /// Distinct values of chi^n(alpha) over the orbit.
    pub fn chi_values(&self, n: &[i64]) -> Result<Vec<Complex64>> {
        self.check_n(n)?;
        let pts = self.chi_points(n);
        let reps = cluster::orbit_cluster_representatives(&pts, self.size)?;
        Ok(reps.into_iter().map(|(l, a)| cis_turns(a) * l.exp()).collect())
    }

    /// h(chi^n(xi)) from its recognized minimal polynomial, against ||n||_inf h(xi).
    pub fn chi_height(&self, n: &[i64]) -> Result<Checked> {
        let vals = self.chi_values(n)?;
        let h = height_from_conjugates(&vals)?;
        Ok(Checked::new(h, lattice::linf_norm(n) as f64 * self.height()))
    }

    /// The minimum of ||n||_p deg(chi^n(xi)) over n != 0, searching ||n||_1 <= min_j deg(xi_j).
    pub fn generalized_degree(&self, p: NormP) -> Result<DegreeReport> {
        if p == NormP::L1 {
            if let Some(r) = self.degree_cache.get() {
                return Ok(r.clone());
            }
        }
        let bound = *self.degrees.iter().min().unwrap() as u64;
        let mut best = f64::INFINITY;
        let mut witness = Vec::new();
        for r in 1..=bound {
            if p.lower_bound_on_l1_shell(r, self.dim) >= best {
                break;
            }
            for n in lattice::l1_shell_canonical(self.dim, r) {
                let v = p.norm(&n) * self.chi_degree(&n)? as f64;
                if v < best * (1.0 - 1e-12) {
                    best = v;
                    witness = n;
                }
            }
        }
        let report = DegreeReport { d: best, witness_n: witness, p_norm: p, h_d: h_d_of(self.height(), best) };
        if p == NormP::L1 {
            let _ = self.degree_cache.set(report.clone());
        }
        Ok(report)
    }

    /// h_D = h + log(2D)/(3D) with the l1 generalized degree.
    pub fn h_d(&self) -> Result<f64> {
        Ok(self.generalized_degree(NormP::L1)?.h_d)
    }

    /// Average of ||s(alpha)||_1 over the orbit, against 2h.
    pub fn orbit_log_sum(&self) -> Checked {
        let dim = self.dim;
        let v = par::sum_real(self.size, |k| self.s[k * dim..(k + 1) * dim].iter().map(|x| x.abs()).sum());
        Checked::new(v / self.size as f64, 2.0 * self.height())
    }

    /// Fraction of tuples with ||s(alpha)||_1 > delta, against 2h/delta.
    pub fn gamma_delta_fraction(&self, delta: f64) -> Result<Checked> {
        if !(delta > 0.0) {
            return Err(Error::InvalidConfig("delta must be positive".into()));
        }
        let dim = self.dim;
        let c = par::sum_real(self.size, |k| {
            let l1: f64 = self.s[k * dim..(k + 1) * dim].iter().map(|x| x.abs()).sum();
            if l1 > delta {
                1.0
            } else {
                0.0
            }
        });
        Ok(Checked::new(c / self.size as f64, 2.0 * self.height() / delta))
    }

    /// 2 sqrt(6|n|) (h + log(2d)/(3d))^{1/2} for a single algebraic number of degree d.
    pub fn expsum_bound(&self, n: i64) -> Result<f64> {
        if self.dim != 1 {
            return Err(Error::DimensionUnsupported(self.dim));
        }
        if n == 0 {
            return Err(Error::DegenerateInput("bound needs n != 0".into()));
        }
        let d = self.degrees[0] as f64;
        Ok(2.0 * (6.0 * n.unsigned_abs() as f64).sqrt() * (self.height() + (2.0 * d).ln() / (3.0 * d)).sqrt())
    }
}

pub fn h_d_of(h: f64, d: f64) -> f64 {
    h + (2.0 * d).ln() / (3.0 * d)
}
