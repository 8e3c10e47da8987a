//! Simultaneous root finding by Aberth–Ehrlich iteration.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::dd::{Dd, Real};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Plain doubles, failing with `NonConvergence` if the iteration stalls.
    Double,
    /// Always refine in double-double.
    Extended,
    /// Doubles, escalating to double-double on stalls or roots near |z| = 1.
    Auto,
}

#[derive(Clone, Debug)]
pub struct RootConfig {
    pub precision: Precision,
    /// Bound on the backward error |P(z)| / sum |c_j| |z|^j of every returned root.
    pub residual_tol: f64,
    pub max_sweeps: usize,
    /// Roots with ||z| - 1| below this trigger double-double refinement under `Auto`.
    pub unit_circle_margin: f64,
    /// Roots closer than `cluster_tol * (1 + |z|)` are examined as a possible multiple root.
    pub cluster_tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            precision: Precision::Auto,
            residual_tol: 2f64.powi(-40),
            max_sweeps: 500,
            unit_circle_margin: 1e-6,
            cluster_tol: 1e-7,
        }
    }
}

/// Roots of an integer polynomial, listed with multiplicity.
#[derive(Clone, Debug)]
pub struct RootSet {
    roots: Vec<Complex64>,
    log_moduli: Vec<f64>,
    residuals: Vec<f64>,
    multiplicities: Vec<usize>,
    certified_gap: f64,
    extended: bool,
    sweeps: usize,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// `log |z|` per root, computed in the working precision before rounding.
    pub fn log_moduli(&self) -> &[f64] {
        &self.log_moduli
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Smallest distance between two distinct roots (infinite for a single root).
    pub fn certified_gap(&self) -> f64 {
        self.certified_gap
    }

    pub fn used_extended_precision(&self) -> bool {
        self.extended
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy)]
struct Cx<T> {
    re: T,
    im: T,
}

impl<T: Real> Cx<T> {
    #[inline]
    fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }
    #[inline]
    fn real(re: T) -> Self {
        Cx { re, im: T::of(0.0) }
    }
    #[inline]
    fn add(self, o: Self) -> Self {
        Cx::new(self.re + o.re, self.im + o.im)
    }
    #[inline]
    fn sub(self, o: Self) -> Self {
        Cx::new(self.re - o.re, self.im - o.im)
    }
    #[inline]
    fn mul(self, o: Self) -> Self {
        Cx::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    #[inline]
    fn scale(self, s: T) -> Self {
        Cx::new(self.re * s, self.im * s)
    }
    #[inline]
    fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    fn div(self, o: Self) -> Self {
        let n = o.norm_sqr();
        Cx::new(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )
    }
    #[inline]
    fn recip(self) -> Self {
        let n = self.norm_sqr();
        Cx::new(self.re / n, -self.im / n)
    }
    fn abs_f64(self) -> f64 {
        self.norm_sqr().f64().sqrt()
    }
    fn powu(self, mut e: usize) -> Self {
        let mut base = self;
        let mut acc = Cx::real(T::of(1.0));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
    fn finite(self) -> bool {
        self.re.f64().is_finite() && self.im.f64().is_finite()
    }
}

/// Polynomial prepared for repeated Newton quotients, dense (Horner) or sparse (powers).
struct Evaluator<T> {
    c: Vec<T>,
    cabs: Vec<f64>,
    sparse: Option<Vec<usize>>,
}

impl<T: Real> Evaluator<T> {
    fn new(c: Vec<T>, cabs: Vec<f64>) -> Self {
        let d = c.len() - 1;
        let support: Vec<usize> = (0..=d).filter(|&j| cabs[j] != 0.0).collect();
        let log_d = (usize::BITS - d.leading_zeros()) as usize;
        let sparse = (support.len() * (2 * log_d + 4) < d).then_some(support);
        Evaluator { c, cabs, sparse }
    }

    /// Newton quotient P(z)/P'(z) and the backward error at `z`.
    ///
    /// Outside the unit disc the reversed polynomial is evaluated at 1/z so that
    /// large powers never overflow.
    fn newton_quotient(&self, z: Cx<T>) -> (Cx<T>, f64) {
        let c = &self.c;
        let cabs = &self.cabs;
        let d = c.len() - 1;
        let r2 = z.norm_sqr().f64();
        let inside = r2 <= 1.0;
        let (x, rx) = if inside { (z, r2.sqrt()) } else { (z.recip(), 1.0 / r2.sqrt()) };
        let coeff = |j: usize| if inside { j } else { d - j };
        let (p, dp, a) = match &self.sparse {
            Some(support) => {
                let mut p = Cx::real(T::of(0.0));
                let mut dp = Cx::real(T::of(0.0));
                let mut a = 0.0;
                for &j in support {
                    let e = coeff(j);
                    let cj = Cx::real(c[j]);
                    if e == 0 {
                        p = p.add(cj);
                        a += cabs[j];
                        continue;
                    }
                    let xe1 = x.powu(e - 1);
                    p = p.add(cj.mul(xe1.mul(x)));
                    dp = dp.add(cj.mul(xe1).scale(T::of(e as f64)));
                    a += cabs[j] * rx.powi(e as i32);
                }
                (p, dp, a)
            }
            None => {
                let mut p = Cx::real(c[coeff(d)]);
                let mut dp = Cx::real(T::of(0.0));
                let mut a = cabs[coeff(d)];
                for e in (0..d).rev() {
                    let j = coeff(e);
                    dp = dp.mul(x).add(p);
                    p = p.mul(x).add(Cx::real(c[j]));
                    a = a * rx + cabs[j];
                }
                (p, dp, a)
            }
        };
        let berr = if a > 0.0 { p.abs_f64() / a } else { 0.0 };
        if inside {
            (p.div(dp), berr)
        } else {
            let denom = p.scale(T::of(d as f64)).sub(x.mul(dp));
            (z.mul(p).div(denom), berr)
        }
    }
}

#[inline]
fn accumulate<T: Real>(xr: T, xi: T, rs: &[T], is: &[T], sr: &mut [T; 4], si: &mut [T; 4]) {
    let n4 = rs.len() / 4 * 4;
    let mut k = 0;
    while k < n4 {
        for l in 0..4 {
            let dr = xr - rs[k + l];
            let di = xi - is[k + l];
            let inv = T::of(1.0) / (dr * dr + di * di);
            sr[l] = sr[l] + dr * inv;
            si[l] = si[l] - di * inv;
        }
        k += 4;
    }
    for j in n4..rs.len() {
        let dr = xr - rs[j];
        let di = xi - is[j];
        let inv = T::of(1.0) / (dr * dr + di * di);
        sr[0] = sr[0] + dr * inv;
        si[0] = si[0] - di * inv;
    }
}

/// Sum over j != i of 1/(z_i - z_j).
fn pair_sum<T: Real>(zr: &[T], zi: &[T], i: usize) -> Cx<T> {
    let zero = T::of(0.0);
    let mut sr = [zero; 4];
    let mut si = [zero; 4];
    accumulate(zr[i], zi[i], &zr[..i], &zi[..i], &mut sr, &mut si);
    accumulate(zr[i], zi[i], &zr[i + 1..], &zi[i + 1..], &mut sr, &mut si);
    Cx::new((sr[0] + sr[1]) + (sr[2] + sr[3]), (si[0] + si[1]) + (si[2] + si[3]))
}

struct AberthOutcome<T> {
    zr: Vec<T>,
    zi: Vec<T>,
    converged: bool,
    sweeps: usize,
}

/// Gauss–Seidel Aberth iteration; converged roots are frozen but still repel the others.
fn aberth<T: Real>(
    poly: &Evaluator<T>,
    mut zr: Vec<T>,
    mut zi: Vec<T>,
    max_sweeps: usize,
    residual_tol: f64,
) -> AberthOutcome<T> {
    let d = zr.len();
    let mut frozen = vec![false; d];
    let floor = (4.0 * (d as f64 + 1.0) * T::EPS).min(residual_tol / 8.0);
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut done = true;
        for i in 0..d {
            if frozen[i] {
                continue;
            }
            let z = Cx::new(zr[i], zi[i]);
            let (q, berr) = poly.newton_quotient(z);
            if berr <= floor {
                frozen[i] = true;
                continue;
            }
            let s = pair_sum(&zr, &zi, i);
            let mut w = q.div(Cx::real(T::of(1.0)).sub(q.mul(s)));
            if !w.finite() {
                w = if q.finite() { q } else { Cx::real(T::of(1e-3 * (1.0 + z.abs_f64()))) };
            }
            let znew = z.sub(w);
            zr[i] = znew.re;
            zi[i] = znew.im;
            if w.abs_f64() <= 8.0 * T::EPS * znew.abs_f64() {
                frozen[i] = true;
            } else {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    AberthOutcome { zr, zi, converged, sweeps }
}

/// Starting points on circles read off the upper convex hull of (j, log|c_j|).
fn initial_guesses(c: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let d = c.len() - 1;
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(j, v)| (j as f64, v.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut zr = Vec::with_capacity(d);
    let mut zi = Vec::with_capacity(d);
    for (e, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let m = (k - i) as usize;
        let u = ((li - lk) / (k - i)).exp();
        let base = 2.0 * PI * i / d as f64 + 0.7 * e as f64;
        for j in 0..m {
            let a = 2.0 * PI * (j as f64 + 0.25) / m as f64 + base;
            zr.push(u * a.cos());
            zi.push(u * a.sin());
        }
    }
    (zr, zi)
}

fn finish<T: Real>(poly: &Evaluator<T>, zr: &[T], zi: &[T]) -> (Vec<Complex64>, Vec<f64>, Vec<f64>) {
    let mut roots = Vec::with_capacity(zr.len());
    let mut logs = Vec::with_capacity(zr.len());
    let mut res = Vec::with_capacity(zr.len());
    for (&r, &i) in zr.iter().zip(zi) {
        let z = Cx::new(r, i);
        let (_, berr) = poly.newton_quotient(z);
        roots.push(Complex64::new(r.f64(), i.f64()));
        let m2m1 = (z.norm_sqr() - T::of(1.0)).f64();
        logs.push(0.5 * m2m1.ln_1p());
        res.push(berr);
    }
    (roots, logs, res)
}

fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(j, v)| v * BigInt::from(j)).collect()
}

fn relative_value(c: &[BigInt], z: Complex64) -> f64 {
    let mut p = Complex64::new(0.0, 0.0);
    let mut a = 0.0;
    let r = z.norm();
    for v in c.iter().rev() {
        let f = v.to_f64().unwrap_or(f64::INFINITY);
        p = p * z + f;
        a = a * r + f.abs();
    }
    if a == 0.0 {
        0.0
    } else {
        p.norm() / a
    }
}

/// Merge clusters that behave like one multiple root; returns multiplicities.
fn merge_clusters(
    coeffs: &[BigInt],
    roots: &mut [Complex64],
    logs: &mut [f64],
    tol: f64,
) -> Vec<usize> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re));
    for a in 0..n {
        for b in a + 1..n {
            let (i, j) = (order[a], order[b]);
            let scale = tol * (1.0 + roots[i].norm());
            if roots[j].re - roots[i].re > scale {
                break;
            }
            if (roots[i] - roots[j]).norm() < scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut mult = vec![1; n];
    for members in groups.values() {
        let k = members.len();
        if k < 2 {
            continue;
        }
        let centroid = members.iter().map(|&i| roots[i]).sum::<Complex64>() / k as f64;
        let mut deriv = coeffs.to_vec();
        let mut order_found = k;
        for j in 0..k {
            if relative_value(&deriv, centroid) > 1e-6 {
                order_found = j;
                break;
            }
            deriv = derivative(&deriv);
        }
        if order_found == k {
            let lg = members.iter().map(|&i| logs[i]).sum::<f64>() / k as f64;
            for &i in members {
                roots[i] = centroid;
                logs[i] = lg;
                mult[i] = k;
            }
        }
    }
    mult
}

fn min_gap(roots: &[Complex64]) -> f64 {
    let mut pts: Vec<Complex64> = roots.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    let mut best = f64::INFINITY;
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            if pts[b].re - pts[a].re >= best {
                break;
            }
            best = best.min((pts[b] - pts[a]).norm());
        }
    }
    best
}

pub(crate) fn find_roots_of(coeffs: &[BigInt], cfg: &RootConfig) -> Result<RootSet> {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateInput("zero polynomial".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let core = &coeffs[zeros..];
    let d = core.len() - 1;

    let mut roots = Vec::with_capacity(coeffs.len() - 1);
    let mut logs = Vec::new();
    let mut res = Vec::new();
    let mut extended = false;
    let mut sweeps = 0;

    if d == 1 {
        let z = -(Dd::from_bigint(&core[0]) / Dd::from_bigint(&core[1]));
        roots.push(Complex64::new(z.to_f64(), 0.0));
        logs.push(z.abs().to_f64().ln());
        res.push(0.0);
    } else if d >= 2 {
        let cf: Vec<f64> = core.iter().map(f64::of_bigint).collect();
        if cf.iter().any(|v| !v.is_finite()) {
            return Err(Error::RootFindingFailure("coefficient exceeds double range".into()));
        }
        let cabs: Vec<f64> = cf.iter().map(|v| v.abs()).collect();
        let (zr, zi) = initial_guesses(&cf);
        let ev = Evaluator::new(cf.clone(), cabs.clone());
        let want_dd = cfg.precision == Precision::Extended;
        let out = if want_dd {
            None
        } else {
            Some(aberth(&ev, zr.clone(), zi.clone(), cfg.max_sweeps, cfg.residual_tol))
        };
        let escalate = match &out {
            None => true,
            Some(o) => {
                let near_unit = o
                    .zr
                    .iter()
                    .zip(&o.zi)
                    .any(|(r, i)| ((r * r + i * i).sqrt() - 1.0).abs() < cfg.unit_circle_margin);
                cfg.precision == Precision::Auto && (!o.converged || near_unit)
            }
        };
        match out {
            Some(o) if !escalate => {
                if !o.converged {
                    return Err(Error::NonConvergence { iterations: o.sweeps });
                }
                sweeps = o.sweeps;
                let (r, l, e) = finish(&ev, &o.zr, &o.zi);
                roots = r;
                logs = l;
                res = e;
            }
            other => {
                let (sr, si, prior) = match other {
                    Some(o) => (o.zr, o.zi, o.sweeps),
                    None => (zr, zi, 0),
                };
                let cd: Vec<Dd> = core.iter().map(Dd::from_bigint).collect();
                let evd = Evaluator::new(cd, cabs.clone());
                let o = aberth(
                    &evd,
                    sr.into_iter().map(Dd::new).collect(),
                    si.into_iter().map(Dd::new).collect(),
                    cfg.max_sweeps,
                    cfg.residual_tol,
                );
                sweeps = prior + o.sweeps;
                extended = true;
                let (r, l, e) = finish(&evd, &o.zr, &o.zi);
                if !o.converged && e.iter().any(|&v| v > cfg.residual_tol) {
                    return Err(Error::NonConvergence { iterations: sweeps });
                }
                roots = r;
                logs = l;
                res = e;
            }
        }
    }

    for _ in 0..zeros {
        roots.push(Complex64::new(0.0, 0.0));
        logs.push(f64::NEG_INFINITY);
        res.push(0.0);
    }
    if res.iter().any(|&r| !(r <= cfg.residual_tol)) {
        return Err(Error::NonConvergence { iterations: sweeps });
    }
    let multiplicities = merge_clusters(coeffs, &mut roots, &mut logs, cfg.cluster_tol);
    let certified_gap = min_gap(&roots);
    Ok(RootSet { roots, log_moduli: logs, residuals: res, multiplicities, certified_gap, extended, sweeps })
}
