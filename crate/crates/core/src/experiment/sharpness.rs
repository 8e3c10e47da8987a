//! Sweeps over x^d − d orbits with d prime in dyadic windows.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sieve::dyadic_primes;
use crate::bounds::{self, Context, ModulusOfContinuity, MonotoneEnvelope, SLACK};
use crate::error::{Error, Result};
use crate::io::{num, CSV_VERSION};
use crate::orbit::{GaloisOrbit, OrbitSpec};
use crate::testfn::{equidist_error_51, QuadratureConfig, TestFunction};

/// Orbit sizes stay below 2^21 (k ≤ 20 for N = 1, k ≤ 9 for N = 2).
const MAX_LOG2_SIZE: usize = 21;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SharpnessConfig {
    pub gamma: f64,
    #[serde(rename = "N")]
    pub dim: usize,
    pub kmin: u32,
    pub kmax: u32,
    #[serde(default)]
    pub quad: QuadratureConfig,
}

impl SharpnessConfig {
    fn validate(&self, max_dim: usize) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 0.5) {
            return Err(Error::InvalidConfig(format!("gamma must lie in (0, 1/2], got {}", self.gamma)));
        }
        if self.dim == 0 || self.dim > max_dim {
            return Err(Error::InvalidConfig(format!("N must lie in 1..={max_dim}, got {}", self.dim)));
        }
        if self.kmin < 2 || self.kmin > self.kmax {
            return Err(Error::InvalidConfig(format!("need 2 <= kmin <= kmax, got {}..{}", self.kmin, self.kmax)));
        }
        if (self.kmax as usize + 1).saturating_mul(self.dim) > MAX_LOG2_SIZE {
            return Err(Error::InvalidConfig(format!(
                "orbits at k = {} in dimension {} exceed 2^{MAX_LOG2_SIZE} points",
                self.kmax, self.dim
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: u32,
    pub primes: Vec<u64>,
    pub h: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub h_d: f64,
    pub measured: f64,
    /// Closed-form ℰ when one exists.
    pub closed_form: Option<f64>,
    /// (theorem, right-hand side).
    pub rhs: Vec<(String, f64)>,
    /// h_D^γ / (|log h_D| (log|log h_D|)²).
    pub lower_shape: f64,
    /// measured / lower_shape.
    pub ratio_lower: f64,
    /// measured / h_D^γ.
    pub ratio_hd: f64,
    pub all_rhs_hold: bool,
}

/// h_D^γ / (|log h_D| (log|log h_D|)²).
pub fn lower_bound_shape(hd: f64, gamma: f64) -> f64 {
    let l = hd.ln().abs();
    hd.powf(gamma) / (l * l.ln().powi(2))
}

fn window_orbit(k: u32, dim: usize) -> Result<GaloisOrbit> {
    GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: dyadic_primes(k, dim)? })
}

fn row(k: u32, orbit: &GaloisOrbit, gamma: f64, measured: f64, closed: Option<f64>, rhs: Vec<(String, f64)>) -> Result<SweepRow> {
    let deg = orbit.generalized_degree(crate::orbit::NormP::L1)?;
    let lower = lower_bound_shape(deg.h_d, gamma);
    Ok(SweepRow {
        k,
        primes: orbit.closed_form_primes().unwrap().to_vec(),
        h: orbit.height(),
        d: deg.d,
        h_d: deg.h_d,
        measured,
        closed_form: closed,
        all_rhs_hold: rhs.iter().all(|(_, v)| measured <= v + SLACK),
        rhs,
        lower_shape: lower,
        ratio_lower: measured / lower,
        ratio_hd: measured / deg.h_d.powf(gamma),
    })
}

/// ℰ of the radial-profile function against the dyadic-window orbits, with its Corollary 3 bound.
pub fn run_sharpness_51(cfg: &SharpnessConfig) -> Result<Vec<SweepRow>> {
    cfg.validate(2)?;
    (cfg.kmin..=cfg.kmax)
        .into_par_iter()
        .map(|k| {
            let orbit = window_orbit(k, cfg.dim)?;
            let measured = equidist_error_51(cfg.gamma, &orbit, &cfg.quad)?;
            let f = TestFunction::FourierRadialProfile { gamma: cfg.gamma, dim: cfg.dim };
            let ctx = Context { f: &f, orbit: &orbit, quad: cfg.quad, measured: Some(measured) };
            let cor3 = bounds::cor3_rhs(&ctx, cfg.gamma)?;
            row(k, &orbit, cfg.gamma, measured, None, vec![("cor3".into(), cor3.rhs_total)])
        })
        .collect()
}

/// ℰ of |s|^γ against the dyadic-window orbits, in closed form, with the Hölder-type bounds.
pub fn run_sharpness_52(cfg: &SharpnessConfig) -> Result<Vec<SweepRow>> {
    cfg.validate(usize::MAX)?;
    (cfg.kmin..=cfg.kmax)
        .into_par_iter()
        .map(|k| {
            let orbit = window_orbit(k, cfg.dim)?;
            let f = TestFunction::HolderRadial { gamma: cfg.gamma };
            let measured = f.equidist_error(&orbit)?;
            let closed = orbit
                .closed_form_primes()
                .unwrap()
                .iter()
                .map(|&d| ((d as f64).ln() / d as f64).powi(2))
                .sum::<f64>()
                .powf(cfg.gamma / 2.0);
            let ctx = Context { f: &f, orbit: &orbit, quad: cfg.quad, measured: Some(measured) };
            let omega = ModulusOfContinuity::HolderOmega { l: 1.0, gamma: cfg.gamma };
            let power = MonotoneEnvelope::Power { gamma: cfg.gamma };
            let sqrt = MonotoneEnvelope::Power { gamma: 0.5 };
            let rhs = vec![
                ("cor6".into(), bounds::cor6_rhs(&ctx, cfg.gamma)?.rhs_total),
                ("thm5".into(), bounds::thm5_rhs(&ctx, &omega, &power)?.rhs_total),
                ("thm7".into(), bounds::thm7_rhs(&ctx, &omega, &sqrt)?.rhs_total),
            ];
            row(k, &orbit, cfg.gamma, measured, Some(closed), rhs)
        })
        .collect()
}

/// Versioned CSV for a sweep.
pub fn sweep_csv(experiment: &str, cfg: &SharpnessConfig, rows: &[SweepRow]) -> String {
    let mut s = format!("{CSV_VERSION}\n# experiment={experiment} gamma={} N={} k={}..{}\n", cfg.gamma, cfg.dim, cfg.kmin, cfg.kmax);
    let rhs_names: Vec<String> = rows.first().map(|r| r.rhs.iter().map(|(n, _)| format!("rhs_{n}")).collect()).unwrap_or_default();
    s.push_str("k,primes,h,D,h_D,measured,closed_form,");
    for n in &rhs_names {
        s.push_str(n);
        s.push(',');
    }
    s.push_str("lower_shape,ratio_lower,ratio_hD,all_rhs_hold\n");
    for r in rows {
        let primes: Vec<String> = r.primes.iter().map(u64::to_string).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},",
            r.k,
            primes.join(";"),
            num(r.h),
            num(r.d),
            num(r.h_d),
            num(r.measured),
            r.closed_form.map_or(String::new(), num)
        ));
        for (_, v) in &r.rhs {
            s.push_str(&num(*v));
            s.push(',');
        }
        s.push_str(&format!("{},{},{},{}\n", num(r.lower_shape), num(r.ratio_lower), num(r.ratio_hd), r.all_rhs_hold));
    }
    s
}
