//! ℰ for the Fourier radial profile against a closed-form orbit, via
//! ℰ = 2 ∫ F̂(0,t) sin²(π w·t) dt with w_j = log d_j / d_j.

use std::f64::consts::PI;

use super::bessel::j0;
use super::quad::integrate_panels;
use super::radial::{radial_moment, Profile, RadialWeight};
use super::QuadratureConfig;
use crate::error::{Error, Result};

/// Integrate `f` over `count` consecutive panels of width `width` starting at 0.
fn periodic_panels<F: Fn(f64) -> f64 + Sync>(f: &F, width: f64, count: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let breaks: Vec<f64> = (0..=count).map(|k| k as f64 * width).collect();
    let mut budget = cfg.max_subdivisions;
    integrate_panels(f, &breaks, cfg.abs_tol / 4.0, &mut budget)
}

/// Smallest multiple of `width` (at least one) where `ok` holds, doubling.
fn truncation<F: Fn(f64) -> bool>(width: f64, cfg: &QuadratureConfig, ok: F) -> Result<usize> {
    let mut k = 1usize;
    while !ok(k as f64 * width) {
        k *= 2;
        if (k as f64 * width).ln() > cfg.max_log_radius || k > 1 << 40 {
            return Err(Error::QuadratureBudgetExceeded(k));
        }
    }
    Ok(k)
}

/// ℰ for the profile with exponent γ and frequency vector `w` (N = w.len() ∈ {1, 2}).
pub(crate) fn profile_error(gamma: f64, w: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    let p = Profile::Frp { gamma, dim: w.len() };
    let target = cfg.abs_tol / 10.0;
    let one = RadialWeight::one();
    match w.len() {
        1 => {
            let m = 1.0 / w[0];
            let omega = 2.0 * PI / m;
            // ∫_T^∞ φ cos(ωt) is within 2|φ'(T)|/ω² when ωT ∈ 2πZ.
            let k = truncation(m, cfg, |t| 4.0 * p.abs_derivative(t) / (omega * omega) < target)?;
            let t_end = k as f64 * m;
            let f = |t: f64| p.at(t) * (PI * t / m).sin().powi(2);
            let body = periodic_panels(&f, m, k, cfg)?;
            let tail = radial_moment(p, &one, t_end, cfg)?;
            Ok(4.0 * body + 2.0 * tail)
        }
        2 => {
            let a = 2.0 * PI * (w[0] * w[0] + w[1] * w[1]).sqrt();
            let width = 2.0 * PI / a;
            // second mean value bound for ∫_T^∞ rφ(r) J0(ar) dr
            let osc = |t: f64| 2.0 * t * p.at(t) * 1.5 * (2.0 / (PI * a * t)).sqrt() / a;
            let k = truncation(width, cfg, |t| a * t >= 20.0 && t >= 1.0 && 2.0 * PI * osc(t) < target)?;
            let t_end = k as f64 * width;
            let f = |r: f64| r * p.at(r) * (1.0 - j0(a * r));
            let body = periodic_panels(&f, width, k, cfg)?;
            let tail = radial_moment(p, &one, t_end, cfg)?;
            Ok(2.0 * PI * (body + tail))
        }
        n => Err(Error::DimensionUnsupported(n)),
    }
}
