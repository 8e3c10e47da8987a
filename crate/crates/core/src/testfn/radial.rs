//! Radial integrals of the Fourier profiles, with analytic tails.

use std::f64::consts::{FRAC_PI_4, PI};

use super::quad::integrate;
use super::QuadratureConfig;
use crate::error::{Error, Result};

/// Largest log-radius a truncation may reach.
const X_MAX: f64 = 700.0;
/// Log-radius where the logarithmically convergent tail is replaced by its asymptotic value.
const X_LOGTAIL: f64 = 30.0;

/// Radial Fourier profile of a class-A function.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Profile {
    /// (1+r^2)^{-(N+γ)/2} / (ℓ (log ℓ)^2), ℓ = log(20+r^2).
    Frp { gamma: f64, dim: usize },
    /// e^{-π r^2}.
    Gauss { dim: usize },
}

/// log(20 + e^{2x}).
fn ell_x(x: f64) -> f64 {
    if 2.0 * x > 20.0 {
        2.0 * x + (20.0 * (-2.0 * x).exp()).ln_1p()
    } else {
        (20.0 + (2.0 * x).exp()).ln()
    }
}

/// log(1 + e^{2x}).
fn log1p_exp2(x: f64) -> f64 {
    if x > 0.0 {
        2.0 * x + (-2.0 * x).exp().ln_1p()
    } else {
        (2.0 * x).exp().ln_1p()
    }
}

impl Profile {
    pub(crate) fn dim(self) -> usize {
        match self {
            Profile::Frp { dim, .. } | Profile::Gauss { dim } => dim,
        }
    }

    /// ln f(e^x).
    pub(crate) fn ln_at_x(self, x: f64) -> f64 {
        match self {
            Profile::Frp { gamma, dim } => {
                let l = ell_x(x);
                -0.5 * (dim as f64 + gamma) * log1p_exp2(x) - l.ln() - 2.0 * l.ln().ln()
            }
            Profile::Gauss { .. } => -PI * (2.0 * x).exp(),
        }
    }

    pub(crate) fn at(self, r: f64) -> f64 {
        match self {
            Profile::Frp { gamma, dim } => {
                let r2 = r * r;
                let l = (20.0 + r2).ln();
                (1.0 + r2).powf(-0.5 * (dim as f64 + gamma)) / (l * l.ln().powi(2))
            }
            Profile::Gauss { .. } => (-PI * r * r).exp(),
        }
    }

    /// |f'(r)|, exact.
    pub(crate) fn abs_derivative(self, r: f64) -> f64 {
        match self {
            Profile::Frp { gamma, dim } => {
                let r2 = r * r;
                let l = (20.0 + r2).ln();
                let dl = 2.0 * r / (20.0 + r2);
                self.at(r) * ((dim as f64 + gamma) * r / (1.0 + r2) + dl / l * (1.0 + 2.0 / l.ln()))
            }
            Profile::Gauss { .. } => 2.0 * PI * r * self.at(r),
        }
    }

    /// δ such that e^{δx} f(e^x) e^{Nx} is nonincreasing on [X, ∞), if known.
    fn decay(self, x: f64) -> Option<f64> {
        match self {
            Profile::Frp { gamma, .. } => (x >= 3.0).then_some(gamma),
            Profile::Gauss { dim } => {
                let d = 2.0 * PI * (2.0 * x).exp() - dim as f64;
                (x >= 0.0 && d > 0.0).then_some(d)
            }
        }
    }

    fn is_frp_with_exponent(self, beta: f64) -> bool {
        matches!(self, Profile::Frp { gamma, .. } if gamma == beta)
    }
}

/// A nondecreasing radial weight w with a local growth exponent:
/// w(e^x) ≤ w(e^X) e^{σ(X)(x−X)} for x ≥ X.
pub(crate) struct RadialWeight<'a> {
    pub eval: &'a (dyn Fn(f64) -> f64 + Sync),
    pub growth: &'a (dyn Fn(f64) -> f64 + Sync),
    /// Some(β) when w(r) = r^β exactly.
    pub power: Option<f64>,
}

impl RadialWeight<'static> {
    pub(crate) fn one() -> Self {
        RadialWeight { eval: &|_| 1.0, growth: &|_| 0.0, power: Some(0.0) }
    }
}

/// ∫_{r_lo}^∞ of an integrand given on [r_lo, 1] as `g_r(r)` and beyond as `g_x(x) = g(e^x) e^x`.
/// `tail(X)` returns an accepted bound for ∫_X^∞ g_x, or None to keep integrating.
pub(crate) fn half_line<R, X, T>(g_r: R, g_x: X, tail: T, r_lo: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    R: Fn(f64) -> f64 + Sync,
    X: Fn(f64) -> f64 + Sync,
    T: Fn(f64) -> Option<f64>,
{
    let tol = cfg.abs_tol;
    let mut budget = cfg.max_subdivisions;
    let mut sum = 0.0;
    if r_lo < 1.0 {
        sum += integrate(&g_r, r_lo.max(0.0), 1.0, tol / 4.0, &mut budget)?;
    }
    let mut x = if r_lo > 1.0 { r_lo.ln() } else { 0.0 };
    let mut i = 0u32;
    loop {
        if let Some(t) = tail(x) {
            return Ok(sum + t);
        }
        if x > X_MAX.min(cfg.max_log_radius) {
            return Err(Error::DivergentConstant(format!("no convergent tail bound up to log-radius {x:.1}")));
        }
        let panel_tol = tol / (4.0 * f64::from((i + 1) * (i + 1)));
        sum += integrate(&g_x, x, x + 1.0, panel_tol, &mut budget)?;
        x += 1.0;
        i += 1;
    }
}

/// ∫_{r_lo}^∞ f(r) r^{N−1} w(r) dr for the given profile.
pub(crate) fn radial_moment(p: Profile, w: &RadialWeight, r_lo: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let n = p.dim() as f64;
    let target = cfg.abs_tol / 10.0;
    let g_r = |r: f64| {
        if r == 0.0 && n > 1.0 {
            0.0
        } else {
            p.at(r) * r.powf(n - 1.0) * (w.eval)(r)
        }
    };
    let g_x = |x: f64| (p.ln_at_x(x) + n * x).exp() * (w.eval)(x.exp());
    let log_tail = w.power.is_some_and(|b| p.is_frp_with_exponent(b));
    let tail = |x: f64| {
        if log_tail {
            if x < X_LOGTAIL {
                return None;
            }
            let Profile::Frp { gamma, dim } = p else { unreachable!() };
            let a = 0.5 * (dim as f64 + gamma);
            let u = (-2.0 * x).exp();
            let c = (1.0 + 20.0 * u) / (1.0 + u).powf(a);
            return Some(c / (2.0 * ell_x(x).ln()));
        }
        let delta = p.decay(x)?;
        let sigma = (w.growth)(x);
        if delta <= sigma {
            return None;
        }
        let b = g_x(x) / (delta - sigma);
        (b < target).then_some(b)
    };
    half_line(g_r, g_x, tail, r_lo, cfg)
}

/// ∫_0^{2π} max(|cos θ|, |sin θ|)^β dθ = 8 ∫_0^{π/4} cos^β θ dθ.
pub(crate) fn linf_angular_factor(beta: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if beta == 0.0 {
        return Ok(2.0 * PI);
    }
    let mut budget = cfg.max_subdivisions;
    Ok(8.0 * integrate(&|t: f64| t.cos().powf(beta), 0.0, FRAC_PI_4, cfg.abs_tol / 16.0, &mut budget)?)
}

/// ∫_{R^N} f(|t|) w(‖t‖∞) dt for N ∈ {1, 2}.
pub(crate) fn weighted_mass(p: Profile, w: &RadialWeight, cfg: &QuadratureConfig) -> Result<f64> {
    match p.dim() {
        1 => Ok(2.0 * radial_moment(p, w, 0.0, cfg)?),
        2 => {
            if let Some(beta) = w.power {
                let eval = move |r: f64| if beta == 0.0 { 1.0 } else { r.powf(beta) };
                let growth = move |_: f64| beta;
                let rw = RadialWeight { eval: &eval, growth: &growth, power: Some(beta) };
                return Ok(linf_angular_factor(beta, cfg)? * radial_moment(p, &rw, 0.0, cfg)?);
            }
            let inner_cfg = QuadratureConfig { abs_tol: cfg.abs_tol / 16.0, ..*cfg };
            let err = std::sync::Mutex::new(None);
            let inner = |theta: f64| {
                let c = theta.cos();
                let eval = move |r: f64| (w.eval)(r * c);
                let growth = move |x: f64| (w.growth)(x + c.ln());
                let rw = RadialWeight { eval: &eval, growth: &growth, power: None };
                match radial_moment(p, &rw, 0.0, &inner_cfg) {
                    Ok(v) => v,
                    Err(e) => {
                        err.lock().unwrap().get_or_insert(e);
                        0.0
                    }
                }
            };
            let mut budget = cfg.max_subdivisions;
            let v = integrate(&inner, 0.0, FRAC_PI_4, cfg.abs_tol / 16.0, &mut budget)?;
            if let Some(e) = err.into_inner().unwrap() {
                return Err(e);
            }
            Ok(8.0 * v)
        }
        n => Err(Error::DimensionUnsupported(n)),
    }
}

/// ∫_{‖t‖₁ > y} f(|t|) dt for N ∈ {1, 2}.
pub(crate) fn l1_tail_mass(p: Profile, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let y = y.max(0.0);
    let one = RadialWeight::one();
    match p.dim() {
        1 => Ok(2.0 * radial_moment(p, &one, y, cfg)?),
        2 => {
            if y == 0.0 {
                return Ok(2.0 * PI * radial_moment(p, &one, 0.0, cfg)?);
            }
            let inner_cfg = QuadratureConfig { abs_tol: cfg.abs_tol / 16.0, ..*cfg };
            let err = std::sync::Mutex::new(None);
            let inner = |theta: f64| match radial_moment(p, &one, y / (theta.cos() + theta.sin()), &inner_cfg) {
                Ok(v) => v,
                Err(e) => {
                    err.lock().unwrap().get_or_insert(e);
                    0.0
                }
            };
            let mut budget = cfg.max_subdivisions;
            let v = integrate(&inner, 0.0, FRAC_PI_4, cfg.abs_tol / 16.0, &mut budget)?;
            if let Some(e) = err.into_inner().unwrap() {
                return Err(e);
            }
            Ok(8.0 * v)
        }
        n => Err(Error::DimensionUnsupported(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig { abs_tol: 1e-11, ..QuadratureConfig::default() }
    }

    #[test]
    fn gaussian_masses() {
        let one = RadialWeight::one();
        assert!((weighted_mass(Profile::Gauss { dim: 1 }, &one, &cfg()).unwrap() - 1.0).abs() < 1e-10);
        assert!((weighted_mass(Profile::Gauss { dim: 2 }, &one, &cfg()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_sqrt_moment() {
        let eval = |r: f64| r.sqrt();
        let growth = |_: f64| 0.5;
        let w = RadialWeight { eval: &eval, growth: &growth, power: Some(0.5) };
        let v = weighted_mass(Profile::Gauss { dim: 1 }, &w, &cfg()).unwrap();
        // Γ(3/4) π^{-3/4}
        assert!((v - 1.225_416_702_465_178 * PI.powf(-0.75)).abs() < 1e-10);
    }

    #[test]
    fn separable_and_nested_agree() {
        let eval = |r: f64| r.powf(0.3);
        let growth = |_: f64| 0.3;
        let sep = RadialWeight { eval: &eval, growth: &growth, power: Some(0.3) };
        let nest = RadialWeight { eval: &eval, growth: &growth, power: None };
        let p = Profile::Gauss { dim: 2 };
        let a = weighted_mass(p, &sep, &cfg()).unwrap();
        let b = weighted_mass(p, &nest, &cfg()).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }

    #[test]
    fn frp_derivative_matches_difference() {
        let p = Profile::Frp { gamma: 0.5, dim: 1 };
        for r in [0.5, 3.0, 40.0] {
            let h = 1e-5 * r;
            let fd = (p.at(r + h) - p.at(r - h)) / (2.0 * h);
            assert!((fd.abs() - p.abs_derivative(r)).abs() < 1e-7 * p.abs_derivative(r));
            assert!((p.ln_at_x(f64::ln(r)) - p.at(r).ln()).abs() < 1e-12);
        }
    }
}
