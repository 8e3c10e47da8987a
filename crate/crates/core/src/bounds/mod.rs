//! Explicit upper bounds for ℰ(F, ξ) and the reports comparing them with measured values.

mod envelope;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use envelope::{ModulusOfContinuity, MonotoneEnvelope, Role};

use crate::error::{Error, Result};
use crate::orbit::lattice::l1_norm;
use crate::orbit::GaloisOrbit;
use crate::testfn::radial::{weighted_mass, RadialWeight};
use crate::testfn::{measure_error, QuadratureConfig, TestFunction};

/// Slack for comparing a measured error with a bound.
pub const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Thm1,
    Cor3,
    Thm4,
    Thm5,
    Cor6,
    Thm7,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [Theorem::Thm1, Theorem::Cor3, Theorem::Thm4, Theorem::Thm5, Theorem::Cor6, Theorem::Thm7];

    pub fn label(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Cor3 => "cor3",
            Theorem::Thm4 => "thm4",
            Theorem::Thm5 => "thm5",
            Theorem::Cor6 => "cor6",
            Theorem::Thm7 => "thm7",
        }
    }

    /// Whether the bound applies to F: the first three need an integrable transform,
    /// the last three a modulus of continuity.
    pub fn applies_to(self, f: &TestFunction) -> bool {
        let integrable = matches!(f, TestFunction::GaussianCharacter { .. } | TestFunction::FourierRadialProfile { .. });
        match self {
            Theorem::Thm1 | Theorem::Cor3 | Theorem::Thm4 => integrable,
            Theorem::Thm5 | Theorem::Cor6 | Theorem::Thm7 => !matches!(f, TestFunction::FourierRadialProfile { .. }),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.label() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`, expected one of thm1 cor3 thm4 thm5 cor6 thm7")))
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Parts {
    #[serde(rename = "I1_part")]
    pub i1: f64,
    #[serde(rename = "I2_part")]
    pub i2: f64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Constants {
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: Option<f64>,
    #[serde(rename = "C_F")]
    pub c_f: Option<f64>,
    #[serde(rename = "L_gamma")]
    pub l_gamma: Option<f64>,
}

/// A theorem's right-hand side next to the measured error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub rhs_total: f64,
    pub parts: Parts,
    pub constants: Constants,
    /// Truncation parameters used internally by the proof, recorded as is.
    pub truncation_m: Vec<f64>,
    pub h: f64,
    pub h_d: f64,
    pub measured: f64,
    pub satisfied: bool,
}

impl BoundReport {
    fn new(theorem: Theorem, orbit_h: (f64, f64), parts: Parts, constants: Constants, m: Vec<f64>, measured: f64) -> Self {
        let rhs_total = parts.i1 + parts.i2;
        BoundReport {
            theorem,
            rhs_total,
            parts,
            constants,
            truncation_m: m,
            h: orbit_h.0,
            h_d: orbit_h.1,
            measured,
            satisfied: measured <= rhs_total + SLACK,
        }
    }

    /// measured / rhs.
    pub fn ratio(&self) -> f64 {
        self.measured / self.rhs_total
    }

    pub fn csv_header() -> &'static str {
        "theorem,h,h_D,measured,I1_part,I2_part,rhs_total,satisfied"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{}",
            self.theorem, self.h, self.h_d, self.measured, self.parts.i1, self.parts.i2, self.rhs_total, self.satisfied
        )
    }
}

/// Per-call inputs shared by the bound evaluators.
pub struct Context<'a> {
    pub f: &'a TestFunction,
    pub orbit: &'a GaloisOrbit,
    pub quad: QuadratureConfig,
    /// The measured ℰ, if already known.
    pub measured: Option<f64>,
}

impl<'a> Context<'a> {
    pub fn new(f: &'a TestFunction, orbit: &'a GaloisOrbit) -> Self {
        Context { f, orbit, quad: QuadratureConfig::default(), measured: None }
    }

    fn measured(&self) -> Result<f64> {
        match self.measured {
            Some(m) => Ok(m),
            None => measure_error(self.f, self.orbit, &self.quad),
        }
    }

    fn heights(&self) -> Result<(f64, f64)> {
        Ok((self.orbit.height(), self.orbit.h_d()?))
    }
}

/// C₁(F, G) = Σ_n ∫ |F̂(n,t)| G(‖t‖∞) dt.
pub fn constant_c1(f: &TestFunction, g: &MonotoneEnvelope, quad: &QuadratureConfig) -> Result<f64> {
    g.validate(Role::Weight)?;
    let eval = |r: f64| g.eval(r);
    let growth = |x: f64| g.log_growth(x);
    let w = RadialWeight { eval: &eval, growth: &growth, power: g.power_exponent() };
    let mut s = 0.0;
    for (_, p) in f.transform_slices()? {
        s += weighted_mass(p, &w, quad)?;
    }
    if !s.is_finite() {
        return Err(Error::DivergentConstant(format!("C1 with {} is not finite", g.label())));
    }
    Ok(s)
}

/// C₂(F, H) = Σ_{n≠0} |F̂₀(n)| H(‖n‖₁).
pub fn constant_c2(f: &TestFunction, h: &MonotoneEnvelope, quad: &QuadratureConfig) -> Result<f64> {
    h.validate(Role::Weight)?;
    let s: f64 = f
        .f0_support(quad)?
        .iter()
        .filter(|(n, _)| l1_norm(n) > 0)
        .map(|(n, c)| c.norm() * h.eval(l1_norm(n) as f64))
        .sum();
    if !s.is_finite() {
        return Err(Error::DivergentConstant(format!("C2 with {} is not finite", h.label())));
    }
    Ok(s)
}

/// 2C₁/G((8πh)⁻¹) + C₂/H((24h_D)⁻¹); the first term is 0 when h = 0.
pub fn thm1_rhs(ctx: &Context, g: &MonotoneEnvelope, h_env: &MonotoneEnvelope) -> Result<BoundReport> {
    g.validate(Role::Truncation)?;
    h_env.validate(Role::Truncation)?;
    let (h, hd) = ctx.heights()?;
    let c1 = constant_c1(ctx.f, g, &ctx.quad)?;
    let c2 = constant_c2(ctx.f, h_env, &ctx.quad)?;
    let m1 = if h > 0.0 { 1.0 / (8.0 * PI * h) } else { f64::INFINITY };
    let m2 = 1.0 / (24.0 * hd);
    let i1 = if h > 0.0 { 2.0 * c1 / g.eval(m1) } else { 0.0 };
    let i2 = if c2 == 0.0 { 0.0 } else { c2 / h_env.eval(m2) };
    let consts = Constants { c1: Some(c1), c2: Some(c2), ..Default::default() };
    Ok(BoundReport::new(Theorem::Thm1, (h, hd), Parts { i1, i2 }, consts, vec![m1, m2], ctx.measured()?))
}

/// C(F) h_D^γ with C(F) = Σ_n ∫ |F̂(n,t)| (2(8π)^γ ‖t‖∞^γ + 24^γ ‖n‖₁^γ) dt.
pub fn cor3_rhs(ctx: &Context, gamma: f64) -> Result<BoundReport> {
    let env = MonotoneEnvelope::Power { gamma };
    env.validate(Role::Truncation)?;
    let (h, hd) = ctx.heights()?;
    let c1 = constant_c1(ctx.f, &env, &ctx.quad)?;
    let mut angular = 0.0;
    for (n, p) in ctx.f.transform_slices()? {
        let k = l1_norm(&n);
        if k > 0 {
            angular += (k as f64).powf(gamma) * weighted_mass(p, &RadialWeight::one(), &ctx.quad)?;
        }
    }
    let a = 2.0 * (8.0 * PI).powf(gamma) * c1;
    let b = 24f64.powf(gamma) * angular;
    let scale = hd.powf(gamma);
    let consts = Constants { c1: Some(c1), c_f: Some(a + b), ..Default::default() };
    Ok(BoundReport::new(
        Theorem::Cor3,
        (h, hd),
        Parts { i1: a * scale, i2: b * scale },
        consts,
        vec![1.0 / (8.0 * PI * hd), 1.0 / (24.0 * hd)],
        ctx.measured()?,
    ))
}

/// 2(√(8π)+√6) √(h_D W(1/h_D)) ‖F̂‖₁ + 3 ν_F̂(W(1/h_D)).
pub fn thm4_rhs(ctx: &Context, w: &MonotoneEnvelope) -> Result<BoundReport> {
    w.validate(Role::Tail)?;
    let (h, hd) = ctx.heights()?;
    let y = w.eval(1.0 / hd);
    let norm = ctx.f.transform_l1_norm(&ctx.quad)?;
    let i1 = 2.0 * ((8.0 * PI).sqrt() + 6f64.sqrt()) * (hd * y).sqrt() * norm;
    let i2 = 3.0 * ctx.f.nu_tail(y, &ctx.quad)?;
    Ok(BoundReport::new(Theorem::Thm4, (h, hd), Parts { i1, i2 }, Constants::default(), vec![y], ctx.measured()?))
}

/// ω(2h) + C₂/H((24h_D)⁻¹).
pub fn thm5_rhs(ctx: &Context, omega: &ModulusOfContinuity, h_env: &MonotoneEnvelope) -> Result<BoundReport> {
    omega.check_for(ctx.f)?;
    h_env.validate(Role::Truncation)?;
    let (h, hd) = ctx.heights()?;
    let c2 = constant_c2(ctx.f, h_env, &ctx.quad)?;
    let m2 = 1.0 / (24.0 * hd);
    let i1 = omega.eval(2.0 * h);
    let i2 = if c2 == 0.0 { 0.0 } else { c2 / h_env.eval(m2) };
    let consts = Constants { c2: Some(c2), ..Default::default() };
    Ok(BoundReport::new(Theorem::Thm5, (h, hd), Parts { i1, i2 }, consts, vec![m2], ctx.measured()?))
}

/// C(F) h_D^γ with C(F) = 2^γ L_γ(F) + 24^γ Σ |F̂₀(n)| ‖n‖₁^γ.
pub fn cor6_rhs(ctx: &Context, gamma: f64) -> Result<BoundReport> {
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::InvalidConfig(format!("gamma must lie in (0, 1/2], got {gamma}")));
    }
    let (h, hd) = ctx.heights()?;
    let l = ctx.f.holder_constant(gamma)?;
    let c2 = constant_c2(ctx.f, &MonotoneEnvelope::Power { gamma }, &ctx.quad)?;
    let a = 2f64.powf(gamma) * l;
    let b = 24f64.powf(gamma) * c2;
    let scale = hd.powf(gamma);
    let consts = Constants { c2: Some(c2), c_f: Some(a + b), l_gamma: Some(l), ..Default::default() };
    Ok(BoundReport::new(
        Theorem::Cor6,
        (h, hd),
        Parts { i1: a * scale, i2: b * scale },
        consts,
        vec![1.0 / (24.0 * hd)],
        ctx.measured()?,
    ))
}

/// ω(2h) + 2√6 √(h_D W(1/h_D)) ‖F̂₀‖₁ + ν_F̂₀(W(1/h_D)).
pub fn thm7_rhs(ctx: &Context, omega: &ModulusOfContinuity, w: &MonotoneEnvelope) -> Result<BoundReport> {
    omega.check_for(ctx.f)?;
    w.validate(Role::Tail)?;
    let (h, hd) = ctx.heights()?;
    let y = w.eval(1.0 / hd);
    let norm = ctx.f.f0_l1_norm(&ctx.quad)?;
    let i1 = omega.eval(2.0 * h);
    let i2 = 2.0 * 6f64.sqrt() * (hd * y).sqrt() * norm + ctx.f.nu_tail_f0(y, &ctx.quad)?;
    Ok(BoundReport::new(Theorem::Thm7, (h, hd), Parts { i1, i2 }, Constants::default(), vec![y], ctx.measured()?))
}

/// The natural exponent for the Hölder-type results: γ of a Hölder profile, else 1/2.
pub fn natural_gamma(f: &TestFunction) -> f64 {
    match f {
        TestFunction::HolderRadial { gamma } | TestFunction::FourierRadialProfile { gamma, .. } => gamma.min(0.5),
        _ => 0.5,
    }
}

/// Every applicable bound with default envelopes: Power(γ) for G and H, √x for W, the exact Hölder modulus.
pub fn all_reports(ctx: &Context) -> Result<Vec<BoundReport>> {
    let gamma = natural_gamma(ctx.f);
    let measured = ctx.measured()?;
    let ctx = Context { measured: Some(measured), quad: ctx.quad, ..*ctx };
    let power = MonotoneEnvelope::Power { gamma };
    let sqrt = MonotoneEnvelope::Power { gamma: 0.5 };
    let mut out = Vec::new();
    for t in Theorem::ALL {
        if t.applies_to(ctx.f) {
            out.push(report(&ctx, t, &power, &sqrt)?);
        }
    }
    Ok(out)
}

/// One theorem with Power(γ) for G and H and `w` for W.
pub fn report(ctx: &Context, t: Theorem, power: &MonotoneEnvelope, w: &MonotoneEnvelope) -> Result<BoundReport> {
    let gamma = power.power_exponent().unwrap_or(0.5);
    match t {
        Theorem::Thm1 => thm1_rhs(ctx, power, power),
        Theorem::Cor3 => cor3_rhs(ctx, gamma),
        Theorem::Thm4 => thm4_rhs(ctx, w),
        Theorem::Thm5 => thm5_rhs(ctx, &ModulusOfContinuity::natural_for(ctx.f)?, power),
        Theorem::Cor6 => cor6_rhs(ctx, gamma),
        Theorem::Thm7 => thm7_rhs(ctx, &ModulusOfContinuity::natural_for(ctx.f)?, w),
    }
}

/// Envelope choices for one bound evaluation; anything omitted takes the defaults of [`all_reports`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundConfig {
    #[serde(default, rename = "G")]
    pub g: Option<MonotoneEnvelope>,
    #[serde(default, rename = "H")]
    pub h: Option<MonotoneEnvelope>,
    #[serde(default, rename = "W")]
    pub w: Option<MonotoneEnvelope>,
    #[serde(default)]
    pub omega: Option<ModulusOfContinuity>,
    /// Exponent for the two corollaries.
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub quad: Option<QuadratureConfig>,
}

/// Evaluates one theorem under `cfg`.
pub fn evaluate(ctx: &Context, t: Theorem, cfg: &BoundConfig) -> Result<BoundReport> {
    if !t.applies_to(ctx.f) {
        return Err(Error::UnsupportedVariant(format!("{t} does not apply to {}", ctx.f.name())));
    }
    let gamma = cfg.gamma.unwrap_or_else(|| natural_gamma(ctx.f));
    let power = MonotoneEnvelope::Power { gamma };
    let g = cfg.g.as_ref().unwrap_or(&power);
    let h = cfg.h.as_ref().unwrap_or(&power);
    let sqrt = MonotoneEnvelope::Power { gamma: 0.5 };
    let w = cfg.w.as_ref().unwrap_or(&sqrt);
    let omega = match &cfg.omega {
        Some(o) => o.clone(),
        None if matches!(t, Theorem::Thm5 | Theorem::Thm7) => ModulusOfContinuity::natural_for(ctx.f)?,
        None => ModulusOfContinuity::HolderOmega { l: 0.0, gamma },
    };
    match t {
        Theorem::Thm1 => thm1_rhs(ctx, g, h),
        Theorem::Cor3 => cor3_rhs(ctx, gamma),
        Theorem::Thm4 => thm4_rhs(ctx, w),
        Theorem::Thm5 => thm5_rhs(ctx, &omega, h),
        Theorem::Cor6 => cor6_rhs(ctx, gamma),
        Theorem::Thm7 => thm7_rhs(ctx, &omega, w),
    }
}

/// 2√(6|n|) (h + log(2d)/(3d))^{1/2} for a single algebraic number.
pub fn expsum_bound(orbit: &GaloisOrbit, n: i64) -> Result<f64> {
    orbit.expsum_bound(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::OrbitSpec;

    #[test]
    fn tabulated_c2() {
        let f = TestFunction::AngularTable { table: vec![(vec![1], 1.0, 0.0), (vec![-1], 1.0, 0.0), (vec![2], 0.25, 0.0)] };
        let c2 = constant_c2(&f, &MonotoneEnvelope::Power { gamma: 0.5 }, &QuadratureConfig::default()).unwrap();
        assert!((c2 - (2.0 + 0.25 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn holder_closed_form_bounds() {
        let o = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: vec![5] }).unwrap();
        let f = TestFunction::HolderRadial { gamma: 0.5 };
        let ctx = Context::new(&f, &o);
        let r = thm5_rhs(&ctx, &ModulusOfContinuity::natural_for(&f).unwrap(), &MonotoneEnvelope::Power { gamma: 0.5 })
            .unwrap();
        assert!((r.rhs_total - (2.0 * 5f64.ln() / 5.0).sqrt()).abs() < 1e-15);
        assert!(r.satisfied);
        let c = cor6_rhs(&ctx, 0.5).unwrap();
        assert!((c.constants.c_f.unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
