//! Monotone envelopes G, H, W and moduli of continuity ω.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::testfn::TestFunction;

/// A nondecreasing function on (0, ∞).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneEnvelope {
    /// x^γ.
    Power { gamma: f64 },
    /// log(2 + x).
    Log,
    /// Power-law interpolation through (x, y) knots, extended by the end slopes.
    UserTable { knots: Vec<(f64, f64)> },
}

/// The hypothesis set an envelope is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Plain nonnegative nondecreasing weight.
    Weight,
    /// G or H: nondecreasing, unbounded, G(x)/√x nonincreasing.
    Truncation,
    /// W: nondecreasing with W(x)/x → 0.
    Tail,
}

impl MonotoneEnvelope {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            MonotoneEnvelope::Power { gamma } => {
                if *gamma == 0.0 {
                    1.0
                } else {
                    x.powf(*gamma)
                }
            }
            MonotoneEnvelope::Log => (2.0 + x).ln(),
            MonotoneEnvelope::UserTable { knots } => {
                if knots.len() == 1 {
                    return knots[0].1;
                }
                let slopes = table_slopes(knots);
                let i = match knots.iter().position(|k| k.0 > x) {
                    Some(0) => 0,
                    Some(i) => i - 1,
                    None => knots.len() - 2,
                };
                let (x0, y0) = knots[i];
                y0 * (x / x0).powf(slopes[i])
            }
        }
    }

    /// σ with G(e^u) ≤ G(e^X) e^{σ(u−X)} for all u ≥ X.
    pub fn log_growth(&self, log_x: f64) -> f64 {
        match self {
            MonotoneEnvelope::Power { gamma } => *gamma,
            MonotoneEnvelope::Log => 1.0 / (2.0 + log_x.exp()).ln(),
            MonotoneEnvelope::UserTable { knots } => {
                if knots.len() == 1 {
                    return 0.0;
                }
                let x = log_x.exp();
                let s = table_slopes(knots);
                let mut m = *s.last().unwrap();
                for (i, &sl) in s.iter().enumerate() {
                    if knots[i + 1].0 > x {
                        m = m.max(sl);
                    }
                }
                m.max(0.0)
            }
        }
    }

    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            MonotoneEnvelope::Power { gamma } => Some(*gamma),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            MonotoneEnvelope::Power { gamma } => format!("power({gamma})"),
            MonotoneEnvelope::Log => "log".into(),
            MonotoneEnvelope::UserTable { knots } => format!("table({} knots)", knots.len()),
        }
    }

    /// Checks the hypotheses of `role`; violations are errors.
    pub fn validate(&self, role: Role) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidEnvelope(m));
        match self {
            MonotoneEnvelope::Power { gamma } => match role {
                Role::Weight if !(*gamma >= 0.0) => bad(format!("power weight needs gamma >= 0, got {gamma}")),
                Role::Truncation if !(*gamma > 0.0 && *gamma <= 0.5) => {
                    bad(format!("power envelope as G or H needs 0 < gamma <= 1/2, got {gamma}"))
                }
                Role::Tail if !(*gamma >= 0.0 && *gamma < 1.0) => {
                    bad(format!("power envelope as W needs 0 <= gamma < 1, got {gamma}"))
                }
                _ => Ok(()),
            },
            MonotoneEnvelope::Log => Ok(()),
            MonotoneEnvelope::UserTable { knots } => {
                if knots.is_empty() {
                    return bad("table has no knots".into());
                }
                for (i, &(x, y)) in knots.iter().enumerate() {
                    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
                        return bad(format!("knot {i} = ({x}, {y}) must be positive and finite"));
                    }
                    if i > 0 && x <= knots[i - 1].0 {
                        return bad(format!("knot abscissae must increase at knot {i}"));
                    }
                    if i > 0 && y < knots[i - 1].1 {
                        return bad(format!("table decreases at knot {i}"));
                    }
                }
                let slopes = table_slopes(knots);
                match role {
                    Role::Weight => Ok(()),
                    Role::Truncation => {
                        if let Some((i, s)) = slopes.iter().enumerate().find(|(_, &s)| s > 0.5 + 1e-12) {
                            return bad(format!("G(x)/sqrt(x) increases on segment {i} (log-log slope {s})"));
                        }
                        if slopes.last().map_or(true, |&s| s <= 0.0) {
                            return bad("G must be unbounded: last log-log slope must be positive".into());
                        }
                        Ok(())
                    }
                    Role::Tail => {
                        if slopes.last().is_some_and(|&s| s >= 1.0) {
                            return bad("W(x)/x must tend to 0: last log-log slope must be below 1".into());
                        }
                        Ok(())
                    }
                }
            }
        }
    }
}

/// Log-log slopes between consecutive knots.
fn table_slopes(knots: &[(f64, f64)]) -> Vec<f64> {
    knots
        .windows(2)
        .map(|w| (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln())
        .collect()
}

/// A modulus of continuity ω at s = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusOfContinuity {
    /// L x^γ with 0 < γ ≤ 1.
    HolderOmega {
        #[serde(rename = "L")]
        l: f64,
        gamma: f64,
    },
    /// Piecewise linear through (0,0) and the knots, continued with the last slope.
    UserConcaveTable { knots: Vec<(f64, f64)> },
}

impl ModulusOfContinuity {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ModulusOfContinuity::HolderOmega { l, gamma } => {
                if *l == 0.0 {
                    0.0
                } else {
                    l * x.powf(*gamma)
                }
            }
            ModulusOfContinuity::UserConcaveTable { knots } => {
                let mut prev = (0.0, 0.0);
                for (i, &k) in knots.iter().enumerate() {
                    if x <= k.0 || i + 1 == knots.len() {
                        let slope = (k.1 - prev.1) / (k.0 - prev.0);
                        return prev.1 + slope * (x - prev.0);
                    }
                    prev = k;
                }
                0.0
            }
        }
    }

    /// Nondecreasing, concave, ω(0+) = 0.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModulus(m));
        match self {
            ModulusOfContinuity::HolderOmega { l, gamma } => {
                if !(*l >= 0.0 && l.is_finite()) {
                    return bad(format!("L must be a finite nonnegative number, got {l}"));
                }
                if !(*gamma > 0.0 && *gamma <= 1.0) {
                    return bad(format!("a concave Holder modulus needs 0 < gamma <= 1, got {gamma}"));
                }
                Ok(())
            }
            ModulusOfContinuity::UserConcaveTable { knots } => {
                if knots.is_empty() {
                    return bad("table has no knots".into());
                }
                let mut prev = (0.0, 0.0);
                let mut last_slope = f64::INFINITY;
                for (i, &(x, y)) in knots.iter().enumerate() {
                    if !(x > prev.0 && y.is_finite() && x.is_finite()) {
                        return bad(format!("knot abscissae must be positive and increasing at knot {i}"));
                    }
                    let slope = (y - prev.1) / (x - prev.0);
                    if slope < 0.0 {
                        return bad(format!("modulus decreases before knot {i}"));
                    }
                    if slope > last_slope * (1.0 + 1e-12) {
                        return bad(format!("modulus is not concave at knot {}", i.max(1) - 1));
                    }
                    last_slope = slope;
                    prev = (x, y);
                }
                Ok(())
            }
        }
    }

    /// Checks ω(|s|) ≥ |F(θ,s) − F(θ,0)| for the built-in variants.
    pub fn check_for(&self, f: &TestFunction) -> Result<()> {
        self.validate()?;
        match self {
            ModulusOfContinuity::HolderOmega { l, gamma } => {
                if let TestFunction::AngularTable { .. } = f {
                    return Ok(());
                }
                let need = f.holder_constant(*gamma)?;
                if *l < need * (1.0 - 1e-12) {
                    return Err(Error::InvalidModulus(format!(
                        "L = {l} is below the {gamma}-Holder constant {need} of {}",
                        f.name()
                    )));
                }
                Ok(())
            }
            ModulusOfContinuity::UserConcaveTable { .. } => {
                for i in 0..=4000 {
                    let x = 10f64.powf(-8.0 + 12.0 * i as f64 / 4000.0);
                    let dev = f.radial_deviation(x)?;
                    if self.eval(x) < dev * (1.0 - 1e-12) {
                        return Err(Error::InvalidModulus(format!(
                            "table gives omega({x:.3e}) = {} below the deviation {dev} of {}",
                            self.eval(x),
                            f.name()
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Hölder modulus with the exact constant for the built-in variants.
    pub fn natural_for(f: &TestFunction) -> Result<Self> {
        match f {
            TestFunction::HolderRadial { gamma } if *gamma <= 1.0 => {
                Ok(ModulusOfContinuity::HolderOmega { l: 1.0, gamma: *gamma })
            }
            TestFunction::AngularTable { .. } => Ok(ModulusOfContinuity::HolderOmega { l: 0.0, gamma: 0.5 }),
            _ => Ok(ModulusOfContinuity::HolderOmega { l: f.holder_constant(0.5)?, gamma: 0.5 }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModulusOfContinuity::HolderOmega { l, gamma } => format!("holder(L={l},gamma={gamma})"),
            ModulusOfContinuity::UserConcaveTable { knots } => format!("table({} knots)", knots.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_interpolates_power_law() {
        let g = MonotoneEnvelope::UserTable { knots: vec![(1.0, 1.0), (4.0, 2.0), (16.0, 3.0)] };
        assert!((g.eval(2.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((g.eval(4.0) - 2.0).abs() < 1e-15);
        g.validate(Role::Truncation).unwrap();
        let bad = MonotoneEnvelope::UserTable { knots: vec![(1.0, 1.0), (2.0, 3.0)] };
        assert!(bad.validate(Role::Truncation).is_err());
    }

    #[test]
    fn concavity_enforced() {
        let ok = ModulusOfContinuity::UserConcaveTable { knots: vec![(1.0, 1.0), (2.0, 1.5)] };
        ok.validate().unwrap();
        assert!((ok.eval(3.0) - 2.0).abs() < 1e-15);
        let bad = ModulusOfContinuity::UserConcaveTable { knots: vec![(1.0, 1.0), (2.0, 3.0)] };
        assert!(matches!(bad.validate(), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn log_growth_bounds_log() {
        let g = MonotoneEnvelope::Log;
        for x0 in [0.0, 1.0, 5.0] {
            let s = g.log_growth(x0);
            for k in 1..50 {
                let x = x0 + k as f64 * 0.3;
                assert!(g.eval(x.exp()) <= g.eval(f64::exp(x0)) * (s * (x - x0)).exp() * (1.0 + 1e-14));
            }
        }
    }
}
