//! Test functions on the torus times R^N with explicit Fourier data.

pub mod bessel;
mod oscillatory;
mod quad;
pub(crate) mod radial;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use libm::{erf, erfc};

use crate::error::{Error, Result};
use crate::orbit::lattice::l1_norm;
use crate::orbit::GaloisOrbit;
use crate::par;
use radial::{Profile, RadialWeight};

/// Tolerances and budgets for the one-dimensional quadratures.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Absolute tolerance of each reported integral.
    pub abs_tol: f64,
    /// Bisections allowed per adaptive integral.
    pub max_subdivisions: usize,
    /// Largest log-radius the truncation point may reach.
    pub max_log_radius: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-10, max_subdivisions: 20_000, max_log_radius: 700.0 }
    }
}

/// The supported families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum TestFunction {
    /// e^{2πi n·θ} e^{2πi t·s}.
    Character { n: Vec<i64>, t: Vec<f64> },
    /// F̂(0,t) = (1+|t|²)^{−(N+γ)/2} / (log(20+|t|²) (log log(20+|t|²))²), F̂(n,·) = 0 for n ≠ 0.
    FourierRadialProfile {
        gamma: f64,
        #[serde(rename = "N", alias = "dim")]
        dim: usize,
    },
    /// |s|^γ.
    HolderRadial { gamma: f64 },
    /// e^{2πi n₀·θ} e^{−π|s|²}.
    GaussianCharacter { n0: Vec<i64> },
    /// Σ c_n e^{2πi n·θ}, finitely many terms given as (n, re, im).
    AngularTable { table: Vec<(Vec<i64>, f64, f64)> },
}

#[inline]
fn cis_turns(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * (t - t.floor())).sin_cos();
    Complex64::new(c, s)
}

fn is_zero(n: &[i64]) -> bool {
    n.iter().all(|&v| v == 0)
}

fn dot(n: &[i64], x: &[f64]) -> f64 {
    n.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum()
}

fn euclid(s: &[f64]) -> f64 {
    s.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Root of a decreasing function on (lo, hi) by bisection.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl TestFunction {
    /// Dimension N fixed by the variant, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            TestFunction::Character { n, .. } => Some(n.len()),
            TestFunction::FourierRadialProfile { dim, .. } => Some(*dim),
            TestFunction::HolderRadial { .. } => None,
            TestFunction::GaussianCharacter { n0 } => Some(n0.len()),
            TestFunction::AngularTable { table } => table.first().map(|e| e.0.len()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestFunction::Character { .. } => "character",
            TestFunction::FourierRadialProfile { .. } => "fourier_radial_profile",
            TestFunction::HolderRadial { .. } => "holder_radial",
            TestFunction::GaussianCharacter { .. } => "gaussian_character",
            TestFunction::AngularTable { .. } => "angular_table",
        }
    }

    /// Parameter checks independent of any orbit.
    pub fn validate(&self) -> Result<()> {
        match self {
            TestFunction::Character { n, t } if n.len() != t.len() || n.is_empty() => {
                Err(Error::InvalidConfig("character needs n and t of the same positive length".into()))
            }
            TestFunction::FourierRadialProfile { gamma, dim } if !(*gamma > 0.0 && *gamma <= 0.5) || *dim == 0 => {
                Err(Error::InvalidConfig(format!("profile needs 0 < gamma <= 1/2 and N >= 1, got {gamma}, {dim}")))
            }
            TestFunction::HolderRadial { gamma } if !(*gamma > 0.0) => {
                Err(Error::InvalidConfig(format!("holder exponent must be positive, got {gamma}")))
            }
            TestFunction::GaussianCharacter { n0 } if n0.is_empty() => {
                Err(Error::InvalidConfig("gaussian character needs n0".into()))
            }
            TestFunction::AngularTable { table } => {
                let d = table.first().map_or(0, |e| e.0.len());
                if table.is_empty() || d == 0 || table.iter().any(|e| e.0.len() != d) {
                    return Err(Error::InvalidConfig("angular table needs entries of one positive dimension".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn check_dim(&self, orbit: &GaloisOrbit) -> Result<()> {
        self.validate()?;
        match self.dim() {
            Some(d) if d != orbit.dim() => Err(Error::InvalidConfig(format!(
                "test function has dimension {d}, orbit has dimension {}",
                orbit.dim()
            ))),
            _ => Ok(()),
        }
    }

    /// F(θ, s) for the pointwise-evaluable variants.
    pub fn evaluate(&self, theta: &[f64], s: &[f64]) -> Result<Complex64> {
        Ok(match self {
            TestFunction::Character { n, t } => cis_turns(dot(n, theta) + t.iter().zip(s).map(|(a, b)| a * b).sum::<f64>()),
            TestFunction::HolderRadial { gamma } => Complex64::new(euclid(s).powf(*gamma), 0.0),
            TestFunction::GaussianCharacter { n0 } => {
                cis_turns(dot(n0, theta)) * (-PI * s.iter().map(|v| v * v).sum::<f64>()).exp()
            }
            TestFunction::AngularTable { table } => {
                table.iter().map(|(n, re, im)| Complex64::new(*re, *im) * cis_turns(dot(n, theta))).sum()
            }
            TestFunction::FourierRadialProfile { .. } => {
                return Err(Error::UnsupportedVariant("the radial profile is not evaluated pointwise".into()))
            }
        })
    }

    /// ∫ F(θ, 0) dθ over the torus.
    pub fn haar_integral(&self, cfg: &QuadratureConfig) -> Result<Complex64> {
        self.validate()?;
        Ok(match self {
            TestFunction::Character { n, .. } => Complex64::new(if is_zero(n) { 1.0 } else { 0.0 }, 0.0),
            TestFunction::HolderRadial { .. } => Complex64::new(0.0, 0.0),
            TestFunction::GaussianCharacter { n0 } => Complex64::new(if is_zero(n0) { 1.0 } else { 0.0 }, 0.0),
            TestFunction::AngularTable { .. } => self.fourier_coeff_f0(&vec![0; self.dim().unwrap()])?,
            TestFunction::FourierRadialProfile { .. } => Complex64::new(self.transform_l1_norm(cfg)?, 0.0),
        })
    }

    /// (1/|S|) Σ_{α∈S} F(θ(α), s(α)).
    pub fn orbit_average(&self, orbit: &GaloisOrbit) -> Result<Complex64> {
        self.check_dim(orbit)?;
        let constant_s = orbit.closed_form_primes().is_some();
        match self {
            TestFunction::FourierRadialProfile { .. } => {
                Err(Error::UnsupportedVariant("use equidist_error_51 for the radial profile".into()))
            }
            TestFunction::Character { n, t } if t.iter().all(|&v| v == 0.0) => orbit.exp_sum(n),
            TestFunction::Character { n, t } if constant_s => {
                Ok(cis_turns(t.iter().zip(orbit.s(0)).map(|(a, b)| a * b).sum()) * orbit.exp_sum(n)?)
            }
            TestFunction::GaussianCharacter { n0 } if constant_s => {
                Ok(orbit.exp_sum(n0)? * (-PI * orbit.s(0).iter().map(|v| v * v).sum::<f64>()).exp())
            }
            TestFunction::HolderRadial { gamma } if constant_s => Ok(Complex64::new(euclid(orbit.s(0)).powf(*gamma), 0.0)),
            TestFunction::AngularTable { .. } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (n, c) in self.merged_table() {
                    acc += c * orbit.exp_sum(&n)?;
                }
                Ok(acc)
            }
            _ => {
                let sum = par::sum_complex(orbit.size(), |k| {
                    self.evaluate(orbit.theta(k), orbit.s(k)).unwrap_or(Complex64::new(f64::NAN, 0.0))
                });
                Ok(sum / orbit.size() as f64)
            }
        }
    }

    /// ℰ(F, ξ) = |orbit average − Haar integral| for the pointwise-evaluable variants.
    pub fn equidist_error(&self, orbit: &GaloisOrbit) -> Result<f64> {
        let avg = self.orbit_average(orbit)?;
        let haar = self.haar_integral(&QuadratureConfig::default())?;
        Ok((avg - haar).norm())
    }

    fn merged_table(&self) -> BTreeMap<Vec<i64>, Complex64> {
        let mut m = BTreeMap::new();
        if let TestFunction::AngularTable { table } = self {
            for (n, re, im) in table {
                *m.entry(n.clone()).or_insert(Complex64::new(0.0, 0.0)) += Complex64::new(*re, *im);
            }
        }
        m
    }

    /// Nonzero Fourier coefficients of F₀(θ) = F(θ, 0), in lattice order.
    pub fn f0_support(&self, cfg: &QuadratureConfig) -> Result<Vec<(Vec<i64>, Complex64)>> {
        self.validate()?;
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            TestFunction::Character { n, .. } => vec![(n.clone(), one)],
            TestFunction::GaussianCharacter { n0 } => vec![(n0.clone(), one)],
            TestFunction::HolderRadial { .. } => vec![],
            TestFunction::AngularTable { .. } => self.merged_table().into_iter().filter(|(_, c)| c.norm() != 0.0).collect(),
            TestFunction::FourierRadialProfile { dim, .. } => {
                vec![(vec![0; *dim], Complex64::new(self.transform_l1_norm(cfg)?, 0.0))]
            }
        })
    }

    /// F̂₀(n).
    pub fn fourier_coeff_f0(&self, n: &[i64]) -> Result<Complex64> {
        if let TestFunction::FourierRadialProfile { .. } = self {
            if !is_zero(n) {
                return Ok(Complex64::new(0.0, 0.0));
            }
        }
        Ok(self
            .f0_support(&QuadratureConfig::default())?
            .into_iter()
            .find(|(m, _)| m.as_slice() == n)
            .map_or(Complex64::new(0.0, 0.0), |(_, c)| c))
    }

    /// Nonzero slices n ↦ |F̂(n, ·)| as radial profiles, for the variants with integrable transform.
    pub(crate) fn transform_slices(&self) -> Result<Vec<(Vec<i64>, Profile)>> {
        self.validate()?;
        match self {
            TestFunction::GaussianCharacter { n0 } => Ok(vec![(n0.clone(), Profile::Gauss { dim: n0.len() })]),
            TestFunction::FourierRadialProfile { gamma, dim } => {
                Ok(vec![(vec![0; *dim], Profile::Frp { gamma: *gamma, dim: *dim })])
            }
            _ => Err(Error::NonIntegrableTransform(format!("{} has no integrable Fourier transform", self.name()))),
        }
    }

    /// ‖F̂‖₁ = Σ_n ∫ |F̂(n,t)| dt.
    pub fn transform_l1_norm(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let mut s = 0.0;
        for (_, p) in self.transform_slices()? {
            s += match p {
                Profile::Gauss { .. } => 1.0,
                Profile::Frp { .. } => radial::weighted_mass(p, &RadialWeight::one(), cfg)?,
            };
        }
        Ok(s)
    }

    /// ν_F̂(y) = Σ_n ∫_{‖n‖₁+‖t‖₁>y} |F̂(n,t)| dt.
    pub fn nu_tail(&self, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let mut s = 0.0;
        for (n, p) in self.transform_slices()? {
            let r = y - l1_norm(&n) as f64;
            s += match p {
                Profile::Gauss { .. } if r <= 0.0 => 1.0,
                Profile::Gauss { dim: 1 } => erfc(PI.sqrt() * r),
                Profile::Gauss { dim: 2 } => {
                    let e = erf((PI / 2.0).sqrt() * r);
                    if e > 0.5 {
                        let c = erfc((PI / 2.0).sqrt() * r);
                        c * (2.0 - c)
                    } else {
                        1.0 - e * e
                    }
                }
                Profile::Gauss { dim } => return Err(Error::DimensionUnsupported(dim)),
                Profile::Frp { .. } => radial::l1_tail_mass(p, r, cfg)?,
            };
        }
        Ok(s)
    }

    /// ν_F̂₀(y) = Σ_{‖n‖₁>y} |F̂₀(n)|.
    pub fn nu_tail_f0(&self, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self
            .f0_support(cfg)?
            .iter()
            .filter(|(n, _)| l1_norm(n) as f64 > y)
            .map(|(_, c)| c.norm())
            .sum())
    }

    /// ‖F̂₀‖₁ = Σ_n |F̂₀(n)|.
    pub fn f0_l1_norm(&self, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self.f0_support(cfg)?.iter().map(|(_, c)| c.norm()).sum())
    }

    /// sup over θ and |s| = x of |F(θ,s) − F(θ,0)|.
    pub fn radial_deviation(&self, x: f64) -> Result<f64> {
        self.validate()?;
        match self {
            TestFunction::HolderRadial { gamma } => Ok(x.powf(*gamma)),
            TestFunction::GaussianCharacter { .. } => Ok(-(-PI * x * x).exp_m1()),
            TestFunction::Character { t, .. } => Ok(2.0 * (PI * euclid(t) * x).min(PI / 2.0).sin()),
            TestFunction::AngularTable { .. } => Ok(0.0),
            TestFunction::FourierRadialProfile { .. } => {
                Err(Error::UnknownHolderConstant("the radial profile has no closed-form modulus".into()))
            }
        }
    }

    /// L_γ = sup_{s≠0, θ} |F(θ,s) − F(θ,0)| / |s|^γ.
    pub fn holder_constant(&self, gamma: f64) -> Result<f64> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::InvalidConfig(format!("holder exponent must lie in (0,1), got {gamma}")));
        }
        self.validate()?;
        match self {
            TestFunction::HolderRadial { gamma: g } if *g == gamma => Ok(1.0),
            TestFunction::HolderRadial { gamma: g } => Err(Error::DivergentConstant(format!(
                "|s|^{g} has infinite {gamma}-Holder constant at s = 0"
            ))),
            TestFunction::AngularTable { .. } => Ok(0.0),
            TestFunction::GaussianCharacter { .. } => {
                // maximize (1 − e^{−y}) (y/π)^{−γ/2} over y = π x²
                let y = bisect(|y| 2.0 * y / y.exp_m1() - gamma, 1e-12, 60.0);
                Ok(-(-y).exp_m1() * (y / PI).powf(-gamma / 2.0))
            }
            TestFunction::Character { t, .. } => {
                let c = PI * euclid(t);
                if c == 0.0 {
                    return Ok(0.0);
                }
                // maximize 2 c^γ sin(v)/v^γ over v = c x ∈ (0, π/2]
                let v = bisect(|v| v / v.tan() - gamma, 1e-12, PI / 2.0);
                Ok(2.0 * c.powf(gamma) * v.sin() / v.powf(gamma))
            }
            TestFunction::FourierRadialProfile { .. } => {
                Err(Error::UnknownHolderConstant("no closed-form Holder constant for the radial profile".into()))
            }
        }
    }
}

/// ℰ for the radial profile with exponent γ on a closed-form x^d − d orbit (N ≤ 2).
pub fn equidist_error_51(gamma: f64, orbit: &GaloisOrbit, cfg: &QuadratureConfig) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::InvalidConfig(format!("gamma must lie in (0, 1/2], got {gamma}")));
    }
    let primes = orbit
        .closed_form_primes()
        .ok_or_else(|| Error::UnsupportedVariant("the profile error needs a closed-form x^d - d orbit".into()))?;
    let w: Vec<f64> = primes.iter().map(|&d| (d as f64).ln() / d as f64).collect();
    oscillatory::profile_error(gamma, &w, cfg)
}

/// ℰ(F, ξ) for any supported pair, dispatching the radial profile to its integral identity.
pub fn measure_error(f: &TestFunction, orbit: &GaloisOrbit, cfg: &QuadratureConfig) -> Result<f64> {
    match f {
        TestFunction::FourierRadialProfile { gamma, dim } => {
            if *dim != orbit.dim() {
                return Err(Error::InvalidConfig("profile dimension differs from orbit dimension".into()));
            }
            equidist_error_51(*gamma, orbit, cfg)
        }
        _ => f.equidist_error(orbit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::OrbitSpec;

    fn xd(primes: &[u64]) -> GaloisOrbit {
        GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: primes.to_vec() }).unwrap()
    }

    #[test]
    fn holder_on_closed_form() {
        let e = TestFunction::HolderRadial { gamma: 0.5 }.equidist_error(&xd(&[5])).unwrap();
        assert!((e - (5f64.ln() / 5.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gaussian_holder_constant_is_a_maximum() {
        let f = TestFunction::GaussianCharacter { n0: vec![1] };
        let l = f.holder_constant(0.5).unwrap();
        for i in 1..2000 {
            let x = i as f64 * 0.002;
            assert!(f.radial_deviation(x).unwrap() / x.sqrt() <= l * (1.0 + 1e-12));
        }
    }

    #[test]
    fn character_holder_constant_is_a_maximum() {
        let f = TestFunction::Character { n: vec![1], t: vec![0.7] };
        let l = f.holder_constant(0.25).unwrap();
        let mut best: f64 = 0.0;
        for i in 1..20000 {
            let x = i as f64 * 1e-4;
            best = best.max(f.radial_deviation(x).unwrap() / x.powf(0.25));
        }
        assert!(best <= l * (1.0 + 1e-12) && best >= l * (1.0 - 1e-6));
    }

    #[test]
    fn json_shape() {
        let f: TestFunction = serde_json::from_str(r#"{"variant":"angular_table","table":[[[1],1.0,0.0],[[-1],1.0,0.0]]}"#).unwrap();
        assert_eq!(f.f0_l1_norm(&QuadratureConfig::default()).unwrap(), 2.0);
        let g: TestFunction = serde_json::from_str(r#"{"variant":"fourier_radial_profile","gamma":0.5,"N":1}"#).unwrap();
        assert_eq!(g.dim(), Some(1));
    }
}
