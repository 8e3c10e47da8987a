//! Exact integer polynomials, their complex roots and Mahler measures.

mod dd;
mod gcd;
mod recognize;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use dd::{Dd, Real};
pub use recognize::{height_from_conjugates, recognize_minimal_polynomial};
pub use roots::{Precision, RootConfig, RootSet};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients `c_0 .. c_d`, `c_d != 0`, `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

pub(crate) fn bigint_abs_ln(c: &BigInt) -> f64 {
    let a = c.abs();
    let bits = a.bits();
    if bits < 1000 {
        a.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 60;
        let top: BigInt = &a >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl IntPolynomial {
    /// Rejects the zero polynomial, constants, and a vanishing constant term.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        Self::build(coeffs, false)
    }

    /// Like [`IntPolynomial::new`] but permits `c_0 = 0` (a root at the origin).
    pub fn new_allow_zero_constant(coeffs: Vec<BigInt>) -> Result<Self> {
        Self::build(coeffs, true)
    }

    fn build(mut coeffs: Vec<BigInt>, allow_zero_constant: bool) -> Result<Self> {
        gcd::trim(&mut coeffs);
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput("zero polynomial".into()));
        }
        if coeffs.len() < 2 {
            return Err(Error::DegenerateInput("constant polynomial has no roots".into()));
        }
        if !allow_zero_constant && coeffs[0].is_zero() {
            return Err(Error::DegenerateInput("constant coefficient is zero".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `x^d - c`.
    pub fn binomial(d: usize, c: i64) -> Self {
        let mut v = vec![BigInt::zero(); d + 1];
        v[0] = BigInt::from(-c);
        v[d] = BigInt::one();
        Self::new(v).expect("x^d - c with c != 0 and d >= 1")
    }

    /// The n-th cyclotomic polynomial.
    pub fn cyclotomic(n: usize) -> Self {
        assert!(n >= 1);
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -BigInt::one();
        v[n] = BigInt::one();
        for k in 1..n {
            if n % k == 0 {
                let f = Self::cyclotomic(k);
                v = gcd::div_exact(&v, &f.coeffs).expect("cyclotomic factor divides x^n - 1");
            }
        }
        Self::new(v).expect("cyclotomic polynomial")
    }

    /// Lehmer's degree-10 polynomial, the smallest known Mahler measure above 1.
    pub fn lehmer() -> Self {
        Self::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    /// Sum of absolute coefficient values as a double.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// Horner evaluation in double precision.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            p = p * z + c.to_f64().unwrap_or(f64::INFINITY);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        IntPolynomial { coeffs: gcd::mul(&self.coeffs, &other.coeffs) }
    }

    /// Coefficients of P', which may be a constant.
    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c * BigInt::from(j)).collect()
    }

    /// `x^d P(1/x)`.
    pub fn reversed(&self) -> Result<Self> {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `P(-x)`.
    pub fn negated_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial { coeffs }
    }

    /// True iff gcd(P, P') is constant.
    pub fn is_squarefree(&self) -> bool {
        gcd::gcd_degree(&self.coeffs, &self.derivative()) == 0
    }

    /// Degree of gcd(P, Q) over the rationals.
    pub fn gcd_degree(&self, other: &Self) -> usize {
        gcd::gcd_degree(&self.coeffs, &other.coeffs)
    }

    pub fn find_roots(&self, cfg: &RootConfig) -> Result<RootSet> {
        roots::find_roots_of(&self.coeffs, cfg)
    }

    /// `m(P) = log|c_d| + sum log+ |alpha|`.
    pub fn log_mahler_measure(&self) -> Result<f64> {
        let roots = self.find_roots(&RootConfig::default())?;
        Ok(Self::log_mahler_from_roots(self.leading(), &roots))
    }

    pub(crate) fn log_mahler_from_roots(lead: &BigInt, roots: &RootSet) -> f64 {
        bigint_abs_ln(lead) + roots.log_moduli().iter().map(|l| l.max(0.0)).sum::<f64>()
    }

    /// Weil height `m(P)/deg P`.
    pub fn weil_height(&self) -> Result<f64> {
        Ok(self.log_mahler_measure()? / self.degree() as f64)
    }
}

impl fmt::Display for IntPolynomial {
    /// Text form `d: c_0 c_1 ... c_d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let line = s
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::Parse("empty polynomial text".into()))?;
        let (deg, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `d: c_0 ... c_d`, got `{line}`")))?;
        let d: usize = deg.trim().parse().map_err(|_| Error::Parse(format!("bad degree `{}`", deg.trim())))?;
        let coeffs = rest
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != d + 1 {
            return Err(Error::Parse(format!("degree {d} needs {} coefficients, found {}", d + 1, coeffs.len())));
        }
        if coeffs[d].is_zero() {
            return Err(Error::Parse("leading coefficient is zero".into()));
        }
        IntPolynomial::new(coeffs)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p: IntPolynomial = "2: -2 0 1".parse().unwrap();
        assert_eq!(p.to_string(), "2: -2 0 1");
        assert!("3: 1 2".parse::<IntPolynomial>().is_err());
        assert!("x: 1 2".parse::<IntPolynomial>().is_err());
        assert!("1: 1 0".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(IntPolynomial::cyclotomic(1).to_string(), "1: -1 1");
        assert_eq!(IntPolynomial::cyclotomic(6).to_string(), "2: 1 -1 1");
        assert_eq!(IntPolynomial::cyclotomic(12).to_string(), "4: 1 0 -1 0 1");
    }

    #[test]
    fn squarefree() {
        assert!(IntPolynomial::from_i64(&[-2, 0, 1]).unwrap().is_squarefree());
        assert!(!IntPolynomial::from_i64(&[1, -2, 1]).unwrap().is_squarefree());
        assert!(IntPolynomial::binomial(5, 5).is_squarefree());
        let p = IntPolynomial::from_i64(&[1, 1, 2]).unwrap();
        assert!(!p.mul(&p).is_squarefree());
    }

    #[test]
    fn evaluate_basic() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]).unwrap();
        assert_eq!(p.evaluate(Complex64::new(0.0, 0.0)), Complex64::new(-2.0, 0.0));
        let q = IntPolynomial::from_i64(&[2, 1, 1]).unwrap();
        assert_eq!(q.evaluate(Complex64::new(1.0, 0.0)), Complex64::new(4.0, 0.0));
    }
}
