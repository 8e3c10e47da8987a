//! Experiment drivers behind the command-line tool.

pub mod sharpness;
pub mod sieve;
pub mod verify;

use serde::Serialize;

pub use sharpness::{lower_bound_shape, run_sharpness_51, run_sharpness_52, sweep_csv, SharpnessConfig, SweepRow};
pub use verify::{run_verify, spec_label, CheckResult, Corpus, VerifyReport};

use crate::discrepancy::{orbit_discrepancy, DiscrepancyOptions, DiscrepancyResult};
use crate::error::Result;
use crate::io::{num, CSV_VERSION};
use crate::orbit::{DegreeReport, GaloisOrbit, NormP, OrbitSpec};
use crate::poly::{IntPolynomial, RootConfig};

#[derive(Clone, Debug, Serialize)]
pub struct LemmaRow {
    pub n: i64,
    pub exp_sum_abs: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub polynomial: String,
    pub degree: usize,
    pub log_mahler: f64,
    pub h: f64,
    pub roots: Vec<[f64; 2]>,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "h_D")]
    pub h_d: f64,
    pub lemma: Vec<LemmaRow>,
    pub warnings: Vec<String>,
}

/// Heights, roots and the exponential-sum bound for n = 1..5 of the orbit of one polynomial.
pub fn run_height_report(poly: &IntPolynomial) -> Result<HeightReport> {
    let roots = poly.find_roots(&RootConfig::default())?;
    let orbit = GaloisOrbit::build(&OrbitSpec::Single { poly: poly.clone(), root_index: 0 })?;
    let deg = orbit.generalized_degree(NormP::L1)?;
    let mut lemma = Vec::new();
    for n in 1..=5 {
        let z = orbit.exp_sum(&[n])?.norm();
        let b = orbit.expsum_bound(n)?;
        lemma.push(LemmaRow { n, exp_sum_abs: z, bound: b, holds: z <= b });
    }
    Ok(HeightReport {
        polynomial: poly.to_string(),
        degree: poly.degree(),
        log_mahler: poly.log_mahler_measure()?,
        h: orbit.height(),
        roots: roots.roots().iter().map(|z| [z.re, z.im]).collect(),
        d: deg.d,
        h_d: deg.h_d,
        lemma,
        warnings: orbit.warnings().to_vec(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub dim: usize,
    pub size: usize,
    pub degrees: Vec<usize>,
    pub coordinate_heights: Vec<f64>,
    pub h: f64,
    pub degree: DegreeReport,
    pub orbit_log_sum: f64,
    pub warnings: Vec<String>,
}

pub fn orbit_summary(orbit: &GaloisOrbit, p: NormP) -> Result<OrbitSummary> {
    Ok(OrbitSummary {
        dim: orbit.dim(),
        size: orbit.size(),
        degrees: orbit.degrees().to_vec(),
        coordinate_heights: orbit.coordinate_heights().to_vec(),
        h: orbit.height(),
        degree: orbit.generalized_degree(p)?,
        orbit_log_sum: orbit.orbit_log_sum().value,
        warnings: orbit.warnings().to_vec(),
    })
}

/// CSV of orbit tuples: index, then θ and s per coordinate.
pub fn orbit_csv(orbit: &GaloisOrbit) -> String {
    let mut s = format!("{CSV_VERSION}\nindex");
    for j in 0..orbit.dim() {
        s.push_str(&format!(",theta_{j},s_{j}"));
    }
    s.push('\n');
    for k in 0..orbit.size() {
        s.push_str(&k.to_string());
        for (t, v) in orbit.theta(k).iter().zip(orbit.s(k)) {
            s.push_str(&format!(",{},{}", num(*t), num(*v)));
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyRow {
    pub label: String,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "h_D")]
    pub h_d: f64,
    pub result: DiscrepancyResult,
}

pub fn run_discrepancy(label: &str, orbit: &GaloisOrbit, opts: &DiscrepancyOptions) -> Result<DiscrepancyRow> {
    let deg = orbit.generalized_degree(NormP::L1)?;
    Ok(DiscrepancyRow { label: label.into(), d: deg.d, h_d: deg.h_d, result: orbit_discrepancy(orbit, opts)? })
}

pub fn discrepancy_csv(rows: &[DiscrepancyRow]) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), num);
    let mut s = format!("{CSV_VERSION}\nlabel,D,h_D,closed,half_open,etk_M,etk,thmA1\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.label,
            num(r.d),
            num(r.h_d),
            num(r.result.value),
            num(r.result.value_half_open),
            r.result.etk_m.map_or(String::new(), |m| m.to_string()),
            opt(r.result.etk_value),
            opt(r.result.thm_a1_value)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_report_for_sqrt2() {
        let r = run_height_report(&IntPolynomial::from_i64(&[-2, 0, 1]).unwrap()).unwrap();
        assert!((r.h - 2f64.ln() / 2.0).abs() < 1e-13);
        assert!(r.lemma.iter().all(|l| l.holds));
    }

    #[test]
    fn verify_default_corpus_passes() {
        let mut c = Corpus::default();
        c.random_polynomials = 5;
        c.random_orbits = 2;
        let r = run_verify(&c, false).unwrap();
        for ch in &r.checks {
            assert!(ch.passed, "{ch:?}");
        }
        let bad = run_verify(&c, true).unwrap();
        assert!(!bad.passed);
        assert!(bad.checks.iter().any(|c| c.name == "theorem_domination" && !c.passed));
    }
}
