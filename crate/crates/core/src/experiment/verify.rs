//! The invariant corpus: every check runs, failures are collected, nothing aborts the suite.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Context, Theorem, SLACK};
use crate::discrepancy::{self, brute_force_discrepancy, exact_discrepancy, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::orbit::lattice::l1_shell;
use crate::orbit::{GaloisOrbit, NormP, OrbitSpec};
use crate::poly::IntPolynomial;
use crate::testfn::{measure_error, QuadratureConfig, TestFunction};

/// What the verification suite runs on.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(default)]
    pub seed: u64,
    /// Random square-free polynomials for the exponential-sum lemma.
    #[serde(default = "d_random_polys")]
    pub random_polynomials: usize,
    #[serde(default = "d_max_degree")]
    pub max_degree: usize,
    #[serde(default = "d_max_coeff")]
    pub max_coeff: i64,
    /// Random irreducible quadratics and cubics added to `orbits`.
    #[serde(default = "d_random_orbits")]
    pub random_orbits: usize,
    #[serde(default = "default_orbits")]
    pub orbits: Vec<OrbitSpec>,
    #[serde(default = "default_functions")]
    pub test_functions: Vec<TestFunction>,
    /// Primes d for the numeric x^d − d height check.
    #[serde(default = "d_height_primes")]
    pub height_primes: Vec<u64>,
    #[serde(default = "d_disc_sets")]
    pub discrepancy_sets: usize,
    #[serde(default = "d_disc_points")]
    pub discrepancy_max_points: usize,
}

fn d_random_polys() -> usize {
    60
}
fn d_max_degree() -> usize {
    20
}
fn d_max_coeff() -> i64 {
    50
}
fn d_random_orbits() -> usize {
    12
}
fn d_height_primes() -> Vec<u64> {
    vec![2, 3, 5, 7, 11, 13, 31, 61, 127, 251]
}
fn d_disc_sets() -> usize {
    20
}
fn d_disc_points() -> usize {
    16
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c).expect("valid built-in polynomial")
}

pub fn default_orbits() -> Vec<OrbitSpec> {
    vec![
        OrbitSpec::Single { poly: poly(&[2, 1, 1]), root_index: 0 },
        OrbitSpec::Single { poly: poly(&[-2, 0, 1]), root_index: 0 },
        OrbitSpec::Single { poly: poly(&[-3, 0, 0, 1]), root_index: 0 },
        OrbitSpec::Single { poly: IntPolynomial::cyclotomic(5), root_index: 0 },
        OrbitSpec::Single { poly: IntPolynomial::lehmer(), root_index: 0 },
        OrbitSpec::Product { polys: vec![poly(&[-2, 0, 1]), poly(&[-3, 0, 0, 1])] },
        OrbitSpec::XdMinusD { primes: vec![5] },
        OrbitSpec::XdMinusD { primes: vec![13] },
        OrbitSpec::XdMinusD { primes: vec![101] },
        OrbitSpec::XdMinusD { primes: vec![17, 19] },
    ]
}

pub fn default_functions() -> Vec<TestFunction> {
    let mut v = Vec::new();
    for n0 in [1, -1, 2, -2] {
        v.push(TestFunction::GaussianCharacter { n0: vec![n0] });
        v.push(TestFunction::GaussianCharacter { n0: vec![n0, 0] });
        v.push(TestFunction::GaussianCharacter { n0: vec![0, n0] });
    }
    v.push(TestFunction::HolderRadial { gamma: 0.25 });
    v.push(TestFunction::HolderRadial { gamma: 0.5 });
    v.push(TestFunction::AngularTable { table: vec![(vec![1], 1.0, 0.0), (vec![-1], 1.0, 0.0), (vec![2], 0.25, 0.0)] });
    v.push(TestFunction::AngularTable { table: vec![(vec![1], 0.5, 0.5), (vec![-3], 0.0, -0.25)] });
    v.push(TestFunction::AngularTable { table: vec![(vec![1, 1], 0.5, 0.0), (vec![-1, 2], 0.0, 0.3)] });
    v.push(TestFunction::Character { n: vec![1], t: vec![0.3] });
    v.push(TestFunction::FourierRadialProfile { gamma: 0.5, dim: 1 });
    v.push(TestFunction::FourierRadialProfile { gamma: 0.25, dim: 2 });
    v
}

impl Default for Corpus {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

impl Corpus {
    pub fn is_empty(&self) -> bool {
        self.random_polynomials == 0
            && self.random_orbits == 0
            && self.orbits.is_empty()
            && self.test_functions.is_empty()
            && self.height_primes.is_empty()
            && self.discrepancy_sets == 0
    }
}

/// Outcome of one named invariant over all its cases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// Smallest (bound − value) seen; negative means violated.
    pub worst_margin: f64,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Check {
    r: CheckResult,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            r: CheckResult {
                name: name.into(),
                passed: true,
                cases: 0,
                failures: 0,
                worst_margin: f64::INFINITY,
                first_failure: None,
            },
        }
    }

    /// Records value ≤ bound (with `slack`).
    fn le(&mut self, value: f64, bound: f64, slack: f64, what: impl FnOnce() -> String) {
        self.r.cases += 1;
        let margin = bound - value;
        if margin < self.r.worst_margin || margin.is_nan() {
            self.r.worst_margin = margin;
        }
        if !(value <= bound + slack) {
            self.fail(format!("{}: {value} > {bound}", what()));
        }
    }

    fn fail(&mut self, msg: String) {
        self.r.failures += 1;
        self.r.passed = false;
        self.r.first_failure.get_or_insert(msg);
    }

    fn error(&mut self, what: &str, e: &Error) {
        self.r.cases += 1;
        self.fail(format!("{what}: {e}"));
    }

    fn finish(mut self) -> CheckResult {
        if self.r.worst_margin == f64::INFINITY {
            self.r.worst_margin = 0.0;
        }
        self.r
    }
}

fn rational_root_exists(p: &IntPolynomial) -> bool {
    let c = p.coeffs();
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v = v.abs();
        let mut out = Vec::new();
        let mut k = BigInt::from(1);
        while &k * &k <= v {
            if (&v % &k).is_zero() {
                out.push(k.clone());
                out.push(&v / &k);
            }
            k += 1;
        }
        out
    };
    for a in divisors(&c[0]) {
        for b in divisors(&c[c.len() - 1]) {
            if !a.gcd(&b).eq(&BigInt::from(1)) {
                continue;
            }
            for sa in [a.clone(), -a.clone()] {
                // b^d P(a/b) = Σ c_i a^i b^{d-i}
                let d = c.len() - 1;
                let v: BigInt = (0..=d).map(|i| &c[i] * sa.pow(i as u32) * b.pow((d - i) as u32)).sum();
                if v.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Random square-free polynomial of degree 1..=max_degree with |c_i| ≤ max_coeff, c_0 c_d ≠ 0.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize, max_coeff: i64) -> IntPolynomial {
    loop {
        let d = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
        while c[0] == 0 {
            c[0] = rng.gen_range(-max_coeff..=max_coeff);
        }
        while c[d] == 0 {
            c[d] = rng.gen_range(-max_coeff..=max_coeff);
        }
        if let Ok(p) = IntPolynomial::from_i64(&c) {
            if p.is_squarefree() {
                return p;
            }
        }
    }
}

/// Random irreducible quadratic or cubic (no rational root), coefficients in [−b, b].
pub fn random_low_degree_irreducible(rng: &mut ChaCha8Rng, bound: i64) -> IntPolynomial {
    loop {
        let p = random_polynomial(rng, 3, bound);
        if p.degree() >= 2 && !rational_root_exists(&p) {
            return p;
        }
    }
}

/// Short human-readable name of an orbit specification.
pub fn spec_label(s: &OrbitSpec) -> String {
    match s {
        OrbitSpec::Single { poly, .. } => format!("single[{poly}]"),
        OrbitSpec::Product { polys } => {
            format!("product[{}]", polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" x "))
        }
        OrbitSpec::Explicit { tuples, .. } => format!("explicit[{} tuples]", tuples.len()),
        OrbitSpec::XdMinusD { primes } => format!("xd_minus_d{primes:?}"),
    }
}

/// Runs every invariant. `inject_bad_bound` shrinks every theorem bound by 10^6 to exercise failure reporting.
pub fn run_verify(corpus: &Corpus, inject_bad_bound: bool) -> Result<VerifyReport> {
    if corpus.is_empty() {
        return Err(Error::InvalidConfig("the corpus is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed);
    let quad = QuadratureConfig::default();
    let mut checks = Vec::new();

    let mut c = Check::new("height_closed_form");
    for &d in &corpus.height_primes {
        let p = IntPolynomial::binomial(d as usize, d as i64);
        match p.weil_height() {
            Ok(h) => c.le((h - (d as f64).ln() / d as f64).abs(), 1e-10, 0.0, || format!("x^{d}-{d}")),
            Err(e) => c.error(&format!("x^{d}-{d}"), &e),
        }
    }
    checks.push(c.finish());

    let mut lemma = Check::new("expsum_lemma");
    let mut scaling = Check::new("expsum_bound_scaling");
    for _ in 0..corpus.random_polynomials {
        let p = random_polynomial(&mut rng, corpus.max_degree, corpus.max_coeff);
        let o = match GaloisOrbit::build(&OrbitSpec::Single { poly: p.clone(), root_index: 0 }) {
            Ok(o) => o,
            Err(e) => {
                lemma.error(&p.to_string(), &e);
                continue;
            }
        };
        let b1 = o.expsum_bound(1).unwrap_or(f64::NAN);
        for n in 1..=5i64 {
            match (o.exp_sum(&[n]), o.expsum_bound(n)) {
                (Ok(z), Ok(b)) => {
                    lemma.le(z.norm(), b, 0.0, || format!("{p}, n={n}"));
                    let r = b / b1;
                    scaling.le((r - (n as f64).sqrt()).abs(), 1e-12 * r, 0.0, || format!("{p}, n={n}"));
                }
                (Err(e), _) | (_, Err(e)) => lemma.error(&p.to_string(), &e),
            }
        }
    }
    checks.push(lemma.finish());
    checks.push(scaling.finish());

    let mut specs: Vec<OrbitSpec> = corpus.orbits.clone();
    for _ in 0..corpus.random_orbits {
        specs.push(OrbitSpec::Single { poly: random_low_degree_irreducible(&mut rng, 10), root_index: 0 });
    }
    let mut orbits = Vec::new();
    let mut build = Check::new("orbit_construction");
    for s in &specs {
        build.r.cases += 1;
        match GaloisOrbit::build(s) {
            Ok(o) => orbits.push((spec_label(s), o)),
            Err(e) => build.fail(format!("{}: {e}", spec_label(s))),
        }
    }
    checks.push(build.finish());

    let mut divides = Check::new("chi_degree_divides_orbit_size");
    let mut log_sum = Check::new("orbit_log_sum_below_2h");
    let mut gamma_delta = Check::new("gamma_delta_fraction");
    let mut defect = Check::new("char_defect_bound");
    let mut chi_h = Check::new("chi_height_bound");
    let mut gdeg = Check::new("generalized_degree_single");
    for (label, o) in &orbits {
        for r in 1..=4u64 {
            for n in l1_shell(o.dim(), r) {
                divides.r.cases += 1;
                match o.chi_degree(&n) {
                    Ok(k) if o.size() as u64 % k == 0 => {}
                    Ok(k) => divides.fail(format!("{label}, n={n:?}: {k} does not divide {}", o.size())),
                    Err(e) => divides.fail(format!("{label}, n={n:?}: {e}")),
                }
            }
        }
        let ls = o.orbit_log_sum();
        log_sum.le(ls.value, ls.bound, 1e-12, || label.clone());
        for delta in [0.05, 0.5, 2.0] {
            match o.gamma_delta_fraction(delta) {
                Ok(g) => gamma_delta.le(g.value, g.bound, 1e-12, || format!("{label}, delta={delta}")),
                Err(e) => gamma_delta.error(label, &e),
            }
        }
        for r in 1..=2u64 {
            for n in l1_shell(o.dim(), r) {
                for t in [0.1, 1.0, 10.0] {
                    let tv = vec![t; o.dim()];
                    match o.char_defect(&n, &tv) {
                        Ok(cd) => defect.le(cd.value, cd.bound, 1e-12, || format!("{label}, n={n:?}, t={t}")),
                        Err(e) => defect.error(label, &e),
                    }
                }
                if o.size() <= 12 {
                    match o.chi_height(&n) {
                        Ok(ch) => chi_h.le(ch.value, ch.bound, 1e-8, || format!("{label}, n={n:?}")),
                        Err(e) => chi_h.error(&format!("{label}, n={n:?}"), &e),
                    }
                }
            }
        }
        if o.is_single() {
            gdeg.r.cases += 1;
            match o.generalized_degree(NormP::L1) {
                Ok(r) if r.d == o.degrees()[0] as f64 => {}
                Ok(r) => gdeg.fail(format!("{label}: D = {} but deg = {}", r.d, o.degrees()[0])),
                Err(e) => gdeg.fail(format!("{label}: {e}")),
            }
        }
    }
    for c in [divides, log_sum, gamma_delta, defect, chi_h, gdeg] {
        checks.push(c.finish());
    }

    let mut dom = Check::new("theorem_domination");
    let mut order = Check::new("thm1_below_cor3");
    let mut measure = Check::new("error_measurement");
    let factor = if inject_bad_bound { 1e-6 } else { 1.0 };
    for f in &corpus.test_functions {
        for (label, o) in &orbits {
            if f.dim().is_some_and(|d| d != o.dim()) {
                continue;
            }
            if matches!(f, TestFunction::FourierRadialProfile { .. }) && o.closed_form_primes().is_none() {
                continue;
            }
            let what = format!("{} on {label}", f.name());
            let measured = match measure_error(f, o, &quad) {
                Ok(m) => {
                    measure.r.cases += 1;
                    m
                }
                Err(e) => {
                    measure.error(&what, &e);
                    continue;
                }
            };
            let ctx = Context { f, orbit: o, quad, measured: Some(measured) };
            match bounds::all_reports(&ctx) {
                Ok(reports) => {
                    for r in &reports {
                        dom.le(measured, r.rhs_total * factor, SLACK, || format!("{what}, {}", r.theorem));
                    }
                    let get = |t: Theorem| reports.iter().find(|r| r.theorem == t).map(|r| r.rhs_total);
                    if let (Some(a), Some(b)) = (get(Theorem::Thm1), get(Theorem::Cor3)) {
                        order.le(a, b, SLACK, || what.clone());
                    }
                }
                Err(e) => dom.error(&what, &e),
            }
        }
    }
    checks.push(measure.finish());
    checks.push(dom.finish());
    checks.push(order.finish());

    let mut exact1 = Check::new("discrepancy_exact_1d");
    let mut exact2 = Check::new("discrepancy_exact_2d");
    let mut rot = Check::new("discrepancy_rotation_invariance");
    for i in 0..corpus.discrepancy_sets {
        let dim = 1 + i % 2;
        let max = if dim == 1 { corpus.discrepancy_max_points * 2 } else { corpus.discrepancy_max_points };
        let n = rng.gen_range(1..=max.max(1));
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| (rng.gen_range(0..64) as f64) / 64.0).collect()).collect();
        let c = if dim == 1 { &mut exact1 } else { &mut exact2 };
        match (exact_discrepancy(&pts, DEFAULT_CAP), brute_force_discrepancy(&pts)) {
            (Ok(a), Ok(b)) => c.le((a.value - b).abs(), 0.0, 0.0, || format!("set {i} ({n} points)")),
            (Err(e), _) | (_, Err(e)) => c.error(&format!("set {i}"), &e),
        }
        let shifted: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|x| (x + 17.0 / 64.0) % 1.0).collect()).collect();
        match (exact_discrepancy(&pts, DEFAULT_CAP), exact_discrepancy(&shifted, DEFAULT_CAP)) {
            (Ok(a), Ok(b)) => rot.le((a.value - b.value).abs(), 1e-12, 0.0, || format!("set {i}")),
            (Err(e), _) | (_, Err(e)) => rot.error(&format!("set {i}"), &e),
        }
    }
    checks.push(exact1.finish());
    checks.push(exact2.finish());
    checks.push(rot.finish());

    let mut etk = Check::new("etk_domination");
    let mut a1 = Check::new("thm_a1_domination");
    for (label, o) in &orbits {
        if o.dim() > 2 || (o.dim() == 2 && o.size() > DEFAULT_CAP) {
            continue;
        }
        let d = match exact_discrepancy(&discrepancy::orbit_points(o), DEFAULT_CAP) {
            Ok(d) => d.value,
            Err(e) => {
                etk.error(label, &e);
                continue;
            }
        };
        for m in [0u64, 1, 4, 8] {
            match discrepancy::etk_bound(o, m) {
                Ok(b) => etk.le(d, b, 1e-9, || format!("{label}, M={m}")),
                Err(e) => etk.error(label, &e),
            }
        }
        if let Ok(b) = discrepancy::thm_a1_bound(o) {
            a1.le(d, b, 1e-9, || label.clone());
        }
    }
    checks.push(etk.finish());
    checks.push(a1.finish());

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { version: crate::io::CSV_VERSION.trim_start_matches("# ").into(), passed, checks })
}
