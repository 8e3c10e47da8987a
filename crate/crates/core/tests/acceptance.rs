//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_equidist::bounds::{all_reports, cor3_rhs, Context, Theorem, SLACK};
use torus_equidist::discrepancy::{brute_force_discrepancy, etk_paper_m, exact_discrepancy, orbit_points, thm_a1_bound};
use torus_equidist::experiment::sieve::{dyadic_primes, primes_below};
use torus_equidist::experiment::verify::{random_low_degree_irreducible, random_polynomial};
use torus_equidist::experiment::{run_sharpness_52, SharpnessConfig};
use torus_equidist::orbit::{GaloisOrbit, NormP, OrbitSpec};
use torus_equidist::orbit::lattice::l1_shell;
use torus_equidist::poly::IntPolynomial;
use torus_equidist::testfn::{equidist_error_51, measure_error, QuadratureConfig, TestFunction};

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, ok: bool, what: &str, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} criterion {id}: {what} ({detail})", if ok { "PASS" } else { "FAIL" });
    }
}

fn xd(primes: Vec<u64>) -> GaloisOrbit {
    GaloisOrbit::build(&OrbitSpec::XdMinusD { primes }).unwrap()
}

fn heights(r: &mut Report) {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let primes = primes_below(2000);
    for &d in &primes {
        let h = IntPolynomial::binomial(d as usize, d as i64).weil_height().unwrap();
        worst = worst.max((h - (d as f64).ln() / d as f64).abs());
    }
    let secs = t.elapsed().as_secs_f64();
    r.line(1, worst <= 1e-10 && secs < 10.0, "h(x^d - d) = log d / d for primes d < 2000", format!("{} primes, max error {worst:.2e}, {secs:.2} s", primes.len()));
}

fn expsum_lemma(r: &mut Report) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut violations, mut worst) = (0, f64::INFINITY);
    for _ in 0..500 {
        let p = random_polynomial(&mut rng, 30, 50);
        let o = GaloisOrbit::build(&OrbitSpec::Single { poly: p, root_index: 0 }).unwrap();
        for n in 1..=5 {
            let (z, b) = (o.exp_sum(&[n]).unwrap().norm(), o.expsum_bound(n).unwrap());
            worst = worst.min(b - z);
            if z > b {
                violations += 1;
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    r.line(2, violations == 0 && secs < 60.0, "|exp_sum| <= 2 sqrt(6|n|) h_D^(1/2) on 500 random polynomials", format!("{violations} violations, min margin {worst:.3}, {secs:.2} s"));
}

fn domination(r: &mut Report) {
    let quad = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut orbits: Vec<GaloisOrbit> = (0..50)
        .map(|_| GaloisOrbit::build(&OrbitSpec::Single { poly: random_low_degree_irreducible(&mut rng, 10), root_index: 0 }).unwrap())
        .collect();
    for d in [5, 13, 101] {
        orbits.push(xd(vec![d]));
    }
    let poly = |c: &[i64]| IntPolynomial::from_i64(c).unwrap();
    orbits.push(GaloisOrbit::build(&OrbitSpec::Product { polys: vec![poly(&[-2, 0, 1]), poly(&[-3, 0, 0, 1])] }).unwrap());

    let mut functions = vec![TestFunction::HolderRadial { gamma: 0.25 }, TestFunction::HolderRadial { gamma: 0.5 }];
    for v in [1, -1, 2, -2] {
        functions.push(TestFunction::GaussianCharacter { n0: vec![v] });
        functions.push(TestFunction::GaussianCharacter { n0: vec![v, 0] });
        functions.push(TestFunction::GaussianCharacter { n0: vec![0, v] });
    }
    functions.push(TestFunction::AngularTable { table: vec![(vec![1], 1.0, 0.0), (vec![-1], 1.0, 0.0), (vec![2], 0.25, 0.0)] });
    functions.push(TestFunction::AngularTable { table: vec![(vec![1], 0.5, 0.5), (vec![-3], 0.0, -0.25)] });
    functions.push(TestFunction::AngularTable { table: vec![(vec![1, 1], 0.5, 0.0), (vec![-1, 2], 0.0, 0.3)] });

    let (mut cases, mut violations, mut errors) = (0, 0, 0);
    let mut worst = f64::INFINITY;
    let mut seen = std::collections::BTreeSet::new();
    for f in &functions {
        for o in &orbits {
            if f.dim().is_some_and(|d| d != o.dim()) {
                continue;
            }
            let measured = match measure_error(f, o, &quad) {
                Ok(m) => m,
                Err(_) => {
                    errors += 1;
                    continue;
                }
            };
            let ctx = Context { f, orbit: o, quad, measured: Some(measured) };
            match all_reports(&ctx) {
                Ok(reports) => {
                    for rep in reports {
                        cases += 1;
                        seen.insert(rep.theorem.label());
                        worst = worst.min(rep.rhs_total - measured);
                        if measured > rep.rhs_total + SLACK {
                            violations += 1;
                        }
                    }
                }
                Err(_) => errors += 1,
            }
        }
    }
    let all = Theorem::ALL.iter().all(|t| seen.contains(t.label()));
    r.line(
        3,
        violations == 0 && errors == 0 && all,
        "measured error <= every applicable bound",
        format!("{cases} comparisons over {} orbits, {violations} violations, {errors} errors, min margin {worst:.3e}", orbits.len()),
    );
}

fn sharpness52(r: &mut Report) {
    let t = Instant::now();
    let (mut max_err, mut min_ratio, mut rhs_ok) = (0.0f64, f64::INFINITY, true);
    for gamma in [0.25, 0.5] {
        let cfg = SharpnessConfig { gamma, dim: 1, kmin: 4, kmax: 20, quad: QuadratureConfig::default() };
        for row in run_sharpness_52(&cfg).unwrap() {
            let d = row.primes[0] as f64;
            max_err = max_err.max((row.measured - (d.ln() / d).powf(gamma)).abs());
            rhs_ok &= row.all_rhs_hold;
            if row.k >= 10 {
                min_ratio = min_ratio.min(row.ratio_lower);
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    r.line(
        4,
        max_err <= 1e-12 && min_ratio >= 0.5 && rhs_ok && secs < 30.0,
        "|s|^gamma sweep matches (log d/d)^gamma, lower-shape ratio >= 1/2 for k >= 10",
        format!("max error {max_err:.2e}, min ratio {min_ratio:.3}, {secs:.2} s"),
    );
}

/// F̂(0,t) for the radial profile in one dimension.
fn phi(gamma: f64, t: f64) -> f64 {
    let u = 20.0 + t * t;
    (1.0 + t * t).powf(-(1.0 + gamma) / 2.0) / (u.ln() * u.ln().ln().powi(2))
}

/// 2∫₀^T φ(1 − cos(2πt/M)) by the midpoint rule, plus 2∫_T^∞ φ by the midpoint rule in log t.
fn midpoint_oracle(gamma: f64, d: f64) -> f64 {
    let m = d / d.ln();
    let big_t = 2000.0 * m;
    let panels = 1_000_000;
    let h = big_t / panels as f64;
    let mut body = 0.0;
    for i in 0..panels {
        let t = (i as f64 + 0.5) * h;
        body += phi(gamma, t) * (1.0 - (2.0 * PI * t / m).cos());
    }
    let (a, b) = (big_t.ln(), big_t.ln() + 400.0);
    let hu = (b - a) / panels as f64;
    let mut tail = 0.0;
    for i in 0..panels {
        let u = a + (i as f64 + 0.5) * hu;
        tail += phi(gamma, u.exp()) * u.exp();
    }
    2.0 * body * h + 2.0 * tail * hu
}

fn sharpness51(r: &mut Report) {
    let t = Instant::now();
    let quad = QuadratureConfig::default();
    let (mut max_diff, mut bound_ok) = (0.0f64, true);
    for k in 4..=12 {
        let d = dyadic_primes(k, 1).unwrap()[0];
        let o = xd(vec![d]);
        let e = equidist_error_51(0.5, &o, &quad).unwrap();
        max_diff = max_diff.max((e - midpoint_oracle(0.5, d as f64)).abs());
        let f = TestFunction::FourierRadialProfile { gamma: 0.5, dim: 1 };
        let rhs = cor3_rhs(&Context { f: &f, orbit: &o, quad, measured: Some(e) }, 0.5).unwrap();
        bound_ok &= rhs.satisfied;
    }
    let secs = t.elapsed().as_secs_f64();
    r.line(
        5,
        max_diff <= 1e-6 && bound_ok && secs < 300.0,
        "radial-profile error agrees with a 10^6-panel midpoint oracle and stays below its bound",
        format!("max difference {max_diff:.2e}, bound held: {bound_ok}, {secs:.2} s"),
    );
}

fn random_set(rng: &mut ChaCha8Rng, dim: usize, max: usize) -> Vec<Vec<f64>> {
    let n = rng.gen_range(1..=max);
    let grid = rng.gen_bool(0.5);
    (0..n)
        .map(|_| (0..dim).map(|_| if grid { rng.gen_range(0..32) as f64 / 32.0 } else { rng.gen::<f64>() }).collect())
        .collect()
}

fn discrepancy_exact(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut mismatches = 0;
    for (dim, sets, max) in [(1, 200, 64), (2, 50, 24)] {
        for _ in 0..sets {
            let pts = random_set(&mut rng, dim, max);
            if exact_discrepancy(&pts, 512).unwrap().value != brute_force_discrepancy(&pts).unwrap() {
                mismatches += 1;
            }
        }
    }
    let mut worst = 0.0f64;
    for d in 3..=50 {
        let pts: Vec<Vec<f64>> = (0..d).map(|k| vec![k as f64 / d as f64]).collect();
        worst = worst.max((exact_discrepancy(&pts, 512).unwrap().value - 1.0 / d as f64).abs());
    }
    r.line(
        6,
        mismatches == 0 && worst <= 1e-15,
        "exact discrepancy equals brute force; equispaced points give 1/d",
        format!("{mismatches} mismatches over 250 sets, max |Delta - 1/d| = {worst:.1e}"),
    );
}

/// (9(3/2)^N + 14N) h_D^{1/3} |log h_D|^{2(N−1)/3}, evaluated without the h_D ≤ 1/e precondition.
fn thm_a1_formula(hd: f64, dim: usize) -> f64 {
    let n = dim as f64;
    (9.0 * 1.5f64.powi(dim as i32) + 14.0 * n) * hd.cbrt() * hd.ln().abs().powf(2.0 * (n - 1.0) / 3.0)
}

fn discrepancy_bounds(r: &mut Report) {
    let mut lines = Vec::new();
    let mut ok = true;
    for d in [101, 211, 499, 1009] {
        let o = xd(vec![d]);
        let delta = exact_discrepancy(&orbit_points(&o), 512).unwrap().value;
        let a1 = thm_a1_bound(&o).unwrap();
        let (m, etk) = etk_paper_m(&o).unwrap();
        ok &= delta <= a1;
        lines.push(format!("d={d}: {delta:.4} <= {a1:.3} (ETK at M={m}: {etk:.3})"));
    }
    for k in [4, 5] {
        let o = xd(dyadic_primes(k, 2).unwrap());
        let delta = exact_discrepancy(&orbit_points(&o), 4096).unwrap().value;
        let hd = o.h_d().unwrap();
        let a1 = thm_a1_formula(hd, 2);
        ok &= delta <= a1;
        let note = if hd > (-1.0f64).exp() { ", h_D > 1/e so outside the theorem's range" } else { "" };
        lines.push(format!("k={k}: {delta:.4} <= {a1:.3}{note}"));
    }
    r.line(7, ok, "discrepancy below the Theorem A.1 bound", lines.join("; "));
}

fn orbit_invariants(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let poly = |c: &[i64]| IntPolynomial::from_i64(c).unwrap();
    let mut specs: Vec<OrbitSpec> = (0..50).map(|_| OrbitSpec::Single { poly: random_low_degree_irreducible(&mut rng, 10), root_index: 0 }).collect();
    for c in [&[2, 1, 1][..], &[-2, 0, 1], &[-3, 0, 0, 1], &[1, 1, 1, 1, 1]] {
        specs.push(OrbitSpec::Single { poly: poly(c), root_index: 0 });
    }
    specs.push(OrbitSpec::Single { poly: IntPolynomial::lehmer(), root_index: 0 });
    specs.push(OrbitSpec::Product { polys: vec![poly(&[-2, 0, 1]), poly(&[-3, 0, 0, 1])] });
    for d in [5, 13, 101] {
        specs.push(OrbitSpec::XdMinusD { primes: vec![d] });
    }
    specs.push(OrbitSpec::XdMinusD { primes: vec![17, 19] });
    let (mut vectors, mut bad) = (0, 0);
    for s in &specs {
        let o = GaloisOrbit::build(s).unwrap();
        for radius in 1..=4 {
            for n in l1_shell(o.dim(), radius) {
                vectors += 1;
                if o.size() as u64 % o.chi_degree(&n).unwrap() != 0 {
                    bad += 1;
                }
            }
        }
        if !o.orbit_log_sum().holds {
            bad += 1;
        }
        if o.is_single() && o.generalized_degree(NormP::L1).unwrap().d != o.degrees()[0] as f64 {
            bad += 1;
        }
    }
    r.line(8, bad == 0, "chi_degree divides |S|, log sum <= 2h, D = deg", format!("{} orbits, {vectors} lattice vectors, {bad} failures", specs.len()));
}

fn determinism(r: &mut Report) {
    let exe = env!("CARGO_BIN_EXE_torus-equidist");
    let run = |args: &[&str]| std::process::Command::new(exe).args(args).output().unwrap().stdout;
    let mut ok = true;
    let cases: [&[&str]; 3] = [
        &["verify"],
        &["sharpness51", "--gamma", "0.5", "--N", "1", "--kmin", "4", "--kmax", "10"],
        &["sharpness52", "--gamma", "0.5", "--N", "2", "--kmin", "4", "--kmax", "8"],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        ok &= !a.is_empty() && a == b;
    }
    r.line(9, ok, "verify and both sweeps are byte-identical across runs", format!("{} commands compared", cases.len()));
}

fn main() {
    let mut r = Report { failed: 0 };
    heights(&mut r);
    expsum_lemma(&mut r);
    domination(&mut r);
    sharpness52(&mut r);
    sharpness51(&mut r);
    discrepancy_exact(&mut r);
    discrepancy_bounds(&mut r);
    orbit_invariants(&mut r);
    determinism(&mut r);
    if r.failed > 0 {
        println!("{} criteria failed", r.failed);
        std::process::exit(1);
    }
}
