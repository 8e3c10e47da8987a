use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use torus_equidist::bounds::{self, BoundConfig, BoundReport, Context, Theorem};
use torus_equidist::discrepancy::{DiscrepancyOptions, DEFAULT_CAP};
use torus_equidist::experiment::{self, Corpus, SharpnessConfig};
use torus_equidist::io::{emit, read_json, read_polynomial, CSV_VERSION};
use torus_equidist::orbit::{GaloisOrbit, NormP, OrbitSpec};
use torus_equidist::testfn::{measure_error, QuadratureConfig, TestFunction};
use torus_equidist::{Error, Result};

#[derive(Parser)]
#[command(name = "torus-equidist", version, about = "Equidistribution of Galois orbits on the torus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct Out {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Sweep {
    #[arg(long)]
    gamma: f64,
    #[arg(long = "N", default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 4)]
    kmin: u32,
    #[arg(long)]
    kmax: u32,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mahler measure, height, roots and the exponential-sum bound of a polynomial file.
    Height { polyfile: PathBuf },
    /// Summary of an orbit given by a JSON spec; `--csv` lists every tuple.
    Orbit {
        specfile: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// The generalized degree D and h_D.
    Dgen {
        specfile: PathBuf,
        #[arg(long, default_value = "1", value_parser = parse_norm)]
        p: NormP,
    },
    /// Right-hand side of one theorem (or `all`) against the measured error.
    Bound {
        thm: String,
        fnfile: PathBuf,
        specfile: PathBuf,
        /// Envelope and quadrature choices as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Radial-profile sweep over dyadic prime windows.
    Sharpness51(Sweep),
    /// |s|^γ sweep over dyadic prime windows.
    Sharpness52(Sweep),
    /// Exact discrepancy with the ETK and Theorem A.1 bounds, for one spec or an array of specs.
    Discrepancy {
        specfile: PathBuf,
        #[arg(long = "M", conflicts_with = "paper_m")]
        m: Option<u64>,
        #[arg(long = "paper-M")]
        paper_m: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Runs the invariant corpus (built-in when no file is given).
    Verify {
        corpus: Option<PathBuf>,
        /// Shrinks every theorem bound to check that failures are reported.
        #[arg(long)]
        inject_bad_bound: bool,
    },
}

fn parse_norm(s: &str) -> std::result::Result<NormP, String> {
    match s {
        "1" => Ok(NormP::L1),
        "2" => Ok(NormP::L2),
        "inf" => Ok(NormP::Inf),
        _ => Err(format!("expected 1, 2 or inf, got `{s}`")),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    Many(Vec<OrbitSpec>),
    One(OrbitSpec),
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn load_orbit(path: &Path) -> Result<GaloisOrbit> {
    GaloisOrbit::build(&read_json::<OrbitSpec>(path)?)
}

fn sweep_config(s: &Sweep) -> SharpnessConfig {
    let mut quad = QuadratureConfig::default();
    if let Some(t) = s.tol {
        quad.abs_tol = t;
    }
    SharpnessConfig { gamma: s.gamma, dim: s.dim, kmin: s.kmin, kmax: s.kmax, quad }
}

/// Ok(true) when every checked invariant held.
fn run(cmd: &Cmd, out: Option<&Path>) -> Result<bool> {
    match cmd {
        Cmd::Height { polyfile } => {
            let r = experiment::run_height_report(&read_polynomial(polyfile)?)?;
            emit(out, &json(&r)?)?;
            Ok(r.lemma.iter().all(|l| l.holds))
        }
        Cmd::Orbit { specfile, csv } => {
            let o = load_orbit(specfile)?;
            let text = if *csv { experiment::orbit_csv(&o) } else { json(&experiment::orbit_summary(&o, NormP::L1)?)? };
            emit(out, &text)?;
            Ok(true)
        }
        Cmd::Dgen { specfile, p } => {
            let o = load_orbit(specfile)?;
            emit(out, &json(&o.generalized_degree(*p)?)?)?;
            Ok(true)
        }
        Cmd::Bound { thm, fnfile, specfile, config, json: as_json } => {
            let f: TestFunction = read_json(fnfile)?;
            f.validate()?;
            let orbit = load_orbit(specfile)?;
            let cfg: BoundConfig = match config {
                Some(p) => read_json(p)?,
                None => BoundConfig::default(),
            };
            let quad = cfg.quad.unwrap_or_default();
            let measured = measure_error(&f, &orbit, &quad)?;
            let ctx = Context { f: &f, orbit: &orbit, quad, measured: Some(measured) };
            let theorems: Vec<Theorem> = if thm.eq_ignore_ascii_case("all") {
                Theorem::ALL.into_iter().filter(|t| t.applies_to(&f)).collect()
            } else {
                vec![thm.parse()?]
            };
            let reports = theorems.iter().map(|&t| bounds::evaluate(&ctx, t, &cfg)).collect::<Result<Vec<_>>>()?;
            let text = if *as_json {
                json(&reports)?
            } else {
                let mut s = format!("{CSV_VERSION}\n{}\n", BoundReport::csv_header());
                for r in &reports {
                    s.push_str(&r.csv_row());
                    s.push('\n');
                }
                s
            };
            emit(out, &text)?;
            Ok(reports.iter().all(|r| r.satisfied))
        }
        Cmd::Sharpness51(s) => {
            let cfg = sweep_config(s);
            let rows = experiment::run_sharpness_51(&cfg)?;
            emit(out, &experiment::sweep_csv("sharpness51", &cfg, &rows))?;
            Ok(rows.iter().all(|r| r.all_rhs_hold))
        }
        Cmd::Sharpness52(s) => {
            let cfg = sweep_config(s);
            let rows = experiment::run_sharpness_52(&cfg)?;
            emit(out, &experiment::sweep_csv("sharpness52", &cfg, &rows))?;
            Ok(rows.iter().all(|r| r.all_rhs_hold))
        }
        Cmd::Discrepancy { specfile, m, paper_m, cap, json: as_json } => {
            let specs = match read_json::<OneOrMany>(specfile)? {
                OneOrMany::Many(v) => v,
                OneOrMany::One(s) => vec![s],
            };
            if specs.is_empty() {
                return Err(Error::InvalidConfig("no orbit specifications given".into()));
            }
            let opts = DiscrepancyOptions { cap: *cap, m: if *paper_m { None } else { *m }, ..Default::default() };
            let mut rows = Vec::new();
            for s in &specs {
                let o = GaloisOrbit::build(s)?;
                let mut row = experiment::run_discrepancy(&experiment::spec_label(s), &o, &opts)?;
                if m.is_none() && !*paper_m {
                    row.result.etk_m = None;
                    row.result.etk_value = None;
                }
                rows.push(row);
            }
            let text = if *as_json { json(&rows)? } else { experiment::discrepancy_csv(&rows) };
            emit(out, &text)?;
            let holds = |b: Option<f64>, v: f64| b.map_or(true, |b| v <= b + 1e-9);
            Ok(rows.iter().all(|r| holds(r.result.etk_value, r.result.value) && holds(r.result.thm_a1_value, r.result.value)))
        }
        Cmd::Verify { corpus, inject_bad_bound } => {
            let c: Corpus = match corpus {
                Some(p) => read_json(p)?,
                None => Corpus::default(),
            };
            let r = experiment::run_verify(&c, *inject_bad_bound)?;
            emit(out, &json(&r)?)?;
            for ch in r.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: {}", ch.name, ch.first_failure.as_deref().unwrap_or(""));
            }
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd, cli.out.out.as_deref()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
