//! Runs both sharpness sweeps at small scale and prints their CSV.

use torus_equidist::experiment::{run_sharpness_51, run_sharpness_52, sweep_csv, SharpnessConfig};
use torus_equidist::testfn::QuadratureConfig;

fn main() -> torus_equidist::Result<()> {
    let cfg = SharpnessConfig { gamma: 0.5, dim: 1, kmin: 4, kmax: 10, quad: QuadratureConfig::default() };
    print!("{}", sweep_csv("sharpness51", &cfg, &run_sharpness_51(&cfg)?));
    print!("{}", sweep_csv("sharpness52", &cfg, &run_sharpness_52(&cfg)?));
    Ok(())
}
