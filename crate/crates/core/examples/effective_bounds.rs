//! Every applicable effective bound next to the measured error.

use torus_equidist::bounds::{all_reports, Context};
use torus_equidist::orbit::{GaloisOrbit, OrbitSpec};
use torus_equidist::poly::IntPolynomial;
use torus_equidist::testfn::TestFunction;

fn main() -> torus_equidist::Result<()> {
    let orbit = GaloisOrbit::build(&OrbitSpec::Single { poly: IntPolynomial::from_i64(&[-5, 1, 0, 1])?, root_index: 0 })?;
    for f in [TestFunction::GaussianCharacter { n0: vec![2] }, TestFunction::HolderRadial { gamma: 0.25 }] {
        println!("{}", f.name());
        for r in all_reports(&Context::new(&f, &orbit))? {
            println!("  {}: {:.6e} <= {:.6e} ({})", r.theorem, r.measured, r.rhs_total, r.satisfied);
        }
    }
    Ok(())
}
