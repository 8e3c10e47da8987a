//! The equidistribution error of several test functions on one orbit.

use torus_equidist::orbit::{GaloisOrbit, OrbitSpec};
use torus_equidist::testfn::{measure_error, QuadratureConfig, TestFunction};

fn main() -> torus_equidist::Result<()> {
    let quad = QuadratureConfig::default();
    let orbit = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: vec![101] })?;
    let functions = [
        TestFunction::GaussianCharacter { n0: vec![1] },
        TestFunction::HolderRadial { gamma: 0.5 },
        TestFunction::Character { n: vec![101], t: vec![0.5] },
        TestFunction::FourierRadialProfile { gamma: 0.5, dim: 1 },
    ];
    for f in &functions {
        println!("{:<24} E = {:.12e}", f.name(), measure_error(f, &orbit, &quad)?);
    }
    Ok(())
}
