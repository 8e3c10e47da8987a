//! Exact box discrepancy of orbits with the ETK and Theorem A.1 bounds.

use torus_equidist::discrepancy::{exact_discrepancy, orbit_discrepancy, DiscrepancyOptions, DEFAULT_CAP};
use torus_equidist::orbit::{GaloisOrbit, OrbitSpec};

fn main() -> torus_equidist::Result<()> {
    let grid: Vec<Vec<f64>> = (0..10).map(|k| vec![k as f64 / 10.0]).collect();
    println!("{{k/10}}: {}", exact_discrepancy(&grid, DEFAULT_CAP)?.value);

    for primes in [vec![101], vec![499], vec![17, 19]] {
        let o = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: primes.clone() })?;
        let r = orbit_discrepancy(&o, &DiscrepancyOptions::default())?;
        println!(
            "{primes:?}: Delta = {:.6}, ETK(M = {:?}) = {:?}, A.1 = {:?}",
            r.value, r.etk_m, r.etk_value, r.thm_a1_value
        );
    }
    Ok(())
}
