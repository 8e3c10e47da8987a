//! Galois orbits, character degrees and the generalized degree D.

use torus_equidist::orbit::{GaloisOrbit, NormP, OrbitSpec};
use torus_equidist::poly::IntPolynomial;

fn main() -> torus_equidist::Result<()> {
    let specs = [
        OrbitSpec::Single { poly: IntPolynomial::cyclotomic(7), root_index: 0 },
        OrbitSpec::Product { polys: vec![IntPolynomial::from_i64(&[-2, 0, 1])?, IntPolynomial::from_i64(&[-3, 0, 0, 1])?] },
        OrbitSpec::XdMinusD { primes: vec![17, 19] },
    ];
    for spec in &specs {
        let o = GaloisOrbit::build(spec)?;
        println!("N = {}, |S| = {}, degrees {:?}, h = {:.6}", o.dim(), o.size(), o.degrees(), o.height());
        for p in [NormP::L1, NormP::L2, NormP::Inf] {
            let d = o.generalized_degree(p)?;
            println!("  p = {}: D = {:.4} at n = {:?}, h_D = {:.6}", p.label(), d.d, d.witness_n, d.h_d);
        }
        let n: Vec<i64> = (0..o.dim()).map(|j| j as i64 + 1).collect();
        println!("  deg chi^{n:?} = {}, |exp_sum| = {:.3e}", o.chi_degree(&n)?, o.exp_sum(&n)?.norm());
        let ls = o.orbit_log_sum();
        println!("  mean ||s||_1 = {:.6} <= 2h = {:.6}", ls.value, ls.bound);
    }
    Ok(())
}
