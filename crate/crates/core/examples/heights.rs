//! Mahler measures and Weil heights, checked against log d / d for x^d - d.

use torus_equidist::experiment::run_height_report;
use torus_equidist::poly::IntPolynomial;

fn main() -> torus_equidist::Result<()> {
    for d in [2usize, 3, 5, 7, 11, 13] {
        let p = IntPolynomial::binomial(d, d as i64);
        let h = p.weil_height()?;
        println!("x^{d}-{d}: h = {h:.15}  log d/d = {:.15}", (d as f64).ln() / d as f64);
    }
    println!("Lehmer: m(P) = {:.12}", IntPolynomial::lehmer().log_mahler_measure()?);

    let r = run_height_report(&"3: 1 -1 0 1".parse()?)?;
    println!("\n{}: h = {:.6}, D = {}, h_D = {:.6}", r.polynomial, r.h, r.d, r.h_d);
    for l in &r.lemma {
        println!("  n = {}: |exp_sum| = {:.6} <= {:.6}", l.n, l.exp_sum_abs, l.bound);
    }
    Ok(())
}
