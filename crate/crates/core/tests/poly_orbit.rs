use num_complex::Complex64;
use proptest::prelude::*;
use torus_equidist::orbit::{GaloisOrbit, NormP, OrbitSpec};
use torus_equidist::poly::{IntPolynomial, RootConfig};
use torus_equidist::Error;

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c).unwrap()
}

fn single(c: &[i64]) -> GaloisOrbit {
    GaloisOrbit::build(&OrbitSpec::Single { poly: p(c), root_index: 0 }).unwrap()
}

#[test]
fn evaluation_at_small_points() {
    assert_eq!(p(&[-2, 0, 1]).evaluate(Complex64::new(0.0, 0.0)), Complex64::new(-2.0, 0.0));
    assert_eq!(p(&[2, 1, 1]).evaluate(Complex64::new(1.0, 0.0)), Complex64::new(4.0, 0.0));
    let r = 5f64.powf(0.2);
    assert!(p(&[-5, 0, 0, 0, 0, 1]).evaluate(Complex64::new(r, 0.0)).norm() < 1e-13);
}

#[test]
fn roots_of_quadratics() {
    let roots = p(&[2, 1, 1]).find_roots(&RootConfig::default()).unwrap();
    for z in roots.roots() {
        assert!((z.norm() - 2f64.sqrt()).abs() < 1e-14);
        assert!((z.re + 0.5).abs() < 1e-14);
        assert!((z.im.abs() - 7f64.sqrt() / 2.0).abs() < 1e-14);
    }
}

#[test]
fn mahler_measures() {
    assert!((p(&[-2, 1]).log_mahler_measure().unwrap() - 2f64.ln()).abs() < 1e-15);
    for d in [3usize, 7, 31] {
        let m = IntPolynomial::binomial(d, d as i64).log_mahler_measure().unwrap();
        assert!((m - (d as f64).ln()).abs() < 1e-12);
    }
    // Lehmer's number 1.17628081825991750654...
    let lehmer = IntPolynomial::lehmer().log_mahler_measure().unwrap();
    assert!((lehmer - 1.176_280_818_259_917_5f64.ln()).abs() < 1e-13);
}

#[test]
fn squarefree_detection() {
    assert!(p(&[-2, 0, 1]).is_squarefree());
    assert!(!p(&[1, -2, 1]).is_squarefree());
    assert!(p(&[-5, 0, 0, 0, 0, 1]).is_squarefree());
}

#[test]
fn polynomial_parse_errors() {
    assert!(matches!("2: 1 x 1".parse::<IntPolynomial>(), Err(Error::Parse(_))));
    assert!("3: -3 0 0 1".parse::<IntPolynomial>().is_ok());
}

#[test]
fn orbit_shapes() {
    let o = single(&[-2, 0, 1]);
    assert_eq!(o.size(), 2);
    assert!((o.height() - 2f64.ln() / 2.0).abs() < 1e-15);

    let prod = GaloisOrbit::build(&OrbitSpec::Product { polys: vec![p(&[-2, 0, 1]), p(&[-3, 0, 0, 1])] }).unwrap();
    assert_eq!(prod.size(), 6);
    assert_eq!(prod.chi_degree(&[1, 1]).unwrap(), 6);
    let d = prod.generalized_degree(NormP::L1).unwrap();
    assert_eq!((d.d, d.witness_n), (2.0, vec![1, 0]));

    let cf = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: vec![5] }).unwrap();
    for k in 0..5 {
        assert!((cf.theta(k)[0] - k as f64 / 5.0).abs() < 1e-15);
        assert!((cf.s(k)[0] - 5f64.ln() / 5.0).abs() < 1e-15);
    }
    let d = cf.generalized_degree(NormP::L1).unwrap();
    assert_eq!(d.d, 5.0);
    assert!((d.h_d - (5f64.ln() / 5.0 + 10f64.ln() / 15.0)).abs() < 1e-15);
}

#[test]
fn exponential_sums() {
    let o = single(&[2, 1, 1]);
    let z = o.exp_sum(&[1]).unwrap();
    assert!((z.re + 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-14 && z.im.abs() < 1e-14);
    assert_eq!(o.exp_sum(&[0]).unwrap(), Complex64::new(1.0, 0.0));
    let bound = o.expsum_bound(1).unwrap();
    assert!((bound - 2.0 * 6f64.sqrt() * (2f64.ln() / 2.0 + 4f64.ln() / 6.0).sqrt()).abs() < 1e-14);
    assert!((o.expsum_bound(4).unwrap() / bound - 2.0).abs() < 1e-15);
    let five = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: vec![5] }).unwrap();
    assert!(five.exp_sum(&[1]).unwrap().norm() < 1e-15);

    let unit = single(&[-1, 1]);
    assert!((unit.exp_sum(&[1]).unwrap().re - 1.0).abs() < 1e-15);
    assert!((unit.expsum_bound(1).unwrap() - 2.0 * 6f64.sqrt() * (2f64.ln() / 3.0).sqrt()).abs() < 1e-14);
}

#[test]
fn character_degree_and_defect() {
    let o = single(&[-2, 0, 1]);
    assert_eq!(o.chi_degree(&[2]).unwrap(), 1);
    assert_eq!(o.chi_degree(&[1]).unwrap(), 2);
    let c = o.char_defect(&[0], &[1.0]).unwrap();
    let s = 2f64.ln() / 2.0;
    assert!((c.value - 2.0 * (std::f64::consts::PI * s).sin().abs()).abs() < 1e-14);
    assert!(c.holds && c.bound <= 2.0);
    assert_eq!(o.char_defect(&[1], &[0.0]).unwrap().value, 0.0);
}

#[test]
fn log_sums_and_fractions() {
    let q = single(&[2, 1, 1]);
    let ls = q.orbit_log_sum();
    assert!((ls.value - 2f64.ln() / 2.0).abs() < 1e-14 && ls.holds);
    assert!(single(&[1, 1, 1]).orbit_log_sum().value.abs() < 1e-14);
    assert_eq!(single(&[-2, 0, 1]).gamma_delta_fraction(1.0).unwrap().value, 0.0);
    let g = single(&[-2, 1]).gamma_delta_fraction(0.5).unwrap();
    assert_eq!(g.value, 1.0);
    assert!(g.holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_invariants_hold(c in prop::collection::vec(-20i64..=20, 3..=6)) {
        let mut c = c;
        if c[0] == 0 { c[0] = 1; }
        let last = c.len() - 1;
        if c[last] == 0 { c[last] = 1; }
        let poly = p(&c);
        prop_assume!(poly.is_squarefree());
        let o = GaloisOrbit::build(&OrbitSpec::Single { poly: poly.clone(), root_index: 0 }).unwrap();
        prop_assert_eq!(o.size(), poly.degree());
        prop_assert!(o.orbit_log_sum().holds);
        let h = poly.weil_height().unwrap();
        prop_assert!(h >= -1e-15);
        let rev = poly.reversed().unwrap().weil_height().unwrap();
        prop_assert!((h - rev).abs() < 1e-9);
        for n in 1..=5 {
            prop_assert!(o.exp_sum(&[n]).unwrap().norm() <= o.expsum_bound(n).unwrap());
        }
        for n in 1..=4i64 {
            let k = o.chi_degree(&[n]).unwrap();
            prop_assert_eq!(o.size() as u64 % k, 0);
        }
    }
}
