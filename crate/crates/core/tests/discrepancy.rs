use proptest::prelude::*;
use torus_equidist::discrepancy::{
    brute_force_discrepancy, etk_bound, exact_discrepancy, orbit_discrepancy, paper_m, thm_a1_value, DiscrepancyOptions,
    DEFAULT_CAP, Endpoints,
};
use torus_equidist::orbit::{GaloisOrbit, OrbitSpec};
use torus_equidist::Error;

fn xd(primes: &[u64]) -> GaloisOrbit {
    GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: primes.to_vec() }).unwrap()
}

#[test]
fn equispaced_points() {
    for d in 3..=50usize {
        let pts: Vec<Vec<f64>> = (0..d).map(|k| vec![k as f64 / d as f64]).collect();
        let r = exact_discrepancy(&pts, DEFAULT_CAP).unwrap();
        assert!((r.value - 1.0 / d as f64).abs() < 1e-15, "d = {d}");
    }
}

#[test]
fn single_point() {
    let r = exact_discrepancy(&[vec![0.3]], DEFAULT_CAP).unwrap();
    assert_eq!(r.value, 1.0);
    assert_eq!(r.witness.endpoints, Endpoints::Closed);
}

#[test]
fn square_grid() {
    // The closed box through one row and one column of nodes holds 2D − 1 points with zero area.
    for d in [2usize, 3, 4, 5] {
        let pts: Vec<Vec<f64>> =
            (0..d * d).map(|k| vec![(k / d) as f64 / d as f64, (k % d) as f64 / d as f64]).collect();
        let r = exact_discrepancy(&pts, DEFAULT_CAP).unwrap();
        let want = (2 * d - 1) as f64 / (d * d) as f64;
        assert!((r.value - want).abs() < 1e-15, "d = {d}: {}", r.value);
        assert_eq!(r.value, brute_force_discrepancy(&pts).unwrap());
    }
}

#[test]
fn etk_values() {
    assert!((etk_bound(&xd(&[101]), 0).unwrap() - 3.0).abs() < 1e-15);
    assert!((etk_bound(&xd(&[5]), 4).unwrap() - 0.6).abs() < 1e-15);
    let point = GaloisOrbit::build(&OrbitSpec::Single { poly: "1: -1 1".parse().unwrap(), root_index: 0 }).unwrap();
    assert!((etk_bound(&point, 1).unwrap() - 4.5).abs() < 1e-15);
}

#[test]
fn truncation_and_theorem_values() {
    assert_eq!(paper_m((-3.0f64).exp(), 1).unwrap(), 0);
    assert_eq!(paper_m((-1.0f64).exp(), 1).unwrap(), 0);
    let hd = 101f64.ln() / 101.0 + 202f64.ln() / 303.0;
    assert!((hd - 0.063_213_297_847_937).abs() < 1e-15);
    assert_eq!(paper_m(hd, 1).unwrap(), ((-1.5f64).exp() * hd.powf(-1.0 / 3.0)).floor() as u64);
    assert!(matches!(paper_m(0.5, 1), Err(Error::PreconditionHeight(_))));

    let a1 = thm_a1_value(hd, 1).unwrap();
    assert!((a1 - 27.5 * hd.cbrt()).abs() < 1e-13);
    assert!((a1 - 10.95).abs() < 1e-2);
    let e = (-1.0f64).exp();
    assert!((thm_a1_value(e, 2).unwrap() - 48.25 * (-1.0f64 / 3.0).exp()).abs() < 1e-12);

    let r = orbit_discrepancy(&xd(&[101]), &DiscrepancyOptions::default()).unwrap();
    assert!((r.value - 1.0 / 101.0).abs() < 1e-15);
    assert!(r.value <= r.thm_a1_value.unwrap());
}

#[test]
fn cap_is_enforced() {
    let pts: Vec<Vec<f64>> = (0..600).map(|k| vec![k as f64 / 600.0, 0.5]).collect();
    assert!(matches!(exact_discrepancy(&pts, DEFAULT_CAP), Err(Error::CapExceeded { .. })));
}

fn grid_points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec((0u32..48).prop_map(|v| v as f64 / 48.0), dim), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_dimensional_matches_brute_force(pts in grid_points(1, 40)) {
        prop_assert_eq!(exact_discrepancy(&pts, DEFAULT_CAP).unwrap().value, brute_force_discrepancy(&pts).unwrap());
    }

    #[test]
    fn two_dimensional_matches_brute_force(pts in grid_points(2, 12)) {
        prop_assert_eq!(exact_discrepancy(&pts, DEFAULT_CAP).unwrap().value, brute_force_discrepancy(&pts).unwrap());
    }

    #[test]
    fn rotation_invariant(pts in grid_points(2, 16), sx in 0u32..48, sy in 0u32..48) {
        let shifted: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| vec![(p[0] + sx as f64 / 48.0).fract(), (p[1] + sy as f64 / 48.0).fract()])
            .collect();
        let a = exact_discrepancy(&pts, DEFAULT_CAP).unwrap().value;
        let b = exact_discrepancy(&shifted, DEFAULT_CAP).unwrap().value;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn value_lies_in_unit_interval(pts in grid_points(2, 20)) {
        let r = exact_discrepancy(&pts, DEFAULT_CAP).unwrap();
        prop_assert!(r.value > 0.0 && r.value <= 1.0);
        prop_assert!(r.value_half_open <= r.value + 1e-15);
    }
}
