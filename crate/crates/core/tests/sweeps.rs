use torus_equidist::experiment::{run_sharpness_51, run_sharpness_52, sweep_csv, SharpnessConfig};
use torus_equidist::orbit::{GaloisOrbit, OrbitSpec};
use torus_equidist::testfn::QuadratureConfig;
use torus_equidist::Error;

fn cfg(gamma: f64, dim: usize, kmin: u32, kmax: u32) -> SharpnessConfig {
    SharpnessConfig { gamma, dim, kmin, kmax, quad: QuadratureConfig::default() }
}

#[test]
fn profile_sweep_rows() {
    let rows = run_sharpness_51(&cfg(0.5, 1, 4, 14)).unwrap();
    assert_eq!(rows[0].primes, vec![17]);
    assert!((rows[0].h - 17f64.ln() / 17.0).abs() < 1e-15);
    assert!(rows.iter().all(|r| r.measured > 0.0 && r.all_rhs_hold));
    // decreasing as a trend: every row is below the row three steps earlier
    let e: Vec<f64> = rows.iter().map(|r| r.measured).collect();
    assert!(e.last().unwrap() < &e[0]);
    for w in e.windows(4) {
        assert!(w[3] < w[0]);
    }
}

#[test]
fn two_dimensional_window() {
    let rows = run_sharpness_51(&cfg(0.5, 2, 4, 4)).unwrap();
    assert_eq!(rows[0].primes, vec![17, 19]);
    let o = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: rows[0].primes.clone() }).unwrap();
    assert_eq!(o.size(), 323);
    assert!(rows[0].all_rhs_hold);
}

#[test]
fn holder_sweep_ratio_limit() {
    // h/h_D = 3 log d / (3 log d + log 2d) for x^d − d, so the ratio tends to (3/4)^γ.
    for gamma in [0.25, 0.5] {
        let rows = run_sharpness_52(&cfg(gamma, 1, 4, 20)).unwrap();
        for r in &rows {
            let d = r.primes[0] as f64;
            let want = (3.0 * d.ln() / (4.0 * d.ln() + 2f64.ln())).powf(gamma);
            assert!((r.ratio_hd - want).abs() < 1e-12, "k = {}", r.k);
            assert!(r.all_rhs_hold);
            assert!((r.closed_form.unwrap() - r.measured).abs() < 1e-15);
        }
        let last = rows.last().unwrap().ratio_hd;
        assert!((last - 0.75f64.powf(gamma)).abs() < 0.03);
    }
}

#[test]
fn d5_closed_form() {
    let o = GaloisOrbit::build(&OrbitSpec::XdMinusD { primes: vec![5] }).unwrap();
    let e = torus_equidist::testfn::TestFunction::HolderRadial { gamma: 0.5 }.equidist_error(&o).unwrap();
    assert!((e - 0.567351).abs() < 1e-6);
}

#[test]
fn size_and_range_are_validated() {
    assert!(matches!(run_sharpness_52(&cfg(0.5, 2, 4, 10)), Err(Error::InvalidConfig(_))));
    assert!(matches!(run_sharpness_52(&cfg(0.6, 1, 4, 5)), Err(Error::InvalidConfig(_))));
    assert!(matches!(run_sharpness_51(&cfg(0.5, 3, 4, 5)), Err(Error::InvalidConfig(_))));
    assert!(matches!(run_sharpness_51(&cfg(0.5, 1, 6, 5)), Err(Error::InvalidConfig(_))));
}

#[test]
fn csv_layout() {
    let c = cfg(0.5, 1, 4, 5);
    let csv = sweep_csv("sharpness52", &c, &run_sharpness_52(&c).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# torus-equidist v1");
    assert!(lines[2].starts_with("k,primes,h,D,h_D,measured,closed_form,rhs_cor6,rhs_thm5,rhs_thm7,"));
    assert_eq!(lines.len(), 5);
    assert!(lines[3].starts_with("4,17,1.66659608474e-1,"));
}
