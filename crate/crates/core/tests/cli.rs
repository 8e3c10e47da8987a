use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-equidist")).args(args).current_dir(dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn height_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.txt"), "# sqrt 2\n2: -2 0 1\n").unwrap();
    let o = bin(&["height", "p.txt"], dir.path());
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["h"].as_f64().unwrap() - 0.346_573_590_279_972_6).abs() < 1e-14);
    assert!((v["h_D"].as_f64().unwrap() - 0.577_622_650_466_621).abs() < 1e-12);
    assert_eq!(v["lemma"].as_array().unwrap().len(), 5);

    fs::write(dir.path().join("one.txt"), "1: -1 1").unwrap();
    let v: serde_json::Value = serde_json::from_slice(&bin(&["height", "one.txt"], dir.path()).stdout).unwrap();
    assert_eq!(v["h"].as_f64().unwrap(), 0.0);
    assert_eq!(v["lemma"][0]["exp_sum_abs"].as_f64().unwrap(), 1.0);
    let b = 2.0 * 6f64.sqrt() * (2f64.ln() / 3.0).sqrt();
    assert!((v["lemma"][0]["bound"].as_f64().unwrap() - b).abs() < 1e-14);

    fs::write(dir.path().join("bad.txt"), "x^2 - 2").unwrap();
    assert_eq!(code(&bin(&["height", "bad.txt"], dir.path())), 2);
    assert_eq!(code(&bin(&["height", "missing.txt"], dir.path())), 2);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&bin(&["nonsense"], dir.path())), 2);
    assert_eq!(code(&bin(&["sharpness52", "--gamma", "0.9", "--kmax", "5"], dir.path())), 2);
    fs::write(dir.path().join("empty.json"), "").unwrap();
    assert_eq!(code(&bin(&["verify", "empty.json"], dir.path())), 2);
    fs::write(dir.path().join("nothing.json"), r#"{"random_polynomials":0,"random_orbits":0,"orbits":[],"test_functions":[],"height_primes":[],"discrepancy_sets":0}"#).unwrap();
    assert_eq!(code(&bin(&["verify", "nothing.json"], dir.path())), 2);
}

#[test]
fn orbit_degree_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("o.json"), r#"{"mode":"product","polys":["2: -2 0 1","3: -3 0 0 1"]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&bin(&["orbit", "o.json"], p).stdout).unwrap();
    assert_eq!(v["size"], 6);
    let v: serde_json::Value = serde_json::from_slice(&bin(&["dgen", "o.json", "--p", "inf"], p).stdout).unwrap();
    assert_eq!(v["D"], 2.0);

    fs::write(p.join("f.json"), r#"{"variant":"gaussian_character","n0":[1,0]}"#).unwrap();
    let o = bin(&["bound", "all", "f.json", "o.json", "--out", "b.csv"], p);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(p.join("b.csv")).unwrap();
    assert!(csv.starts_with("# torus-equidist v1\n"));
    assert_eq!(csv.lines().count(), 8);
    assert!(csv.lines().skip(2).all(|l| l.ends_with(",true")));

    fs::write(p.join("cfg.json"), r#"{"W":{"kind":"log"}}"#).unwrap();
    assert_eq!(code(&bin(&["bound", "thm4", "f.json", "o.json", "--config", "cfg.json"], p)), 0);
    assert_eq!(code(&bin(&["bound", "thm9", "f.json", "o.json"], p)), 2);
}

#[test]
fn discrepancy_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("s.json"), r#"[{"mode":"xd_minus_d","primes":[101]},{"mode":"xd_minus_d","primes":[17,19]}]"#).unwrap();
    let o = bin(&["discrepancy", "s.json", "--paper-M"], p);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("9.90099009901e-3"));
    let o = bin(&["discrepancy", "s.json", "--M", "3", "--json"], p);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[1]["result"]["etk_m"], 3);
}

#[test]
fn verify_and_sweeps_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for args in [
        vec!["verify"],
        vec!["sharpness52", "--gamma", "0.5", "--kmin", "4", "--kmax", "12"],
        vec!["sharpness51", "--gamma", "0.5", "--kmin", "4", "--kmax", "8"],
    ] {
        let mut a = args.clone();
        a.extend(["--out", "a.out"]);
        let mut b = args.clone();
        b.extend(["--out", "b.out"]);
        assert_eq!(code(&bin(&a, p)), 0, "{args:?}");
        assert_eq!(code(&bin(&b, p)), 0);
        assert_eq!(fs::read(p.join("a.out")).unwrap(), fs::read(p.join("b.out")).unwrap(), "{args:?}");
    }
    let o = bin(&["verify", "--inject-bad-bound"], p);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("theorem_domination"));
}
