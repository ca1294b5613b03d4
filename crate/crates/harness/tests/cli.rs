use std::process::{Command, Output};

fn csflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csflab")).args(args).env_remove("CSFLAB_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csf_prints_the_elementary_expansion() {
    let o = csflab(&["csf", "--hessenberg", "0,0,1,1,3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(5)\tq^5 + 2q^4 + 2q^3 + 2q^2 + 2q + 1"), "{out}");
    assert!(out.contains("(3,2)\tq^3 + q^2"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn csf_specializes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let o = csflab(&["csf", "--hessenberg", "0,0,1", "--basis", "s", "--q-at", "1", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["basis"], "s");
}

#[test]
fn formula_agrees_with_csf() {
    let a = csflab(&["formula", "--path", "5"]);
    let b = csflab(&["csf", "--hessenberg", "0,0,1,2,3"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let k = csflab(&["formula", "--kchain", "2,2,2,2"]);
    assert_eq!(stdout(&k), stdout(&a));
}

#[test]
fn tableaux_listing_ends_with_a_summary() {
    let o = csflab(&["tableaux", "--hessenberg", "0,0,1,1,3,4,5", "--shape", "3,2,2", "--class", "powerful"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().last(), Some("# 3 tableaux, sum of q^inv = 2q^4 + q^3"));
    let k = csflab(&["tableaux", "--hessenberg", "0,0,1,1,2,4", "--shape", "4,2", "--class", "k-set"]);
    assert!(stdout(&k).contains("# 8 tableaux"), "{}", stdout(&k));
}

#[test]
fn hikita_values_print_per_tableau() {
    let o = csflab(&["hikita", "--hessenberg", "0,0,1,1,2,4", "--shape", "3,2,1", "--h"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1,2,3/4,5/6\t[1] / [1,4,7,7,4,1]"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(csflab(&["csf", "--hessenberg", "0,2"]).status.code(), Some(2));
    assert_eq!(csflab(&["verify", "--conjecture", "nope", "--max-n", "3"]).status.code(), Some(2));
    assert_eq!(csflab(&["verify", "--conjecture", "bounds", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(csflab(&["tableaux", "--hessenberg", "0,0", "--shape", "3", "--class", "strong"]).status.code(), Some(2));
}

#[test]
fn verify_exit_code_reflects_failures() {
    let ok = csflab(&["verify", "--conjecture", "bounds", "--max-n", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = csflab(&["verify", "--conjecture", "h-lower-bound", "--max-n", "6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains(r#""status":"fails""#));
}

#[test]
fn verify_output_is_independent_of_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let one = csflab(&["verify", "--conjecture", "overcount-q", "--max-n", "5", "--jobs", "1"]);
    let many = csflab(&["verify", "--conjecture", "overcount-q", "--max-n", "5", "--jobs", "3"]);
    assert_eq!(stdout(&one), stdout(&many));
    let cached = |extra: &[&str]| {
        let mut args = vec!["verify", "--conjecture", "overcount-q", "--max-n", "5"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_csflab")).args(&args).env("CSFLAB_CACHE", dir.path()).output().unwrap()
    };
    let cold = cached(&[]);
    let warm = cached(&["--jobs", "2"]);
    assert_eq!(stdout(&cold), stdout(&one));
    assert_eq!(stdout(&warm), stdout(&one));
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hits 384,"));
}
