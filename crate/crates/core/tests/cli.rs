use std::path::PathBuf;
use std::process::{Command, Output};

fn jetpairs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetpairs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jetpairs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table_reports_first_reducible_size() {
    let o = jetpairs(&["red", "table", "--k", "1", "--n-max", "60"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("first reducible n = 29"));
    assert!(out.contains("mu=8 beta=8 N=29"));
    assert!(out.contains("n=28 no witness"));
}

#[test]
fn thm24_sweep_passes() {
    let o = jetpairs(&["verify", "thm24", "--n", "3", "--k", "2", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn remark_demo_is_expected_infeasible() {
    let o = jetpairs(&["lift", "--demo", "remark28"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expected infeasible"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--records", "--seed", "7", "irr3", "certify", "--samples", "12"];
    let a = jetpairs(&args);
    let b = jetpairs(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("record irr3")).count(), 12);
}

#[test]
fn sample_then_certify_through_files() {
    let pair = tmp("w.txt");
    let cert = tmp("w.cert");
    let o = jetpairs(&["red", "sample", "--a", "1", "--b", "0", "--k", "2", "--out", pair.to_str().unwrap()]);
    assert!(o.status.success());
    let o = jetpairs(&["irr3", "certify", "--input", pair.to_str().unwrap(), "--out", cert.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("closure-certificate 3 2 32003"));
    let o = jetpairs(&["algdim", "--input", pair.to_str().unwrap()]);
    assert!(stdout(&o).contains("dim F[A,B,t]=9"));
    let o = jetpairs(&["jetideal", "tangent", "--input", pair.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn lift_from_file() {
    let pair = tmp("lift.txt");
    std::fs::write(&pair, "matpoly 2 0 101\n0 1\n0 0\nmatpoly 2 0 101\n3 2\n0 3\n").unwrap();
    let o = jetpairs(&["--field", "101", "lift", "--input", pair.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("matpoly 2 1 101"));
}

#[test]
fn exit_codes() {
    assert_eq!(jetpairs(&["commutant", "--input", "/definitely/missing"]).status.code(), Some(3));
    let bad = tmp("bad.txt");
    std::fs::write(&bad, "matpoly 2 0 101\n1 2\n").unwrap();
    assert_eq!(jetpairs(&["--field", "101", "commutant", "--input", bad.to_str().unwrap()]).status.code(), Some(3));
    let nc = tmp("nc.txt");
    std::fs::write(&nc, "matpoly 2 0 101\n0 1\n0 0\nmatpoly 2 0 101\n0 0\n1 0\n").unwrap();
    assert_eq!(jetpairs(&["--field", "101", "lift", "--input", nc.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(jetpairs(&["red", "bounds", "--a", "0", "--b", "2", "--k", "1"]).status.code(), Some(4));
    assert_eq!(jetpairs(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn export_flavors() {
    let m2 = stdout(&jetpairs(&["jetideal", "export", "--n", "2", "--k", "1", "--format", "m2"]));
    assert!(m2.contains("ZZ/32003[") && m2.contains("ideal("));
    let sing = stdout(&jetpairs(&["--field", "Q", "jetideal", "export", "--format", "singular"]));
    assert!(sing.contains("ring R = 0,"));
}
