use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_shadowforge"));
    c.env_remove("SHADOWFORGE_PREC");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("shadowforge-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn bounds_line() {
    let o = run(&["bounds", "--rank", "22"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim1_min=66 shadow_count=45056\n");
    let o = run(&["bounds", "--rank", "23.5"]);
    assert_eq!(stdout(&o), "dim1_min=0 shadow_count=96256\n");
}

#[test]
fn verify_table_passes() {
    let o = run(&["verify-table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 20);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    let o = run(&["--json", "verify-table"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[4]["c"], serde_json::json!([31, 2]));
    assert_eq!(rows[4]["lie_sum"], 248);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn shadow_of_rank_sixteen() {
    let o = run(&["shadow", "--rank", "16", "--dim1", "240"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("h=1 dim=512"));
    let o = run(&["--json", "shadow", "--rank", "16", "--A", "(-1,2,0)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"], serde_json::json!([1, 1]));
    assert_eq!(v["dim_at_h"], serde_json::json!([512, 1]));
}

#[test]
fn named_series() {
    let o = run(&["qexp", "chi8", "--prec", "2"]);
    assert_eq!(stdout(&o), "1*q^(-1/3) + 248*q^(2/3) + 4124*q^(5/3) + O(q^(2))\n");
    let o = bin().args(["qexp", "eta"]).env("SHADOWFORGE_PREC", "2").output().unwrap();
    assert_eq!(stdout(&o), "1*q^(1/24) - 1*q^(25/24) + O(q^(2))\n");
    let o = bin().args(["qexp", "eta"]).env("SHADOWFORGE_PREC", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["qexp", "zeta"]).status.code(), Some(2));
}

#[test]
fn characters() {
    let o = run(&["char", "--rank", "1/2", "--A", "(1)", "--prec", "2"]);
    assert_eq!(stdout(&o), "1*q^(-1/48) + 1*q^(23/48) + 1*q^(71/48) + O(q^(95/48))\n");
    let o = run(&["char", "--rank", "8", "--A", "(0,1)", "--voa", "--prec", "1"]);
    assert_eq!(o.status.code(), Some(0));
    // three-term formula cannot leave the bound below rank 16
    let o = run(&["char", "--rank", "12", "--dim1", "275"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("formula out of range"));
}

#[test]
fn lattice_commands() {
    let o = run(&["corollary", "--lattice", "d12plus"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("norm2=264"));
    assert!(out.contains("char_min=4 char_count=24"));
    let o = run(&["--json", "corollary", "--lattice", "e8"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"norm1": 0, "norm2": 240, "char_min": [0, 1], "char_count": 1, "part1": true,
                           "part2": {"applicable": true, "bound_met": true, "count_ok": true}})
    );
    let o = run(&["corollary", "--lattice", "d4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["shadow-lattice", "--lattice", "z1", "--prec", "2"]);
    assert_eq!(stdout(&o), "char_min=1 char_count=2\ncounts 1:2\nshadow_theta=2*q^(1/8) + 2*q^(9/8) + O(q^(2))\n");
    let o = run(&["theta", "--lattice", "e8", "--prec", "2"]);
    assert_eq!(stdout(&o), "1*q^(0) + 240*q^(1) + O(q^(2))\n");
    let o = run(&["theta", "--lattice", "z1", "--shift", "(1/2)", "--prec", "2"]);
    assert_eq!(stdout(&o), "2*q^(1/8) + 2*q^(9/8) + O(q^(2))\n");
    assert_eq!(run(&["theta", "--lattice", "z99"]).status.code(), Some(2));
}

#[test]
fn lattice_files() {
    let basis = scratch("z2.txt", "2\n1 0\n0 1\n");
    let o = run(&["theta", "--lattice", basis.to_str().unwrap(), "--prec", "2"]);
    assert_eq!(stdout(&o), "1*q^(0) + 4*q^(1/2) + 4*q^(1) + O(q^(2))\n");
    let e8 = "8\n\
        2 -1 0 0 0 0 0 0\n-1 2 -1 0 0 0 0 0\n0 -1 2 -1 0 0 0 0\n0 0 -1 2 -1 0 0 0\n\
        0 0 0 -1 2 -1 0 -1\n0 0 0 0 -1 2 -1 0\n0 0 0 0 0 -1 2 0\n0 0 0 0 -1 0 0 2\n";
    let gram = scratch("e8.gram", e8);
    let o = run(&["corollary", "--lattice", gram.to_str().unwrap(), "--gram"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("norm2=240"));
    let bad = scratch("bad.txt", "2\n1 0\n");
    assert_eq!(run(&["theta", "--lattice", bad.to_str().unwrap()]).status.code(), Some(2));
    for p in [basis, gram, bad] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn code_commands() {
    let o = run(&["code-shadow", "--code", "rep2"]);
    assert_eq!(stdout(&o), "1:2\n");
    let o = run(&["--json", "code-shadow", "--code", "e8code"]);
    assert_eq!(stdout(&o), "{\"weights\":{\"0\":1,\"4\":14,\"8\":1}}\n");
    let file = scratch("half.code", "4 1\n1100\n");
    let o = run(&["code-shadow", "--code", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["construct-a", "--code", "rep2", "--prec", "2"]);
    assert_eq!(stdout(&o), "2\n1 1\n1 2\ndet=1 self_dual=true\ntheta=1*q^(0) + 4*q^(1/2) + 4*q^(1) + O(q^(2))\n");
    let o = run(&["--json", "construct-a", "--code", "e8code", "--prec", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["self_dual"], true);
    assert_eq!(v["det"], serde_json::json!([1, 1]));
    let _ = std::fs::remove_file(file);
}

#[test]
fn usage_errors() {
    for args in [
        &["bogus"][..],
        &[][..],
        &["char", "--rank", "8"][..],
        &["char", "--rank", "8", "--A", "(1,0)", "--dim1", "248"][..],
        &["bounds", "--rank", "1/3"][..],
        &["theta"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify-table"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "shadow-lattice", "--lattice", "d12plus", "--prec", "2"]);
    let b = run(&["--json", "shadow-lattice", "--lattice", "d12plus", "--prec", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn library_entry_point() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = shadowforge::cli::run_with(["shadowforge", "bounds", "--rank", "16"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "dim1_min=240 shadow_count=512\n");
}
