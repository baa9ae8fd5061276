//! Behaviour of the `isingvoa` binary: exit codes, report shape, determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isingvoa"));
    cmd.args(args).env_remove("VOA_CUTOFF");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

/// The report with its timing field removed.
fn stable(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn census_report_shape() {
    let out = run(&["census", "code", "rm24"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["tool"], "isingvoa");
    assert_eq!(r["command"], "census code");
    assert_eq!(r["input"]["tag"], "rm24");
    assert_eq!(r["results"]["count"], 496);
    assert_eq!(r["results"]["frames"], 16);
    assert_eq!(r["results"]["hamming_points"], 480);
    assert_eq!(r["pass"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(r["wall_time_ms"].is_u64());
}

#[test]
fn group_orders_are_decimal_strings() {
    let r = report(&run(&["group", "--census", "e8", "--orthogonal-to", "wtilde"], &[]));
    assert_eq!(r["results"]["points"], 255);
    assert_eq!(r["results"]["order"], "47377612800");
    assert!(r["results"]["matches"].as_array().unwrap().contains(&Value::from("Sp8(2)")));
}

#[test]
fn output_is_deterministic_and_seed_independent() {
    let args = ["characters", "verify", "--identities", "e7_commutant,a2_lattice_branching"];
    let a = stable(report(&run(&args, &[])));
    let b = stable(report(&run(&[&args[..], &["--seed", "17"]].concat(), &[])));
    assert_eq!(a, b);
    assert_eq!(a["results"]["count"], 2);
}

#[test]
fn empty_identity_list_passes() {
    let out = run(&["characters", "verify", "--cutoff", "4", "--identities", ""], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["count"], 0);
    assert_eq!(r["pass"], true);
}

#[test]
fn cutoff_flag_and_environment() {
    let show = |args: &[&str], env: &[(&str, &str)]| report(&run(args, env))["results"]["series"]["cutoff"].clone();
    assert_eq!(show(&["characters", "show", "minimal(1,1,1)"], &[]), "8");
    assert_eq!(show(&["characters", "show", "minimal(1,1,1)"], &[("VOA_CUTOFF", "5")]), "5");
    assert_eq!(show(&["characters", "show", "minimal(1,1,1)", "--cutoff", "3"], &[("VOA_CUTOFF", "5")]), "3");
    assert_eq!(run(&["characters", "show", "m_e7"], &[("VOA_CUTOFF", "x")]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["group", "--census", "nonsense"], &[]).status.code(), Some(2));
    assert_eq!(run(&["census", "code", "rm24", "--bogus-flag"], &[]).status.code(), Some(2));
    assert_eq!(run(&["characters", "verify", "--identities", "not_an_identity"], &[]).status.code(), Some(2));
    assert_eq!(run(&["characters", "show", "minimal(9,1,1,1)"], &[]).status.code(), Some(2));
    assert_eq!(run(&["griess", "Q9"], &[]).status.code(), Some(2));
}

#[test]
fn code_text_format_roundtrips_through_files() {
    let dir = std::env::temp_dir().join(format!("isingvoa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rm14.txt");
    let out = run(&["code", "rm14", "--emit", "--output", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let tag = format!("file:{}", path.display());
    let r = report(&run(&["code", &tag], &[]));
    assert_eq!(r["results"]["length"], 16);
    assert_eq!(r["results"]["dim"], 5);
    assert_eq!(r["results"]["min_weight"], 8);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tsv_format_lists_checks() {
    let out = run(&["--format", "tsv", "census", "hamming"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "count\t24"));
    assert!(text.lines().any(|l| l == "check:three_frames\ttrue"));
}

#[test]
fn fischer_inductive_structure() {
    let r = report(&run(&["fischer", "--census", "uc"], &[]));
    assert_eq!(r["results"]["points"], 136);
    assert_eq!(r["results"]["symplectic_type"], true);
    let r = report(&run(&["fischer", "--census", "m_e7", "--inductive"], &[]));
    assert_eq!(r["pass"], true);
    assert!(r["results"]["inductive"]["d2_points"].is_u64());
}
