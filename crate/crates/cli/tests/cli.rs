use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eisbound"));
    cmd.args(args).env_remove("EISBOUND_PRECISION");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn example67_emits_bound() {
    let out = run(&["example67"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["l_value"]["val_p"], 1);
    assert_eq!(v["l_value"]["l_alg_rational"], "19/67");
    assert!(v["bound"]["selmer_valuation_lower_bound"].as_i64().unwrap() >= 1);
    assert_eq!(v["hypotheses"]["overall"], true);
    assert_eq!(v["verified"], true);
}

#[test]
fn classgroup_record() {
    let out = run(&["classgroup", "-d", "-20"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class_number"], 2);
    assert_eq!(v["forms"], serde_json::json!([[1, 0, 5], [2, 2, 3]]));
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = run(&["frobnicate"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn module_errors_are_structured() {
    let out = run(&["classgroup", "-d", "-21"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "arith");
    let out = run(&["check", "-d", "-67", "-p", "20"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "config");
    let out = run(&["lvalue", "-d", "-20", "-p", "7"], &[]);
    assert_eq!(json(&out)["error"]["kind"], "config");
}

#[test]
fn failed_hypotheses_exit_nonzero() {
    let out = run(&["check", "-d", "-67", "-p", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["overall"], false);
    assert_eq!(v["verified"], false);
}

#[test]
fn split_aux_prime_is_reported() {
    let out = run(&["check", "-d", "-67", "-p", "19", "--aux-prime", "17"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chosen_aux"]["passed"], false);
    assert_eq!(v["aux_witness"]["norm"], 67);
}

#[test]
fn cusps_and_chars_verify() {
    let out = run(&["cusps", "-d", "-20"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["classes"][1]["fixpoint_free"], true);
    let out = run(&["chars", "-d", "-20", "--aux-prime", "3", "--inf-type", "1,0"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["characters"].as_array().unwrap().len(), 2);
}

#[test]
fn eis_battery_passes() {
    let out = run(&["eis", "-d", "-67", "-p", "19", "--aux-prime", "17", "--samples", "2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["constant_term"]["all_pass"], true);
    assert_eq!(v["constant_term"]["components"].as_array().unwrap().len(), 8);
}

#[test]
fn precision_env_and_out_file() {
    let dir = std::env::temp_dir().join(format!("eisbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lvalue.json");
    let out = run(&["lvalue", "-d", "-67", "-p", "19", "--out", path.to_str().unwrap()], &[("EISBOUND_PRECISION", "30")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["digits"], 30);
    assert_eq!(v["val_p"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_tables() {
    let out = run(&["classgroup", "-d", "-67", "--pretty"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("class_number") && l.ends_with(" 1")));
}

#[test]
fn output_is_thread_independent() {
    for args in [&["example67", "--precision", "30"][..], &["eis", "-d", "-20", "-p", "7", "--aux-prime", "3", "--samples", "2"][..]] {
        let one = run(args, &[("RAYON_NUM_THREADS", "1")]);
        let four = run(args, &[("RAYON_NUM_THREADS", "4")]);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout);
    }
}
