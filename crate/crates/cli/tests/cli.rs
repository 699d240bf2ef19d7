use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qpe(args: &[&str], dir: &Path) -> Output {
    qpe_env(args, dir, &[])
}

fn qpe_env(args: &[&str], dir: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpe"));
    cmd.args(args).current_dir(dir).env_remove("QPE_MAX_QUBITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

/// C6 and two triangles, plus a relabelled C6.
const C6: &str = "EhEG";
const C6_RELABELLED: &str = "EDZ?";
const TWO_K3: &str = "EwCW";

#[test]
fn rrwp_on_k2_alternates() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k2.g6", "A_\n");
    let o = qpe(&["encode", "--method", "rrwp", "--steps", "3", "k2.g6"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["shape"], serde_json::json!([3, 2, 2]));
    assert_eq!(floats(&rec["values"]), [1., 0., 0., 1., 0., 1., 1., 0., 1., 0., 0., 1.]);
}

#[test]
fn cqrw1_at_time_zero_is_identity() {
    let dir = TempDir::new().unwrap();
    write(&dir, "g.g6", &format!("{C6}\n"));
    let o = qpe(&["encode", "--method", "cqrw1", "--times", "0", "g.g6"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = floats(&json_lines(&o)[0]["values"]);
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(v[i * 6 + j], if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn ground_state_correlation_on_k2() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k2.g6", "A_\n");
    let o = qpe(&["encode", "--method", "gs-corr", "k2.g6", "--format", "csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let values: Vec<f64> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(values, [1.0, -1.0, -1.0, 1.0]);
    assert!(out.starts_with("graph,method,slice,row,col,value\n"));
}

#[test]
fn parse_errors_name_the_line_and_the_run_continues() {
    let dir = TempDir::new().unwrap();
    write(&dir, "mixed.g6", "A_\n\n!!bad\nBw\n");
    let o = qpe(&["encode", "--method", "rrwp", "mixed.g6"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mixed.g6:3:"), "{}", stderr(&o));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[1]["line"], 4);
}

#[test]
fn guard_violations_are_reported_per_graph() {
    let dir = TempDir::new().unwrap();
    write(&dir, "g.g6", &format!("A_\n{C6}\n"));
    let o = qpe_env(&["encode", "--method", "ising-sim", "g.g6"], dir.path(), &[("QPE_MAX_QUBITS", "4")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("g.g6:2:"));
    assert_eq!(json_lines(&o).len(), 1);

    let o = qpe_env(&["oracle-check", "--n-max", "6"], dir.path(), &[("QPE_MAX_QUBITS", "4")]);
    assert_eq!(o.status.code(), Some(3));
    let o = qpe_env(&["encode", "--method", "ising-sim", "g.g6"], dir.path(), &[("QPE_MAX_QUBITS", "6")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_check_defaults_pass_and_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = qpe(&["oracle-check", "--seed", "11"], dir.path());
    let b = qpe(&["oracle-check", "--seed", "11"], dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(report["graphs"], 20);
    assert!(report["max_corr_dev"].as_f64().unwrap() < 1e-9);

    let o = qpe(&["oracle-check", "--n-max", "1"], dir.path());
    let report: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(report["cases"].as_array().unwrap().iter().all(|c| c["n"] == 1));
    assert!(report["max_local_dev"].as_f64().unwrap() < 1e-12);
}

#[test]
fn isomorphic_copies_are_never_distinguished() {
    let dir = TempDir::new().unwrap();
    write(&dir, "pair.g6", &format!("{C6}\n{C6_RELABELLED}\n"));
    for method in ["wl1", "sum-refine", "gdwl-rrwp", "occupation-wl", "localized-signature", "xy2", "ising-p1", "ising-sim", "gs-corr", "rrwp"] {
        let o = qpe(&["distinguish", "--method", method, "pair.g6"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{method}: {}", stderr(&o));
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        let pair = &v["pairs"][0];
        assert_eq!(pair["distinguished"], false, "{method}");
        if pair["witness"]["kind"] == "distance" {
            assert!(pair["witness"]["value"].as_f64().unwrap() < 1e-12);
        }
    }
}

#[test]
fn rook_and_shrikhande_verdicts() {
    let dir = TempDir::new().unwrap();
    for method in ["wl1", "ising-p1"] {
        let o = qpe(&["distinguish", "--family", "rook_shrikhande", "--method", method], dir.path());
        let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["pairs"][0]["distinguished"], false, "{method}");
    }
}

#[test]
fn localized_signature_splits_c6_from_two_triangles() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a.g6", &format!("{C6}\n"));
    write(&dir, "b.g6", &format!("{TWO_K3}\n"));
    let run = |m: &str| {
        let o = qpe(&["distinguish", "--method", m, "a.g6", "b.g6", "--format", "csv"], dir.path());
        stdout(&o).lines().nth(1).unwrap().split(',').nth(2).unwrap().to_string()
    };
    assert_eq!(run("wl1"), "false");
    assert_eq!(run("localized-signature"), "true");
}

#[test]
fn config_file_overrides_flags() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k2.g6", "A_\n");
    write(&dir, "cfg.json", r#"{"method": "rrwp", "steps": 2, "output": "out.json"}"#);
    let o = qpe(&["encode", "k2.g6", "--steps", "5", "--config", "cfg.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(dir.path().join("out.json")).unwrap();
    let rec: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec["shape"], serde_json::json!([2, 2, 2]));

    let o = qpe(&["encode", "k2.g6", "--config", "cfg.json", "--print-config"], dir.path());
    let printed = stdout(&o);
    write(&dir, "again.json", &printed);
    let o2 = qpe(&["encode", "--config", "again.json", "--print-config"], dir.path());
    assert_eq!(stdout(&o2), printed);
}

#[test]
fn bad_configs_are_parse_errors() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k2.g6", "A_\n");
    write(&dir, "unknown.json", "{\n  \"stepz\": 2\n}");
    let o = qpe(&["encode", "k2.g6", "--config", "unknown.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    write(&dir, "other.json", r#"{"command": "family"}"#);
    assert_eq!(qpe(&["encode", "k2.g6", "--config", "other.json"], dir.path()).status.code(), Some(2));
    assert_eq!(qpe(&["encode", "--steps", "x", "k2.g6"], dir.path()).status.code(), Some(2));
}

#[test]
fn floats_round_trip_exactly() {
    let dir = TempDir::new().unwrap();
    write(&dir, "g.g6", &format!("{C6}\n"));
    let o = qpe(&["encode", "--method", "cqrw1", "--times", "0.3,1.7", "g.g6"], dir.path());
    let text = stdout(&o);
    let body = text.split("\"values\":[").nth(1).unwrap().split(']').next().unwrap();
    let tokens: Vec<&str> = body.split(',').collect();
    assert_eq!(tokens.len(), 2 * 36);
    for tok in tokens {
        let x: f64 = tok.parse().unwrap();
        let mantissa = tok.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{tok}");
        assert_eq!(format!("{x:.16e}"), tok);
    }
}

#[test]
fn family_reports() {
    let dir = TempDir::new().unwrap();
    let o = qpe(&["family", "--family", "srg_26_10_3_4", "--checks", "--format", "csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = qpe(&["family", "--family", "srg_26_10_3_4", "--method", "ising-p1", "--normalize"], dir.path());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["normalized"], true);
    assert!(floats(&v["distances"]).iter().all(|&d| d == 0.0));

    let o = qpe(&["family", "--family", "srg_26_10_3_4", "--method", "rrwp", "-k", "3", "--format", "csv"], dir.path());
    assert_eq!(stdout(&o).lines().count(), 46);
}

#[test]
fn validate_checks_fixtures_and_inputs() {
    let dir = TempDir::new().unwrap();
    let o = qpe(&["validate"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 2 + 15 + 10);
    assert!(recs.iter().all(|r| r["srg"].is_object()));

    write(&dir, "g.g6", &format!("{TWO_K3}\n"));
    let o = qpe(&["validate", "g.g6", "--format", "csv"], dir.path());
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "0,\"g.g6\",1,6,6,true,\"srg(6,2,1,0)\",\"EwCW\"");
}

#[test]
fn misuse_is_reported() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k2.g6", "A_\n");
    let o = qpe(&["encode", "--method", "wl1", "k2.g6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = qpe(&["distinguish", "k2.g6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = qpe(&["encode", "missing.g6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
