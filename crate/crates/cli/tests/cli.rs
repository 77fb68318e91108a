use std::process::Command;

use inq_cli::{run_with, EXIT_CONFIRMED, EXIT_REFUTED, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["inq-verify"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn single_claim_emits_one_json_object() {
    let (code, out, _) = invoke(&["verify", "--claim", "symmetric-span", "--dims", "2,2", "--format", "json"]);
    assert_eq!(code, EXIT_CONFIRMED);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_object());
    assert_eq!(v["claim"], "symmetric-span");
    assert_eq!(v["status"], "CONFIRMED");
    assert_eq!(v["dims"], serde_json::json!([2, 2]));
    assert!(v["duration_ms"].is_null());
    for key in ["weights", "seed", "tol", "measured", "expected"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn several_claims_emit_an_array_in_registry_order() {
    let (code, out, _) = invoke(&["verify", "--claim", "average-trace", "--claim", "kernels", "--dims", "2", "--format", "json"]);
    assert_eq!(code, EXIT_CONFIRMED);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert_eq!(ids, ["kernels", "average-trace"]);
}

#[test]
fn refuted_claim_exits_2_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = invoke(&["verify", "--claim", "matrix-span", "--dims", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "REFUTED");
    assert_eq!(v["measured"]["dim_inq"], 44);
    assert_eq!(v["measured"]["checks"]["dim_inq_ceiling"], true);
    assert_eq!(v["measured"]["relation"]["verdict"], "subset");
}

#[test]
fn usage_errors_exit_1() {
    let (code, _, err) = invoke(&["verify", "--dims", "0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));

    let (code, _, err) = invoke(&["verify", "--claim", "no-such-claim", "--dims", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("kernels") && err.contains("average-trace"), "registry not listed: {err}");

    let (code, _, _) = invoke(&["verify", "--claim", "decomposition", "--dims", "1,1"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, _) = invoke(&["verify", "--dims", "2", "--tol-rel", "-1"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, _) = invoke(&["verify", "--bogus-flag"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, _) = invoke(&["verify", "--claim", "kernels"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_CONFIRMED);
    assert!(out.contains("verify"));
}

#[test]
fn list_claims_prints_the_registry() {
    let (code, out, _) = invoke(&["list-claims"]);
    assert_eq!(code, EXIT_CONFIRMED);
    for id in inq_core::Claim::ALL {
        assert!(out.contains(id.id()), "{id} missing");
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["verify", "--claim", "cnst", "--claim", "bulk-minus", "--dims", "1,2", "--seed", "7", "--format", "json"];
    let (c1, a, _) = invoke(&args);
    let (c2, b, _) = invoke(&args);
    assert_eq!(c1, c2);
    assert_eq!(a, b);
}

#[test]
fn config_file_matches_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"claims": ["kernels"], "dims": [1, 2], "seed": 9, "format": "json", "tol": {"rel": 1e-9}}"#).unwrap();
    let (_, from_file, _) = invoke(&["verify", "--config", path.to_str().unwrap()]);
    let (_, from_flags, _) = invoke(&["verify", "--claim", "kernels", "--dims", "1,2", "--seed", "9", "--format", "json"]);
    assert_eq!(from_file, from_flags);

    let (_, overridden, _) = invoke(&["verify", "--config", path.to_str().unwrap(), "--seed", "10"]);
    let v: Value = serde_json::from_str(&overridden).unwrap();
    assert_eq!(v["seed"], 10);

    std::fs::write(&path, r#"{"dims": [2], "colour": "blue"}"#).unwrap();
    let (code, _, _) = invoke(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let (_, text, _) = invoke(&["verify", "--claim", "kernels", "--dims", "2,3"]);
    let (_, json, _) = invoke(&["verify", "--claim", "kernels", "--dims", "2,3", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    for (k, val) in v["measured"].as_object().unwrap() {
        assert!(text.contains(&format!("  {k}: {val}")), "{k} differs");
    }
    assert!(text.contains(&format!("status: {}", v["status"].as_str().unwrap())));
}

#[test]
fn delta_subcommand_lists_coefficients() {
    let (code, out, _) = invoke(&["delta", "--dims", "2", "--format", "json"]);
    assert_eq!(code, EXIT_CONFIRMED);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["claim"], "delta");
    let coeffs = v["delta"].as_array().unwrap();
    assert_eq!(coeffs.len(), 4);
    for c in coeffs {
        assert!((c["re"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }
}

#[test]
fn decompose_subcommand_runs_decomposition() {
    let (code, out, _) = invoke(&["decompose", "--dims", "3", "--format", "json"]);
    assert_eq!(code, EXIT_CONFIRMED);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["measured"]["sym_summand_dims"], serde_json::json!([27, 8, 1]));
    assert_eq!(v["measured"]["antisym_summand_dims"], serde_json::json!([10, 10, 8]));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_inq-verify");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "--claim", "kernels", "--dims", "2"]), Some(0));
    assert_eq!(status(&["verify", "--claim", "matrix-span", "--dims", "3"]), Some(2));
    assert_eq!(status(&["verify", "--dims", "0"]), Some(1));
}
