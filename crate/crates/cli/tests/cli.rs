//! End-to-end tests of the `qu` binary: output formats, exit codes, and the
//! oracle protocol against a scripted stand-in.

use std::io::Write;
use std::process::{Command, Output};

fn qu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qu"))
        .args(args)
        .env_remove("QU_ORACLE_CMD")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn family_list_first_eight() {
    let out = qu(&["family", "list", "--count", "8"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let s_col: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(
        s_col,
        ["4", "-12", "48", "-176", "660", "-2460", "9184", "-34272"]
    );
}

#[test]
fn family_list_json_row() {
    let out = qu(&["family", "list", "--count", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["n"], 1);
    assert_eq!(v["s"], "4");
    assert_eq!(v["nine_divides"], true);
}

#[test]
fn family_list_zero_count_is_usage_error() {
    let out = qu(&["family", "list", "--count", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_poly_by_n_and_s_agree() {
    let a = qu(&["family", "poly", "--n", "2", "--format", "json"]);
    let b = qu(&["family", "poly", "--s", "-12", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    let va: serde_json::Value = serde_json::from_str(stdout_str(&a).trim()).unwrap();
    let vb: serde_json::Value = serde_json::from_str(stdout_str(&b).trim()).unwrap();
    assert_eq!(va["display"], "t^4 - 7588t^3 - 870t^2 + 4t + 1");
    assert_eq!(va["display"], vb["display"]);
    assert_eq!(va["coefficients"], vb["coefficients"]);
}

#[test]
fn verify_passes_at_n_2() {
    let out = qu(&["verify", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
}

#[test]
fn verify_s4_conditional_not_failed() {
    let out = qu(&["verify", "--s", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["invariants"]["conditional"], true);
    let index = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "index")
        .unwrap();
    assert_eq!(index["status"], "conditional");
}

#[test]
fn verify_off_family_is_input_error() {
    let out = qu(&["verify", "--s", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a perfect square"));
}

#[test]
fn verify_checks_filter() {
    let out = qu(&["verify", "--n", "1", "--checks", "params,poly"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    let bad = qu(&["verify", "--n", "1", "--checks", "nonsense"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_json_roundtrips_byte_identically() {
    let out = qu(&["verify", "--n", "3"]);
    let raw = stdout_str(&out);
    let raw = raw.trim();
    let v: serde_json::Value = serde_json::from_str(raw).unwrap();
    // Value uses BTreeMap: re-serialization sorts keys, and the report's
    // key order is already canonical (alphabetical)
    assert_eq!(serde_json::to_string(&v).unwrap(), raw);
}

#[test]
fn verify_timings_flag_adds_field() {
    let plain = qu(&["verify", "--n", "1"]);
    let timed = qu(&["verify", "--n", "1", "--timings"]);
    let vp: serde_json::Value = serde_json::from_str(stdout_str(&plain).trim()).unwrap();
    let vt: serde_json::Value = serde_json::from_str(stdout_str(&timed).trim()).unwrap();
    assert!(vp.get("timings_ms").is_none());
    assert!(vt.get("timings_ms").is_some());
}

#[test]
fn verify_batch_sorted_by_n() {
    let out = qu(&["verify", "--n", "3", "--n", "1", "--workers", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let ns: Vec<i64> = stdout_str(&out)
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["n"]
                .as_i64()
                .unwrap()
        })
        .collect();
    assert_eq!(ns, [1, 3]);
}

#[test]
fn search_reproduces_table_and_is_deterministic() {
    let a = qu(&["search", "--bound", "250"]);
    assert!(a.status.success());
    let text = stdout_str(&a);
    for row in [
        "1\t-5\t-4\t-5\t-2",
        "5\t-17\t-12\t-85\t2",
        "5\t-37\t-32\t-185\t-77/2",
        "17\t-65\t-48\t-1105\t-2",
        "65\t-241\t-176\t-15665\t2",
    ] {
        assert!(text.contains(row), "missing row {row:?}");
    }
    let b = qu(&["search", "--bound", "250", "--workers", "8"]);
    assert_eq!(a.stdout, b.stdout, "worker count changed the output");
}

#[test]
fn search_small_bound_empty() {
    let out = qu(&["search", "--bound", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).lines().count(), 1); // header only
}

#[test]
fn bounds_reports_fields() {
    let out = qu(&["bounds", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["conductor"], "1168");
    assert_eq!(v["rvsd_ratio_is_s2_plus_2"], true);
    assert_eq!(v["class_ratio_less_than_conductor"], true);
}

#[test]
fn cubic_verify_cli() {
    let out = qu(&[
        "cubic", "verify", "--f", "1", "--f", "-5", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_str(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["factorization_identity"], true);
        assert_eq!(v["companion_identity"], true);
    }
}

fn write_mock_oracle(name: &str, body: &str) -> std::path::PathBuf {
    let path =
        std::env::temp_dir().join(format!("qu_mock_oracle_{name}_{}.sh", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    }
    path
}

#[test]
fn oracle_compare_matching() {
    let script = write_mock_oracle(
        "match",
        "#!/bin/sh\nread line\necho \"CLS 4\"\necho \"REG 426.13\"\necho \"IDX 1\"\necho END\n",
    );
    let out = qu(&[
        "oracle",
        "compare",
        "--n",
        "2",
        "--oracle-cmd",
        script.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["class_group_match"], true);
    assert_eq!(v["index_in_possible"], true);
    assert_eq!(v["regulator_oracle"], "426.13");
    let _ = std::fs::remove_file(script);
}

#[test]
fn oracle_compare_mismatch_exits_1() {
    let script = write_mock_oracle(
        "mismatch",
        "#!/bin/sh\nread line\necho \"CLS 999\"\necho END\n",
    );
    let out = qu(&[
        "oracle",
        "compare",
        "--n",
        "2",
        "--oracle-cmd",
        script.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_file(script);
}

#[test]
fn oracle_infrastructure_errors_exit_3() {
    // not configured
    let out = qu(&["oracle", "compare", "--n", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // missing executable
    let out = qu(&[
        "oracle",
        "compare",
        "--n",
        "2",
        "--oracle-cmd",
        "/nonexistent/oracle-binary",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // garbage protocol
    let script = write_mock_oracle("garbage", "#!/bin/sh\nread line\necho BOGUS\necho END\n");
    let out = qu(&[
        "oracle",
        "compare",
        "--n",
        "2",
        "--oracle-cmd",
        script.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let _ = std::fs::remove_file(script);
}

#[test]
fn oracle_env_variable_is_honored() {
    let script = write_mock_oracle(
        "env",
        "#!/bin/sh\nread line\necho \"CLS 4 4 4\"\necho \"IDX 1\"\necho END\n",
    );
    let out = Command::new(env!("CARGO_BIN_EXE_qu"))
        .args(["oracle", "compare", "--n", "3"])
        .env("QU_ORACLE_CMD", script.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["class_group_match"], true); // 48 -> 4x4x4
    let _ = std::fs::remove_file(script);
}
