use std::process::{Command, Output};

use serde_json::Value;

fn fekete(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fekete")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = fekete(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

/// Removes timing fields so runs can be compared byte for byte.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_ms");
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn point_counts() {
    for (n, rows) in [("4", 15), ("5", 21)] {
        let (v, code) = json(&["points", "-n", n, "-d", "2"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["points"].as_array().unwrap().len(), rows);
        let csv = fekete(&["points", "-n", n, "-d", "2", "--format", "csv"]);
        assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), rows + 1);
    }
    let (v, _) = json(&["points", "-n", "1", "-d", "1"]);
    let pts = v["result"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    assert_eq!(pts[0]["exact"], serde_json::json!(["1", "0"]));
    assert_eq!(pts[1]["exact"], serde_json::json!(["0", "1"]));
}

#[test]
fn degree_five_points_carry_precision() {
    let (v, _) = json(&["points", "-n", "5", "-d", "2", "--prec-bits", "200"]);
    assert_eq!(v["precision_bits"], 200);
    assert_eq!(v["result"]["exact"], false);
    assert!(v["result"]["points"][20]["enclosure"].is_array());
}

#[test]
fn certify_cubic() {
    let (v, code) = json(&["certify", "-n", "3", "-d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "certified");
    assert!(v["result"]["r"].as_u64().unwrap() <= 5);
}

#[test]
fn certify_quartic_full_kernel_refuted() {
    let (v, code) = json(&["certify", "-n", "4", "-d", "4", "--full-kernel"]);
    assert_eq!(code, 1);
    let last = v["result"]["certificates"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["status"]["kind"], "refuted");
    assert_eq!(last["status"]["point"], serde_json::json!(["1/5", "1/5", "1/5", "1/5", "1/5"]));
    assert_eq!(last["status"]["value"], "9298842/9453125+80243/9453125*sqrt5");
}

#[test]
fn certify_linear_is_trivial() {
    let (v, code) = json(&["certify", "-n", "1", "-d", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["r"], 0);
}

#[test]
fn inconclusive_exit_code() {
    // F4 on S_2: the full kernel cannot be certified by elevation
    let out = fekete(&["certify", "-n", "4", "-d", "2", "--r-max", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["certify", "-n", "6", "-d", "2"],
        vec!["certify", "-n", "5", "-d", "2"],
        vec!["points", "-n", "2", "-d", "0"],
        vec!["vdm", "-n", "2", "-d", "2", "--points", "midpoints"],
        vec!["certify", "-n", "2", "-d", "2", "--format", "csv"],
        vec!["frobnicate"],
    ] {
        assert_eq!(fekete(&args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(fekete(&["--help"]).status.code(), Some(0));
}

#[test]
fn vdm_ratio() {
    let (m, _) = json(&["vdm", "-n", "1", "-d", "2", "--points", "midpoints"]);
    let (v, _) = json(&["vdm", "-n", "1", "-d", "2", "--points", "vertices"]);
    assert_eq!(m["result"]["ratio_to_vertices"], "1/4");
    assert_eq!(v["result"]["ratio_to_vertices"], "1");
    let (b, _) = json(&["vdm", "-n", "1", "-d", "2", "--brute-grid", "11"]);
    assert_eq!(b["result"]["brute_force"]["best_is_vertices"], true);
}

#[test]
fn design_check_quadratic() {
    let (v, code) = json(&["design-check", "-n", "2", "-d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["node_values_ok"], true);
    assert_eq!(v["result"]["determinant_identity"], true);
    assert!((v["result"]["max_kernel"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn exponent_degree_five() {
    let (v, code) = json(&["exponent", "-n", "5", "-d", "2", "--starts", "50"]);
    assert_eq!(code, 0);
    let r = v["result"]["r"].as_f64().unwrap();
    assert!((r - 2.2513).abs() < 1e-3, "{r}");
}

#[test]
fn deterministic_json() {
    let args = ["maxk", "-n", "3", "-d", "2", "--seed", "5", "--starts", "20"];
    let (mut a, _) = json(&args);
    let (mut b, _) = json(&args);
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let (mut c, _) = json(&["certify", "-n", "2", "-d", "3"]);
    let (mut d, _) = json(&["certify", "-n", "2", "-d", "3", "--threads", "1"]);
    strip_timing(&mut c);
    strip_timing(&mut d);
    assert_eq!(c["result"], d["result"]);
}

#[test]
fn search_deg5_passes() {
    let (v, code) = json(&["search-deg5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_checks_pass"], true);
    assert_eq!(v["result"]["three_face"]["w"], "9/38-1/38*sqrt5");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("fekete-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pts.json");
    let out = fekete(&["points", "-n", "2", "-d", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["count"], 6);
    std::fs::remove_dir_all(&dir).ok();
}
