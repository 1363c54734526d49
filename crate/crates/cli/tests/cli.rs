use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bstar"))
        .args(args)
        .env_remove("BSTAR_BUDGET")
        .output()
        .expect("bstar runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bstar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn verify_reports_the_witness() {
    let set = scratch("verify.txt", "1\n2\n3\n4\n");
    let out = bstar(&["verify", "--set", set.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["b_star"], Value::Bool(false));
    assert_eq!(v["b_star_witness"]["left"], serde_json::json!([1, 4]));
    assert_eq!(v["b_star_witness"]["right"], serde_json::json!([2, 3]));
}

#[test]
fn split_exhaustive_example() {
    let set = scratch("split.json", "[1, 2, 3, 4]");
    let out = bstar(&[
        "split",
        "--set",
        set.to_str().unwrap(),
        "--k",
        "2",
        "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["expectation"]["mean"], "1/2");
    assert_eq!(v["split"]["achieved"], Value::Bool(true));
}

#[test]
fn bounds_csv_row() {
    let out = bstar(&["bounds", "--N", "1024", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1024,2,,,1448.154688,"));
    assert!(row.ends_with(",false"));
}

#[test]
fn search_range_is_csv() {
    let out = bstar(&["search", "--N", "3..6", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let sizes: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(sizes, ["3", "3", "4", "4"]);
}

#[test]
fn failed_assertion_exits_2() {
    let family = scratch(
        "triangle.json",
        r#"{"ground":[1,2,3],"members":[[1,2],[2,3],[1,3]]}"#,
    );
    let out = bstar(&[
        "ekr",
        "--family",
        family.to_str().unwrap(),
        "--intersections",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = bstar(&["ekr", "--n", "6", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_and_resource_errors_exit_1() {
    assert_eq!(bstar(&["verify", "--k", "2"]).status.code(), Some(1));
    assert_eq!(bstar(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        bstar(&["verify", "--set", "/nonexistent/x", "--k", "2"])
            .status
            .code(),
        Some(1)
    );
    let set = scratch("budget.txt", "1 2 3 4 5 6 7 8");
    let out = Command::new(env!("CARGO_BIN_EXE_bstar"))
        .args(["verify", "--set", set.to_str().unwrap(), "--k", "3"])
        .env("BSTAR_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource guard"));
}

#[test]
fn decompose_certificate_round_trip() {
    let set = scratch(
        "decompose.txt",
        "1 2 3 4 1007 1014 1021 1028 1000049 1000098 1000147 1000196 5000000",
    );
    let cert = std::env::temp_dir().join(format!("bstar-cert-{}.json", std::process::id()));
    let out = bstar(&[
        "decompose",
        "--set",
        set.to_str().unwrap(),
        "--k",
        "3",
        "--save",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = bstar(&["decompose", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // a certificate with a wrong good set fails verification
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["good"] = serde_json::json!([1]);
    v["bad"] = serde_json::json!([2, 3]);
    std::fs::write(&cert, v.to_string()).unwrap();
    let out = bstar(&["decompose", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn moments_and_family_reports() {
    let set = scratch("moments.txt", "1 2 3 5");
    let out = bstar(&["moments", "--set", set.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().len() >= 6);

    let b = scratch("b.txt", "1 2 3 4");
    let bp = scratch("bp.txt", "1 4");
    let out = bstar(&[
        "family",
        "--set",
        b.to_str().unwrap(),
        "--subset",
        bp.to_str().unwrap(),
        "--l",
        "2",
        "--k",
        "4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(
        json(&out)["family"]["members"],
        serde_json::json!([[1, 2, 3, 4]])
    );
}

#[test]
fn output_file_is_written() {
    let path = std::env::temp_dir().join(format!("bstar-out-{}.csv", std::process::id()));
    let out = bstar(&[
        "bounds",
        "--N",
        "10..12",
        "--k",
        "2,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 7);
}
