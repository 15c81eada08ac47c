use std::process::{Command, Output};

use serde_json::Value;

fn maxsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsub"))
        .args(args)
        .env_remove("MAXSUB_ELEMENT_CAP")
        .env_remove("MAXSUB_SUBGROUP_BUDGET")
        .env_remove("MAXSUB_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = maxsub(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().expect("exit code"))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let errors: Vec<String> = schema(name).iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn info_examples() {
    let (j, code) = json(&["info", "--family", "J", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_valid("info", &j);
    assert_eq!(j["order"], 14);
    assert_eq!(j["units"]["order"], 1);
    assert_eq!(j["ranks"], serde_json::json!([4, 2, 0]));

    let (b, _) = json(&["info", "--family", "B", "--degree", "3"]);
    assert_valid("info", &b);
    assert_eq!((b["order"].as_u64(), b["units"]["order"].as_u64()), (Some(15), Some(6)));

    let (pt, _) = json(&["info", "--family", "PT", "--degree", "1"]);
    assert_eq!(pt["order"], 2);
    assert_eq!(pt["semilattice"], true);
    let text = String::from_utf8(maxsub(&["info", "--family", "PT", "--degree", "1"]).stdout).unwrap();
    assert!(text.contains("semilattice"));
}

#[test]
fn maximal_examples() {
    let (poi, code) = json(&["maximal", "--family", "POI", "--degree", "3", "--mode", "theorem"]);
    assert_eq!(code, 0);
    assert_valid("maximal", &poi);
    let entries = poi["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert!(entries.iter().all(|e| e["verdict"]["verdict"] == "maximal"));
    assert_eq!(poi["count_context"]["count"]["value"], 7);

    let (i2, code) = json(&["maximal", "--family", "I", "--degree", "2", "--mode", "oracle"]);
    assert_eq!(code, 0);
    assert_valid("maximal", &i2);
    assert_eq!(i2["entries"].as_array().unwrap().len(), 2);
    assert_eq!(i2["agreement"]["agree"], true);

    let (aj, code) = json(&["maximal", "--family", "AJ", "--degree", "6"]);
    assert_eq!(code, 0);
    assert_valid("maximal", &aj);
    assert_eq!(aj["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn modes_agree() {
    for (f, n) in [("B", "3"), ("J", "4"), ("PO", "3"), ("M", "2")] {
        let mut counts = Vec::new();
        for mode in ["theorem", "classify", "oracle"] {
            let (v, code) = json(&["maximal", "--family", f, "--degree", n, "--mode", mode]);
            assert_eq!(code, 0, "{f}{n} {mode}: {:?}", v["notes"]);
            assert_valid("maximal", &v);
            counts.push(v["entries"].as_array().unwrap().len());
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "{f}{n}: {counts:?}");
    }
}

#[test]
fn table_examples() {
    let (t, code) = json(&["table1", "--degrees", "4..6", "--families", "M,PORI"]);
    assert_eq!(code, 0);
    assert_valid("table1", &t);
    let row = |f: &str, n: u64| {
        t["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["family"] == f && r["n"] == n)
            .cloned()
            .unwrap()
    };
    assert_eq!(row("M", 4)["constructed"], 21);
    assert_eq!(row("M", 4)["verified"], true);
    assert_eq!(row("PORI", 6)["formula_count"]["value"], 7);
    assert_eq!(row("PORI", 6)["verified"], true);
}

#[test]
fn small_degree_rows_carry_exceptions() {
    let (t, _) = json(&["table1", "--degrees", "2", "--families", "POR,PORI,PODI"]);
    assert_valid("table1", &t);
    for r in t["rows"].as_array().unwrap() {
        if r["family"] != "PODI" {
            assert_eq!(r["formula_count"]["status"], "exception", "{r}");
        }
        assert_eq!(r["verified"], true, "{r}");
    }
}

#[test]
fn mismatch_exits_3() {
    // OR_2 coincides with T_2, which has 2 maximal subsemigroups, not the stated 4.
    let out = maxsub(&["table1", "--degrees", "2", "--families", "OR", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout).unwrap().contains(",mismatch,"));
}

#[test]
fn capacity_exits_2_and_keeps_sweeping() {
    let out = Command::new(env!("CARGO_BIN_EXE_maxsub"))
        .args(["table1", "--degrees", "3..4", "--families", "J,PO", "--format", "json"])
        .env("MAXSUB_ELEMENT_CAP", "40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let t: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid("table1", &t);
    let statuses: Vec<&str> = t["rows"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["verified", "verified", "verified", "capacity"]);

    let out = maxsub(&["info", "--family", "T", "--degree", "6", "--max-elements", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("1000"));
}

#[test]
fn oracle_out_of_reach_exits_2() {
    let out = maxsub(&["maximal", "--family", "J", "--degree", "5", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bound 22"));
}

#[test]
fn csv_columns_are_fixed() {
    let out = maxsub(&["table1", "--degrees", "3", "--families", "J", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("family,n,formula,formula_count,constructed,verified,status,note")
    );
    let out = maxsub(&["maximal", "--family", "J", "--degree", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("index,kind,j_rank,size,complement_size,verdict,descriptor"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table1", "--degrees", "2..4", "--format", "json"][..],
        &["maximal", "--family", "P", "--degree", "3", "--mode", "classify", "--format", "json"][..],
    ] {
        let a = maxsub(args).stdout;
        let b = maxsub(&[args, &["--threads", "1"]].concat()).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("maxsub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("j3.json");
    let out = maxsub(&["info", "--family", "J", "--degree", "3", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_input_exits_1() {
    assert_eq!(maxsub(&["info", "--family", "XYZ", "--degree", "3"]).status.code(), Some(1));
    assert_eq!(maxsub(&["info", "--family", "J", "--degree", "0"]).status.code(), Some(1));
    assert_eq!(maxsub(&["table1", "--degrees", "5..2"]).status.code(), Some(1));
    assert_eq!(maxsub(&["--help"]).status.code(), Some(0));
}
