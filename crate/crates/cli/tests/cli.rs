//! End-to-end checks of the command-line interface: exit codes, report
//! determinism, the group file round trip, and the error paths.

use std::process::{Command, Output};

fn excq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excq"))
        .args(args)
        .output()
        .expect("run excq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bound_commands() {
    let o = excq(&["bound", "thomas", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("prime 7"));
    assert!(stdout(&o).contains("bound 6"));

    let o = excq(&["bound", "nagura", "23"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("prime 53"));

    // precondition error: exit code 3
    let o = excq(&["bound", "nagura", "22"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bp_commands() {
    let o = excq(&["bp", "check", "2", "3", "7", "41"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exceptional"], true);
    assert_eq!(v["reciprocal_sum"], "1723/1722");

    let o = excq(&["bp", "check", "2", "3", "7", "43"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exceptional"], false);

    let o = excq(&["bp", "construct", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exceptional"], true);
    assert_eq!(v["restricted_check"], true);
    assert_eq!(
        v["exponents"],
        serde_json::json!(["2", "3", "7", "47", "53"])
    );

    let o = excq(&["bp", "construct", "3", "--sylvester"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exponents"], serde_json::json!(["2", "3", "7", "11"]));

    // malformed exponent: input error
    let o = excq(&["bp", "check", "2", "x", "7", "41"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn catalog_list_and_roundtrip() {
    let o = excq(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("heisenberg5"));
    assert!(text.contains("HM"));

    let dir = std::env::temp_dir().join("excq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h5.json");
    let o = excq(&[
        "catalog",
        "build",
        "heisenberg5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());

    // analyze reproduces the declared properties; verdict is decided for the
    // exceptional question but the dim-5 weak question stays open => exit 2
    let o = excq(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group"]["order"], 125);
    assert_eq!(v["group"]["projective_order"], 25);
    assert_eq!(v["verdict"]["exceptional"], "no");
    assert_eq!(v["verdict"]["min_semiinvariant_degree"], "5");

    // byte-identical across runs
    let o2 = excq(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn analyze_decided_group() {
    let o = excq(&["analyze", "catalog:2A4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["exceptional"], "yes");
    assert_eq!(v["verdict"]["weakly_exceptional"], "yes");
    assert!(v["verdict"]["citations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c == "Shokurov-n-2"));
    // the invariant-dimension table defaults to the dimension
    assert_eq!(v["dimension_table"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors() {
    let dir = std::env::temp_dir().join("excq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();

    // singular generator
    let bad = dir.join("singular.json");
    std::fs::write(
        &bad,
        r#"{"root_order": 4, "dimension": 2,
            "generators": [[["1", "2"], ["2", "4"]]]}"#,
    )
    .unwrap();
    let o = excq(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    // entry grammar error
    let bad2 = dir.join("grammar.json");
    std::fs::write(
        &bad2,
        r#"{"root_order": 4, "dimension": 2,
            "generators": [[["1", "q"], ["0", "1"]]]}"#,
    )
    .unwrap();
    let o = excq(&["analyze", bad2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    // declared order mismatch
    let bad3 = dir.join("order.json");
    std::fs::write(
        &bad3,
        r#"{"root_order": 4, "dimension": 2, "expected_order": 5,
            "generators": [[["0", "1"], ["-1", "0"]]]}"#,
    )
    .unwrap();
    let o = excq(&["analyze", bad3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    // unknown catalog name
    let o = excq(&["catalog", "build", "nonsense"]);
    assert_eq!(o.status.code(), Some(3));

    // closure limit: an infinite group trips the resource limit code
    let inf = dir.join("infinite.json");
    std::fs::write(
        &inf,
        r#"{"root_order": 1, "dimension": 2,
            "generators": [[["1", "1"], ["0", "1"]]]}"#,
    )
    .unwrap();
    let o = excq(&["analyze", inf.to_str().unwrap(), "--limit", "1000"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn molien_and_chartable() {
    let o = excq(&["molien", "catalog:heisenberg5", "--max-degree", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("degree 5: 6"));
    assert!(text.contains("degree 4: 0"));

    let o = excq(&["chartable", "catalog:2A4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // SL(2,3) has degrees 1,1,1,2,2,2,3
    assert!(text.contains("classes: 7"));
    assert!(text.contains("chi_3"));
}

#[test]
fn reflection_notice() {
    let dir = std::env::temp_dir().join("excq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("reflection.json");
    std::fs::write(
        &p,
        r#"{"root_order": 3, "dimension": 3,
            "generators": [[["z", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]]}"#,
    )
    .unwrap();
    let o = excq(&["analyze", p.to_str().unwrap(), "--json"]);
    // undecided because the group must first be reduced by its reflections
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["reflections_present"], true);
    assert!(v["verdict"]["citations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c == "reflections"));
}
