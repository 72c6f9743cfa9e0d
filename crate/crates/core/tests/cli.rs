use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cohomolib"));
    for a in args {
        if a.ends_with(".json") {
            cmd.arg(data.join(a));
        } else {
            cmd.arg(a);
        }
    }
    let out = cmd.output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let v = if stdout.is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), v, stderr)
}

#[test]
fn group_info() {
    let (code, v, _) = run(&["group-info", "group_heis.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 27);
    assert_eq!(v["derived_series_lengths"], serde_json::json!([27, 3, 1]));
    assert_eq!(v["schema"], "cohomolib/1");
}

#[test]
fn cohomology_verbs() {
    let (code, v, _) = run(&["h1", "h1_s3.json"]);
    assert_eq!((code, v["count"].as_u64()), (0, Some(4)));
    let (code, v, _) = run(&["h2", "h2_c4_inv.json"]);
    assert_eq!((code, v["count"].as_u64()), (0, Some(2)));
}

#[test]
fn lien_verbs() {
    let (code, v, _) = run(&["lien-h2", "lien_c2.json"]);
    assert_eq!((code, v["count"].as_u64(), v["neutral_count"].as_u64()), (0, Some(2), Some(1)));
    let (code, v, _) = run(&["lien-neutral", "lien_neutral.json"]);
    assert_eq!((code, &v["neutral"]), (3, &Value::Bool(false)));
}

#[test]
fn local_verbs() {
    let (code, v, _) = run(&["local-classify", "local_z3.json"]);
    assert_eq!(code, 0);
    assert_eq!((v["count"].as_u64(), v["unramified"].as_u64(), v["totally_ramified"].as_u64()), (Some(9), Some(3), Some(6)));
    // Overriding q to 2 leaves only unramified classes.
    let (_, v, _) = run(&["local-classify", "local_z3.json", "--q", "2"]);
    assert_eq!(v["count"].as_u64(), Some(3));
    let (code, v, _) = run(&["local-lift", "local_lift.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["lift"]["flags"]["totally_ramified"], true);
}

#[test]
fn global_verbs() {
    let (code, v, _) = run(&["global-validate", "global_z3.json"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let (code, v, _) = run(&["global-sha", "global_z3.json", "--degree", "1"]);
    assert_eq!((code, v["count"].as_u64()), (0, Some(1)));
    let (code, v, _) = run(&["global-weak-approx", "global_z3.json", "--places", "u1,u6"]);
    assert_eq!((code, &v["surjective"]), (3, &Value::Bool(false)));
    let (code, v, _) = run(&["global-devissage", "heisenberg_devissage.json"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("solved")));
    assert!(v["trace"].is_array());
    let (code, v, _) = run(&["global-hasse", "hasse_s3.json"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("neutral")));
    let (code, v, _) = run(&["global-hasse", "hasse_obstruction.json"]);
    assert_eq!(v["status"].as_str(), Some("obstruction"));
    assert!(v["certificate"].is_null());
    let _ = code;
}

#[test]
fn errors_and_budget() {
    let (code, v, err) = run(&["group-info", "group_heis.json", "--budget", "8"]);
    assert_eq!(code, 4, "{err}");
    assert_eq!(v, Value::Null);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["error"]["code"], "BudgetExceeded");
    let (code, _, err) = run(&["h1", "no_such_file.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("InvalidInput"));
    let (code, v, _) = run(&["group-info", "group_heis.json", "--budget", "64"]);
    assert_eq!(code, 0);
    assert_eq!(v["budget"]["max_order"], 64);
}
