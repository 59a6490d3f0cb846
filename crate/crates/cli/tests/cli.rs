use std::path::PathBuf;

mod common;

use assert_cmd::Command;
use dscat_cli::payload::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::cargo_bin("dscat").unwrap().args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs the command, checks the exit code and validates against the schema.
/// The output must also parse into `T` and re-serialize byte for byte.
fn json_run_as<T: DeserializeOwned + Serialize>(args: &[&str], code: i32, schema_name: &str) -> Value {
    let r = run(args);
    assert_eq!(r.code, code, "{args:?}: {}", r.stdout);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    if let Err(e) = common::validate(&schema(schema_name), &v) {
        panic!("{args:?} violates {schema_name}: {e}");
    }
    let typed: T = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert_eq!(to_json(&typed), r.stdout, "{args:?} does not round-trip");
    v
}

fn json_run(args: &[&str], code: i32, schema_name: &str) -> Value {
    match schema_name {
        "matrix" => json_run_as::<MatrixPayload>(args, code, schema_name),
        "bases" => json_run_as::<BasesPayload>(args, code, schema_name),
        "reconstruct" => json_run_as::<ReconstructPayload>(args, code, schema_name),
        "transform" => json_run_as::<VectorsPayload>(args, code, schema_name),
        "validate" => json_run_as::<ValidatePayload>(args, code, schema_name),
        "is-basis" => json_run_as::<IsBasisPayload>(args, code, schema_name),
        "catalan" => json_run_as::<CatalanPayload>(args, code, schema_name),
        "positroid" => json_run_as::<PositroidPayload>(args, code, schema_name),
        "check" => json_run_as::<CheckPayload>(args, code, schema_name),
        "route" => json_run_as::<RoutePayload>(args, code, schema_name),
        "error" => json_run_as::<ErrorPayload>(args, code, schema_name),
        other => panic!("no payload type for {other}"),
    }
}

#[test]
fn matrix_csv_golden() {
    let r = run(&["matrix", "--d", "4", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "row,f_-1,f_0,f_1,f_2,f_3\ng_0,1,5,10,10,5\ng_1,0,1,4,6,3\ng_2,0,0,1,2,1\n"
    );
}

#[test]
fn matrix_json() {
    let v = json_run(&["matrix", "--d", "0"], 0, "matrix");
    assert_eq!(v["rows"], json!([[1]]));
    let v = json_run(&["matrix", "--d", "4"], 0, "matrix");
    assert_eq!(v["rows"], json!([[1, 5, 10, 10, 5], [0, 1, 4, 6, 3], [0, 0, 1, 2, 1]]));
    assert_eq!(v["column_labels"], json!(["f_-1", "f_0", "f_1", "f_2", "f_3"]));
}

#[test]
fn large_entries_become_strings() {
    let v = json_run(&["matrix", "--d", "60"], 0, "matrix");
    // row 0 is C(61, 61 - j)
    let row = v["rows"][0].as_array().unwrap();
    assert_eq!(row[30], json!("232714176627630544"));
    assert_eq!(row[1], json!(61));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["matrix", "--d", "-1"][..],
        &["matrix"],
        &["bases", "--d", "0"],
        &["bases", "--d", "4", "--method", "magic"],
        &["reconstruct", "--d", "4", "--known", "1=1,2"],
        &["reconstruct", "--d", "4", "--known", "a=1"],
        &["nonsense"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
}

#[test]
fn bases_golden() {
    let v = json_run(&["bases", "--d", "4", "--method", "dyck"], 0, "bases");
    assert_eq!(
        v["bases"],
        json!([[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]])
    );
    let v = json_run(&["bases", "--d", "4", "--method", "minors", "--count-only"], 0, "bases");
    assert_eq!(v["count"], 5);
    assert!(v.get("bases").is_none());
    let v = json_run(&["bases", "--d", "9", "--count-only"], 0, "bases");
    assert_eq!(v["count"], 132);
}

#[test]
fn bases_agree_across_methods() {
    for d in 1..=10 {
        let d = d.to_string();
        let outs: Vec<Value> = ["minors", "routing", "dyck"]
            .iter()
            .map(|m| json_run(&["bases", "--d", &d, "--method", m], 0, "bases")["bases"].clone())
            .collect();
        assert_eq!(outs[0], outs[1], "d={d}");
        assert_eq!(outs[1], outs[2], "d={d}");
    }
}

#[test]
fn reconstruct_from_basis() {
    let v = json_run(
        &["reconstruct", "--d", "4", "--known", "1=1,2=8,3=27"],
        0,
        "reconstruct",
    );
    assert_eq!(v["f"], json!([1, 8, 27, 38, 19]));
    assert_eq!(v["h"], json!([1, 4, 9, 4, 1]));
    assert_eq!(v["g"], json!([1, 3, 5]));
    assert_eq!(
        v["flags"],
        json!({"integral": true, "nonnegative": true, "m_sequence": true})
    );
}

#[test]
fn reconstruct_ambiguous() {
    let v = json_run(&["reconstruct", "--d", "4", "--known", "1=1,4=38,5=19"], 1, "error");
    assert_eq!(v["error"]["kind"], "NotADSBasis");
    assert_eq!(
        v["error"]["ambiguity"]["completions"],
        json!([[1, 8, 27, 38, 19], [1, 9, 28, 38, 19]])
    );
}

#[test]
fn reconstruct_domain_errors() {
    let v = json_run(&["reconstruct", "--d", "4", "--known", "1=2,2=8,3=27"], 1, "error");
    assert_eq!(v["error"]["kind"], "InconsistentConvention");
    let v = json_run(&["reconstruct", "--d", "4", "--known", "1=1,2=8"], 1, "error");
    assert_eq!(v["error"]["kind"], "WrongArity");
    let v = json_run(&["reconstruct", "--d", "4", "--known", "1=1,2=8,9=3"], 1, "error");
    assert_eq!(v["error"]["kind"], "LabelOutOfRange");
}

#[test]
fn reconstruct_fractional_values_are_strings() {
    // {1,2,4} is a basis of DS_5 with determinant 4
    let v = json_run(
        &["reconstruct", "--d", "5", "--known", "1=1,2=7,4=51"],
        0,
        "reconstruct",
    );
    assert_eq!(v["f"], json!([1, 7, "101/4", 51, "205/4", "41/2"]));
    assert_eq!(v["flags"]["integral"], false);
    let v = json_run(
        &["reconstruct", "--d", "5", "--known", "1=1,2=7,4=50"],
        0,
        "reconstruct",
    );
    assert_eq!(v["f"], json!([1, 7, 25, 50, 50, 20]));
}

#[test]
fn schemas_reject_wrong_shapes() {
    let s = schema("bases");
    assert!(common::validate(&s, &json!({"d": 4, "method": "minors", "count": 5})).is_ok());
    assert!(common::validate(&s, &json!({"d": 4, "method": "other", "count": 5})).is_err());
    assert!(common::validate(&s, &json!({"d": 4, "method": "dyck", "count": 5, "extra": 1})).is_err());
    let s = schema("reconstruct");
    let mut v = json!({"d": 1, "basis": [1], "f": [1, "3/2"], "h": [1, 1], "g": [1],
        "flags": {"integral": false, "nonnegative": true, "m_sequence": false}});
    assert!(common::validate(&s, &v).is_ok());
    v["f"][1] = json!("3/0");
    assert!(common::validate(&s, &v).is_err());
}

#[test]
fn transform_and_validate() {
    let v = json_run(
        &["transform", "--from", "g", "--d", "4", "--values", "1,3,5"],
        0,
        "transform",
    );
    assert_eq!(v["f"], json!([1, 8, 27, 38, 19]));
    let v = json_run(&["transform", "--from", "h", "--values", "1,5,7,5,1"], 0, "transform");
    assert_eq!(v["f"], json!([1, 9, 28, 38, 19]));
    json_run(&["transform", "--from", "g", "--values", "1,3"], 1, "error");

    let v = json_run(&["validate", "--f", "1,9,28,38,19"], 0, "validate");
    assert_eq!(
        (v["dehn_sommerville"].clone(), v["m_sequence"].clone()),
        (json!(true), json!(true))
    );
    let v = json_run(&["validate", "--f", "1,8,27,38,20"], 0, "validate");
    assert_eq!(v["dehn_sommerville"], false);
    json_run(&["validate", "--f", "2,8,27,38,19"], 1, "error");
}

#[test]
fn is_basis_reports_all_three_criteria() {
    let v = json_run(&["is-basis", "--d", "4", "--set", "1,3,5"], 0, "is-basis");
    assert_eq!(v["is_basis"], true);
    assert_eq!(v["routing"], true);
    assert_eq!(v["predicate"], true);
    let v = json_run(&["is-basis", "--d", "4", "--set", "1,4,5"], 0, "is-basis");
    assert_eq!(
        (v["is_basis"].clone(), v["determinant"].clone()),
        (json!(false), json!(0))
    );
    json_run(&["is-basis", "--d", "4", "--set", "1,4"], 1, "error");
}

#[test]
fn catalan_paths() {
    let v = json_run(&["catalan", "--n", "3"], 0, "catalan");
    assert_eq!(v["count"], 5);
    let words: Vec<&str> = v["paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, ["UUUDDD", "UUDUDD", "UUDDUD", "UDUUDD", "UDUDUD"]);
}

#[test]
fn positroid_permutations() {
    let v = json_run(&["positroid", "--d", "4"], 0, "positroid");
    assert_eq!(v["decorated_permutation"], json!([{"fixed": "coloop"}, 3, 5, 2, 4]));
    assert_eq!(
        v["necklace"],
        json!([[1, 2, 3], [1, 2, 3], [1, 3, 4], [1, 2, 4], [1, 2, 5]])
    );
    let v = json_run(&["positroid", "--d", "3"], 0, "positroid");
    assert_eq!(v["decorated_permutation"], json!([2, 4, 1, 3]));
    assert_eq!(v["matches_closed_form"], true);
}

#[test]
fn check_range() {
    let v = json_run(&["check", "--d-min", "1", "--d-max", "7"], 0, "check");
    assert_eq!(v["main_theorem"].as_array().unwrap().len(), 4);
    json_run(&["check", "--d-min", "5", "--d-max", "2"], 1, "error");
}

#[test]
fn route_json_and_diagram() {
    let v = json_run(&["route", "--d", "4", "--sinks", "1,3,5"], 0, "route");
    assert_eq!(v["routable"], true);
    assert_eq!(v["paths"].as_array().unwrap().len(), 3);
    let v = json_run(&["route", "--d", "10", "--sinks", "1,3,5,8,9,10"], 0, "route");
    assert_eq!((v["routable"].clone(), v["flow"].clone()), (json!(false), json!(5)));
    let r = run(&["route", "--d", "4", "--sinks", "1,3,5", "--draw"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("[3]"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["bases", "--d", "8", "--method", "routing"][..],
        &["route", "--d", "6", "--sinks", "1,2,4,6"],
        &["positroid", "--d", "7"],
        &["reconstruct", "--d", "4", "--known", "1=1,4=38,5=19"],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}
