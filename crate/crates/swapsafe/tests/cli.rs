use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use swapsafe::codebook::Codebook;
use swapsafe::data::load_microdata;
use swapsafe_core::{apply_swap, Cell, SwapPlan, VarSet};

const SCHEMA: &str = r#"{"variables": [
  {"name": "sex", "categories": ["male", "female"]},
  {"name": "age", "categories": ["55", "50"]},
  {"name": "occupation", "categories": ["nurse", "police officer"]},
  {"name": "residence", "categories": ["Tokyo", "Osaka"]}
]}"#;
const TWO_RECORDS: &str =
    "sex,age,occupation,residence\nmale,55,nurse,Tokyo\nfemale,50,police officer,Osaka\n";
const ROTATION: &str = "x1,x2,x3\n1,1,1\n1,2,2\n2,2,1\n2,1,2\n";
const ALL_PAIRS: &str = r#"[["x1","x2"],["x1","x3"],["x2","x3"]]"#;

fn setup(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapsafe"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn find_swaps_exactly_two_rows_and_round_trips() {
    let dir = setup(&[
        ("data.csv", TWO_RECORDS),
        ("schema.json", SCHEMA),
        (
            "margins.json",
            r#"[["sex"],["age","occupation"],["residence"]]"#,
        ),
    ]);
    let args = [
        "--data",
        "data.csv",
        "--schema",
        "schema.json",
        "--margins",
        "margins.json",
        "find",
        "--cell",
        "1",
        "--out",
        "out.csv",
        "--schema-out",
        "out.json",
    ];
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["verdict"], "swapped");
    assert_eq!(r["rows"], serde_json::json!([1, 2]));
    assert!(r["marginal_checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["preserved"] == true));

    let before = fs::read_to_string(dir.path().join("data.csv")).unwrap();
    let after = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let changed: Vec<(&str, &str)> = before
        .lines()
        .zip(after.lines())
        .filter(|(a, b)| a != b)
        .collect();
    assert_eq!(changed.len(), 2);
    assert_eq!(before.lines().next(), after.lines().next());

    // The written file loads back to the swapped table.
    let e: VarSet = r["E"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            ["sex", "age", "occupation", "residence"]
                .iter()
                .position(|n| v == n)
                .unwrap()
        })
        .collect();
    let mut cb = Codebook::from_json(SCHEMA).unwrap();
    let original = load_microdata(&before, &mut cb, b',')
        .unwrap()
        .table
        .to_contingency();
    let plan = SwapPlan::new(Cell::from([1, 1, 1, 1]), Cell::from([2, 2, 2, 2]), e).unwrap();
    let expected = apply_swap(&original, &plan).unwrap();
    let mut cb =
        Codebook::from_json(&fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    let reloaded = load_microdata(&after, &mut cb, b',')
        .unwrap()
        .table
        .to_contingency();
    assert_eq!(reloaded, expected);

    // Same inputs, same outputs.
    let again = run(dir.path(), &args);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(
        fs::read_to_string(dir.path().join("out.csv")).unwrap(),
        after
    );
}

#[test]
fn untouched_rows_stay_byte_identical() {
    let data = "a;b;c\r\n\"x\";y;z\r\nx;y;w\r\n  u ; v ; w\r\nu;q;z";
    let dir = setup(&[("data.csv", data), ("margins.json", r#"[["a","b"],["c"]]"#)]);
    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--margins",
            "margins.json",
            "--delimiter",
            ";",
            "find",
            "--cell",
            "4",
            "--out",
            "out.csv",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows: Vec<usize> = serde_json::from_value(report(&out)["rows"].clone()).unwrap();
    let after = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let old: Vec<&str> = data.split("\r\n").collect();
    let new: Vec<&str> = after.split("\r\n").collect();
    assert_eq!(old.len(), new.len());
    for (n, (a, b)) in old.iter().zip(&new).enumerate() {
        // Line 0 is the header; data row r is line r.
        if !rows.contains(&n) {
            assert_eq!(a, b, "line {n}");
        } else {
            assert_ne!(a, b, "line {n}");
        }
    }
}

#[test]
fn check_reports_connected_difference_graph() {
    let dir = setup(&[("data.csv", ROTATION), ("margins.json", ALL_PAIRS)]);
    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--margins",
            "margins.json",
            "check",
            "--record-a",
            "1",
            "--record-b",
            "2",
            "--oracle",
        ],
    );
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "not swappable");
    assert_eq!(r["reason"], "G_Δ̄ connected");
    assert_eq!(r["delta_set"], serde_json::json!(["x2", "x3"]));
    assert_eq!(r["oracle"]["agrees"], true);
    assert!(r["markov_note"]
        .as_str()
        .unwrap()
        .starts_with("non-decomposable"));
}

#[test]
fn check_reports_swap_set_and_witnesses() {
    let dir = setup(&[
        ("data.csv", TWO_RECORDS),
        ("schema.json", SCHEMA),
        (
            "margins.json",
            r#"[["sex"],["age","occupation"],["residence"]]"#,
        ),
    ]);
    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--schema",
            "schema.json",
            "--margins",
            "margins.json",
            "check",
            "--record-a",
            "male,55,nurse,Tokyo",
            "--record-b",
            "idx:2,2,2,2",
            "--all",
        ],
    );
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "swappable");
    assert_eq!(r["E"], serde_json::json!(["sex"]));
    assert_eq!(r["components"].as_array().unwrap().len(), 3);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 3);
    assert_eq!(r["separator"], serde_json::json!([]));
}

#[test]
fn verify_file_against_itself() {
    let dir = setup(&[("data.csv", ROTATION), ("margins.json", ALL_PAIRS)]);
    let out = run(
        dir.path(),
        &[
            "--margins",
            "margins.json",
            "verify",
            "--before",
            "data.csv",
            "--after",
            "data.csv",
        ],
    );
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "preserved");
    assert_eq!(r["marginal_checks"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_with_move_file() {
    let rotated = "x1,x2,x3\n1,1,2\n1,2,1\n2,2,2\n2,1,1\n";
    let mv = r#"[{"cell":[1,1,2],"value":1},{"cell":[1,2,1],"value":1},{"cell":[2,2,2],"value":1},
                {"cell":[2,1,1],"value":1},{"cell":[1,1,1],"value":-1},{"cell":[1,2,2],"value":-1},
                {"cell":[2,2,1],"value":-1},{"cell":[2,1,2],"value":-1}]"#;
    let dir = setup(&[
        ("data.csv", ROTATION),
        ("after.csv", rotated),
        ("margins.json", ALL_PAIRS),
        ("move.json", mv),
        ("zero.json", "[]"),
    ]);
    let base = [
        "--margins",
        "margins.json",
        "verify",
        "--before",
        "data.csv",
        "--after",
        "after.csv",
    ];
    let mut args = base.to_vec();
    args.extend(["--move", "move.json"]);
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["move_check"]["degree"], 4);
    assert_eq!(r["move_check"]["matches_difference"], true);

    let mut args = base.to_vec();
    args.extend(["--move", "zero.json"]);
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["move_check"]["matches_difference"], false);
}

#[test]
fn swap_reports_each_margin() {
    let dir = setup(&[
        ("data.csv", TWO_RECORDS),
        ("schema.json", SCHEMA),
        (
            "margins.json",
            r#"[["sex"],["age","occupation"],["residence"]]"#,
        ),
    ]);
    let base = [
        "--data",
        "data.csv",
        "--schema",
        "schema.json",
        "--margins",
        "margins.json",
    ];
    let mut args = base.to_vec();
    args.extend([
        "swap",
        "--cell-i",
        "1",
        "--cell-j",
        "2",
        "--vars",
        "occupation",
    ]);
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "disturbed");
    let preserved: Vec<bool> = r["marginal_checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["preserved"].as_bool().unwrap())
        .collect();
    assert_eq!(preserved, [true, false, true]);

    let mut args = base.to_vec();
    args.extend([
        "swap", "--cell-i", "1", "--cell-j", "2", "--vars", "2,3", "--out", "out.csv",
    ]);
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 0);
    let written = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert_eq!(
        written,
        "sex,age,occupation,residence\nmale,50,police officer,Tokyo\nfemale,55,nurse,Osaka\n"
    );

    // Every variable at once changes nothing.
    let mut args = base.to_vec();
    args.extend([
        "swap", "--cell-i", "1", "--cell-j", "2", "--vars", "1,2,3,4",
    ]);
    assert_eq!(code(&run(dir.path(), &args)), 2);
}

#[test]
fn uniques_and_separators() {
    let dir = setup(&[
        ("data.csv", "a,b,c,d\n1,1,1,1\n1,1,1,1\n2,1,1,1\n"),
        ("margins.json", r#"[["a","b","c"],["b","c","d"]]"#),
    ]);
    let out = run(dir.path(), &["--data", "data.csv", "uniques"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        report(&out)["uniques"],
        serde_json::json!([{"row": 3, "cell": ["2", "1", "1", "1"]}])
    );

    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--margins",
            "margins.json",
            "separators",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(
        report(&out)["separators"],
        serde_json::json!([{"separator": ["b", "c"], "components": [["a"], ["d"]]}])
    );
    assert!(stderr(&out).contains("S = {b, c}: {a} | {d}"));
}

#[test]
fn ambiguous_tuple_uses_lowest_row() {
    let dir = setup(&[
        ("data.csv", "a,b\nx,y\nx,y\nu,v\n"),
        ("margins.json", r#"[["a"],["b"]]"#),
    ]);
    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--margins",
            "margins.json",
            "find",
            "--cell",
            "x,y",
        ],
    );
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["rows"], serde_json::json!([1, 3]));
    assert!(r["notices"][0].as_str().unwrap().contains("using row 1"));
}

#[test]
fn uncovered_and_dropped_margins_are_noticed() {
    let dir = setup(&[
        ("data.csv", "a,b,c\n1,1,1\n2,2,2\n"),
        ("margins.json", r#"[["a"],["a","b"]]"#),
    ]);
    let out = run(
        dir.path(),
        &[
            "--data",
            "data.csv",
            "--margins",
            "margins.json",
            "check",
            "--record-a",
            "1",
            "--record-b",
            "2",
        ],
    );
    assert_eq!(code(&out), 0);
    let notices = report(&out)["notices"].to_string();
    assert!(notices.contains("{a} lies inside another"));
    assert!(notices.contains("{c} are in no protected margin"));
}

#[test]
fn exit_codes_for_bad_inputs() {
    let dir = setup(&[
        ("short.csv", "a,b,c\n1,1,1\n1,1\n"),
        ("empty.csv", "a,b,c\n"),
        ("ok.csv", "a,b,c\n1,1,1\n2,2,2\n"),
        ("bad.json", "[[\"z\"]]"),
        (
            "pinned.json",
            r#"{"variables":[{"name":"a","categories":["1"]},{"name":"b"},{"name":"c"}]}"#,
        ),
    ]);
    let d = dir.path();
    let out = run(d, &["--data", "short.csv", "uniques"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("row 2"), "{}", stderr(&out));
    assert!(stderr(&out).contains("expected 3 fields"));

    let out = run(d, &["--data", "empty.csv", "uniques"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("no records"));

    let out = run(
        d,
        &["--data", "ok.csv", "--schema", "pinned.json", "uniques"],
    );
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("unknown category \"2\""));

    assert_eq!(
        code(&run(
            d,
            &["--data", "ok.csv", "--margins", "bad.json", "separators"]
        )),
        2
    );
    assert_eq!(code(&run(d, &["--data", "missing.csv", "uniques"])), 2);
    assert_eq!(code(&run(d, &["--data", "ok.csv", "separators"])), 2);
    assert_eq!(
        code(&run(d, &["--data", "ok.csv", "find", "--cell", "row:9"])),
        2
    );
    assert_eq!(code(&run(d, &["uniques"])), 2);
    assert_eq!(code(&run(d, &["frobnicate"])), 2);
}

#[test]
fn generated_data_feeds_find() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(
        d,
        &[
            "generate",
            "--seed",
            "3",
            "--records",
            "200",
            "--vars",
            "6",
            "--max-levels",
            "4",
            "--out-dir",
            "gen",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let data = fs::read_to_string(d.join("gen/data.csv")).unwrap();
    assert_eq!(data.lines().count(), 201);

    let uniques = run(
        d,
        &[
            "--data",
            "gen/data.csv",
            "--schema",
            "gen/schema.json",
            "uniques",
        ],
    );
    let first = report(&uniques)["uniques"][0]["row"].to_string();
    let out = run(
        d,
        &[
            "--data",
            "gen/data.csv",
            "--schema",
            "gen/schema.json",
            "--margins",
            "gen/margins.json",
            "find",
            "--cell",
            &first,
            "--oracle",
        ],
    );
    assert!(matches!(code(&out), 0 | 1), "{}", stderr(&out));
    assert_eq!(report(&out)["oracle"]["agrees"], true);
}
