use assert_cmd::Command;
use serde_json::{json, Value};

fn schurpos() -> Command {
    let mut cmd = Command::cargo_bin("schurpos").unwrap();
    cmd.env_remove("SCHURPOS_CACHE_DIR");
    cmd
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Runs with JSON output and returns (exit code, parsed records).
fn run(args: &[&str]) -> (i32, Vec<Value>) {
    let out = schurpos().args(args).output().unwrap();
    let records = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out.status.code().unwrap(), records)
}

fn items(records: &[Value]) -> Vec<&Value> {
    records.iter().filter(|r| r["record"] == "item").collect()
}

fn summary(records: &[Value]) -> &Value {
    let last = records.last().unwrap();
    assert_eq!(last["record"], "summary");
    last
}

fn strip_duration(records: &[Value]) -> Vec<Value> {
    records
        .iter()
        .cloned()
        .map(|mut r| {
            if let Some(o) = r.as_object_mut() {
                o.remove("duration_ms");
            }
            r
        })
        .collect()
}

#[test]
fn expand_kschur_in_schur() {
    let (code, recs) = run(&[
        "expand", "--family", "kschur", "--k", "2", "--index", "2,1", "--basis", "s",
    ]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["record"], "command");
    let its = items(&recs);
    assert_eq!(its.len(), 1);
    assert_eq!(
        its[0]["expansion"],
        json!({"basis": "s", "terms": [
            {"partition": [3], "num": 1, "den": 1},
            {"partition": [2, 1], "num": 1, "den": 1},
        ]})
    );
}

#[test]
fn expand_other_families() {
    let (code, recs) = run(&["expand", "--family", "schur-p", "--index", "2,1", "--basis", "s"]);
    assert_eq!(code, 0);
    assert_eq!(items(&recs)[0]["input"], "schur-p (2,1)");
    assert_eq!(
        items(&recs)[0]["expansion"]["terms"],
        json!([{"partition": [2, 1], "num": 1, "den": 1}])
    );
    let (_, recs) = run(&["expand", "--family", "schur-p", "--index", "3,1", "--basis", "s"]);
    assert_eq!(
        items(&recs)[0]["expansion"]["terms"],
        json!([
            {"partition": [3, 1], "num": 1, "den": 1},
            {"partition": [2, 2], "num": 1, "den": 1},
            {"partition": [2, 1, 1], "num": 1, "den": 1},
        ])
    );

    let (code, recs) = run(&["expand", "--family", "e", "--index", "2", "--basis", "h"]);
    assert_eq!(code, 0);
    assert_eq!(
        items(&recs)[0]["expansion"]["terms"],
        json!([
            {"partition": [2], "num": -1, "den": 1},
            {"partition": [1, 1], "num": 1, "den": 1},
        ])
    );

    // h_21 = s_3 + s_21 is a single 2-Schur function
    let (code, recs) = run(&[
        "expand", "--family", "h", "--index", "2,1", "--basis", "kschur", "--k", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        items(&recs)[0]["expansion"],
        json!({"basis": "kschur", "k": 2, "terms": [{"partition": [2, 1], "num": 1, "den": 1}]})
    );
    // s_3 lies outside the span of 2-Schur functions
    let (code, _) = run(&[
        "expand", "--family", "s", "--index", "3", "--basis", "kschur", "--k", "2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn branch_example() {
    let (code, recs) = run(&["branch", "--k", "1", "--lambda", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        items(&recs)[0]["expansion"],
        json!({"basis": "kschur", "k": 2, "terms": [
            {"partition": [2], "num": 1, "den": 1},
            {"partition": [1, 1], "num": 1, "den": 1},
        ]})
    );
}

#[test]
fn verify_p_positivity_small() {
    let (code, recs) = run(&["verify", "--suite", "p-pos", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(items(&recs).len(), 4);
    assert!(items(&recs).iter().all(|i| i["pass"] == true));
    let s = summary(&recs);
    assert_eq!((s["items"].as_u64(), s["failed"].as_u64()), (Some(4), Some(0)));
}

#[test]
fn verify_all_small() {
    let (code, recs) = run(&["verify", "--suite", "all", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(summary(&recs)["suites"].as_array().unwrap().len(), 13);
}

#[test]
fn theta_of_h2() {
    let (code, recs) = run(&["theta", "--input", &data("h2.json")]);
    assert_eq!(code, 0);
    // Q_2 = h_2 + e_1 h_1 + e_2 = 2 h_1^2
    assert_eq!(
        items(&recs)[0]["expansion"],
        json!({"basis": "h", "terms": [{"partition": [1, 1], "num": 2, "den": 1}]})
    );
}

#[test]
fn gamma_reports_membership_per_element() {
    let (code, recs) = run(&["gamma", "--input", &data("gamma_inputs.json")]);
    assert_eq!(code, 1);
    let its = items(&recs);
    assert_eq!(its.len(), 3);
    assert_eq!(
        its[0]["gamma"]["gamma_terms"],
        json!([
            {"odd_partition": [3], "coeff": -1},
            {"odd_partition": [1, 1, 1], "coeff": 1},
        ])
    );
    assert_eq!(its[1]["pass"], false);
    assert_eq!(its[2]["pass"], true);

    let (code, _) = run(&["gamma", "--input", &data("gamma_inputs.json"), "--bound", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn hopf_presentations() {
    let (code, recs) = run(&["hopf", "--presentation", &data("binomial3.json"), "--element", "x*x"]);
    assert_eq!(code, 0);
    let its = items(&recs);
    assert_eq!(its[0]["validation"]["coassociative"], true);
    assert_eq!(
        its[1]["image"]["terms"],
        json!([
            {"composition": [2], "num": 1, "den": 1},
            {"composition": [1, 1], "num": 2, "den": 1},
        ])
    );
    assert_eq!(its[1]["character"]["preserved"], true);

    let (code, recs) = run(&["hopf", "--presentation", &data("sym3.json")]);
    assert_eq!(code, 0);
    // validation plus six basis elements
    assert_eq!(items(&recs).len(), 7);
    assert!(items(&recs)[1..].iter().all(|i| i["symmetric"] == true));

    let (code, recs) = run(&["hopf", "--presentation", &data("corrupted_coproduct.json")]);
    assert_eq!(code, 1);
    assert_eq!(items(&recs)[0]["validation"]["coassociative"], false);
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["expand", "--family", "kschur", "--index", "2,1", "--basis", "s"],
        &[
            "expand", "--family", "kschur", "--k", "1", "--index", "2,1", "--basis", "s",
        ],
        &["expand", "--family", "schur-p", "--index", "1,1", "--basis", "s"],
        &["expand", "--family", "s", "--index", "1,2", "--basis", "s"],
        &["expand", "--family", "s", "--index", "11", "--basis", "s"],
        &["branch", "--k", "2", "--lambda", "3"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "p-pos", "--max-degree", "11"],
        &["theta", "--input", "/nonexistent/file.json"],
        &["hopf", "--presentation", "/nonexistent/file.json"],
        &["hopf", "--presentation", &data("binomial3.json"), "--element", "y"],
        &["expand", "--bogus"],
        &["frobnicate"],
    ];
    for args in cases {
        schurpos().args(*args).assert().code(2);
    }
    let bad = data("bad_den.json");
    schurpos().args(["theta", "--input", &bad]).assert().code(2);
    let out = schurpos().args(["expand", "--bogus"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn force_lifts_the_degree_cap() {
    schurpos()
        .args(["--force", "expand", "--family", "h", "--index", "11", "--basis", "h"])
        .assert()
        .code(0);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "ranks", "--max-degree", "4"];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(strip_duration(&a), strip_duration(&b));
}

#[test]
fn text_output() {
    let out = schurpos()
        .args(["--output", "text", "branch", "--k", "1", "--lambda", "1,1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(2):1, (1,1):1"), "{text}");
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("summary: 1 items, 1 passed, 0 failed"));
}

#[test]
fn cache_directory_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["expand", "--family", "s", "--index", "3,2", "--basis", "m"];
    let first = Command::cargo_bin("schurpos")
        .unwrap()
        .env("SCHURPOS_CACHE_DIR", dir.path())
        .args(args)
        .output()
        .unwrap();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = Command::cargo_bin("schurpos")
        .unwrap()
        .env("SCHURPOS_CACHE_DIR", dir.path())
        .args(args)
        .output()
        .unwrap();
    let parse = |o: &std::process::Output| {
        let recs: Vec<Value> = String::from_utf8_lossy(&o.stdout)
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        strip_duration(&recs)
    };
    assert_eq!(parse(&first), parse(&second));
}
