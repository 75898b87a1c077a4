use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ideal-lab"))
        .args(args)
        .env_remove("IDEAL_LAB_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn witness_json_is_one_based() {
    let out = run(&["witness", "right", "4", "a,b,c,d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["transitions"]["d"], serde_json::json!([1, 2, 4, 4]));
    assert_eq!(v["initial"], 1);
    assert_eq!(v["finals"], serde_json::json!([4]));
}

#[test]
fn witness_dialect_drops_letters() {
    for args in [
        &["witness", "right", "4", "a,-,-,d"][..],
        &["witness", "right", "4", "--dialect", "a,-,-,d"][..],
    ] {
        let v = json(&run(args));
        assert_eq!(v["alphabet"].as_array().unwrap().len(), 2);
    }
    let v = json(&run(&["witness", "right", "4", "a,b,-,d"]));
    assert_eq!(v["alphabet"], serde_json::json!(["a", "b", "d"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["witness", "left", "3"][..],
        &["witness", "right", "4", "a,a,-,d"][..],
        &["witness", "cubic", "4"][..],
        &["measure", "nonsense", "--class", "right", "--n", "4"][..],
        &["measure", "product", "--class", "right", "--n", "4"][..],
        &["verify", "right", "--n", "1..3"][..],
        &["verify", "right", "--n", "5..3"][..],
        &["verify", "right", "--format", "yaml"][..],
        &["bogus"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["witness", "left", "3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 4"));
}

#[test]
fn measure_values() {
    let cases: [(&[&str], Value); 5] = [
        (
            &[
                "measure", "product", "--class", "right", "--m", "4", "--n", "5",
            ],
            12.into(),
        ),
        (
            &["measure", "star", "--class", "left", "--n", "5"],
            6.into(),
        ),
        (
            &["measure", "atoms", "--class", "two_sided", "--n", "5"],
            9.into(),
        ),
        (
            &["measure", "semigroup", "--class", "left", "--n", "5"],
            629.into(),
        ),
        (
            &[
                "measure",
                "quotient_profile",
                "--class",
                "right",
                "--n",
                "4",
            ],
            serde_json::json!([4, 4, 4, 1]),
        ),
    ];
    for (args, want) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        assert_eq!(v["value"], want, "{args:?}");
        assert!(v["params"].is_object());
        assert!(v["measure"].is_string());
    }
}

#[test]
fn measure_reads_dfa_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = run(&[
        "witness",
        "right",
        "4",
        "a,b,-,d",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    run(&[
        "witness",
        "right",
        "5",
        "b,a,-,d",
        "--out",
        b.to_str().unwrap(),
    ]);
    let sorted_b = dir.path().join("b_sorted.json");
    // the dialect keeps positional order (b,a,d); re-sort the letters for the product
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&b).unwrap()).unwrap();
    v["alphabet"] = serde_json::json!(["a", "b", "d"]);
    std::fs::write(&sorted_b, v.to_string()).unwrap();
    let out = run(&[
        "measure",
        "intersection",
        a.to_str().unwrap(),
        sorted_b.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["value"], 20);
    let out = run(&["measure", "complexity", a.to_str().unwrap()]);
    assert_eq!(json(&out)["value"], 4);
    assert_eq!(
        run(&["measure", "union", a.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"states\": 2}").unwrap();
    assert_eq!(
        run(&["measure", "complexity", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cap_overflow_exits_three() {
    let out = run(&["measure", "semigroup", "--class", "regular", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "--cap",
        "256",
        "measure",
        "semigroup",
        "--class",
        "regular",
        "--n",
        "4",
    ]);
    assert_eq!(json(&out)["value"], 256);
    let out = Command::new(env!("CARGO_BIN_EXE_ideal-lab"))
        .args(["verify", "right", "--n", "4..4", "--mn", "3..3"])
        .env("IDEAL_LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_pass_and_reports() {
    let out = run(&["verify", "right", "--n", "3..6", "--mn", "3..5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    let first = checks[0].as_object().unwrap();
    for key in [
        "class", "measure", "params", "expected", "measured", "pass", "ms",
    ] {
        assert!(first.contains_key(key), "{key}");
    }
    assert!(checks
        .iter()
        .any(|c| c["measure"] == "union" && c["params"]["m"] == 3 && c["params"]["n"] == 3));

    let out = run(&["verify", "left", "--n", "4..6", "--mn", "4..5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for c in v["checks"].as_array().unwrap() {
        if c["params"]["pairing"] == "dialect" {
            let mn = c["params"]["m"].as_u64().unwrap() * c["params"]["n"].as_u64().unwrap();
            assert_eq!(c["measured"], mn);
        }
    }
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "two_sided", "--n", "5..6", "--mn", "5..6"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    for format in ["csv", "markdown"] {
        let x = run(&[&args[..], &["--format", format]].concat());
        let y = run(&[&args[..], &["--format", format, "--jobs", "2"]].concat());
        assert_eq!(x.stdout, y.stdout);
        assert!(!x.stdout.is_empty());
    }
}

#[test]
fn corrupted_witness_fails() {
    let out = run(&[
        "verify", "right", "--n", "3..3", "--mn", "3..3", "--mutate", "a:1:1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["summary"]["fail"].as_u64().unwrap() > 0);
    // a mutation that breaks the ideal lets the semigroup outgrow the cap
    let out = run(&[
        "verify", "right", "--n", "3..3", "--mn", "3..3", "--mutate", "d:3:2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn timing_is_opt_in() {
    let args = ["verify", "right", "--n", "3..3", "--mn", "3..3"];
    let plain = json(&run(&args));
    assert!(plain["checks"][0]["ms"].is_null());
    let timed = json(&run(&[&args[..], &["--timing"]].concat()));
    assert!(timed["checks"][0]["ms"].is_u64());
}
