use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shintani"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn eval_examples() {
    let out = run(&["eval", "--n", "2", "--m", "1", "--f", "0,0", "--d", "0"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["value"], "1");

    let doc = json(&run(&["eval", "--n", "1", "--m", "0", "--f", "2"]));
    assert_eq!(doc["value"], "v^4*x1^-2 + v^4*x1^-1 + v^4 + v^4*x1 + v^4*x1^2");

    let out = run(&["eval", "--n", "2", "--m", "1", "--f", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert!(doc["error"]["message"]
        .as_str()
        .unwrap()
        .contains("f not dominant"));
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "constant", "--n", "2", "--m", "1"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["constant"], "1 + v^2");

    let out = run(&["verify", "shintani", "--n", "2", "--m", "1", "--K", "8"]);
    assert!(out.status.success());
    assert_eq!(out.stdout.windows(7).filter(|w| w == b"\"index\"").count(), 9);

    let out = run(&["verify", "cone", "--n", "3", "--m", "2", "--bound", "3"]);
    assert!(out.status.success());
    assert!(json(&out)["triples_enumerated"].as_u64().unwrap() > 0);

    let out = run(&["verify", "shintani", "--n", "3", "--m", "1", "--K", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_examples() {
    let doc = json(&run(&[
        "reduce", "--n", "2", "--m", "1", "--d", "0", "--a", "0", "--r", "1",
    ]));
    assert_eq!(doc["normal_form"]["d"], serde_json::json!([1]));
    assert_eq!(doc["normal_form"]["r"], serde_json::json!([0]));
    let trace = doc["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(trace.iter().filter(|s| s["before"] != s["after"]).count(), 1);

    let doc = json(&run(&[
        "reduce", "--n", "2", "--m", "1", "--d", "2", "--a", "1", "--r", "0",
    ]));
    assert!(doc["trace"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["before"] == s["after"]));

    let out = run(&[
        "reduce", "--n", "2", "--m", "1", "--d", "0", "--a", "0", "--r", "-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "InvalidTriple");
}

#[test]
fn series_tables() {
    let out = run(&["series", "--n", "2", "--m", "1", "--K", "0", "--csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "lhs,rhs,difference\n1,1,0\n"
    );

    let out = run(&["series", "--n", "2", "--m", "1", "--K", "4", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.ends_with(",0")));

    let out = run(&[
        "series", "--n", "2", "--m", "1", "--K", "3", "--mode", "numeric", "--csv",
    ]);
    assert!(out.status.success());
    for row in String::from_utf8(out.stdout).unwrap().lines().skip(1) {
        let diff: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(diff < 1e-9);
    }
}

#[test]
fn out_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("shintani-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.json");
    let args = ["eval", "--n", "2", "--m", "1", "--d", "1", "--f", "2,1"];
    let out = run(&[&["--out", path.to_str().unwrap()], &args[..]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run(&args).stdout);

    let threaded = Command::new(env!("CARGO_BIN_EXE_shintani"))
        .env("SHINTANI_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, written);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_thread_count_is_an_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_shintani"))
        .env("SHINTANI_THREADS", "zero")
        .args(["verify", "constant", "--n", "1", "--m", "0"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
