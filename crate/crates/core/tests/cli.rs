use std::process::{Command, Output};

use serde_json::Value;

fn wittkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wittkit(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn teichmuller_product_from_the_command_line() {
    assert_eq!(
        stdout(&["witt", "mul", "--ring", "Z", "--depth", "4", "1-2t", "1-3t"]),
        "1-6t\n"
    );
}

#[test]
fn ext_of_a_finite_group() {
    assert_eq!(
        stdout(&["abelian", "ext", "--group", "rank=0;torsion=4,12"]),
        "torsion=4,12\n"
    );
    let v = json(&["abelian", "ext", "--group", "rank=3;torsion=2"]);
    assert_eq!(v["rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([2]));
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&[
        "witt", "mul", "--ring", "Q", "--depth", "5", "1+1/2t", "1-t+t^3",
    ]);
    let doc = json(&[
        "witt", "mul", "--ring", "Q", "--depth", "5", "1+1/2t", "1-t+t^3",
    ]);
    let doc_str = serde_json::to_string(&doc).unwrap();
    // the JSON document decodes back to the same value
    assert_eq!(
        stdout(&["witt", "neg", "--ring", "Q", &doc_str]),
        stdout(&["witt", "neg", "--ring", "Q", "--depth", "5", text.trim()])
    );

    let text = stdout(&["wrat", "mul", "--ring", "Z", "(1-t)/(1+t)", "1-2t"]);
    let doc = json(&["wrat", "mul", "--ring", "Z", "(1-t)/(1+t)", "1-2t"]);
    let back = stdout(&[
        "wrat",
        "add",
        "--ring",
        "Z",
        &serde_json::to_string(&doc).unwrap(),
        "1",
    ]);
    assert_eq!(back, text);

    let doc = json(&[
        "groupring",
        "mul",
        "--group",
        "rank=1;torsion=2",
        "[1,0]+[0,1]",
        "[1,1]-2[0,0]",
    ]);
    let text = stdout(&[
        "groupring",
        "mul",
        "--group",
        "rank=1;torsion=2",
        "[1,0]+[0,1]",
        "[1,1]-2[0,0]",
    ]);
    let again = stdout(&[
        "groupring",
        "frob",
        "--p",
        "2",
        &serde_json::to_string(&doc).unwrap(),
    ]);
    let direct = stdout(&[
        "groupring",
        "frob",
        "--p",
        "2",
        "--group",
        "rank=1;torsion=2",
        "--",
        text.trim(),
    ]);
    assert_eq!(again, direct);
}

#[test]
fn ghost_round_trip() {
    let g = stdout(&[
        "witt",
        "ghost",
        "--ring",
        "Q",
        "--depth",
        "6",
        "1+3t-1/5t^2+2t^5",
    ]);
    assert_eq!(
        stdout(&["witt", "ghostinv", "--ring", "Q", "--", g.trim()]),
        "1+3t-1/5t^2+2t^5\n"
    );
}

#[test]
fn operators() {
    assert_eq!(
        stdout(&["witt", "versch", "--depth", "4", "--m", "2", "1-2t"]),
        "1-2t^2\n"
    );
    assert_eq!(
        stdout(&["witt", "frob", "--depth", "4", "--m", "2", "1-3t"]),
        "1-9t\n"
    );
    let phi = stdout(&["wrat", "phi", "--p", "3"]);
    let ghost = stdout(&["wrat", "ghost", "--depth", "6", phi.trim()]);
    assert_eq!(ghost, "-1,-1,2,-1,-1,2\n");
}

#[test]
fn operands_from_files() {
    let dir = std::env::temp_dir().join(format!("wittkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u.txt");
    std::fs::write(&path, "1-2t\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(
        stdout(&["witt", "mul", "--depth", "3", &arg, "1-5t"]),
        "1-10t\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_reporting() {
    let out = wittkit(&["witt", "mul", "--ring", "Z/0x", "--depth", "2", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--ring"));
    assert!(out.stdout.is_empty());

    let out = wittkit(&["witt", "frob", "--depth", "2", "--m", "3", "1-t"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["schema_version"], 1);
    assert_eq!(err["error"]["kind"], "truncation_too_shallow");

    let out = wittkit(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(wittkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn cohomology_commands() {
    assert_eq!(
        stdout(&["cohom", "table", "--group", "6", "--module", "4", "--degree", "2"]),
        "H^2 = torsion=2\n"
    );
    let v = json(&[
        "cohom", "table", "--group", "2", "--module", "0", "--action", "[[[-1]]]",
    ]);
    let inv: Vec<String> = v["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["invariants"].to_string())
        .collect();
    assert_eq!(
        inv,
        [
            r#"{"rank":0,"torsion":[]}"#,
            r#"{"rank":0,"torsion":[2]}"#,
            r#"{"rank":0,"torsion":[]}"#
        ]
    );
    assert_eq!(
        stdout(&[
            "cohom",
            "kummer",
            "--base-conductor",
            "3",
            "--radical",
            "2^(1/3)",
            "--sigma",
            "1",
            "--alpha",
            "y^2"
        ]),
        "2\n"
    );
    let sym = stdout(&[
        "cohom",
        "kummer",
        "--base-conductor",
        "4",
        "--radical",
        "2^(1/2)",
        "--symbol",
        "2",
    ]);
    assert_eq!(sym, "σ(0) ↦ 0\nσ(1) ↦ 1\n");
}

#[test]
fn resolvent_seed_is_honoured() {
    let args = [
        "cohom",
        "hilbert90",
        "--base-conductor",
        "5",
        "--radical",
        "2^(1/5)",
        "--sigma",
        "1",
        "--zeta",
        "3",
    ];
    let a = Command::new(env!("CARGO_BIN_EXE_wittkit"))
        .args(args)
        .env("WITTKIT_RESOLVENT_SEED", "11")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_wittkit"))
        .args(args)
        .env("WITTKIT_RESOLVENT_SEED", "11")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_wittkit"))
        .args(args)
        .env("WITTKIT_RESOLVENT_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn single_suite_report() {
    let out = stdout(&["verify", "--suite", "dual", "--seed", "1"]);
    assert!(out.lines().all(|l| !l.starts_with("FAIL")), "{out}");
    assert!(out.ends_with("0 failed\n"));
}
