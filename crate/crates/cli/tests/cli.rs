use std::process::{Command, Output};

use serde_json::Value;

fn wedderkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedderkit"))
        .args(args)
        .env_remove("WEDDERKIT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const S3: &str = r#"{"kind":"metacyclic","m":3,"n":2,"t":0,"r":2}"#;
const C4: &str = r#"{"kind":"abelian","invariants":[4]}"#;
const C7: &str = r#"{"kind":"abelian","invariants":[7]}"#;

/// SL(2,3) as permutations of the nonzero vectors of F_3^2.
fn sl_2_3() -> String {
    let vectors: Vec<(u32, u32)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [u32; 4]| -> Vec<usize> {
        vectors
            .iter()
            .map(|&(x, y)| {
                let image = ((m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3);
                vectors.iter().position(|&w| w == image).unwrap()
            })
            .collect()
    };
    serde_json::json!({"kind": "permutations", "gens": [act([1, 1, 0, 1]), act([1, 0, 1, 1])]}).to_string()
}

#[test]
fn decompose_s3_over_q_zeta_3() {
    let out = wedderkit(&["decompose", "--group", S3, "--field", "Q(zeta_3)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["oracle"], 3);
    assert_eq!(v["minimal"], true);
    assert_eq!(v["rank"], 0);
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
    let raw = String::from_utf8(out.stdout.clone()).unwrap();
    let positions: Vec<usize> = ["field", "group", "components", "count", "oracle", "minimal", "rank"]
        .iter()
        .map(|k| raw.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    let first = &v["components"][0];
    assert_eq!(first["degree"], 2);
    assert_eq!(first["k"], 3);
}

#[test]
fn count_and_ffcount_examples() {
    let out = wedderkit(&["count", "--group", C4, "--field", "Q(zeta_4)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 4);

    let out = wedderkit(&["ffcount", "--group", C7, "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["minimal"], false);
}

#[test]
fn identical_jobs_give_identical_bytes() {
    let g = r#"{"kind":"metacyclic","m":7,"n":3,"t":0,"r":2}"#;
    for command in ["decompose", "count", "minimal", "rank"] {
        let a = wedderkit(&[command, "--group", g, "--field", "Q(zeta_3)"]);
        let b = wedderkit(&[command, "--group", g, "--field", "Q(zeta_3)"]);
        assert_eq!(a.status.code(), Some(0));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{command}");
    }
}

fn text_value(out: &Output, key: &str) -> String {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} line in {text}"))
        .to_string()
}

#[test]
fn text_and_json_agree() {
    let q8 = r#"{"kind":"metacyclic","m":4,"n":2,"t":2,"r":3}"#;
    for field in ["Q", "Q(zeta_4)", "Q(zeta_5)^{4}"] {
        let j = json(&wedderkit(&["rank", "--group", q8, "--field", field]));
        let t = wedderkit(&["rank", "--group", q8, "--field", field, "--format", "text"]);
        assert_eq!(text_value(&t, "rank"), j["rank"].to_string());

        let j = json(&wedderkit(&["count", "--group", q8, "--field", field]));
        let t = wedderkit(&["count", "--group", q8, "--field", field, "--format", "text"]);
        assert_eq!(text_value(&t, "count"), j["count"].to_string());
        assert_eq!(text_value(&t, "oracle"), j["oracle"].to_string());
    }
    let j = json(&wedderkit(&["ffcount", "--group", C7, "--q", "2"]));
    let t = wedderkit(&["ffcount", "--group", C7, "--q", "2", "--format", "text"]);
    assert_eq!(text_value(&t, "count"), j["count"].to_string());
}

#[test]
fn sl_2_3_exits_with_status_2_and_a_diagnostic() {
    let g = sl_2_3();
    let out = wedderkit(&["decompose", "--group", &g, "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(!v["found"].as_array().unwrap().is_empty());
    let residual = v["residual"].as_str().unwrap();
    assert!(!residual.is_empty() && residual != "0");
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));
}

#[test]
fn input_errors_exit_with_status_1() {
    for args in [
        vec!["count", "--field", "Q"],
        vec!["count", "--group", C4],
        vec!["count", "--group", C4, "--field", "Q(zeta_4)^{2}"],
        vec!["count", "--group", "{not json", "--field", "Q"],
        vec!["count", "--group", "/nonexistent/group.json", "--field", "Q"],
        vec!["ffcount", "--group", C7],
        vec!["ffcount", "--group", C7, "--q", "6"],
        vec!["ffcount", "--group", C7, "--q", "49"],
        vec!["count", "--group", C7, "--field", "Q", "--max-order", "5"],
        vec!["frobnicate"],
    ] {
        let out = wedderkit(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn max_order_from_the_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_wedderkit"))
            .args(["count", "--group", C7, "--field", "Q"])
            .env("WEDDERKIT_MAX_ORDER", bound)
            .output()
            .unwrap()
    };
    assert_eq!(run("6").status.code(), Some(1));
    assert_eq!(run("7").status.code(), Some(0));
}

#[test]
fn group_from_a_file_and_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("wedderkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let group = dir.join("s3.json");
    let report = dir.join("out.json");
    std::fs::write(&group, S3).unwrap();
    let out = wedderkit(&[
        "minimal",
        "--group",
        group.to_str().unwrap(),
        "--field",
        "Q(zeta_3)",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["minimal"], true);
    assert_eq!(v["metacyclic"]["corollaries"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_passes_on_the_corpus() {
    let out = wedderkit(&["verify", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.lines().last().unwrap().ends_with("failed: 0"));
}
