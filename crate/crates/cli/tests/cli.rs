use std::process::{Command, Output};

use serde_json::Value;

fn lapdiam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapdiam"))
        .args(args)
        .env_remove("LAPDIAM_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = lapdiam(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn spectrum_of_gndt_has_double_five() {
    let (code, v) = json(&["spectrum", "--family", "gndt:n=6,d=3,t=2"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["order"], 6);
    assert_eq!(r["diameter"], 3);
    let five = r["integer_eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["value"] == 5)
        .unwrap();
    assert!(five["multiplicity"].as_u64().unwrap() >= 2);
    assert_eq!(r["m"]["a"], 5);
    assert_eq!(r["m"]["exact"], 3);
    assert_eq!(r["m"]["numeric"], 3);
    assert_eq!(r["status"], "equality");
}

#[test]
fn spectrum_of_k4_minus_edge() {
    // K4 minus the edge 02.
    let (code, v) = json(&["spectrum", "--graph6", "Cn"]);
    assert_eq!(code, 0);
    let values: Vec<f64> = v["results"][0]["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (got, want) in values.iter().zip([4.0, 4.0, 2.0, 0.0]) {
        assert!((got - want).abs() < 1e-9, "{values:?}");
    }
    assert_eq!(v["results"][0]["integer_eigenvalues"][0]["multiplicity"], 2);
}

#[test]
fn spectrum_rejects_invalid_family() {
    let out = lapdiam(&["spectrum", "--family", "gndt:n=5,d=5,t=2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d <= n-2"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        &["spectrum"][..],
        &["spectrum", "--graph6", "C!"],
        &["spectrum", "--family", "gndt:n=6", "--eps", "-1"],
        &["spectrum", "--family", "gndt:n=6,d=3,t=2", "--eps", "0"],
        &["verify", "--n", "8"],
        &["verify", "--n", "9", "--allow-n8"],
        &["verify", "--n", "5", "--workers", "0"],
        &["extremal", "--n", "6", "--d", "5"],
        &["lemmas", "--id", "9.9"],
        &["lemmas", "--id", "complement", "--max-n", "8"],
        &["--mode", "approximate", "verify", "--n", "4"],
    ] {
        let out = lapdiam(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_six_has_no_violations() {
    let (code, v) = json(&["verify", "--n", "6"]);
    assert_eq!(code, 0);
    let counts = &v["summary"]["counts"];
    assert_eq!(counts["graphs"], 112);
    assert_eq!(counts["violations"], 0);
    assert_eq!(v["summary"]["pass"], true);
    let equality: Vec<&Value> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|t| t["equality_graphs"].as_array().unwrap())
        .collect();
    assert_eq!(equality.len(), counts["equality"].as_u64().unwrap() as usize);
    assert!(equality.iter().all(|e| e["family"].is_string()));
}

#[test]
fn verify_paths_are_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("paths.g6");
    let mut text = String::new();
    for n in 2..=12 {
        let g = lapdiam::Graph::path(n).unwrap();
        text.push_str(&lapdiam::graph6::encode(&g));
        text.push('\n');
    }
    // One disconnected graph: skipped, not judged.
    text.push_str("C?\n");
    std::fs::write(&path, text).unwrap();
    let (code, v) = json(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let counts = &v["summary"]["counts"];
    assert_eq!(counts["graphs"], 11);
    assert_eq!(counts["not_applicable"], 11);
    assert_eq!(counts["skipped_disconnected"], 1);
    assert_eq!(counts["strict"], 0);
    assert_eq!(counts["equality"], 0);
}

#[test]
fn verify_reports_bad_corpus_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g6");
    std::fs::write(&path, "Cn\nnot graph6 at all\n").unwrap();
    let out = lapdiam(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn reports_are_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "2", "3"] {
        let path = dir.path().join(format!("w{workers}.json"));
        let out = lapdiam(&[
            "verify",
            "--n",
            "7",
            "--workers",
            workers,
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let env = Command::new(env!("CARGO_BIN_EXE_lapdiam"))
        .args(["verify", "--n", "7", "--format", "json"])
        .env("LAPDIAM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, outputs[0]);
}

#[test]
fn extremal_examples() {
    for (n, d, classes) in [(6, 3, 2), (7, 4, 3), (5, 2, 1)] {
        let (code, v) = json(&["extremal", "--n", &n.to_string(), "--d", &d.to_string()]);
        assert_eq!(code, 0, "n={n} d={d}");
        let counts = &v["summary"]["counts"];
        assert_eq!(counts["equality"], classes);
        assert_eq!(counts["matched"], classes);
        assert_eq!(counts["missing"], 0);
    }
    let (_, v) = json(&["extremal", "--n", "5", "--d", "2"]);
    assert_eq!(v["results"][0]["matches"][0]["family"], "gndt:n=5,d=2,t=2");
}

#[test]
fn lemma_runs_pass_and_reproduce() {
    let (code, v) = json(&["lemmas", "--id", "4.3", "--max-n", "10"]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    assert!(!results.is_empty());
    assert!(results.iter().all(|r| r["lemma"] == "4.3" && r["pass"] == true));

    let args = ["lemmas", "--id", "weyl", "--trials", "200", "--seed", "7", "--format", "json"];
    let a = lapdiam(&args);
    let b = lapdiam(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = lapdiam(&["lemmas", "--id", "weyl", "--trials", "200", "--seed", "8", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn exact_mode_omits_numeric_counts() {
    let (code, v) = json(&["--mode", "exact", "spectrum", "--family", "gndra:n=7,d=4,r=2,a=1"]);
    assert_eq!(code, 0);
    assert!(v["results"][0]["m"]["numeric"].is_null());
    assert_eq!(v["results"][0]["m"]["exact"], 3);
    let (_, v) = json(&["--mode", "numeric", "spectrum", "--family", "gndra:n=7,d=4,r=2,a=1"]);
    assert!(v["results"][0]["integer_eigenvalues"].is_null());
    assert_eq!(v["results"][0]["m"]["numeric"], 3);
}

#[test]
fn table_output_ends_with_verdict() {
    let out = lapdiam(&["verify", "--n", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n  d"));
    assert!(text.trim_end().ends_with("PASS"));
}
