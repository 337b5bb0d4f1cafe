//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use lapdiam::enumerate::{self, MAX_ORDER};
use lapdiam::lab::{self, Analysis, LemmaConfig, LemmaReport};
use lapdiam::{graph6, Graph, LemmaId, Mode};
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Graphs whose exact and numeric engines both ran, as graph6.
#[derive(Default)]
struct Touched(BTreeSet<String>);

impl Touched {
    fn reports(&mut self, reports: &[LemmaReport]) {
        self.0.extend(reports.iter().filter_map(|r| r.graph.clone()));
    }
}

fn lemma(id: LemmaId, max_n: usize, trials: usize, mode: Mode) -> Vec<LemmaReport> {
    let cfg = LemmaConfig {
        max_n,
        trials,
        seed: 42,
        mode,
        allow_n8: false,
    };
    lab::run_lemma(id, &cfg).unwrap_or_else(|e| panic!("lemma {id}: {e}"))
}

fn failures(reports: &[LemmaReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {}", r.lemma, r.params))
        .collect()
}

fn c1(touched: &mut Touched) -> Outcome {
    let mut classes = Vec::new();
    let mut problems = Vec::new();
    for n in 2..=MAX_ORDER {
        let out = Command::new(env!("CARGO_BIN_EXE_lapdiam"))
            .args(["verify", "--n", &n.to_string(), "--format", "json"])
            .output()
            .expect("binary runs");
        let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
        let counts = &v["summary"]["counts"];
        classes.push(counts["graphs"].as_u64().unwrap_or(0));
        if out.status.code() != Some(0) || counts["violations"] != 0 || counts["inconsistent"] != 0 {
            problems.push(format!("n={n}"));
        }
        let swept = enumerate::connected_classes(n, false).expect("enumerable");
        touched.0.extend(swept.iter().map(|c| c.as_str().to_string()));
    }
    let pass = problems.is_empty() && classes[3..] == [21, 112, 853];
    outcome(
        pass,
        format!("verify --n 2..7: classes {classes:?}, violations in {problems:?}"),
    )
}

fn c2(touched: &mut Touched) -> Outcome {
    let mut bad = Vec::new();
    let mut cells = 0;
    let mut equality = Vec::new();
    for n in 4..=MAX_ORDER {
        for d in 2..=n - 2 {
            let rec = enumerate::extremal_census(n, d, false).expect("census");
            cells += 1;
            if !rec.pass() {
                bad.push(format!("({n},{d})"));
            }
            equality.push(((n, d), rec.equality.len()));
            touched.0.extend(rec.equality);
        }
    }
    let count = |key| equality.iter().find(|(k, _)| *k == key).map(|(_, c)| *c);
    let pass = bad.is_empty() && count((6, 3)) == Some(2) && count((7, 4)) == Some(3);
    outcome(
        pass,
        format!(
            "{cells} (n,d) cells; (6,3) -> {:?}, (7,4) -> {:?} classes; mismatched {bad:?}",
            count((6, 3)),
            count((7, 4))
        ),
    )
}

fn c3(touched: &mut Touched) -> Outcome {
    let mut reports = lemma(LemmaId::Gndt, 12, 0, Mode::Both);
    reports.extend(lemma(LemmaId::Gndra, 12, 0, Mode::Both));
    touched.reports(&reports);
    let bad = failures(&reports);
    outcome(
        bad.is_empty() && !reports.is_empty(),
        format!("{} gndt/gndra instances n<=12, exact; failing {bad:?}", reports.len()),
    )
}

fn c4(touched: &mut Touched) -> Outcome {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for id in [LemmaId::HAb, LemmaId::HAbc, LemmaId::PPlusPlus, LemmaId::GndtEdge, LemmaId::GndraEdge] {
        let reports = lemma(id, 10, 0, Mode::Both);
        touched.reports(&reports);
        parts.push(format!("{id}:{}", reports.len()));
        if reports.is_empty() {
            bad.push(format!("{id} empty"));
        }
        bad.extend(failures(&reports));
    }
    outcome(
        bad.is_empty(),
        format!("n<=10 strict + exact boundary [{}]; failing {bad:?}", parts.join(" ")),
    )
}

fn c5(touched: &mut Touched) -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=200 {
        let mode = if n <= 50 { Mode::Both } else { Mode::Numeric };
        let r = lab::path_lemma(n, mode).expect("path");
        if !r.pass {
            bad.push(n);
        }
        if n <= 50 {
            touched.0.extend(r.graph);
        }
    }
    outcome(
        bad.is_empty(),
        format!("closed form within 1e-8 for n<=200, m[3,n] = floor(n/3) exact for n<=50; failing n {bad:?}"),
    )
}

fn c6(touched: &mut Touched) -> Outcome {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for (id, max_n, trials) in [
        (LemmaId::Weyl, LemmaId::Weyl.default_max_n(), 1000),
        (LemmaId::Interlacing, LemmaId::Interlacing.default_max_n(), 1000),
        (LemmaId::EdgeInterlacing, 6, 0),
        (LemmaId::Complement, 7, 0),
        (LemmaId::MaxDegree, 6, 0),
    ] {
        let reports = lemma(id, max_n, trials, Mode::Both);
        touched.reports(&reports);
        parts.push(format!("{id}:{}", reports.len()));
        bad.extend(failures(&reports));
    }
    outcome(
        bad.is_empty(),
        format!("slack 1e-8 [{}]; failing {:?}", parts.join(" "), &bad[..bad.len().min(5)]),
    )
}

fn c7(touched: &Touched) -> Outcome {
    let mut disagree = Vec::new();
    for g6 in &touched.0 {
        let g: Graph = graph6::decode(g6).expect("touched graphs are graph6");
        if !Analysis::of_graph(&g).engines_agree() {
            disagree.push(g6.clone());
        }
    }
    outcome(
        disagree.is_empty() && !touched.0.is_empty(),
        format!(
            "{} distinct graphs, m[k,n] exact = numeric for all k; disagreeing {disagree:?}",
            touched.0.len()
        ),
    )
}

fn c8() -> Outcome {
    let counts: Vec<usize> = (1..=MAX_ORDER)
        .map(|n| enumerate::connected_classes(n, false).expect("enumerable").len())
        .collect();
    outcome(
        counts == [1, 1, 2, 6, 21, 112, 853],
        format!("connected classes n=1..7: {counts:?}"),
    )
}

fn main() -> ExitCode {
    let mut touched = Touched::default();
    let mut all_pass = true;
    let mut report = |name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        all_pass &= o.pass;
        println!(
            "{} {name} {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report("C1", &mut || c1(&mut touched));
    report("C2", &mut || c2(&mut touched));
    report("C3", &mut || c3(&mut touched));
    report("C4", &mut || c4(&mut touched));
    report("C5", &mut || c5(&mut touched));
    report("C6", &mut || c6(&mut touched));
    report("C7", &mut || c7(&touched));
    report("C8", &mut c8);
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
