use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use lapdiam::enumerate::{self, CensusRecord};
use lapdiam::lab::{self, Analysis, BoundStatus, Exclusion, LemmaConfig, LemmaReport};
use lapdiam::{graph6, spectra, FamilySpec, Graph, LemmaId, Mode};
use serde::Serialize;

use crate::report::{summary_lines, table, Report, Summary};

/// A finished command: both renderings and the verdict.
pub struct Rendered {
    pub json: String,
    pub table: String,
    pub pass: bool,
}

fn render<C: Serialize, R: Serialize>(report: Report<C, R>, body: String) -> Rendered {
    Rendered {
        json: report.to_json(),
        table: body + &summary_lines(&report.summary),
        pass: report.summary.pass,
    }
}

fn counts<const N: usize>(pairs: [(&str, usize); N]) -> BTreeMap<String, usize> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn status_of(g: &Graph, d: Option<usize>, m: Option<usize>) -> BoundStatus {
    match (d, m) {
        _ if g.is_path() => BoundStatus::NotApplicable(Exclusion::Path),
        (Some(d), Some(m)) if d >= 2 => {
            let bound = g.order() - d;
            if m > bound {
                BoundStatus::Violation
            } else if m == bound {
                BoundStatus::Equality
            } else {
                BoundStatus::Strict
            }
        }
        _ => BoundStatus::NotApplicable(Exclusion::SmallDiameter),
    }
}

#[derive(Debug, Serialize)]
pub struct SpectrumConfig {
    pub family: Option<String>,
    pub graph6: Option<String>,
    pub mode: Mode,
    pub eps: f64,
}

#[derive(Debug, Serialize)]
struct IntegerEigenvalue {
    value: i64,
    multiplicity: usize,
}

#[derive(Debug, Serialize)]
struct BoundCount {
    a: usize,
    b: usize,
    bound: usize,
    exact: Option<usize>,
    numeric: Option<usize>,
}

#[derive(Debug, Serialize)]
struct SpectrumResult {
    graph: String,
    family: Option<String>,
    order: usize,
    diameter: Option<usize>,
    spectrum: Vec<f64>,
    tol: f64,
    integer_eigenvalues: Option<Vec<IntegerEigenvalue>>,
    m: Option<BoundCount>,
    status: String,
}

pub fn spectrum(cfg: SpectrumConfig) -> Result<Rendered> {
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        bail!("tolerance must be positive, got {}", cfg.eps);
    }
    let (g, family) = match (&cfg.family, &cfg.graph6) {
        (Some(text), None) => {
            let spec: FamilySpec = text.parse()?;
            spec.validate()?;
            (spec.build()?, Some(spec.to_string()))
        }
        (None, Some(line)) => (graph6::decode(line.trim())?, None),
        _ => bail!("give exactly one of --family or --graph6"),
    };
    let n = g.order();
    let diameter = g.diameter().ok();
    let analysis = Analysis::of_graph(&g);
    let numeric = analysis.spectrum();
    let integer_eigenvalues = cfg.mode.exact().then(|| {
        spectra::integer_eigenvalues(analysis.poly(), n)
            .into_iter()
            .rev()
            .map(|(value, multiplicity)| IntegerEigenvalue { value, multiplicity })
            .collect()
    });
    let m = diameter.filter(|&d| d >= 2).map(|d| {
        let (lo, hi) = (n - d + 2, n);
        BoundCount {
            a: lo,
            b: hi,
            bound: n - d,
            exact: cfg.mode.exact().then(|| analysis.count_exact(lo as i64, hi as i64)),
            numeric: cfg
                .mode
                .numeric()
                .then(|| numeric.count_in(lo as f64, hi as f64, cfg.eps)),
        }
    });
    let decided = m.as_ref().and_then(|c| c.exact.or(c.numeric));
    let status = status_of(&g, diameter, decided);
    let agree = m.as_ref().is_none_or(|c| match (c.exact, c.numeric) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    });
    let pass = status != BoundStatus::Violation && agree;

    let result = SpectrumResult {
        graph: graph6::encode(&g),
        family,
        order: n,
        diameter,
        spectrum: numeric.values().to_vec(),
        tol: numeric.tol(),
        integer_eigenvalues,
        m,
        status: status.to_string(),
    };

    let mut body = String::new();
    body.push_str(&format!("graph     {}\n", result.graph));
    if let Some(f) = &result.family {
        body.push_str(&format!("family    {f}\n"));
    }
    body.push_str(&format!("order     {n}\n"));
    body.push_str(&format!(
        "diameter  {}\n",
        diameter.map_or("infinite".to_string(), |d| d.to_string())
    ));
    let values: Vec<String> = result.spectrum.iter().map(|x| format!("{x:.10}")).collect();
    body.push_str(&format!("spectrum  {}  (tol {:e})\n", values.join(" "), result.tol));
    if let Some(ints) = &result.integer_eigenvalues {
        let parts: Vec<String> = ints.iter().map(|e| format!("{}^{}", e.value, e.multiplicity)).collect();
        body.push_str(&format!("integer   {}\n", parts.join(" ")));
    }
    if let Some(c) = &result.m {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
        body.push_str(&format!(
            "m[{},{}]    exact {}  numeric {}  bound {}\n",
            c.a,
            c.b,
            show(c.exact),
            show(c.numeric),
            c.bound
        ));
    }
    body.push_str(&format!("status    {}\n", result.status));

    let summary = Summary {
        pass,
        counts: counts([("violations", usize::from(status == BoundStatus::Violation))]),
    };
    Ok(render(
        Report {
            command: "spectrum",
            config: cfg,
            results: vec![result],
            summary,
        },
        body,
    ))
}

#[derive(Debug, Serialize)]
pub struct VerifyConfig {
    pub n: Option<usize>,
    pub input: Option<PathBuf>,
    pub mode: Mode,
    pub allow_n8: bool,
}

#[derive(Debug, Serialize)]
struct EqualityGraph {
    graph: String,
    family: Option<FamilySpec>,
}

#[derive(Debug, Default, Serialize)]
struct Tally {
    n: usize,
    d: usize,
    graphs: usize,
    strict: usize,
    equality: usize,
    not_applicable: usize,
    violations: usize,
    inconsistent: usize,
    unmatched: usize,
    equality_graphs: Vec<EqualityGraph>,
    violation_graphs: Vec<String>,
}

pub fn verify(cfg: VerifyConfig) -> Result<Rendered> {
    let (graphs, skipped) = match (cfg.n, &cfg.input) {
        (Some(n), None) => (enumerate::enumerate_connected(n, cfg.allow_n8)?, 0),
        (None, Some(path)) => {
            let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            let all = graph6::read_corpus(BufReader::new(file))
                .with_context(|| format!("cannot read {}", path.display()))?;
            let total = all.len();
            let connected: Vec<Graph> = all.into_iter().filter(Graph::is_connected).collect();
            let skipped = total - connected.len();
            (connected, skipped)
        }
        _ => bail!("give exactly one of --n or --input"),
    };
    let verdicts = enumerate::verify_graphs(&graphs, cfg.mode)?;

    let mut tallies: BTreeMap<(usize, usize), Tally> = BTreeMap::new();
    for (g, v) in graphs.iter().zip(&verdicts) {
        let t = tallies.entry((v.n, v.d)).or_insert_with(|| Tally {
            n: v.n,
            d: v.d,
            ..Tally::default()
        });
        t.graphs += 1;
        if v.engines_agree == Some(false) {
            t.inconsistent += 1;
        }
        match v.status {
            BoundStatus::Strict => t.strict += 1,
            BoundStatus::NotApplicable(_) => t.not_applicable += 1,
            BoundStatus::Violation => {
                t.violations += 1;
                t.violation_graphs.push(v.graph.clone());
            }
            BoundStatus::Equality => {
                t.equality += 1;
                let family = lab::find_family(g)?.spec;
                if family.is_none() {
                    t.unmatched += 1;
                }
                t.equality_graphs.push(EqualityGraph {
                    graph: v.graph.clone(),
                    family,
                });
            }
        }
    }
    let results: Vec<Tally> = tallies.into_values().collect();
    let sum = |f: fn(&Tally) -> usize| results.iter().map(f).sum::<usize>();
    let summary_counts = counts([
        ("graphs", graphs.len()),
        ("skipped_disconnected", skipped),
        ("strict", sum(|t| t.strict)),
        ("equality", sum(|t| t.equality)),
        ("not_applicable", sum(|t| t.not_applicable)),
        ("violations", sum(|t| t.violations)),
        ("inconsistent", sum(|t| t.inconsistent)),
        ("unmatched", sum(|t| t.unmatched)),
    ]);
    let pass = ["violations", "inconsistent", "unmatched"]
        .iter()
        .all(|k| summary_counts[*k] == 0);

    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|t| {
            [t.n, t.d, t.graphs, t.strict, t.equality, t.not_applicable, t.violations, t.inconsistent]
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();
    let mut body = table(
        &["n", "d", "graphs", "strict", "equality", "n/a", "violations", "inconsistent"],
        &rows,
    );
    for t in &results {
        for e in &t.equality_graphs {
            let family = e.family.map_or("unmatched".to_string(), |f| f.to_string());
            body.push_str(&format!("equality  n={} d={}  {}  {}\n", t.n, t.d, e.graph, family));
        }
        for g in &t.violation_graphs {
            body.push_str(&format!("VIOLATION n={} d={}  {}\n", t.n, t.d, g));
        }
    }
    Ok(render(
        Report {
            command: "verify",
            config: cfg,
            results,
            summary: Summary {
                pass,
                counts: summary_counts,
            },
        },
        body,
    ))
}

#[derive(Debug, Serialize)]
pub struct ExtremalConfig {
    pub n: usize,
    pub d: usize,
    pub mode: Mode,
    pub allow_n8: bool,
}

pub fn extremal(cfg: ExtremalConfig) -> Result<Rendered> {
    let record: CensusRecord = enumerate::extremal_census_with(cfg.n, cfg.d, cfg.allow_n8, cfg.mode)?;
    let summary = Summary {
        pass: record.pass(),
        counts: counts([
            ("graphs", record.total),
            ("equality", record.equality.len()),
            ("matched", record.matches.len()),
            ("unmatched", record.unmatched.len()),
            ("missing", record.missing.len()),
            ("violations", record.violations.len()),
            ("inconsistent", record.inconsistent.len()),
        ]),
    };
    let mut rows: Vec<Vec<String>> = record
        .matches
        .iter()
        .map(|m| vec![m.graph.clone(), m.family.to_string()])
        .collect();
    rows.extend(record.unmatched.iter().map(|g| vec![g.clone(), "unmatched".to_string()]));
    rows.extend(record.missing.iter().map(|s| vec!["-".to_string(), format!("{s} (missing)")]));
    rows.extend(record.violations.iter().map(|g| vec![g.clone(), "VIOLATION".to_string()]));
    let body = format!(
        "n={} d={}: {} graphs, {} equality classes\n{}",
        record.n,
        record.d,
        record.total,
        record.equality.len(),
        table(&["graph6", "family"], &rows)
    );
    Ok(render(
        Report {
            command: "extremal",
            config: cfg,
            results: vec![record],
            summary,
        },
        body,
    ))
}

#[derive(Debug, Serialize)]
pub struct LemmasConfig {
    pub id: Option<String>,
    pub max_n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub allow_n8: bool,
}

pub fn lemmas(cfg: LemmasConfig) -> Result<Rendered> {
    let ids: Vec<LemmaId> = match &cfg.id {
        Some(id) => vec![id.parse()?],
        None => LemmaId::ALL.to_vec(),
    };
    let configs: Vec<(LemmaId, LemmaConfig)> = ids
        .iter()
        .map(|&id| {
            let c = LemmaConfig {
                max_n: cfg.max_n.unwrap_or(id.default_max_n()),
                trials: cfg.trials,
                seed: cfg.seed,
                mode: cfg.mode,
                allow_n8: cfg.allow_n8,
            };
            c.validate(id).map(|()| (id, c))
        })
        .collect::<Result<_, _>>()?;

    let mut results: Vec<LemmaReport> = Vec::new();
    let mut rows = Vec::new();
    let mut summary_counts = BTreeMap::new();
    for (id, c) in &configs {
        let reports = lab::run_lemma(*id, c)?;
        let passed = reports.iter().filter(|r| r.pass).count();
        let failed = reports.len() - passed;
        summary_counts.insert(format!("{id}:pass"), passed);
        summary_counts.insert(format!("{id}:fail"), failed);
        rows.push(vec![
            id.to_string(),
            c.max_n.to_string(),
            reports.len().to_string(),
            passed.to_string(),
            failed.to_string(),
        ]);
        results.extend(reports);
    }
    let failures: Vec<&LemmaReport> = results.iter().filter(|r| !r.pass).collect();
    let mut body = table(&["lemma", "max_n", "instances", "pass", "fail"], &rows);
    for r in &failures {
        body.push_str(&format!("FAIL {} {}\n", r.lemma, r.params));
        for c in r.checks.iter().filter(|c| !c.pass) {
            body.push_str(&format!("  {}  {}\n", c.relation, c.detail));
        }
    }
    let pass = failures.is_empty();
    Ok(render(
        Report {
            command: "lemmas",
            config: cfg,
            results,
            summary: Summary {
                pass,
                counts: summary_counts,
            },
        },
        body,
    ))
}
