//! Executable checks: the bound `m_G[n-d+2, n] <= n-d`, its equality
//! classification, and the supporting spectral lemmas.
//!
//! Every decision that sits on an integer boundary is made by the exact
//! engine. Floating-point results are reported alongside, and in
//! [`Mode::Both`] any disagreement between the two engines is itself a
//! failed check.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{self, EnumError};
use crate::families::{valid_specs, FamilyError, FamilyKind, FamilySpec};
use crate::graph::{Graph, GraphError};
use crate::graph6;
use crate::iso;
use crate::jacobi::{self, Spectrum};
use crate::matrix::IntegerSymmetricMatrix;
use crate::poly::{integer, IntegerPolynomial, RootCounter};
use crate::spectra::{self, NUMERIC_EPS};

/// Slack allowed in floating-point inequality checks.
pub const SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("{u}{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("index subset is empty or out of range")]
    BadSubset,
    #[error("matrices have different orders")]
    OrderMismatch,
    #[error("indices i={i}, j={j} out of range for order {n}")]
    BadIndices { i: usize, j: usize, n: usize },
    #[error("graph is not an equality case")]
    NotEquality,
    #[error("lemma {lemma} does not apply to {spec}")]
    WrongSpec { lemma: LemmaId, spec: FamilySpec },
    #[error("edge class {class} does not apply to {spec}")]
    EmptyEdgeClass { class: EdgeClass, spec: FamilySpec },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Which engines run: exact decides, numeric reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    #[default]
    Both,
}

impl Mode {
    pub fn exact(self) -> bool {
        self != Mode::Numeric
    }

    pub fn numeric(self) -> bool {
        self != Mode::Exact
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "both" => Ok(Mode::Both),
            _ => Err(format!("unknown mode {s:?} (expected exact, numeric or both)")),
        }
    }
}

/// Exact and numeric spectral data for one symmetric integer matrix.
#[derive(Debug, Clone)]
pub struct Analysis {
    order: usize,
    counter: RootCounter,
    spectrum: Spectrum,
}

impl Analysis {
    pub fn of_graph(g: &Graph) -> Self {
        Self::of_matrix(&spectra::laplacian(g))
    }

    pub fn of_matrix(m: &IntegerSymmetricMatrix) -> Self {
        let poly = spectra::char_poly(m).expect("integer matrices have exact Faddeev-LeVerrier steps");
        let spectrum = jacobi::numeric_spectrum(m).expect("Jacobi converges on small integer matrices");
        Analysis {
            order: m.order(),
            counter: RootCounter::new(poly).expect("characteristic polynomials are monic"),
            spectrum,
        }
    }

    pub fn poly(&self) -> &IntegerPolynomial {
        self.counter.poly()
    }

    pub fn counter(&self) -> &RootCounter {
        &self.counter
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Exact `m[a, b]` for integer endpoints.
    pub fn count_exact(&self, a: i64, b: i64) -> usize {
        self.counter.count_closed(&integer(a), &integer(b))
    }

    /// Numeric `m[a, b]` with the standard window.
    pub fn count_numeric(&self, a: i64, b: i64) -> usize {
        if a > b {
            return 0;
        }
        self.spectrum.count_in(a as f64, b as f64, NUMERIC_EPS)
    }

    /// Exact multiplicity of the eigenvalue `r`.
    pub fn multiplicity(&self, r: i64) -> usize {
        self.counter.multiplicity(&integer(r))
    }

    /// `mu_k`, 1-based.
    pub fn mu(&self, k: usize) -> f64 {
        self.spectrum.nth(k)
    }

    /// Whether both engines give the same `m[k, n]` for every integer
    /// `k` in `0..=n`.
    pub fn engines_agree(&self) -> bool {
        let n = self.order as i64;
        (0..=n).all(|k| self.count_exact(k, n) == self.count_numeric(k, n))
    }
}

/// Why the bound is not evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exclusion {
    Path,
    SmallDiameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Strict,
    Equality,
    Violation,
    NotApplicable(Exclusion),
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundStatus::Strict => "strict",
            BoundStatus::Equality => "equality",
            BoundStatus::Violation => "violation",
            BoundStatus::NotApplicable(Exclusion::Path) => "not-applicable:path",
            BoundStatus::NotApplicable(Exclusion::SmallDiameter) => "not-applicable:d<2",
        })
    }
}

impl Serialize for BoundStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of evaluating `m_G[n-d+2, n]` against `n - d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub graph: String,
    pub n: usize,
    pub d: usize,
    /// Exact count; absent in numeric mode and when `d < 2`.
    pub m: Option<usize>,
    pub m_numeric: Option<usize>,
    pub bound: usize,
    pub status: BoundStatus,
    /// Exact and numeric `m[k, n]` agree for all integers `k`; only in
    /// [`Mode::Both`].
    pub engines_agree: Option<bool>,
}

impl BoundVerdict {
    /// No violation and no engine disagreement.
    pub fn pass(&self) -> bool {
        self.status != BoundStatus::Violation && self.engines_agree != Some(false)
    }
}

pub fn check_bound(g: &Graph) -> Result<BoundVerdict, LabError> {
    check_bound_with(g, Mode::Both)
}

pub fn check_bound_with(g: &Graph, mode: Mode) -> Result<BoundVerdict, LabError> {
    if !g.is_connected() {
        return Err(LabError::Disconnected);
    }
    let n = g.order();
    let d = g.diameter()?;
    let bound = n - d;
    let exclusion = if g.is_path() {
        Some(Exclusion::Path)
    } else if d < 2 {
        Some(Exclusion::SmallDiameter)
    } else {
        None
    };
    let (mut m, mut m_numeric, mut engines_agree) = (None, None, None);
    if d >= 2 {
        let lo = (n - d + 2) as i64;
        let hi = n as i64;
        match mode {
            Mode::Exact => {
                let counter = RootCounter::new(spectra::laplacian_char_poly(g)).expect("monic");
                m = Some(counter.count_closed(&integer(lo), &integer(hi)));
            }
            Mode::Numeric => {
                let s = spectra::laplacian_spectrum(g);
                m_numeric = Some(s.count_in(lo as f64, hi as f64, NUMERIC_EPS));
            }
            Mode::Both => {
                let a = Analysis::of_graph(g);
                m = Some(a.count_exact(lo, hi));
                m_numeric = Some(a.count_numeric(lo, hi));
                engines_agree = Some(a.engines_agree());
            }
        }
    }
    let status = match (exclusion, m.or(m_numeric)) {
        (Some(e), _) => BoundStatus::NotApplicable(e),
        (None, Some(m)) if m > bound => BoundStatus::Violation,
        (None, Some(m)) if m == bound => BoundStatus::Equality,
        _ => BoundStatus::Strict,
    };
    Ok(BoundVerdict {
        graph: graph6::encode(g),
        n,
        d,
        m,
        m_numeric,
        bound,
        status,
        engines_agree,
    })
}

/// An equality graph identified as a canonical family member.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMatch {
    pub spec: Option<FamilySpec>,
    /// `witness[v]` is the family vertex that `v` maps to.
    pub witness: Option<Vec<usize>>,
}

impl FamilyMatch {
    pub fn is_match(&self) -> bool {
        self.spec.is_some()
    }
}

/// Searches the canonical family specs of the graph's order and diameter
/// for an isomorphic member. No precondition on the spectrum.
pub fn find_family(g: &Graph) -> Result<FamilyMatch, LabError> {
    if !g.is_connected() {
        return Err(LabError::Disconnected);
    }
    let (n, d) = (g.order(), g.diameter()?);
    for spec in crate::families::canonical_specs(n, d) {
        let family = spec.build()?;
        if let Some(map) = iso::find_isomorphism(g, &family) {
            assert!(iso::is_isomorphism(g, &family, &map));
            return Ok(FamilyMatch {
                spec: Some(spec),
                witness: Some(map),
            });
        }
    }
    Ok(FamilyMatch {
        spec: None,
        witness: None,
    })
}

/// The family match of an equality graph; `spec: None` on an equality
/// graph would contradict the characterization.
pub fn classify_equality(g: &Graph) -> Result<FamilyMatch, LabError> {
    if check_bound_with(g, Mode::Exact)?.status != BoundStatus::Equality {
        return Err(LabError::NotEquality);
    }
    find_family(g)
}

/// Lemma identifiers accepted by [`run_lemma`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    PathSpectrum,
    MaxDegree,
    Weyl,
    Interlacing,
    EdgeInterlacing,
    Complement,
    Gndt,
    Gndra,
    HAb,
    HAbc,
    PPlusPlus,
    GndtEdge,
    GndraEdge,
}

impl LemmaId {
    pub const ALL: [LemmaId; 13] = [
        LemmaId::PathSpectrum,
        LemmaId::MaxDegree,
        LemmaId::Weyl,
        LemmaId::Interlacing,
        LemmaId::EdgeInterlacing,
        LemmaId::Complement,
        LemmaId::Gndt,
        LemmaId::Gndra,
        LemmaId::HAb,
        LemmaId::HAbc,
        LemmaId::PPlusPlus,
        LemmaId::GndtEdge,
        LemmaId::GndraEdge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::PathSpectrum => "2.1",
            LemmaId::MaxDegree => "2.2",
            LemmaId::Weyl => "2.3",
            LemmaId::Interlacing => "2.4",
            LemmaId::EdgeInterlacing => "2.5",
            LemmaId::Complement => "complement",
            LemmaId::Gndt => "2.6",
            LemmaId::Gndra => "2.7",
            LemmaId::HAb => "4.1",
            LemmaId::HAbc => "4.2",
            LemmaId::PPlusPlus => "4.3",
            LemmaId::GndtEdge => "4.4",
            LemmaId::GndraEdge => "4.5",
        }
    }

    /// Default `max_n` for the parameter grid.
    pub fn default_max_n(self) -> usize {
        match self {
            LemmaId::PathSpectrum => 50,
            LemmaId::MaxDegree | LemmaId::EdgeInterlacing => 6,
            LemmaId::Complement => 7,
            LemmaId::Weyl | LemmaId::Interlacing => 8,
            _ => 10,
        }
    }

    /// Family kind whose grid the lemma runs over, if any.
    pub fn family_kind(self) -> Option<FamilyKind> {
        match self {
            LemmaId::Gndt | LemmaId::GndtEdge => Some(FamilyKind::Gndt),
            LemmaId::Gndra | LemmaId::GndraEdge => Some(FamilyKind::Gndra),
            LemmaId::HAb => Some(FamilyKind::HAb),
            LemmaId::HAbc => Some(FamilyKind::HAbc),
            LemmaId::PPlusPlus => Some(FamilyKind::PPlusPlus),
            _ => None,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weyl" => return Ok(LemmaId::Weyl),
            "interlacing" => return Ok(LemmaId::Interlacing),
            _ => {}
        }
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| LabError::UnknownLemma(s.to_string()))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One claimed relation and its evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub relation: String,
    pub exact: bool,
    /// Computed sides or other evidence.
    pub detail: String,
    /// Distance from failure for numeric inequalities (negative means
    /// violated before slack).
    pub margin: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub params: String,
    pub graph: Option<String>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl LemmaReport {
    fn new(lemma: LemmaId, params: impl Into<String>, graph: Option<&Graph>) -> Self {
        LemmaReport {
            lemma,
            params: params.into(),
            graph: graph.map(graph6::encode),
            checks: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    fn exact(&mut self, relation: impl Into<String>, detail: impl Into<String>, pass: bool) {
        self.push(Check {
            relation: relation.into(),
            exact: true,
            detail: detail.into(),
            margin: None,
            pass,
        });
    }

    /// `margin >= -SLACK` passes.
    fn numeric(&mut self, relation: impl Into<String>, detail: impl Into<String>, margin: f64) {
        self.push(Check {
            relation: relation.into(),
            exact: false,
            detail: detail.into(),
            margin: Some(margin),
            pass: margin >= -SLACK,
        });
    }

    fn agreement(&mut self, a: &Analysis) {
        self.exact("exact and numeric m[k,n] agree for k = 0..n", "", a.engines_agree());
    }
}

/// Path spectrum: closed form against Jacobi, and in exact mode
/// `m_{P_n}[3, n] = floor(n/3)`.
pub fn path_lemma(n: usize, mode: Mode) -> Result<LemmaReport, LabError> {
    let g = Graph::path(n)?;
    let mut r = LemmaReport::new(LemmaId::PathSpectrum, format!("n={n}"), Some(&g));
    if mode.numeric() {
        let closed = spectra::path_spectrum_closed_form(n);
        let numeric = spectra::laplacian_spectrum(&g);
        let worst = closed
            .values()
            .iter()
            .zip(numeric.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        r.numeric(
            "|4 sin^2((n-j)pi/2n) - mu_j(P_n)| <= 1e-8 for all j",
            format!("max deviation {worst:e}"),
            SLACK - worst,
        );
    }
    if mode.exact() {
        let counter = RootCounter::new(spectra::laplacian_char_poly(&g)).expect("monic");
        let m = counter.count_closed(&integer(3), &integer(n as i64));
        r.exact("m[3,n] = floor(n/3)", format!("m = {m}"), m == n / 3);
        if n >= 6 {
            r.exact("m[3,n] >= 2 for n >= 6", format!("m = {m}"), m >= 2);
        }
    }
    Ok(r)
}

/// `mu_1 >= Delta + 1`, and for connected graphs equality exactly when
/// `Delta = n - 1`.
pub fn max_degree_bound_check(g: &Graph, mode: Mode) -> Result<LemmaReport, LabError> {
    if g.edge_count() == 0 {
        return Err(LabError::Edgeless);
    }
    let n = g.order();
    let delta = g.max_degree();
    let target = delta as i64 + 1;
    let a = Analysis::of_graph(g);
    let mut r = LemmaReport::new(LemmaId::MaxDegree, format!("n={n},Delta={delta}"), Some(g));
    if mode.numeric() {
        let mu1 = a.mu(1);
        r.numeric("mu_1 >= Delta+1", format!("mu_1 = {mu1:.12}, Delta+1 = {target}"), mu1 - target as f64);
    }
    if mode.exact() {
        let geq = a.counter().count_geq(&integer(target));
        r.exact("mu_1 >= Delta+1", format!("roots >= {target}: {geq}"), geq >= 1);
        if g.is_connected() {
            let equal = geq >= 1 && a.counter().count_gt(&integer(target)) == 0;
            r.exact(
                "mu_1 = Delta+1 iff Delta = n-1",
                format!("mu_1 = Delta+1: {equal}, Delta = n-1: {}", delta + 1 == n),
                equal == (delta + 1 == n),
            );
        }
    }
    if mode == Mode::Both {
        r.agreement(&a);
    }
    Ok(r)
}

fn eigenvalues(m: &IntegerSymmetricMatrix) -> Vec<f64> {
    jacobi::numeric_spectrum(m)
        .expect("Jacobi converges on small integer matrices")
        .values()
        .to_vec()
}

/// Weyl's inequality `rho_{i+j-1}(A+B) <= rho_i(A) + rho_j(B)` for one
/// index pair.
pub fn weyl_check(
    a: &IntegerSymmetricMatrix,
    b: &IntegerSymmetricMatrix,
    i: usize,
    j: usize,
) -> Result<LemmaReport, LabError> {
    let n = a.order();
    if b.order() != n {
        return Err(LabError::OrderMismatch);
    }
    if i == 0 || j == 0 || i + j - 1 > n {
        return Err(LabError::BadIndices { i, j, n });
    }
    let (ra, rb, rs) = (eigenvalues(a), eigenvalues(b), eigenvalues(&(a + b)));
    let mut r = LemmaReport::new(LemmaId::Weyl, format!("n={n},i={i},j={j}"), None);
    let lhs = rs[i + j - 2];
    let rhs = ra[i - 1] + rb[j - 1];
    r.numeric(
        "rho_{i+j-1}(A+B) <= rho_i(A) + rho_j(B)",
        format!("{lhs:.12} <= {rhs:.12}"),
        rhs - lhs,
    );
    Ok(r)
}

/// Weyl's inequality over every admissible index pair; reports the
/// tightest one.
pub fn weyl_all(a: &IntegerSymmetricMatrix, b: &IntegerSymmetricMatrix, params: String) -> Result<LemmaReport, LabError> {
    let n = a.order();
    if b.order() != n {
        return Err(LabError::OrderMismatch);
    }
    let (ra, rb, rs) = (eigenvalues(a), eigenvalues(b), eigenvalues(&(a + b)));
    let mut worst = (f64::INFINITY, 0, 0);
    for i in 1..=n {
        for j in 1..=n + 1 - i {
            let margin = ra[i - 1] + rb[j - 1] - rs[i + j - 2];
            if margin < worst.0 {
                worst = (margin, i, j);
            }
        }
    }
    let mut r = LemmaReport::new(LemmaId::Weyl, params, None);
    let detail = if n == 0 {
        String::new()
    } else {
        format!("tightest at i={}, j={}", worst.1, worst.2)
    };
    r.numeric(
        "rho_{i+j-1}(A+B) <= rho_i(A) + rho_j(B) for all i+j-1 <= n",
        detail,
        if n == 0 { 0.0 } else { worst.0 },
    );
    Ok(r)
}

/// Cauchy interlacing `rho_{n-p+i}(M) <= rho_i(B) <= rho_i(M)` for the
/// principal submatrix `B` on `rows`.
pub fn submatrix_interlacing_check(
    m: &IntegerSymmetricMatrix,
    rows: &[usize],
    params: String,
) -> Result<LemmaReport, LabError> {
    let n = m.order();
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    if rows.is_empty() || rows.iter().any(|&i| i >= n) {
        return Err(LabError::BadSubset);
    }
    let p = rows.len();
    let rm = eigenvalues(m);
    let rb = eigenvalues(&m.principal_submatrix(&rows));
    let mut worst = (f64::INFINITY, 0);
    for i in 1..=p {
        let margin = (rb[i - 1] - rm[n - p + i - 1]).min(rm[i - 1] - rb[i - 1]);
        if margin < worst.0 {
            worst = (margin, i);
        }
    }
    let mut r = LemmaReport::new(LemmaId::Interlacing, params, None);
    r.numeric(
        "rho_{n-p+i}(M) <= rho_i(B) <= rho_i(M) for i = 1..p",
        format!("p={p}, tightest at i={}", worst.1),
        worst.0,
    );
    Ok(r)
}

/// Edge-deletion interlacing `mu_1(G) >= mu_1(G-e) >= mu_2(G) >= ... >=
/// mu_n(G) = mu_n(G-e) = 0`.
pub fn edge_interlacing_check(g: &Graph, u: usize, v: usize, mode: Mode) -> Result<LemmaReport, LabError> {
    if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
        return Err(LabError::NotAnEdge { u, v });
    }
    let h = g.delete_edge(u, v)?;
    let n = g.order();
    let (ag, ah) = (Analysis::of_graph(g), Analysis::of_graph(&h));
    let mut r = LemmaReport::new(LemmaId::EdgeInterlacing, format!("e={u}{v}"), Some(g));
    if mode.numeric() {
        let (sg, sh) = (ag.spectrum().values(), ah.spectrum().values());
        let mut worst = f64::INFINITY;
        for i in 0..n {
            worst = worst.min(sg[i] - sh[i]);
            if i + 1 < n {
                worst = worst.min(sh[i] - sg[i + 1]);
            }
        }
        worst = worst.min(-sh[n - 1].abs()).min(-sg[n - 1].abs());
        r.numeric("mu_i(G) >= mu_i(G-e) >= mu_{i+1}(G), mu_n = 0", "", worst);
    }
    if mode.exact() {
        let bad: Vec<i64> = (0..=n as i64)
            .filter(|&x| {
                let (cg, ch) = (
                    ag.counter().count_geq(&integer(x)),
                    ah.counter().count_geq(&integer(x)),
                );
                !(ch <= cg && cg <= ch + 1)
            })
            .collect();
        r.exact(
            "#{mu_i(G-e) >= x} <= #{mu_i(G) >= x} <= #{mu_i(G-e) >= x} + 1 for integers x",
            format!("failing x: {bad:?}"),
            bad.is_empty(),
        );
        let zeros = (ag.multiplicity(0), ah.multiplicity(0));
        r.exact(
            "0 is an eigenvalue of G and G-e",
            format!("multiplicities {zeros:?}"),
            zeros.0 >= 1 && zeros.1 >= 1,
        );
    }
    if mode == Mode::Both {
        r.exact(
            "exact and numeric m[k,n] agree for k = 0..n on G and G-e",
            "",
            ag.engines_agree() && ah.engines_agree(),
        );
    }
    Ok(r)
}

/// `mu_i(G) + mu_{n-i}(complement) = n` for `i = 1..n-1`. Exactly, as the
/// polynomial identity `(-1)^(n-1) x p_G(n-x) = (n-x) p_{G^c}(x)`.
pub fn complement_identity_check(g: &Graph, mode: Mode) -> Result<LemmaReport, LabError> {
    let n = g.order();
    if n < 2 {
        return Err(LabError::TooSmall(2));
    }
    let gc = g.complement();
    let mut r = LemmaReport::new(LemmaId::Complement, format!("n={n}"), Some(g));
    if mode.numeric() {
        let (s, sc) = (spectra::laplacian_spectrum(g), spectra::laplacian_spectrum(&gc));
        let worst = (1..n)
            .map(|i| (s.nth(i) + sc.nth(n - i) - n as f64).abs())
            .fold(0.0, f64::max);
        r.numeric("mu_i(G) + mu_{n-i}(G^c) = n", format!("max deviation {worst:e}"), SLACK - worst);
    }
    if mode.exact() {
        let (p, pc) = (spectra::laplacian_char_poly(g), spectra::laplacian_char_poly(&gc));
        let x = IntegerPolynomial::from_i64(&[0, 1]);
        let mut lhs = x.mul(&p.reflect(n as i64));
        if n % 2 == 0 {
            lhs = lhs.scale(&(-1).into());
        }
        let rhs = IntegerPolynomial::from_i64(&[n as i64, -1]).mul(&pc);
        r.exact(
            "(-1)^(n-1) x p_G(n-x) = (n-x) p_{G^c}(x)",
            format!("p_G = {p}"),
            lhs == rhs,
        );
    }
    Ok(r)
}

/// Exact and numeric evidence that `mu_k < bound`.
fn strict_bound(r: &mut LemmaReport, a: &Analysis, k: usize, bound: i64, mode: Mode) {
    if mode.numeric() {
        let mu = a.mu(k);
        r.numeric(
            format!("mu_{k} < {bound}"),
            format!("mu_{k} = {mu:.12}"),
            bound as f64 - mu,
        );
    }
    if mode.exact() {
        let c = a.counter();
        let b = integer(bound);
        let geq = c.count_geq(&b);
        r.exact(format!("mu_{k} < {bound}"), format!("eigenvalues >= {bound}: {geq}"), geq < k);
        let mult = c.multiplicity(&b);
        r.exact(
            format!("mu_{k} != {bound}"),
            format!("multiplicity of {bound}: {mult}"),
            !c.kth_equals(k, &b),
        );
    }
    if mode == Mode::Both {
        r.agreement(a);
    }
}

fn expect_kind(lemma: LemmaId, spec: &FamilySpec) -> Result<(), LabError> {
    let fits = lemma.family_kind() == Some(spec.kind())
        && match (lemma, *spec) {
            (LemmaId::GndtEdge, FamilySpec::Gndt { n, d, .. }) => d + 3 <= n,
            (LemmaId::GndraEdge, FamilySpec::Gndra { n, d, .. }) => d + 3 <= n,
            _ => true,
        };
    if fits {
        spec.validate()?;
        Ok(())
    } else {
        Err(LabError::WrongSpec { lemma, spec: *spec })
    }
}

/// Family lemmas: exact counts for `gndt` / `gndra`, strict bounds for
/// `h_ab`, `h_abc` and `p_plusplus`.
pub fn verify_family_lemma(lemma: LemmaId, spec: &FamilySpec, mode: Mode) -> Result<LemmaReport, LabError> {
    expect_kind(lemma, spec)?;
    if matches!(lemma, LemmaId::GndtEdge | LemmaId::GndraEdge) {
        return Err(LabError::WrongSpec { lemma, spec: *spec });
    }
    let g = spec.build()?;
    let n = g.order();
    let d = spec.diameter_param();
    let mut r = LemmaReport::new(lemma, spec.to_string(), Some(&g));
    let diameter = g.diameter()?;
    r.exact(format!("diameter = {d}"), format!("diameter {diameter}"), diameter == d);
    let a = Analysis::of_graph(&g);
    let (lo, hi) = ((n - d + 2) as i64, n as i64);
    match lemma {
        LemmaId::Gndt | LemmaId::Gndra => {
            let k = n - d;
            if mode.exact() {
                let m = a.count_exact(lo, hi);
                r.exact(format!("m[{lo},{hi}] = {k}"), format!("m = {m}"), m == k);
            }
            if mode.numeric() {
                let m = a.count_numeric(lo, hi);
                r.push(Check {
                    relation: format!("m[{lo},{hi}] = {k}"),
                    exact: false,
                    detail: format!("m = {m}"),
                    margin: None,
                    pass: m == k,
                });
            }
            if lemma == LemmaId::Gndt {
                if mode.exact() {
                    let mult = a.multiplicity(lo);
                    r.exact(
                        format!("multiplicity of {lo} >= {}", k - 1),
                        format!("multiplicity {mult}"),
                        mult + 1 >= k,
                    );
                    r.exact(
                        format!("mu_{k} = {lo}"),
                        "",
                        a.counter().kth_equals(k, &integer(lo)),
                    );
                }
                if mode.numeric() {
                    let mu = a.mu(k);
                    r.numeric(format!("mu_{k} = {lo}"), format!("mu_{k} = {mu:.12}"), -(mu - lo as f64).abs());
                }
            }
            if mode == Mode::Both {
                r.agreement(&a);
            }
        }
        LemmaId::HAb | LemmaId::HAbc => strict_bound(&mut r, &a, n - d, lo, mode),
        LemmaId::PPlusPlus => strict_bound(&mut r, &a, 2, 4, mode),
        _ => unreachable!("kind checked above"),
    }
    Ok(r)
}

/// Which clique vertices an [`EdgeClass`] draws from in `gndra`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The single clique of `gndt`.
    All,
    /// The `a` vertices adjacent to `v_{t-1}`.
    Low,
    /// The rest, adjacent to `v_{t+2}`.
    High,
}

/// Edges `v_{t+offset} w` with `w` a clique vertex on `side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeClass {
    pub offset: i8,
    pub side: Side,
}

impl EdgeClass {
    pub const GNDT: [EdgeClass; 3] = [
        EdgeClass { offset: -1, side: Side::All },
        EdgeClass { offset: 0, side: Side::All },
        EdgeClass { offset: 1, side: Side::All },
    ];

    /// Every path-to-clique edge class of `gndra`.
    pub const GNDRA: [EdgeClass; 6] = [
        EdgeClass { offset: -1, side: Side::Low },
        EdgeClass { offset: 0, side: Side::Low },
        EdgeClass { offset: 1, side: Side::Low },
        EdgeClass { offset: 0, side: Side::High },
        EdgeClass { offset: 1, side: Side::High },
        EdgeClass { offset: 2, side: Side::High },
    ];

    pub fn for_kind(kind: FamilyKind) -> &'static [EdgeClass] {
        match kind {
            FamilyKind::Gndt => &Self::GNDT,
            FamilyKind::Gndra => &Self::GNDRA,
            _ => &[],
        }
    }

    /// A representative edge `(path vertex, clique vertex)` in `g`.
    pub fn representative(self, spec: &FamilySpec, g: &Graph) -> Option<(usize, usize)> {
        let (d, t, low) = match *spec {
            FamilySpec::Gndt { d, t, .. } => (d, t, None),
            FamilySpec::Gndra { d, r, a, .. } => (d, r, Some(a)),
            _ => return None,
        };
        let i = t as i64 + self.offset as i64;
        if i < 1 || i > d as i64 + 1 {
            return None;
        }
        let clique = g.order() - d - 1;
        let w = match (self.side, low) {
            (Side::All, None) => 1,
            (Side::Low, Some(_)) => 1,
            (Side::High, Some(a)) if a < clique => a + 1,
            _ => return None,
        };
        let (pv, wv) = (g.vertex(&format!("v{i}"))?, g.vertex(&format!("w{w}"))?);
        g.has_edge(pv, wv).then_some((pv, wv))
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = match self.offset {
            0 => "t".to_string(),
            o if o > 0 => format!("t+{o}"),
            o => format!("t{o}"),
        };
        match self.side {
            Side::All => write!(f, "v_{{{idx}}}w"),
            Side::Low => write!(f, "v_{{{idx}}}w:low"),
            Side::High => write!(f, "v_{{{idx}}}w:high"),
        }
    }
}

/// `mu_{n-d}(G - e) < n - d + 2` for a representative `e` of `class`.
pub fn verify_edge_deleted_lemma(
    lemma: LemmaId,
    spec: &FamilySpec,
    class: EdgeClass,
    mode: Mode,
) -> Result<LemmaReport, LabError> {
    if !matches!(lemma, LemmaId::GndtEdge | LemmaId::GndraEdge) {
        return Err(LabError::WrongSpec { lemma, spec: *spec });
    }
    expect_kind(lemma, spec)?;
    let g = spec.build()?;
    let (u, w) = class
        .representative(spec, &g)
        .ok_or(LabError::EmptyEdgeClass { class, spec: *spec })?;
    let h = g.delete_edge(u, w)?;
    let (n, d) = (g.order(), spec.diameter_param());
    let mut r = LemmaReport::new(lemma, format!("{spec},e={class}"), Some(&h));
    let a = Analysis::of_graph(&h);
    strict_bound(&mut r, &a, n - d, (n - d + 2) as i64, mode);
    Ok(r)
}

/// Every edge of `G` outside the listed classes whose deletion keeps `G`
/// connected gives a graph isomorphic to `G - e` for some listed `e`.
pub fn edge_reduction_check(lemma: LemmaId, spec: &FamilySpec) -> Result<LemmaReport, LabError> {
    if !matches!(lemma, LemmaId::GndtEdge | LemmaId::GndraEdge) {
        return Err(LabError::WrongSpec { lemma, spec: *spec });
    }
    expect_kind(lemma, spec)?;
    let g = spec.build()?;
    let listed: Vec<(usize, usize)> = EdgeClass::for_kind(spec.kind())
        .iter()
        .filter_map(|c| c.representative(spec, &g))
        .collect();
    let targets: Vec<String> = listed
        .iter()
        .map(|&(u, w)| iso::canonical_form(&g.delete_edge(u, w).expect("edge")).to_string())
        .collect();
    let mut unreduced = Vec::new();
    let mut reduced = 0;
    for (u, v) in g.edges() {
        let h = g.delete_edge(u, v)?;
        if !h.is_connected() {
            continue;
        }
        let form = iso::canonical_form(&h).to_string();
        match targets.iter().position(|t| *t == form) {
            Some(k) => {
                let rep = g.delete_edge(listed[k].0, listed[k].1)?;
                let map = iso::find_isomorphism(&h, &rep);
                if map.is_some_and(|m| iso::is_isomorphism(&h, &rep, &m)) {
                    reduced += 1;
                } else {
                    unreduced.push(format!("{}{}", label(&g, u), label(&g, v)));
                }
            }
            None => unreduced.push(format!("{}{}", label(&g, u), label(&g, v))),
        }
    }
    let mut r = LemmaReport::new(lemma, format!("{spec},reduction"), Some(&g));
    r.exact(
        "G-e is isomorphic to G-e' for a listed class e', for every e keeping G connected",
        format!("{reduced} reduced, unreduced: {unreduced:?}"),
        unreduced.is_empty(),
    );
    Ok(r)
}

fn label(g: &Graph, v: usize) -> String {
    g.label(v).map_or_else(|| v.to_string(), str::to_string)
}

/// Grid and sampling parameters for [`run_lemma`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaConfig {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub allow_n8: bool,
}

impl LemmaConfig {
    pub fn new(lemma: LemmaId) -> Self {
        LemmaConfig {
            max_n: lemma.default_max_n(),
            trials: 1000,
            seed: 42,
            mode: Mode::Both,
            allow_n8: false,
        }
    }

    /// Rejects grids the enumerator cannot supply, before any spectral work.
    pub fn validate(&self, lemma: LemmaId) -> Result<(), LabError> {
        let cap = match lemma {
            LemmaId::MaxDegree if self.allow_n8 => enumerate::MAX_ORDER_OPT_IN,
            LemmaId::MaxDegree if self.max_n == enumerate::MAX_ORDER_OPT_IN => {
                return Err(EnumError::NeedsOptIn(self.max_n).into())
            }
            LemmaId::MaxDegree | LemmaId::EdgeInterlacing | LemmaId::Complement => enumerate::MAX_ORDER,
            _ => return Ok(()),
        };
        if self.max_n > cap {
            return Err(EnumError::OutOfRange { n: self.max_n, max: cap }.into());
        }
        Ok(())
    }
}

/// The random generator for trial `trial`: independent of how trials are
/// scheduled.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_symmetric(rng: &mut impl Rng, n: usize, range: i64) -> IntegerSymmetricMatrix {
    let mut m = IntegerSymmetricMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, rng.gen_range(-range..=range));
        }
    }
    m
}

/// A uniformly random labeled connected graph of order `n`, by rejection.
pub fn random_connected(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("distinct pairs");
        if g.is_connected() {
            return g;
        }
    }
}

/// Weyl trial: random symmetric `A`, `B` with entries in `[-5, 5]`.
pub fn weyl_trial(seed: u64, trial: usize, max_n: usize) -> Result<LemmaReport, LabError> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(1..=max_n.max(1));
    let a = random_symmetric(&mut rng, n, 5);
    let b = random_symmetric(&mut rng, n, 5);
    weyl_all(&a, &b, format!("seed={seed},trial={trial},n={n}"))
}

/// Interlacing trial: even trials use the Laplacian of a random connected
/// graph, odd ones a random symmetric matrix; rows are a random nonempty
/// subset.
pub fn interlacing_trial(seed: u64, trial: usize, max_n: usize) -> Result<LemmaReport, LabError> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.gen_range(1..=max_n.max(1));
    let m = if trial % 2 == 0 {
        spectra::laplacian(&random_connected(&mut rng, n))
    } else {
        random_symmetric(&mut rng, n, 5)
    };
    let mut rows: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if rows.is_empty() {
        rows.push(rng.gen_range(0..n));
    }
    submatrix_interlacing_check(&m, &rows, format!("seed={seed},trial={trial},n={n},rows={rows:?}"))
}

/// All reports for one lemma over its grid, in a fixed order.
pub fn run_lemma(lemma: LemmaId, cfg: &LemmaConfig) -> Result<Vec<LemmaReport>, LabError> {
    cfg.validate(lemma)?;
    let mode = cfg.mode;
    match lemma {
        LemmaId::PathSpectrum => (1..=cfg.max_n).into_par_iter().map(|n| path_lemma(n, mode)).collect(),
        LemmaId::Weyl => (0..cfg.trials)
            .into_par_iter()
            .map(|t| weyl_trial(cfg.seed, t, cfg.max_n))
            .collect(),
        LemmaId::Interlacing => (0..cfg.trials)
            .into_par_iter()
            .map(|t| interlacing_trial(cfg.seed, t, cfg.max_n))
            .collect(),
        LemmaId::MaxDegree => {
            let graphs = graphs_up_to(cfg, true)?;
            graphs
                .par_iter()
                .filter(|g| g.edge_count() > 0)
                .map(|g| max_degree_bound_check(g, mode))
                .collect()
        }
        LemmaId::EdgeInterlacing => {
            let graphs = graphs_up_to(cfg, false)?;
            let pairs: Vec<(&Graph, (usize, usize))> =
                graphs.iter().flat_map(|g| g.edges().into_iter().map(move |e| (g, e))).collect();
            pairs
                .par_iter()
                .map(|(g, (u, v))| edge_interlacing_check(g, *u, *v, mode))
                .collect()
        }
        LemmaId::Complement => {
            let graphs = graphs_up_to(cfg, false)?;
            graphs
                .par_iter()
                .filter(|g| g.order() >= 2)
                .map(|g| complement_identity_check(g, mode))
                .collect()
        }
        LemmaId::GndtEdge | LemmaId::GndraEdge => {
            let kind = lemma.family_kind().expect("edge lemmas have a kind");
            let specs: Vec<FamilySpec> = valid_specs(kind, cfg.max_n)
                .into_iter()
                .filter(|s| expect_kind(lemma, s).is_ok())
                .collect();
            let mut jobs: Vec<(FamilySpec, Option<EdgeClass>)> = Vec::new();
            for s in &specs {
                let g = s.build()?;
                for &c in EdgeClass::for_kind(kind) {
                    if c.representative(s, &g).is_some() {
                        jobs.push((*s, Some(c)));
                    }
                }
                jobs.push((*s, None));
            }
            jobs.par_iter()
                .map(|(s, c)| match c {
                    Some(c) => verify_edge_deleted_lemma(lemma, s, *c, mode),
                    None => edge_reduction_check(lemma, s),
                })
                .collect()
        }
        _ => {
            let kind = lemma.family_kind().expect("family lemmas have a kind");
            let specs = valid_specs(kind, cfg.max_n);
            specs
                .par_iter()
                .map(|s| verify_family_lemma(lemma, s, mode))
                .collect()
        }
    }
}

/// One representative per isomorphism class, orders `1..=max_n`.
fn graphs_up_to(cfg: &LemmaConfig, connected: bool) -> Result<Vec<Graph>, LabError> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n {
        let classes = if connected {
            enumerate::enumerate_connected(n, cfg.allow_n8)?
        } else {
            enumerate::enumerate_all(n, cfg.allow_n8)?
        };
        out.extend(classes);
    }
    Ok(out)
}
