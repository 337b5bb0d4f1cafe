//! Constructors for the extremal graph families and their relatives.
//!
//! Every family is a path `v_1 ... v_{d+1}` (indices `0..=d`, labels
//! `v1..`) plus cliques hung off a few consecutive path vertices. Clique
//! vertices follow the path vertices in index order.
//!
//! | kind         | text form                          | cliques and attachments |
//! |--------------|------------------------------------|-------------------------|
//! | `gndt`       | `gndt:n=9,d=4,t=3`                 | `K_{n-d-1}` to `v_{t-1}, v_t, v_{t+1}` |
//! | `gndra`      | `gndra:n=10,d=5,r=2,a=3`           | `K_{n-d-1}` to `v_r, v_{r+1}`; `a` of them to `v_{r-1}`, the rest to `v_{r+2}` |
//! | `h_ab`       | `h_ab:n=9,d=5,t=3,a=1,b=2`         | `K_a` to `v_{t-2..t}`, `K_b` to `v_{t..t+2}` |
//! | `h_abc`      | `h_abc:n=9,d=5,t=3,a=1,b=1,c=1`    | as `h_ab`, plus `K_c` joined to `K_a ∪ K_b` and to `v_{t-1..t+1}` |
//! | `p_plusplus` | `p_plusplus:n=8,t=3`               | `P_{n-1}` plus `u` adjacent to `v_t`, `v_{t+2}` |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{kind}: bound {bound} violated by {params}")]
    Bound {
        kind: FamilyKind,
        bound: &'static str,
        params: String,
    },
    #[error("cannot parse family spec {0:?}: {1}")]
    Parse(String, String),
    #[error("{0} has no mirror canonical form")]
    NotCanonicalizable(FamilyKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Gndt,
    Gndra,
    HAb,
    HAbc,
    PPlusPlus,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Gndt => "gndt",
            FamilyKind::Gndra => "gndra",
            FamilyKind::HAb => "h_ab",
            FamilyKind::HAbc => "h_abc",
            FamilyKind::PPlusPlus => "p_plusplus",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            FamilyKind::Gndt => &["n", "d", "t"],
            FamilyKind::Gndra => &["n", "d", "r", "a"],
            FamilyKind::HAb => &["n", "d", "t", "a", "b"],
            FamilyKind::HAbc => &["n", "d", "t", "a", "b", "c"],
            FamilyKind::PPlusPlus => &["n", "t"],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            FamilyKind::Gndt,
            FamilyKind::Gndra,
            FamilyKind::HAb,
            FamilyKind::HAbc,
            FamilyKind::PPlusPlus,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| FamilyError::Parse(s.to_string(), "unknown family kind".into()))
    }
}

/// Parameters naming one member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    Gndt { n: usize, d: usize, t: usize },
    Gndra { n: usize, d: usize, r: usize, a: usize },
    HAb { n: usize, d: usize, t: usize, a: usize, b: usize },
    HAbc { n: usize, d: usize, t: usize, a: usize, b: usize, c: usize },
    PPlusPlus { n: usize, t: usize },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Gndt { .. } => FamilyKind::Gndt,
            FamilySpec::Gndra { .. } => FamilyKind::Gndra,
            FamilySpec::HAb { .. } => FamilyKind::HAb,
            FamilySpec::HAbc { .. } => FamilyKind::HAbc,
            FamilySpec::PPlusPlus { .. } => FamilyKind::PPlusPlus,
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Gndt { n, .. }
            | FamilySpec::Gndra { n, .. }
            | FamilySpec::HAb { n, .. }
            | FamilySpec::HAbc { n, .. }
            | FamilySpec::PPlusPlus { n, .. } => n,
        }
    }

    /// Length of the underlying path `P_{d+1}`; `n - 2` for `p_plusplus`.
    pub fn diameter_param(&self) -> usize {
        match *self {
            FamilySpec::Gndt { d, .. }
            | FamilySpec::Gndra { d, .. }
            | FamilySpec::HAb { d, .. }
            | FamilySpec::HAbc { d, .. } => d,
            FamilySpec::PPlusPlus { n, .. } => n.saturating_sub(2),
        }
    }

    fn values(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Gndt { n, d, t } => vec![n, d, t],
            FamilySpec::Gndra { n, d, r, a } => vec![n, d, r, a],
            FamilySpec::HAb { n, d, t, a, b } => vec![n, d, t, a, b],
            FamilySpec::HAbc { n, d, t, a, b, c } => vec![n, d, t, a, b, c],
            FamilySpec::PPlusPlus { n, t } => vec![n, t],
        }
    }

    fn violated(&self, bound: &'static str) -> FamilyError {
        FamilyError::Bound {
            kind: self.kind(),
            bound,
            params: self.to_string(),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let checks: Vec<(bool, &'static str)> = match *self {
            FamilySpec::Gndt { n, d, t } => vec![
                (d >= 2, "2 <= d"),
                (d + 2 <= n, "d <= n-2"),
                (t >= 2, "2 <= t"),
                (t <= d, "t <= d"),
            ],
            FamilySpec::Gndra { n, d, r, a } => vec![
                (d >= 3, "3 <= d"),
                (d + 2 <= n, "d <= n-2"),
                (r >= 2, "2 <= r"),
                (r < d, "r <= d-1"),
                (a >= 1, "1 <= a"),
                (a + d + 2 <= n, "a <= n-d-2"),
            ],
            FamilySpec::HAb { n, d, t, a, b } => vec![
                (t >= 3, "3 <= t"),
                (t + 2 <= d, "t <= d-2"),
                (d + 3 <= n, "d <= n-3"),
                (a >= 1, "1 <= a"),
                (b >= 1, "1 <= b"),
                (a + b + d + 1 == n, "a+b = n-d-1"),
            ],
            FamilySpec::HAbc { n, d, t, a, b, c } => vec![
                (t >= 3, "3 <= t"),
                (t + 2 <= d, "t <= d-2"),
                (d + 3 <= n, "d <= n-3"),
                (a >= 1, "1 <= a"),
                (b >= 1, "1 <= b"),
                (c >= 1, "1 <= c"),
                (a + b + c + d + 1 == n, "a+b+c = n-d-1"),
            ],
            FamilySpec::PPlusPlus { n, t } => vec![(t >= 1, "1 <= t"), (t + 3 <= n, "t <= n-3")],
        };
        match checks.into_iter().find(|(ok, _)| !ok) {
            Some((_, bound)) => Err(self.violated(bound)),
            None => Ok(()),
        }
    }

    /// Validates and constructs the graph.
    pub fn build(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        Ok(match *self {
            FamilySpec::Gndt { n, d, t } => {
                let clique = n - d - 1;
                let mut b = Builder::new(d, &[("w", clique)]);
                for w in b.group(0) {
                    b.attach(w, &[t - 1, t, t + 1]);
                }
                b.finish()
            }
            FamilySpec::Gndra { n, d, r, a } => {
                let clique = n - d - 1;
                let mut b = Builder::new(d, &[("w", clique)]);
                for (k, w) in b.group(0).into_iter().enumerate() {
                    let extra = if k < a { r - 1 } else { r + 2 };
                    b.attach(w, &[r, r + 1, extra]);
                }
                b.finish()
            }
            FamilySpec::HAb { d, t, a, b: bb, .. } => {
                let mut b = Builder::new(d, &[("a", a), ("b", bb)]);
                for w in b.group(0) {
                    b.attach(w, &[t - 2, t - 1, t]);
                }
                for w in b.group(1) {
                    b.attach(w, &[t, t + 1, t + 2]);
                }
                b.finish()
            }
            FamilySpec::HAbc { d, t, a, b: bb, c, .. } => {
                let mut b = Builder::new(d, &[("a", a), ("b", bb), ("c", c)]);
                for w in b.group(0) {
                    b.attach(w, &[t - 2, t - 1, t]);
                }
                for w in b.group(1) {
                    b.attach(w, &[t, t + 1, t + 2]);
                }
                for w in b.group(2) {
                    b.attach(w, &[t - 1, t, t + 1]);
                    for x in b.group(0).into_iter().chain(b.group(1)) {
                        b.edges.push((x, w));
                    }
                }
                b.finish()
            }
            FamilySpec::PPlusPlus { n, t } => {
                let mut b = Builder::new(n - 2, &[]);
                b.labels.push("u".into());
                let u = n - 1;
                b.attach(u, &[t, t + 2]);
                b.finish()
            }
        })
    }

    /// The mirror image under `v_i -> v_{d+2-i}`, for `gndt` and `gndra`.
    pub fn mirror(&self) -> Result<FamilySpec, FamilyError> {
        match *self {
            FamilySpec::Gndt { n, d, t } => Ok(FamilySpec::Gndt { n, d, t: d + 2 - t }),
            FamilySpec::Gndra { n, d, r, a } => Ok(FamilySpec::Gndra {
                n,
                d,
                r: d + 1 - r,
                a: n - d - 1 - a,
            }),
            other => Err(FamilyError::NotCanonicalizable(other.kind())),
        }
    }

    /// The mirror-equivalent spec with `t <= floor(d/2)+1` (resp.
    /// `r <= floor((d+1)/2)`).
    pub fn canonicalize(&self) -> Result<FamilySpec, FamilyError> {
        self.validate()?;
        match *self {
            FamilySpec::Gndt { d, t, .. } if t > d / 2 + 1 => self.mirror(),
            FamilySpec::Gndra { d, r, .. } if r > (d + 1) / 2 => self.mirror(),
            FamilySpec::Gndt { .. } | FamilySpec::Gndra { .. } => Ok(*self),
            other => Err(FamilyError::NotCanonicalizable(other.kind())),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().is_ok_and(|c| c == *self)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind())?;
        let parts: Vec<String> = self
            .kind()
            .keys()
            .iter()
            .zip(self.values())
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses the text form; keys may come in any order. Bounds are not
    /// checked here (see [`FamilySpec::validate`]).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| FamilyError::Parse(s.to_string(), msg.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| err("missing ':'"))?;
        let kind: FamilyKind = kind.trim().parse().map_err(|_| err("unknown family kind"))?;
        let mut values = BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let k = k.trim();
            if !kind.keys().contains(&k) {
                return Err(err(&format!("unexpected key {k:?}")));
            }
            let v: usize = v.trim().parse().map_err(|_| err(&format!("bad value for {k}")))?;
            if values.insert(k, v).is_some() {
                return Err(err(&format!("duplicate key {k:?}")));
            }
        }
        let get = |k: &str| values.get(k).copied().ok_or_else(|| err(&format!("missing key {k:?}")));
        Ok(match kind {
            FamilyKind::Gndt => FamilySpec::Gndt {
                n: get("n")?,
                d: get("d")?,
                t: get("t")?,
            },
            FamilyKind::Gndra => FamilySpec::Gndra {
                n: get("n")?,
                d: get("d")?,
                r: get("r")?,
                a: get("a")?,
            },
            FamilyKind::HAb => FamilySpec::HAb {
                n: get("n")?,
                d: get("d")?,
                t: get("t")?,
                a: get("a")?,
                b: get("b")?,
            },
            FamilyKind::HAbc => FamilySpec::HAbc {
                n: get("n")?,
                d: get("d")?,
                t: get("t")?,
                a: get("a")?,
                b: get("b")?,
                c: get("c")?,
            },
            FamilyKind::PPlusPlus => FamilySpec::PPlusPlus {
                n: get("n")?,
                t: get("t")?,
            },
        })
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Index of path vertex `v_i` (1-based) in every family graph.
pub fn path_vertex(i: usize) -> usize {
    i - 1
}

/// The canonical equality set for `(n, d)`: `gndt` with
/// `2 <= t <= floor(d/2)+1` and `gndra` with `2 <= r <= floor((d+1)/2)`,
/// `1 <= a <= n-d-2`.
pub fn canonical_specs(n: usize, d: usize) -> Vec<FamilySpec> {
    if d < 2 || d + 2 > n {
        return Vec::new();
    }
    let mut out: Vec<FamilySpec> = (2..=d / 2 + 1).map(|t| FamilySpec::Gndt { n, d, t }).collect();
    if d >= 3 {
        for r in 2..=(d + 1) / 2 {
            for a in 1..=n - d - 2 {
                out.push(FamilySpec::Gndra { n, d, r, a });
            }
        }
    }
    out
}

/// Every valid spec of `kind` with order at most `max_n`, in a fixed order.
pub fn valid_specs(kind: FamilyKind, max_n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in 0..n {
            match kind {
                FamilyKind::Gndt => {
                    out.extend((0..=d).map(|t| FamilySpec::Gndt { n, d, t }));
                }
                FamilyKind::Gndra => {
                    for r in 0..d {
                        out.extend((0..n).map(|a| FamilySpec::Gndra { n, d, r, a }));
                    }
                }
                FamilyKind::HAb => {
                    for t in 0..d {
                        out.extend((1..n).map(|a| FamilySpec::HAb {
                            n,
                            d,
                            t,
                            a,
                            b: (n - d - 1).saturating_sub(a),
                        }));
                    }
                }
                FamilyKind::HAbc => {
                    for t in 0..d {
                        for a in 1..n {
                            for b in 1..n {
                                let c = (n - d - 1).saturating_sub(a + b);
                                out.push(FamilySpec::HAbc { n, d, t, a, b, c });
                            }
                        }
                    }
                }
                FamilyKind::PPlusPlus => {
                    if d == 0 {
                        out.extend((0..n).map(|t| FamilySpec::PPlusPlus { n, t }));
                    }
                }
            }
        }
    }
    out.retain(|s| s.validate().is_ok());
    out.sort();
    out.dedup();
    out
}

/// Accumulates the path, clique groups and attachments of a family graph.
struct Builder {
    d: usize,
    groups: Vec<(usize, usize)>,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new(d: usize, groups: &[(&str, usize)]) -> Self {
        let mut labels: Vec<String> = (1..=d + 1).map(|i| format!("v{i}")).collect();
        let mut edges: Vec<(usize, usize)> = (1..=d).map(|i| (i - 1, i)).collect();
        let mut spans = Vec::new();
        for &(prefix, size) in groups {
            let start = labels.len();
            labels.extend((1..=size).map(|k| format!("{prefix}{k}")));
            for x in start..start + size {
                for y in x + 1..start + size {
                    edges.push((x, y));
                }
            }
            spans.push((start, size));
        }
        Builder {
            d,
            groups: spans,
            labels,
            edges,
        }
    }

    fn group(&self, k: usize) -> Vec<usize> {
        let (start, size) = self.groups[k];
        (start..start + size).collect()
    }

    /// Joins `w` to the path vertices `v_i` for each 1-based `i`.
    fn attach(&mut self, w: usize, path: &[usize]) {
        for &i in path {
            debug_assert!(i >= 1 && i <= self.d + 1);
            self.edges.push((path_vertex(i), w));
        }
    }

    fn finish(self) -> Graph {
        let n = self.labels.len();
        Graph::from_edges(n, self.edges)
            .and_then(|g| g.with_labels(self.labels))
            .expect("family construction yields a simple labeled graph")
    }
}
