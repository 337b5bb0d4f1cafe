//! Exhaustive generation of small graphs up to isomorphism, and the
//! extremal census built on it.
//!
//! Orders up to 7 are swept over all `2^C(n,2)` labeled graphs. Only
//! labelings whose degrees are nonincreasing in the vertex index are kept
//! (every class has one: sort the vertices by degree), then classes are
//! merged by canonical form. Order 8 is reached by adding a vertex to every
//! connected class of order 7 in every possible way; it is opt-in.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{canonical_specs, FamilySpec};
use crate::graph::Graph;
use crate::iso::{self, CanonicalForm};
use crate::lab::{self, BoundStatus, BoundVerdict, LabError, Mode};

/// Largest order enumerated by default.
pub const MAX_ORDER: usize = 7;
/// Largest order reachable with the opt-in flag.
pub const MAX_ORDER_OPT_IN: usize = 8;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {n} is outside the enumerable range 1..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("order {0} is opt-in (--allow-n8)")]
    NeedsOptIn(usize),
    #[error("diameter {d} outside 2..=n-2 for order {n}")]
    BadDiameter { n: usize, d: usize },
}

fn check_order(n: usize, allow_n8: bool) -> Result<(), EnumError> {
    match n {
        0 => Err(EnumError::OutOfRange { n, max: MAX_ORDER }),
        n if n <= MAX_ORDER => Ok(()),
        n if n <= MAX_ORDER_OPT_IN && allow_n8 => Ok(()),
        n if n <= MAX_ORDER_OPT_IN => Err(EnumError::NeedsOptIn(n)),
        n => Err(EnumError::OutOfRange {
            n,
            max: MAX_ORDER_OPT_IN,
        }),
    }
}

/// Pairs `(i, j)`, `i < j`, in graph6 bit order.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn connected_rows(rows: &[u64], n: usize) -> bool {
    let full = (1u64 << n) - 1;
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Canonical forms of all classes of order `n <= 7` from the labeled sweep.
fn sweep(n: usize, connected_only: bool) -> BTreeSet<CanonicalForm> {
    let pairs = pair_order(n);
    let total = 1u64 << pairs.len();
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut found = BTreeSet::new();
            let mut rows = [0u64; MAX_ORDER];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                rows[..n].iter_mut().for_each(|r| *r = 0);
                let mut m = mask;
                while m != 0 {
                    let k = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let (i, j) = pairs[k];
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                if rows[..n].windows(2).any(|w| w[0].count_ones() < w[1].count_ones()) {
                    continue;
                }
                if connected_only && !connected_rows(&rows[..n], n) {
                    continue;
                }
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .expect("distinct pairs");
                found.insert(iso::canonical_form(&g));
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Connected classes of order `n` from connected classes of order `n - 1`
/// plus a vertex with a nonempty neighbourhood. Removing a non-cut vertex
/// (a spanning-tree leaf, say) shows every class arises.
fn augment(smaller: &[Graph]) -> BTreeSet<CanonicalForm> {
    smaller
        .par_iter()
        .map(|h| {
            let m = h.order();
            let mut found = BTreeSet::new();
            for subset in 1u64..(1 << m) {
                let new = m;
                let edges = h
                    .edges()
                    .into_iter()
                    .chain((0..m).filter(|&v| subset >> v & 1 == 1).map(|v| (v, new)));
                let g = Graph::from_edges(m + 1, edges).expect("distinct pairs");
                found.insert(iso::canonical_form(&g));
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Canonical forms of the connected classes of order `n`, sorted.
pub fn connected_classes(n: usize, allow_n8: bool) -> Result<Vec<CanonicalForm>, EnumError> {
    check_order(n, allow_n8)?;
    let set = if n <= MAX_ORDER {
        sweep(n, true)
    } else {
        let smaller: Vec<Graph> = sweep(n - 1, true).iter().map(CanonicalForm::graph).collect();
        augment(&smaller)
    };
    Ok(set.into_iter().collect())
}

/// One graph per isomorphism class of connected graphs of order `n`, in
/// canonical-form order.
pub fn enumerate_connected(n: usize, allow_n8: bool) -> Result<Vec<Graph>, EnumError> {
    Ok(connected_classes(n, allow_n8)?.iter().map(CanonicalForm::graph).collect())
}

/// One graph per isomorphism class of all graphs (connected or not) of
/// order `n <= 7`.
pub fn enumerate_all(n: usize, allow_n8: bool) -> Result<Vec<Graph>, EnumError> {
    check_order(n, allow_n8)?;
    if n > MAX_ORDER {
        // Disconnected graphs of order 8 are unions of smaller classes; the
        // suites that need them stop at 7.
        return Err(EnumError::OutOfRange { n, max: MAX_ORDER });
    }
    Ok(sweep(n, false).iter().map(CanonicalForm::graph).collect())
}

/// An equality graph and the family it was identified as.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusMatch {
    pub graph: String,
    pub family: FamilySpec,
}

/// Equality classes for one `(n, d)` compared with the canonical family set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub d: usize,
    /// Connected classes of order `n` and diameter `d` examined.
    pub total: usize,
    pub equality: Vec<String>,
    pub matches: Vec<CensusMatch>,
    /// Equality graphs with no family match.
    pub unmatched: Vec<String>,
    /// Canonical family specs whose graph is not among the equality classes.
    pub missing: Vec<FamilySpec>,
    pub violations: Vec<String>,
    /// Graphs where exact and numeric counts disagree.
    pub inconsistent: Vec<String>,
}

impl CensusRecord {
    pub fn pass(&self) -> bool {
        self.unmatched.is_empty()
            && self.missing.is_empty()
            && self.violations.is_empty()
            && self.inconsistent.is_empty()
    }
}

/// Census over the given verdicts (all of order `n`, diameter `d`).
fn census_from(n: usize, d: usize, verdicts: &[BoundVerdict]) -> Result<CensusRecord, LabError> {
    let mut record = CensusRecord {
        n,
        d,
        total: verdicts.len(),
        equality: Vec::new(),
        matches: Vec::new(),
        unmatched: Vec::new(),
        missing: Vec::new(),
        violations: Vec::new(),
        inconsistent: Vec::new(),
    };
    let mut classes = BTreeSet::new();
    for v in verdicts {
        if v.engines_agree == Some(false) {
            record.inconsistent.push(v.graph.clone());
        }
        match v.status {
            BoundStatus::Violation => record.violations.push(v.graph.clone()),
            BoundStatus::Equality => {
                record.equality.push(v.graph.clone());
                let g = crate::graph6::decode(&v.graph).expect("verdict graphs are valid graph6");
                classes.insert(iso::canonical_form(&g));
                match lab::find_family(&g)?.spec {
                    Some(family) => {
                        record.matches.push(CensusMatch {
                            graph: v.graph.clone(),
                            family,
                        });
                    }
                    None => record.unmatched.push(v.graph.clone()),
                }
            }
            _ => {}
        }
    }
    // Specs are compared by isomorphism class: for odd d and
    // r = (d+1)/2 the mirror maps gndra a to n-d-1-a, so two listed specs
    // can name one class.
    let mut missing = Vec::new();
    for spec in canonical_specs(n, d) {
        if !classes.contains(&iso::canonical_form(&spec.build()?)) {
            missing.push(spec);
        }
    }
    record.missing = missing;
    Ok(record)
}

/// Bound verdicts for every graph, in input order.
pub fn verify_graphs(graphs: &[Graph], mode: Mode) -> Result<Vec<BoundVerdict>, LabError> {
    graphs.par_iter().map(|g| lab::check_bound_with(g, mode)).collect()
}

/// Census of the connected classes of order `n` and diameter `d`.
pub fn extremal_census(n: usize, d: usize, allow_n8: bool) -> Result<CensusRecord, LabError> {
    extremal_census_with(n, d, allow_n8, Mode::Both)
}

pub fn extremal_census_with(n: usize, d: usize, allow_n8: bool, mode: Mode) -> Result<CensusRecord, LabError> {
    if d < 2 || d + 2 > n {
        return Err(EnumError::BadDiameter { n, d }.into());
    }
    let graphs: Vec<Graph> = enumerate_connected(n, allow_n8)?
        .into_iter()
        .filter(|g| g.diameter().ok() == Some(d))
        .collect();
    census_from(n, d, &verify_graphs(&graphs, mode)?)
}

/// Censuses for every `(n, d)` with `2 <= d <= n-2` present among the
/// verdicts, keyed by `(n, d)`. Graphs are deduplicated by canonical form
/// by the caller.
pub fn census_of_verdicts(verdicts: &[BoundVerdict]) -> Result<BTreeMap<(usize, usize), CensusRecord>, LabError> {
    let mut groups: BTreeMap<(usize, usize), Vec<BoundVerdict>> = BTreeMap::new();
    for v in verdicts {
        if v.d >= 2 && v.d + 2 <= v.n {
            groups.entry((v.n, v.d)).or_default().push(v.clone());
        }
    }
    groups
        .into_iter()
        .map(|((n, d), vs)| Ok(((n, d), census_from(n, d, &vs)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_classes(n, false).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21]);
        let all: Vec<usize> = (1..=5).map(|n| enumerate_all(n, false).unwrap().len()).collect();
        assert_eq!(all, [1, 2, 4, 11, 34]);
    }

    #[test]
    fn order_limits() {
        assert_eq!(connected_classes(0, false), Err(EnumError::OutOfRange { n: 0, max: 7 }));
        assert_eq!(connected_classes(8, false), Err(EnumError::NeedsOptIn(8)));
        assert_eq!(connected_classes(9, true), Err(EnumError::OutOfRange { n: 9, max: 8 }));
    }

    #[test]
    fn augmentation_matches_sweep() {
        let from4: Vec<Graph> = enumerate_connected(4, false).unwrap();
        let augmented: Vec<CanonicalForm> = augment(&from4).into_iter().collect();
        assert_eq!(augmented, connected_classes(5, false).unwrap());
    }

    #[test]
    fn census_small_cases() {
        let c = extremal_census(5, 2, false).unwrap();
        assert!(c.pass(), "{c:?}");
        assert_eq!(c.matches.len(), 1);
        assert_eq!(c.matches[0].family, FamilySpec::Gndt { n: 5, d: 2, t: 2 });
        let c = extremal_census(6, 3, false).unwrap();
        assert!(c.pass(), "{c:?}");
        assert_eq!(c.equality.len(), 2);
        assert!(extremal_census(5, 4, false).is_err());
    }
}
