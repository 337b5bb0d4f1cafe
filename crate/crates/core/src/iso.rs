//! Canonical forms and isomorphism testing for small graphs.
//!
//! Both rest on the same label-invariant colour refinement: vertices are
//! split by degree, then repeatedly by the number of neighbours they have in
//! each current cell, until the ordered partition is equitable. The
//! canonical form searches individualizations of the first non-singleton
//! cell and keeps the smallest adjacency bit string; twin vertices
//! (same neighbourhood up to each other) in a cell give identical subtrees
//! and are skipped.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6;

/// graph6 text of the canonically relabeled graph. Equal forms mean
/// isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Partition = Vec<Vec<usize>>;

/// Refines `cells` until every vertex of a cell has the same number of
/// neighbours in every cell. Split pieces are ordered by their count vector,
/// so the result depends on structure only.
fn refine(g: &Graph, cells: &mut Partition) {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(n);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u16; k];
                    for u in g.neighbors(v) {
                        sig[cell_of[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let split = next.len() != k;
        *cells = next;
        if !split {
            return;
        }
    }
}

fn unit_partition(n: usize) -> Partition {
    if n == 0 {
        Vec::new()
    } else {
        vec![(0..n).collect()]
    }
}

/// The equitable refinement of the unit partition.
pub fn equitable_partition(g: &Graph) -> Vec<Vec<usize>> {
    let mut cells = unit_partition(g.order());
    refine(g, &mut cells);
    cells
}

fn individualize(cells: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..cell]);
    out.push(vec![v]);
    out.push(cells[cell].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[cell + 1..]);
    out
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.order())
        .filter(|&x| x != u && x != v)
        .all(|x| g.has_edge(u, x) == g.has_edge(v, x))
}

/// Upper-triangle bits in graph6 order, most significant first.
fn code(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut words = vec![0u64; bits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(perm[i], perm[j]) {
                words[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    words
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, cells: Partition) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let c = code(self.g, &perm);
            let better = match &self.best {
                None => true,
                Some((b, _)) => c.cmp(b) == Ordering::Less,
            };
            if better {
                self.best = Some((c, perm));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| are_twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = individualize(&cells, target, v);
            refine(self.g, &mut next);
            self.run(next);
        }
    }
}

/// A canonical labeling: `perm[i]` is the vertex placed at position `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let mut cells = unit_partition(g.order());
    refine(g, &mut cells);
    let mut search = Search { g, best: None };
    search.run(cells);
    search.best.map(|(_, p)| p).unwrap_or_default()
}

/// Intended for small graphs (a dozen or so vertices); large highly
/// regular graphs can make the search tree big.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let perm = canonical_labeling(g);
    CanonicalForm(graph6::encode(&g.permute(&perm)))
}

/// An isomorphism `map` from `g` to `h` (`g` vertex `v` goes to `map[v]`),
/// if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let cg = equitable_partition(g);
    let ch = equitable_partition(h);
    if cg.len() != ch.len() || cg.iter().zip(&ch).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let mut color_g = vec![0; n];
    let mut color_h = vec![0; n];
    for (c, cell) in cg.iter().enumerate() {
        cell.iter().for_each(|&v| color_g[v] = c);
    }
    for (c, cell) in ch.iter().enumerate() {
        cell.iter().for_each(|&v| color_h[v] = c);
    }
    // Map small cells first, then neighbours of mapped vertices.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| g.has_edge(u, v)).count();
                (linked, std::cmp::Reverse(cg[color_g[v]].len()), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        color_g: &[usize],
        color_h: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..h.order() {
            if used[w] || color_h[w] != color_g[v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(depth + 1, order, g, h, color_g, color_h, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if extend(0, &order, g, h, &color_g, &color_h, &mut map, &mut used) {
        debug_assert!(is_isomorphism(g, h, &map));
        Some(map)
    } else {
        None
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Whether `map` is a bijection carrying the edges of `g` exactly onto
/// those of `h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.order();
    if n != h.order() || map.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in map {
        if w >= n || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    g.edges().into_iter().all(|(u, v)| h.has_edge(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_is_self_complementary() {
        let p4 = Graph::path(4).unwrap();
        let map = find_isomorphism(&p4, &p4.complement()).unwrap();
        assert!(is_isomorphism(&p4, &p4.complement(), &map));
        assert_eq!(canonical_form(&p4), canonical_form(&p4.complement()));
    }

    #[test]
    fn star_is_not_path() {
        let star = Graph::star(4).unwrap();
        let p4 = Graph::path(4).unwrap();
        assert!(!are_isomorphic(&star, &p4));
        assert_ne!(canonical_form(&star), canonical_form(&p4));
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C_6 and two triangles: both 2-regular on 6 vertices.
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let two_k3 = k3.disjoint_union(&k3);
        assert!(!are_isomorphic(&c6, &two_k3));
        assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    }

    #[test]
    fn canonical_form_is_a_relabeling() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let cf = canonical_form(&g);
        let rep = cf.graph();
        assert!(are_isomorphic(&g, &rep));
        assert_eq!(canonical_form(&rep), cf);
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        // Twin pruning keeps cliques and stars linear.
        let k = Graph::complete(40).unwrap();
        assert_eq!(canonical_form(&k).graph(), k);
        let s = Graph::star(40).unwrap();
        assert!(are_isomorphic(&canonical_form(&s).graph(), &s));
    }

    #[test]
    fn empty_and_tiny() {
        assert_eq!(canonical_form(&Graph::empty(0)).as_str(), "?");
        assert_eq!(canonical_form(&Graph::complete(1).unwrap()).as_str(), "@");
        assert!(are_isomorphic(&Graph::empty(0), &Graph::empty(0)));
    }

    #[test]
    fn equitable_partition_splits_by_degree() {
        let p5 = Graph::path(5).unwrap();
        let cells = equitable_partition(&p5);
        // Ends, their neighbours, the middle.
        assert_eq!(cells.len(), 3);
        let mut sizes: Vec<usize> = cells.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 2]);
    }
}
