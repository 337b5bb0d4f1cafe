//! Simple undirected graphs stored as per-vertex adjacency bitsets.
//!
//! Every graph in this crate is small (tens of vertices), so each adjacency
//! row is a short run of `u64` words and neighborhood operations are a few
//! word-wide ANDs and popcounts. Graphs are values: all combinators return a
//! new graph and leave their inputs untouched.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order must be positive")]
    EmptyOrder,
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),
    #[error("{0}-{1} is not an edge")]
    MissingEdge(usize, usize),
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("vertex correspondence is not a bijection")]
    NotABijection,
    #[error("labels must be {expected} distinct names, got {got}")]
    BadLabels { expected: usize, got: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Optional vertex labels are metadata only; equality and every algorithm
/// work on indices.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph of order `n` (order 0 is allowed here and acts as the
    /// identity for [`Graph::disjoint_union`]).
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_insert(u, v)?;
        }
        Ok(g)
    }

    /// The path `v_1 ... v_n` on vertices `0..n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    /// The star `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        Graph::from_edges(n, (1..n).map(|i| (0, i)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k * WORD + b)
            })
        })
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(v)).map(String::as_str)
    }

    /// Index of the vertex carrying `name`.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if labels.len() != self.n || distinct.len() != self.n {
            return Err(GraphError::BadLabels {
                expected: self.n,
                got: distinct.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn insert(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    fn remove(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.rows[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    fn try_insert(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert(u, v);
        Ok(())
    }

    /// `G + S`: adds every pair, rejecting loops and edges already present.
    pub fn add_edges<I>(&self, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in pairs {
            g.try_insert(u, v)?;
        }
        debug_assert!(g.is_well_formed());
        Ok(g)
    }

    /// `G - e`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.remove(u, v);
        debug_assert!(g.is_well_formed());
        Ok(g)
    }

    /// `G ∪ H`; the vertices of `other` follow those of `self`, shifted by
    /// `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g.labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let joined: Vec<String> = a.iter().chain(b).cloned().collect();
                let distinct: BTreeSet<&String> = joined.iter().collect();
                (distinct.len() == n).then_some(joined)
            }
            _ => None,
        };
        g
    }

    /// `G ∨ H`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.insert(u, self.n + v);
            }
        }
        g
    }

    /// `G[S]`, reindexed in increasing vertex order of `S`; labels carry over.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|l| verts.iter().map(|&v| l[v].clone()).collect());
        Ok(g)
    }

    /// `G - S` for a vertex set `S`.
    pub fn remove_vertices(&self, removed: &[usize]) -> Result<Graph, GraphError> {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        for &v in removed {
            self.check_vertex(v)?;
        }
        self.induced_subgraph(&keep)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert(inverse[u], inverse[v]);
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|l| perm.iter().map(|&old| l[old].clone()).collect());
        g
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distances(&self) -> DistanceMatrix {
        let mut d = vec![DistanceMatrix::UNREACHABLE; self.n * self.n];
        for s in 0..self.n {
            for (t, dist) in self.bfs(s).into_iter().enumerate() {
                if let Some(x) = dist {
                    d[s * self.n + t] = x;
                }
            }
        }
        DistanceMatrix { n: self.n, d }
    }

    /// Number of connected components (0 for the order-0 graph).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            for (v, d) in self.bfs(s).into_iter().enumerate() {
                if d.is_some() {
                    seen[v] = true;
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs(0).iter().all(Option::is_some)
    }

    /// Greatest distance between two vertices. Disconnected graphs are
    /// rejected rather than reported as infinite.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                best = best.max(d.ok_or(GraphError::Disconnected)? as usize);
            }
        }
        Ok(best)
    }

    /// A path realizing the diameter, as a vertex sequence of length `d + 1`.
    pub fn diametral_path(&self) -> Result<Vec<usize>, GraphError> {
        let d = self.diameter()?;
        let (s, t) = (0..self.n)
            .flat_map(|s| (0..self.n).map(move |t| (s, t)))
            .find(|&(s, t)| self.bfs(s)[t] == Some(d as u32))
            .expect("a pair at distance d exists");
        let from_t = self.bfs(t);
        let mut path = vec![s];
        let mut cur = s;
        while cur != t {
            let here = from_t[cur].expect("connected");
            cur = self
                .neighbors(cur)
                .find(|&v| from_t[v] == Some(here - 1))
                .expect("a neighbor one step closer");
            path.push(cur);
        }
        Ok(path)
    }

    /// Whether every edge of `self` is an edge of `host` once vertex `v` of
    /// `self` is identified with `map[v]` of `host` (identity when `None`).
    pub fn is_spanning_subgraph(
        &self,
        host: &Graph,
        map: Option<&[usize]>,
    ) -> Result<bool, GraphError> {
        if self.n != host.n {
            return Err(GraphError::OrderMismatch(self.n, host.n));
        }
        if let Some(m) = map {
            let image: BTreeSet<usize> = m.iter().copied().collect();
            if m.len() != self.n || image.len() != self.n || m.iter().any(|&v| v >= self.n) {
                return Err(GraphError::NotABijection);
            }
        }
        let image = |v: usize| map.map_or(v, |m| m[v]);
        Ok(self
            .edges()
            .into_iter()
            .all(|(u, v)| host.has_edge(image(u), image(v))))
    }

    /// Whether `self` is a path graph `P_n` (connected, `n - 1` edges, max degree ≤ 2).
    pub fn is_path(&self) -> bool {
        self.n > 0
            && self.edge_count() + 1 == self.n
            && self.max_degree() <= 2
            && self.is_connected()
    }

    /// Symmetric, loop-free adjacency with no stray bits beyond `n`.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u))
        })
    }
}

/// All-pairs shortest-path lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != Self::UNREACHABLE).then_some(x)
    }

    /// Largest finite entry.
    pub fn max_finite(&self) -> u32 {
        self.d
            .iter()
            .copied()
            .filter(|&x| x != Self::UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}
