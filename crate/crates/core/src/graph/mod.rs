//! Simple undirected graphs on dense labels `0..n`, stored as adjacency
//! bitsets together with a distance-2 neighbourhood table.
//!
//! Graphs are immutable values: every "mutating" operation returns a new
//! graph with its distance-2 table recomputed.

mod edgelist;
mod graph6;
mod iso;
mod structure;

pub use edgelist::{parse_edge_list, to_edge_list, EdgeListError};
pub use graph6::{parse_graph6, to_graph6, Graph6Error, Graph6ErrorKind};
pub use iso::{are_isomorphic, canonical_form, orbits, CanonicalForm, CANON_MAX_ORDER};
pub(crate) use iso::{canon_rows, wl_hash};
pub use structure::{
    cut_structure, is_claw_free, structure_report, CutStructure, Linkage, PendantCycle,
    PendantTadpole, SpecialPendant, StructureReport,
};

use std::fmt;

use thiserror::Error;

use crate::bits::{self, BitIter, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0}{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex set of order {found} used with a graph of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("graph of order {order} exceeds the supported limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    dist2: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        let words = bits::words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            dist2: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = bits::words_for(n);
        let mut adj = vec![0u64; n * words];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            bits::set_bit(&mut adj[u * words..(u + 1) * words], v);
            bits::set_bit(&mut adj[v * words..(v + 1) * words], u);
        }
        Ok(Graph::from_adjacency(n, adj))
    }

    /// `adj` must be symmetric and irreflexive with `words_for(n)` words per row.
    pub(crate) fn from_adjacency(n: usize, adj: Vec<u64>) -> Graph {
        let words = bits::words_for(n);
        debug_assert_eq!(adj.len(), n * words);
        let mut dist2 = vec![0u64; n * words];
        for v in 0..n {
            let row = &adj[v * words..(v + 1) * words];
            let out = &mut dist2[v * words..(v + 1) * words];
            for u in BitIter::new(row) {
                for (o, a) in out.iter_mut().zip(&adj[u * words..(u + 1) * words]) {
                    *o |= a;
                }
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o &= !a;
            }
            bits::clear_bit(out, v);
        }
        Graph { n, words, adj, dist2 }
    }

    /// Builds a graph of order `n <= 64` from one adjacency word per vertex.
    pub(crate) fn from_rows64(rows: &[u64]) -> Graph {
        let n = rows.len();
        assert!(n <= 64);
        Graph::from_adjacency(n, rows.to_vec())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid complete bipartite graph")
    }

    /// Star `K_{1,t}` with centre 0.
    pub fn star(t: usize) -> Graph {
        Graph::from_edges(t + 1, (1..=t).map(|v| (0, v))).expect("valid star")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        bits::popcount(&self.adj) / 2
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn dist2_row(&self, v: usize) -> &[u64] {
        &self.dist2[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency rows as single words; only meaningful for `n <= 64`.
    pub(crate) fn rows64(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        if self.n == 0 {
            return Vec::new();
        }
        self.adj.clone()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        if s.order() == self.n {
            Ok(())
        } else {
            Err(GraphError::OrderMismatch { expected: self.n, found: s.order() })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bits::test_bit(self.row(u), v)
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::popcount(self.row(v))
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// `N(v)`.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighbor_set(v);
        s.insert(v);
        s
    }

    /// The vertices at distance exactly two from `v`.
    pub fn distance2(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_words(self.n, self.dist2_row(v).to_vec()))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// A vertex adjacent to every other vertex, if any.
    pub fn dominating_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.degree(v) + 1 == self.n)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut adj = self.adj.clone();
        let w = self.words;
        bits::set_bit(&mut adj[u * w..(u + 1) * w], v);
        bits::set_bit(&mut adj[v * w..(v + 1) * w], u);
        Ok(Graph::from_adjacency(self.n, adj))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut adj = self.adj.clone();
        let w = self.words;
        bits::clear_bit(&mut adj[u * w..(u + 1) * w], v);
        bits::clear_bit(&mut adj[v * w..(v + 1) * w], u);
        Ok(Graph::from_adjacency(self.n, adj))
    }

    /// Appends `k` isolated vertices labelled `n..n+k`.
    pub fn with_new_vertices(&self, k: usize) -> Graph {
        let edges = self.edges();
        Graph::from_edges(self.n + k, edges).expect("edges stay in range")
    }

    /// Replaces edge `uv` by the path `u, x1, .., xk, v`, where the new
    /// vertices are labelled `n, n+1, .., n+k-1` in path order from `u`.
    pub fn subdivide_edge(&self, u: usize, v: usize, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameter("subdivision count must be >= 1".into()));
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let n = self.n;
        let mut edges: Vec<(usize, usize)> =
            self.edges().into_iter().filter(|&(a, b)| !((a, b) == (u, v) || (a, b) == (v, u))).collect();
        let mut prev = u;
        for i in 0..k {
            edges.push((prev, n + i));
            prev = n + i;
        }
        edges.push((prev, v));
        Graph::from_edges(n + k, edges)
    }

    /// The subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.neighbors(v)
                .filter_map(move |u| (index[u] != usize::MAX && index[u] > i).then_some((i, index[u])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("induced edges in range")
    }

    /// Deletes `removed`; survivors keep their relative order. Returns the
    /// new graph and, for each new label, the old label.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed.contains(v)).collect();
        (self.induced_subgraph(&keep), keep)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(a, b)| (a + off, b + off)));
        Graph::from_edges(self.n + other.n, edges.collect::<Vec<_>>()).expect("union edges in range")
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b]));
        Graph::from_edges(self.n, edges.collect::<Vec<_>>()).expect("permutation in range")
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Breadth-first distances from `s` (`usize::MAX` when unreachable).
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Builds a vertex set of this graph's order, checking labels.
    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, vertices: I) -> Result<VertexSet, GraphError> {
        let mut s = VertexSet::new(self.n);
        for v in vertices {
            self.check_vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance2_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.distance2(0).unwrap().to_vec(), vec![2, 3]);
        let k4 = Graph::complete(4);
        for v in 0..4 {
            assert!(k4.distance2(v).unwrap().is_empty());
        }
        let star = Graph::star(3);
        assert!(star.distance2(0).unwrap().is_empty());
        assert_eq!(star.distance2(1).unwrap().to_vec(), vec![2, 3]);
        assert!(matches!(c5.distance2(5), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn distance2_matches_bfs() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5), (5, 6)]).unwrap();
        for v in 0..7 {
            let d = g.distances_from(v);
            let expect: Vec<usize> = (0..7).filter(|&u| d[u] == 2).collect();
            assert_eq!(g.distance2(v).unwrap().to_vec(), expect);
        }
    }

    #[test]
    fn subdivision_examples() {
        let k3 = Graph::complete(3);
        let c4 = k3.subdivide_edge(0, 1, 1).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.degree_sequence().iter().all(|&d| d == 2));
        assert!(c4.is_connected());

        let c6 = Graph::cycle(6);
        let c9 = c6.subdivide_edge(2, 3, 3).unwrap();
        assert_eq!((c9.order(), c9.size()), (9, 9));
        assert_eq!(c9.max_degree(), 2);
        assert!(c9.is_connected());
        // new vertices appended in path order from u
        assert!(c9.has_edge(2, 6) && c9.has_edge(6, 7) && c9.has_edge(7, 8) && c9.has_edge(8, 3));

        assert_eq!(c6.subdivide_edge(0, 3, 1), Err(GraphError::NotAnEdge(0, 3)));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(6, [(4, 5), (0, 2), (1, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1, 3], vec![4, 5]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn remove_vertices_relabels() {
        let g = Graph::cycle(6);
        let (h, old) = g.remove_vertices(&VertexSet::from_vertices(6, [0, 3]));
        assert_eq!(old, vec![1, 2, 4, 5]);
        assert_eq!(h.edges(), vec![(0, 1), (2, 3)]);
    }
}
