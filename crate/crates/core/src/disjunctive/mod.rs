//! The 2D-domination predicate, certificates, and the exact solver.
//!
//! A vertex `v` is 2D-dominated by `S` when `N[v]` meets `S` or at least
//! two members of `S` lie at distance exactly 2 from `v`.

mod solver;

pub use solver::{gamma_d2, gamma_d2_cycle, gamma_d2_value, cycle_optimal_set, SolveError};

use std::fmt;

use crate::bits::VertexSet;
use crate::bound::ReductionTrace;
use crate::graph::{canonical_form, parse_graph6, to_graph6, wl_hash, Graph, Graph6Error, GraphError, CANON_MAX_ORDER};

pub fn is_2d_dominated(g: &Graph, s: &VertexSet, v: usize) -> Result<bool, GraphError> {
    g.check_set(s)?;
    g.check_vertex(v)?;
    Ok(s.contains(v) || s.intersects(g.row(v)) || s.intersection_len(g.dist2_row(v)) >= 2)
}

/// True iff every vertex outside `s` is 2D-dominated by `s`.
pub fn is_2dd_set(g: &Graph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_set(s)?;
    Ok((0..g.order()).all(|v| s.contains(v) || s.intersects(g.row(v)) || s.intersection_len(g.dist2_row(v)) >= 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexStatus {
    InSet,
    /// Adjacent to a member of the set.
    Adjacent,
    /// At least two members at distance 2 and none adjacent.
    TwoWitnesses,
    /// Exactly one member at distance 2 and none adjacent.
    OneWitness,
    Uncovered,
}

impl VertexStatus {
    pub fn is_covered(self) -> bool {
        matches!(self, VertexStatus::InSet | VertexStatus::Adjacent | VertexStatus::TwoWitnesses)
    }
}

/// Per-vertex coverage of a graph by a (partial) vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageState {
    status: Vec<VertexStatus>,
    witnesses: Vec<usize>,
}

impl CoverageState {
    pub fn new(g: &Graph, s: &VertexSet) -> Result<CoverageState, GraphError> {
        g.check_set(s)?;
        let mut status = Vec::with_capacity(g.order());
        let mut witnesses = Vec::with_capacity(g.order());
        for v in 0..g.order() {
            let w = s.intersection_len(g.dist2_row(v));
            witnesses.push(w);
            status.push(if s.contains(v) {
                VertexStatus::InSet
            } else if s.intersects(g.row(v)) {
                VertexStatus::Adjacent
            } else {
                match w {
                    0 => VertexStatus::Uncovered,
                    1 => VertexStatus::OneWitness,
                    _ => VertexStatus::TwoWitnesses,
                }
            });
        }
        Ok(CoverageState { status, witnesses })
    }

    pub fn status(&self, v: usize) -> VertexStatus {
        self.status[v]
    }

    /// Number of set members at distance exactly 2 from `v`.
    pub fn witnesses(&self, v: usize) -> usize {
        self.witnesses[v]
    }

    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.status.len()).filter(|&v| !self.status[v].is_covered()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.status.iter().all(|s| s.is_covered())
    }
}

/// Isomorphism-invariant identity of a graph: its order and a hash of its
/// canonical form (or of colour refinement beyond the canonical limit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub hash: u64,
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Fingerprint {
        let hash = if g.order() <= CANON_MAX_ORDER {
            canonical_form(g).expect("order within canonical limit").digest()
        } else {
            wl_hash(g)
        };
        Fingerprint { order: g.order(), hash }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}:{:016x}", self.order, self.hash)
    }
}

/// A vertex set claimed to be a 2DD-set of a particular graph.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub fingerprint: Fingerprint,
    pub set: VertexSet,
    pub size: usize,
    pub verified: bool,
    pub trace: Option<ReductionTrace>,
}

impl Certificate {
    /// Wraps `set`, checking it against `g`.
    pub fn new(g: &Graph, set: VertexSet) -> Result<Certificate, GraphError> {
        let verified = is_2dd_set(g, &set)?;
        Ok(Certificate {
            fingerprint: Fingerprint::of(g),
            size: set.len(),
            set,
            verified,
            trace: None,
        })
    }

    /// Re-checks the certificate against `g` (order, fingerprint, predicate).
    pub fn verify(&self, g: &Graph) -> bool {
        self.size == self.set.len()
            && self.fingerprint == Fingerprint::of(g)
            && is_2dd_set(g, &self.set).unwrap_or(false)
    }

    /// Tab-separated record: graph6, size, vertex list, verified flag.
    pub fn to_record(&self, g: &Graph) -> String {
        let verts: Vec<String> = self.set.iter().map(|v| v.to_string()).collect();
        format!("{}\t{}\t{}\t{}", to_graph6(g), self.size, verts.join(" "), self.verified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("expected 4 tab-separated fields, found {0}")]
    FieldCount(usize),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("bad size field {0:?}")]
    Size(String),
    #[error("bad vertex {0:?}")]
    Vertex(String),
    #[error("bad verified flag {0:?}")]
    Flag(String),
    #[error("size field {claimed} disagrees with {actual} listed vertices")]
    SizeMismatch { claimed: usize, actual: usize },
}

/// A parsed certificate record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateRecord {
    pub graph: Graph,
    pub set: VertexSet,
    pub verified: bool,
}

pub fn parse_record(line: &str) -> Result<CertificateRecord, RecordError> {
    let fields: Vec<&str> = line.trim_end_matches(['\n', '\r']).split('\t').collect();
    if fields.len() != 4 {
        return Err(RecordError::FieldCount(fields.len()));
    }
    let graph = parse_graph6(fields[0])?;
    let size: usize = fields[1].parse().map_err(|_| RecordError::Size(fields[1].into()))?;
    let mut set = VertexSet::new(graph.order());
    for tok in fields[2].split_whitespace() {
        let v: usize = tok.parse().map_err(|_| RecordError::Vertex(tok.into()))?;
        if v >= graph.order() {
            return Err(RecordError::Vertex(tok.into()));
        }
        set.insert(v);
    }
    if set.len() != size {
        return Err(RecordError::SizeMismatch { claimed: size, actual: set.len() });
    }
    let verified = match fields[3] {
        "true" => true,
        "false" => false,
        other => return Err(RecordError::Flag(other.into())),
    };
    Ok(CertificateRecord { graph, set, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn predicate_examples() {
        let c7 = Graph::cycle(7);
        assert!(is_2d_dominated(&c7, &set(7, &[0, 3]), 5).unwrap());
        assert!(!is_2d_dominated(&c7, &set(7, &[0]), 5).unwrap());
        let k23 = Graph::complete_bipartite(2, 3);
        assert!(!is_2d_dominated(&k23, &set(5, &[0]), 1).unwrap());
        assert!(is_2d_dominated(&k23, &set(5, &[0]), 0).unwrap());
        let c4 = Graph::cycle(4);
        assert!(is_2dd_set(&c4, &set(4, &[0, 1])).unwrap());
        assert!(!is_2dd_set(&c4, &set(4, &[0])).unwrap());
        assert!(is_2dd_set(&c4, &VertexSet::full(4)).unwrap());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let c4 = Graph::cycle(4);
        assert!(matches!(
            is_2dd_set(&c4, &set(5, &[0])),
            Err(GraphError::OrderMismatch { expected: 4, found: 5 })
        ));
        assert!(is_2d_dominated(&c4, &set(4, &[0]), 9).is_err());
    }

    #[test]
    fn coverage_states() {
        // C8 with S = {0}: 1 and 7 adjacent, 2 and 6 one witness, rest uncovered
        let c8 = Graph::cycle(8);
        let st = CoverageState::new(&c8, &set(8, &[0])).unwrap();
        assert_eq!(st.status(0), VertexStatus::InSet);
        assert_eq!(st.status(1), VertexStatus::Adjacent);
        assert_eq!(st.status(2), VertexStatus::OneWitness);
        assert_eq!(st.uncovered(), vec![2, 3, 4, 5, 6]);
        let st = CoverageState::new(&c8, &set(8, &[0, 4])).unwrap();
        assert_eq!(st.status(2), VertexStatus::TwoWitnesses);
        assert!(st.is_complete());
    }

    #[test]
    fn record_round_trip() {
        let g = Graph::cycle(8);
        let cert = Certificate::new(&g, set(8, &[0, 4])).unwrap();
        assert!(cert.verified && cert.verify(&g));
        let line = cert.to_record(&g);
        let rec = parse_record(&line).unwrap();
        assert_eq!((rec.graph, rec.set, rec.verified), (g, set(8, &[0, 4]), true));
        assert!(matches!(parse_record("Gxx\t1\t0"), Err(RecordError::FieldCount(3))));
        assert!(matches!(parse_record("Bw\t2\t0\ttrue"), Err(RecordError::SizeMismatch { .. })));
    }

    #[test]
    fn fingerprint_is_relabelling_invariant() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let h = g.permuted(&[5, 3, 1, 0, 2, 4]);
        assert_eq!(Fingerprint::of(&g), Fingerprint::of(&h));
        assert_ne!(Fingerprint::of(&g), Fingerprint::of(&Graph::path(6)));
    }
}
