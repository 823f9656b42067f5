//! The forbidden family, the claw-free exceptions, and an enumeration
//! oracle that rediscovers the forbidden family from scratch.
//!
//! The forbidden family ships as a graph6 data file (`data/forbidden.g6`)
//! that is embedded at build time. A different file can be installed with
//! [`set_active`] before first use; the CLI does this for `--catalog-path`.

use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::disjunctive::gamma_d2_value;
use crate::enumeration::{enumerate, EnumError, GenSpec};
use crate::families;
use crate::graph::{are_isomorphic, parse_graph6, Graph};

const BUILTIN: &str = include_str!("../data/forbidden.g6");

/// Largest order accepted by [`discover_violators`].
pub const DISCOVERY_MAX_ORDER: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Read from the catalog data file.
    Transcribed,
    /// Found by the enumeration oracle.
    OracleDiscovered,
    /// Built programmatically from a family constructor.
    Constructed,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub expected_gamma: usize,
    pub source: Source,
    degrees: Vec<usize>,
}

impl CatalogEntry {
    pub fn new(name: &str, graph: Graph, expected_gamma: usize, source: Source) -> CatalogEntry {
        CatalogEntry {
            name: name.to_string(),
            degrees: graph.degree_sequence(),
            graph,
            expected_gamma,
            source,
        }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Order, size and degree sequence agree, and the graphs are isomorphic.
    pub fn matches(&self, g: &Graph) -> bool {
        g.order() == self.graph.order()
            && g.size() == self.graph.size()
            && g.degree_sequence() == self.degrees
            && are_isomorphic(g, &self.graph)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {message}")]
    Io { path: String, message: String },
    #[error("catalog line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("catalog entry {name}: {message}")]
    Invalid { name: String, message: String },
    #[error("the active catalog is already installed")]
    AlreadyInstalled,
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// A parsed forbidden-family file.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses lines of the form `<graph6> # <name> gamma=<k>`.
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| CatalogError::Parse { line: line_no, message };
            let (code, comment) = line.split_once('#').ok_or_else(|| bad("missing `# name` comment".into()))?;
            let graph = parse_graph6(code.trim()).map_err(|e| bad(e.to_string()))?;
            let mut words = comment.split_whitespace();
            let name = words.next().ok_or_else(|| bad("empty name".into()))?;
            let gamma = words
                .find_map(|w| w.strip_prefix("gamma="))
                .ok_or_else(|| bad(format!("{name}: missing gamma=<k>")))?;
            let gamma = gamma.parse().map_err(|_| bad(format!("{name}: bad gamma {gamma:?}")))?;
            entries.push(CatalogEntry::new(name, graph, gamma, Source::Transcribed));
        }
        if entries.is_empty() {
            return Err(CatalogError::Parse { line: 0, message: "no entries".into() });
        }
        Ok(Catalog { entries })
    }

    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Catalog::parse(&text)
    }

    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN).expect("embedded catalog parses")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn lookup(&self, g: &Graph) -> Option<&CatalogEntry> {
        let mut candidates = self
            .entries
            .iter()
            .filter(|e| e.graph.order() == g.order() && e.graph.size() == g.size())
            .peekable();
        candidates.peek()?;
        let degrees = g.degree_sequence();
        candidates.find(|e| e.degrees == degrees && are_isomorphic(g, &e.graph))
    }

    /// Checks the structural claims made about the forbidden family:
    /// connected, minimum degree 2, pairwise non-isomorphic, and each
    /// violating the n/3 bound with the recorded value.
    pub fn validate(&self) -> Result<(), CatalogError> {
        for (i, e) in self.entries.iter().enumerate() {
            let invalid = |message: String| CatalogError::Invalid { name: e.name.clone(), message };
            let g = &e.graph;
            if !g.is_connected() || g.min_degree() < 2 {
                return Err(invalid("not connected with minimum degree 2".into()));
            }
            let gamma = gamma_d2_value(g).map_err(|err| invalid(err.to_string()))?;
            if gamma != e.expected_gamma {
                return Err(invalid(format!("solver gives {gamma}, file says {}", e.expected_gamma)));
            }
            if 3 * gamma <= g.order() {
                return Err(invalid("satisfies the n/3 bound".into()));
            }
            if let Some(other) = self.entries[..i].iter().find(|o| o.matches(g)) {
                return Err(invalid(format!("isomorphic to {}", other.name)));
            }
        }
        Ok(())
    }
}

static ACTIVE: OnceLock<Catalog> = OnceLock::new();

/// Installs the forbidden family used by every other module. Must run
/// before the first lookup.
pub fn set_active(catalog: Catalog) -> Result<(), CatalogError> {
    ACTIVE.set(catalog).map_err(|_| CatalogError::AlreadyInstalled)
}

fn active() -> &'static Catalog {
    ACTIVE.get_or_init(Catalog::builtin)
}

/// The forbidden family in catalog order.
pub fn forbidden_set() -> &'static [CatalogEntry] {
    active().entries()
}

/// Name of the forbidden-family member isomorphic to `g`, if any.
pub fn is_forbidden(g: &Graph) -> Option<&'static str> {
    active().lookup(g).map(|e| e.name.as_str())
}

/// Looks up a forbidden-family member by name.
pub fn forbidden_graph(name: &str) -> Option<&'static Graph> {
    forbidden_set().iter().find(|e| e.name == name).map(|e| &e.graph)
}

/// True iff some component of `g` is a forbidden-family member.
pub fn has_forbidden_component(g: &Graph) -> Option<(Vec<usize>, &'static str)> {
    g.components().into_iter().find_map(|comp| {
        let sub = g.induced_subgraph(&comp);
        is_forbidden(&sub).map(|name| (comp, name))
    })
}

/// The claw-free graphs excluded from the 2n/5 bound.
pub fn claw_free_exceptions() -> Vec<CatalogEntry> {
    let h3 = families::subdivided_star(3)
        .expect("t = 3 is in range")
        .with_edge(1, 2)
        .expect("support vertices 1 and 2 exist");
    vec![
        CatalogEntry::new("K1", Graph::empty(1), 1, Source::Constructed),
        CatalogEntry::new("P2", Graph::path(2), 1, Source::Constructed),
        CatalogEntry::new("P4", Graph::path(4), 2, Source::Constructed),
        CatalogEntry::new("C4", Graph::cycle(4), 2, Source::Constructed),
        CatalogEntry::new("H3", h3, 3, Source::Constructed),
    ]
}

/// Every connected graph with minimum degree 2 and order at most `n_max`
/// whose disjunctive domination number exceeds a third of its order, one
/// per isomorphism class, in order of increasing size.
pub fn discover_violators(n_max: usize) -> Result<Vec<Graph>, CatalogError> {
    if n_max > DISCOVERY_MAX_ORDER {
        return Err(EnumError::OrderTooLarge { order: n_max, cap: DISCOVERY_MAX_ORDER }.into());
    }
    let mut out = Vec::new();
    for n in 3..=n_max {
        let graphs = enumerate(&GenSpec::exhaustive(n).connected().min_degree(2))?;
        let mut found: Vec<Graph> = graphs
            .into_par_iter()
            .filter(|g| 3 * gamma_d2_value(g).expect("non-empty graph") > n)
            .collect();
        found.sort_by_key(|g| (g.size(), crate::graph::to_graph6(g)));
        out.extend(found);
    }
    Ok(out)
}
