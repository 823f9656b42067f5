//! Constructive certification of `γ²ᵈ(G) <= ⌊n/3⌋`.
//!
//! The engine shrinks the graph with reduction rules until a kernel is
//! left that is a cycle, has order at most 8, or is small enough to solve
//! exactly, then lifts the kernel's set back through every step. Each
//! lifted set is checked against the graph it lands on and against the
//! step's growth budget, and the final set is re-checked on the input.
//!
//! Rule order on a connected graph: cycle, base case, linkage
//! contraction, pendant gadgets, exact fallback (order at most the kernel
//! cap). With the extended rules on, edge deletion, rewiring and piece
//! splitting follow, and a kernel that still resists is completed from
//! its branch vertices. Disconnected graphs are split into components
//! first.

mod rules;
mod trace;

pub use rules::{
    contract_long_linkage, delete_edge, merge_two_gadgets, rewire, split_piece, strip_pendant_c4, strip_pendant_gadget,
    strip_pendant_tadpole, trim_gadget,
};
pub use trace::{replay, End, Lift, ReductionTrace, Rule, Step, Terminal, TraceNode};

use thiserror::Error;

use crate::bits::VertexSet;
use crate::catalog::has_forbidden_component;
use crate::disjunctive::{cycle_optimal_set, gamma_d2, Certificate, SolveError};
use crate::graph::{structure_report, to_graph6, Graph};

/// Kernel order up to which the exact solver is used.
pub const DEFAULT_KERNEL_CAP: usize = 12;

/// Order up to which every connected piece is solved exactly.
pub const BASE_CASE_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("irreducible kernel of order {} ({})", .kernel.order(), to_graph6(.kernel))]
    IrreducibleKernel { kernel: Graph },
    #[error("kernel {} needs {gamma} vertices, more than {bound}", to_graph6(.kernel))]
    PaperConsistency { kernel: Graph, gamma: usize, bound: usize },
    #[error("{rule} lift failed on kernel {}: {detail}", to_graph6(.kernel))]
    LiftFailed { rule: Rule, kernel: Graph, detail: String },
    #[error("malformed trace: {0}")]
    BadTrace(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundOptions {
    pub kernel_cap: usize,
    /// Enables edge deletion, rewiring, piece splitting and the seeded
    /// terminal once the other rules are stuck.
    pub extended: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { kernel_cap: DEFAULT_KERNEL_CAP, extended: true }
    }
}

/// Checks the hypotheses: at least 3 vertices, minimum degree 2, and no
/// component in the forbidden family.
pub fn check_preconditions(g: &Graph) -> Result<(), BoundError> {
    if g.order() < 3 {
        return Err(BoundError::Precondition(format!("order {} is below 3", g.order())));
    }
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) < 2) {
        return Err(BoundError::Precondition(format!("vertex {v} has degree {}", g.degree(v))));
    }
    if let Some((comp, name)) = has_forbidden_component(g) {
        return Err(BoundError::Precondition(format!("component {comp:?} is the forbidden graph {name}")));
    }
    Ok(())
}

/// Certifies the bound with default options apart from the kernel cap.
pub fn certify_bound(g: &Graph, kernel_cap: usize) -> Result<Certificate, BoundError> {
    certify_bound_with(g, BoundOptions { kernel_cap, ..BoundOptions::default() })
}

/// Returns a verified 2DD-set of size at most `⌊n/3⌋` together with the
/// trace that produced it.
pub fn certify_bound_with(g: &Graph, opts: BoundOptions) -> Result<Certificate, BoundError> {
    check_preconditions(g)?;
    let root = reduce(g, opts)?;
    let set = replay(g, &root)?;
    let bound = g.order() / 3;
    if set.len() > bound {
        return Err(BoundError::PaperConsistency { kernel: g.clone(), gamma: set.len(), bound });
    }
    let mut cert = Certificate::new(g, set).expect("set has the graph's order");
    if !cert.verified {
        return Err(BoundError::BadTrace("final set fails on the input graph".into()));
    }
    cert.trace = Some(ReductionTrace { order: g.order(), root });
    Ok(cert)
}

fn next_step(g: &Graph, extended: bool) -> Option<Step> {
    if extended {
        delete_edge(g).or_else(|| rewire(g)).or_else(|| split_piece(g))
    } else {
        contract_long_linkage(g).or_else(|| strip_pendant_gadget(g))
    }
}

fn exact_leaf(g: &Graph, terminal: Terminal) -> Result<End, BoundError> {
    let bound = g.order() / 3;
    match gamma_d2(g, Some(bound)) {
        Ok(cert) => Ok(End::Leaf { terminal, set: cert.set.to_vec() }),
        Err(SolveError::BudgetExceeded { .. }) => {
            let gamma = gamma_d2(g, None)?.size;
            Err(BoundError::PaperConsistency { kernel: g.clone(), gamma, bound })
        }
        Err(e) => Err(e.into()),
    }
}

fn cycle_leaf(g: &Graph) -> Result<End, BoundError> {
    let mut order = vec![0];
    let (mut prev, mut cur) = (0, g.neighbors(0).next().expect("cycle vertex has neighbours"));
    while cur != 0 {
        order.push(cur);
        let next = g.neighbors(cur).find(|&x| x != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    let positions: VertexSet = cycle_optimal_set(order.len())?;
    Ok(End::Leaf { terminal: Terminal::Cycle, set: positions.iter().map(|i| order[i]).collect() })
}

/// Largest number of candidate subsets the seeded terminal examines.
const SEEDED_SEARCH_LIMIT: u64 = 2_000_000;

/// Branch vertices that are not inside a pendant gadget.
fn core_branch_vertices(g: &Graph) -> Vec<usize> {
    let report = structure_report(g);
    let mut inner = VertexSet::new(g.order());
    for t in report.pendant_tadpoles.iter().filter(|t| g.degree(t.attachment) >= 3) {
        t.internal().into_iter().for_each(|v| {
            inner.insert(v);
        });
    }
    for s in &report.special_pendants {
        s.internal().into_iter().for_each(|v| {
            inner.insert(v);
        });
    }
    (0..g.order()).filter(|&v| g.degree(v) >= 3 && !inner.contains(v)).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Seeds the set with the core branch vertices and adds the fewest other
/// vertices that complete it, within `⌊n/3⌋` in total.
fn seeded_leaf(g: &Graph) -> Option<End> {
    let core = core_branch_vertices(g);
    let room = (g.order() / 3).checked_sub(core.len())?;
    let pool: Vec<usize> = (0..g.order()).filter(|v| !core.contains(v)).collect();
    let work: u64 = (0..=room as u64).map(|k| binomial(pool.len() as u64, k)).sum();
    if work > SEEDED_SEARCH_LIMIT {
        return None;
    }
    let mut set = VertexSet::from_vertices(g.order(), core);
    trace::complete_up_to(g, &mut set, &pool, room).then(|| End::Leaf { terminal: Terminal::Seeded, set: set.to_vec() })
}

fn reduce(g: &Graph, opts: BoundOptions) -> Result<TraceNode, BoundError> {
    let mut steps = Vec::new();
    let mut cur = g.clone();
    let end = loop {
        if !cur.is_connected() {
            let parts = cur
                .components()
                .into_iter()
                .map(|comp| Ok((comp.clone(), reduce(&cur.induced_subgraph(&comp), opts)?)))
                .collect::<Result<Vec<_>, BoundError>>()?;
            break End::Split(parts);
        }
        if cur.max_degree() <= 2 {
            break cycle_leaf(&cur)?;
        }
        if cur.order() <= BASE_CASE_ORDER {
            break exact_leaf(&cur, Terminal::BaseCase)?;
        }
        if let Some(step) = next_step(&cur, false) {
            cur = step.apply(&cur)?.0;
            steps.push(step);
            continue;
        }
        if cur.order() <= opts.kernel_cap {
            break exact_leaf(&cur, Terminal::Fallback)?;
        }
        if let Some(step) = opts.extended.then(|| next_step(&cur, true)).flatten() {
            cur = step.apply(&cur)?.0;
            steps.push(step);
            continue;
        }
        if opts.extended {
            if let Some(end) = seeded_leaf(&cur) {
                break end;
            }
        }
        return Err(BoundError::IrreducibleKernel { kernel: cur });
    };
    Ok(TraceNode { steps, end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{tadpole, u_extremal};

    #[test]
    fn preconditions() {
        assert!(matches!(certify_bound(&Graph::path(5), 12), Err(BoundError::Precondition(_))));
        assert!(matches!(certify_bound(&Graph::cycle(4), 12), Err(BoundError::Precondition(_))));
        assert!(matches!(certify_bound(&Graph::cycle(5), 12), Err(BoundError::Precondition(_))));
        assert!(matches!(certify_bound(&Graph::empty(2), 12), Err(BoundError::Precondition(_))));
    }

    #[test]
    fn cycles_use_the_closed_form() {
        for n in [3, 6, 7, 40, 301] {
            let cert = certify_bound(&Graph::cycle(n), 12).unwrap();
            assert!(cert.verified && cert.size <= n / 3, "C{n}");
            let trace = cert.trace.unwrap();
            assert!(matches!(trace.root.end, End::Leaf { terminal: Terminal::Cycle, .. }));
        }
    }

    #[test]
    fn extremal_graphs_are_tight() {
        for n in 2..=5 {
            let g = u_extremal(n).unwrap();
            let cert = certify_bound(&g, 12).unwrap();
            assert_eq!(cert.size, 2 * n, "u({n})");
        }
    }

    #[test]
    fn trace_round_trips_and_replays() {
        let mut g = tadpole(5, 9).unwrap();
        let leaf = g.order() - 1;
        g = g.with_edge(leaf, 2).unwrap();
        let cert = certify_bound(&g, 12).unwrap();
        let trace = cert.trace.unwrap();
        let text = trace.to_string();
        let back: ReductionTrace = text.parse().unwrap();
        assert_eq!(back, trace);
        let set = replay(&g, &back.root).unwrap();
        assert_eq!(set, cert.set);
        assert!(matches!("trace\t3\nbogus".parse::<ReductionTrace>(), Err(BoundError::BadTrace(_))));
    }

    #[test]
    fn stubborn_kernels_need_the_extended_rules() {
        for (code, strict_fails) in [
            ("M`??_WG?ODs?W?P??", true),
            ("MCG?A?B_?_`_HGOc?", true),
            ("NOOOQA??poC??H@?A?G", false),
            ("N?@?Sq??B?G_GK?CAOG", true),
        ] {
            let g = crate::graph::parse_graph6(code).unwrap();
            let strict = certify_bound_with(&g, BoundOptions { kernel_cap: 12, extended: false });
            assert_eq!(matches!(strict, Err(BoundError::IrreducibleKernel { .. })), strict_fails, "{code}");
            let cert = certify_bound(&g, 12).unwrap();
            assert!(cert.verified && cert.size <= g.order() / 3, "{code}");
            let trace = cert.trace.unwrap();
            let back: ReductionTrace = trace.to_string().parse().unwrap();
            assert_eq!(back, trace);
            assert_eq!(replay(&g, &back.root).unwrap(), cert.set);
        }
    }
}
