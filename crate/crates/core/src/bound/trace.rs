//! Reduction traces: the steps applied to a graph, how to replay them
//! forward, and how to lift a kernel certificate back through them.
//!
//! A step first deletes `removed_edges`, then deletes the vertices in
//! `removed` (survivors keep their relative order), then appends
//! `new_vertices` fresh vertices and finally inserts `added_edges`, whose
//! endpoints use the post-step labels.
//!
//! Text form: one line per item, tab-separated, in pre-order:
//!
//! ```text
//! trace   <order>
//! step    <rule>  removed=<vs>  cut=<edges>  new=<k>  add=<edges>  lift=<lift>
//! split   <parts>
//! part    <vs>
//! leaf    <terminal>  set=<vs>
//! ```
//!
//! Vertex lists are comma-separated, edges are `u-v` joined by commas,
//! and empty lists are written `-`.

use std::fmt;
use std::str::FromStr;

use super::BoundError;
use crate::bits::VertexSet;
use crate::disjunctive::is_2dd_set;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Three consecutive degree-2 vertices of a linkage are contracted.
    LongLinkage,
    /// A pendant 4-cycle at a vertex of degree at least 4 is removed.
    PendantC4,
    /// A pendant `C_{3,1}`, `C_{4,3}` or `C_{5,2}` is removed.
    PendantTadpole,
    /// Two small pendant gadgets at one vertex become a single triangle.
    TwoGadgets,
    /// Beside a pendant `C_{4,2}` or `C_{5,1}`, another gadget at the same
    /// vertex is removed.
    TrimGadget,
    /// An edge between two vertices of degree at least 3 is deleted.
    EdgeDeletion,
    /// Path `x a y b z` through degree-2 `a`, `b`: edges `ax`, `bz` are
    /// replaced by `ab`.
    Rewire,
    /// A group of branch vertices with the linkages among them is cut
    /// out; the outside neighbours it leaves with degree 1 are paired up.
    Piece,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::LongLinkage,
        Rule::PendantC4,
        Rule::PendantTadpole,
        Rule::TwoGadgets,
        Rule::TrimGadget,
        Rule::EdgeDeletion,
        Rule::Rewire,
        Rule::Piece,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::LongLinkage => "R-linkage",
            Rule::PendantC4 => "R-pendant-c4",
            Rule::PendantTadpole => "R-pendant-tadpole",
            Rule::TwoGadgets => "R-two-gadgets",
            Rule::TrimGadget => "R-trim-gadget",
            Rule::EdgeDeletion => "R-edge-delete",
            Rule::Rewire => "R-rewire",
            Rule::Piece => "R-piece",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL.into_iter().find(|r| r.id() == s).ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

/// How a kernel certificate is carried back across a step. Vertex labels
/// are pre-step labels unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lift {
    /// The set is reused unchanged.
    Identity,
    /// Fixed vertices are added.
    Add(Vec<usize>),
    /// Linkage `u x1 x2 x3 v` was contracted to the edge `uv`; exactly one
    /// of the `x` vertices is added, chosen from how `u` and `v` are
    /// covered in the kernel.
    Linkage { u: usize, x: [usize; 3], v: usize },
    /// The smallest subset of `internal` completing the set is added.
    Extend(Vec<usize>),
    /// Two gadgets at `x` were replaced by the triangle `x t1 t2` (`t1`,
    /// `t2` in post-step labels). Any kernel vertex of that triangle is
    /// traded for `x`, then the set is completed inside `internal`.
    Triangle { x: usize, triangle: [usize; 2], internal: Vec<usize> },
    /// Gadget `keep` at `x` stayed, gadget `removed` was deleted. Unless
    /// `x` is in the set, the set's vertices inside `keep` are traded for
    /// `x`; then the set is completed inside both gadgets.
    Anchor { x: usize, keep: Vec<usize>, removed: Vec<usize> },
    /// Rewired path `x a y b z`: if the kernel set meets `{a, b, y}`,
    /// those vertices are replaced by `y`.
    Rewire { a: usize, y: usize, b: usize },
    /// A piece was cut out and is dominated by `set`. With `odd`, the
    /// unpaired outside neighbour `u` received a 4-cycle `u v1 v2 v3`
    /// (post labels); `u` joins the set when two or more `v`s were used.
    Piece { set: Vec<usize>, odd: Option<(usize, [usize; 3])> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub removed: Vec<usize>,
    pub removed_edges: Vec<(usize, usize)>,
    pub new_vertices: usize,
    pub added_edges: Vec<(usize, usize)>,
    pub lift: Lift,
}

impl Step {
    /// Net number of vertices the step removes.
    pub fn shrink(&self) -> usize {
        self.removed.len() - self.new_vertices
    }

    /// Largest certificate growth the step may cause when lifting.
    pub fn budget(&self) -> usize {
        self.shrink() / 3
    }

    /// Applies the step; returns the post-step graph and, for each
    /// surviving post-step label, its pre-step label.
    pub fn apply(&self, g: &Graph) -> Result<(Graph, Vec<usize>), BoundError> {
        let bad = |detail: String| BoundError::BadTrace(format!("{}: {detail}", self.rule));
        let mut h = g.clone();
        for &(a, b) in &self.removed_edges {
            h = h.without_edge(a, b).map_err(|e| bad(e.to_string()))?;
        }
        let removed = h.vertex_set(self.removed.iter().copied()).map_err(|e| bad(e.to_string()))?;
        let (h, keep) = h.remove_vertices(&removed);
        let mut h = h.with_new_vertices(self.new_vertices);
        for &(a, b) in &self.added_edges {
            if h.has_edge(a, b) {
                return Err(bad(format!("added edge {a}-{b} already present")));
            }
            h = h.with_edge(a, b).map_err(|e| bad(e.to_string()))?;
        }
        Ok((h, keep))
    }

    /// Carries `kernel_set` (a 2DD-set of `post`) back to `pre`.
    pub fn lift(&self, pre: &Graph, post: &Graph, keep: &[usize], kernel_set: &VertexSet) -> VertexSet {
        let mut set = VertexSet::new(pre.order());
        for v in kernel_set.iter().filter(|&v| v < keep.len()) {
            set.insert(keep[v]);
        }
        let post_label = |x: usize| keep.iter().position(|&k| k == x);
        match &self.lift {
            Lift::Identity => {}
            Lift::Add(vs) => vs.iter().for_each(|&v| {
                set.insert(v);
            }),
            Lift::Linkage { u, x, v } => {
                let (pu, pv) = (post_label(*u).expect("u survives"), post_label(*v).expect("v survives"));
                let touched = |a: usize, b: usize| {
                    kernel_set.contains(a) || post.neighbors(a).any(|w| w != b && kernel_set.contains(w))
                };
                let pick = if touched(pu, pv) {
                    if kernel_set.contains(pv) {
                        x[0]
                    } else {
                        x[2]
                    }
                } else if touched(pv, pu) {
                    x[0]
                } else {
                    x[1]
                };
                set.insert(pick);
            }
            Lift::Extend(internal) => complete_within(pre, &mut set, internal),
            Lift::Triangle { x, triangle, internal } => {
                let px = post_label(*x).expect("x survives");
                if [px, triangle[0], triangle[1]].iter().any(|&t| kernel_set.contains(t)) {
                    set.insert(*x);
                }
                complete_within(pre, &mut set, internal);
            }
            Lift::Anchor { x, keep, removed } => {
                if !set.contains(*x) {
                    keep.iter().for_each(|&v| {
                        set.remove(v);
                    });
                    set.insert(*x);
                }
                let pool: Vec<usize> = keep.iter().chain(removed).copied().collect();
                complete_within(pre, &mut set, &pool);
            }
            Lift::Rewire { a, y, b } => {
                if [a, y, b].iter().any(|&t| set.contains(*t)) {
                    set.remove(*a);
                    set.remove(*b);
                    set.insert(*y);
                }
            }
            Lift::Piece { set: piece, odd } => {
                piece.iter().for_each(|&v| {
                    set.insert(v);
                });
                if let Some((u, vs)) = odd {
                    if vs.iter().filter(|&&v| kernel_set.contains(v)).count() >= 2 {
                        set.insert(*u);
                    }
                }
            }
        }
        set
    }
}

/// Adds the smallest subset of `pool` that makes `set` a 2DD-set of `g`
/// (lexicographically first among the smallest). Leaves `set` unchanged
/// if no subset works.
pub(crate) fn complete_within(g: &Graph, set: &mut VertexSet, pool: &[usize]) {
    complete_up_to(g, set, pool, pool.len());
}

/// As [`complete_within`], trying subsets of at most `limit` vertices.
/// Returns whether `set` is now a 2DD-set.
pub(crate) fn complete_up_to(g: &Graph, set: &mut VertexSet, pool: &[usize], limit: usize) -> bool {
    for k in 0..=limit.min(pool.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut trial = set.clone();
            idx.iter().for_each(|&i| {
                trial.insert(pool[i]);
            });
            if is_2dd_set(g, &trial).expect("set matches graph order") {
                *set = trial;
                return true;
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == pool.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

/// How a fully reduced component was solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// Closed-form set on a cycle.
    Cycle,
    /// Exact solve of a graph of order at most 8.
    BaseCase,
    /// Exact solve of a kernel of order at most the kernel cap.
    Fallback,
    /// The core branch vertices, extended by the fewest extra vertices.
    Seeded,
}

impl Terminal {
    fn id(self) -> &'static str {
        match self {
            Terminal::Cycle => "R-cycle",
            Terminal::BaseCase => "R-base",
            Terminal::Fallback => "R-fallback",
            Terminal::Seeded => "R-seeded",
        }
    }
}

/// What happens after a node's steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum End {
    Leaf { terminal: Terminal, set: Vec<usize> },
    /// The graph fell apart; each part lists its vertices (current labels)
    /// and is reduced on its own.
    Split(Vec<(Vec<usize>, TraceNode)>),
}

/// Reduction of one connected piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub steps: Vec<Step>,
    pub end: End,
}

impl TraceNode {
    /// Total number of steps in this subtree.
    pub fn step_count(&self) -> usize {
        self.steps.len()
            + match &self.end {
                End::Leaf { .. } => 0,
                End::Split(parts) => parts.iter().map(|(_, n)| n.step_count()).sum(),
            }
    }

    /// Rule usage counts in this subtree.
    pub fn visit_rules(&self, f: &mut impl FnMut(&str)) {
        for s in &self.steps {
            f(s.rule.id());
        }
        match &self.end {
            End::Leaf { terminal, .. } => f(terminal.id()),
            End::Split(parts) => {
                f("R-components");
                parts.iter().for_each(|(_, n)| n.visit_rules(f));
            }
        }
    }

    /// Largest kernel handed to an exact solve in this subtree.
    pub fn largest_exact_kernel(&self, g: &Graph) -> Result<usize, BoundError> {
        let mut cur = g.clone();
        for s in &self.steps {
            cur = s.apply(&cur)?.0;
        }
        match &self.end {
            End::Leaf { terminal: Terminal::Cycle | Terminal::Seeded, .. } => Ok(0),
            End::Leaf { .. } => Ok(cur.order()),
            End::Split(parts) => parts.iter().try_fold(0, |m, (vs, n)| {
                Ok(m.max(n.largest_exact_kernel(&cur.induced_subgraph(vs))?))
            }),
        }
    }
}

/// Replayable record of a certification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub order: usize,
    pub root: TraceNode,
}

impl ReductionTrace {
    pub fn rule_counts(&self) -> Vec<(String, usize)> {
        let mut counts: Vec<(String, usize)> = Vec::new();
        self.root.visit_rules(&mut |id| match counts.iter_mut().find(|(k, _)| k == id) {
            Some((_, c)) => *c += 1,
            None => counts.push((id.to_string(), 1)),
        });
        counts
    }
}

/// Replays `node` forward from `g`, checks every leaf set on its kernel,
/// and lifts the sets back to a 2DD-set of `g`. Every lift is checked
/// against the graph it lands on and against the step budget.
pub fn replay(g: &Graph, node: &TraceNode) -> Result<VertexSet, BoundError> {
    let mut graphs = vec![g.clone()];
    let mut keeps = Vec::with_capacity(node.steps.len());
    for step in &node.steps {
        let (next, keep) = step.apply(graphs.last().expect("non-empty"))?;
        graphs.push(next);
        keeps.push(keep);
    }
    let kernel = graphs.last().expect("non-empty");
    let mut set = match &node.end {
        End::Leaf { terminal, set } => {
            let s = kernel
                .vertex_set(set.iter().copied())
                .map_err(|e| BoundError::BadTrace(format!("{}: {e}", terminal.id())))?;
            if !is_2dd_set(kernel, &s).expect("orders match") {
                return Err(BoundError::BadTrace(format!("{} set is not a 2DD-set of its kernel", terminal.id())));
            }
            s
        }
        End::Split(parts) => {
            let mut s = VertexSet::new(kernel.order());
            let mut seen = VertexSet::new(kernel.order());
            for (vs, child) in parts {
                for &v in vs {
                    if v >= kernel.order() || !seen.insert(v) {
                        return Err(BoundError::BadTrace(format!("split part vertex {v} invalid or repeated")));
                    }
                }
                let local = replay(&kernel.induced_subgraph(vs), child)?;
                local.iter().for_each(|v| {
                    s.insert(vs[v]);
                });
            }
            if seen.len() != kernel.order() {
                return Err(BoundError::BadTrace("split parts do not cover the graph".into()));
            }
            s
        }
    };
    for (i, step) in node.steps.iter().enumerate().rev() {
        let (pre, post) = (&graphs[i], &graphs[i + 1]);
        let lifted = step.lift(pre, post, &keeps[i], &set);
        if !is_2dd_set(pre, &lifted).expect("orders match") {
            return Err(BoundError::LiftFailed { rule: step.rule, kernel: post.clone(), detail: "not a 2DD-set".into() });
        }
        if lifted.len() > set.len() + step.budget() {
            return Err(BoundError::LiftFailed {
                rule: step.rule,
                kernel: post.clone(),
                detail: format!("grew from {} to {} with budget {}", set.len(), lifted.len(), step.budget()),
            });
        }
        set = lifted;
    }
    Ok(set)
}

fn list(vs: &[usize]) -> String {
    if vs.is_empty() {
        "-".into()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn edge_list(es: &[(usize, usize)]) -> String {
    if es.is_empty() {
        "-".into()
    } else {
        es.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lift::Identity => write!(f, "identity"),
            Lift::Add(vs) => write!(f, "add:{}", list(vs)),
            Lift::Linkage { u, x, v } => write!(f, "linkage:{u},{},{},{},{v}", x[0], x[1], x[2]),
            Lift::Extend(vs) => write!(f, "extend:{}", list(vs)),
            Lift::Triangle { x, triangle, internal } => {
                write!(f, "triangle:{x},{},{};{}", triangle[0], triangle[1], list(internal))
            }
            Lift::Anchor { x, keep, removed } => write!(f, "anchor:{x};{};{}", list(keep), list(removed)),
            Lift::Rewire { a, y, b } => write!(f, "rewire:{a},{y},{b}"),
            Lift::Piece { set, odd: None } => write!(f, "piece:{};-", list(set)),
            Lift::Piece { set, odd: Some((u, v)) } => write!(f, "piece:{};{u},{},{},{}", list(set), v[0], v[1], v[2]),
        }
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trace\t{}", self.order)?;
        write_node(f, &self.root)
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &TraceNode) -> fmt::Result {
    for s in &node.steps {
        writeln!(
            f,
            "step\t{}\tremoved={}\tcut={}\tnew={}\tadd={}\tlift={}",
            s.rule,
            list(&s.removed),
            edge_list(&s.removed_edges),
            s.new_vertices,
            edge_list(&s.added_edges),
            s.lift
        )?;
    }
    match &node.end {
        End::Leaf { terminal, set } => writeln!(f, "leaf\t{}\tset={}", terminal.id(), list(set)),
        End::Split(parts) => {
            writeln!(f, "split\t{}", parts.len())?;
            for (vs, child) in parts {
                writeln!(f, "part\t{}", list(vs))?;
                write_node(f, child)?;
            }
            Ok(())
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.parse().map_err(|_| format!("bad vertex {t:?}"))).collect()
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>, String> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(|| format!("bad edge {e:?}"))?;
            Ok((a.parse().map_err(|_| format!("bad edge {e:?}"))?, b.parse().map_err(|_| format!("bad edge {e:?}"))?))
        })
        .collect()
}

fn parse_lift(s: &str) -> Result<Lift, String> {
    let (kind, args) = s.split_once(':').unwrap_or((s, ""));
    let nums = |t: &str| parse_list(t);
    match kind {
        "identity" => Ok(Lift::Identity),
        "add" => Ok(Lift::Add(nums(args)?)),
        "extend" => Ok(Lift::Extend(nums(args)?)),
        "linkage" => match nums(args)?[..] {
            [u, a, b, c, v] => Ok(Lift::Linkage { u, x: [a, b, c], v }),
            _ => Err(format!("linkage lift needs 5 vertices: {s:?}")),
        },
        "triangle" => {
            let (head, internal) = args.split_once(';').ok_or_else(|| format!("bad triangle lift {s:?}"))?;
            match nums(head)?[..] {
                [x, t1, t2] => Ok(Lift::Triangle { x, triangle: [t1, t2], internal: nums(internal)? }),
                _ => Err(format!("triangle lift needs 3 vertices: {s:?}")),
            }
        }
        "anchor" => {
            let parts: Vec<&str> = args.split(';').collect();
            match parts[..] {
                [x, keep, removed] => Ok(Lift::Anchor {
                    x: x.parse().map_err(|_| format!("bad anchor vertex in {s:?}"))?,
                    keep: nums(keep)?,
                    removed: nums(removed)?,
                }),
                _ => Err(format!("bad anchor lift {s:?}")),
            }
        }
        "piece" => {
            let (set, odd) = args.split_once(';').ok_or_else(|| format!("bad piece lift {s:?}"))?;
            let odd = match nums(odd)?[..] {
                [] => None,
                [u, a, b, c] => Some((u, [a, b, c])),
                _ => return Err(format!("piece lift needs 0 or 4 gadget vertices: {s:?}")),
            };
            Ok(Lift::Piece { set: nums(set)?, odd })
        }
        "rewire" => match nums(args)?[..] {
            [a, y, b] => Ok(Lift::Rewire { a, y, b }),
            _ => Err(format!("rewire lift needs 3 vertices: {s:?}")),
        },
        _ => Err(format!("unknown lift {s:?}")),
    }
}

fn field<'a>(fields: &[&'a str], i: usize, key: &str) -> Result<&'a str, String> {
    fields
        .get(i)
        .and_then(|f| f.strip_prefix(key))
        .and_then(|f| f.strip_prefix('='))
        .ok_or_else(|| format!("expected field {key}= at position {i}"))
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, Vec<&'a str>), BoundError> {
        let item = self.lines.get(self.at).cloned().ok_or_else(|| BoundError::BadTrace("unexpected end of trace".into()))?;
        self.at += 1;
        Ok(item)
    }

    fn node(&mut self) -> Result<TraceNode, BoundError> {
        let mut steps = Vec::new();
        loop {
            let (line, f) = self.next()?;
            let bad = |m: String| BoundError::BadTrace(format!("line {line}: {m}"));
            match f[0] {
                "step" => {
                    if f.len() != 7 {
                        return Err(bad("step needs 7 fields".into()));
                    }
                    steps.push(Step {
                        rule: f[1].parse().map_err(bad)?,
                        removed: parse_list(field(&f, 2, "removed").map_err(bad)?).map_err(bad)?,
                        removed_edges: parse_edges(field(&f, 3, "cut").map_err(bad)?).map_err(bad)?,
                        new_vertices: field(&f, 4, "new").map_err(bad)?.parse().map_err(|_| bad("bad new=".into()))?,
                        added_edges: parse_edges(field(&f, 5, "add").map_err(bad)?).map_err(bad)?,
                        lift: parse_lift(field(&f, 6, "lift").map_err(bad)?).map_err(bad)?,
                    });
                }
                "leaf" => {
                    let terminal = match f.get(1).copied() {
                        Some("R-cycle") => Terminal::Cycle,
                        Some("R-base") => Terminal::BaseCase,
                        Some("R-fallback") => Terminal::Fallback,
                        Some("R-seeded") => Terminal::Seeded,
                        other => return Err(bad(format!("unknown terminal {other:?}"))),
                    };
                    let set = parse_list(field(&f, 2, "set").map_err(bad)?).map_err(bad)?;
                    return Ok(TraceNode { steps, end: End::Leaf { terminal, set } });
                }
                "split" => {
                    let k: usize = f.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad split count".into()))?;
                    let mut parts = Vec::with_capacity(k);
                    for _ in 0..k {
                        let (pline, pf) = self.next()?;
                        if pf[0] != "part" || pf.len() != 2 {
                            return Err(BoundError::BadTrace(format!("line {pline}: expected part")));
                        }
                        let vs = parse_list(pf[1]).map_err(|m| BoundError::BadTrace(format!("line {pline}: {m}")))?;
                        parts.push((vs, self.node()?));
                    }
                    return Ok(TraceNode { steps, end: End::Split(parts) });
                }
                other => return Err(bad(format!("unexpected record {other:?}"))),
            }
        }
    }
}

impl FromStr for ReductionTrace {
    type Err = BoundError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l.split('\t').collect()))
            .collect();
        let mut r = Lines { lines, at: 0 };
        let (line, head) = r.next()?;
        let order = match head[..] {
            ["trace", n] => n.parse().map_err(|_| BoundError::BadTrace(format!("line {line}: bad order")))?,
            _ => return Err(BoundError::BadTrace(format!("line {line}: expected trace header"))),
        };
        let root = r.node()?;
        if r.at != r.lines.len() {
            return Err(BoundError::BadTrace("trailing records after the trace".into()));
        }
        Ok(ReductionTrace { order, root })
    }
}
