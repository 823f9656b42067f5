//! Structural queries: leaves, linkages, cut vertices and bridges, pendant
//! cycles, pendant tadpoles and special pendant subgraphs.

use super::Graph;
use crate::bits::VertexSet;
use crate::catalog;

/// A maximal path whose internal vertices all have degree 2.
/// `start == end` for a closed linkage (a cycle through one branch vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linkage {
    pub start: usize,
    pub internal: Vec<usize>,
    pub end: usize,
}

/// An induced cycle hanging at a cut vertex of degree at least 4; all
/// other cycle vertices have degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantCycle {
    pub attachment: usize,
    /// Cycle vertices other than the attachment, in cyclic order.
    pub internal: Vec<usize>,
}

impl PendantCycle {
    pub fn len(&self) -> usize {
        self.internal.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A tadpole `C_{r,k}` hanging off `attachment` through a bridge: the
/// attachment plays the role of the tadpole's leaf, `path` holds the
/// `k - 1` degree-2 vertices leading away from it, and `cycle` starts at
/// the degree-3 vertex where the path meets the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantTadpole {
    pub attachment: usize,
    pub path: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl PendantTadpole {
    /// Cycle length `r`.
    pub fn r(&self) -> usize {
        self.cycle.len()
    }

    /// Tail length `k`, counting the attachment vertex.
    pub fn k(&self) -> usize {
        self.path.len() + 1
    }

    /// All vertices except the attachment.
    pub fn internal(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.path.iter().chain(&self.cycle).copied().collect();
        v.sort_unstable();
        v
    }
}

/// A forbidden-family graph joined to `attachment` by an edge subdivided
/// `path.len()` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPendant {
    pub attachment: usize,
    /// Subdivision vertices, in order from the attachment.
    pub path: Vec<usize>,
    /// The vertex of the forbidden graph receiving the join edge.
    pub anchor: usize,
    /// Vertices of the forbidden graph, sorted.
    pub body: Vec<usize>,
    /// Catalog name of the forbidden graph.
    pub gadget: String,
}

impl SpecialPendant {
    pub fn internal(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.path.iter().chain(&self.body).copied().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CutStructure {
    pub cut_vertices: Vec<usize>,
    /// Bridges as `(u, v)` with `u < v`, sorted.
    pub bridges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureReport {
    pub leaves: Vec<usize>,
    pub support_vertices: Vec<usize>,
    pub linkages: Vec<Linkage>,
    /// Components that are cycles, each listed in cyclic order.
    pub cycle_components: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    pub bridges: Vec<(usize, usize)>,
    pub pendant_cycles: Vec<PendantCycle>,
    pub pendant_tadpoles: Vec<PendantTadpole>,
    pub special_pendants: Vec<SpecialPendant>,
}

/// True iff `g` has no induced `K_{1,3}`.
pub fn is_claw_free(g: &Graph) -> bool {
    let w = g.words();
    for v in 0..g.order() {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                // a third neighbour of v adjacent to neither a nor b
                let (ra, rb, rv) = (g.row(a), g.row(b), g.row(v));
                let claw = (0..w).any(|k| {
                    let mut free = rv[k] & !ra[k] & !rb[k];
                    if k == a >> 6 {
                        free &= !(1u64 << (a & 63));
                    }
                    if k == b >> 6 {
                        free &= !(1u64 << (b & 63));
                    }
                    free != 0
                });
                if claw {
                    return false;
                }
            }
        }
    }
    true
}

/// Cut vertices and bridges (iterative lowpoint search).
pub fn cut_structure(g: &Graph) -> CutStructure {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // frames: (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < adj[v].len() {
                top.2 += 1;
                let u = adj[v][idx];
                if u == parent {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push((parent.min(v), parent.max(v)));
                    }
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();
    CutStructure {
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        bridges,
    }
}

/// Follows degree-2 vertices starting with the step `from -> first`.
/// Returns the degree-2 vertices visited and the first vertex whose degree
/// is not 2 (or `None` if the walk closes up inside a cycle component).
fn walk(g: &Graph, from: usize, first: usize) -> (Vec<usize>, Option<usize>) {
    let mut internal = Vec::new();
    let (mut prev, mut cur) = (from, first);
    while g.degree(cur) == 2 {
        if cur == from || internal.contains(&cur) {
            return (internal, None);
        }
        internal.push(cur);
        let next = g.neighbors(cur).find(|&x| x != prev).expect("degree-2 vertex has two neighbours");
        prev = cur;
        cur = next;
    }
    (internal, Some(cur))
}

fn linkages(g: &Graph) -> Vec<Linkage> {
    let mut out = Vec::new();
    for s in 0..g.order() {
        if g.degree(s) == 2 {
            continue;
        }
        for w in g.neighbors(s) {
            if g.degree(w) != 2 {
                continue;
            }
            let (internal, end) = walk(g, s, w);
            let end = end.expect("a walk from a branch vertex ends at a non-degree-2 vertex");
            let keep = if s == end {
                internal.first() < internal.last()
            } else {
                s < end
            };
            if keep {
                out.push(Linkage { start: s, internal, end });
            }
        }
    }
    out
}

fn cycle_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.len() < 3 || comp.iter().any(|&v| g.degree(v) != 2) {
            continue;
        }
        let start = comp[0];
        let mut cyc = vec![start];
        let (mut prev, mut cur) = (start, g.neighbors(start).next().expect("degree 2"));
        while cur != start {
            cyc.push(cur);
            let next = g.neighbors(cur).find(|&x| x != prev).expect("degree 2");
            prev = cur;
            cur = next;
        }
        out.push(cyc);
    }
    out
}

fn pendant_cycles(g: &Graph) -> Vec<PendantCycle> {
    let mut out = Vec::new();
    for x in 0..g.order() {
        if g.degree(x) < 4 {
            continue;
        }
        for w in g.neighbors(x) {
            if g.degree(w) != 2 {
                continue;
            }
            let (internal, end) = walk(g, x, w);
            if end == Some(x) && internal.len() >= 2 && internal[0] < internal[internal.len() - 1] {
                out.push(PendantCycle { attachment: x, internal });
            }
        }
    }
    out
}

/// Vertices reachable from `w` without using the edge `vw`.
fn side_of_bridge(g: &Graph, v: usize, w: usize) -> VertexSet {
    let mut seen = VertexSet::new(g.order());
    seen.insert(w);
    let mut stack = vec![w];
    while let Some(x) = stack.pop() {
        for y in g.neighbors(x) {
            if (x == w && y == v) || seen.contains(y) {
                continue;
            }
            seen.insert(y);
            stack.push(y);
        }
    }
    seen
}

fn pendant_pieces(g: &Graph, bridges: &[(usize, usize)]) -> (Vec<PendantTadpole>, Vec<SpecialPendant>) {
    let mut tadpoles = Vec::new();
    let mut specials = Vec::new();
    for &(a, b) in bridges {
        for (v, w) in [(a, b), (b, a)] {
            let piece = side_of_bridge(g, v, w);
            if piece.contains(v) {
                continue;
            }
            // subdivision path from v
            let mut path = Vec::new();
            let (mut prev, mut cur) = (v, w);
            while g.degree(cur) == 2 {
                path.push(cur);
                let next = g.neighbors(cur).find(|&x| x != prev).expect("degree 2");
                prev = cur;
                cur = next;
            }
            let anchor = cur;
            if g.degree(anchor) < 3 {
                continue;
            }
            let body: Vec<usize> = piece.iter().filter(|x| !path.contains(x)).collect();
            let sub = g.induced_subgraph(&body);
            if !sub.is_connected() || sub.min_degree() < 2 {
                continue;
            }
            if sub.max_degree() == 2 {
                let anchor_local = body.iter().position(|&x| x == anchor).expect("anchor in body");
                let mut cycle = vec![anchor];
                let (mut p, mut c) = (anchor_local, sub.neighbors(anchor_local).next().expect("degree 2"));
                while c != anchor_local {
                    cycle.push(body[c]);
                    let next = sub.neighbors(c).find(|&x| x != p).expect("degree 2");
                    p = c;
                    c = next;
                }
                tadpoles.push(PendantTadpole { attachment: v, path: path.clone(), cycle });
            }
            if let Some(name) = catalog::is_forbidden(&sub) {
                specials.push(SpecialPendant {
                    attachment: v,
                    path,
                    anchor,
                    body,
                    gadget: name.to_string(),
                });
            }
        }
    }
    (tadpoles, specials)
}

pub fn structure_report(g: &Graph) -> StructureReport {
    let leaves: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 1).collect();
    let mut support_vertices: Vec<usize> =
        leaves.iter().map(|&l| g.neighbors(l).next().expect("leaf has a neighbour")).collect();
    support_vertices.sort_unstable();
    support_vertices.dedup();
    let cut = cut_structure(g);
    let (pendant_tadpoles, special_pendants) = pendant_pieces(g, &cut.bridges);
    StructureReport {
        leaves,
        support_vertices,
        linkages: linkages(g),
        cycle_components: cycle_components(g),
        cut_vertices: cut.cut_vertices,
        bridges: cut.bridges,
        pendant_cycles: pendant_cycles(g),
        pendant_tadpoles,
        special_pendants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tadpole(s: usize, t: usize) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..s).map(|i| (i, (i + 1) % s)).collect();
        let mut prev = 0;
        for i in 0..t {
            edges.push((prev, s + i));
            prev = s + i;
        }
        Graph::from_edges(s + t, edges).unwrap()
    }

    #[test]
    fn tadpole_c42_report() {
        let g = tadpole(4, 2);
        let r = structure_report(&g);
        assert_eq!(r.leaves, vec![5]);
        assert_eq!(r.support_vertices, vec![4]);
        let tail: Vec<&Linkage> = r.linkages.iter().filter(|l| l.start != l.end).collect();
        assert_eq!(tail, vec![&Linkage { start: 0, internal: vec![4], end: 5 }]);
        assert!(r.pendant_cycles.is_empty());
        assert_eq!(r.bridges, vec![(0, 4), (4, 5)]);
    }

    #[test]
    fn bowtie_has_two_pendant_cycles() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let r = structure_report(&g);
        assert_eq!(r.pendant_cycles.len(), 2);
        assert!(r.pendant_cycles.iter().all(|c| c.attachment == 0 && c.len() == 3));
        assert_eq!(r.cut_vertices, vec![0]);
    }

    #[test]
    fn cycle_component_report() {
        let r = structure_report(&Graph::cycle(9));
        assert_eq!(r.cycle_components.len(), 1);
        assert_eq!(r.cycle_components[0].len(), 9);
        assert!(r.leaves.is_empty() && r.cut_vertices.is_empty() && r.linkages.is_empty());
    }

    #[test]
    fn tadpoles_and_special_pendants_off_a_triangle() {
        // triangle 0,1,2; vertex 0 joined through path 3,4 to a C4 on 5..8
        let mut edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)];
        edges.extend([(5, 6), (6, 7), (7, 8), (8, 5)]);
        let g = Graph::from_edges(9, edges).unwrap();
        let r = structure_report(&g);
        let t = r.pendant_tadpoles.iter().find(|t| t.attachment == 0).expect("tadpole at 0");
        assert_eq!((t.r(), t.k()), (4, 3));
        let s = r.special_pendants.iter().find(|s| s.attachment == 0).expect("special pendant at 0");
        assert_eq!((s.gadget.as_str(), s.path.clone(), s.anchor), ("C4", vec![3, 4], 5));
        assert_eq!(s.internal(), vec![3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn claw_detection() {
        assert!(is_claw_free(&Graph::cycle(7)));
        assert!(!is_claw_free(&Graph::star(3)));
        assert!(!is_claw_free(&Graph::complete_bipartite(2, 3)));
        assert!(is_claw_free(&Graph::complete(5)));
    }

    fn brute_claw_free(g: &Graph) -> bool {
        let n = g.order();
        for v in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let leaves = [a, b, c];
                        if leaves.contains(&v) || !leaves.iter().all(|&x| g.has_edge(v, x)) {
                            continue;
                        }
                        if !g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn brute_is_cut(g: &Graph, v: usize) -> bool {
        let before = g.components().len();
        let keep: Vec<usize> = (0..g.order()).filter(|&x| x != v).collect();
        g.induced_subgraph(&keep).components().len() > before - usize::from(g.degree(v) == 0)
    }

    proptest! {
        #[test]
        fn report_invariants(n in 1usize..12, mask in proptest::collection::vec(any::<bool>(), 66)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if mask[k] && mask[(k * 7 + 3) % 66] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let r = structure_report(&g);
            for l in &r.linkages {
                prop_assert!(l.internal.iter().all(|&x| g.degree(x) == 2));
                prop_assert!(g.degree(l.start) != 2 && g.degree(l.end) != 2);
            }
            for c in &r.pendant_cycles {
                prop_assert!(g.degree(c.attachment) >= 4);
                prop_assert!(r.cut_vertices.contains(&c.attachment));
            }
            prop_assert_eq!(is_claw_free(&g), brute_claw_free(&g));
            for v in 0..n {
                prop_assert_eq!(r.cut_vertices.contains(&v), brute_is_cut(&g, v));
            }
            for &(a, b) in &r.bridges {
                let h = g.without_edge(a, b).unwrap();
                prop_assert_eq!(h.components().len(), g.components().len() + 1);
            }
        }
    }
}
