//! Reduction rules. Each finder returns the first applicable step in a
//! fixed scan order, or `None`. A step is only offered when its kernel
//! has no forbidden-family component.

use super::trace::{Lift, Rule, Step};
use crate::catalog::has_forbidden_component;
use crate::graph::{structure_report, Graph, PendantCycle, PendantTadpole};

fn admissible(g: &Graph, step: &Step) -> bool {
    match step.apply(g) {
        Ok((post, _)) => has_forbidden_component(&post).is_none(),
        Err(_) => false,
    }
}

/// Post-step label of a surviving vertex.
fn relabel(x: usize, removed: &[usize]) -> usize {
    x - removed.iter().filter(|&&r| r < x).count()
}

fn other_neighbor(g: &Graph, x: usize, not: usize) -> usize {
    g.neighbors(x).find(|&y| y != not).expect("degree-2 vertex has two neighbours")
}

/// Path `u x1 x2 x3 v` with `x1, x2, x3` of degree 2 and `uv` not an edge:
/// delete the `x`s and join `u` to `v`.
pub fn contract_long_linkage(g: &Graph) -> Option<Step> {
    for x2 in (0..g.order()).filter(|&x| g.degree(x) == 2) {
        let mut nb = g.neighbors(x2);
        let (x1, x3) = (nb.next()?, nb.next()?);
        if g.degree(x1) != 2 || g.degree(x3) != 2 {
            continue;
        }
        let (u, v) = (other_neighbor(g, x1, x2), other_neighbor(g, x3, x2));
        if u == x3 || v == x1 || u == v || g.has_edge(u, v) {
            continue;
        }
        let mut removed = vec![x1, x2, x3];
        removed.sort_unstable();
        let step = Step {
            rule: Rule::LongLinkage,
            added_edges: vec![(relabel(u, &removed), relabel(v, &removed))],
            removed,
            removed_edges: Vec::new(),
            new_vertices: 0,
            lift: Lift::Linkage { u, x: [x1, x2, x3], v },
        };
        if admissible(g, &step) {
            return Some(step);
        }
    }
    None
}

/// Pendant 4-cycle at `x`: delete it and add the vertex opposite `x`.
pub fn strip_pendant_c4(g: &Graph) -> Option<Step> {
    structure_report(g).pendant_cycles.into_iter().filter(|c| c.len() == 4).find_map(|c| {
        let mut removed = c.internal.clone();
        removed.sort_unstable();
        let step = Step {
            rule: Rule::PendantC4,
            removed,
            removed_edges: Vec::new(),
            new_vertices: 0,
            added_edges: Vec::new(),
            lift: Lift::Add(vec![c.internal[1]]),
        };
        admissible(g, &step).then_some(step)
    })
}

fn tadpole_is(t: &PendantTadpole, shapes: &[(usize, usize)]) -> bool {
    shapes.contains(&(t.r(), t.k()))
}

/// Pendant `C_{3,1}`, `C_{4,3}` or `C_{5,2}` at a vertex of degree at
/// least 3: delete it and complete the lifted set inside it.
pub fn strip_pendant_tadpole(g: &Graph) -> Option<Step> {
    structure_report(g)
        .pendant_tadpoles
        .into_iter()
        .filter(|t| g.degree(t.attachment) >= 3 && tadpole_is(t, &[(3, 1), (4, 3), (5, 2)]))
        .find_map(|t| {
            let removed = t.internal();
            let step = Step {
                rule: Rule::PendantTadpole,
                removed: removed.clone(),
                removed_edges: Vec::new(),
                new_vertices: 0,
                added_edges: Vec::new(),
                lift: Lift::Extend(removed),
            };
            admissible(g, &step).then_some(step)
        })
}

/// Internal vertices of the small gadgets hanging at each vertex: pendant
/// `C3` and `C5`, and pendant `C_{3,2}`, `C_{3,3}`, `C_{4,1}`, `C_{5,3}`.
fn small_gadgets(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let report = structure_report(g);
    let cycles = report
        .pendant_cycles
        .into_iter()
        .filter(|c: &PendantCycle| c.len() == 3 || c.len() == 5)
        .map(|c| {
            let mut v = c.internal;
            v.sort_unstable();
            (c.attachment, v)
        });
    let tadpoles = report
        .pendant_tadpoles
        .into_iter()
        .filter(|t| tadpole_is(t, &[(3, 2), (3, 3), (4, 1), (5, 3)]))
        .map(|t| (t.attachment, t.internal()));
    cycles.chain(tadpoles).collect()
}

/// Two small gadgets at the same vertex `x`: delete both and hang a
/// single triangle at `x`.
pub fn merge_two_gadgets(g: &Graph) -> Option<Step> {
    let gadgets = small_gadgets(g);
    for (i, (x, a)) in gadgets.iter().enumerate() {
        for (y, b) in &gadgets[i + 1..] {
            if x != y || a.iter().any(|v| b.contains(v)) {
                continue;
            }
            let mut removed: Vec<usize> = a.iter().chain(b).copied().collect();
            removed.sort_unstable();
            let base = g.order() - removed.len();
            let px = relabel(*x, &removed);
            let step = Step {
                rule: Rule::TwoGadgets,
                removed: removed.clone(),
                removed_edges: Vec::new(),
                new_vertices: 2,
                added_edges: vec![(px, base), (px, base + 1), (base, base + 1)],
                lift: Lift::Triangle { x: *x, triangle: [base, base + 1], internal: removed },
            };
            if admissible(g, &step) {
                return Some(step);
            }
        }
    }
    None
}

/// Every pendant cycle of length 3 to 5 and every pendant tadpole
/// `C_{r,k}` with `3 <= r <= 5`, `1 <= k <= 3`, as attachment, shape
/// `(r, k)` (`k = 0` for a cycle) and sorted internal vertices.
fn all_gadgets(g: &Graph) -> Vec<(usize, (usize, usize), Vec<usize>)> {
    let report = structure_report(g);
    let cycles = report.pendant_cycles.into_iter().filter(|c| c.len() <= 5).map(|c| {
        let mut v = c.internal.clone();
        v.sort_unstable();
        (c.attachment, (c.len(), 0), v)
    });
    let tadpoles = report
        .pendant_tadpoles
        .into_iter()
        .filter(|t| g.degree(t.attachment) >= 3 && (3..=5).contains(&t.r()) && t.k() <= 3)
        .map(|t| (t.attachment, (t.r(), t.k()), t.internal()));
    cycles.chain(tadpoles).collect()
}

/// A pendant `C_{4,2}` or `C_{5,1}` and a second gadget at the same
/// vertex: delete the second gadget.
pub fn trim_gadget(g: &Graph) -> Option<Step> {
    let gadgets = all_gadgets(g);
    for (x, shape, keep) in &gadgets {
        if *shape != (4, 2) && *shape != (5, 1) {
            continue;
        }
        for (y, _, other) in &gadgets {
            if x != y || other == keep || other.iter().any(|v| keep.contains(v)) {
                continue;
            }
            let step = Step {
                rule: Rule::TrimGadget,
                removed: other.clone(),
                removed_edges: Vec::new(),
                new_vertices: 0,
                added_edges: Vec::new(),
                lift: Lift::Anchor { x: *x, keep: keep.clone(), removed: other.clone() },
            };
            if admissible(g, &step) {
                return Some(step);
            }
        }
    }
    None
}

/// The pendant-gadget rules in their fixed order.
pub fn strip_pendant_gadget(g: &Graph) -> Option<Step> {
    strip_pendant_c4(g)
        .or_else(|| strip_pendant_tadpole(g))
        .or_else(|| merge_two_gadgets(g))
        .or_else(|| trim_gadget(g))
}

/// Deletes an edge whose endpoints both have degree at least 3. Any
/// 2DD-set of the smaller graph is one of the larger graph.
pub fn delete_edge(g: &Graph) -> Option<Step> {
    g.edges().into_iter().filter(|&(u, v)| g.degree(u) >= 3 && g.degree(v) >= 3).find_map(|e| {
        let step = Step {
            rule: Rule::EdgeDeletion,
            removed: Vec::new(),
            removed_edges: vec![e],
            new_vertices: 0,
            added_edges: Vec::new(),
            lift: Lift::Identity,
        };
        admissible(g, &step).then_some(step)
    })
}

/// Path `x a y b z` with `a`, `b` of degree 2, `x`, `y`, `z` of degree at
/// least 3 and `x != z`: replace `ax` and `bz` by `ab`, closing a
/// triangle `y a b`.
pub fn rewire(g: &Graph) -> Option<Step> {
    let deg2 = |v: usize| g.degree(v) == 2;
    for y in (0..g.order()).filter(|&y| g.degree(y) >= 3) {
        let arms: Vec<(usize, usize)> = g
            .neighbors(y)
            .filter(|&a| deg2(a))
            .map(|a| (a, other_neighbor(g, a, y)))
            .filter(|&(_, x)| g.degree(x) >= 3)
            .collect();
        for (i, &(a, x)) in arms.iter().enumerate() {
            for &(b, z) in &arms[i + 1..] {
                if x == z {
                    continue;
                }
                let step = Step {
                    rule: Rule::Rewire,
                    removed: Vec::new(),
                    removed_edges: vec![(a, x), (b, z)],
                    new_vertices: 0,
                    added_edges: vec![(a, b)],
                    lift: Lift::Rewire { a, y, b },
                };
                if admissible(g, &step) {
                    return Some(step);
                }
            }
        }
    }
    None
}

/// Largest number of branch vertices in a piece.
const PIECE_MAX_BRANCH: usize = 5;
/// Largest piece order.
const PIECE_MAX_ORDER: usize = 20;
/// Largest number of leaving linkages whose absorption is tried in every
/// combination.
const PIECE_MAX_ABSORB: usize = 4;

/// Linkages between branch vertices (degree at least 3), including plain
/// edges, as `(start, internal, end)`.
fn branch_linkages(g: &Graph) -> Vec<(usize, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for b in (0..g.order()).filter(|&b| g.degree(b) >= 3) {
        for w in g.neighbors(b) {
            let mut internal = Vec::new();
            let (mut prev, mut cur) = (b, w);
            while g.degree(cur) == 2 && cur != b {
                internal.push(cur);
                let next = other_neighbor(g, cur, prev);
                prev = cur;
                cur = next;
            }
            if b < cur || (b == cur && internal.first() <= internal.last()) {
                out.push((b, internal, cur));
            }
        }
    }
    out
}

/// Connected sets of branch vertices (joined by linkages) of size at most
/// `max`, by increasing size, then lexicographically.
fn branch_groups(g: &Graph, links: &[(usize, Vec<usize>, usize)], max: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.order()];
    for (a, _, b) in links {
        if a != b {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
    }
    let mut layer: Vec<Vec<usize>> = (0..g.order()).filter(|&b| g.degree(b) >= 3).map(|b| vec![b]).collect();
    let mut all = layer.clone();
    for _ in 1..max {
        let mut next = std::collections::BTreeSet::new();
        for q in &layer {
            for &v in q {
                for &w in &adj[v] {
                    if !q.contains(&w) {
                        let mut bigger = q.clone();
                        bigger.push(w);
                        bigger.sort_unstable();
                        next.insert(bigger);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Smallest set of at most `limit` vertices of `piece` that is a 2DD-set
/// of the induced piece and has a neighbour of every vertex in `outside`.
fn piece_dominator(g: &Graph, piece: &[usize], outside: &[usize], limit: usize) -> Option<Vec<usize>> {
    let sub = g.induced_subgraph(piece);
    let ports: Vec<Vec<usize>> =
        outside.iter().map(|&u| (0..piece.len()).filter(|&i| g.has_edge(u, piece[i])).collect()).collect();
    for k in 1..=limit.min(piece.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if ports.iter().all(|p| p.iter().any(|i| idx.contains(i))) {
                let set = crate::bits::VertexSet::from_vertices(piece.len(), idx.iter().copied());
                if crate::disjunctive::is_2dd_set(&sub, &set).expect("orders match") {
                    return Some(idx.iter().map(|&i| piece[i]).collect());
                }
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == piece.len() - k + i - 1 {
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
    None
}

/// Cuts out a group `Q` of branch vertices together with every linkage
/// whose ends both lie in `Q`. The piece `H` must have a 2DD-set of size
/// at most `⌊|H|/3⌋` that also dominates the outside neighbours of `H`.
/// Outside neighbours left with degree 1 are paired by new edges; an odd
/// one out gets a pendant 4-cycle. No other outside vertex may be
/// adjacent to two of the paired vertices.
pub fn split_piece(g: &Graph) -> Option<Step> {
    let links = branch_linkages(g);
    for q in branch_groups(g, &links, PIECE_MAX_BRANCH) {
        let mut core: Vec<usize> = q.clone();
        let mut leaving: Vec<&Vec<usize>> = Vec::new();
        for (a, internal, b) in &links {
            match (q.contains(a), q.contains(b)) {
                (true, true) => core.extend(internal),
                (true, false) | (false, true) if !internal.is_empty() => leaving.push(internal),
                _ => {}
            }
        }
        let variants: Vec<u32> = if leaving.len() <= PIECE_MAX_ABSORB {
            (0..1u32 << leaving.len()).collect()
        } else {
            vec![0, (1u32 << leaving.len()) - 1]
        };
        for mask in variants {
            let mut piece = core.clone();
            for (i, internal) in leaving.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    piece.extend(internal.iter());
                }
            }
            piece.sort_unstable();
            piece.dedup();
            if let Some(step) = piece_step(g, &piece, true) {
                return Some(step);
            }
        }
    }
    None
}

fn piece_step(g: &Graph, piece: &[usize], absorb: bool) -> Option<Step> {
    if piece.len() > PIECE_MAX_ORDER || piece.len() + 3 > g.order() {
        return None;
    }
    let in_piece = |v: usize| piece.binary_search(&v).is_ok();
    let mut outside: Vec<usize> = piece.iter().flat_map(|&h| g.neighbors(h)).filter(|&u| !in_piece(u)).collect();
    outside.sort_unstable();
    outside.dedup();
    let left = |u: usize| g.neighbors(u).filter(|&w| !in_piece(w)).count();
    if outside.iter().any(|&u| left(u) == 0) {
        return None;
    }
    let loose: Vec<usize> = outside.iter().copied().filter(|&u| left(u) == 1).collect();
    let crowded = (0..g.order())
        .filter(|&w| !in_piece(w) && !outside.contains(&w))
        .any(|w| loose.iter().filter(|&&u| g.has_edge(u, w)).count() > 1);
    if crowded {
        return None;
    }
    let set = piece_dominator(g, piece, &outside, piece.len() / 3)?;
    let rotations = if loose.len() >= 3 { 2 } else { 1 };
    for r in 0..rotations {
        let mut order = loose.clone();
        order.rotate_left(r);
        let pairs: Vec<(usize, usize)> = order.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        if pairs.iter().any(|&(a, b)| g.has_edge(a, b)) {
            continue;
        }
        let mut added: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (relabel(a, piece), relabel(b, piece))).collect();
        let base = g.order() - piece.len();
        let odd = (order.len() % 2 == 1).then(|| {
            let u = *order.last().expect("odd length");
            let pu = relabel(u, piece);
            added.extend([(pu, base), (base, base + 1), (base + 1, base + 2), (base + 2, pu)]);
            (u, [base, base + 1, base + 2])
        });
        let step = Step {
            rule: Rule::Piece,
            removed: piece.to_vec(),
            removed_edges: Vec::new(),
            new_vertices: if odd.is_some() { 3 } else { 0 },
            added_edges: added,
            lift: Lift::Piece { set: set.clone(), odd },
        };
        let (post, keep) = step.apply(g).ok()?;
        let bad: Vec<usize> = post
            .components()
            .into_iter()
            .filter(|c| c.iter().all(|&v| v < keep.len()) && crate::catalog::is_forbidden(&post.induced_subgraph(c)).is_some())
            .flatten()
            .map(|v| keep[v])
            .collect();
        if has_forbidden_component(&post).is_none() {
            return Some(step);
        }
        if absorb && !bad.is_empty() {
            let mut bigger: Vec<usize> = piece.iter().copied().chain(bad).collect();
            bigger.sort_unstable();
            if let Some(step) = piece_step(g, &bigger, false) {
                return Some(step);
            }
        }
    }
    None
}
