//! Isomorphism testing and canonical labelling for small graphs.
//!
//! `are_isomorphic` uses joint colour refinement of both graphs followed by
//! a backtracking matcher, and works for any order. Canonical forms use an
//! individualisation-refinement search with automorphism pruning over
//! single-word adjacency rows, so they are limited to `n <= 64`.

use std::collections::BTreeMap;

use super::{Graph, GraphError};
use crate::bits::VertexSet;

/// Largest order accepted by [`canonical_form`] and [`orbits`].
pub const CANON_MAX_ORDER: usize = 64;

// ---------------------------------------------------------------------------
// Isomorphism test
// ---------------------------------------------------------------------------

/// Colour refinement run on `g` and `h` together so colour ids are shared.
fn joint_colors(g: &Graph, h: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut cg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sig = |gr: &Graph, col: &[usize], v: usize| {
            let mut nb: Vec<usize> = gr.neighbors(v).map(|u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.insert(s, 0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let ng: Vec<usize> = sg.iter().map(|s| ids[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| ids[s]).collect();
        let mut hist = vec![0isize; ids.len()];
        for &c in &ng {
            hist[c] += 1;
        }
        for &c in &nh {
            hist[c] -= 1;
        }
        if hist.iter().any(|&x| x != 0) {
            return None;
        }
        let count = ids.len();
        cg = ng;
        ch = nh;
        if count == classes {
            return Some((cg, ch));
        }
        classes = count;
    }
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: Vec<usize>,
    ch: Vec<usize>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: VertexSet,
}

impl Matcher<'_> {
    fn consistent(&self, depth: usize, x: usize, c: usize) -> bool {
        self.order[..depth]
            .iter()
            .all(|&y| self.g.has_edge(x, y) == self.h.has_edge(c, self.image[y]))
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let anchor = self.order[..depth].iter().copied().find(|&y| self.g.has_edge(x, y));
        let candidates: Vec<usize> = match anchor {
            Some(y) => self.h.neighbors(self.image[y]).collect(),
            None => (0..self.h.order()).collect(),
        };
        for c in candidates {
            if self.used.contains(c) || self.ch[c] != self.cg[x] || !self.consistent(depth, x, c) {
                continue;
            }
            self.image[x] = c;
            self.used.insert(c);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.remove(c);
        }
        false
    }
}

/// Search order: start in the rarest colour class, then always take the
/// vertex with the most already-ordered neighbours.
fn matching_order(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut class_size = BTreeMap::new();
    for &c in colors {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&colors[v]], v))
            .expect("unplaced vertex exists");
        placed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

/// True iff an adjacency-preserving bijection between `g` and `h` exists.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    if g.order() == 0 {
        return true;
    }
    let Some((cg, ch)) = joint_colors(g, h) else {
        return false;
    };
    let order = matching_order(g, &cg);
    let mut m = Matcher {
        g,
        h,
        cg,
        ch,
        order,
        image: vec![usize::MAX; g.order()],
        used: VertexSet::new(h.order()),
    };
    m.extend(0)
}

// ---------------------------------------------------------------------------
// Canonical labelling
// ---------------------------------------------------------------------------

/// Result of a canonical labelling search.
pub(crate) struct CanonResult {
    /// `lab[i]` is the vertex placed at canonical position `i`.
    pub lab: Vec<usize>,
    /// Canonically relabelled adjacency rows.
    pub form: Vec<u64>,
    /// Automorphisms found during the search (`perm[v]` is the image of `v`).
    pub generators: Vec<Vec<u8>>,
}

impl CanonResult {
    /// Orbit id (smallest member) of each vertex under the found automorphisms.
    pub fn orbit_ids(&self) -> Vec<usize> {
        orbits_from_generators(self.lab.len(), &self.generators)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

pub(crate) fn orbits_from_generators(n: usize, generators: &[Vec<u8>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for gen in generators {
        for (v, &img) in gen.iter().enumerate() {
            union(&mut parent, v, img as usize);
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

#[inline]
fn cell_end(starts: u64, s: usize, n: usize) -> usize {
    let above = if s >= 63 { 0 } else { starts & (!0u64 << (s + 1)) };
    if above == 0 {
        n
    } else {
        above.trailing_zeros() as usize
    }
}

/// Refines the ordered partition `(lab, starts)` to the coarsest equitable
/// partition finer than it. Splits are ordered by neighbour count, and
/// splitter cells are processed lowest position first, so the result
/// depends only on the isomorphism type of the coloured graph.
fn refine(rows: &[u64], lab: &mut [u8], starts: &mut u64, mut queue: u64) {
    let n = lab.len();
    let mut counts = [0u32; 64];
    while queue != 0 {
        if starts.count_ones() as usize == n {
            return;
        }
        let s = queue.trailing_zeros() as usize;
        queue &= queue - 1;
        let e = cell_end(*starts, s, n);
        let splitter = lab[s..e].iter().fold(0u64, |w, &v| w | 1u64 << v);
        let mut cs = 0;
        while cs < n {
            let ce = cell_end(*starts, cs, n);
            if ce - cs > 1 {
                let first = (rows[lab[cs] as usize] & splitter).count_ones();
                let mut uniform = true;
                for &v in &lab[cs..ce] {
                    let c = (rows[v as usize] & splitter).count_ones();
                    counts[v as usize] = c;
                    uniform &= c == first;
                }
                if !uniform {
                    lab[cs..ce].sort_unstable_by_key(|&v| counts[v as usize]);
                    queue |= 1u64 << cs;
                    for p in cs + 1..ce {
                        if counts[lab[p] as usize] != counts[lab[p - 1] as usize] {
                            *starts |= 1u64 << p;
                            queue |= 1u64 << p;
                        }
                    }
                }
            }
            cs = ce;
        }
    }
}

struct Leaf {
    lab: Vec<u8>,
    form: Vec<u64>,
    path: Vec<u8>,
}

struct Search<'a> {
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u8>>,
    path: Vec<u8>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn form_of(&self, lab: &[u8]) -> Vec<u64> {
        let n = lab.len();
        let mut pos = [0u8; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        (0..n)
            .map(|i| {
                let mut row = self.rows[lab[i] as usize];
                let mut out = 0u64;
                while row != 0 {
                    let u = row.trailing_zeros() as usize;
                    row &= row - 1;
                    out |= 1u64 << pos[u];
                }
                out
            })
            .collect()
    }

    fn record_automorphism(&mut self, from: &[u8], to: &[u8]) {
        let mut perm = vec![0u8; from.len()];
        for (a, b) in from.iter().zip(to) {
            perm[*a as usize] = *b;
        }
        if perm.iter().enumerate().any(|(v, &img)| v != img as usize) {
            self.generators.push(perm);
        }
    }

    /// Returns `Some(level)` when the search should unwind to the node at
    /// depth `level`, abandoning everything below it.
    fn leaf(&mut self, lab: &[u8]) -> Option<usize> {
        let form = self.form_of(lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab: lab.to_vec(), form, path: self.path.clone() };
            self.best = Some(Leaf { lab: leaf.lab.clone(), form: leaf.form.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if form == first.form {
            let (from, level) = (first.lab.clone(), common_prefix(&first.path, &self.path));
            self.record_automorphism(&from, lab);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match form.cmp(&best.form) {
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf { lab: lab.to_vec(), form, path: self.path.clone() });
                None
            }
            std::cmp::Ordering::Equal => {
                let (from, level) = (best.lab.clone(), common_prefix(&best.path, &self.path));
                self.record_automorphism(&from, lab);
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn node(&mut self, lab: &[u8], starts: u64, depth: usize) -> Option<usize> {
        let n = lab.len();
        if starts.count_ones() as usize == n {
            return self.leaf(lab);
        }
        let mut s = 0;
        let e = loop {
            let e = cell_end(starts, s, n);
            if e - s > 1 {
                break e;
            }
            s = e;
        };
        let mut cell: Vec<u8> = lab[s..e].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u8> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() {
                let fixing: Vec<Vec<u8>> = self
                    .generators
                    .iter()
                    .filter(|g| self.path.iter().all(|&p| g[p as usize] == p))
                    .cloned()
                    .collect();
                if !fixing.is_empty() {
                    let orbit = orbits_from_generators(n, &fixing);
                    if explored.iter().any(|&u| orbit[u as usize] == orbit[w as usize]) {
                        continue;
                    }
                }
            }
            explored.push(w);
            let mut child = lab.to_vec();
            let at = child[s..e].iter().position(|&v| v == w).expect("w in cell") + s;
            child.swap(s, at);
            let mut child_starts = starts | (1u64 << (s + 1));
            refine(self.rows, &mut child, &mut child_starts, 1u64 << s);
            self.path.push(w);
            let jump = self.node(&child, child_starts, depth + 1);
            self.path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical labelling of a graph given by single-word adjacency rows
/// (`n <= 64`). `colors`, when given, fixes an initial vertex colouring
/// that isomorphisms must respect; smaller colours come first.
pub(crate) fn canon_rows(rows: &[u64], colors: Option<&[u32]>) -> CanonResult {
    let n = rows.len();
    assert!(n <= CANON_MAX_ORDER);
    if n == 0 {
        return CanonResult { lab: vec![], form: vec![], generators: vec![] };
    }
    let mut lab: Vec<u8> = (0..n as u8).collect();
    let mut starts = 1u64;
    let mut queue = 1u64;
    if let Some(colors) = colors {
        lab.sort_by_key(|&v| colors[v as usize]);
        for p in 1..n {
            if colors[lab[p] as usize] != colors[lab[p - 1] as usize] {
                starts |= 1u64 << p;
                queue |= 1u64 << p;
            }
        }
    }
    refine(rows, &mut lab, &mut starts, queue);
    let mut search = Search { rows, first: None, best: None, generators: Vec::new(), path: Vec::new() };
    search.node(&lab, starts, 0);
    let best = search.best.expect("search visits at least one leaf");
    CanonResult {
        lab: best.lab.iter().map(|&v| v as usize).collect(),
        form: best.form,
        generators: search.generators,
    }
}

/// A canonical representative of an isomorphism class: two graphs have
/// equal forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_rows64(&self.rows)
    }

    /// A 64-bit digest of the form, used in certificate fingerprints.
    pub fn digest(&self) -> u64 {
        fnv1a(std::iter::once(self.order as u64).chain(self.rows.iter().copied()))
    }
}

/// FNV-1a over little-endian words; stable across platforms and runs.
pub(crate) fn fnv1a<I: IntoIterator<Item = u64>>(words: I) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in words {
        for b in w.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Isomorphism-invariant hash from colour refinement. Equal graphs up to
/// relabelling always collide; distinct graphs usually do not.
pub(crate) fn wl_hash(g: &Graph) -> u64 {
    let n = g.order();
    let mut col: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    let mut classes = 0;
    for _ in 0..n.max(1) {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = g.neighbors(v).map(|u| col[u]).collect();
                nb.sort_unstable();
                fnv1a(std::iter::once(col[v]).chain(nb))
            })
            .collect();
        let mut distinct = next.clone();
        distinct.sort_unstable();
        distinct.dedup();
        col = next;
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    col.sort_unstable();
    fnv1a([n as u64, g.size() as u64].into_iter().chain(col))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    if g.order() > CANON_MAX_ORDER {
        return Err(GraphError::TooLarge { order: g.order(), limit: CANON_MAX_ORDER });
    }
    let result = canon_rows(&g.rows64(), None);
    Ok(CanonicalForm { order: g.order(), rows: result.form })
}

/// Automorphism orbits: entry `v` is the smallest vertex in `v`'s orbit.
pub fn orbits(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if g.order() > CANON_MAX_ORDER {
        return Err(GraphError::TooLarge { order: g.order(), limit: CANON_MAX_ORDER });
    }
    Ok(canon_rows(&g.rows64(), None).orbit_ids())
}

/// Used by tests to cross-check generator orbits: `u` and `v` share an
/// orbit iff individualising either gives the same canonical form.
#[cfg(test)]
pub(crate) fn same_orbit_by_individualisation(g: &Graph, u: usize, v: usize) -> bool {
    let rows = g.rows64();
    let color = |x: usize| -> Vec<u32> { (0..g.order()).map(|w| u32::from(w != x)).collect() };
    canon_rows(&rows, Some(&color(u))).form == canon_rows(&rows, Some(&color(v))).form
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_graph(n: usize, mask: &[bool]) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask[k % mask.len()] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        g.permuted(&perm)
    }

    #[test]
    fn basic_examples() {
        let c5 = Graph::cycle(5);
        assert!(are_isomorphic(&c5, &shuffled(&c5, 7)));
        assert!(!are_isomorphic(&Graph::cycle(4), &Graph::complete(4)));
        // same degree sequence, different graphs: C6 vs two triangles
        let two_triangles = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles));
        assert_ne!(canonical_form(&Graph::cycle(6)).unwrap(), canonical_form(&two_triangles).unwrap());
    }

    #[test]
    fn symmetric_graphs_are_fast_and_correct() {
        for n in [1, 2, 8, 12, 20] {
            let e = Graph::empty(n);
            let k = Graph::complete(n);
            assert_eq!(canonical_form(&e).unwrap().to_graph(), e);
            assert_eq!(orbits(&k).unwrap(), vec![0; n]);
        }
        let cube_like = Graph::cycle(24);
        assert_eq!(orbits(&cube_like).unwrap(), vec![0; 24]);
    }

    #[test]
    fn orbits_of_a_tadpole() {
        // triangle 0-1-2 with pendant path 2-3-4
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        assert_eq!(orbits(&g).unwrap(), vec![0, 0, 2, 3, 4]);
    }

    #[test]
    fn rejects_large_orders() {
        assert!(matches!(canonical_form(&Graph::empty(65)), Err(GraphError::TooLarge { .. })));
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabelling_invariant(
            n in 1usize..11,
            mask in proptest::collection::vec(any::<bool>(), 1..60),
            seed in any::<u64>(),
        ) {
            let g = random_graph(n, &mask);
            let h = shuffled(&g, seed);
            prop_assert!(are_isomorphic(&g, &h));
            prop_assert!(are_isomorphic(&h, &g));
            prop_assert!(are_isomorphic(&g, &g));
            let fg = canonical_form(&g).unwrap();
            prop_assert_eq!(&fg, &canonical_form(&h).unwrap());
            prop_assert!(are_isomorphic(&fg.to_graph(), &g));
        }

        #[test]
        fn iso_agrees_with_canonical_forms(
            n in 1usize..9,
            a in proptest::collection::vec(any::<bool>(), 28),
            b in proptest::collection::vec(any::<bool>(), 28),
        ) {
            let g = random_graph(n, &a);
            let h = random_graph(n, &b);
            let same = canonical_form(&g).unwrap() == canonical_form(&h).unwrap();
            prop_assert_eq!(are_isomorphic(&g, &h), same);
        }

        #[test]
        fn generator_orbits_match_individualisation(
            n in 1usize..9,
            mask in proptest::collection::vec(any::<bool>(), 1..40),
        ) {
            let g = random_graph(n, &mask);
            let orb = orbits(&g).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    prop_assert_eq!(orb[u] == orb[v], same_orbit_by_individualisation(&g, u, v));
                }
            }
        }
    }
}
