//! Exact minimum 2DD-set by iterative deepening branch and bound.
//!
//! Each component is solved separately on fixed-width bitsets. A node
//! picks the uncovered vertex with the fewest usable candidates in
//! `N[v] ∪ D2(v)` and branches on them, excluding earlier candidates in
//! later branches. Nodes are cut when some vertex can no longer be
//! covered, or when the best `k` remaining vertices cannot supply the
//! outstanding coverage demand (a neighbour supplies two units, a
//! distance-2 witness one).

use thiserror::Error;

use super::Certificate;
use crate::bits::VertexSet;
use crate::graph::Graph;

/// Largest component order the solver accepts.
const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the empty graph has no disjunctive domination number")]
    EmptyGraph,
    #[error("no 2DD-set of size at most {budget} exists")]
    BudgetExceeded { budget: usize },
    #[error("component of order {0} exceeds the solver limit {MAX_ORDER}")]
    TooLarge(usize),
    #[error("cycles need at least 3 vertices, got {0}")]
    CycleTooShort(usize),
}

/// `2` for `n = 4`, otherwise `⌈n/4⌉`.
pub fn gamma_d2_cycle(n: usize) -> Result<usize, SolveError> {
    match n {
        0..=2 => Err(SolveError::CycleTooShort(n)),
        4 => Ok(2),
        _ => Ok(n.div_ceil(4)),
    }
}

/// An optimal 2DD-set of `C_n` labelled `0..n` in cyclic order:
/// every fourth vertex, plus vertex 1 when `n = 4`.
pub fn cycle_optimal_set(n: usize) -> Result<VertexSet, SolveError> {
    gamma_d2_cycle(n)?;
    let mut s = VertexSet::from_vertices(n, (0..n).step_by(4));
    if n == 4 {
        s.insert(1);
    }
    Ok(s)
}

/// Minimum 2DD-set of `g`. With `budget = Some(b)`, gives up with
/// [`SolveError::BudgetExceeded`] once it is clear no set of size `<= b`
/// exists.
pub fn gamma_d2(g: &Graph, budget: Option<usize>) -> Result<Certificate, SolveError> {
    if g.order() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let budget = budget.unwrap_or(g.order());
    let mut set = VertexSet::new(g.order());
    let mut used = 0;
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp);
        let local = solve_connected(&sub, budget - used).ok_or(SolveError::BudgetExceeded { budget })?;
        used += local.len();
        for v in local {
            set.insert(comp[v]);
        }
    }
    let cert = Certificate::new(g, set).expect("set built with the graph's order");
    debug_assert!(cert.verified);
    Ok(cert)
}

/// `γ²ᵈ(g)` as a number.
pub fn gamma_d2_value(g: &Graph) -> Result<usize, SolveError> {
    gamma_d2(g, None).map(|c| c.size)
}

fn solve_connected(g: &Graph, budget: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 {
        return Some(Vec::new());
    }
    if let Some(v) = g.dominating_vertex() {
        return (budget >= 1).then(|| vec![v]);
    }
    match n.div_ceil(64) {
        1 => Solver::<1>::new(g).run(budget),
        2 => Solver::<2>::new(g).run(budget),
        3..=4 => Solver::<4>::new(g).run(budget),
        5..=8 => Solver::<8>::new(g).run(budget),
        9..=16 => Solver::<16>::new(g).run(budget),
        17..=64 => Solver::<64>::new(g).run(budget),
        _ => panic!("{}", SolveError::TooLarge(n)),
    }
}

type Bits<const W: usize> = [u64; W];

#[inline]
fn and<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> Bits<W> {
    std::array::from_fn(|i| a[i] & b[i])
}

#[inline]
fn pc<const W: usize>(a: &Bits<W>) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn pc_and<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
fn test<const W: usize>(a: &Bits<W>, i: usize) -> bool {
    a[i >> 6] >> (i & 63) & 1 == 1
}

fn iter_bits<const W: usize>(a: &Bits<W>) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                k * 64 + b
            })
        })
    })
}

#[derive(Clone, Copy)]
struct State<const W: usize> {
    /// Vertices that may still be chosen.
    allowed: Bits<W>,
    /// Union of `N[c]` over chosen `c`.
    dominated: Bits<W>,
    /// At least one chosen vertex at distance 2.
    once: Bits<W>,
    /// At least two chosen vertices at distance 2.
    twice: Bits<W>,
}

struct Solver<const W: usize> {
    n: usize,
    all: Bits<W>,
    closed: Vec<Bits<W>>,
    d2: Vec<Bits<W>>,
    cand: Vec<Bits<W>>,
    chosen: Vec<usize>,
    gains: Vec<usize>,
}

impl<const W: usize> Solver<W> {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let row = |r: &[u64]| -> Bits<W> { std::array::from_fn(|i| r.get(i).copied().unwrap_or(0)) };
        let mut all = [0u64; W];
        for v in 0..n {
            all[v >> 6] |= 1u64 << (v & 63);
        }
        let closed: Vec<Bits<W>> = (0..n)
            .map(|v| {
                let mut r = row(g.row(v));
                r[v >> 6] |= 1u64 << (v & 63);
                r
            })
            .collect();
        let d2: Vec<Bits<W>> = (0..n).map(|v| row(g.dist2_row(v))).collect();
        let cand = (0..n).map(|v| std::array::from_fn(|i| closed[v][i] | d2[v][i])).collect();
        Solver { n, all, closed, d2, cand, chosen: Vec::new(), gains: Vec::with_capacity(n) }
    }

    fn root(&self) -> State<W> {
        State { allowed: self.all, dominated: [0; W], once: [0; W], twice: [0; W] }
    }

    fn uncovered(&self, st: &State<W>) -> Bits<W> {
        std::array::from_fn(|i| self.all[i] & !(st.dominated[i] | st.twice[i]))
    }

    fn demand(unc: &Bits<W>, st: &State<W>) -> usize {
        2 * pc(unc) - pc_and(unc, &st.once)
    }

    fn gain(&self, c: usize, unc: &Bits<W>) -> usize {
        2 * pc_and(&self.closed[c], unc) + pc_and(&self.d2[c], unc)
    }

    /// Smallest `k` for which the `k` best gains can meet `demand`.
    fn min_picks(&mut self, st: &State<W>, unc: &Bits<W>, demand: usize, limit: usize) -> usize {
        self.gains.clear();
        for c in iter_bits(&st.allowed) {
            let g = 2 * pc_and(&self.closed[c], unc) + pc_and(&self.d2[c], unc);
            if g > 0 {
                self.gains.push(g);
            }
        }
        self.gains.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0;
        for (i, &g) in self.gains.iter().enumerate().take(limit) {
            acc += g;
            if acc >= demand {
                return i + 1;
            }
        }
        usize::MAX
    }

    fn with(&self, st: &State<W>, c: usize) -> State<W> {
        let mut next = *st;
        for i in 0..W {
            next.dominated[i] |= self.closed[c][i];
            next.twice[i] |= next.once[i] & self.d2[c][i];
            next.once[i] |= self.d2[c][i];
        }
        next.allowed[c >> 6] &= !(1u64 << (c & 63));
        next
    }

    fn search(&mut self, st: State<W>, remaining: usize) -> bool {
        let unc = self.uncovered(&st);
        if unc.iter().all(|&w| w == 0) {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let mut best: Option<(usize, usize)> = None;
        for v in iter_bits(&unc) {
            let need = if test(&st.once, v) { 1 } else { 2 };
            let near = pc_and(&self.closed[v], &st.allowed);
            let far = pc_and(&self.d2[v], &st.allowed);
            if near == 0 && far < need {
                return false;
            }
            let options = near + far;
            if best.is_none_or(|(_, o)| options < o) {
                best = Some((v, options));
            }
        }
        let demand = Self::demand(&unc, &st);
        if self.min_picks(&st, &unc, demand, remaining) > remaining {
            return false;
        }
        let (v, _) = best.expect("uncovered vertex exists");
        let mut options: Vec<(usize, usize)> = iter_bits(&and(&self.cand[v], &st.allowed))
            .map(|c| (self.gain(c, &unc), c))
            .collect();
        options.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut st = st;
        for (_, c) in options {
            let child = self.with(&st, c);
            self.chosen.push(c);
            if self.search(child, remaining - 1) {
                return true;
            }
            self.chosen.pop();
            st.allowed[c >> 6] &= !(1u64 << (c & 63));
        }
        false
    }

    fn run(mut self, budget: usize) -> Option<Vec<usize>> {
        let root = self.root();
        let unc = self.uncovered(&root);
        let demand = Self::demand(&unc, &root);
        let lower = self.min_picks(&root, &unc, demand, self.n).max(1);
        for k in lower..=budget.min(self.n) {
            self.chosen.clear();
            if self.search(root, k) {
                let mut s = std::mem::take(&mut self.chosen);
                s.sort_unstable();
                return Some(s);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disjunctive::is_2dd_set;

    fn brute_force(g: &Graph) -> usize {
        let n = g.order();
        (1..=n)
            .find(|&k| {
                let mut idx: Vec<usize> = (0..k).collect();
                loop {
                    if is_2dd_set(g, &VertexSet::from_vertices(n, idx.iter().copied())).unwrap() {
                        return true;
                    }
                    let mut i = k;
                    while i > 0 && idx[i - 1] == n - k + i - 1 {
                        i -= 1;
                    }
                    if i == 0 {
                        return false;
                    }
                    idx[i - 1] += 1;
                    for j in i..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
            })
            .expect("V is always a 2DD-set")
    }

    #[test]
    fn cycle_values() {
        assert_eq!(gamma_d2(&Graph::cycle(4), None).unwrap().size, 2);
        assert_eq!(gamma_d2(&Graph::cycle(12), None).unwrap().size, 3);
        assert_eq!(gamma_d2_cycle(3), Ok(1));
        assert_eq!(gamma_d2_cycle(4), Ok(2));
        assert_eq!(gamma_d2_cycle(17), Ok(5));
        assert_eq!(gamma_d2_cycle(2), Err(SolveError::CycleTooShort(2)));
        for n in 3..30 {
            let s = cycle_optimal_set(n).unwrap();
            assert_eq!(s.len(), gamma_d2_cycle(n).unwrap());
            assert!(is_2dd_set(&Graph::cycle(n), &s).unwrap());
        }
    }

    #[test]
    fn small_named_graphs() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(gamma_d2(&k23, None).unwrap().size, brute_force(&k23));
        assert_eq!(gamma_d2(&k23, None).unwrap().size, 2);
        let star_plus = Graph::star(5).with_edge(1, 2).unwrap();
        assert_eq!(gamma_d2(&star_plus, None).unwrap().size, 1);
    }

    #[test]
    fn components_are_summed() {
        let g = Graph::cycle(3).disjoint_union(&Graph::cycle(6));
        let cert = gamma_d2(&g, None).unwrap();
        assert_eq!(cert.size, 3);
        assert!(cert.verified);
    }

    #[test]
    fn budget_and_empty_graph() {
        assert_eq!(gamma_d2(&Graph::empty(0), None).unwrap_err(), SolveError::EmptyGraph);
        assert_eq!(
            gamma_d2(&Graph::cycle(12), Some(2)).unwrap_err(),
            SolveError::BudgetExceeded { budget: 2 }
        );
        assert_eq!(gamma_d2(&Graph::cycle(12), Some(3)).unwrap().size, 3);
        assert_eq!(gamma_d2(&Graph::empty(3), None).unwrap().size, 3);
    }

    #[test]
    fn wide_graphs_use_multiword_kernels() {
        for n in [63, 64, 65, 130, 300] {
            assert_eq!(gamma_d2(&Graph::cycle(n), None).unwrap().size, n.div_ceil(4), "C{n}");
        }
    }

    #[test]
    fn matches_brute_force_on_small_random_graphs() {
        let mut s = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..300 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let n = 1 + (s % 9) as usize;
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .enumerate()
                .filter(|(i, _)| (s >> (i % 60)) & 3 != 0)
                .map(|(_, e)| e)
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(gamma_d2(&g, None).unwrap().size, brute_force(&g), "{g:?}");
        }
    }
}
