//! Exhaustive generation of small graphs up to isomorphism, and seeded
//! random sampling of connected graphs with minimum degree 2.
//!
//! Exhaustive generation is canonical augmentation by vertex addition: a
//! child is kept only if the added vertex lies in the orbit of the
//! child's canonical deletion vertex, and each parent extends by one
//! representative per orbit of neighbour sets. Properties that hold for
//! all induced subgraphs (minimum-degree reachability, claw-freeness)
//! prune intermediate graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{canon_rows, cut_structure, is_claw_free, Graph};

/// Largest order accepted in exhaustive mode.
pub const EXHAUSTIVE_MAX_ORDER: usize = 10;

/// Below this order the search tree is split across worker threads.
const PARALLEL_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("exhaustive generation is capped at order {cap}, asked for {order}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("no connected graph with minimum degree 2 has {n} vertices and {m} edges")]
    Infeasible { n: usize, m: usize },
    #[error("random sampling gave up after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("unsupported generation request: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Exhaustive,
    /// `count` samples; edge counts drawn uniformly from `edges`.
    Random { seed: u64, count: usize, edges: (usize, usize) },
}

/// What to generate: order, constraints and mode.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub connected: bool,
    pub min_degree: usize,
    pub claw_free: bool,
    pub mode: Mode,
}

impl GenSpec {
    pub fn exhaustive(n: usize) -> GenSpec {
        GenSpec { n, connected: false, min_degree: 0, claw_free: false, mode: Mode::Exhaustive }
    }

    /// Random connected graphs with minimum degree 2 and an edge count
    /// drawn uniformly from `edges` (inclusive).
    pub fn random(n: usize, seed: u64, count: usize, edges: (usize, usize)) -> GenSpec {
        GenSpec {
            n,
            connected: true,
            min_degree: 2,
            claw_free: false,
            mode: Mode::Random { seed, count, edges },
        }
    }

    pub fn connected(mut self) -> GenSpec {
        self.connected = true;
        self
    }

    pub fn min_degree(mut self, d: usize) -> GenSpec {
        self.min_degree = d;
        self
    }

    pub fn claw_free(mut self) -> GenSpec {
        self.claw_free = true;
        self
    }

    /// Whether `g` satisfies the constraints (not the mode).
    pub fn accepts(&self, g: &Graph) -> bool {
        g.order() == self.n
            && (!self.connected || g.is_connected())
            && g.min_degree() >= self.min_degree
            && (!self.claw_free || is_claw_free(g))
    }
}

/// All graphs described by `spec`. Exhaustive mode yields one graph per
/// isomorphism class; callers should not rely on the order.
pub fn enumerate(spec: &GenSpec) -> Result<Vec<Graph>, EnumError> {
    match spec.mode {
        Mode::Exhaustive => {
            if spec.n > EXHAUSTIVE_MAX_ORDER {
                return Err(EnumError::OrderTooLarge { order: spec.n, cap: EXHAUSTIVE_MAX_ORDER });
            }
            Ok(Augmenter::new(spec).run())
        }
        Mode::Random { seed, count, edges: (lo, hi) } => {
            if spec.min_degree > 2 || (!spec.connected && spec.min_degree < 2) {
                return Err(EnumError::Unsupported(
                    "random mode samples connected graphs with minimum degree 2".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            let limit = 1000 * count.max(1);
            let mut attempts = 0;
            while out.len() < count {
                attempts += 1;
                if attempts > limit {
                    return Err(EnumError::SamplingExhausted { attempts: limit });
                }
                let m = rng.gen_range(lo..=hi);
                let g = random_min_deg2(spec.n, m, rng.gen())?;
                if spec.accepts(&g) {
                    out.push(g);
                }
            }
            Ok(out)
        }
    }
}

struct Augmenter {
    n: usize,
    min_degree: usize,
    connected: bool,
    claw_free: bool,
}

impl Augmenter {
    fn new(spec: &GenSpec) -> Augmenter {
        Augmenter { n: spec.n, min_degree: spec.min_degree, connected: spec.connected, claw_free: spec.claw_free }
    }

    fn run(&self) -> Vec<Graph> {
        if self.n == 0 {
            return vec![Graph::empty(0)];
        }
        let root = vec![0u64];
        if !self.viable(&root) {
            return Vec::new();
        }
        self.grow(root).into_iter().map(|rows| Graph::from_rows64(&rows)).collect()
    }

    /// Every vertex can still reach the target minimum degree.
    fn viable(&self, rows: &[u64]) -> bool {
        let slack = self.n - rows.len();
        rows.iter().all(|r| r.count_ones() as usize + slack >= self.min_degree)
    }

    fn grow(&self, rows: Vec<u64>) -> Vec<Vec<u64>> {
        if rows.len() == self.n {
            return vec![rows];
        }
        let children = self.children(&rows);
        if rows.len() < PARALLEL_DEPTH {
            children.into_par_iter().flat_map_iter(|c| self.grow(c)).collect()
        } else {
            children.into_iter().flat_map(|c| self.grow(c)).collect()
        }
    }

    fn children(&self, rows: &[u64]) -> Vec<Vec<u64>> {
        let k = rows.len();
        let last = k + 1 == self.n;
        let generators = canon_rows(rows, None).generators;
        let max_deg = rows.iter().map(|r| r.count_ones()).max().unwrap_or(0);
        let components = if last && self.connected { component_masks(rows) } else { Vec::new() };
        let slack = self.n - k - 1;
        let mut out = Vec::new();
        for s in 0..(1u64 << k) {
            let d = s.count_ones();
            // the new vertex must end with maximum degree
            if d < max_deg || rows.iter().enumerate().any(|(x, r)| r.count_ones() + (s >> x & 1) as u32 > d) {
                continue;
            }
            if (d as usize) + slack < self.min_degree
                || rows.iter().enumerate().any(|(x, r)| (r.count_ones() + (s >> x & 1) as u32) as usize + slack < self.min_degree)
            {
                continue;
            }
            if components.iter().any(|&c| c & s == 0) {
                continue;
            }
            if !generators.is_empty() && !is_orbit_minimum(s, &generators) {
                continue;
            }
            let mut child: Vec<u64> = rows.iter().enumerate().map(|(x, &r)| r | ((s >> x & 1) << k)).collect();
            child.push(s);
            if self.claw_free && !is_claw_free(&Graph::from_rows64(&child)) {
                continue;
            }
            if is_canonical_extension(&child) {
                out.push(child);
            }
        }
        out
    }
}

fn component_masks(rows: &[u64]) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for v in 0..rows.len() {
        if seen >> v & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = rows[x] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

fn apply(perm: &[u8], s: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << perm[v];
    }
    out
}

/// True iff `s` is the numerically smallest set in its orbit under the
/// group generated by `generators`.
fn is_orbit_minimum(s: u64, generators: &[Vec<u8>]) -> bool {
    let mut seen = vec![s];
    let mut i = 0;
    while i < seen.len() {
        let cur = seen[i];
        i += 1;
        for g in generators {
            let img = apply(g, cur);
            if img < s {
                return false;
            }
            if !seen.contains(&img) {
                seen.push(img);
            }
        }
    }
    true
}

/// The last vertex of `child` is in the orbit of the canonical deletion
/// vertex: among vertices maximising (degree, sum of neighbour degrees),
/// the one placed last by the canonical labelling.
fn is_canonical_extension(child: &[u64]) -> bool {
    let new = child.len() - 1;
    let deg: Vec<u32> = child.iter().map(|r| r.count_ones()).collect();
    let key = |v: usize| {
        let mut r = child[v];
        let mut sum = 0;
        while r != 0 {
            sum += deg[r.trailing_zeros() as usize];
            r &= r - 1;
        }
        (deg[v], sum)
    };
    let best = (0..child.len()).map(key).max().expect("child is non-empty");
    if key(new) != best {
        return false;
    }
    let ties: Vec<usize> = (0..child.len()).filter(|&v| key(v) == best).collect();
    if ties.len() == 1 {
        return true;
    }
    let canon = canon_rows(child, None);
    let m = *canon.lab.iter().rev().find(|v| ties.contains(v)).expect("a tied vertex is labelled");
    let orbit = canon.orbit_ids();
    orbit[m] == orbit[new]
}

/// A connected graph with `n` vertices, `m` edges and minimum degree 2,
/// determined by `seed`. Built from a random spanning tree whose leaves
/// are joined to other vertices, then trimmed or padded to `m` edges.
/// `m == n` always yields a random cycle.
pub fn random_min_deg2(n: usize, m: usize, seed: u64) -> Result<Graph, EnumError> {
    if n < 3 || m < n || m > n * (n - 1) / 2 {
        return Err(EnumError::Infeasible { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        if let Some(g) = tree_based(n, m, &mut rng) {
            return Ok(g);
        }
    }
    Ok(cycle_based(n, m, &mut rng))
}

fn random_non_neighbour(adj: &[Vec<bool>], v: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let options: Vec<usize> = (0..adj.len()).filter(|&u| u != v && !adj[v][u]).collect();
    options.choose(rng).copied()
}

fn tree_based(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = 0;
    let link = |adj: &mut Vec<Vec<bool>>, a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        link(&mut adj, order[i], order[j]);
        edges += 1;
    }
    let degree = |adj: &Vec<Vec<bool>>, v: usize| adj[v].iter().filter(|&&b| b).count();
    loop {
        let leaves: Vec<usize> = (0..n).filter(|&v| degree(&adj, v) < 2).collect();
        let Some(&leaf) = leaves.choose(rng) else { break };
        let partners: Vec<usize> = leaves.iter().copied().filter(|&u| u != leaf && !adj[leaf][u]).collect();
        let partner = match partners.choose(rng) {
            Some(&p) => p,
            None => random_non_neighbour(&adj, leaf, rng)?,
        };
        link(&mut adj, leaf, partner);
        edges += 1;
    }
    while edges < m {
        let v = rng.gen_range(0..n);
        if let Some(u) = random_non_neighbour(&adj, v, rng) {
            link(&mut adj, v, u);
            edges += 1;
        }
    }
    while edges > m {
        let g = to_graph(&adj);
        let bridges = cut_structure(&g).bridges;
        let removable: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| g.degree(a) >= 3 && g.degree(b) >= 3 && !bridges.contains(&(a, b)))
            .collect();
        let &(a, b) = removable.choose(rng)?;
        adj[a][b] = false;
        adj[b][a] = false;
        edges -= 1;
    }
    Some(to_graph(&adj))
}

fn cycle_based(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut edges = n;
    while edges < m {
        let v = rng.gen_range(0..n);
        if let Some(u) = random_non_neighbour(&adj, v, rng) {
            adj[v][u] = true;
            adj[u][v] = true;
            edges += 1;
        }
    }
    to_graph(&adj)
}

fn to_graph(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u][v]).map(move |v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("labels in range")
}
