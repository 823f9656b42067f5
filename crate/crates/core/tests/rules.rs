//! Local soundness of each reduction rule: an optimal certificate of the
//! reduced graph lifts to a 2DD-set of the original within the rule's
//! growth budget.

use ddom::bound::{
    contract_long_linkage, delete_edge, merge_two_gadgets, rewire, split_piece, strip_pendant_c4, strip_pendant_tadpole,
    trim_gadget, Step,
};
use ddom::catalog::has_forbidden_component;
use ddom::enumeration::random_min_deg2;
use ddom::{gamma_d2, is_2dd_set, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_ORDER: usize = 24;
const HITS_PER_RULE: usize = 1000;

type RuleFn = fn(&Graph) -> Option<Step>;

const RULES: [(&str, RuleFn); 8] = [
    ("linkage", contract_long_linkage),
    ("pendant-c4", strip_pendant_c4),
    ("pendant-tadpole", strip_pendant_tadpole),
    ("two-gadgets", merge_two_gadgets),
    ("trim-gadget", trim_gadget),
    ("edge-delete", delete_edge),
    ("rewire", rewire),
    ("piece", split_piece),
];

/// Cycle of length `r` through `v`.
fn hang_cycle(g: &Graph, v: usize, r: usize) -> Graph {
    let base = g.order();
    let mut h = g.with_new_vertices(r - 1);
    let ring: Vec<usize> = std::iter::once(v).chain(base..base + r - 1).collect();
    for i in 0..r {
        h = h.with_edge(ring[i], ring[(i + 1) % r]).unwrap();
    }
    h
}

/// Cycle of length `r` joined to `v` by a path with `k` vertices.
fn hang_tadpole(g: &Graph, v: usize, r: usize, k: usize) -> Graph {
    let base = g.order();
    let mut h = g.with_new_vertices(r + k);
    for i in 0..r {
        h = h.with_edge(base + i, base + (i + 1) % r).unwrap();
    }
    let mut prev = base;
    for j in 0..k {
        h = h.with_edge(prev, base + r + j).unwrap();
        prev = base + r + j;
    }
    h.with_edge(prev, v).unwrap()
}

fn random_input(rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = rng.gen_range(6..=14);
    let m = rng.gen_range(n..=3 * n / 2);
    let mut g = random_min_deg2(n, m, rng.gen()).ok()?;
    for _ in 0..rng.gen_range(0..=3) {
        let v = rng.gen_range(0..n);
        let h = match rng.gen_range(0..3) {
            0 => hang_cycle(&g, v, rng.gen_range(3..=5)),
            1 => hang_tadpole(&g, v, rng.gen_range(3..=5), rng.gen_range(1..=3)),
            _ => {
                let (a, b) = g.edges()[rng.gen_range(0..g.size())];
                g.subdivide_edge(a, b, rng.gen_range(2..=5)).unwrap()
            }
        };
        if h.order() <= MAX_ORDER {
            g = h;
        }
    }
    has_forbidden_component(&g).is_none().then_some(g)
}

fn check_step(name: &str, g: &Graph, step: &Step) {
    let (post, keep) = step.apply(g).unwrap();
    assert_eq!(post.order() + step.shrink(), g.order(), "{name}");
    assert!(has_forbidden_component(&post).is_none(), "{name}: kernel has a forbidden component");
    let kernel = gamma_d2(&post, None).unwrap();
    let lifted = step.lift(g, &post, &keep, &kernel.set);
    assert!(is_2dd_set(g, &lifted).unwrap(), "{name}: lift is not a 2DD-set of {g:?}");
    assert!(lifted.len() <= kernel.size + step.budget(), "{name}: lift over budget on {g:?}");
    if name == "linkage" {
        assert_eq!(lifted.len(), kernel.size + 1, "linkage lift adds exactly one vertex");
    }
}

#[test]
fn every_rule_lifts_optimal_kernels_within_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2dd);
    let mut hits = [0usize; RULES.len()];
    for _ in 0..200_000 {
        if hits.iter().all(|&h| h >= HITS_PER_RULE) {
            break;
        }
        let Some(g) = random_input(&mut rng) else { continue };
        for (i, (name, rule)) in RULES.iter().enumerate() {
            if hits[i] >= HITS_PER_RULE {
                continue;
            }
            if let Some(step) = rule(&g) {
                check_step(name, &g, &step);
                hits[i] += 1;
            }
        }
    }
    for ((name, _), h) in RULES.iter().zip(hits) {
        assert!(h >= HITS_PER_RULE, "{name} fired only {h} times");
    }
}
