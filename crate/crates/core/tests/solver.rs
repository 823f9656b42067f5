//! The exact solver against an independent brute force that implements
//! the domination rule directly from adjacency lists.

use ddom::enumeration::{enumerate, GenSpec};
use ddom::{gamma_d2, gamma_d2_value, Graph};
use proptest::prelude::*;

fn dominated(adj: &[Vec<bool>], set: u32, v: usize) -> bool {
    let n = adj.len();
    if set >> v & 1 == 1 || (0..n).any(|w| adj[v][w] && set >> w & 1 == 1) {
        return true;
    }
    let at_two = (0..n)
        .filter(|&w| w != v && !adj[v][w] && (0..n).any(|x| adj[v][x] && adj[x][w]))
        .filter(|&w| set >> w & 1 == 1)
        .count();
    at_two >= 2
}

fn brute_force(g: &Graph) -> usize {
    let n = g.order();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| dominated(&adj, s, v)))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_brute_force(g in arb_graph(11)) {
        let cert = gamma_d2(&g, None).unwrap();
        prop_assert!(cert.verified);
        prop_assert_eq!(cert.size, brute_force(&g));
    }

    #[test]
    fn invariant_under_relabelling(g in arb_graph(12), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(gamma_d2_value(&g).unwrap(), gamma_d2_value(&g.permuted(&perm)).unwrap());
    }

    #[test]
    fn adding_an_edge_never_increases_the_value(g in arb_graph(12), a in any::<usize>(), b in any::<usize>()) {
        let n = g.order();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b && !g.has_edge(a, b));
        let more = g.with_edge(a, b).unwrap();
        prop_assert!(gamma_d2_value(&more).unwrap() <= gamma_d2_value(&g).unwrap());
    }
}

#[test]
fn all_connected_graphs_up_to_six() {
    for n in 1..=6 {
        for g in enumerate(&GenSpec::exhaustive(n).connected()).unwrap() {
            assert_eq!(gamma_d2_value(&g).unwrap(), brute_force(&g), "{g:?}");
        }
    }
}
