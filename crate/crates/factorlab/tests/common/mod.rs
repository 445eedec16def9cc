//! Independent brute-force oracles used only by the test suites. These stay
//! deliberately dumb and share no code with the implementation paths they
//! check.

use factorlab::graph::{subsets_popcount_order, Graph, VertexSet};

/// Maximum matching size by exhaustive recursion over edges.
pub fn brute_force_matching_size(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = rec(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    let take = 1 + rec(rest, used | 1 << u | 1 << v);
                    skip.max(take)
                } else {
                    skip
                }
            }
        }
    }
    rec(&g.edges(), 0)
}

/// All perfect matchings as sorted edge lists, by exhaustive recursion.
pub fn all_perfect_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let mut out = Vec::new();
    fn rec(
        g: &Graph,
        n: usize,
        used: u64,
        picked: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let free = (0..n).find(|&v| used >> v & 1 == 0);
        let Some(u) = free else {
            out.push(picked.clone());
            return;
        };
        for &w in g.neighbors(u) {
            if w > u && used >> w & 1 == 0 {
                picked.push((u, w));
                rec(g, n, used | 1 << u | 1 << w, picked, out);
                picked.pop();
            }
        }
    }
    if n % 2 == 0 {
        rec(g, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Naive unpruned scan of omega(G-S) <= f(S) + slack; returns the first
/// violation in popcount-major order, if any.
pub fn naive_condition_witness(
    g: &Graph,
    f: &[i64],
    slack: i64,
) -> Option<(VertexSet, usize)> {
    let n = g.order();
    for s in subsets_popcount_order(n, slack == 1) {
        let omega = g.components_avoiding(s).len();
        let bound: i64 = s.iter().map(|v| f[v]).sum::<i64>() + slack;
        if omega as i64 > bound {
            return Some((s, omega));
        }
    }
    None
}

/// iso(G-S) <= |S| for all nonempty S, by direct scan.
pub fn iso_condition_holds(g: &Graph) -> bool {
    let n = g.order();
    subsets_popcount_order(n, false).all(|s| {
        let iso = g
            .components_avoiding(s)
            .iter()
            .filter(|c| c.len() == 1)
            .count();
        iso <= s.len()
    })
}

/// Random connected graph by edge probability, retried until connected.
pub fn random_connected_graph(
    n: usize,
    rng: &mut impl rand::Rng,
) -> Graph {
    loop {
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
