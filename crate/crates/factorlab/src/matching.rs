//! Maximum matching (blossom contraction) and the classic factor theorems:
//! 1-factors, factor-criticality, brute-force Tutte witnesses, and
//! {K2, cycle}-factors including the explicit construction from
//! near-perfect matchings.

use crate::error::{Error, Result};
use crate::graph::{
    component_stats, delete_vertices_with_map, subsets_popcount_order, Graph, VertexSet,
};
use serde::{Deserialize, Serialize};

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, stored as the mate array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>, // mate[v] = partner or NONE
}

impl Matching {
    pub fn len(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.mate[v] {
            NONE => None,
            m => Some(m),
        }
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v] != NONE
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }

    /// Edges as sorted (u, v) pairs, u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, &m) in self.mate.iter().enumerate() {
            if m != NONE && v < m {
                out.push((v, m));
            }
        }
        out
    }
}

/// Spanning subgraph given by an edge subset, with its degree sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSubgraph {
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

impl FactorSubgraph {
    pub fn from_edges(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut degrees = vec![0usize; n];
        for &(u, v) in &edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        FactorSubgraph { edges, degrees }
    }

    /// True iff every edge belongs to G and the degree sequence matches.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.degrees.len() != g.order() {
            return false;
        }
        let mut deg = vec![0usize; g.order()];
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return false;
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        deg == self.degrees
    }
}

/// Maximum-cardinality matching via augmenting-path search with blossom
/// contraction. O(V^3); fine at gadget scale.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.order();
    let mut mate = vec![NONE; n];
    // greedy seed
    for v in 0..n {
        if mate[v] == NONE {
            for &w in g.neighbors(v) {
                if mate[w] == NONE {
                    mate[v] = w;
                    mate[w] = v;
                    break;
                }
            }
        }
    }
    let mut aux = BlossomAux::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            aux.try_augment(g, &mut mate, root);
        }
    }
    Matching { mate }
}

struct BlossomAux {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl BlossomAux {
    fn new(n: usize) -> Self {
        BlossomAux {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let n = self.base.len();
        let mut marked = vec![false; n];
        loop {
            a = self.base[a];
            marked[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if marked[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn try_augment(&mut self, g: &Graph, mate: &mut [usize], root: usize) -> bool {
        let n = g.order();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.used.iter_mut().for_each(|u| *u = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    // odd cycle: contract the blossom
                    let cur_base = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur_base, to);
                    self.mark_path(mate, to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        // augmenting path root..to: flip along parent links
                        let mut u = to;
                        while u != NONE {
                            let pv = self.parent[u];
                            let ppv = mate[pv];
                            mate[u] = pv;
                            mate[pv] = u;
                            u = ppv;
                        }
                        return true;
                    } else {
                        let m = mate[to];
                        if !self.used[m] {
                            self.used[m] = true;
                            self.queue.push(m);
                        }
                    }
                }
            }
        }
        false
    }
}

/// True iff G has a perfect matching.
pub fn has_one_factor(g: &Graph) -> bool {
    g.order() % 2 == 0 && max_matching(g).is_perfect()
}

/// True iff G has odd order and G - x has a perfect matching for every x.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.order();
    if n % 2 == 0 {
        return false;
    }
    (0..n).all(|x| {
        let (h, _) = delete_vertices_with_map(g, VertexSet::singleton(x));
        n == 1 || has_one_factor(&h)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TutteVerdict {
    Holds,
    /// Nonempty S with odd(G - S) > |S|, minimal popcount, numeric-minor.
    Witness(VertexSet),
}

/// Brute-force scan of odd(G-S) <= |S| over every nonempty S. Exponential by
/// design; this is the independent oracle the solvers are audited against.
pub fn tutte_witness(g: &Graph) -> Result<TutteVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    for s in subsets_popcount_order(n, false) {
        let comps = g.components_avoiding(s);
        let odd = comps.iter().filter(|c| c.len() % 2 == 1).count();
        if odd > s.len() {
            return Ok(TutteVerdict::Witness(s));
        }
    }
    Ok(TutteVerdict::Holds)
}

/// Backtracking search for a spanning subgraph whose components are all K2 or
/// cycles. Independent of the parity-factor machinery.
pub fn k2cn_factor_search(g: &Graph) -> Result<Option<FactorSubgraph>> {
    let n = g.order();
    if n < 2 {
        return Err(Error::TooSmall { min: 2 });
    }
    let mut state = K2CnState {
        g,
        closed: vec![false; n],
        factor_edges: Vec::new(),
    };
    if state.search_next() {
        Ok(Some(FactorSubgraph::from_edges(n, state.factor_edges)))
    } else {
        Ok(None)
    }
}

struct K2CnState<'a> {
    g: &'a Graph,
    closed: Vec<bool>, // vertex fully assigned to a finished component
    factor_edges: Vec<(usize, usize)>,
}

impl K2CnState<'_> {
    /// Picks the smallest open vertex and tries to close it as a K2 or as the
    /// anchor of a cycle.
    fn search_next(&mut self) -> bool {
        let u = match self.closed.iter().position(|&c| !c) {
            None => return true,
            Some(u) => u,
        };
        // K2 with an open neighbor
        for i in 0..self.g.neighbors(u).len() {
            let w = self.g.neighbors(u)[i];
            if self.closed[w] {
                continue;
            }
            self.closed[u] = true;
            self.closed[w] = true;
            self.factor_edges.push((u, w));
            if self.search_next() {
                return true;
            }
            self.factor_edges.pop();
            self.closed[u] = false;
            self.closed[w] = false;
        }
        // cycle anchored at u
        for i in 0..self.g.neighbors(u).len() {
            let w = self.g.neighbors(u)[i];
            if self.closed[w] {
                continue;
            }
            self.closed[u] = true;
            self.closed[w] = true;
            self.factor_edges.push((u, w));
            if self.extend_cycle(u, w, 2) {
                return true;
            }
            self.factor_edges.pop();
            self.closed[u] = false;
            self.closed[w] = false;
        }
        false
    }

    fn extend_cycle(&mut self, anchor: usize, end: usize, len: usize) -> bool {
        for i in 0..self.g.neighbors(end).len() {
            let w = self.g.neighbors(end)[i];
            if w == anchor && len >= 3 {
                self.factor_edges.push((end, anchor));
                if self.search_next() {
                    return true;
                }
                self.factor_edges.pop();
            }
            if self.closed[w] {
                continue;
            }
            self.closed[w] = true;
            self.factor_edges.push((end, w));
            if self.extend_cycle(anchor, w, len + 1) {
                return true;
            }
            self.factor_edges.pop();
            self.closed[w] = false;
        }
        false
    }
}

/// Near-perfect matching of the factor-critical graph G missing exactly `x`,
/// in original labels.
fn near_perfect_missing(g: &Graph, x: usize) -> Result<Vec<(usize, usize)>> {
    let (h, map) = delete_vertices_with_map(g, VertexSet::singleton(x));
    let m = max_matching(&h);
    if !m.is_perfect() {
        return Err(Error::NotFactorCritical);
    }
    Ok(m.edges().iter().map(|&(a, b)| (map[a], map[b])).collect())
}

/// The constructive {K2, cycle}-factor of a factor-critical graph: the union
/// of near-perfect matchings M_u, M_v plus the edge uv. Every component is a
/// K2 or a cycle, and at most one component is an odd cycle.
pub fn k2cn_from_critical(g: &Graph, u: usize, v: usize) -> Result<FactorSubgraph> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    if !is_factor_critical(g) {
        return Err(Error::NotFactorCritical);
    }
    let mut edges = near_perfect_missing(g, u)?;
    edges.extend(near_perfect_missing(g, v)?);
    edges.push((u, v));
    Ok(FactorSubgraph::from_edges(g.order(), edges))
}

/// True iff every component of `f` (as a subgraph of G) is a K2 or a cycle;
/// also reports the number of odd-cycle components.
pub fn validate_k2cn_factor(g: &Graph, f: &FactorSubgraph) -> (bool, usize) {
    if !f.is_valid_in(g) {
        return (false, 0);
    }
    let sub = Graph::from_edges(g.order(), &f.edges).unwrap();
    let stats = component_stats(&sub);
    let mut odd_cycles = 0;
    for comp in &stats.components {
        let members: Vec<usize> = comp.to_vec();
        let degs: Vec<usize> = members.iter().map(|&v| sub.degree(v)).collect();
        let ok = match members.len() {
            2 => degs == [1, 1],
            k if k >= 3 => degs.iter().all(|&d| d == 2),
            _ => false,
        };
        if !ok {
            return (false, 0);
        }
        if members.len() >= 3 && members.len() % 2 == 1 {
            odd_cycles += 1;
        }
    }
    (true, odd_cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph6;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn matching_small_cases() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(max_matching(&k2).len(), 1);
        assert_eq!(max_matching(&cycle(5)).len(), 2);
        let petersen = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(max_matching(&petersen).len(), 5);
    }

    #[test]
    fn one_factor_small_cases() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(has_one_factor(&k2));
        assert!(!has_one_factor(&path(3)));
        // K_{2,4}: size-2 side {0,1}
        let k24 = Graph::from_edges(
            6,
            &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)],
        )
        .unwrap();
        assert!(!has_one_factor(&k24));
        match tutte_witness(&k24).unwrap() {
            TutteVerdict::Witness(s) => assert_eq!(s.to_vec(), vec![0, 1]),
            TutteVerdict::Holds => panic!("K_{{2,4}} must have a Tutte witness"),
        }
    }

    #[test]
    fn factor_critical_cases() {
        assert!(is_factor_critical(&cycle(3)));
        assert!(is_factor_critical(&cycle(5)));
        assert!(!is_factor_critical(&path(3)));
        assert!(!is_factor_critical(&cycle(4)));
    }

    #[test]
    fn tutte_witness_cases() {
        assert_eq!(tutte_witness(&cycle(4)).unwrap(), TutteVerdict::Holds);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            tutte_witness(&star).unwrap(),
            TutteVerdict::Witness(VertexSet::singleton(0))
        );
        let disconnected = Graph::empty(3);
        assert_eq!(tutte_witness(&disconnected), Err(Error::Disconnected));
    }

    #[test]
    fn k2cn_search_cases() {
        let f = k2cn_factor_search(&cycle(4)).unwrap().unwrap();
        let (ok, _) = validate_k2cn_factor(&cycle(4), &f);
        assert!(ok);
        assert!(k2cn_factor_search(&path(3)).unwrap().is_none());
        assert!(k2cn_factor_search(&Graph::empty(1)).is_err());
    }

    #[test]
    fn k2cn_construction_on_triangle() {
        let c3 = cycle(3);
        let f = k2cn_from_critical(&c3, 0, 1).unwrap();
        let (ok, odd_cycles) = validate_k2cn_factor(&c3, &f);
        assert!(ok);
        assert_eq!(odd_cycles, 1);
        assert_eq!(f.edges.len(), 3); // the whole triangle
    }

    #[test]
    fn k2cn_construction_on_c5_every_edge() {
        let c5 = cycle(5);
        for (u, v) in c5.edges() {
            let f = k2cn_from_critical(&c5, u, v).unwrap();
            let (ok, odd_cycles) = validate_k2cn_factor(&c5, &f);
            assert!(ok);
            assert_eq!(odd_cycles, 1);
            for &d in &f.degrees {
                assert!(d == 1 || d == 2);
            }
        }
    }

    #[test]
    fn k2cn_construction_preconditions() {
        assert_eq!(
            k2cn_from_critical(&cycle(4), 0, 1),
            Err(Error::NotFactorCritical)
        );
        assert_eq!(
            k2cn_from_critical(&cycle(5), 0, 2),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        );
    }
}
