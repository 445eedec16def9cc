//! The Lovász parity (g,f)-factor criterion: the eta deficiency, an
//! exhaustive feasibility oracle, and a constructive solver by gadget
//! reduction to perfect matching.

use crate::error::{Error, Result};
use crate::graph::{edge_cut_count, Graph, VertexSet};
use crate::matching::{max_matching, FactorSubgraph};
use serde::{Deserialize, Serialize};

/// Per-vertex bounds g(v) <= f(v) with g(v) = f(v) (mod 2). g may be
/// negative and f may exceed the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityPair {
    pub g: Vec<i64>,
    pub f: Vec<i64>,
}

impl ParityPair {
    pub fn new(g: Vec<i64>, f: Vec<i64>) -> Result<Self> {
        if g.len() != f.len() {
            return Err(Error::InvalidParityPair {
                vertex: 0,
                reason: "g and f must have equal length".into(),
            });
        }
        for v in 0..g.len() {
            if g[v] > f[v] {
                return Err(Error::InvalidParityPair {
                    vertex: v,
                    reason: format!("g={} > f={}", g[v], f[v]),
                });
            }
            if (g[v] - f[v]) % 2 != 0 {
                return Err(Error::InvalidParityPair {
                    vertex: v,
                    reason: format!("g={} and f={} differ in parity", g[v], f[v]),
                });
            }
        }
        Ok(ParityPair { g, f })
    }

    pub fn constant(n: usize, g: i64, f: i64) -> Result<Self> {
        Self::new(vec![g; n], vec![f; n])
    }

    pub fn f_total(&self) -> i64 {
        self.f.iter().sum()
    }

    /// Normal form: the degree set a factor actually sees at v is
    /// {l, l+2, ..., u} with l = max(g(v), parity bit of f) and
    /// u = min(f(v), deg(v)) lowered by one on parity mismatch.
    /// l > u at some vertex means the instance is infeasible there.
    pub fn normalize(&self, g: &Graph) -> ParityIntervalSpec {
        let mut bounds = Vec::with_capacity(self.f.len());
        for v in 0..self.f.len() {
            let parity = self.f[v].rem_euclid(2);
            let lo = self.g[v].max(parity);
            let deg = g.degree(v) as i64;
            let mut hi = self.f[v].min(deg);
            if hi.rem_euclid(2) != parity {
                hi -= 1;
            }
            bounds.push(if lo <= hi {
                Some((lo as u32, hi as u32))
            } else {
                None
            });
        }
        ParityIntervalSpec { bounds }
    }
}

/// Per-vertex fixed-parity degree interval {l, l+2, ..., u}; `None` marks a
/// vertex where clamping made the constraint unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityIntervalSpec {
    pub bounds: Vec<Option<(u32, u32)>>,
}

impl ParityIntervalSpec {
    pub fn new(bounds: Vec<Option<(u32, u32)>>) -> Result<Self> {
        for (v, b) in bounds.iter().enumerate() {
            if let Some((lo, hi)) = b {
                if lo > hi {
                    return Err(Error::InvalidInterval {
                        vertex: v,
                        reason: format!("l={lo} > u={hi}"),
                    });
                }
                if (hi - lo) % 2 != 0 {
                    return Err(Error::InvalidInterval {
                        vertex: v,
                        reason: format!("l={lo} and u={hi} differ in parity"),
                    });
                }
            }
        }
        Ok(ParityIntervalSpec { bounds })
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn admits(&self, v: usize, d: usize) -> bool {
        match self.bounds[v] {
            None => false,
            Some((lo, hi)) => {
                let d = d as u32;
                lo <= d && d <= hi && (d - lo) % 2 == 0
            }
        }
    }
}

/// Term-by-term breakdown of eta(S,T) =
/// f(S) - g(T) + sum_{x in T} deg(x) - e(S,T) - q(S,T).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaBreakdown {
    pub f_s: i64,
    pub g_t: i64,
    pub deg_t: i64,
    pub e_st: i64,
    pub q: i64,
    pub eta: i64,
}

/// Number of components C of G - S - T with f(C) + e(C,T) odd.
pub fn q_count(g: &Graph, f: &[i64], s: VertexSet, t: VertexSet) -> Result<usize> {
    if !s.is_disjoint(t) {
        return Err(Error::OverlappingSets);
    }
    let comps = g.components_avoiding(s.union(t));
    let mut q = 0;
    for comp in &comps {
        let f_c: i64 = comp.iter().map(|&v| f[v]).sum();
        let e_ct = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| t.contains(w)).count())
            .sum::<usize>() as i64;
        if (f_c + e_ct).rem_euclid(2) == 1 {
            q += 1;
        }
    }
    Ok(q)
}

pub fn eta(g: &Graph, gf: &ParityPair, s: VertexSet, t: VertexSet) -> Result<EtaBreakdown> {
    if !s.is_disjoint(t) {
        return Err(Error::OverlappingSets);
    }
    let f_s: i64 = s.iter().map(|v| gf.f[v]).sum();
    let g_t: i64 = t.iter().map(|v| gf.g[v]).sum();
    let deg_t: i64 = t.iter().map(|v| g.degree(v) as i64).sum();
    let e_st = edge_cut_count(g, s, t) as i64;
    let q = q_count(g, &gf.f, s, t)? as i64;
    Ok(EtaBreakdown {
        f_s,
        g_t,
        deg_t,
        e_st,
        q,
        eta: f_s - g_t + deg_t - e_st - q,
    })
}

/// True iff eta(S,T) = f(V(G)) (mod 2). The property suite asserts this is
/// always the case; the L1 audit checks it.
pub fn lemma1_residue(g: &Graph, gf: &ParityPair, s: VertexSet, t: VertexSet) -> Result<bool> {
    let bd = eta(g, gf, s, t)?;
    Ok(bd.eta.rem_euclid(2) == gf.f_total().rem_euclid(2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityVerdict {
    Feasible,
    /// First disjoint pair (in ternary-counter order) with eta < 0.
    Witness {
        s: VertexSet,
        t: VertexSet,
        breakdown: EtaBreakdown,
    },
}

/// Exhaustive scan of eta(S,T) >= 0 over all 3^n free/S/T assignments,
/// ternary counter with vertex 0 as the least significant digit.
/// Exponential by design: the dumb, independent side of the dual route.
pub fn parity_feasible_oracle(g: &Graph, gf: &ParityPair) -> Result<ParityVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let mut digits = vec![0u8; n]; // 0 = free, 1 = S, 2 = T
    loop {
        let mut s = VertexSet::EMPTY;
        let mut t = VertexSet::EMPTY;
        for (v, &d) in digits.iter().enumerate() {
            match d {
                1 => s.insert(v),
                2 => t.insert(v),
                _ => {}
            }
        }
        let bd = eta(g, gf, s, t)?;
        if bd.eta < 0 {
            return Ok(ParityVerdict::Witness { s, t, breakdown: bd });
        }
        // increment ternary counter
        let mut i = 0;
        loop {
            if i == n {
                return Ok(ParityVerdict::Feasible);
            }
            digits[i] += 1;
            if digits[i] == 3 {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Constructive solver: gadget reduction to perfect matching.
///
/// Vertex v with bounds (l, u) becomes deg(v) port vertices (one per incident
/// edge, neighbor order) and deg(v) - l inner vertices joined completely to
/// the ports; the first u - l inner vertices are paired off by inner-inner
/// edges. Each original edge becomes one port-port edge. A perfect matching
/// of the gadget selects exactly the factors with deg_F(v) in {l, .., u} of
/// the right parity; factor edges are the matched port-port edges.
pub fn solve_parity_factor(g: &Graph, spec: &ParityIntervalSpec) -> Result<Option<FactorSubgraph>> {
    let n = g.order();
    if spec.len() != n {
        return Err(Error::InvalidInterval {
            vertex: spec.len(),
            reason: "spec length differs from graph order".into(),
        });
    }
    for (v, b) in spec.bounds.iter().enumerate() {
        match *b {
            None => return Ok(None),
            Some((lo, hi)) => {
                if lo > hi || (hi - lo) % 2 != 0 {
                    return Err(Error::InvalidInterval {
                        vertex: v,
                        reason: format!("bad interval ({lo}, {hi})"),
                    });
                }
                if hi as usize > g.degree(v) {
                    return Err(Error::InvalidInterval {
                        vertex: v,
                        reason: format!("u={hi} exceeds degree {}", g.degree(v)),
                    });
                }
            }
        }
    }

    // gadget layout
    let mut port_start = vec![0usize; n];
    let mut inner_start = vec![0usize; n];
    let mut total = 0usize;
    for v in 0..n {
        let (lo, _) = spec.bounds[v].unwrap();
        port_start[v] = total;
        total += g.degree(v);
        inner_start[v] = total;
        total += g.degree(v) - lo as usize;
    }

    let edges = g.edges();
    let mut gadget_edges: Vec<(usize, usize)> = Vec::new();
    // port-port edges, one per original edge
    let mut port_edge = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let pu = port_start[u] + g.neighbors(u).binary_search(&v).unwrap();
        let pv = port_start[v] + g.neighbors(v).binary_search(&u).unwrap();
        gadget_edges.push((pu, pv));
        port_edge.push((pu, pv));
    }
    for v in 0..n {
        let (lo, hi) = spec.bounds[v].unwrap();
        let deg = g.degree(v);
        let inner_count = deg - lo as usize;
        for p in 0..deg {
            for i in 0..inner_count {
                gadget_edges.push((port_start[v] + p, inner_start[v] + i));
            }
        }
        // fixed pairing on the first u - l inner vertices (u - l is even)
        let paired = (hi - lo) as usize;
        debug_assert!(paired <= inner_count);
        let mut i = 0;
        while i < paired {
            gadget_edges.push((inner_start[v] + i, inner_start[v] + i + 1));
            i += 2;
        }
    }

    let gadget = Graph::from_edges(total, &gadget_edges)?;
    let m = max_matching(&gadget);
    if !m.is_perfect() {
        return Ok(None);
    }
    let mut factor_edges = Vec::new();
    for (idx, &(u, v)) in edges.iter().enumerate() {
        let (pu, pv) = port_edge[idx];
        if m.mate(pu) == Some(pv) {
            factor_edges.push((u, v));
        }
    }
    let factor = FactorSubgraph::from_edges(n, factor_edges);
    debug_assert!((0..n).all(|v| spec.admits(v, factor.degrees[v])));
    Ok(Some(factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn ones(n: usize) -> ParityPair {
        ParityPair::constant(n, 1, 1).unwrap()
    }

    #[test]
    fn q_count_cases() {
        let k1 = Graph::empty(1);
        assert_eq!(
            q_count(&k1, &[1], VertexSet::EMPTY, VertexSet::EMPTY).unwrap(),
            1
        );
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            q_count(&k2, &[1, 1], VertexSet::EMPTY, VertexSet::EMPTY).unwrap(),
            0
        );
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            q_count(&p3, &[1, 1, 1], VertexSet::singleton(1), VertexSet::EMPTY).unwrap(),
            2
        );
        assert_eq!(
            q_count(&k2, &[1, 1], VertexSet::singleton(0), VertexSet::singleton(0)),
            Err(Error::OverlappingSets)
        );
    }

    #[test]
    fn eta_cases() {
        let k1 = Graph::empty(1);
        let bd = eta(&k1, &ones(1), VertexSet::EMPTY, VertexSet::EMPTY).unwrap();
        assert_eq!(bd.eta, -1);

        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let bd = eta(&k2, &ones(2), VertexSet::EMPTY, VertexSet::EMPTY).unwrap();
        assert_eq!(bd.eta, 0);

        let bd = eta(&k2, &ones(2), VertexSet::singleton(0), VertexSet::singleton(1)).unwrap();
        assert_eq!(
            (bd.f_s, bd.g_t, bd.deg_t, bd.e_st, bd.q, bd.eta),
            (1, 1, 1, 1, 0, 0)
        );
    }

    #[test]
    fn oracle_cases() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            parity_feasible_oracle(&k2, &ones(2)).unwrap(),
            ParityVerdict::Feasible
        );
        let k1 = Graph::empty(1);
        match parity_feasible_oracle(&k1, &ones(1)).unwrap() {
            ParityVerdict::Witness { s, t, .. } => {
                assert!(s.is_empty());
                assert!(t.is_empty());
            }
            _ => panic!("K1 has no 1-regular factor"),
        }
        assert_eq!(
            parity_feasible_oracle(&cycle(4), &ones(4)).unwrap(),
            ParityVerdict::Feasible
        );
        assert_eq!(
            parity_feasible_oracle(&Graph::empty(2), &ones(2)),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn lemma1_at_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(lemma1_residue(&k2, &ones(2), VertexSet::singleton(0), VertexSet::singleton(1))
            .unwrap());
        assert!(lemma1_residue(&k2, &ones(2), VertexSet::EMPTY, VertexSet::EMPTY).unwrap());
    }

    #[test]
    fn solver_k2_forced_edge() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let spec = ParityIntervalSpec::new(vec![Some((1, 1)), Some((1, 1))]).unwrap();
        let f = solve_parity_factor(&k2, &spec).unwrap().unwrap();
        assert_eq!(f.edges, vec![(0, 1)]);
    }

    #[test]
    fn solver_c4_even_spec() {
        let c4 = cycle(4);
        let spec = ParityIntervalSpec::new(vec![Some((0, 2)); 4]).unwrap();
        let f = solve_parity_factor(&c4, &spec).unwrap().unwrap();
        for v in 0..4 {
            assert!(spec.admits(v, f.degrees[v]));
        }
    }

    #[test]
    fn solver_infeasible_vertex_is_none() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let spec = ParityIntervalSpec { bounds: vec![None, Some((1, 1))] };
        assert_eq!(solve_parity_factor(&k2, &spec).unwrap(), None);
    }

    #[test]
    fn normalize_clamps() {
        let c4 = cycle(4);
        // g = -5, f = 7: degrees are bounded by 2, parity odd -> (1, 1)
        let gf = ParityPair::constant(4, -5, 7).unwrap();
        let spec = gf.normalize(&c4);
        assert_eq!(spec.bounds, vec![Some((1, 1)); 4]);
        // isolated vertex demanding odd degree -> infeasible
        let k1 = Graph::empty(1);
        let spec = ones(1).normalize(&k1);
        assert_eq!(spec.bounds, vec![None]);
    }
}
