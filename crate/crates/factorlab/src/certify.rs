//! Certificates and their independent revalidation. Everything here only
//! checks: it recomputes counts and sums from the graph and the payload and
//! never calls a solver, so a bug in the constructive path cannot hide
//! behind its own certificate.

use crate::graph::{Graph, VertexSet};
use crate::matching::validate_k2cn_factor;
use crate::parity::{eta, EtaBreakdown, ParityPair};
use crate::set_factor::{HAssignment, Side};
use serde::{Deserialize, Serialize};

/// Which component count a violating set is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMeasure {
    Omega,
    Odd,
    Iso,
}

/// Tagged witness attached to reports: a factor, a violating cut set, a
/// Lovász pair with negative eta, or a failing degree-set assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Edge set of a factor; what the degrees must satisfy comes from the
    /// accompanying context.
    Factor { edges: Vec<(usize, usize)> },
    /// measure(G - set) > f(set) + slack.
    ViolatingSet {
        set: VertexSet,
        measure: CutMeasure,
        f: Vec<i64>,
        slack: i64,
        observed: usize,
    },
    /// eta(S, T) < 0 for the recorded parity pair.
    EtaWitness {
        s: VertexSet,
        t: VertexSet,
        g_fn: Vec<i64>,
        f_fn: Vec<i64>,
        breakdown: EtaBreakdown,
    },
    /// An assignment with no factor, certified by a cut S with
    /// f1(S) - q(S, empty) = deficiency < 0, f1 the per-side caps.
    FailingH {
        assignment: String,
        odd_caps: Vec<u32>,
        witness_s: VertexSet,
        deficiency: i64,
    },
    /// An assignment and a vertex x whose pendant graph G^x has no
    /// H^x-factor, certified the same way on G^x (pendant id = n).
    CriticalFailure {
        assignment: String,
        odd_caps: Vec<u32>,
        vertex: usize,
        witness_s: VertexSet,
        deficiency: i64,
    },
}

/// What the degrees of a `Factor` certificate must satisfy.
#[derive(Debug, Clone, Copy)]
pub enum FactorContext<'a> {
    PerfectMatching,
    K2Cn,
    Assignment(&'a HAssignment),
}

/// The cap function f1 induced by an assignment: odd_cap on the odd side,
/// even_cap on the even side.
pub fn side_caps(h: &HAssignment) -> Vec<i64> {
    (0..h.len())
        .map(|v| match h.sides[v] {
            Side::OddSide => h.odd_caps[v] as i64,
            Side::EvenSide => h.even_cap as i64,
        })
        .collect()
}

/// f1(S) - q(S, empty) on g for the caps f1; q counts components C of G - S
/// with f1(C) odd. Pure arithmetic plus a component scan.
pub fn h_deficiency_at(g: &Graph, f1: &[i64], s: VertexSet) -> i64 {
    let f_s: i64 = s.iter().map(|v| f1[v]).sum();
    let q = g
        .components_avoiding(s)
        .iter()
        .filter(|c| c.iter().map(|&v| f1[v]).sum::<i64>() % 2 == 1)
        .count() as i64;
    f_s - q
}

fn rebuild_h(assignment: &str, odd_caps: &[u32]) -> Option<HAssignment> {
    HAssignment::from_bitstring(assignment, odd_caps.to_vec()).ok()
}

pub fn revalidate_factor(g: &Graph, edges: &[(usize, usize)], ctx: FactorContext) -> bool {
    let mut deg = vec![0usize; g.order()];
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    match ctx {
        FactorContext::PerfectMatching => deg.iter().all(|&d| d == 1),
        FactorContext::K2Cn => {
            let f = crate::matching::FactorSubgraph::from_edges(g.order(), edges.to_vec());
            validate_k2cn_factor(g, &f).0
        }
        FactorContext::Assignment(h) => {
            h.len() == g.order() && (0..g.order()).all(|v| h.admits(v, deg[v]))
        }
    }
}

/// Revalidates a certificate against the graph it accompanies. `factor_ctx`
/// supplies the degree-set context for `Factor` payloads.
pub fn revalidate(g: &Graph, cert: &Certificate, factor_ctx: Option<FactorContext>) -> bool {
    match cert {
        Certificate::Factor { edges } => match factor_ctx {
            Some(ctx) => revalidate_factor(g, edges, ctx),
            None => false,
        },
        Certificate::ViolatingSet {
            set,
            measure,
            f,
            slack,
            observed,
        } => {
            if f.len() != g.order() || !set.is_subset_of(VertexSet::full(g.order())) {
                return false;
            }
            let comps = g.components_avoiding(*set);
            let count = match measure {
                CutMeasure::Omega => comps.len(),
                CutMeasure::Odd => comps.iter().filter(|c| c.len() % 2 == 1).count(),
                CutMeasure::Iso => comps.iter().filter(|c| c.len() == 1).count(),
            };
            let bound: i64 = set.iter().map(|v| f[v]).sum::<i64>() + slack;
            count == *observed && (count as i64) > bound
        }
        Certificate::EtaWitness {
            s,
            t,
            g_fn,
            f_fn,
            breakdown,
        } => {
            let Ok(gf) = ParityPair::new(g_fn.clone(), f_fn.clone()) else {
                return false;
            };
            match eta(g, &gf, *s, *t) {
                Ok(bd) => bd == *breakdown && bd.eta < 0,
                Err(_) => false,
            }
        }
        Certificate::FailingH {
            assignment,
            odd_caps,
            witness_s,
            deficiency,
        } => {
            let Some(h) = rebuild_h(assignment, odd_caps) else {
                return false;
            };
            if h.len() != g.order() {
                return false;
            }
            let f1 = side_caps(&h);
            let d = h_deficiency_at(g, &f1, *witness_s);
            d == *deficiency && d < 0
        }
        Certificate::CriticalFailure {
            assignment,
            odd_caps,
            vertex,
            witness_s,
            deficiency,
        } => {
            let Some(h) = rebuild_h(assignment, odd_caps) else {
                return false;
            };
            if h.len() != g.order() || *vertex >= g.order() {
                return false;
            }
            let Ok((gx, _)) = crate::graph::attach_pendant(g, *vertex) else {
                return false;
            };
            let mut f1 = side_caps(&h);
            f1.push(1); // the pendant demands degree 1
            let d = h_deficiency_at(&gx, &f1, *witness_s);
            d == *deficiency && d < 0
        }
    }
}
