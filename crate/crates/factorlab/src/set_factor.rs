//! Degree-set factors: each vertex is assigned either the odd set
//! {1, 3, ..., f(v)} or the even set {0, 2, ..., 2N}, with
//! 2N = max f + 1. Criticality is tested by attaching a pendant vertex and
//! demanding degree 1 there. Also builds the counterexample assignments used
//! to refute the factor conditions at a violating cut set.

use crate::error::{Error, Result};
use crate::graph::{attach_pendant, Graph, VertexSet};
use crate::matching::FactorSubgraph;
use crate::parity::{solve_parity_factor, ParityIntervalSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// degree set {1, 3, ..., odd_cap(v)}
    OddSide,
    /// degree set {0, 2, ..., even_cap}
    EvenSide,
}

/// Per-vertex choice between the odd degree set and the even degree set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HAssignment {
    pub sides: Vec<Side>,
    pub odd_caps: Vec<u32>,
    pub even_cap: u32,
}

impl HAssignment {
    pub fn new(sides: Vec<Side>, odd_caps: Vec<u32>) -> Result<Self> {
        if sides.len() != odd_caps.len() {
            return Err(Error::InvalidAssignment(
                "sides and odd_caps must have equal length".into(),
            ));
        }
        for (v, &c) in odd_caps.iter().enumerate() {
            if c % 2 == 0 || c < 1 {
                return Err(Error::InvalidOddWeight {
                    vertex: v,
                    value: c as i64,
                });
            }
        }
        let even_cap = odd_caps.iter().copied().max().unwrap_or(1) + 1;
        Ok(HAssignment {
            sides,
            odd_caps,
            even_cap,
        })
    }

    /// The unit-cap assignment: {1} versus {0,2}.
    pub fn unit(sides: Vec<Side>) -> Self {
        let n = sides.len();
        HAssignment::new(sides, vec![1; n]).unwrap()
    }

    /// From a bit-string, '1' = odd side for that vertex.
    pub fn from_bitstring(bits: &str, odd_caps: Vec<u32>) -> Result<Self> {
        if bits.len() != odd_caps.len() {
            return Err(Error::InvalidAssignment(format!(
                "bit-string length {} does not match {} vertices",
                bits.len(),
                odd_caps.len()
            )));
        }
        let sides = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(Side::OddSide),
                '0' => Ok(Side::EvenSide),
                other => Err(Error::InvalidAssignment(format!(
                    "bad character {other:?} in bit-string"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        HAssignment::new(sides, odd_caps)
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn odd_side_count(&self) -> usize {
        self.sides.iter().filter(|&&s| s == Side::OddSide).count()
    }

    pub fn to_bitstring(&self) -> String {
        self.sides
            .iter()
            .map(|s| if *s == Side::OddSide { '1' } else { '0' })
            .collect()
    }

    /// The literal degree set at v, honoring the caps but not the degree.
    pub fn admits(&self, v: usize, d: usize) -> bool {
        match self.sides[v] {
            Side::OddSide => d % 2 == 1 && d <= self.odd_caps[v] as usize,
            Side::EvenSide => d % 2 == 0 && d <= self.even_cap as usize,
        }
    }

    /// Extends the assignment onto a pendant vertex that must get degree 1.
    fn extend_pendant(&self) -> HAssignment {
        let mut sides = self.sides.clone();
        sides.push(Side::OddSide);
        let mut odd_caps = self.odd_caps.clone();
        odd_caps.push(1);
        HAssignment {
            sides,
            odd_caps,
            even_cap: self.even_cap,
        }
    }
}

/// Clamp the degree sets to the actual degrees, producing the parity
/// interval normal form. An odd-side vertex of degree 0 has an empty set;
/// that is recorded as infeasible-at-v, not an error.
pub fn normalize_h(g: &Graph, h: &HAssignment) -> ParityIntervalSpec {
    let mut bounds = Vec::with_capacity(h.len());
    for v in 0..h.len() {
        let deg = g.degree(v) as u32;
        let b = match h.sides[v] {
            Side::OddSide => {
                let cap = h.odd_caps[v].min(deg);
                if cap == 0 {
                    None
                } else {
                    Some((1, if cap % 2 == 0 { cap - 1 } else { cap }))
                }
            }
            Side::EvenSide => {
                let mut hi = h.even_cap.min(deg);
                if hi % 2 == 1 {
                    hi -= 1;
                }
                Some((0, hi))
            }
        };
        bounds.push(b);
    }
    ParityIntervalSpec { bounds }
}

/// Spanning subgraph with deg_F(v) in the literal set H(v), or None.
pub fn solve_h_factor(g: &Graph, h: &HAssignment) -> Result<Option<FactorSubgraph>> {
    if h.len() != g.order() {
        return Err(Error::InvalidAssignment(format!(
            "assignment length {} does not match graph order {}",
            h.len(),
            g.order()
        )));
    }
    let spec = normalize_h(g, h);
    let factor = solve_parity_factor(g, &spec)?;
    if let Some(f) = &factor {
        debug_assert!((0..g.order()).all(|v| h.admits(v, f.degrees[v])));
    }
    Ok(factor)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub critical: bool,
    /// Vertices x for which G^x has no H^x-factor.
    pub failures: Vec<usize>,
}

/// For each vertex x, attach a pendant x', require degree 1 there, and solve.
pub fn is_h_critical(g: &Graph, h: &HAssignment) -> Result<CriticalityReport> {
    if h.len() != g.order() {
        return Err(Error::InvalidAssignment(format!(
            "assignment length {} does not match graph order {}",
            h.len(),
            g.order()
        )));
    }
    let mut failures = Vec::new();
    for x in 0..g.order() {
        let (gx, _pendant) = attach_pendant(g, x)?;
        let hx = h.extend_pendant();
        if solve_h_factor(&gx, &hx)?.is_none() {
            failures.push(x);
        }
    }
    Ok(CriticalityReport {
        critical: failures.is_empty(),
        failures,
    })
}

/// The refutation assignment at a violating set S': even components of
/// G - S' each contribute their lowest-index vertex as an even-side
/// candidate; with no even component, a vertex of the first odd component
/// stands in. |W| is trimmed so the odd-side count gets the requested
/// parity. Odd caps come from the caller's f (all ones for the unit case).
pub fn counterexample_h(
    g: &Graph,
    s_prime: VertexSet,
    want_odd_ones: bool,
    odd_caps: &[u32],
) -> Result<HAssignment> {
    if s_prime.is_empty() {
        return Err(Error::EmptySet);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let comps = g.components_avoiding(s_prime);
    let even_comps: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() % 2 == 0).collect();
    let odd_comps: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() % 2 == 1).collect();

    let want_parity = if want_odd_ones { 1 } else { 0 };
    let mut w: Vec<usize> = if !even_comps.is_empty() {
        even_comps.iter().map(|c| c[0]).collect()
    } else {
        // b = 0: W inside the first odd component, |W| in {0, 1}
        let c1 = odd_comps.first().ok_or(Error::EmptySet)?;
        vec![c1[0]]
    };
    // |V(G)| - |W| must have the requested parity; |W| may shrink by one.
    if (n - w.len()) % 2 != want_parity {
        w.pop();
    }
    assert_eq!(
        (n - w.len()) % 2,
        want_parity,
        "parity is always reachable: |W| spans two consecutive integers"
    );

    let w_set = VertexSet::from_iter(w);
    let sides = (0..n)
        .map(|v| {
            if w_set.contains(v) {
                Side::EvenSide
            } else {
                Side::OddSide
            }
        })
        .collect();
    HAssignment::new(sides, odd_caps.to_vec())
}

/// All 2^(n-1) assignments whose odd-side count has the requested parity, in
/// binary-counter order over the odd-side bit mask.
pub fn enumerate_h(
    n: usize,
    odd_count_parity: usize,
    odd_caps: Vec<u32>,
) -> Result<impl Iterator<Item = HAssignment>> {
    if n > 24 {
        return Err(Error::GuardExceeded {
            what: "enumerate_h order",
            got: n,
            limit: 24,
        });
    }
    if odd_caps.len() != n {
        return Err(Error::InvalidAssignment(
            "odd_caps length must equal n".into(),
        ));
    }
    let parity = odd_count_parity % 2;
    Ok((0u64..1u64 << n)
        .filter(move |m| (m.count_ones() as usize) % 2 == parity)
        .map(move |m| {
            let sides = (0..n)
                .map(|v| {
                    if m >> v & 1 == 1 {
                        Side::OddSide
                    } else {
                        Side::EvenSide
                    }
                })
                .collect();
            HAssignment::new(sides, odd_caps.clone()).unwrap()
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn all_odd(n: usize) -> HAssignment {
        HAssignment::unit(vec![Side::OddSide; n])
    }

    #[test]
    fn normalize_examples() {
        // unit odd side on degree 5: the whole set is {1}
        let s5 = star(5);
        let h = all_odd(6);
        let spec = normalize_h(&s5, &h);
        assert_eq!(spec.bounds[0], Some((1, 1)));
        // unit even side on degree 1 clamps {0,2} to {0}
        let mut h = all_odd(6);
        h.sides[1] = Side::EvenSide;
        let spec = normalize_h(&s5, &h);
        assert_eq!(spec.bounds[1], Some((0, 0)));
        // odd_cap 5, degree 4: clamp preserving odd parity -> (1,3)
        let k5 = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let h = HAssignment::new(vec![Side::OddSide; 5], vec![5; 5]).unwrap();
        let spec = normalize_h(&k5, &h);
        assert_eq!(spec.bounds[0], Some((1, 3)));
        // odd side on an isolated vertex is infeasible data, not an error
        let h = all_odd(1);
        let spec = normalize_h(&Graph::empty(1), &h);
        assert_eq!(spec.bounds[0], None);
    }

    #[test]
    fn h_factor_examples() {
        let f = solve_h_factor(&k2(), &all_odd(2)).unwrap().unwrap();
        assert_eq!(f.edges, vec![(0, 1)]);

        // odd odd-side count: no factor by handshake
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(solve_h_factor(&p3, &all_odd(3)).unwrap().is_none());

        let c4 = cycle(4);
        let h = HAssignment::unit(vec![Side::EvenSide; 4]);
        let f = solve_h_factor(&c4, &h).unwrap().unwrap();
        for v in 0..4 {
            assert!(h.admits(v, f.degrees[v]));
        }
    }

    #[test]
    fn criticality_examples() {
        // K2 all odd: each G^x has three {1}-vertices, odd count
        let rep = is_h_critical(&k2(), &all_odd(2)).unwrap();
        assert!(!rep.critical);
        assert_eq!(rep.failures, vec![0, 1]);

        // C3 all odd is critical
        let rep = is_h_critical(&cycle(3), &all_odd(3)).unwrap();
        assert!(rep.critical);

        // K_{1,3} all odd is not critical
        let rep = is_h_critical(&star(3), &all_odd(4)).unwrap();
        assert!(!rep.critical);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn counterexample_on_star() {
        // S' = {center} of K_{1,3}: no even components, so W sits in C_1
        let g = star(3);
        let h = counterexample_h(&g, VertexSet::singleton(0), true, &[1; 4]).unwrap();
        assert_eq!(h.odd_side_count(), 3); // |V| - |W| = 3, odd
        assert_eq!(h.sides.iter().filter(|&&s| s == Side::EvenSide).count(), 1);
        assert!(!is_h_critical(&g, &h).unwrap().critical);
    }

    #[test]
    fn counterexample_empty_s_rejected() {
        assert_eq!(
            counterexample_h(&k2(), VertexSet::EMPTY, true, &[1; 2]),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn enumerate_counts() {
        let even: Vec<_> = enumerate_h(2, 0, vec![1; 2]).unwrap().collect();
        assert_eq!(even.len(), 2);
        assert_eq!(even[0].odd_side_count(), 0);
        assert_eq!(even[1].odd_side_count(), 2);
        let odd: Vec<_> = enumerate_h(2, 1, vec![1; 2]).unwrap().collect();
        assert_eq!(
            odd.iter().map(|h| h.to_bitstring()).collect::<Vec<_>>(),
            vec!["10", "01"]
        );
        assert_eq!(enumerate_h(6, 0, vec![1; 6]).unwrap().count(), 32);
        assert!(enumerate_h(30, 0, vec![1; 30]).is_err());
    }
}
