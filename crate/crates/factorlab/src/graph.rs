//! Simple undirected labeled graphs, graph6 / edge-list interchange, and the
//! small set of structural primitives everything else is built on.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Subset of the vertices 0..n-1, stored as a bit mask. Only meaningful for
/// graphs with fewer than 64 vertices, which covers every graph the subset
/// scans ever touch (gadget graphs never go through VertexSet).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = 0u64;
        for v in it {
            debug_assert!(v < 64);
            m |= 1u64 << v;
        }
        VertexSet(m)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 63);
        VertexSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Ok(VertexSet::from_iter(v))
    }
}

/// Enumerates every subset mask of `0..n` with exactly `k` bits, in ascending
/// numeric order (Gosper's hack).
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur = if k == 0 {
        Some(0u64)
    } else if k <= n {
        Some((1u64 << k) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let m = cur?;
        if m >= limit && !(k == 0 && m == 0) {
            cur = None;
            return None;
        }
        // advance
        cur = if m == 0 {
            None
        } else {
            let c = m & m.wrapping_neg();
            let r = m + c;
            let next = (((r ^ m) >> 2) / c) | r;
            if next >= limit {
                None
            } else {
                Some(next)
            }
        };
        Some(VertexSet(m))
    })
}

/// All subsets of `0..n` in popcount-major, numeric-minor order.
/// `include_empty` controls whether the empty set leads the stream.
pub fn subsets_popcount_order(n: usize, include_empty: bool) -> impl Iterator<Item = VertexSet> {
    let start = if include_empty { 0 } else { 1 };
    (start..=n).flat_map(move |k| subsets_of_size(n, k))
}

/// Simple undirected graph on vertices 0..n-1. Immutable once built; every
/// operation below returns fresh values.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>, // sorted neighbor lists
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::EdgeList {
                line: 0,
                reason: format!("self-loop at vertex {u}"),
            });
        }
        if self.has_edge(u, v) {
            return Ok(()); // simple graph: ignore duplicates
        }
        let iu = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(iu, v);
        let iv = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(iv, u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected components of the subgraph induced on V minus `avoid`,
    /// as vertex lists in original labels (each sorted ascending; components
    /// ordered by smallest member).
    pub fn components_avoiding(&self, avoid: VertexSet) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] || avoid.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] && !avoid.contains(w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Component counts of a graph: total, odd-order, and isolated-vertex
/// components, plus the components themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStats {
    pub omega: usize,
    pub odd: usize,
    pub iso: usize,
    pub components: Vec<VertexSet>,
}

/// Exact component partition with the omega / odd / iso counts.
pub fn component_stats(g: &Graph) -> ComponentStats {
    assert!(g.order() <= 64, "component_stats needs vertex-set masks");
    let comps = g.components_avoiding(VertexSet::EMPTY);
    let mut odd = 0;
    let mut iso = 0;
    let mut components = Vec::with_capacity(comps.len());
    for c in &comps {
        if c.len() % 2 == 1 {
            odd += 1;
        }
        if c.len() == 1 {
            iso += 1;
        }
        components.push(VertexSet::from_iter(c.iter().copied()));
    }
    ComponentStats {
        omega: comps.len(),
        odd,
        iso,
        components,
    }
}

/// Number of components of G - S.
pub fn omega_minus(g: &Graph, s: VertexSet) -> usize {
    g.components_avoiding(s).len()
}

/// Induced subgraph on V(G) - S, relabeled 0..n-|S|-1 preserving order.
pub fn delete_vertices(g: &Graph, s: VertexSet) -> Graph {
    delete_vertices_with_map(g, s).0
}

/// As `delete_vertices`, additionally returning `map` where `map[new] = old`.
pub fn delete_vertices_with_map(g: &Graph, s: VertexSet) -> (Graph, Vec<usize>) {
    let survivors: Vec<usize> = (0..g.order()).filter(|&v| !s.contains(v)).collect();
    let mut new_of = vec![usize::MAX; g.order()];
    for (i, &v) in survivors.iter().enumerate() {
        new_of[v] = i;
    }
    let mut h = Graph::empty(survivors.len());
    for &v in &survivors {
        for &w in g.neighbors(v) {
            if v < w && !s.contains(w) {
                h.add_edge(new_of[v], new_of[w]).unwrap();
            }
        }
    }
    (h, survivors)
}

/// Number of edges joining X and Y; X and Y need not be disjoint, and an edge
/// inside the intersection counts twice, so e(T,T) = 2|E(<T>)|.
pub fn edge_cut_count(g: &Graph, x: VertexSet, y: VertexSet) -> usize {
    let mut count = 0;
    for u in 0..g.order() {
        for &v in g.neighbors(u) {
            if u < v {
                if x.contains(u) && y.contains(v) {
                    count += 1;
                }
                if x.contains(v) && y.contains(u) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// G^x: G plus a new pendant vertex of degree 1 attached to x. Returns the
/// new graph and the pendant's id (always the old order).
pub fn attach_pendant(g: &Graph, x: usize) -> Result<(Graph, usize)> {
    if x >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: x,
            n: g.order(),
        });
    }
    let n = g.order();
    let mut h = Graph::empty(n + 1);
    for (u, v) in g.edges() {
        h.add_edge(u, v).unwrap();
    }
    h.add_edge(x, n).unwrap();
    Ok((h, n))
}

// graph6, headerless, single-byte size field (n < 63). Edge bits run over
// columns (0,1),(0,2),(1,2),(0,3),... packed big-endian in 6-bit groups,
// each group stored as byte + 63.

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "empty record".into(),
        });
    }
    let b0 = bytes[0];
    if b0 == 126 {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "multi-byte size fields (n >= 63) not supported".into(),
        });
    }
    if !(63..=125).contains(&b0) {
        return Err(Error::Graph6 {
            offset: 0,
            reason: format!("size byte {b0} outside 63..=125"),
        });
    }
    let n = (b0 - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Graph6 {
            offset: bytes.len().min(1 + nbytes),
            reason: format!(
                "record length {} but n={} needs {} data bytes",
                bytes.len(),
                n,
                nbytes
            ),
        });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6 {
                    offset: 1 + bit / 6,
                    reason: format!("data byte {byte} outside 63..=126"),
                });
            }
            let val = byte - 63;
            if val >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    // trailing padding bits must be zero
    if nbits % 6 != 0 {
        let last = bytes[bytes.len() - 1];
        if !(63..=126).contains(&last) {
            return Err(Error::Graph6 {
                offset: bytes.len() - 1,
                reason: format!("data byte {last} outside 63..=126"),
            });
        }
        let pad = 6 - nbits % 6;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6 {
                offset: bytes.len() - 1,
                reason: "nonzero padding bits".into(),
            });
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n >= 63 {
        return Err(Error::UnsupportedSize(n));
    }
    let mut out = vec![63 + n as u8];
    let nbits = n * n.saturating_sub(1) / 2;
    let mut group = 0u8;
    let mut used = 0usize;
    let mut emitted = 0usize;
    for v in 1..n {
        for u in 0..v {
            group <<= 1;
            if g.has_edge(u, v) {
                group |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(group + 63);
                emitted += 6;
                group = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        group <<= 6 - used;
        out.push(group + 63);
        emitted += 6;
    }
    debug_assert!(emitted >= nbits);
    Ok(String::from_utf8(out).unwrap())
}

/// Edge-list text format: first line "n m", then m lines "u v".
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        reason: "missing header line".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::EdgeList {
            line: 1,
            reason: "header must be \"n m\"".into(),
        });
    }
    let n: usize = parts[0].parse().map_err(|_| Error::EdgeList {
        line: 1,
        reason: format!("bad vertex count {:?}", parts[0]),
    })?;
    let m: usize = parts[1].parse().map_err(|_| Error::EdgeList {
        line: 1,
        reason: format!("bad edge count {:?}", parts[1]),
    })?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (idx, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::EdgeList {
                line: idx + 1,
                reason: "edge line must be \"u v\"".into(),
            });
        }
        let u: usize = parts[0].parse().map_err(|_| Error::EdgeList {
            line: idx + 1,
            reason: format!("bad vertex {:?}", parts[0]),
        })?;
        let v: usize = parts[1].parse().map_err(|_| Error::EdgeList {
            line: idx + 1,
            reason: format!("bad vertex {:?}", parts[1]),
        })?;
        g.add_edge(u, v).map_err(|e| Error::EdgeList {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        count += 1;
    }
    if count != m {
        return Err(Error::EdgeList {
            line: count + 1,
            reason: format!("header declared {m} edges, found {count}"),
        });
    }
    Ok(g)
}
