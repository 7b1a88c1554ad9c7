//! Dense bitmask graphs on at most 64 vertices.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported vertex count. Every vertex set is a single `u64`.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of some graph, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

macro_rules! set_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for VertexSet {
            type Output = VertexSet;
            #[inline]
            fn $f(self, rhs: VertexSet) -> VertexSet {
                VertexSet(self.0 $op rhs.0)
            }
        }
    };
}

set_op!(BitOr, bitor, |);
set_op!(BitAnd, bitand, &);
set_op!(BitXor, bitxor, ^);

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(invalid(format!("self-loop at vertex {a}")));
        }
        Ok(Self::new(a, b))
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn ends(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn vertices(self) -> VertexSet {
        VertexSet::singleton(self.u).with(self.v)
    }

    pub fn contains(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = Error;
    fn try_from([a, b]: [usize; 2]) -> Result<Self> {
        Edge::try_new(a, b)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.u, self.v)
    }
}

/// Simple undirected graph on vertices `0..n`, `n <= 64`.
///
/// Row `v` of the adjacency is the neighbourhood bitmask of `v`. Values are
/// immutable once built unless the caller owns them mutably.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (a, b) in edges {
            g.try_add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        let all = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(invalid(format!("vertex {v} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            return Err(invalid(format!(
                "vertex set {s:?} not contained in 0..{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Adds `ab`; adding an existing edge is a no-op.
    pub fn try_add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(invalid(format!("self-loop at vertex {a}")));
        }
        self.adj[a] |= 1u64 << b;
        self.adj[b] |= 1u64 << a;
        Ok(())
    }

    /// Panicking variant of [`Graph::try_add_edge`] for internal constructions.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.try_add_edge(a, b).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if a < self.n && b < self.n {
            self.adj[a] &= !(1u64 << b);
            self.adj[b] &= !(1u64 << a);
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Union of the neighbourhoods of `s` (may intersect `s`).
    pub fn neighbors_of_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc | self.neighbors(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            let higher = VertexSet(self.adj[u]) - VertexSet::full(u + 1);
            higher.iter().map(move |v| Edge { u, v })
        })
    }

    /// Whether some edge joins `a` and `b`.
    pub fn sets_adjacent(&self, a: VertexSet, b: VertexSet) -> bool {
        self.neighbors_of_set(a).intersects(b)
    }

    /// Returns the subgraph induced by `s` together with the map from new
    /// indices to old vertices (ascending).
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut h = Graph::new(map.len())?;
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    h.add_edge(i, j);
                }
            }
        }
        Ok((h, map))
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Vertices of `within` reachable from `start` inside `G[within]`.
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start) & within;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighbors_of_set(frontier) & within;
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within & self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach_within(v, rest);
            out.push(c);
            rest = rest - c;
        }
        out
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Whether `s` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_set(&self, s: VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => self.reach_within(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_set(self.vertices())
    }

    /// Bridges of `G[within]` in lexicographic order.
    pub fn bridges_within(&self, within: VertexSet) -> Vec<Edge> {
        let mut state = BridgeSearch {
            g: self,
            within,
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            timer: 0,
            out: Vec::new(),
        };
        for v in within.iter() {
            if state.disc[v] == usize::MAX {
                state.visit(v, usize::MAX);
            }
        }
        let mut out = state.out;
        out.sort();
        out
    }

    /// Edges whose removal increases the number of components.
    pub fn bridges(&self) -> Vec<Edge> {
        self.bridges_within(self.vertices())
    }

    /// Some three pairwise nonadjacent vertices, lexicographically first.
    pub fn find_antitriangle(&self) -> Option<[usize; 3]> {
        let all = self.vertices();
        for a in 0..self.n {
            let non_a = all - self.neighbors(a) - VertexSet::full(a + 1);
            for b in non_a.iter() {
                let non_ab = non_a - self.neighbors(b) - VertexSet::full(b + 1);
                if let Some(c) = non_ab.first() {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for a in 0..self.n {
            let hi = self.neighbors(a) - VertexSet::full(a + 1);
            for b in hi.iter() {
                let common = hi & (self.neighbors(b) - VertexSet::full(b + 1));
                if let Some(c) = common.first() {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s - self.neighbors(v)).without(v).is_empty())
    }

    pub fn is_anticlique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.neighbors(v).intersects(s))
    }

    /// Two-colouring of the vertices if the graph is bipartite: the returned set
    /// is one side, chosen to contain the smallest vertex of every component.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = VertexSet::EMPTY;
        for comp in self.components() {
            let mut layer = VertexSet::singleton(comp.first().unwrap());
            let mut seen = layer;
            let mut even = true;
            while !layer.is_empty() {
                if even {
                    side = side | layer;
                }
                let next = self.neighbors_of_set(layer) & comp;
                if next.intersects(layer) {
                    return None;
                }
                layer = next - seen;
                seen = seen | layer;
                even = !even;
            }
        }
        self.edges()
            .all(|e| side.contains(e.u()) != side.contains(e.v()))
            .then_some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Adds a vertex adjacent to every existing vertex. Returns its index.
    pub fn add_universal_vertex(&mut self) -> Result<usize> {
        if self.n == MAX_VERTICES {
            return Err(invalid("graph already has 64 vertices"));
        }
        let x = self.n;
        let all = VertexSet::full(x).bits();
        for row in &mut self.adj {
            *row |= 1u64 << x;
        }
        self.adj.push(all);
        self.n += 1;
        Ok(x)
    }
}

struct BridgeSearch<'a> {
    g: &'a Graph,
    within: VertexSet,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    out: Vec<Edge>,
}

impl BridgeSearch<'_> {
    // Recursion depth is bounded by 64.
    fn visit(&mut self, v: usize, parent: usize) {
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        self.timer += 1;
        for w in (self.g.neighbors(v) & self.within).iter() {
            if w == parent {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.visit(w, v);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] > self.disc[v] {
                    self.out.push(Edge::new(v, w));
                }
            } else {
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile {
            n: self.n,
            edges: self.edges().map(Into::into).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(d)?;
        Graph::from_file(file).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    fn from_file(file: GraphFile) -> Result<Self> {
        let mut g = Graph::new(file.n)?;
        for [a, b] in file.edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if g.has_edge(a, b) {
                return Err(invalid(format!("duplicate edge {a} {b}")));
            }
            g.try_add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Parses either the JSON object format `{"n": .., "edges": [[u, v], ..]}`
    /// or the plain edge list (`n m` header, then `m` lines `u v`).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Self::parse_edge_list(text)
        }
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected an integer, found {t:?}")))
        });
        let mut next = |what: &str| {
            tokens
                .next()
                .unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            edges.push([next("edge endpoint")?, next("edge endpoint")?]);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse(format!("more than {m} edges listed")));
        }
        Self::from_file(GraphFile { n, edges })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for e in self.edges() {
            s.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        s
    }
}
