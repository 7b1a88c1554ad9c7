//! Perfect matchings at desk scale, Kotzig bridges, and the descending
//! decomposition of a graph with a unique perfect matching.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, violation, Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// A set of pairwise disjoint edges, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Edge>", into = "Vec<Edge>")]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        let mut seen = VertexSet::EMPTY;
        for e in &edges {
            if e.vertices().intersects(seen) {
                return Err(invalid(format!("matching edges overlap at {e:?}")));
            }
            seen = seen | e.vertices();
        }
        Ok(Matching { edges })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::try_new(a, b))
            .collect::<Result<_>>()?;
        Self::new(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |a, e| a | e.vertices())
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.contains(v)).map(|e| e.other(v))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Whether every edge is in `g` and every vertex is covered.
    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        self.covered() == g.vertices() && self.edges.iter().all(|e| g.has_edge(e.u(), e.v()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matching serialization cannot fail")
    }
}

impl TryFrom<Vec<Edge>> for Matching {
    type Error = Error;
    fn try_from(edges: Vec<Edge>) -> Result<Self> {
        Matching::new(edges)
    }
}

impl From<Matching> for Vec<Edge> {
    fn from(m: Matching) -> Self {
        m.edges
    }
}

/// Perfect matching of `G[within]` avoiding `banned`, by backtracking on the
/// lowest uncovered vertex. Failed residual vertex sets are memoised.
fn perfect_matching_within(g: &Graph, within: VertexSet, banned: Option<Edge>) -> Option<Vec<Edge>> {
    fn go(
        g: &Graph,
        rest: VertexSet,
        banned: Option<Edge>,
        dead: &mut HashSet<u64>,
        out: &mut Vec<Edge>,
    ) -> bool {
        let Some(v) = rest.first() else {
            return true;
        };
        if dead.contains(&rest.bits()) {
            return false;
        }
        let rest_v = rest.without(v);
        for w in (g.neighbors(v) & rest_v).iter() {
            let e = Edge::new(v, w);
            if Some(e) == banned {
                continue;
            }
            out.push(e);
            if go(g, rest_v.without(w), banned, dead, out) {
                return true;
            }
            out.pop();
        }
        dead.insert(rest.bits());
        false
    }
    if within.len() % 2 == 1 {
        return None;
    }
    let mut out = Vec::with_capacity(within.len() / 2);
    go(g, within, banned, &mut HashSet::new(), &mut out).then_some(out)
}

/// Lexicographically first perfect matching, if any.
pub fn find_perfect_matching(g: &Graph) -> Option<Matching> {
    perfect_matching_within(g, g.vertices(), None).map(|e| Matching::new(e).unwrap())
}

/// A perfect matching of `G[within]` different from `m`, if one exists.
///
/// Any other perfect matching misses some edge of `m`, so it suffices to look
/// for a perfect matching avoiding each edge of `m` in turn.
fn other_perfect_matching_within(g: &Graph, within: VertexSet, m: &[Edge]) -> Option<Vec<Edge>> {
    m.iter()
        .find_map(|&e| perfect_matching_within(g, within, Some(e)))
}

fn ensure_perfect(g: &Graph, m: &Matching) -> Result<()> {
    if m.is_perfect_in(g) {
        Ok(())
    } else {
        Err(invalid("matching is not a perfect matching of the graph"))
    }
}

/// A perfect matching other than `m`, or `None` if `m` is the unique one.
pub fn second_perfect_matching(g: &Graph, m: &Matching) -> Result<Option<Matching>> {
    ensure_perfect(g, m)?;
    Ok(other_perfect_matching_within(g, g.vertices(), &m.edges).map(|e| Matching::new(e).unwrap()))
}

/// Whether `m` is the only perfect matching of `g`.
pub fn is_unique_perfect_matching(g: &Graph, m: &Matching) -> bool {
    matches!(second_perfect_matching(g, m), Ok(None))
}

/// Lexicographically smallest edge of `m` that is a bridge of `G[within]`.
fn matching_bridge_within(g: &Graph, within: VertexSet, m: &[Edge]) -> Option<Edge> {
    g.bridges_within(within)
        .into_iter()
        .find(|e| m.binary_search(e).is_ok())
}

/// An edge of the unique perfect matching `m` that is also a bridge of `g`.
///
/// Kotzig's theorem guarantees one exists; failing to find it is reported as
/// [`Error::TheoremViolation`].
pub fn kotzig_bridge(g: &Graph, m: &Matching) -> Result<Edge> {
    if g.n() == 0 {
        return Err(invalid("the empty graph has no matching edges"));
    }
    if second_perfect_matching(g, m)?.is_some() {
        return Err(invalid("perfect matching is not unique"));
    }
    matching_bridge_within(g, g.vertices(), &m.edges)
        .ok_or_else(|| violation(format!("unique perfect matching of {g:?} contains no bridge")))
}

/// One level of the decomposition of a graph with a unique perfect matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompStep {
    pub level: usize,
    /// Vertex set of the residual graph at this level.
    pub h_vertices: VertexSet,
    /// The matching bridge `xy`, with `x` on the small side.
    pub bridge: Edge,
    pub x: usize,
    pub y: usize,
    /// Vertices of the small side containing `x`.
    pub q: VertexSet,
    /// Matching edges inside `q`.
    pub r: Vec<Edge>,
    /// As many residual matching edges as `r` has, lexicographically first.
    pub s: Vec<Edge>,
    /// Endpoints of `s` plus `y`.
    pub t: VertexSet,
}

impl DecompStep {
    /// `q ∪ t`, the vertices removed at this level.
    pub fn removed(&self) -> VertexSet {
        self.q | self.t
    }
}

/// Decomposes `g` along Kotzig bridges of its unique perfect matching `m`.
pub fn kotzig_decompose(g: &Graph, m: &Matching) -> Result<Vec<DecompStep>> {
    ensure_perfect(g, m)?;
    decompose_within(g, g.vertices(), m.edges())
}

/// Component of `G[within] - e` containing `start`.
fn reach_avoiding(g: &Graph, start: usize, within: VertexSet, e: Edge) -> VertexSet {
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for b in (g.neighbors(a) & within).iter() {
            if !seen.contains(b) && Edge::new(a, b) != e {
                seen.insert(b);
                stack.push(b);
            }
        }
    }
    seen
}

pub(crate) fn decompose_within(g: &Graph, within: VertexSet, m: &[Edge]) -> Result<Vec<DecompStep>> {
    let mut h = within;
    let mut matching: Vec<Edge> = m.to_vec();
    matching.sort();
    let covered = matching.iter().fold(VertexSet::EMPTY, |a, e| a | e.vertices());
    if covered != within || matching.iter().any(|e| !g.has_edge(e.u(), e.v())) {
        return Err(invalid("matching is not perfect on the given vertex set"));
    }
    let mut steps = Vec::new();
    while !h.is_empty() {
        if other_perfect_matching_within(g, h, &matching).is_some() {
            return Err(if steps.is_empty() {
                invalid("perfect matching is not unique")
            } else {
                violation(format!("residual matching at level {} is not unique", steps.len()))
            });
        }
        let bridge = matching_bridge_within(g, h, &matching).ok_or_else(|| {
            violation(format!("unique perfect matching on {h:?} contains no bridge"))
        })?;
        let (u, v) = bridge.ends();
        let side_u = reach_avoiding(g, u, h, bridge);
        let side_v = reach_avoiding(g, v, h, bridge);
        let half = h.len() / 2;
        let (q, x, y) = match (side_u.len() <= half, side_v.len() <= half) {
            (true, true) if side_v.len() < side_u.len() => (side_v, v, u),
            (true, _) => (side_u, u, v),
            (false, true) => (side_v, v, u),
            (false, false) => {
                return Err(violation(format!("both sides of bridge {bridge:?} exceed half")))
            }
        };
        let r: Vec<Edge> = matching
            .iter()
            .copied()
            .filter(|e| e.vertices().is_subset(q))
            .collect();
        if q.len() != 2 * r.len() + 1 {
            return Err(violation("small side is not matched apart from its bridge end"));
        }
        let residual: Vec<Edge> = matching
            .iter()
            .copied()
            .filter(|e| *e != bridge && !e.vertices().intersects(q))
            .collect();
        if residual.len() < r.len() {
            return Err(violation("residual matching smaller than the small side"));
        }
        let s: Vec<Edge> = residual[..r.len()].to_vec();
        let t = s.iter().fold(VertexSet::singleton(y), |a, e| a | e.vertices());
        steps.push(DecompStep {
            level: steps.len(),
            h_vertices: h,
            bridge,
            x,
            y,
            q,
            r,
            s: s.clone(),
            t,
        });
        h = h - q - t;
        matching.retain(|e| e.vertices().is_subset(h));
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::classic;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(pairs).unwrap()
    }

    #[test]
    fn first_perfect_matchings() {
        assert_eq!(find_perfect_matching(&classic::cycle(4)), Some(m(&[(0, 1), (2, 3)])));
        assert_eq!(find_perfect_matching(&classic::cycle(5)), None);
        assert_eq!(find_perfect_matching(&classic::path(4)), Some(m(&[(0, 1), (2, 3)])));
        assert_eq!(find_perfect_matching(&Graph::new(0).unwrap()), Some(m(&[])));
    }

    #[test]
    fn second_matchings() {
        let c4 = classic::cycle(4);
        assert_eq!(
            second_perfect_matching(&c4, &m(&[(0, 1), (2, 3)])).unwrap(),
            Some(m(&[(1, 2), (0, 3)]))
        );
        let p4 = classic::path(4);
        assert_eq!(second_perfect_matching(&p4, &m(&[(0, 1), (2, 3)])).unwrap(), None);
        let c6 = classic::cycle(6);
        assert_eq!(
            second_perfect_matching(&c6, &m(&[(0, 1), (2, 3), (4, 5)])).unwrap(),
            Some(m(&[(1, 2), (3, 4), (0, 5)]))
        );
        assert!(second_perfect_matching(&p4, &m(&[(0, 1)])).is_err());
    }

    #[test]
    fn bridges_of_unique_matchings() {
        let k2 = classic::complete(2);
        assert_eq!(kotzig_bridge(&k2, &m(&[(0, 1)])).unwrap(), Edge::new(0, 1));
        let p4 = classic::path(4);
        assert_eq!(kotzig_bridge(&p4, &m(&[(0, 1), (2, 3)])).unwrap(), Edge::new(0, 1));
        let p6 = classic::path(6);
        assert_eq!(
            kotzig_bridge(&p6, &m(&[(0, 1), (2, 3), (4, 5)])).unwrap(),
            Edge::new(0, 1)
        );
        assert!(kotzig_bridge(&classic::cycle(4), &m(&[(0, 1), (2, 3)])).is_err());
    }

    #[test]
    fn decompose_p4() {
        let steps = kotzig_decompose(&classic::path(4), &m(&[(0, 1), (2, 3)])).unwrap();
        assert_eq!(steps.len(), 2);
        let s0 = &steps[0];
        assert_eq!((s0.bridge, s0.x, s0.y), (Edge::new(0, 1), 0, 1));
        assert_eq!(s0.q, VertexSet::singleton(0));
        assert_eq!(s0.t, VertexSet::singleton(1));
        assert!(s0.r.is_empty() && s0.s.is_empty());
        let s1 = &steps[1];
        assert_eq!(s1.h_vertices, [2, 3].into_iter().collect());
        assert_eq!((s1.bridge, s1.x, s1.y), (Edge::new(2, 3), 2, 3));
        assert_eq!(s1.q, VertexSet::singleton(2));
        assert_eq!(s1.t, VertexSet::singleton(3));
    }

    #[test]
    fn decompose_k2_and_p6() {
        let steps = kotzig_decompose(&classic::complete(2), &m(&[(0, 1)])).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!((steps[0].q.len(), steps[0].t.len()), (1, 1));

        let steps = kotzig_decompose(&classic::path(6), &m(&[(0, 1), (2, 3), (4, 5)])).unwrap();
        assert_eq!(steps[0].bridge, Edge::new(0, 1));
        assert_eq!(steps[0].q, VertexSet::singleton(0));
        assert_eq!(steps[0].t, VertexSet::singleton(1));
        assert_eq!(steps[1].bridge, Edge::new(2, 3));
        assert_eq!(steps[2].bridge, Edge::new(4, 5));
    }

    #[test]
    fn decompose_with_nonempty_r() {
        // Path 0-1-2-3-4-5 with a pendant edge at 2: unique matching
        // {01, 23, 45, 67}, bridge 01 first. Then H1 = {2..7}.
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 7)])
            .unwrap();
        let mm = m(&[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let steps = kotzig_decompose(&g, &mm).unwrap();
        let removed: Vec<VertexSet> = steps.iter().map(|s| s.removed()).collect();
        let union = removed.iter().fold(VertexSet::EMPTY, |a, &s| a | s);
        assert_eq!(union, g.vertices());
        for s in &steps {
            assert_eq!(s.r.len(), s.s.len());
            assert_eq!(s.q.len(), 2 * s.r.len() + 1);
            assert_eq!(s.t.len(), 2 * s.s.len() + 1);
        }
    }

    #[test]
    fn matching_json() {
        let mm = m(&[(2, 3), (1, 0)]);
        assert_eq!(mm.to_json(), "[[0,1],[2,3]]");
        assert_eq!(serde_json::from_str::<Matching>("[[0,1],[2,3]]").unwrap(), mm);
        assert!(serde_json::from_str::<Matching>("[[0,1],[1,2]]").is_err());
    }
}
