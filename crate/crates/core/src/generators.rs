//! Graph families: apex augmentation, the 3 x k minimal Kempe grid,
//! tournaments and their bipartite double covers, and random graphs with a
//! certified unique perfect matching.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{kempe_unchecked, is_coloring, Coloring};
use crate::connectivity::directed_vertex_connectivity;
use crate::error::{invalid, violation, Result};
use crate::graph::{Edge, Graph, VertexSet, MAX_VERTICES};
use crate::matching::{second_perfect_matching, Matching};

/// Small named graphs used throughout the tests and the CLI.
pub mod classic {
    use crate::graph::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::complete(n).expect("n too large")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("n too large")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("n too large")
    }

    /// Outer cycle `0..5`, spokes `i - i+5`, inner pentagram `i+5 - (i+2)%5+5`.
    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Triangular prism as the complement of `C6`: triangles `{0,2,4}`,
    /// `{1,3,5}` and rungs `03`, `14`, `25`.
    pub fn prism() -> Graph {
        cycle(6).complement()
    }

    /// Wheel with hub 0 and rim `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        let mut g = Graph::from_edges(rim + 1, (1..=rim).map(|v| (v, v % rim + 1))).unwrap();
        for v in 1..=rim {
            g.add_edge(0, v);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }
}

/// Adds `count` universal vertices, each forming its own color class.
///
/// A Kempe coloring of size `k` becomes a Kempe coloring of size `k + count`.
pub fn apex_augment(g: &Graph, c: &Coloring, count: usize) -> Result<(Graph, Coloring)> {
    if !is_coloring(g, c) {
        return Err(invalid("not a coloring of the graph"));
    }
    if g.n() + count > MAX_VERTICES {
        return Err(invalid("augmented graph would exceed 64 vertices"));
    }
    let was_kempe = kempe_unchecked(g, c);
    let mut h = g.clone();
    let mut classes = c.classes().to_vec();
    for _ in 0..count {
        let x = h.add_universal_vertex()?;
        classes.push(VertexSet::singleton(x));
    }
    let c_plus = Coloring::new(classes)?;
    if was_kempe && !kempe_unchecked(&h, &c_plus) {
        return Err(violation("apex augmentation broke the Kempe property"));
    }
    Ok((h, c_plus))
}

/// Vertex `(i, j)`, `i in 1..=3`, `j in 1..=k`, of the grid family.
pub fn grid_vertex(i: usize, j: usize) -> usize {
    3 * (j - 1) + (i - 1)
}

/// The graph on `{1,2,3} x {1..k}` where distinct `(i,j)`, `(i',j')` are
/// adjacent iff `i != i'`, `j != j'` and `i = 2`, `i' = 2`, or the vertex with
/// the larger row index lies in the earlier column. Columns `D_j` form a
/// minimal Kempe coloring of size `k`; the chromatic number is 3.
pub fn grid3k(k: usize) -> Result<(Graph, Coloring)> {
    if k < 3 {
        return Err(invalid(format!("grid3k needs k >= 3, got {k}")));
    }
    if 3 * k > MAX_VERTICES {
        return Err(invalid(format!("grid3k({k}) exceeds 64 vertices")));
    }
    let mut g = Graph::new(3 * k)?;
    let cells: Vec<(usize, usize)> = (1..=k).flat_map(|j| (1..=3).map(move |i| (i, j))).collect();
    for (a, &(i, j)) in cells.iter().enumerate() {
        for &(i2, j2) in &cells[a + 1..] {
            let rule = |i: usize, j: usize, i2: usize, j2: usize| {
                i != i2 && j != j2 && (i == 2 || i2 == 2 || (i > i2 && j < j2))
            };
            if rule(i, j, i2, j2) || rule(i2, j2, i, j) {
                g.add_edge(grid_vertex(i, j), grid_vertex(i2, j2));
            }
        }
    }
    let columns = (1..=k)
        .map(|j| (1..=3).map(|i| grid_vertex(i, j)).collect())
        .collect();
    Ok((g, Coloring::new(columns)?))
}

/// A tournament: exactly one arc between every two distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    out: Vec<VertexSet>,
}

impl Tournament {
    /// `out[v]` is the out-neighbourhood of `v`.
    pub fn new(out: Vec<VertexSet>) -> Result<Self> {
        let n = out.len();
        if n > MAX_VERTICES {
            return Err(invalid("tournament too large"));
        }
        for u in 0..n {
            if !out[u].is_subset(VertexSet::full(n)) || out[u].contains(u) {
                return Err(invalid(format!("bad out-neighbourhood at {u}")));
            }
            for v in (u + 1)..n {
                if out[u].contains(v) == out[v].contains(u) {
                    return Err(invalid(format!("pair {u},{v} needs exactly one arc")));
                }
            }
        }
        Ok(Tournament { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        self.out[u]
    }

    /// Directed vertex connectivity, computed with Menger's theorem.
    pub fn connectivity(&self) -> usize {
        directed_vertex_connectivity(&self.out)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut rev = vec![VertexSet::EMPTY; n];
        for u in 0..n {
            for v in self.out[u].iter() {
                rev[v].insert(u);
            }
        }
        let reach = |adj: &[VertexSet]| {
            let mut seen = VertexSet::singleton(0);
            let mut stack = vec![0];
            while let Some(u) = stack.pop() {
                for v in (adj[u] - seen).iter() {
                    seen.insert(v);
                    stack.push(v);
                }
            }
            seen
        };
        reach(&self.out) == VertexSet::full(n) && reach(&rev) == VertexSet::full(n)
    }
}

/// Circulant tournament on `2k+1` vertices: `u -> v` iff `(v - u) mod (2k+1)`
/// lies in `1..=k`. Its strong connectivity is checked, and for up to 31
/// vertices so is its `k`-connectivity.
pub fn rotational_tournament(k: usize) -> Result<Tournament> {
    if k == 0 {
        return Err(invalid("rotational tournament needs k >= 1"));
    }
    let n = 2 * k + 1;
    if n > MAX_VERTICES {
        return Err(invalid("rotational tournament too large"));
    }
    let out = (0..n)
        .map(|u| (1..=k).map(|d| (u + d) % n).collect())
        .collect();
    let t = Tournament::new(out)?;
    if !t.is_strongly_connected() {
        return Err(violation("rotational tournament is not strongly connected"));
    }
    if n <= 31 && t.connectivity() < k {
        return Err(violation(format!("rotational tournament is not {k}-connected")));
    }
    Ok(t)
}

/// Bipartite double cover: `x+ = 2x`, `x- = 2x+1`, with `x+ ~ y-` iff `x = y`
/// or `x -> y`. Returns the graph and the matching `{x+ x-}`.
pub fn tournament_double_cover(d: &Tournament) -> Result<(Graph, Matching)> {
    let n = d.n();
    if 2 * n > MAX_VERTICES {
        return Err(invalid("double cover would exceed 64 vertices"));
    }
    let mut g = Graph::new(2 * n)?;
    for x in 0..n {
        g.add_edge(2 * x, 2 * x + 1);
        for y in d.out_neighbors(x).iter() {
            g.add_edge(2 * x, 2 * y + 1);
        }
    }
    let m = Matching::new((0..n).map(|x| Edge::new(2 * x, 2 * x + 1)).collect())?;
    if !g.is_bipartite() {
        return Err(violation("double cover is not bipartite"));
    }
    for x in 0..n {
        for y in (x + 1)..n {
            let between = [(2 * x, 2 * y), (2 * x, 2 * y + 1), (2 * x + 1, 2 * y), (2 * x + 1, 2 * y + 1)]
                .iter()
                .filter(|&&(a, b)| g.has_edge(a, b))
                .count();
            if between != 1 {
                return Err(violation(format!("pairs {x} and {y} joined by {between} edges")));
            }
        }
    }
    Ok((g, m))
}

/// Random graph on `n` vertices with a unique perfect matching.
///
/// Matched pairs `(a, b)` are attached one at a time: `a` is joined only to
/// `b`, while `b` is joined to each earlier vertex with probability `density`.
/// The newest `a` is always a pendant vertex, so the matching is forced; it is
/// certified anyway. Vertex labels are shuffled with the same seed.
pub fn unique_pm_graph(n: usize, density: f64, seed: u64) -> Result<(Graph, Matching)> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("unique_pm_graph needs an even n >= 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut g = Graph::new(n)?;
    let mut pairs = Vec::with_capacity(n / 2);
    for p in 0..n / 2 {
        let (a, b) = (label[2 * p], label[2 * p + 1]);
        g.add_edge(a, b);
        for &w in &label[..2 * p] {
            if rng.gen_bool(density) {
                g.add_edge(b, w);
            }
        }
        pairs.push(Edge::new(a, b));
    }
    let m = Matching::new(pairs)?;
    if second_perfect_matching(&g, &m)?.is_some() {
        return Err(violation("generated perfect matching is not unique"));
    }
    Ok((g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{chromatic_number, is_kempe, is_minimal_kempe};
    use crate::connectivity::vertex_connectivity;

    #[test]
    fn apex_examples() {
        let k1 = classic::complete(1);
        let c = Coloring::from_lists(&[&[0]]).unwrap();
        let (g, c2) = apex_augment(&k1, &c, 2).unwrap();
        assert_eq!(g, classic::complete(3));
        assert_eq!(c2, Coloring::from_lists(&[&[0], &[1], &[2]]).unwrap());

        let c4 = classic::cycle(4);
        let c = Coloring::from_lists(&[&[0, 2], &[1, 3]]).unwrap();
        let (w, c3) = apex_augment(&c4, &c, 1).unwrap();
        assert_eq!(w.edge_count(), 8);
        assert_eq!(c3.len(), 3);
        assert!(is_kempe(&w, &c3).unwrap());

        let (g, c) = grid3k(3).unwrap();
        let (g2, c2) = apex_augment(&g, &c, 2).unwrap();
        assert_eq!(c2.len(), 5);
        assert!(is_kempe(&g2, &c2).unwrap());
    }

    #[test]
    fn grid_k3() {
        let (g, c) = grid3k(3).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 15);
        assert!(is_minimal_kempe(&g, &c));
        assert_eq!(chromatic_number(&g).0, 3);
        let tri = [grid_vertex(3, 1), grid_vertex(1, 2), grid_vertex(2, 3)];
        assert!(g.is_clique(tri.into_iter().collect()));
        assert!(grid3k(2).is_err());
    }

    #[test]
    fn grid_column_pairs_are_six_paths() {
        let (g, c) = grid3k(5).unwrap();
        let d = c.classes();
        for a in 0..d.len() {
            for b in (a + 1)..d.len() {
                let (h, _) = g.induced_subgraph(d[a] | d[b]).unwrap();
                let mut degrees: Vec<usize> = (0..6).map(|v| h.degree(v)).collect();
                degrees.sort();
                assert_eq!(degrees, vec![1, 1, 2, 2, 2, 2]);
                assert!(h.is_connected());
            }
        }
    }

    #[test]
    fn rotational_tournaments() {
        let t1 = rotational_tournament(1).unwrap();
        assert!(t1.has_arc(0, 1) && t1.has_arc(1, 2) && t1.has_arc(2, 0));
        assert_eq!(rotational_tournament(2).unwrap().connectivity(), 2);
        assert_eq!(rotational_tournament(3).unwrap().connectivity(), 3);
        assert!(rotational_tournament(0).is_err());
        assert!(Tournament::new(vec![VertexSet::EMPTY, VertexSet::EMPTY]).is_err());
    }

    #[test]
    fn double_cover_of_three_cycle_is_c6() {
        let (g, m) = tournament_double_cover(&rotational_tournament(1).unwrap()).unwrap();
        assert_eq!(g.n(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
        assert_eq!(m, Matching::from_pairs(&[(0, 1), (2, 3), (4, 5)]).unwrap());
    }

    #[test]
    fn double_cover_k2() {
        let (g, m) = tournament_double_cover(&rotational_tournament(2).unwrap()).unwrap();
        assert_eq!(g.n(), 10);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(vertex_connectivity(&g) >= 3);
        let gc = g.complement();
        let c = Coloring::new(m.edges().iter().map(|e| e.vertices()).collect()).unwrap();
        assert!(is_kempe(&gc, &c).unwrap());
    }

    #[test]
    fn unique_pm_examples() {
        let (g, m) = unique_pm_graph(2, 0.5, 1).unwrap();
        assert_eq!(g, classic::complete(2));
        assert_eq!(m.len(), 1);
        let (g, _) = unique_pm_graph(4, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 2);
        let (g, m) = unique_pm_graph(10, 0.4, 42).unwrap();
        assert!(m.is_perfect_in(&g));
        assert_eq!(second_perfect_matching(&g, &m).unwrap(), None);
        assert_eq!(unique_pm_graph(10, 0.4, 42).unwrap().0, g);
        assert!(unique_pm_graph(5, 0.4, 0).is_err());
    }
}
