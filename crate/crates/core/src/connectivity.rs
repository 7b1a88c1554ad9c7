//! Vertex connectivity through Menger's theorem.
//!
//! The number of internally vertex-disjoint `s`-`t` paths is computed as a unit
//! capacity max flow on the split graph (`v_in -> v_out` carries capacity one).

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

/// Maximum number of internally vertex-disjoint paths from `s` to `t` in the
/// digraph whose out-neighbourhoods are `out`. A direct arc `s -> t` counts as
/// one path.
pub fn disjoint_paths(out: &[VertexSet], s: usize, t: usize) -> usize {
    let n = out.len();
    assert!(s < n && t < n && s != t);
    let nodes = 2 * n;
    let big = n as i32 + 1;
    // Node 2v is v_in, 2v+1 is v_out.
    let mut cap = vec![vec![0i32; nodes]; nodes];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { big } else { 1 };
        for w in out[v].iter() {
            cap[2 * v + 1][2 * w] = 1;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; nodes];
    loop {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..nodes {
                if prev[b] == usize::MAX && cap[a][b] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut b = sink;
        while b != source {
            let a = prev[b];
            cap[a][b] -= 1;
            cap[b][a] += 1;
            b = a;
        }
        flow += 1;
    }
}

fn undirected_arcs(g: &Graph) -> Vec<VertexSet> {
    (0..g.n()).map(|v| g.neighbors(v)).collect()
}

/// Size of a minimum vertex cut, with `κ(K_n) = n - 1`, `κ(K_1) = 0` and
/// `κ = 0` for disconnected graphs.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let arcs = undirected_arcs(g);
    let mut best = n - 1;
    for s in 0..n {
        for t in (s + 1)..n {
            if !g.has_edge(s, t) {
                best = best.min(disjoint_paths(&arcs, s, t));
                if best == 0 {
                    return 0;
                }
            }
        }
    }
    best
}

/// Directed vertex connectivity: the least number of vertices whose removal
/// destroys strong connectivity (`n - 1` for complete digraphs).
pub fn directed_vertex_connectivity(out: &[VertexSet]) -> usize {
    let n = out.len();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in 0..n {
            if s != t && !out[s].contains(t) {
                best = best.min(disjoint_paths(out, s, t));
            }
        }
    }
    best
}

/// Whether `G - sep` has at least two components.
pub fn is_separator(g: &Graph, sep: VertexSet) -> bool {
    g.components_within(g.vertices() - sep).len() >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::classic;

    /// Smallest separator size found by trying every vertex subset.
    fn brute_connectivity(g: &Graph) -> usize {
        let n = g.n();
        let mut best = n.saturating_sub(1);
        for bits in 0u64..(1 << n) {
            let s = VertexSet::from_bits(bits);
            if s.len() < best && is_separator(g, s) {
                best = s.len();
            }
        }
        best
    }

    #[test]
    fn small_examples() {
        assert_eq!(vertex_connectivity(&classic::complete(5)), 4);
        assert_eq!(vertex_connectivity(&classic::cycle(6)), 2);
        assert_eq!(vertex_connectivity(&classic::complete(1)), 0);
        assert_eq!(vertex_connectivity(&Graph::new(3).unwrap()), 0);
        assert_eq!(vertex_connectivity(&classic::petersen()), 3);
    }

    #[test]
    fn agrees_with_brute_force_on_all_graphs_up_to_five() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for mask in 0u64..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(n, edges).unwrap();
                assert_eq!(vertex_connectivity(&g), brute_connectivity(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn directed_three_cycle() {
        let out = [0usize, 1, 2].map(|v| VertexSet::singleton((v + 1) % 3));
        assert_eq!(directed_vertex_connectivity(&out), 1);
    }
}
