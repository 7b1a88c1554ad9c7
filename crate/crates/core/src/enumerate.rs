//! Exhaustive enumeration of small graphs, labeled or up to isomorphism.
//!
//! A graph on `n` vertices is encoded as a bitmask over the pairs `(a, b)`,
//! `a < b`, in lexicographic order, so bit 0 is the pair `(0, 1)`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::coloring::{for_each_coloring, kempe_unchecked, unique_optimal_coloring};
use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::{find_perfect_matching, is_unique_perfect_matching};

pub const MAX_LABELED: usize = 10;
pub const MAX_CANONICAL: usize = 8;

/// Predicates a streamed graph must satisfy. Unset flags are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Filters {
    pub connected: bool,
    pub antitriangle_free: bool,
    pub triangle_free: bool,
    pub unique_chi_coloring: bool,
    pub kempe_of_size: Option<usize>,
    pub unique_pm: bool,
    pub unique_pm_complement: bool,
}

impl Filters {
    /// Parses a comma-separated list such as `connected,antitriangle-free,kempe=4`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut f = Filters::default();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "connected" => f.connected = true,
                "antitriangle-free" => f.antitriangle_free = true,
                "triangle-free" => f.triangle_free = true,
                "unique-chi" => f.unique_chi_coloring = true,
                "unique-pm" => f.unique_pm = true,
                "unique-pm-complement" => f.unique_pm_complement = true,
                _ => match item.strip_prefix("kempe=") {
                    Some(k) => {
                        f.kempe_of_size =
                            Some(k.parse().map_err(|_| invalid(format!("bad filter value {item:?}")))?)
                    }
                    None => return Err(invalid(format!("unknown filter {item:?}"))),
                },
            }
        }
        Ok(f)
    }

    /// Whether every filter that survives taking induced subgraphs holds.
    fn hereditary_ok(&self, g: &Graph) -> bool {
        (!self.antitriangle_free || g.find_antitriangle().is_none())
            && (!self.triangle_free || g.find_triangle().is_none())
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        if !self.hereditary_ok(g) || (self.connected && !g.is_connected()) {
            return false;
        }
        if self.unique_pm && !has_unique_pm(g) {
            return false;
        }
        if self.unique_pm_complement && !has_unique_pm(&g.complement()) {
            return false;
        }
        if let Some(k) = self.kempe_of_size {
            if !has_kempe_coloring(g, k) {
                return false;
            }
        }
        !self.unique_chi_coloring || unique_optimal_coloring(g).is_some()
    }
}

fn has_unique_pm(g: &Graph) -> bool {
    find_perfect_matching(g).is_some_and(|m| is_unique_perfect_matching(g, &m))
}

fn has_kempe_coloring(g: &Graph, k: usize) -> bool {
    let mut found = false;
    for_each_coloring(g, k, k, &Budget::unlimited(), |c| {
        if kempe_unchecked(g, c) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .expect("unlimited budget");
    found
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub n: usize,
    #[serde(default)]
    pub filters: Filters,
    /// One graph per isomorphism class, in canonical labeling.
    #[serde(default)]
    pub dedup: bool,
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

pub fn graph_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(pair_count(n) <= 64, "mask encoding needs n <= 11");
    g.edges()
        .fold(0, |m, e| m | 1 << pair_index(n, e.u(), e.v()))
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n).expect("n <= 11");
    let mut bit = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(a, b);
            }
            bit += 1;
        }
    }
    g
}

/// Smallest mask of a graph isomorphic to `g`.
///
/// Vertices are placed at positions `n-1, n-2, ...`; once positions `p..n`
/// are filled, the pairs with smaller end at least `p` are exactly the top
/// bits of the mask, so partial placements compare exactly and only the
/// candidates minimizing the next block are explored.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.n();
    assert!(pair_count(n) <= 64, "canonical form needs n <= 11");
    if n <= 1 {
        return 0;
    }
    let mut s = Canon {
        g,
        n,
        placed: vec![0; n],
        best: u64::MAX,
    };
    s.go(n - 1, VertexSet::EMPTY, 0);
    s.best
}

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    placed: Vec<usize>,
    best: u64,
}

impl Canon<'_> {
    fn block(&self, p: usize, v: usize) -> u64 {
        let nb = self.g.neighbors(v);
        let mut m = 0u64;
        for b in (p + 1)..self.n {
            if nb.contains(self.placed[b]) {
                m |= 1 << pair_index(self.n, p, b);
            }
        }
        m
    }

    fn go(&mut self, p: usize, used: VertexSet, cur: u64) {
        let free = self.g.vertices() - used;
        let mut options: Vec<(u64, usize)> = free.iter().map(|v| (self.block(p, v), v)).collect();
        let low = options.iter().map(|o| o.0).min().unwrap();
        options.retain(|o| o.0 == low);
        let next = cur | low;
        let shift = if p + 1 < self.n { pair_index(self.n, p, p + 1) } else { 64 };
        if shift < 64 && self.best != u64::MAX && next >> shift > self.best >> shift {
            return;
        }
        if p == 0 {
            self.best = self.best.min(next);
            return;
        }
        for (_, v) in options {
            self.placed[p] = v;
            self.go(p - 1, used.with(v), next);
        }
    }
}

/// Canonical masks of all graphs on `n` vertices whose induced subgraphs pass
/// `keep`, sorted ascending.
pub fn canonical_masks(n: usize, keep: &dyn Fn(&Graph) -> bool) -> Result<Vec<u64>> {
    if n > MAX_CANONICAL {
        return Err(invalid(format!("canonical enumeration supports n <= {MAX_CANONICAL}, got {n}")));
    }
    let mut level: Vec<u64> = vec![0];
    for m in 1..=n {
        let mut next = HashSet::new();
        for &mask in &level {
            let h = graph_from_mask(m - 1, mask);
            for nb in 0u64..(1 << (m - 1)) {
                let mut g = Graph::new(m).unwrap();
                for e in h.edges() {
                    g.add_edge(e.u(), e.v());
                }
                for v in VertexSet::from_bits(nb).iter() {
                    g.add_edge(v, m - 1);
                }
                if keep(&g) {
                    next.insert(canonical_form(&g));
                }
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// All graphs on `spec.n` vertices passing the filters, in increasing mask
/// order. With `dedup`, one canonical representative per isomorphism class.
pub fn enumerate_graphs(spec: &EnumSpec) -> Result<Box<dyn Iterator<Item = Graph>>> {
    let n = spec.n;
    if n > MAX_LABELED {
        return Err(invalid(format!("enumeration supports n <= {MAX_LABELED}, got {n}")));
    }
    let filters = spec.filters.clone();
    if spec.dedup {
        let keep = {
            let f = filters.clone();
            move |g: &Graph| f.hereditary_ok(g)
        };
        let masks = canonical_masks(n, &keep)?;
        return Ok(Box::new(
            masks
                .into_iter()
                .map(move |m| graph_from_mask(n, m))
                .filter(move |g| filters.accepts(g)),
        ));
    }
    let total = 1u64 << pair_count(n);
    Ok(Box::new(
        (0..total)
            .map(move |m| graph_from_mask(n, m))
            .filter(move |g| filters.accepts(g)),
    ))
}
