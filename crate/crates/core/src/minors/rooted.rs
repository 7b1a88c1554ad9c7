//! Rooted clique minors: the path-based linkage condition for four roots and
//! an exhaustive search for minors whose branch sets separate given roots.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{CliqueMinor, SearchConfig};

/// A host graph with four distinct prescribed roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedK4Instance {
    pub roots: [usize; 4],
}

impl RootedK4Instance {
    pub fn new(g: &Graph, roots: [usize; 4]) -> Result<Self> {
        for (i, &r) in roots.iter().enumerate() {
            if r >= g.n() {
                return Err(invalid(format!("root {r} out of range")));
            }
            if roots[..i].contains(&r) {
                return Err(invalid(format!("root {r} repeated")));
            }
        }
        Ok(RootedK4Instance { roots })
    }

    pub fn root_set(&self) -> VertexSet {
        self.roots.iter().copied().collect()
    }
}

/// Whether for every two roots `a != b` some `a`-`b` path `P` leaves the other
/// two roots in one component of `G - V(P)`.
///
/// Only induced paths avoiding the other two roots are tried: any working path
/// contains an induced `a`-`b` path on a subset of its vertices, which works
/// too.
pub fn rooted_k4_condition(g: &Graph, inst: &RootedK4Instance) -> bool {
    let r = inst.roots;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).map(|k| r[k]).collect();
            if !has_separating_path(g, r[i], r[j], others[0], others[1]) {
                return false;
            }
        }
    }
    true
}

fn has_separating_path(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> bool {
    fn extend(g: &Graph, path: VertexSet, last: usize, b: usize, forbidden: VertexSet, c: usize, d: usize) -> bool {
        if last == b {
            let rest = g.vertices() - path;
            return g.reach_within(c, rest).contains(d);
        }
        // The next vertex may only see `last` among the path vertices.
        let inner = path.without(last);
        for w in (g.neighbors(last) - path - forbidden).iter() {
            if g.neighbors(w).intersects(inner) {
                continue;
            }
            if extend(g, path.with(w), w, b, forbidden, c, d) {
                return true;
            }
        }
        false
    }
    let forbidden = VertexSet::singleton(c).with(d);
    extend(g, VertexSet::singleton(a), a, b, forbidden, c, d)
}

pub fn rooted_k4_minor(g: &Graph, inst: &RootedK4Instance) -> Result<Option<CliqueMinor>> {
    rooted_k4_minor_with(g, inst, &SearchConfig::default())
}

/// Clique minor of size four with root `i` in branch set `i`, if one exists.
pub fn rooted_k4_minor_with(
    g: &Graph,
    inst: &RootedK4Instance,
    cfg: &SearchConfig,
) -> Result<Option<CliqueMinor>> {
    if g.n() > cfg.rooted_bound {
        return Err(Error::BoundExceeded {
            what: "rooted_k4_minor",
            n: g.n(),
            bound: cfg.rooted_bound,
        });
    }
    Ok(rooted_partition(g, &inst.roots, &cfg.budget)?.map(CliqueMinor::new))
}

/// Clique minor with `roots[i]` in branch set `i` and no other root in it.
///
/// If all roots share a component `C`, vertices of `C` outside a rooted
/// minor can be absorbed into adjacent branch sets, so it suffices to search
/// partitions of `C` into connected sets around the roots. The search picks the
/// lowest unassigned vertex that touches a branch set it may still join and
/// branches on joining one of those touching sets or on never joining any of
/// them. Each partition is reached exactly once.
pub fn rooted_partition(g: &Graph, roots: &[usize], budget: &Budget) -> Result<Option<Vec<VertexSet>>> {
    let k = roots.len();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > 64 {
        return Err(invalid("too many roots"));
    }
    let root_set: VertexSet = roots.iter().copied().collect();
    if root_set.len() != k || !root_set.is_subset(g.vertices()) {
        return Err(invalid("roots must be distinct vertices of the graph"));
    }
    let comp = g.reach_within(roots[0], g.vertices());
    if !root_set.is_subset(comp) {
        return Ok(None);
    }
    let all_blocks = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut allowed = vec![0u64; g.n()];
    for v in (comp - root_set).iter() {
        allowed[v] = all_blocks;
    }
    let mut s = RootedSearch {
        g,
        blocks: roots.iter().map(|&r| VertexSet::singleton(r)).collect(),
        unassigned: comp - root_set,
        allowed,
        budget,
    };
    Ok(s.go()?.then_some(s.blocks))
}

struct RootedSearch<'a> {
    g: &'a Graph,
    blocks: Vec<VertexSet>,
    unassigned: VertexSet,
    allowed: Vec<u64>,
    budget: &'a Budget,
}

impl RootedSearch<'_> {
    fn touching(&self, u: usize) -> u64 {
        let nb = self.g.neighbors(u);
        let mut mask = 0u64;
        for (i, &b) in self.blocks.iter().enumerate() {
            if nb.intersects(b) {
                mask |= 1 << i;
            }
        }
        mask & self.allowed[u]
    }

    fn hopeless(&self) -> bool {
        let k = self.blocks.len();
        let mut can_grow = 0u64;
        for u in self.unassigned.iter() {
            can_grow |= self.allowed[u];
        }
        for i in 0..k {
            let nb_i = self.g.neighbors_of_set(self.blocks[i]);
            for j in (i + 1)..k {
                if nb_i.intersects(self.blocks[j]) {
                    continue;
                }
                let grow_i = can_grow >> i & 1 == 1;
                let grow_j = can_grow >> j & 1 == 1;
                if !grow_i && !grow_j {
                    return true;
                }
                // A finished block can only be reached by new vertices of the other.
                if !grow_i && !self.can_reach(nb_i, j) {
                    return true;
                }
                if !grow_j && !self.can_reach(self.g.neighbors_of_set(self.blocks[j]), i) {
                    return true;
                }
            }
        }
        false
    }

    fn can_reach(&self, target_nb: VertexSet, block: usize) -> bool {
        (self.unassigned & target_nb)
            .iter()
            .any(|u| self.allowed[u] >> block & 1 == 1)
    }

    fn is_complete(&self) -> bool {
        let b = &self.blocks;
        (0..b.len()).all(|i| {
            let nb = self.g.neighbors_of_set(b[i]);
            b[i + 1..].iter().all(|&o| nb.intersects(o))
        })
    }

    fn go(&mut self) -> Result<bool> {
        self.budget.tick()?;
        if self.unassigned.is_empty() {
            return Ok(self.is_complete());
        }
        if self.hopeless() {
            return Ok(false);
        }
        let Some((u, cand)) = self
            .unassigned
            .iter()
            .map(|u| (u, self.touching(u)))
            .find(|&(_, c)| c != 0)
        else {
            return Ok(false);
        };
        self.unassigned.remove(u);
        for i in 0..self.blocks.len() {
            if cand >> i & 1 == 1 {
                self.blocks[i].insert(u);
                if self.go()? {
                    return Ok(true);
                }
                self.blocks[i].remove(u);
            }
        }
        self.unassigned.insert(u);
        let saved = self.allowed[u];
        if saved & !cand != 0 {
            self.allowed[u] = saved & !cand;
            let found = self.go()?;
            self.allowed[u] = saved;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
