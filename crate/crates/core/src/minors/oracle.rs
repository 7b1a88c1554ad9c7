//! Exhaustive oracles for the Hadwiger number `h(G)` and the shallow clique
//! minor number `s(G)`. These never look at colorings; they exist to check the
//! constructions independently.

use crate::budget::Budget;
use crate::coloring::Transversal;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{CliqueMinor, SearchConfig};

pub fn hadwiger_number(g: &Graph) -> Result<usize> {
    hadwiger_number_with(g, &SearchConfig::default())
}

/// Largest clique minor, by enumerating set partitions of each component.
///
/// In a connected graph, leftover vertices can always be absorbed into an
/// adjacent branch set, so some largest clique minor partitions the whole
/// component. That bounds the search by the Bell number of the component.
pub fn hadwiger_number_with(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    if g.n() > cfg.hadwiger_bound {
        return Err(Error::BoundExceeded {
            what: "hadwiger_number",
            n: g.n(),
            bound: cfg.hadwiger_bound,
        });
    }
    let mut best = 0;
    for comp in g.components() {
        let order = comp.to_vec();
        let mut search = PartitionSearch {
            g,
            order: &order,
            blocks: Vec::new(),
            best: best.max(1),
            budget: &cfg.budget,
        };
        search.go(0)?;
        best = best.max(search.best);
    }
    Ok(best)
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    order: &'a [usize],
    blocks: Vec<VertexSet>,
    best: usize,
    budget: &'a Budget,
}

impl PartitionSearch<'_> {
    fn go(&mut self, idx: usize) -> Result<()> {
        self.budget.tick()?;
        let remaining = self.order.len() - idx;
        if self.blocks.len() + remaining <= self.best {
            return Ok(());
        }
        if idx == self.order.len() {
            if self.is_minor() {
                self.best = self.blocks.len();
            }
            return Ok(());
        }
        let v = self.order[idx];
        self.blocks.push(VertexSet::singleton(v));
        self.go(idx + 1)?;
        self.blocks.pop();
        for i in 0..self.blocks.len() {
            self.blocks[i].insert(v);
            self.go(idx + 1)?;
            self.blocks[i].remove(v);
        }
        Ok(())
    }

    fn is_minor(&self) -> bool {
        let b = &self.blocks;
        b.iter().all(|&s| self.g.is_connected_set(s))
            && (0..b.len()).all(|i| {
                let nb = self.g.neighbors_of_set(b[i]);
                b[i + 1..].iter().all(|&o| nb.intersects(o))
            })
    }
}

pub fn shallow_number(g: &Graph) -> Result<usize> {
    shallow_number_with(g, &SearchConfig::default())
}

/// Largest clique minor whose branch sets are single vertices or edges.
pub fn shallow_number_with(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    if g.n() > cfg.shallow_bound {
        return Err(Error::BoundExceeded {
            what: "shallow_number",
            n: g.n(),
            bound: cfg.shallow_bound,
        });
    }
    let mut s = ShallowSearch::new(g, None, usize::MAX, &cfg.budget);
    s.go(0)?;
    Ok(s.best.len())
}

/// Exhaustive search for a shallow clique minor of exactly `size` branch sets,
/// each meeting `t` exactly once when `t` is given.
pub fn find_shallow_minor(
    g: &Graph,
    size: usize,
    t: Option<Transversal>,
    cfg: &SearchConfig,
) -> Result<Option<CliqueMinor>> {
    if g.n() > cfg.shallow_bound {
        return Err(Error::BoundExceeded {
            what: "find_shallow_minor",
            n: g.n(),
            bound: cfg.shallow_bound,
        });
    }
    let mut s = ShallowSearch::new(g, t.map(|t| t.vertices()), size, &cfg.budget);
    s.go(0)?;
    Ok((s.best.len() >= size).then(|| CliqueMinor::new(s.best[..size].to_vec())))
}

struct ShallowSearch<'a> {
    g: &'a Graph,
    roots: Option<VertexSet>,
    target: usize,
    sets: Vec<VertexSet>,
    used: VertexSet,
    best: Vec<VertexSet>,
    budget: &'a Budget,
}

impl<'a> ShallowSearch<'a> {
    fn new(g: &'a Graph, roots: Option<VertexSet>, target: usize, budget: &'a Budget) -> Self {
        ShallowSearch {
            g,
            roots,
            target,
            sets: Vec::new(),
            used: VertexSet::EMPTY,
            best: Vec::new(),
            budget,
        }
    }

    fn fits(&self, s: VertexSet) -> bool {
        if let Some(r) = self.roots {
            if (s & r).len() != 1 {
                return false;
            }
        }
        let nb = self.g.neighbors_of_set(s);
        self.sets.iter().all(|&o| nb.intersects(o))
    }

    fn try_set(&mut self, s: VertexSet, v: usize) -> Result<bool> {
        if !self.fits(s) {
            return Ok(false);
        }
        self.sets.push(s);
        self.used = self.used | s;
        let done = self.go(v + 1)?;
        self.used = self.used - s;
        self.sets.pop();
        Ok(done)
    }

    /// Returns true once the target size is reached.
    fn go(&mut self, v: usize) -> Result<bool> {
        self.budget.tick()?;
        if self.sets.len() > self.best.len() {
            self.best = self.sets.clone();
            if self.best.len() >= self.target {
                return Ok(true);
            }
        }
        let n = self.g.n();
        let free_ahead = (VertexSet::full(n) - VertexSet::full(v.min(n)) - self.used).len();
        let mut cap = self.sets.len() + free_ahead;
        if let Some(r) = self.roots {
            let roots_left = (r - VertexSet::full(v.min(n)) - self.used).len();
            cap = cap.min(self.sets.len() + roots_left);
        }
        if v >= n || cap <= self.best.len() {
            return Ok(false);
        }
        if self.used.contains(v) {
            return self.go(v + 1);
        }
        if self.try_set(VertexSet::singleton(v), v)? {
            return Ok(true);
        }
        let later = self.g.neighbors(v) - VertexSet::full(v + 1) - self.used;
        for w in later.iter() {
            if self.try_set(VertexSet::singleton(v).with(w), v)? {
                return Ok(true);
            }
        }
        self.go(v + 1)
    }
}
