//! Clique minors: validation, brute-force oracles, and the constructions that
//! build minors from Kempe colorings and unique colorings.

mod kempe_k6;
mod lemma2;
mod oracle;
mod rooted;
mod shallow;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::coloring::Transversal;
use crate::graph::{Edge, Graph, VertexSet};

pub use kempe_k6::{kempe_clique_minor_k6, kempe_clique_minor_k6_with};
pub use lemma2::{lemma2_or, Lemma2Outcome};
pub use oracle::{
    find_shallow_minor, hadwiger_number, hadwiger_number_with, shallow_number, shallow_number_with,
};
pub use rooted::{
    rooted_k4_condition, rooted_k4_minor, rooted_k4_minor_with, rooted_partition, RootedK4Instance,
};
pub use shallow::shallow_minor_rooted;

/// Size bounds for the exhaustive searches plus a cancellation budget.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub hadwiger_bound: usize,
    pub shallow_bound: usize,
    pub rooted_bound: usize,
    pub budget: Budget,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            hadwiger_bound: 10,
            shallow_bound: 12,
            rooted_bound: 16,
            budget: Budget::unlimited(),
        }
    }
}

/// Pairwise disjoint, connected, pairwise adjacent branch sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliqueMinor {
    branch_sets: Vec<VertexSet>,
}

impl CliqueMinor {
    pub fn new(branch_sets: Vec<VertexSet>) -> Self {
        CliqueMinor { branch_sets }
    }

    pub fn from_lists(lists: &[&[usize]]) -> Self {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    pub fn branch_sets(&self) -> &[VertexSet] {
        &self.branch_sets
    }

    pub fn len(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch_sets.is_empty()
    }

    pub fn is_shallow(&self) -> bool {
        self.branch_sets.iter().all(|s| s.len() <= 2)
    }

    /// One witnessing edge per pair of branch sets, `None` where no edge exists.
    pub fn adjacency_certificate(&self, g: &Graph) -> Vec<(usize, usize, Option<Edge>)> {
        let b = &self.branch_sets;
        let mut out = Vec::new();
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                let witness = b[i].iter().find_map(|u| {
                    (g.neighbors(u) & b[j]).first().map(|v| Edge::new(u, v))
                });
                out.push((i, j, witness));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("minor serialization cannot fail")
    }
}

/// Why a family of vertex sets is not the requested kind of clique minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorDefect {
    Empty(usize),
    OutOfRange(usize),
    Overlap(usize, usize),
    Disconnected(usize),
    NotAdjacent(usize, usize),
    TooLarge(usize),
    NotTraversed(usize),
}

impl fmt::Display for MinorDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorDefect::Empty(i) => write!(f, "branch set {i} is empty"),
            MinorDefect::OutOfRange(i) => write!(f, "branch set {i} has a vertex out of range"),
            MinorDefect::Overlap(i, j) => write!(f, "branch sets {i} and {j} overlap"),
            MinorDefect::Disconnected(i) => write!(f, "branch set {i} is not connected"),
            MinorDefect::NotAdjacent(i, j) => write!(f, "branch sets {i} and {j} are not adjacent"),
            MinorDefect::TooLarge(i) => write!(f, "branch set {i} has more than two vertices"),
            MinorDefect::NotTraversed(i) => {
                write!(f, "branch set {i} does not contain exactly one transversal vertex")
            }
        }
    }
}

/// Checks disjointness, connectivity and pairwise adjacency; optionally also
/// shallowness and that every branch set meets `t` exactly once.
pub fn validate_clique_minor(
    g: &Graph,
    k: &CliqueMinor,
    shallow_required: bool,
    t: Option<Transversal>,
) -> Result<(), MinorDefect> {
    let b = &k.branch_sets;
    let mut seen = VertexSet::EMPTY;
    for (i, &s) in b.iter().enumerate() {
        if s.is_empty() {
            return Err(MinorDefect::Empty(i));
        }
        if !s.is_subset(g.vertices()) {
            return Err(MinorDefect::OutOfRange(i));
        }
        if s.intersects(seen) {
            let j = b[..i].iter().position(|&o| o.intersects(s)).unwrap();
            return Err(MinorDefect::Overlap(j, i));
        }
        seen = seen | s;
        if !g.is_connected_set(s) {
            return Err(MinorDefect::Disconnected(i));
        }
        if shallow_required && s.len() > 2 {
            return Err(MinorDefect::TooLarge(i));
        }
        if let Some(t) = t {
            if (s & t.vertices()).len() != 1 {
                return Err(MinorDefect::NotTraversed(i));
            }
        }
    }
    for i in 0..b.len() {
        let nb = g.neighbors_of_set(b[i]);
        for (j, &bj) in b.iter().enumerate().skip(i + 1) {
            if !nb.intersects(bj) {
                return Err(MinorDefect::NotAdjacent(i, j));
            }
        }
    }
    Ok(())
}

pub fn is_clique_minor(g: &Graph, k: &CliqueMinor) -> bool {
    validate_clique_minor(g, k, false, None).is_ok()
}
