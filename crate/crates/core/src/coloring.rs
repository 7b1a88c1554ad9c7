//! Colorings as partitions into anticliques, exact chromatic number, Kempe
//! colorings and the Kempe-chain color exchange.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

/// A partition of the vertex set into classes.
///
/// Classes are kept in canonical order (by smallest member) so that two
/// colorings with the same classes compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexSet>", into = "Vec<VertexSet>")]
pub struct Coloring {
    classes: Vec<VertexSet>,
}

impl Coloring {
    /// Builds a coloring from pairwise disjoint nonempty classes.
    pub fn new(mut classes: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &c in &classes {
            if c.is_empty() {
                return Err(invalid("empty color class"));
            }
            if c.intersects(seen) {
                return Err(invalid(format!("color classes overlap in {:?}", c & seen)));
            }
            seen = seen | c;
        }
        classes.sort_by_key(|c| c.first());
        Ok(Coloring { classes })
    }

    pub fn from_lists(lists: &[&[usize]]) -> Result<Self> {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    /// Coloring from a color index per vertex.
    pub fn from_labels(labels: &[usize]) -> Self {
        let k = labels.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut classes = vec![VertexSet::EMPTY; k];
        for (v, &c) in labels.iter().enumerate() {
            classes[c].insert(v);
        }
        classes.retain(|c| !c.is_empty());
        Self::new(classes).expect("labels give disjoint classes")
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.classes.iter().fold(VertexSet::EMPTY, |a, &c| a | c)
    }

    /// Index of the class containing `v`.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    /// Number of transversals (product of the class sizes).
    pub fn transversal_count(&self) -> u128 {
        self.classes.iter().map(|c| c.len() as u128).product()
    }

    /// The transversal with the given mixed-radix index; class 0 is the least
    /// significant digit.
    pub fn transversal_at(&self, mut index: u128) -> Option<Transversal> {
        if index >= self.transversal_count() {
            return None;
        }
        let mut t = VertexSet::EMPTY;
        for &c in &self.classes {
            let size = c.len() as u128;
            let pick = (index % size) as usize;
            index /= size;
            t.insert(c.iter().nth(pick).unwrap());
        }
        Some(Transversal(t))
    }

    pub fn transversals(&self) -> impl Iterator<Item = Transversal> + '_ {
        (0..self.transversal_count()).map(|i| self.transversal_at(i).unwrap())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serialization cannot fail")
    }
}

impl TryFrom<Vec<VertexSet>> for Coloring {
    type Error = Error;
    fn try_from(classes: Vec<VertexSet>) -> Result<Self> {
        Coloring::new(classes)
    }
}

impl From<Coloring> for Vec<VertexSet> {
    fn from(c: Coloring) -> Self {
        c.classes
    }
}

/// A set meeting every member of a family in exactly one element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transversal(pub VertexSet);

impl Transversal {
    pub fn vertices(self) -> VertexSet {
        self.0
    }

    pub fn traverses(self, family: &[VertexSet]) -> bool {
        family.iter().all(|&d| (d & self.0).len() == 1)
            && self.0.is_subset(family.iter().fold(VertexSet::EMPTY, |a, &d| a | d))
    }
}

/// Whether `c` partitions `V(g)` into anticliques.
pub fn is_coloring(g: &Graph, c: &Coloring) -> bool {
    c.support() == g.vertices()
        && c.classes.iter().map(|s| s.len()).sum::<usize>() == g.n()
        && c.classes.iter().all(|&s| g.is_anticlique(s))
}

fn ensure_coloring(g: &Graph, c: &Coloring) -> Result<()> {
    if is_coloring(g, c) {
        Ok(())
    } else {
        Err(invalid("not a coloring of the graph"))
    }
}

/// Exact chromatic number with a witness coloring.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    let n = g.n();
    if n == 0 {
        return (0, Coloring { classes: vec![] });
    }
    let lower = greedy_clique(g).len().max(1);
    let (upper, mut witness) = dsatur_greedy(g);
    let mut k = upper;
    // Descend from the greedy bound; each success tightens the bound.
    while k > lower {
        match k_color(g, k - 1) {
            Some(labels) => {
                witness = Coloring::from_labels(&labels);
                k = witness.len();
            }
            None => break,
        }
    }
    (k, witness)
}

fn greedy_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    for start in 0..g.n() {
        let mut clique = VertexSet::singleton(start);
        let mut cand = g.neighbors(start);
        while !cand.is_empty() {
            let v = cand
                .iter()
                .max_by_key(|&v| ((g.neighbors(v) & cand).len(), std::cmp::Reverse(v)))
                .unwrap();
            clique.insert(v);
            cand = cand & g.neighbors(v);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn dsatur_greedy(g: &Graph) -> (usize, Coloring) {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let v = pick_saturated(g, &color).unwrap();
        let used: Vec<usize> = g.neighbors(v).iter().map(|w| color[w]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let c = Coloring::from_labels(&color);
    (c.len(), c)
}

/// Uncolored vertex with the most distinct neighbour colors, then highest degree.
fn pick_saturated(g: &Graph, color: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|&v| color[v] == usize::MAX)
        .max_by_key(|&v| {
            let mut seen = 0u64;
            for w in g.neighbors(v).iter() {
                if color[w] != usize::MAX {
                    seen |= 1 << color[w];
                }
            }
            (seen.count_ones(), g.degree(v), std::cmp::Reverse(v))
        })
}

/// Backtracking k-coloring with DSATUR branching and new-color symmetry breaking.
fn k_color(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, color: &mut Vec<usize>, used: usize) -> bool {
        let Some(v) = pick_saturated(g, color) else {
            return true;
        };
        let mut forbidden = 0u64;
        for w in g.neighbors(v).iter() {
            if color[w] != usize::MAX {
                forbidden |= 1 << color[w];
            }
        }
        for c in 0..(used + 1).min(k) {
            if forbidden >> c & 1 == 0 {
                color[v] = c;
                if go(g, k, color, used.max(c + 1)) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    go(g, k, &mut color, 0).then_some(color)
}

/// Calls `f` on every coloring of `g` with between `min_k` and `max_k` classes,
/// each partition exactly once, in restricted-growth order.
pub fn for_each_coloring<F>(
    g: &Graph,
    min_k: usize,
    max_k: usize,
    budget: &Budget,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    struct Walk<'a, F> {
        g: &'a Graph,
        min_k: usize,
        max_k: usize,
        budget: &'a Budget,
        classes: Vec<VertexSet>,
        f: F,
    }

    impl<F: FnMut(&Coloring) -> ControlFlow<()>> Walk<'_, F> {
        fn go(&mut self, v: usize) -> Result<ControlFlow<()>> {
            self.budget.tick()?;
            let n = self.g.n();
            if v == n {
                if self.classes.len() >= self.min_k {
                    let c = Coloring { classes: self.classes.clone() };
                    return Ok((self.f)(&c));
                }
                return Ok(ControlFlow::Continue(()));
            }
            if self.classes.len() + (n - v) < self.min_k {
                return Ok(ControlFlow::Continue(()));
            }
            let nb = self.g.neighbors(v);
            for i in 0..self.classes.len() {
                if !self.classes[i].intersects(nb) {
                    self.classes[i].insert(v);
                    let flow = self.go(v + 1)?;
                    self.classes[i].remove(v);
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
            }
            if self.classes.len() < self.max_k {
                self.classes.push(VertexSet::singleton(v));
                let flow = self.go(v + 1)?;
                self.classes.pop();
                if flow.is_break() {
                    return Ok(flow);
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }

    let mut walk = Walk {
        g,
        min_k,
        max_k,
        budget,
        classes: Vec::new(),
        f: &mut f,
    };
    walk.go(0).map(|_| ())
}

/// Up to `limit` distinct colorings of size exactly `k` (class order ignored).
pub fn colorings_of_size(g: &Graph, k: usize, limit: usize) -> Vec<Coloring> {
    colorings_of_size_within(g, k, limit, &Budget::unlimited())
        .expect("unlimited budget cannot run out")
}

pub fn colorings_of_size_within(
    g: &Graph,
    k: usize,
    limit: usize,
    budget: &Budget,
) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_coloring(g, k, k, budget, |c| {
        out.push(c.clone());
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// The unique coloring of size `χ(g)`, if there is exactly one.
pub fn unique_optimal_coloring(g: &Graph) -> Option<Coloring> {
    let (k, _) = chromatic_number(g);
    let mut found = colorings_of_size(g, k, 2);
    (found.len() == 1).then(|| found.pop().unwrap())
}

/// Whether every two classes of `c` induce a connected subgraph.
pub fn is_kempe(g: &Graph, c: &Coloring) -> Result<bool> {
    ensure_coloring(g, c)?;
    Ok(kempe_unchecked(g, c))
}

pub(crate) fn kempe_unchecked(g: &Graph, c: &Coloring) -> bool {
    let cl = &c.classes;
    (0..cl.len()).all(|i| ((i + 1)..cl.len()).all(|j| g.is_connected_set(cl[i] | cl[j])))
}

/// Swaps the colors of classes `a_idx` and `b_idx` on the Kempe chain `comp`.
pub fn kempe_exchange(
    g: &Graph,
    c: &Coloring,
    a_idx: usize,
    b_idx: usize,
    comp: VertexSet,
) -> Result<Coloring> {
    ensure_coloring(g, c)?;
    if a_idx == b_idx || a_idx >= c.len() || b_idx >= c.len() {
        return Err(invalid(format!("bad class pair ({a_idx}, {b_idx})")));
    }
    let a = c.classes[a_idx];
    let b = c.classes[b_idx];
    let pair = a | b;
    let is_component = comp
        .first()
        .is_some_and(|v| comp.is_subset(pair) && g.reach_within(v, pair) == comp);
    if !is_component {
        return Err(invalid(format!(
            "{comp:?} is not a component of the subgraph induced by classes {a_idx} and {b_idx}"
        )));
    }
    let new_a = (a - comp) | (b & comp);
    let new_b = (b - comp) | (a & comp);
    let mut classes: Vec<VertexSet> = c
        .classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != a_idx && i != b_idx)
        .map(|(_, &s)| s)
        .collect();
    classes.extend([new_a, new_b].into_iter().filter(|s| !s.is_empty()));
    Coloring::new(classes)
}

/// Whether every two classes induce a tree. When they do, the edge count is
/// forced to `(k-1)n - k(k-1)/2`; this is asserted.
pub fn is_minimal_kempe(g: &Graph, c: &Coloring) -> bool {
    if !is_coloring(g, c) {
        return false;
    }
    let cl = &c.classes;
    for i in 0..cl.len() {
        for j in (i + 1)..cl.len() {
            let pair = cl[i] | cl[j];
            if !g.is_connected_set(pair) || induced_edge_count(g, pair) != pair.len() - 1 {
                return false;
            }
        }
    }
    let (k, n) = (cl.len(), g.n());
    if k >= 1 {
        assert_eq!(
            g.edge_count(),
            (k - 1) * n - k * (k - 1) / 2,
            "minimal Kempe coloring with the wrong edge count"
        );
    }
    true
}

pub(crate) fn induced_edge_count(g: &Graph, s: VertexSet) -> usize {
    s.iter().map(|v| (g.neighbors(v) & s).len()).sum::<usize>() / 2
}

/// Checks that a separator of a graph with a Kempe coloring meets all but at
/// most one color class.
pub fn separator_color_check(g: &Graph, c: &Coloring, sep: VertexSet) -> Result<bool> {
    if !is_kempe(g, c)? {
        return Err(invalid("coloring is not a Kempe coloring"));
    }
    g.check_set(sep)?;
    if !crate::connectivity::is_separator(g, sep) {
        return Err(invalid(format!("{sep:?} does not separate the graph")));
    }
    let missed = c.classes.iter().filter(|&&d| !d.intersects(sep)).count();
    Ok(missed <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::classic;

    fn col(lists: &[&[usize]]) -> Coloring {
        Coloring::from_lists(lists).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn coloring_checks() {
        let c4 = classic::cycle(4);
        assert!(is_coloring(&c4, &col(&[&[0, 2], &[1, 3]])));
        assert!(!is_coloring(&c4, &col(&[&[0, 1], &[2, 3]])));
        assert!(is_coloring(&classic::complete(3), &col(&[&[0], &[1], &[2]])));
        assert!(!is_coloring(&c4, &col(&[&[0, 2], &[1]])));
        assert!(Coloring::from_lists(&[&[0, 1], &[1]]).is_err());
    }

    #[test]
    fn canonical_class_order() {
        assert_eq!(col(&[&[1, 3], &[0, 2]]).classes(), col(&[&[0, 2], &[1, 3]]).classes());
        assert_eq!(col(&[&[1, 3], &[0, 2]]).to_json(), "[[0,2],[1,3]]");
        let parsed: Coloring = serde_json::from_str("[[3,1],[2,0]]").unwrap();
        assert_eq!(parsed, col(&[&[0, 2], &[1, 3]]));
        assert!(serde_json::from_str::<Coloring>("[[0],[0]]").is_err());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&classic::cycle(5)).0, 3);
        let (k, w) = chromatic_number(&classic::petersen());
        assert_eq!(k, 3);
        assert!(is_coloring(&classic::petersen(), &w));
        assert!(colorings_of_size(&classic::petersen(), 2, 1).is_empty());
        assert_eq!(chromatic_number(&classic::complete(6)).0, 6);
        assert_eq!(chromatic_number(&Graph::new(0).unwrap()).0, 0);
        assert_eq!(chromatic_number(&Graph::new(4).unwrap()).0, 1);
    }

    #[test]
    fn enumerated_colorings() {
        let c4 = colorings_of_size(&classic::cycle(4), 2, 10);
        assert_eq!(c4, vec![col(&[&[0, 2], &[1, 3]])]);
        assert_eq!(colorings_of_size(&classic::prism(), 3, 10).len(), 2);
        assert_eq!(colorings_of_size(&classic::cycle(5), 3, 100).len(), 5);
        assert_eq!(colorings_of_size(&classic::cycle(5), 3, 2).len(), 2);
    }

    #[test]
    fn kempe_examples() {
        let c4 = classic::cycle(4);
        assert!(is_kempe(&c4, &col(&[&[0, 2], &[1, 3]])).unwrap());
        let prism = classic::prism();
        for c in colorings_of_size(&prism, 3, 10) {
            assert!(is_kempe(&prism, &c).unwrap());
        }
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!is_kempe(&two_k2, &col(&[&[0, 2], &[1, 3]])).unwrap());
        assert!(is_kempe(&c4, &col(&[&[0, 1], &[2, 3]])).is_err());
    }

    #[test]
    fn exchange_examples() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let c = col(&[&[0, 2], &[1, 3]]);
        let d = kempe_exchange(&two_k2, &c, 0, 1, set(&[0, 1])).unwrap();
        assert_eq!(d, col(&[&[0, 3], &[1, 2]]));
        assert_ne!(d, c);

        let p3 = classic::path(3);
        let c = col(&[&[0, 2], &[1]]);
        assert_eq!(kempe_exchange(&p3, &c, 0, 1, set(&[0, 1, 2])).unwrap(), c);
        assert!(kempe_exchange(&p3, &c, 0, 1, set(&[0, 1])).is_err());
        assert!(kempe_exchange(&p3, &c, 0, 0, set(&[0, 1, 2])).is_err());
    }

    #[test]
    fn minimal_kempe_examples() {
        let k4 = classic::complete(4);
        assert!(is_minimal_kempe(&k4, &col(&[&[0], &[1], &[2], &[3]])));
        assert!(!is_minimal_kempe(&classic::cycle(4), &col(&[&[0, 2], &[1, 3]])));
    }

    #[test]
    fn separator_examples() {
        let p4 = classic::path(4);
        let c = col(&[&[0, 2], &[1, 3]]);
        assert!(separator_color_check(&p4, &c, set(&[1])).unwrap());
        let mut k4e = classic::complete(4);
        k4e.remove_edge(0, 3);
        let c = col(&[&[0, 3], &[1], &[2]]);
        assert!(separator_color_check(&k4e, &c, set(&[1, 2])).unwrap());
        assert!(separator_color_check(&k4e, &c, set(&[1])).is_err());
    }

    #[test]
    fn transversal_enumeration() {
        let c = col(&[&[0, 2], &[1], &[3, 4, 5]]);
        let all: Vec<_> = c.transversals().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].vertices(), set(&[0, 1, 3]));
        assert_eq!(all[1].vertices(), set(&[2, 1, 3]));
        assert!(all.iter().all(|t| t.traverses(c.classes())));
        assert!(!Transversal(set(&[0, 2, 1, 3])).traverses(c.classes()));
    }
}
