//! High connectivity or a shallow clique minor, for graphs without
//! antitriangles that carry a Kempe coloring.

use serde::Serialize;

use crate::coloring::{is_kempe, Coloring};
use crate::connectivity::vertex_connectivity;
use crate::error::{invalid, violation, Result};
use crate::graph::{Graph, VertexSet};

use super::{validate_clique_minor, CliqueMinor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma2Outcome {
    /// The vertex connectivity, which is at least the coloring size.
    Connected(usize),
    Minor(CliqueMinor),
}

/// Either certifies `κ(g) >= |c|` or returns a shallow clique minor of size
/// `|c|`.
///
/// The minor comes from a separator `T` of size `k - 1` with a smallest
/// component `C`: every class but one meets `T` once, and matchings from the
/// `T`-vertices into the two components of `G - T` give the branch sets.
pub fn lemma2_or(g: &Graph, c: &Coloring) -> Result<Lemma2Outcome> {
    if !is_kempe(g, c)? {
        return Err(invalid("coloring is not a Kempe coloring"));
    }
    if let Some(a) = g.find_antitriangle() {
        return Err(invalid(format!("graph has the antitriangle {a:?}")));
    }
    let k = c.len();
    let kappa = vertex_connectivity(g);
    if kappa >= k {
        return Ok(Lemma2Outcome::Connected(kappa));
    }
    let minor = CliqueMinor::new(build(g, g.vertices(), c.classes().to_vec())?);
    if minor.len() != k {
        return Err(violation(format!("construction returned {} branch sets instead of {k}", minor.len())));
    }
    validate_clique_minor(g, &minor, true, None)
        .map_err(|d| violation(format!("constructed shallow minor is invalid: {d}")))?;
    Ok(Lemma2Outcome::Minor(minor))
}

fn build(g: &Graph, h: VertexSet, mut classes: Vec<VertexSet>) -> Result<Vec<VertexSet>> {
    if let Some(pos) = classes.iter().position(|s| s.len() == 1) {
        let single = classes.remove(pos);
        let x = single.first().unwrap();
        if !(h.without(x)).is_subset(g.neighbors(x)) {
            return Err(violation(format!("singleton class {{{x}}} is not universal")));
        }
        let mut sets = build(g, h.without(x), classes)?;
        sets.push(single);
        return Ok(sets);
    }
    if h.is_empty() {
        return Ok(Vec::new());
    }
    let k = classes.len();
    let (t, comp) = smallest_side(g, h, k - 1)
        .ok_or_else(|| violation(format!("no separator of size {} in {h:?}", k - 1)))?;
    let d = *classes
        .iter()
        .find(|s| !s.intersects(t))
        .ok_or_else(|| violation("every class meets the separator"))?;
    if classes.iter().any(|&b| b != d && (b & t).len() != 1) {
        return Err(violation("a class other than D meets the separator more than once"));
    }
    let comps = g.components_within(h - t);
    if comps.len() != 2 {
        return Err(violation(format!("separator {t:?} leaves {} components", comps.len())));
    }
    let other = if comps[0] == comp { comps[1] } else { comps[0] };
    let dv = (d & comp)
        .first()
        .ok_or_else(|| violation("class D misses the smallest component"))?;
    if !d.intersects(other) {
        return Err(violation("class D misses the second component"));
    }
    let mut p = VertexSet::EMPTY;
    let mut p2 = VertexSet::EMPTY;
    for &b in classes.iter().filter(|&&b| b != d) {
        if b.intersects(comp) {
            p = p | b;
        } else {
            p2 = p2 | b;
        }
    }
    let m = bipartite_matching(g, p & t, p & comp)
        .ok_or_else(|| violation("Hall condition fails towards the smallest component"))?;
    let m2 = bipartite_matching(g, p2 & t, other)
        .ok_or_else(|| violation("Hall condition fails towards the second component"))?;
    let mut sets: Vec<VertexSet> = m
        .into_iter()
        .chain(m2)
        .map(|(a, b)| VertexSet::singleton(a).with(b))
        .collect();
    sets.push(VertexSet::singleton(dv));
    Ok(sets)
}

/// First separator of `G[h]` of the given size, in lexicographic order,
/// together with a component of minimum size, ties going to the earlier
/// separator and then the smaller vertex.
fn smallest_side(g: &Graph, h: VertexSet, size: usize) -> Option<(VertexSet, VertexSet)> {
    let verts = h.to_vec();
    let mut best: Option<(VertexSet, VertexSet)> = None;
    let mut idx: Vec<usize> = (0..size).collect();
    if size > verts.len() {
        return None;
    }
    loop {
        let t: VertexSet = idx.iter().map(|&i| verts[i]).collect();
        let comps = g.components_within(h - t);
        if comps.len() >= 2 {
            let c = *comps.iter().min_by_key(|c| c.len()).unwrap();
            if best.is_none_or(|(_, b)| c.len() < b.len()) {
                best = Some((t, c));
            }
        }
        let n = verts.len();
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return best;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Matching that saturates `left` with edges into `right`, by augmenting
/// paths.
fn bipartite_matching(g: &Graph, left: VertexSet, right: VertexSet) -> Option<Vec<(usize, usize)>> {
    fn augment(g: &Graph, a: usize, right: VertexSet, seen: &mut VertexSet, owner: &mut [Option<usize>]) -> bool {
        for b in (g.neighbors(a) & right).iter() {
            if seen.contains(b) {
                continue;
            }
            seen.insert(b);
            if owner[b].is_none_or(|o| augment(g, o, right, seen, owner)) {
                owner[b] = Some(a);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; g.n()];
    for a in left.iter() {
        let mut seen = VertexSet::EMPTY;
        if !augment(g, a, right, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pairs: Vec<(usize, usize)> = right
        .iter()
        .filter_map(|b| owner[b].map(|a| (a, b)))
        .collect();
    pairs.sort();
    Some(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::colorings_of_size;
    use crate::error::Error;
    use crate::generators::classic;

    #[test]
    fn complete_graph_gives_singletons() {
        let k5 = classic::complete(5);
        let c = Coloring::new((0..5).map(VertexSet::singleton).collect()).unwrap();
        match lemma2_or(&k5, &c).unwrap() {
            Lemma2Outcome::Minor(m) => {
                assert_eq!(m.len(), 5);
                assert!(m.branch_sets().iter().all(|b| b.len() == 1));
            }
            other => panic!("expected a minor, got {other:?}"),
        }
    }

    #[test]
    fn prism_is_connected_enough() {
        let prism = classic::prism();
        let c = colorings_of_size(&prism, 3, 1).remove(0);
        assert_eq!(lemma2_or(&prism, &c).unwrap(), Lemma2Outcome::Connected(3));
    }

    #[test]
    fn separator_branch() {
        // Complement of P4 is P4; the 2-coloring is Kempe and κ = 1 < 2.
        let p4 = classic::path(4);
        let c = Coloring::from_lists(&[&[0, 2], &[1, 3]]).unwrap();
        match lemma2_or(&p4, &c).unwrap() {
            Lemma2Outcome::Minor(m) => {
                assert_eq!(m.len(), 2);
                assert_eq!(validate_clique_minor(&p4, &m, true, None), Ok(()));
            }
            other => panic!("expected a minor, got {other:?}"),
        }
    }

    #[test]
    fn all_small_instances() {
        use crate::budget::Budget;
        use crate::coloring::for_each_coloring;
        use std::ops::ControlFlow;
        let mut minors_at_three = 0;
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
                if g.find_antitriangle().is_some() {
                    continue;
                }
                for_each_coloring(&g, 1, n, &Budget::unlimited(), |c| {
                    if is_kempe(&g, c).unwrap() {
                        match lemma2_or(&g, c).unwrap() {
                            Lemma2Outcome::Connected(kappa) => assert!(kappa >= c.len()),
                            Lemma2Outcome::Minor(m) => {
                                assert_eq!(m.len(), c.len());
                                minors_at_three += usize::from(c.len() >= 3 && m.branch_sets().iter().any(|b| b.len() == 2));
                            }
                        }
                    }
                    ControlFlow::Continue(())
                })
                .unwrap();
            }
        }
        assert!(minors_at_three > 0);
    }

    #[test]
    fn matching_saturates_or_fails() {
        let p4 = classic::path(4);
        let left: VertexSet = [0, 2].into_iter().collect();
        let right: VertexSet = [1, 3].into_iter().collect();
        assert_eq!(bipartite_matching(&p4, left, right), Some(vec![(0, 1), (2, 3)]));
        let star = classic::star(3);
        let left: VertexSet = [1, 2].into_iter().collect();
        assert_eq!(bipartite_matching(&star, left, VertexSet::singleton(0)), None);
    }

    #[test]
    fn rejects_bad_input() {
        let c6 = classic::cycle(6);
        let c = Coloring::from_lists(&[&[0, 2, 4], &[1, 3, 5]]).unwrap();
        assert!(matches!(lemma2_or(&c6, &c), Err(Error::InvalidInput(_))));
    }
}
