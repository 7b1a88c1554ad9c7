use crate::coloring::{is_kempe, Coloring};
use crate::error::{invalid, violation, Result};
use crate::generators::apex_augment;
use crate::graph::{Graph, VertexSet};

use super::rooted::{rooted_k4_minor_with, RootedK4Instance};
use super::{validate_clique_minor, CliqueMinor, SearchConfig};

pub fn kempe_clique_minor_k6(g: &Graph, c: &Coloring) -> Result<CliqueMinor> {
    kempe_clique_minor_k6_with(g, c, &SearchConfig::default())
}

/// Clique minor of size at least `k` from a Kempe coloring of size `k <= 6`.
///
/// Smaller colorings are padded to six classes with apex vertices, and branch
/// sets touching an apex are dropped afterwards. With six classes, the last two
/// classes give two branch sets (a spanning-tree leaf `x` and the rest), and a
/// rooted K4 minor of the first four classes, rooted at neighbours of `x`,
/// gives the other four.
pub fn kempe_clique_minor_k6_with(g: &Graph, c: &Coloring, cfg: &SearchConfig) -> Result<CliqueMinor> {
    if !is_kempe(g, c)? {
        return Err(invalid("coloring is not a Kempe coloring"));
    }
    let k = c.len();
    if k > 6 {
        return Err(invalid(format!("Kempe coloring has {k} > 6 classes")));
    }
    let minor = if k == 6 {
        six_class_minor(g, c, cfg)?
    } else if k == 0 {
        CliqueMinor::default()
    } else {
        let (h, c_plus) = apex_augment(g, c, 6 - k)?;
        let apex = h.vertices() - g.vertices();
        let full = six_class_minor(&h, &c_plus, cfg)?;
        CliqueMinor::new(
            full.branch_sets()
                .iter()
                .copied()
                .filter(|b| !b.intersects(apex))
                .collect(),
        )
    };
    if minor.len() < k {
        return Err(violation(format!("construction returned {} < {k} branch sets", minor.len())));
    }
    validate_clique_minor(g, &minor, false, None)
        .map_err(|d| violation(format!("constructed minor is invalid: {d}")))?;
    Ok(minor)
}

/// Highest-indexed leaf of the DFS tree of `G[a]` rooted at its smallest
/// vertex, visiting neighbours in increasing order.
fn dfs_tree_leaf(g: &Graph, a: VertexSet) -> usize {
    fn visit(g: &Graph, v: usize, a: VertexSet, seen: &mut VertexSet, leaves: &mut VertexSet) {
        seen.insert(v);
        let mut has_child = false;
        while let Some(w) = (g.neighbors(v) & (a - *seen)).first() {
            has_child = true;
            visit(g, w, a, seen, leaves);
        }
        if !has_child {
            leaves.insert(v);
        }
    }
    let root = a.first().expect("nonempty set");
    let mut seen = VertexSet::EMPTY;
    let mut leaves = VertexSet::EMPTY;
    visit(g, root, a, &mut seen, &mut leaves);
    leaves.iter().last().unwrap()
}

fn six_class_minor(g: &Graph, c: &Coloring, cfg: &SearchConfig) -> Result<CliqueMinor> {
    let d = c.classes();
    let (mut d5, mut d6) = (d[4], d[5]);
    let a = d5 | d6;
    let x = dfs_tree_leaf(g, a);
    if d6.contains(x) {
        std::mem::swap(&mut d5, &mut d6);
    }
    debug_assert!(d5.contains(x));
    let a6 = a.without(x);
    let a5 = VertexSet::singleton(x);
    let mut roots = [0usize; 4];
    for i in 0..4 {
        roots[i] = (g.neighbors(x) & d[i]).first().ok_or_else(|| {
            violation(format!("leaf {x} has no neighbour in class {i} of a Kempe coloring"))
        })?;
    }
    let low = d[0] | d[1] | d[2] | d[3];
    let (h, map) = g.induced_subgraph(low)?;
    let local = roots.map(|r| map.binary_search(&r).unwrap());
    let inst = RootedK4Instance::new(&h, local)?;
    let rooted = rooted_k4_minor_with(&h, &inst, cfg)?.ok_or_else(|| {
        violation(format!(
            "no rooted K4 minor at roots {roots:?} although the linkage paths exist"
        ))
    })?;
    let mut sets: Vec<VertexSet> = rooted
        .branch_sets()
        .iter()
        .map(|b| b.iter().map(|v| map[v]).collect())
        .collect();
    sets.push(a5);
    sets.push(a6);
    Ok(CliqueMinor::new(sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::colorings_of_size;
    use crate::error::Error;
    use crate::generators::{classic, grid3k};
    use crate::minors::hadwiger_number;

    #[test]
    fn complete_six() {
        let k6 = classic::complete(6);
        let c = Coloring::new((0..6).map(VertexSet::singleton).collect()).unwrap();
        let m = kempe_clique_minor_k6(&k6, &c).unwrap();
        assert_eq!(m.len(), 6);
        assert!(m.branch_sets().iter().all(|b| b.len() == 1));
    }

    #[test]
    fn prism_colorings() {
        let prism = classic::prism();
        for c in colorings_of_size(&prism, 3, 10) {
            let m = kempe_clique_minor_k6(&prism, &c).unwrap();
            assert!(m.len() >= 3);
        }
        assert_eq!(hadwiger_number(&prism).unwrap(), 4);
    }

    #[test]
    fn grid_five() {
        let (g, c) = grid3k(5).unwrap();
        let m = kempe_clique_minor_k6(&g, &c).unwrap();
        assert!(m.len() >= 5);
        let (g, c) = grid3k(6).unwrap();
        assert!(kempe_clique_minor_k6(&g, &c).unwrap().len() >= 6);
    }

    #[test]
    fn rejects_bad_colorings() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let c = Coloring::from_lists(&[&[0, 2], &[1, 3]]).unwrap();
        assert!(matches!(kempe_clique_minor_k6(&two_k2, &c), Err(Error::InvalidInput(_))));
        let (g, c) = grid3k(7).unwrap();
        assert!(matches!(kempe_clique_minor_k6(&g, &c), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn leaf_choice() {
        let p = classic::path(4);
        assert_eq!(dfs_tree_leaf(&p, p.vertices()), 3);
        let star = classic::star(3);
        assert_eq!(dfs_tree_leaf(&star, star.vertices()), 3);
        assert_eq!(dfs_tree_leaf(&star, VertexSet::singleton(2)), 2);
    }
}
