//! Shallow clique minors traversed by a prescribed transversal, built from the
//! unique coloring of a graph without antitriangles.

use crate::coloring::{is_coloring, Coloring, Transversal};
use crate::error::{invalid, violation, Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::matching::{decompose_within, DecompStep};

use super::{validate_clique_minor, CliqueMinor};

/// Shallow clique minor of size `|c|` in which every branch set contains
/// exactly one vertex of `t`.
///
/// `c` must be the unique coloring of size `χ(g)`. This is checked along the
/// way: singleton classes must be universal, and the remaining classes must
/// form the unique perfect matching of the complement on every residual level
/// of the decomposition.
pub fn shallow_minor_rooted(g: &Graph, c: &Coloring, t: Transversal) -> Result<CliqueMinor> {
    if !is_coloring(g, c) {
        return Err(invalid("not a coloring of the graph"));
    }
    if let Some(a) = g.find_antitriangle() {
        return Err(invalid(format!("graph has the antitriangle {a:?}")));
    }
    if !t.traverses(c.classes()) || !t.vertices().is_subset(g.vertices()) {
        return Err(invalid("transversal does not meet every class exactly once"));
    }
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    for &class in c.classes() {
        match class.len() {
            1 => singles.push(class),
            2 => pairs.push(class),
            _ => unreachable!("anticliques have at most two vertices here"),
        }
    }
    for &s in &singles {
        let x = s.first().unwrap();
        if g.neighbors(x) != g.vertices().without(x) {
            return Err(invalid(format!(
                "singleton class {{{x}}} is not universal, so the coloring is not the unique one"
            )));
        }
    }
    let rest = g.vertices() - singles.iter().fold(VertexSet::EMPTY, |a, &s| a | s);
    let m: Vec<Edge> = pairs
        .iter()
        .map(|p| {
            let v = p.to_vec();
            Edge::new(v[0], v[1])
        })
        .collect();
    let gc = g.complement();
    let steps = decompose_within(&gc, rest, &m).map_err(|e| match e {
        Error::InvalidInput(msg) => invalid(format!("coloring is not the unique one: {msg}")),
        other => other,
    })?;
    let partner = |v: usize| m.iter().find(|e| e.contains(v)).map(|e| e.other(v)).unwrap();
    let b = Builder {
        g,
        t: t.vertices(),
        steps: &steps,
        partner: &partner,
    };
    let mut sets = b.build(0)?;
    sets.extend(singles);
    let minor = CliqueMinor::new(sets);
    if minor.len() != c.len() {
        return Err(violation(format!(
            "construction returned {} branch sets instead of {}",
            minor.len(),
            c.len()
        )));
    }
    validate_clique_minor(g, &minor, true, Some(t))
        .map_err(|d| violation(format!("constructed shallow minor is invalid: {d}")))?;
    Ok(minor)
}

struct Builder<'a> {
    g: &'a Graph,
    t: VertexSet,
    steps: &'a [DecompStep],
    partner: &'a dyn Fn(usize) -> usize,
}

impl Builder<'_> {
    /// The family `𝔎_l`, or `None` when level `l` is special.
    fn level_family(&self, l: usize) -> Option<Vec<VertexSet>> {
        let st = &self.steps[l];
        let (x, y) = (st.x, st.y);
        if st.r.is_empty() {
            return self.t.contains(x).then(|| vec![VertexSet::singleton(x)]);
        }
        let orient = |e: &Edge| {
            if self.t.contains(e.u()) {
                (e.u(), e.v())
            } else {
                (e.v(), e.u())
            }
        };
        let qr: Vec<(usize, usize)> = st.r.iter().map(orient).collect();
        let ts: Vec<(usize, usize)> = st.s.iter().map(orient).collect();
        let pair = |a: usize, b: usize| VertexSet::singleton(a).with(b);
        let (q1, r1) = qr[0];
        let (t1, s1) = ts[0];
        let mut fam = if self.t.contains(x) {
            vec![pair(x, s1), pair(y, q1), pair(r1, t1)]
        } else {
            vec![pair(x, t1), pair(y, r1), pair(q1, s1)]
        };
        for (&(qj, rj), &(tj, sj)) in qr.iter().zip(&ts).skip(1) {
            fam.push(pair(qj, sj));
            fam.push(pair(rj, tj));
        }
        Some(fam)
    }

    fn level_of(&self, v: usize) -> usize {
        self.steps.iter().position(|st| st.removed().contains(v)).unwrap()
    }

    /// Traversed shallow clique minor of the subgraph on `H_l`.
    fn build(&self, l: usize) -> Result<Vec<VertexSet>> {
        if l == self.steps.len() {
            return Ok(Vec::new());
        }
        let st = &self.steps[l];
        if let Some(fam) = self.level_family(l) {
            let mut sets = self.build(l + 1)?;
            sets.extend(fam);
            return Ok(sets);
        }
        let y0 = st.y;
        let mut sets = self.build(l + 1)?;
        let ny0 = self.g.neighbors(y0);
        if sets.iter().all(|s| s.intersects(ny0)) {
            sets.push(VertexSet::singleton(y0));
            return Ok(sets);
        }
        let below = st.h_vertices - st.removed();
        let (i, u) = (self.t & (below - ny0))
            .iter()
            .map(|u| (self.level_of((self.partner)(u)), u))
            .fold(None, |best: Option<(usize, usize)>, (i, u)| match best {
                Some((bi, _)) if bi >= i => best,
                _ => Some((i, u)),
            })
            .ok_or_else(|| violation(format!("no transversal vertex misses y = {y0}")))?;
        let v = (self.partner)(u);
        let sti = &self.steps[i];
        let fam_i = self.level_family(i).unwrap_or_default();
        let w = if sti.r.is_empty() {
            sti.bridge.other(v)
        } else {
            let a = fam_i
                .iter()
                .find(|a| a.contains(v))
                .ok_or_else(|| violation(format!("{v} lies in no set of level {i}")))?;
            a.without(v).first().unwrap()
        };
        if !self.t.contains(w) {
            return Err(violation(format!("partner vertex {w} of {v} is not in the transversal")));
        }
        let mut sets = self.build(i + 1)?;
        let mut specials = Vec::new();
        for j in l..i {
            match self.level_family(j) {
                Some(fam) => sets.extend(fam),
                None => specials.push(j),
            }
        }
        sets.extend(fam_i.into_iter().filter(|a| !a.contains(w)));
        for pair in specials.windows(2) {
            let (a, b) = (&self.steps[pair[0]], &self.steps[pair[1]]);
            sets.push(VertexSet::singleton(b.y).with(a.x));
        }
        let last = &self.steps[*specials.last().unwrap()];
        sets.push(VertexSet::singleton(w).with(last.x));
        sets.push(VertexSet::singleton(y0).with(v));
        Ok(sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::unique_optimal_coloring;
    use crate::generators::classic;
    use crate::minors::{find_shallow_minor, SearchConfig};

    fn check_all_transversals(g: &Graph) {
        let c = unique_optimal_coloring(g).expect("uniquely colorable");
        for t in c.transversals() {
            let k = shallow_minor_rooted(g, &c, t).unwrap();
            assert_eq!(k.len(), c.len());
            assert_eq!(validate_clique_minor(g, &k, true, Some(t)), Ok(()));
        }
    }

    #[test]
    fn path_on_four() {
        let p4 = classic::path(4);
        let c = unique_optimal_coloring(&p4).unwrap();
        assert_eq!(c, Coloring::from_lists(&[&[0, 2], &[1, 3]]).unwrap());
        let t = Transversal([0, 1].into_iter().collect());
        let k = shallow_minor_rooted(&p4, &c, t).unwrap();
        assert_eq!(k.len(), 2);
        let cfg = SearchConfig::default();
        assert!(find_shallow_minor(&p4, 2, Some(t), &cfg).unwrap().is_some());
        check_all_transversals(&p4);
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=6 {
            let g = classic::complete(n);
            let c = Coloring::new((0..n).map(VertexSet::singleton).collect()).unwrap();
            let k = shallow_minor_rooted(&g, &c, Transversal(g.vertices())).unwrap();
            assert_eq!(k.len(), n);
            assert!(k.branch_sets().iter().all(|b| b.len() == 1));
        }
    }

    #[test]
    fn complement_of_p6() {
        let g = classic::path(6).complement();
        let c = Coloring::from_lists(&[&[0, 1], &[2, 3], &[4, 5]]).unwrap();
        let t = c.transversal_at(0).unwrap();
        let k = shallow_minor_rooted(&g, &c, t).unwrap();
        assert_eq!(k.len(), 3);
        check_all_transversals(&g);
    }

    #[test]
    fn special_levels() {
        // Complements of longer paths force special indices for some transversals.
        for n in [8, 10, 12] {
            check_all_transversals(&classic::path(n).complement());
        }
        check_all_transversals(&classic::path(4).complement());
    }

    #[test]
    fn rejects_bad_input() {
        let c6 = classic::cycle(6);
        let c = Coloring::from_lists(&[&[0, 2, 4], &[1, 3, 5]]).unwrap();
        let t = Transversal([0, 1].into_iter().collect());
        assert!(matches!(shallow_minor_rooted(&c6, &c, t), Err(Error::InvalidInput(_))));
        let c4 = classic::cycle(4);
        let c = Coloring::from_lists(&[&[0, 2], &[1, 3]]).unwrap();
        let t = Transversal([0, 2].into_iter().collect());
        assert!(matches!(shallow_minor_rooted(&c4, &c, t), Err(Error::InvalidInput(_))));
        // The prism has two 3-colorings.
        let prism = classic::prism();
        let c = Coloring::from_lists(&[&[0, 1], &[2, 3], &[4, 5]]).unwrap();
        let t = c.transversal_at(0).unwrap();
        assert!(matches!(shallow_minor_rooted(&prism, &c, t), Err(Error::InvalidInput(_))));
    }
}
