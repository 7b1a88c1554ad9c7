use proptest::prelude::*;

use kempe_core::coloring::{
    chromatic_number, colorings_of_size, is_coloring, is_kempe, is_minimal_kempe, kempe_exchange,
    unique_optimal_coloring,
};
use kempe_core::connectivity::vertex_connectivity;
use kempe_core::enumerate::{canonical_masks, graph_from_mask};
use kempe_core::generators::grid3k;
use kempe_core::harness::{c1_campaign, load_findings, Checkpoint};
use kempe_core::{Graph, SearchConfig, VertexSet};

fn graph(n: usize, bits: u64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits >> (i % 64) & 1 == 1 {
                g.add_edge(a, b);
            }
            i += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph(n, bits))
}

fn component_count(g: &Graph) -> usize {
    let mut seen = VertexSet::EMPTY;
    let mut count = 0;
    for v in 0..g.n() {
        if seen.contains(v) {
            continue;
        }
        count += 1;
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            for y in 0..g.n() {
                if g.has_edge(x, y) && !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
    }
    count
}

fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if k >= best || n - k < 2 {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        let mut h = Graph::new(keep.len()).unwrap();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    h.add_edge(i, j);
                }
            }
        }
        if component_count(&h) > 1 {
            best = k;
        }
    }
    best
}

fn brute_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    (1..=n)
        .find(|&k| {
            let mut col = vec![0usize; n];
            loop {
                if g.edges().all(|e| col[e.u()] != col[e.v()]) {
                    return true;
                }
                let mut i = 0;
                while i < n && col[i] == k - 1 {
                    col[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                col[i] += 1;
            }
        })
        .unwrap()
}

fn partition(c: &kempe_core::Coloring) -> Vec<VertexSet> {
    let mut v = c.classes().to_vec();
    v.sort_by_key(|s| s.first());
    v
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(12)) {
        let h = g.complement();
        prop_assert_eq!(h.complement(), g.clone());
        let n = g.n();
        prop_assert_eq!(g.edge_count() + h.edge_count(), n * (n - 1) / 2);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    prop_assert_ne!(g.has_edge(a, b), h.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn bridges_match_edge_deletion(g in arb_graph(7)) {
        let base = component_count(&g);
        let mut expected: Vec<_> = g
            .edges()
            .filter(|e| {
                let mut h = g.clone();
                h.remove_edge(e.u(), e.v());
                component_count(&h) > base
            })
            .collect();
        let mut got = g.bridges();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn connectivity_matches_brute_force(g in arb_graph(7)) {
        prop_assert_eq!(vertex_connectivity(&g), brute_connectivity(&g));
    }

    #[test]
    fn antitriangle_detection(g in arb_graph(9)) {
        let n = g.n();
        let exists = (0..n).any(|a| {
            (a + 1..n).any(|b| (b + 1..n).any(|c| !g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c)))
        });
        match g.find_antitriangle() {
            Some([a, b, c]) => {
                prop_assert!(exists);
                prop_assert!(!g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c));
            }
            None => prop_assert!(!exists),
        }
    }

    #[test]
    fn chromatic_number_matches_brute_force(g in arb_graph(7)) {
        let (chi, witness) = chromatic_number(&g);
        prop_assert_eq!(chi, brute_chromatic(&g));
        prop_assert!(is_coloring(&g, &witness));
        prop_assert_eq!(witness.len(), chi);
    }

    #[test]
    fn kempe_exchange_is_an_involution(g in arb_graph(8)) {
        let (_, c) = chromatic_number(&g);
        for a in 0..c.len() {
            for b in a + 1..c.len() {
                let pair = c.classes()[a] | c.classes()[b];
                for comp in g.components_within(pair) {
                    let d = kempe_exchange(&g, &c, a, b, comp).unwrap();
                    prop_assert!(is_coloring(&g, &d));
                    let idx: Vec<usize> = (0..d.len()).filter(|&i| d.classes()[i].is_subset(pair)).collect();
                    prop_assert!(idx.len() <= 2);
                    if idx.len() < 2 {
                        continue;
                    }
                    let back = kempe_exchange(&g, &d, idx[0], idx[1], comp).unwrap();
                    prop_assert_eq!(partition(&back), partition(&c));
                }
            }
        }
    }
}

#[test]
fn unique_colorings_are_kempe() {
    let mut unique = 0;
    for n in 1..=8 {
        for mask in canonical_masks(n, &|_| true).unwrap() {
            let g = graph_from_mask(n, mask);
            if let Some(c) = unique_optimal_coloring(&g) {
                unique += 1;
                assert!(is_kempe(&g, &c).unwrap(), "{}", g.to_json());
                assert_eq!(colorings_of_size(&g, c.len(), 2).len(), 1);
            }
        }
    }
    assert!(unique > 100);
}

#[test]
fn minimal_kempe_edge_formula() {
    for k in 3..=10 {
        let (g, c) = grid3k(k).unwrap();
        assert!(is_minimal_kempe(&g, &c), "k = {k}");
        assert_eq!(g.edge_count(), (k - 1) * g.n() - k * (k - 1) / 2);
    }
    for n in 1..=6 {
        for mask in canonical_masks(n, &|_| true).unwrap() {
            let g = graph_from_mask(n, mask);
            for k in 1..=n {
                for c in colorings_of_size(&g, k, usize::MAX) {
                    if is_minimal_kempe(&g, &c) {
                        assert_eq!(g.edge_count(), (k - 1) * n - k * (k - 1) / 2);
                    }
                }
            }
        }
    }
}

#[test]
fn findings_round_trip_through_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c1.jsonl");
    let (g, c) = grid3k(3).unwrap();
    let cfg = SearchConfig::default();
    let mut cp = Some(Checkpoint::open(&path).unwrap());
    let report = c1_campaign(&g, &c, "grid", Some(5), &cfg, &mut cp).unwrap();
    assert_eq!(report.found, 5);
    let loaded = load_findings(&path).unwrap();
    assert_eq!(loaded.len(), 5);
    for (a, b) in loaded.iter().zip(&report.findings) {
        assert_eq!(a.key, b.key);
        assert_eq!(a.to_json(), b.to_json());
        a.revalidate(&cfg).unwrap();
    }
    let mut cp = Some(Checkpoint::open(&path).unwrap());
    let again = c1_campaign(&g, &c, "grid", Some(5), &cfg, &mut cp).unwrap();
    assert_eq!((again.found, again.skipped), (0, 5));
}
