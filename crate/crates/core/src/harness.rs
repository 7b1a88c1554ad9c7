//! Conjecture-testing campaigns: the balanced-set problem on triangle-free
//! graphs and traversed clique minors of Kempe colorings, with JSON-lines
//! checkpoints.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{is_kempe, Coloring, Transversal};
use crate::enumerate::{canonical_masks, graph_from_mask, graph_mask};
use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::matching::Matching;
use crate::minors::{rooted_partition, validate_clique_minor, CliqueMinor, SearchConfig};

/// The 4-cycles of `g` as `[a, b, c, d]` with `a` smallest and `b < d`.
pub fn four_cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in g.vertices().iter() {
        let later = g.vertices() - VertexSet::full(a + 1);
        let nb = g.neighbors(a) & later;
        for b in nb.iter() {
            for d in (nb - VertexSet::full(b + 1)).iter() {
                for c in (g.neighbors(b) & g.neighbors(d) & later).iter() {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Whether every 4-cycle has a diagonal pair inside `a` or inside its
/// complement.
pub fn p1_valid(g: &Graph, a: VertexSet) -> bool {
    let side = |v: usize| a.contains(v);
    four_cycles(g).iter().all(|&[p, q, r, s]| side(p) == side(r) || side(q) == side(s))
}

fn check_p1_input(g: &Graph, m: &Matching) -> Result<()> {
    if let Some(t) = g.find_triangle() {
        return Err(invalid(format!("graph has the triangle {t:?}")));
    }
    if !m.is_perfect_in(g) {
        return Err(invalid("matching is not a perfect matching of the graph"));
    }
    let e = m.edges();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let links = e[i]
                .vertices()
                .iter()
                .map(|v| (g.neighbors(v) & e[j].vertices()).len())
                .sum::<usize>();
            if links > 1 {
                return Err(invalid(format!("matching edges {} and {} are joined by {links} edges", e[i], e[j])));
            }
        }
    }
    Ok(())
}

/// A set `A` of half the vertices such that every 4-cycle has two
/// nonadjacent vertices in `A` or two in its complement, if one exists.
pub fn p1_search(g: &Graph, m: &Matching) -> Result<Option<VertexSet>> {
    check_p1_input(g, m)?;
    let n = g.n();
    let cycles = four_cycles(g);
    let mut by_last: Vec<Vec<[usize; 4]>> = vec![Vec::new(); n];
    for c in cycles {
        let last = *c.iter().max().unwrap();
        by_last[last].push(c);
    }
    fn go(v: usize, n: usize, a: VertexSet, by_last: &[Vec<[usize; 4]>]) -> Option<VertexSet> {
        let inside = a.len();
        let outside = v - inside;
        if inside > n / 2 || outside > n / 2 {
            return None;
        }
        if v > 0 {
            let side = |u: usize| a.contains(u);
            let ok = by_last[v - 1]
                .iter()
                .all(|&[p, q, r, s]| side(p) == side(r) || side(q) == side(s));
            if !ok {
                return None;
            }
        }
        if v == n {
            return Some(a);
        }
        go(v + 1, n, a.with(v), by_last).or_else(|| go(v + 1, n, a, by_last))
    }
    Ok(go(0, n, VertexSet::EMPTY, &by_last))
}

/// Every perfect matching of `g` in lexicographic order, up to `limit`.
pub fn perfect_matchings(g: &Graph, limit: usize) -> Vec<Matching> {
    fn go(g: &Graph, free: VertexSet, cur: &mut Vec<Edge>, out: &mut Vec<Matching>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(v) = free.first() else {
            out.push(Matching::new(cur.clone()).unwrap());
            return;
        };
        for w in (g.neighbors(v) & free).iter() {
            cur.push(Edge::new(v, w));
            go(g, free.without(v).without(w), cur, out, limit);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, g.vertices(), &mut Vec::new(), &mut out, limit);
    out
}

/// A perfect matching meeting the precondition of [`p1_search`], if any.
pub fn p1_matching(g: &Graph) -> Option<Matching> {
    if g.find_triangle().is_some() {
        return None;
    }
    perfect_matchings(g, usize::MAX)
        .into_iter()
        .find(|m| check_p1_input(g, m).is_ok())
}

/// Clique minor of size `|c|` whose branch sets each contain exactly one
/// vertex of `t`, found by exhaustive search. `None` means no such minor
/// exists; a blown budget is `Error::Inconclusive`.
pub fn c1_check(g: &Graph, c: &Coloring, t: Transversal, cfg: &SearchConfig) -> Result<Option<CliqueMinor>> {
    if !is_kempe(g, c)? {
        return Err(invalid("coloring is not a Kempe coloring"));
    }
    if !t.traverses(c.classes()) {
        return Err(invalid("transversal does not meet every class exactly once"));
    }
    if g.n() > cfg.rooted_bound {
        return Err(Error::BoundExceeded {
            what: "c1_check",
            n: g.n(),
            bound: cfg.rooted_bound,
        });
    }
    let roots: Vec<usize> = c
        .classes()
        .iter()
        .map(|&d| (d & t.vertices()).first().unwrap())
        .collect();
    let Some(sets) = rooted_partition(g, &roots, &cfg.budget)? else {
        return Ok(None);
    };
    let minor = CliqueMinor::new(sets);
    validate_clique_minor(g, &minor, false, Some(t))
        .map_err(|d| crate::error::violation(format!("search returned an invalid minor: {d}")))?;
    Ok(Some(minor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Found,
    None,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    P1 {
        matching: Matching,
        a: Option<VertexSet>,
        bipartite: bool,
        girth_above_four: bool,
    },
    C1 {
        coloring: Coloring,
        transversal: VertexSet,
        minor: Option<CliqueMinor>,
    },
}

/// One campaign instance and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub key: String,
    pub graph: Graph,
    pub certificate: Certificate,
    pub verdict: Verdict,
    pub runtime_ms: u64,
}

impl Finding {
    /// Re-checks the certificate against the graph. Negative verdicts are
    /// re-checked by running the search again.
    pub fn revalidate(&self, cfg: &SearchConfig) -> Result<()> {
        let bad = |why: &str| Err(invalid(format!("finding {} does not revalidate: {why}", self.key)));
        let g = &self.graph;
        match (&self.certificate, self.verdict) {
            (_, Verdict::Inconclusive) => Ok(()),
            (Certificate::P1 { matching, a, .. }, verdict) => {
                check_p1_input(g, matching)?;
                match (a, verdict) {
                    (Some(a), Verdict::Found) => {
                        if a.len() * 2 != g.n() || !p1_valid(g, *a) {
                            return bad("set A violates the 4-cycle condition");
                        }
                        Ok(())
                    }
                    (None, Verdict::None) => match p1_search(g, matching)? {
                        None => Ok(()),
                        Some(_) => bad("a set A exists"),
                    },
                    _ => bad("verdict and certificate disagree"),
                }
            }
            (Certificate::C1 { coloring, transversal, minor }, verdict) => {
                let t = Transversal(*transversal);
                match (minor, verdict) {
                    (Some(k), Verdict::Found) => {
                        if k.len() != coloring.len() {
                            return bad("minor has the wrong size");
                        }
                        validate_clique_minor(g, k, false, Some(t)).or_else(|d| bad(&d.to_string()))
                    }
                    (None, Verdict::None) => match c1_check(g, coloring, t, cfg)? {
                        None => Ok(()),
                        Some(_) => bad("a traversed minor exists"),
                    },
                    _ => bad("verdict and certificate disagree"),
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finding serialization cannot fail")
    }
}

/// Append-only JSON-lines file of findings; keys already present are skipped
/// on resume.
pub struct Checkpoint {
    path: PathBuf,
    done: HashSet<String>,
    out: BufWriter<File>,
}

impl Checkpoint {
    pub fn open(path: &Path) -> Result<Self> {
        let mut done = HashSet::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                if line.trim().is_empty() {
                    continue;
                }
                let f: Finding = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
                done.insert(f.key);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Ok(Checkpoint {
            path: path.to_path_buf(),
            done,
            out: BufWriter::new(file),
        })
    }

    pub fn contains(&self, key: &str) -> bool {
        self.done.contains(key)
    }

    pub fn record(&mut self, f: &Finding) -> Result<()> {
        let io = |e: std::io::Error| invalid(format!("{}: {e}", self.path.display()));
        writeln!(self.out, "{}", f.to_json()).map_err(io)?;
        self.out.flush().map_err(io)?;
        self.done.insert(f.key.clone());
        Ok(())
    }
}

/// Reads every finding of a JSON-lines file.
pub fn load_findings(path: &Path) -> Result<Vec<Finding>> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1))))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub found: usize,
    pub none: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    pub findings: Vec<Finding>,
}

impl CampaignReport {
    fn add(&mut self, f: Finding, checkpoint: &mut Option<Checkpoint>) -> Result<()> {
        match f.verdict {
            Verdict::Found => self.found += 1,
            Verdict::None => self.none += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
        if let Some(cp) = checkpoint {
            cp.record(&f)?;
        }
        self.findings.push(f);
        Ok(())
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Runs [`p1_search`] on every triangle-free graph with `n` vertices (one per
/// isomorphism class) that has a qualifying perfect matching.
pub fn p1_campaign(n: usize, checkpoint: Option<&Path>) -> Result<CampaignReport> {
    let mut cp = checkpoint.map(Checkpoint::open).transpose()?;
    let mut report = CampaignReport::default();
    if n % 2 == 1 {
        return Ok(report);
    }
    let masks = canonical_masks(n, &|g| g.find_triangle().is_none())?;
    for mask in masks {
        let key = format!("p1:{n}:{mask}");
        if cp.as_ref().is_some_and(|c| c.contains(&key)) {
            report.skipped += 1;
            continue;
        }
        let g = graph_from_mask(n, mask);
        let Some(m) = p1_matching(&g) else { continue };
        let start = Instant::now();
        let a = p1_search(&g, &m)?;
        let f = Finding {
            key,
            certificate: Certificate::P1 {
                matching: m,
                a,
                bipartite: g.is_bipartite(),
                girth_above_four: four_cycles(&g).is_empty(),
            },
            graph: g,
            verdict: if a.is_some() { Verdict::Found } else { Verdict::None },
            runtime_ms: elapsed_ms(start),
        };
        report.add(f, &mut cp)?;
    }
    Ok(report)
}

/// Runs [`c1_check`] on the transversals of one Kempe coloring, at most
/// `sample` of them in mixed-radix order. `tag` identifies the coloring in
/// the keys.
pub fn c1_campaign(
    g: &Graph,
    c: &Coloring,
    tag: &str,
    sample: Option<u128>,
    cfg: &SearchConfig,
    checkpoint: &mut Option<Checkpoint>,
) -> Result<CampaignReport> {
    let mut report = CampaignReport::default();
    let prefix = if g.n() <= 11 {
        format!("c1:{}:{}:{tag}", g.n(), graph_mask(g))
    } else {
        format!("c1:{}:{}:{tag}", g.n(), g.to_json())
    };
    let count = sample.map_or(c.transversal_count(), |s| s.min(c.transversal_count()));
    for idx in 0..count {
        let key = format!("{prefix}:{idx}");
        if checkpoint.as_ref().is_some_and(|cp| cp.contains(&key)) {
            report.skipped += 1;
            continue;
        }
        let t = c.transversal_at(idx).unwrap();
        let start = Instant::now();
        let (minor, verdict) = match c1_check(g, c, t, cfg) {
            Ok(Some(k)) => (Some(k), Verdict::Found),
            Ok(None) => (None, Verdict::None),
            Err(Error::Inconclusive(_)) => (None, Verdict::Inconclusive),
            Err(e) => return Err(e),
        };
        let f = Finding {
            key,
            graph: g.clone(),
            certificate: Certificate::C1 {
                coloring: c.clone(),
                transversal: t.vertices(),
                minor,
            },
            verdict,
            runtime_ms: elapsed_ms(start),
        };
        report.add(f, checkpoint)?;
    }
    Ok(report)
}
