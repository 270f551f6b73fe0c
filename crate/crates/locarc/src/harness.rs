//! Corpus generation/ingestion and exhaustive cross-validation of the two
//! main equivalences, with counterexample shrinking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ca;
use crate::canon::{canonical_form, canonical_key};
use crate::catalog;
use crate::cert;
use crate::cover;
use crate::format::{encode_graph6, parse_graph6, ParseError};
use crate::graph::Graph;
use crate::recognition;

/// Erdős–Rényi sample: vertex pairs (i, j), i < j, visited in row-major
/// order, each kept with probability `p` using a ChaCha8 stream seeded with
/// `seed`. Same seed, same graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability must be in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// Intersection graph of n uniformly random subintervals of a host path:
/// for each vertex two positions are drawn (lo then hi after sorting), in
/// vertex order, from the same seeded ChaCha8 stream. Interval by
/// construction.
pub fn random_interval_graph(n: usize, host_len: usize, seed: u64) -> Graph {
    assert!(host_len >= 1, "host length must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spans: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..host_len);
            let b = rng.gen_range(0..host_len);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (lu, hu) = spans[u];
            let (lv, hv) = spans[v];
            if lu.max(lv) <= hu.min(hv) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// All graphs on n vertices up to isomorphism, as canonical forms, built by
/// vertex augmentation from the (n-1)-level. Sorted by (edge count, graph6).
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for parent in &level {
            for nb in 0u64..(1 << (k - 1)) {
                let mut g = Graph::empty(k);
                for (u, v) in parent.edges() {
                    g.insert_edge(u, v);
                }
                for v in 0..k - 1 {
                    if nb & (1 << v) != 0 {
                        g.insert_edge(k - 1, v);
                    }
                }
                let key = canonical_key(&g);
                if seen.insert(key) {
                    next.push(canonical_form(&g));
                }
            }
        }
        level = next;
    }
    level.sort_by_key(|g| (g.edge_count(), encode_graph6(g)));
    level
}

pub fn enumerate_connected_graphs(n: usize) -> Vec<Graph> {
    enumerate_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Which theorem a cross-check run validates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremSel {
    /// Routes (i) balls, (iii) forbidden subgraphs, (iv) representation,
    /// and optionally (ii) truncated cover; r >= 4.
    T1,
    /// Routes (i) with r = 3 and (ii) wheel-free + apexed catalog.
    T2,
}

#[derive(Clone, Debug)]
pub struct CrossCheckOptions {
    /// Run the truncated-cover route (slowest). Applied per graph.
    pub include_cover: bool,
    /// Truncation radius; default ceil(r/2) + 3.
    pub cover_radius: Option<usize>,
    /// Attach JSON certificates for failing routes.
    pub collect_certificates: bool,
}

impl Default for CrossCheckOptions {
    fn default() -> Self {
        CrossCheckOptions { include_cover: false, cover_radius: None, collect_certificates: true }
    }
}

/// Route verdicts for one graph and one r, with certificates.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub id: String,
    pub r: usize,
    /// (i): every ball is interval
    pub ball_route: bool,
    /// (ii): truncated cover is interval at every base (when enabled)
    pub cover_route: Option<bool>,
    /// (iii): forbidden-subgraph route
    pub fis_route: bool,
    /// (iv): r-acyclic circular-arc route (Theorem 1 only)
    pub rep_route: Option<bool>,
    pub agreement: bool,
    pub certificates: serde_json::Map<String, Value>,
    pub notes: Vec<String>,
}

impl CrossCheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "r": self.r,
            "routes": {
                "ball": self.ball_route,
                "cover": self.cover_route,
                "fis": self.fis_route,
                "representation": self.rep_route,
            },
            "agreement": self.agreement,
            "certificates": self.certificates,
            "notes": self.notes,
        })
    }
}

fn ball_route_with_cert(
    g: &Graph,
    r: usize,
    opts: &CrossCheckOptions,
    certs: &mut serde_json::Map<String, Value>,
) -> bool {
    match recognition::is_r_locally_interval(g, r) {
        Ok(()) => true,
        Err(bad) => {
            if opts.collect_certificates {
                let inner = match &bad.witness {
                    recognition::NonIntervalWitness::Hole(h) => cert::hole_certificate(h),
                    recognition::NonIntervalWitness::ForbiddenInduced { entry, embedding } => {
                        cert::embedding_certificate(entry, embedding)
                    }
                };
                certs.insert(
                    "ball".into(),
                    cert::ball_certificate(bad.center, bad.radius_numerator, inner),
                );
            }
            false
        }
    }
}

/// The forbidden-subgraph route of Theorem 1 (iii): r-chordal, wheel-free,
/// no chordal obstruction, and for r = 4 none of the extra obstructions.
pub fn theorem1_fis_route(
    g: &Graph,
    r: usize,
    certs: Option<&mut serde_json::Map<String, Value>>,
) -> bool {
    let mut store = |v: Value| {
        if let Some(map) = certs {
            map.insert("fis".into(), v);
        }
    };
    if let Some(h) = recognition::find_short_hole(g, r) {
        store(cert::hole_certificate(&h));
        return false;
    }
    if let Some(w) = recognition::find_wheel(g) {
        store(cert::wheel_certificate(&w));
        return false;
    }
    if let Some((entry, emb)) = catalog::scan(g, &catalog::fig1_families(), g.n()) {
        store(cert::embedding_certificate(&entry, &emb));
        return false;
    }
    if r == 4 {
        if let Some((entry, emb)) = catalog::scan(g, &catalog::fig3_families(), g.n()) {
            store(cert::embedding_certificate(&entry, &emb));
            return false;
        }
    }
    true
}

/// Cross-validates Theorem 1 on one connected graph for one r >= 4.
pub fn cross_check_theorem1(
    g: &Graph,
    r: usize,
    opts: &CrossCheckOptions,
) -> CrossCheckReport {
    assert!(r >= 4, "Theorem 1 needs r >= 4");
    assert!(g.is_connected(), "Theorem 1 assumes a connected graph");
    let id = encode_graph6(g);
    let mut certs = serde_json::Map::new();
    let mut notes = Vec::new();

    let ball = ball_route_with_cert(g, r, opts, &mut certs);
    let fis = theorem1_fis_route(g, r, opts.collect_certificates.then_some(&mut certs));
    let outcome = ca::is_r_acyclic_ca(g, r);
    if let Some(d) = &outcome.discrepancy {
        notes.push(format!("representation route: {d}"));
    }
    let rep = outcome.is_r_acyclic();
    if opts.collect_certificates {
        if let Some((rep_obj, report)) = &outcome.rep {
            certs.insert(
                "representation".into(),
                json!({
                    "host": "cycle",
                    "m": rep_obj.host_len,
                    "arcs": rep_obj.arcs,
                    "min_cover": report.min_cover,
                }),
            );
        }
    }

    let cover_route = if opts.include_cover {
        let radius = opts.cover_radius.unwrap_or_else(|| cover::default_truncation_radius(r));
        let mut all = true;
        let mut per_base = Vec::new();
        for base in g.vertices() {
            match cover::truncated_cover_is_interval(g, r, base, radius) {
                Ok(b) => {
                    per_base.push(b);
                    all &= b;
                }
                Err(e) => {
                    notes.push(format!("cover route failed at base {base}: {e}"));
                    per_base.push(false);
                    all = false;
                }
            }
        }
        if per_base.iter().any(|&b| b) && per_base.iter().any(|&b| !b) {
            notes.push(format!("cover route disagrees across bases: {per_base:?}"));
        }
        Some(all)
    } else {
        None
    };

    let mut verdicts = vec![ball, fis, rep];
    if let Some(c) = cover_route {
        verdicts.push(c);
    }
    let agreement = verdicts.iter().all(|&v| v == verdicts[0]);
    CrossCheckReport {
        id,
        r,
        ball_route: ball,
        cover_route,
        fis_route: fis,
        rep_route: Some(rep),
        agreement,
        certificates: certs,
        notes,
    }
}

/// Cross-validates Theorem 2 (the r = 3 case) on one graph.
pub fn cross_check_theorem2(g: &Graph, opts: &CrossCheckOptions) -> CrossCheckReport {
    let id = encode_graph6(g);
    let mut certs = serde_json::Map::new();
    let ball = ball_route_with_cert(g, 3, opts, &mut certs);
    let fis = match recognition::is_3_locally_interval_fis(g) {
        Ok(()) => true,
        Err(w) => {
            if opts.collect_certificates {
                let v = match &w {
                    recognition::Not3LocallyInterval::Wheel(w) => cert::wheel_certificate(w),
                    recognition::Not3LocallyInterval::ApexedForbidden { entry, embedding } => {
                        cert::embedding_certificate(entry, embedding)
                    }
                };
                certs.insert("fis".into(), v);
            }
            false
        }
    };
    CrossCheckReport {
        id,
        r: 3,
        ball_route: ball,
        cover_route: None,
        fis_route: fis,
        rep_route: None,
        agreement: ball == fis,
        certificates: certs,
        notes: Vec::new(),
    }
}

/// Deterministic counterexample shrinking: repeatedly deletes the smallest
/// vertex whose removal keeps the predicate true.
pub fn shrink(g: &Graph, predicate: impl Fn(&Graph) -> bool) -> Graph {
    assert!(predicate(g), "shrink needs a graph satisfying the predicate");
    let mut current = g.clone();
    'outer: loop {
        for v in current.vertices() {
            let keep: Vec<usize> = current.vertices().filter(|&u| u != v).collect();
            let (candidate, _) = current.induced(&keep).expect("in range");
            if predicate(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub rs: Vec<usize>,
    pub theorem: TheoremSel,
    pub cross: CrossCheckOptions,
    pub jobs: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CorpusSummary {
    pub total_graphs: usize,
    pub checked: usize,
    pub skipped_disconnected: usize,
    /// (r, verdict combination) -> count
    pub tallies: std::collections::BTreeMap<String, usize>,
    pub disagreements: Vec<CrossCheckReport>,
}

impl CorpusSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "total_graphs": self.total_graphs,
            "checked": self.checked,
            "skipped_disconnected": self.skipped_disconnected,
            "tallies": self.tallies,
            "disagreements": self.disagreements.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            0
        } else {
            1
        }
    }
}

/// Parses a graph6 corpus into (id, graph) pairs; the id is the graph6 line.
pub fn load_corpus(text: &str) -> Result<Vec<(String, Graph)>, ParseError> {
    let graphs = parse_graph6(text)?;
    let ids = text
        .lines()
        .map(str::trim)
        .map(|l| l.strip_prefix(">>graph6<<").unwrap_or(l).trim())
        .filter(|l| !l.is_empty());
    Ok(ids.map(String::from).zip(graphs.into_iter().map(|(g)| g)).map(|(id, g)| (id, g)).collect())
}

/// Runs cross-checks over a corpus; disconnected graphs are skipped with a
/// note (the main equivalence assumes connected graphs). Reports come back
/// in input order; disagreements are collected, not fatal.
pub fn run_corpus(
    graphs: &[(String, Graph)],
    opts: &CorpusOptions,
) -> (Vec<CrossCheckReport>, CorpusSummary) {
    let mut summary = CorpusSummary { total_graphs: graphs.len(), ..Default::default() };
    let connected: Vec<&(String, Graph)> = graphs
        .iter()
        .filter(|(_, g)| {
            let ok = g.is_connected();
            ok
        })
        .collect();
    summary.skipped_disconnected = graphs.len() - connected.len();

    let tasks: Vec<(usize, &(String, Graph))> = connected.iter().copied().enumerate().collect();
    let run_one = |(idx, (id, g)): (usize, &(String, Graph))| -> Vec<(usize, CrossCheckReport)> {
        match opts.theorem {
            TheoremSel::T1 => opts
                .rs
                .iter()
                .map(|&r| {
                    let mut rep = cross_check_theorem1(g, r, &opts.cross);
                    rep.id = id.clone();
                    (idx, rep)
                })
                .collect(),
            TheoremSel::T2 => {
                let mut rep = cross_check_theorem2(g, &opts.cross);
                rep.id = id.clone();
                vec![(idx, rep)]
            }
        }
    };
    let mut reports: Vec<(usize, CrossCheckReport)> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().cloned().flat_map_iter(run_one).collect())
    } else {
        tasks.into_iter().flat_map(run_one).collect()
    };
    reports.sort_by_key(|(idx, rep)| (*idx, rep.r));
    let reports: Vec<CrossCheckReport> = reports.into_iter().map(|(_, r)| r).collect();

    for rep in &reports {
        summary.checked += 1;
        let combo = format!(
            "r={} ball={} fis={} rep={} cover={}",
            rep.r,
            rep.ball_route,
            rep.fis_route,
            rep.rep_route.map_or("skip".to_string(), |b| b.to_string()),
            rep.cover_route.map_or("skip".to_string(), |b| b.to_string()),
        );
        *summary.tallies.entry(combo).or_insert(0) += 1;
        if !rep.agreement {
            summary.disagreements.push(rep.clone());
        }
    }
    (reports, summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn random_graph_examples() {
        assert_eq!(random_graph(5, 0.0, 7).edge_count(), 0);
        assert_eq!(random_graph(5, 1.0, 7), complete_graph(5));
        assert_eq!(random_graph(8, 0.3, 42), random_graph(8, 0.3, 42));
        assert_ne!(random_graph(8, 0.5, 1), random_graph(8, 0.5, 2));
    }

    #[test]
    fn random_interval_graph_examples() {
        assert_eq!(random_interval_graph(6, 1, 3), complete_graph(6));
        assert_eq!(random_interval_graph(0, 5, 3).n(), 0);
        for seed in 0..30 {
            let g = random_interval_graph(12, 8, seed);
            assert!(recognition::is_interval(&g).is_interval(), "seed {seed}");
        }
    }

    #[test]
    fn enumeration_counts() {
        // all graphs up to isomorphism: 1, 2, 4, 11, 34, 156
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        // connected: 1, 1, 2, 6, 21, 112
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn cross_check_spot_values() {
        let opts = CrossCheckOptions::default();
        let rep = cross_check_theorem1(&cycle_graph(5), 4, &opts);
        assert!(rep.agreement && rep.ball_route);
        let rep = cross_check_theorem1(&cycle_graph(4), 4, &opts);
        assert!(rep.agreement && !rep.ball_route);
        let lc = catalog::generate(&catalog::Family::LongClaw, &[]).unwrap();
        let apexed = catalog::apex_augment(&lc);
        let rep = cross_check_theorem1(&apexed.graph, 4, &opts);
        assert!(rep.agreement && !rep.ball_route);
    }

    #[test]
    fn theorem2_spot_values() {
        let opts = CrossCheckOptions::default();
        let lc = catalog::generate(&catalog::Family::LongClaw, &[]).unwrap().graph;
        let rep = cross_check_theorem2(&lc, &opts);
        assert!(rep.agreement && rep.ball_route, "long claw is 3-locally interval");
        let w5 = catalog::generate(&catalog::Family::Wheel, &[5]).unwrap().graph;
        let rep = cross_check_theorem2(&w5, &opts);
        assert!(rep.agreement && !rep.ball_route);
    }

    #[test]
    fn shrink_contract() {
        // plant a C4 inside a bigger graph; shrinking "contains C4" yields C4
        let mut g = cycle_graph(4).disjoint_union(&complete_graph(3));
        g.insert_edge(0, 4);
        let has_c4 = |h: &Graph| {
            catalog::find_induced(&cycle_graph(4), h).is_some()
        };
        let small = shrink(&g, has_c4);
        assert_eq!(small.n(), 4);
        assert!(crate::canon::are_isomorphic(&small, &cycle_graph(4)));
        // fixpoint
        let again = shrink(&small, has_c4);
        assert_eq!(again.n(), 4);
    }

    #[test]
    fn corpus_runner_smoke() {
        let graphs: Vec<(String, Graph)> = enumerate_connected_graphs(5)
            .into_iter()
            .map(|g| (encode_graph6(&g), g))
            .collect();
        let opts = CorpusOptions {
            rs: vec![4, 5],
            theorem: TheoremSel::T1,
            cross: CrossCheckOptions { collect_certificates: false, ..Default::default() },
            jobs: 1,
        };
        let (reports, summary) = run_corpus(&graphs, &opts);
        assert_eq!(reports.len(), graphs.len() * 2);
        assert_eq!(summary.exit_code(), 0, "disagreements: {:?}", summary.disagreements);
    }
}
