//! Certifying recognizers: chordality with perfect elimination orders and
//! hole extraction, bounded-length hole search, wheel detection via
//! neighborhood chordality, asteroidal triples, interval recognition, and the
//! locally-chordal / locally-interval checkers.
//!
//! Every search iterates vertices in increasing label order, so witnesses are
//! deterministic, and every returned witness re-verifies against its graph.

use crate::ca::{self, IntervalRep};
use crate::catalog::{self, CatalogEntry, Embedding, Family};
use crate::graph::{Ball, Graph};

/// A perfect elimination order: eliminating vertices front to back, the later
/// neighbors of each vertex form a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
}

/// A chordless cycle of length >= 4, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleWitness {
    pub cycle: Vec<usize>,
}

/// An induced wheel: a hub adjacent to every vertex of a chordless cycle of
/// length >= 4 inside its neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelWitness {
    pub hub: usize,
    pub rim: HoleWitness,
}

/// Three pairwise nonadjacent vertices such that between any two there is a
/// path avoiding the closed neighborhood of the third.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsteroidalTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Debug)]
pub enum ChordalityResult {
    Chordal(EliminationOrder),
    Hole(HoleWitness),
}

impl ChordalityResult {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityResult::Chordal(_))
    }
}

/// Maximum-cardinality search. Returns the visit order; its reverse is a
/// perfect elimination order whenever the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Decides chordality by maximum-cardinality search plus elimination
/// verification; on failure extracts a chordless cycle of length >= 4.
pub fn chordality(g: &Graph) -> ChordalityResult {
    let mut order = mcs_order(g);
    order.reverse();
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &order {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for i in 0..later.len() {
            for j in i + 1..later.len() {
                let (x, y) = (later[i], later[j]);
                if !g.has_edge(x, y) {
                    let hole = extract_hole(g, v, x, y)
                        .or_else(|| find_hole(g))
                        .expect("elimination failure implies a hole exists");
                    debug_assert!(verify_hole(g, &hole.cycle));
                    return ChordalityResult::Hole(hole);
                }
            }
        }
    }
    ChordalityResult::Chordal(EliminationOrder { order })
}

/// Builds a hole from a failed elimination step: v sees nonadjacent x, y, and
/// a shortest x-y path avoiding N[v] closes a chordless cycle through v.
fn extract_hole(g: &Graph, v: usize, x: usize, y: usize) -> Option<HoleWitness> {
    let n = g.n();
    let mut allowed = vec![true; n];
    allowed[v] = false;
    for &u in g.neighbors(v) {
        allowed[u] = false;
    }
    allowed[x] = true;
    allowed[y] = true;
    // BFS from x to y within the allowed set.
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    parent[x] = x;
    queue.push_back(x);
    while let Some(u) = queue.pop_front() {
        if u == y {
            break;
        }
        for &w in g.neighbors(u) {
            if allowed[w] && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if parent[y] == usize::MAX {
        return None;
    }
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = parent[cur];
        path.push(cur);
    }
    path.push(v);
    path.reverse(); // v, x, ..., y
    let hole = HoleWitness { cycle: path };
    verify_hole(g, &hole.cycle).then_some(hole)
}

/// Checks that `order` is a perfect elimination order of `g`.
pub fn verify_elimination_order(g: &Graph, order: &EliminationOrder) -> bool {
    let n = g.n();
    let order = &order.order;
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for i in 0..later.len() {
            for j in i + 1..later.len() {
                if !g.has_edge(later[i], later[j]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that `cycle` is a chordless cycle of length >= 4 in `g`.
pub fn verify_hole(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for &v in cycle {
        if v >= g.n() || !seen.insert(v) {
            return false;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

pub fn verify_wheel(g: &Graph, w: &WheelWitness) -> bool {
    if w.hub >= g.n() || !verify_hole(g, &w.rim.cycle) {
        return false;
    }
    w.rim.cycle.iter().all(|&v| g.has_edge(w.hub, v))
}

/// Finds a chordless cycle of length in [4, r], if any, by guarded DFS over
/// chordless paths. The first hole in increasing-start order is returned.
pub fn find_short_hole(g: &Graph, r: usize) -> Option<HoleWitness> {
    assert!(r >= 4, "find_short_hole needs r >= 4");
    let n = g.n();
    if n < 4 {
        return None;
    }
    let cap = r.min(n);
    let adj = g.adjacency_matrix();
    let mut path: Vec<usize> = Vec::with_capacity(cap);
    let mut in_path = vec![false; n];

    fn dfs(
        g: &Graph,
        adj: &[bool],
        n: usize,
        cap: usize,
        a: usize,
        path: &mut Vec<usize>,
        in_path: &mut Vec<bool>,
    ) -> Option<Vec<usize>> {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w <= a || in_path[w] {
                continue;
            }
            // chordless: w may touch only the path's last vertex (and possibly
            // the start, which closes the cycle)
            if path[1..path.len() - 1].iter().any(|&p| adj[w * n + p]) {
                continue;
            }
            let closes = adj[w * n + a];
            if closes {
                if path.len() + 1 >= 4 {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    return Some(cycle);
                }
                // a triangle chord: w cannot be interior to any hole through a
                continue;
            }
            if path.len() + 1 <= cap - 1 {
                path.push(w);
                in_path[w] = true;
                if let Some(c) = dfs(g, adj, n, cap, a, path, in_path) {
                    return Some(c);
                }
                in_path[w] = false;
                path.pop();
            }
        }
        None
    }

    for a in 0..n {
        path.clear();
        path.push(a);
        in_path.fill(false);
        in_path[a] = true;
        if let Some(cycle) = dfs(g, &adj, n, cap, a, &mut path, &mut in_path) {
            let hole = HoleWitness { cycle };
            debug_assert!(verify_hole(g, &hole.cycle));
            return Some(hole);
        }
    }
    None
}

/// Finds a chordless cycle of any length >= 4.
pub fn find_hole(g: &Graph) -> Option<HoleWitness> {
    if g.n() < 4 {
        return None;
    }
    find_short_hole(g, g.n().max(4))
}

/// Finds an induced wheel, scanning hubs in increasing order: the graph has
/// an induced W_n (n >= 4) with hub v iff the neighborhood of v induces a
/// non-chordal graph.
pub fn find_wheel(g: &Graph) -> Option<WheelWitness> {
    for v in g.vertices() {
        let (nbhd, map) = g.induced(g.neighbors(v)).expect("neighbors are in range");
        if let ChordalityResult::Hole(hole) = chordality(&nbhd) {
            let rim = HoleWitness { cycle: hole.cycle.iter().map(|&i| map[i]).collect() };
            let w = WheelWitness { hub: v, rim };
            debug_assert!(verify_wheel(g, &w));
            return Some(w);
        }
    }
    None
}

pub fn is_wheel_free(g: &Graph) -> bool {
    find_wheel(g).is_none()
}

/// O(n^3)-style definition scan for an asteroidal triple. For every vertex z
/// the components of G - N[z] are computed; (a, b, c) is asteroidal iff each
/// pair lies in one component of the graph minus the third's closed
/// neighborhood.
pub fn find_asteroidal_triple(g: &Graph) -> Option<AsteroidalTriple> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    // comp[z][v]: component id of v in G - N[z], or MAX if v in N[z]
    let mut comp = vec![vec![usize::MAX; n]; n];
    for z in 0..n {
        let mut blocked = vec![false; n];
        blocked[z] = true;
        for &u in g.neighbors(z) {
            blocked[u] = true;
        }
        let mut id = 0;
        for s in 0..n {
            if blocked[s] || comp[z][s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[z][s] = id;
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !blocked[w] && comp[z][w] == usize::MAX {
                        comp[z][w] = id;
                        stack.push(w);
                    }
                }
            }
            id += 1;
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) || g.has_edge(b, c) {
                    continue;
                }
                if comp[c][a] == comp[c][b] && comp[b][a] == comp[b][c] && comp[a][b] == comp[a][c] {
                    return Some(AsteroidalTriple { a, b, c });
                }
            }
        }
    }
    None
}

pub fn verify_asteroidal_triple(g: &Graph, t: &AsteroidalTriple) -> bool {
    let path_avoiding = |from: usize, to: usize, avoid: usize| -> bool {
        let mut blocked = vec![false; g.n()];
        blocked[avoid] = true;
        for &u in g.neighbors(avoid) {
            blocked[u] = true;
        }
        if blocked[from] || blocked[to] {
            return false;
        }
        let mut seen = vec![false; g.n()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &w in g.neighbors(u) {
                if !blocked[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    };
    let (a, b, c) = (t.a, t.b, t.c);
    a != b
        && a != c
        && b != c
        && !g.has_edge(a, b)
        && !g.has_edge(a, c)
        && !g.has_edge(b, c)
        && path_avoiding(a, b, c)
        && path_avoiding(a, c, b)
        && path_avoiding(b, c, a)
}

/// Independent interval-graph oracle: chordal and asteroidal-triple-free.
pub fn is_interval_oracle(g: &Graph) -> bool {
    chordality(g).is_chordal() && find_asteroidal_triple(g).is_none()
}

/// A ball of the host graph whose graph is not chordal (or not interval),
/// with the witness mapped back to original labels.
#[derive(Clone, Debug)]
pub struct BadBall<W> {
    pub center: usize,
    pub radius_numerator: usize,
    pub witness: W,
}

/// Route A for locally chordal: every ball B(v, r/2) is chordal. The hole
/// witness is expressed in original vertex labels; it is a hole of the ball,
/// not necessarily of the host graph.
pub fn is_r_locally_chordal(g: &Graph, r: usize) -> Result<(), BadBall<HoleWitness>> {
    assert!(r >= 3, "locally chordal needs r >= 3");
    for v in g.vertices() {
        let ball = g.ball(v, r);
        if let ChordalityResult::Hole(h) = chordality(&ball.graph) {
            let cycle = h.cycle.iter().map(|&i| ball.vertex_map[i]).collect();
            return Err(BadBall { center: v, radius_numerator: r, witness: HoleWitness { cycle } });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum NotLocallyChordal {
    ShortHole(HoleWitness),
    Wheel(WheelWitness),
}

/// Route B for locally chordal: r-chordal and wheel-free.
pub fn is_r_locally_chordal_fis(g: &Graph, r: usize) -> Result<(), NotLocallyChordal> {
    assert!(r >= 3, "locally chordal needs r >= 3");
    if r >= 4 {
        if let Some(h) = find_short_hole(g, r) {
            return Err(NotLocallyChordal::ShortHole(h));
        }
    }
    match find_wheel(g) {
        Some(w) => Err(NotLocallyChordal::Wheel(w)),
        None => Ok(()),
    }
}

/// Re-verifies a locally-chordal ball witness against the host graph.
pub fn verify_ball_hole(g: &Graph, bad: &BadBall<HoleWitness>) -> bool {
    if bad.center >= g.n() {
        return false;
    }
    let ball = g.ball(bad.center, bad.radius_numerator);
    let mut cycle = Vec::with_capacity(bad.witness.cycle.len());
    for &orig in &bad.witness.cycle {
        match ball.vertex_map.binary_search(&orig) {
            Ok(i) => cycle.push(i),
            Err(_) => return false,
        }
    }
    verify_hole(&ball.graph, &cycle)
}

/// Outcome of interval recognition: a verified representation or a
/// certificate of non-intervalness.
#[derive(Clone, Debug)]
pub enum IntervalResult {
    Interval(IntervalRep),
    NotInterval(NonIntervalWitness),
}

impl IntervalResult {
    pub fn is_interval(&self) -> bool {
        matches!(self, IntervalResult::Interval(_))
    }
}

#[derive(Clone, Debug)]
pub enum NonIntervalWitness {
    Hole(HoleWitness),
    ForbiddenInduced { entry: CatalogEntry, embedding: Embedding },
}

/// Interval recognition: chordality plus exclusion of the minimal chordal
/// non-interval graphs. On success returns a verified interval
/// representation; on failure a hole or a catalog embedding.
pub fn is_interval(g: &Graph) -> IntervalResult {
    if let ChordalityResult::Hole(h) = chordality(g) {
        return IntervalResult::NotInterval(NonIntervalWitness::Hole(h));
    }
    if let Some(rep) = ca::build_interval_rep(g) {
        return IntervalResult::Interval(rep);
    }
    // Chordal but not interval: a minimal chordal non-interval graph embeds.
    match catalog::scan(g, &catalog::fig1_families(), g.n()) {
        Some((entry, embedding)) => {
            IntervalResult::NotInterval(NonIntervalWitness::ForbiddenInduced { entry, embedding })
        }
        None => unreachable!(
            "defect: chordal graph with no interval representation must contain a minimal \
             chordal non-interval graph"
        ),
    }
}

/// Locally interval: every ball B(v, r/2) is an interval graph. On failure
/// the first bad ball (by center) and its certificate, in the ball's own
/// labels mapped to the host.
pub fn is_r_locally_interval(g: &Graph, r: usize) -> Result<(), BadBall<NonIntervalWitness>> {
    for v in g.vertices() {
        let ball = g.ball(v, r);
        if let IntervalResult::NotInterval(w) = is_interval(&ball.graph) {
            return Err(BadBall {
                center: v,
                radius_numerator: r,
                witness: relabel_witness(w, &ball),
            });
        }
    }
    Ok(())
}

fn relabel_witness(w: NonIntervalWitness, ball: &Ball) -> NonIntervalWitness {
    match w {
        NonIntervalWitness::Hole(h) => NonIntervalWitness::Hole(HoleWitness {
            cycle: h.cycle.iter().map(|&i| ball.vertex_map[i]).collect(),
        }),
        NonIntervalWitness::ForbiddenInduced { entry, embedding } => {
            NonIntervalWitness::ForbiddenInduced {
                entry,
                embedding: Embedding {
                    mapping: embedding.mapping.iter().map(|&i| ball.vertex_map[i]).collect(),
                },
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Not3LocallyInterval {
    Wheel(WheelWitness),
    ApexedForbidden { entry: CatalogEntry, embedding: Embedding },
}

/// The forbidden-subgraph route for 3-locally interval: wheel-free and no
/// apex-augmented minimal chordal non-interval graph as induced subgraph.
pub fn is_3_locally_interval_fis(g: &Graph) -> Result<(), Not3LocallyInterval> {
    if let Some(w) = find_wheel(g) {
        return Err(Not3LocallyInterval::Wheel(w));
    }
    if g.n() >= 7 {
        // smallest Fig 1 member has 6 vertices, so apexed members need n >= 7
        for entry in catalog::members_upto(&catalog::fig1_families(), g.n() - 1) {
            let apexed = catalog::apex_augment(&entry);
            if let Some(embedding) = catalog::find_induced(&apexed.graph, g) {
                return Err(Not3LocallyInterval::ApexedForbidden { entry: apexed, embedding });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};

    fn domino() -> Graph {
        // two squares sharing an edge: hexagon 0-1-2-3-4-5 plus the chord 0-3
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap()
    }

    fn bipartite_claw() -> Graph {
        Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn chordality_k4_and_c4() {
        match chordality(&complete_graph(4)) {
            ChordalityResult::Chordal(order) => {
                assert!(verify_elimination_order(&complete_graph(4), &order))
            }
            _ => panic!("K4 is chordal"),
        }
        match chordality(&cycle_graph(4)) {
            ChordalityResult::Hole(h) => {
                assert_eq!(h.cycle.len(), 4);
                assert!(verify_hole(&cycle_graph(4), &h.cycle));
            }
            _ => panic!("C4 has a hole"),
        }
    }

    #[test]
    fn chordality_domino_has_hole() {
        match chordality(&domino()) {
            ChordalityResult::Hole(h) => assert!(verify_hole(&domino(), &h.cycle)),
            _ => panic!("domino contains C4"),
        }
    }

    #[test]
    fn chordality_random_cross_check() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v);
                    }
                }
            }
            match chordality(&g) {
                ChordalityResult::Chordal(order) => {
                    assert!(verify_elimination_order(&g, &order));
                    assert!(find_hole(&g).is_none(), "PEO found but a hole exists: {g:?}");
                }
                ChordalityResult::Hole(h) => assert!(verify_hole(&g, &h.cycle)),
            }
        }
    }

    #[test]
    fn short_holes() {
        assert!(find_short_hole(&cycle_graph(5), 4).is_none());
        let h = find_short_hole(&cycle_graph(5), 5).unwrap();
        assert_eq!(h.cycle.len(), 5);
        let h = find_short_hole(&cycle_graph(4), 4).unwrap();
        assert_eq!(h.cycle.len(), 4);
        // chordal graphs have no holes at any r
        for g in [complete_graph(5), path_graph(6), bipartite_claw()] {
            for r in 4..=8 {
                assert!(find_short_hole(&g, r).is_none());
            }
        }
    }

    #[test]
    fn wheels() {
        // W4: rim C4 = 0..3, hub 4
        let w4 = Graph::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)],
        )
        .unwrap();
        let w = find_wheel(&w4).unwrap();
        assert!(verify_wheel(&w4, &w));
        assert_eq!(w.rim.cycle.len(), 4);

        // W3 = K4 is not a wheel in this sense
        assert!(is_wheel_free(&complete_graph(4)));
        assert!(is_wheel_free(&bipartite_claw()));
        assert!(is_wheel_free(&path_graph(8)));
    }

    #[test]
    fn asteroidal_triples() {
        let t = find_asteroidal_triple(&bipartite_claw()).unwrap();
        assert!(verify_asteroidal_triple(&bipartite_claw(), &t));
        assert_eq!((t.a, t.b, t.c), (4, 5, 6));
        assert!(find_asteroidal_triple(&path_graph(7)).is_none());
        assert!(find_asteroidal_triple(&complete_graph(5)).is_none());
        // C6 has an asteroidal triple (alternating vertices)
        assert!(find_asteroidal_triple(&cycle_graph(6)).is_some());
    }

    #[test]
    fn locally_chordal_examples() {
        assert!(is_r_locally_chordal(&cycle_graph(6), 4).is_ok());
        assert!(is_r_locally_chordal(&cycle_graph(6), 6).is_err());
        assert!(is_r_locally_chordal(&cycle_graph(4), 4).is_err());
        for g in [complete_graph(5), path_graph(6), bipartite_claw()] {
            for r in 3..=8 {
                assert!(is_r_locally_chordal(&g, r).is_ok());
            }
        }
    }

    #[test]
    fn locally_chordal_witness_verifies() {
        let g = cycle_graph(4);
        let bad = is_r_locally_chordal(&g, 4).unwrap_err();
        assert!(verify_ball_hole(&g, &bad));
    }

    #[test]
    fn locally_chordal_routes_agree_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v);
                    }
                }
            }
            for r in 3..=8 {
                let a = is_r_locally_chordal(&g, r).is_ok();
                let b = is_r_locally_chordal_fis(&g, r).is_ok();
                assert_eq!(a, b, "route disagreement on {g:?} r={r}");
            }
        }
    }
}
