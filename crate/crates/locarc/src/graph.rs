//! Finite simple undirected graphs on dense 0-based vertex ids, plus the
//! ball operator with the half-integral radius edge rule.
//!
//! Graphs are immutable after construction and cheap to clone at desk scale.
//! All certificates elsewhere in the crate refer to vertices of the graph they
//! were computed on; induced subgraphs and balls carry explicit label maps back
//! to the host graph.
//!
//! Conventions, used crate-wide: the graphs with n = 0 and n = 1 are legal
//! everywhere and count as connected, chordal and interval.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, validating ranges and rejecting
    /// self-loops. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n() && v < self.n());
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
        if let Err(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(pos, u);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbors of `v` in strictly increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Induced subgraph on `verts`. Returns the subgraph on 0..verts.len()
    /// together with the label map (subgraph index -> original vertex).
    /// The label map is the input deduplicated and sorted ascending.
    pub fn induced(&self, verts: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut map: Vec<usize> = verts.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&v) = map.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let mut inv = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for &w in self.neighbors(v) {
                if inv[w] != usize::MAX && inv[w] > i {
                    g.insert_edge(i, inv[w]);
                }
            }
        }
        Ok((g, map))
    }

    /// Breadth-first distances from `v`; unreachable vertices are `None`.
    pub fn distances_from(&self, v: usize) -> DistanceProfile {
        assert!(v < self.n(), "distances_from: vertex {v} out of range");
        let mut dist = vec![None; self.n()];
        dist[v] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        DistanceProfile { source: v, dist }
    }

    /// The ball B(v, r/2): vertices at distance at most floor(r/2) from `v`,
    /// edges xy with d(v,x) + d(v,y) < r, distances taken in `self`.
    pub fn ball(&self, v: usize, r: usize) -> Ball {
        assert!(v < self.n(), "ball: vertex {v} out of range");
        let profile = self.distances_from(v);
        let radius = r / 2;
        let verts: Vec<usize> = self
            .vertices()
            .filter(|&x| profile.dist[x].is_some_and(|d| d <= radius))
            .collect();
        let mut inv = vec![usize::MAX; self.n()];
        for (i, &x) in verts.iter().enumerate() {
            inv[x] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &x) in verts.iter().enumerate() {
            let dx = profile.dist[x].unwrap();
            for &y in self.neighbors(x) {
                if inv[y] != usize::MAX && inv[y] > i {
                    let dy = profile.dist[y].unwrap();
                    if dx + dy < r {
                        g.insert_edge(i, inv[y]);
                    }
                }
            }
        }
        Ball { center: v, radius_numerator: r, graph: g, vertex_map: verts }
    }

    /// True iff the graph is connected; true for n <= 1 by convention.
    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let profile = self.distances_from(0);
        profile.dist.iter().all(Option::is_some)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut g = Graph::empty(offset + other.n());
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + offset, v + offset);
        }
        g
    }

    /// Adjacency matrix as a flat row-major bool vector, for dense scans.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let n = self.n();
        let mut m = vec![false; n * n];
        for (u, v) in self.edges() {
            m[u * n + v] = true;
            m[v * n + u] = true;
        }
        m
    }
}

/// Breadth-first distances from a single source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceProfile {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }
}

/// The ball B(v, r/2) of a host graph, on its own dense vertex ids.
///
/// `vertex_map[i]` is the host vertex behind ball vertex `i`; the map is
/// strictly increasing. For odd `radius_numerator` the ball graph equals the
/// induced subgraph on its vertex set.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: usize,
    pub radius_numerator: usize,
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
}

impl Ball {
    /// Index of the center inside the ball graph.
    pub fn center_index(&self) -> usize {
        self.vertex_map.binary_search(&self.center).expect("center is in its own ball")
    }

    /// Maps a ball vertex back to the host graph.
    pub fn original(&self, ball_vertex: usize) -> usize {
        self.vertex_map[ball_vertex]
    }
}

/// The path on `n` vertices 0-1-...-(n-1).
pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.insert_edge(i - 1, i);
    }
    g
}

/// The cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle_graph needs n >= 3");
    let mut g = path_graph(n);
    g.insert_edge(n - 1, 0);
    g
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.insert_edge(u, v);
        }
    }
    g
}

/// K_{a,b} with parts {0..a} and {a..a+b}.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.insert_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_path() {
        let g = path_graph(3);
        let d = g.distances_from(0);
        assert_eq!(d.dist, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn distances_disconnected() {
        let g = Graph::empty(2);
        let d = g.distances_from(0);
        assert_eq!(d.dist, vec![Some(0), None]);
    }

    #[test]
    fn distances_cycle6() {
        let g = cycle_graph(6);
        let d = g.distances_from(0);
        let got: Vec<usize> = d.dist.iter().map(|x| x.unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn ball_c4_r4_is_whole_cycle() {
        let g = cycle_graph(4);
        let b = g.ball(0, 4);
        assert_eq!(b.vertex_map, vec![0, 1, 2, 3]);
        assert_eq!(b.graph.edge_count(), 4);
    }

    #[test]
    fn ball_c5_r4_is_p5() {
        let g = cycle_graph(5);
        let b = g.ball(0, 4);
        assert_eq!(b.vertex_map, vec![0, 1, 2, 3, 4]);
        // the edge between the two distance-2 vertices (2 and 3) is excluded
        assert_eq!(b.graph.edge_count(), 4);
        assert!(!b.graph.has_edge(2, 3));
        // a path: exactly two vertices of degree 1
        let deg1 = b.graph.vertices().filter(|&v| b.graph.degree(v) == 1).count();
        assert_eq!(deg1, 2);
    }

    #[test]
    fn ball_k1_big_radius() {
        let g = Graph::empty(1);
        let b = g.ball(0, 100);
        assert_eq!(b.graph.n(), 1);
        assert_eq!(b.vertex_map, vec![0]);
    }

    #[test]
    fn induced_examples() {
        let c4 = cycle_graph(4);
        let (p3, map) = c4.induced(&[0, 1, 2]).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(p3.edge_count(), 2);

        let (same, map) = c4.induced(&[3, 2, 1, 0]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(same, c4);

        let k4 = complete_graph(4);
        let (k2, _) = k4.induced(&[0, 1]).unwrap();
        assert_eq!(k2, complete_graph(2));

        assert!(matches!(
            c4.induced(&[0, 7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn connectivity_conventions() {
        assert!(cycle_graph(5).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 2 })
        );
        // duplicates merge
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    /// Direct evaluation of the ball definition against an independently
    /// computed all-pairs distance matrix.
    fn ball_by_definition(g: &Graph, v: usize, r: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
        // Floyd–Warshall, independent of the BFS used by `distances_from`.
        let n = g.n();
        const INF: usize = usize::MAX / 4;
        let mut d = vec![INF; n * n];
        for i in 0..n {
            d[i * n + i] = 0;
        }
        for (u, w) in g.edges() {
            d[u * n + w] = 1;
            d[w * n + u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i * n + k].saturating_add(d[k * n + j]);
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        let verts: Vec<usize> = (0..n).filter(|&x| d[v * n + x] <= r / 2).collect();
        let mut edges = Vec::new();
        for (x, y) in g.edges() {
            if verts.contains(&x) && verts.contains(&y) && d[v * n + x] + d[v * n + y] < r {
                edges.push((x, y));
            }
        }
        (verts, edges)
    }

    #[test]
    fn ball_matches_definition_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..120 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.insert_edge(u, v);
                    }
                }
            }
            let v = rng.gen_range(0..n);
            for r in 0..=8 {
                let ball = g.ball(v, r);
                let (verts, edges) = ball_by_definition(&g, v, r);
                assert_eq!(ball.vertex_map, verts);
                let got: Vec<(usize, usize)> = ball
                    .graph
                    .edges()
                    .map(|(a, b)| (ball.vertex_map[a], ball.vertex_map[b]))
                    .collect();
                assert_eq!(got, edges, "ball edge rule mismatch n={n} v={v} r={r}");
            }
        }
    }

    #[test]
    fn ball_odd_r_is_induced_and_balls_nest() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..80 {
            let n = rng.gen_range(1..=10);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.insert_edge(u, v);
                    }
                }
            }
            let v = rng.gen_range(0..n);
            for r in (1..=9).step_by(2) {
                let ball = g.ball(v, r);
                let (ind, map) = g.induced(&ball.vertex_map).unwrap();
                assert_eq!(map, ball.vertex_map);
                assert_eq!(ball.graph, ind, "odd-r ball must be induced (r={r})");
            }
            for r in 0..=8 {
                let small = g.ball(v, r);
                let big = g.ball(v, r + 1);
                // vertex- and edge-wise containment under the label maps
                for &x in &small.vertex_map {
                    assert!(big.vertex_map.contains(&x));
                }
                for (a, b) in small.graph.edges() {
                    let (oa, ob) = (small.vertex_map[a], small.vertex_map[b]);
                    let ia = big.vertex_map.binary_search(&oa).unwrap();
                    let ib = big.vertex_map.binary_search(&ob).unwrap();
                    assert!(big.graph.has_edge(ia, ib), "ball(r) must embed in ball(r+1)");
                }
            }
        }
    }
}
