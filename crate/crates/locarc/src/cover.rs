//! Truncated construction of the r-local cover by walk classes.
//!
//! Cover vertices are equivalence classes of walks from a base vertex, where
//! the equivalence is generated by (a) insertion/deletion of immediate
//! backtracks and (b) replacing a subwalk by another subwalk with the same
//! endpoints when both lie inside a single ball B(z, r/2). Classes are
//! canonicalized by monotone rewriting to a shortlex-minimal representative;
//! the verifiers below make the construction self-checking per instance.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::Graph;
use crate::recognition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("the graph must be connected")]
    Disconnected,
    #[error("truncation radius {given} too small: need at least ceil(r/2) = {need}")]
    RadiusTooSmall { given: usize, need: usize },
    #[error("base vertex {0} out of range")]
    BadBase(usize),
    #[error("rewrite budget exhausted while canonicalizing a walk class")]
    BudgetExhausted,
}

/// A truncated fragment of the r-local cover around a lift of `base_vertex`.
#[derive(Clone, Debug)]
pub struct CoverFragment {
    pub cover_graph: Graph,
    /// cover vertex -> vertex of the base graph (walk endpoint)
    pub projection: Vec<usize>,
    /// cover vertex id of the base lift
    pub base: usize,
    pub base_vertex: usize,
    /// BFS depth from the base lift inside the fragment
    pub depth: Vec<usize>,
    pub truncation_radius: usize,
    pub r: usize,
    /// canonical representative walk of each class, for debugging dumps
    pub classes: Vec<Vec<usize>>,
}

const REWRITE_BUDGET: usize = 100_000;

/// Rewriting context: ball edge sets of the base graph for one fixed r.
struct Rewriter<'a> {
    g: &'a Graph,
    /// ball_edges[z][u * n + v]: edge uv lies in B(z, r/2)
    ball_edges: Vec<Vec<bool>>,
    memo: HashMap<Vec<usize>, Vec<usize>>,
}

impl<'a> Rewriter<'a> {
    fn new(g: &'a Graph, r: usize) -> Self {
        let n = g.n();
        let mut ball_edges = Vec::with_capacity(n);
        for z in 0..n {
            let ball = g.ball(z, r);
            let mut m = vec![false; n * n];
            for (a, b) in ball.graph.edges() {
                let (oa, ob) = (ball.vertex_map[a], ball.vertex_map[b]);
                m[oa * n + ob] = true;
                m[ob * n + oa] = true;
            }
            ball_edges.push(m);
        }
        Rewriter { g, ball_edges, memo: HashMap::new() }
    }

    /// Shortlex-minimal representative reachable by monotone rewriting:
    /// backtrack deletion and in-ball subwalk replacement by a strictly
    /// shorter walk or an equal-length lexicographically smaller one.
    fn canonicalize(&mut self, walk: Vec<usize>) -> Result<Vec<usize>, CoverError> {
        if let Some(c) = self.memo.get(&walk) {
            return Ok(c.clone());
        }
        let original = walk.clone();
        let mut w = walk;
        let mut steps = 0usize;
        loop {
            steps += 1;
            if steps > REWRITE_BUDGET {
                return Err(CoverError::BudgetExhausted);
            }
            let mut best: Option<Vec<usize>> = None;
            let mut consider = |cand: Vec<usize>, best: &mut Option<Vec<usize>>| {
                if shortlex_less(&cand, &w) && best.as_ref().is_none_or(|b| shortlex_less(&cand, b))
                {
                    *best = Some(cand);
                }
            };
            // backtrack deletion
            for i in 0..w.len().saturating_sub(2) {
                if w[i] == w[i + 2] {
                    let mut cand = w[..=i].to_vec();
                    cand.extend_from_slice(&w[i + 3..]);
                    consider(cand, &mut best);
                }
            }
            // in-ball subwalk replacement
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    for z in self.balls_containing(&w[i..=j]) {
                        if let Some(sub) = self.min_replacement(z, w[i], w[j], j - i, &w[i..=j]) {
                            let mut cand = w[..i].to_vec();
                            cand.extend_from_slice(&sub);
                            cand.extend_from_slice(&w[j + 1..]);
                            consider(cand, &mut best);
                        }
                    }
                }
            }
            match best {
                Some(better) => w = better,
                None => break,
            }
        }
        self.memo.insert(original, w.clone());
        Ok(w)
    }

    /// Centers z whose ball contains every edge of the subwalk.
    fn balls_containing(&self, sub: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        (0..n)
            .filter(|&z| {
                sub.windows(2).all(|e| self.ball_edges[z][e[0] * n + e[1]])
            })
            .collect()
    }

    /// The best replacement walk from u to v inside ball(z) with length at
    /// most `len`: the shortlex-minimal one, or None if nothing beats the
    /// current subwalk.
    fn min_replacement(
        &self,
        z: usize,
        u: usize,
        v: usize,
        len: usize,
        current: &[usize],
    ) -> Option<Vec<usize>> {
        let n = self.g.n();
        let edges = &self.ball_edges[z];
        // lex-min walk of each length t from u to every vertex, t <= len
        let mut prev: Vec<Option<Vec<usize>>> = vec![None; n];
        prev[u] = Some(vec![u]);
        let mut best: Option<Vec<usize>> = None;
        for _t in 1..=len {
            let mut next: Vec<Option<Vec<usize>>> = vec![None; n];
            for x in 0..n {
                if let Some(wx) = &prev[x] {
                    for &y in self.g.neighbors(x) {
                        if !edges[x * n + y] {
                            continue;
                        }
                        let mut cand = wx.clone();
                        cand.push(y);
                        if next[y].as_ref().is_none_or(|c| cand < *c) {
                            next[y] = Some(cand);
                        }
                    }
                }
            }
            if let Some(wv) = &next[v] {
                if best.as_ref().is_none_or(|b| shortlex_less(wv, b)) {
                    best = Some(wv.clone());
                }
            }
            prev = next;
        }
        // trivial walk for u == v
        if u == v {
            let single = vec![u];
            if best.as_ref().is_none_or(|b| shortlex_less(&single, b)) {
                best = Some(single);
            }
        }
        match best {
            Some(b) if shortlex_less(&b, current) => Some(b),
            _ => None,
        }
    }
}

fn shortlex_less(a: &[usize], b: &[usize]) -> bool {
    (a.len(), a) < (b.len(), b)
}

/// Builds the truncated r-local cover fragment: classes of walks from `base`
/// whose canonical representative has length at most `truncation_radius`.
pub fn truncated_local_cover(
    g: &Graph,
    r: usize,
    base: usize,
    truncation_radius: usize,
) -> Result<CoverFragment, CoverError> {
    assert!(r >= 1, "local cover needs r >= 1");
    if base >= g.n() {
        return Err(CoverError::BadBase(base));
    }
    if !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let need = r.div_ceil(2);
    if truncation_radius < need {
        return Err(CoverError::RadiusTooSmall { given: truncation_radius, need });
    }
    let mut rw = Rewriter::new(g, r);
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let root = vec![base];
    class_of.insert(root.clone(), 0);
    classes.push(root.clone());
    let mut queue = VecDeque::from([0usize]);
    let mut head = 0;
    while head < queue.len() {
        let cid = queue[head];
        head += 1;
        let w = classes[cid].clone();
        if w.len() > truncation_radius {
            continue;
        }
        let endpoint = *w.last().unwrap();
        for &x in g.neighbors(endpoint) {
            let mut ext = w.clone();
            ext.push(x);
            let canon = rw.canonicalize(ext)?;
            if canon.len() - 1 > truncation_radius {
                continue;
            }
            let nid = match class_of.get(&canon) {
                Some(&id) => id,
                None => {
                    let id = classes.len();
                    class_of.insert(canon.clone(), id);
                    classes.push(canon);
                    queue.push_back(id);
                    id
                }
            };
            if nid != cid {
                edges.push((cid.min(nid), cid.max(nid)));
            }
        }
    }
    let mut cover = Graph::empty(classes.len());
    for (u, v) in edges {
        cover.insert_edge(u, v);
    }
    let projection: Vec<usize> = classes.iter().map(|w| *w.last().unwrap()).collect();
    let depth_profile = cover.distances_from(0);
    let depth: Vec<usize> =
        depth_profile.dist.iter().map(|d| d.expect("fragment is connected")).collect();
    Ok(CoverFragment {
        cover_graph: cover,
        projection,
        base: 0,
        base_vertex: base,
        depth,
        truncation_radius,
        r,
        classes,
    })
}

/// Checks the covering condition away from the truncation boundary: at every
/// cover vertex of depth < R the projection restricts to a bijection between
/// the edge stars. Returns the first offending cover vertex.
pub fn verify_covering(g: &Graph, frag: &CoverFragment) -> Result<(), usize> {
    for c in frag.cover_graph.vertices() {
        if frag.depth[c] >= frag.truncation_radius {
            continue;
        }
        let mut image: Vec<usize> =
            frag.cover_graph.neighbors(c).iter().map(|&d| frag.projection[d]).collect();
        image.sort_unstable();
        let has_dup = image.windows(2).any(|w| w[0] == w[1]);
        let want: Vec<usize> = g.neighbors(frag.projection[c]).to_vec();
        if has_dup || image != want {
            return Err(c);
        }
    }
    Ok(())
}

/// Checks ball preservation for every cover vertex far enough from the
/// boundary: the projection restricted to B(c, r/2) of the fragment is an
/// isomorphism onto B(p(c), r/2) of the base graph.
pub fn verify_ball_preserving(g: &Graph, frag: &CoverFragment, r: usize) -> Result<(), usize> {
    let margin = r.div_ceil(2);
    for c in frag.cover_graph.vertices() {
        if frag.depth[c] + margin > frag.truncation_radius {
            continue;
        }
        let cover_ball = frag.cover_graph.ball(c, r);
        let base_ball = g.ball(frag.projection[c], r);
        // vertex sets must biject under the projection
        let mut image: Vec<usize> =
            cover_ball.vertex_map.iter().map(|&x| frag.projection[x]).collect();
        image.sort_unstable();
        let has_dup = image.windows(2).any(|w| w[0] == w[1]);
        if has_dup || image != base_ball.vertex_map {
            return Err(c);
        }
        // edges must correspond both ways
        let to_base_idx = |cover_ball_idx: usize| -> usize {
            let orig = frag.projection[cover_ball.vertex_map[cover_ball_idx]];
            base_ball.vertex_map.binary_search(&orig).unwrap()
        };
        if cover_ball.graph.edge_count() != base_ball.graph.edge_count() {
            return Err(c);
        }
        for (a, b) in cover_ball.graph.edges() {
            if !base_ball.graph.has_edge(to_base_idx(a), to_base_idx(b)) {
                return Err(c);
            }
        }
    }
    Ok(())
}

/// Theorem-1 route (ii), truncated: is the cover fragment an interval graph?
pub fn truncated_cover_is_interval(
    g: &Graph,
    r: usize,
    base: usize,
    truncation_radius: usize,
) -> Result<bool, CoverError> {
    let frag = truncated_local_cover(g, r, base, truncation_radius)?;
    Ok(recognition::is_interval(&frag.cover_graph).is_interval())
}

/// The default truncation radius: the smallest at which intervalness of the
/// fragment is informative, ceil(r/2) + 3.
pub fn default_truncation_radius(r: usize) -> usize {
    r.div_ceil(2) + 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};

    #[test]
    fn tree_cover_is_the_tree() {
        // trees have no nontrivial covers
        let t = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        for r in [1, 3, 4, 6] {
            let frag = truncated_local_cover(&t, r, 0, 8).unwrap();
            assert!(are_isomorphic(&frag.cover_graph, &t), "r={r}");
            assert!(verify_covering(&t, &frag).is_ok());
            assert!(verify_ball_preserving(&t, &frag, r).is_ok());
        }
    }

    #[test]
    fn c6_r4_unrolls_to_a_path() {
        let g = cycle_graph(6);
        let frag = truncated_local_cover(&g, 4, 0, 4).unwrap();
        // 4-balls of C6 are paths, so the cycle must not close: a path of
        // length 2*4 around the base lift
        assert!(are_isomorphic(&frag.cover_graph, &path_graph(9)));
        assert!(verify_covering(&g, &frag).is_ok());
        assert!(verify_ball_preserving(&g, &frag, 4).is_ok());
    }

    #[test]
    fn c6_r7_closes_into_c6() {
        let g = cycle_graph(6);
        let frag = truncated_local_cover(&g, 7, 0, 4).unwrap();
        assert!(are_isomorphic(&frag.cover_graph, &g));
        assert!(verify_covering(&g, &frag).is_ok());
        assert!(verify_ball_preserving(&g, &frag, 7).is_ok());
    }

    #[test]
    fn k4_plain_universal_cover_is_not_ball_preserving_for_r3() {
        // with r = 1 the construction degenerates to (a truncation of) the
        // plain universal cover, whose 3/2-balls are trees; K4's are not
        let g = complete_graph(4);
        let frag = truncated_local_cover(&g, 1, 0, 3).unwrap();
        assert!(verify_covering(&g, &frag).is_ok());
        assert!(verify_ball_preserving(&g, &frag, 3).is_err());
    }

    #[test]
    fn k4_r3_cover_is_k4() {
        let g = complete_graph(4);
        let frag = truncated_local_cover(&g, 3, 0, 4).unwrap();
        assert!(are_isomorphic(&frag.cover_graph, &g));
        assert!(verify_ball_preserving(&g, &frag, 3).is_ok());
    }

    #[test]
    fn fragment_with_deleted_edge_fails_verification() {
        let g = cycle_graph(6);
        let mut frag = truncated_local_cover(&g, 4, 0, 4).unwrap();
        // drop an interior edge
        let (u, v) = frag.cover_graph.edges().next().unwrap();
        let mut edges: Vec<(usize, usize)> = frag.cover_graph.edges().collect();
        edges.retain(|&e| e != (u, v));
        frag.cover_graph = Graph::from_edges(frag.cover_graph.n(), &edges).unwrap();
        assert!(verify_covering(&g, &frag).is_err());
    }

    #[test]
    fn errors() {
        let g = Graph::empty(2);
        assert!(matches!(truncated_local_cover(&g, 4, 0, 5), Err(CoverError::Disconnected)));
        let g = cycle_graph(4);
        assert!(matches!(
            truncated_local_cover(&g, 6, 0, 2),
            Err(CoverError::RadiusTooSmall { given: 2, need: 3 })
        ));
        assert!(matches!(truncated_local_cover(&g, 4, 9, 5), Err(CoverError::BadBase(9))));
    }

    #[test]
    fn cover_intervalness_matches_local_intervalness_spot() {
        // C6 at r=4: locally interval, fragment is a path (interval)
        assert!(truncated_cover_is_interval(&cycle_graph(6), 4, 0, 5).unwrap());
        // C4 at r=4: not locally interval, fragment not interval
        assert!(!truncated_cover_is_interval(&cycle_graph(4), 4, 0, 5).unwrap());
    }
}
