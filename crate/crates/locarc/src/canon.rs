//! Canonical forms for small graphs, used to deduplicate catalog members and
//! to enumerate corpora up to isomorphism.
//!
//! Individualization–refinement: iterated color refinement by neighbor color
//! multisets, branching on the first non-singleton class, taking the
//! lexicographically smallest adjacency matrix over all discrete leaves.
//! Adequate for patterns up to ~20 vertices and exhaustive small-n corpora.

use crate::graph::Graph;

const MAX_N: usize = 64;

/// Canonical key: `[n, row_0, ..., row_{n-1}]` of the canonically relabeled
/// adjacency matrix. Two graphs are isomorphic iff their keys are equal.
pub fn canonical_key(g: &Graph) -> Vec<u64> {
    let order = canonical_order(g);
    key_under_order(g, &order)
}

/// The graph relabeled into canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Graph::empty(g.n());
    for (u, v) in g.edges() {
        out.insert_edge(pos[u], pos[v]);
    }
    out
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b)
}

fn key_under_order(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut key = Vec::with_capacity(n + 1);
    key.push(n as u64);
    let mut rows = vec![0u64; n];
    for (u, v) in g.edges() {
        rows[pos[u]] |= 1 << pos[v];
        rows[pos[v]] |= 1 << pos[u];
    }
    key.extend(rows);
    key
}

fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    assert!(n <= MAX_N, "canonical forms supported up to {MAX_N} vertices");
    if n == 0 {
        return Vec::new();
    }
    // Complete and empty graphs: every order is canonical.
    let e = g.edge_count();
    if e == 0 || e == n * (n - 1) / 2 {
        return (0..n).collect();
    }
    let initial = refine(g, vec![0; n]);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    branch(g, initial, &mut best);
    best.expect("at least one discrete leaf").1
}

/// Refines colors by (color, sorted neighbor color multiset) to a fixpoint.
/// Colors are dense and ordered by signature, so refinement is canonical.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut new_colors = vec![0usize; n];
        let mut next = 0usize;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                next += 1;
            }
            new_colors[sigs[i].2] = next;
        }
        if new_colors == colors {
            return colors;
        }
        colors = new_colors;
    }
}

fn branch(g: &Graph, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = g.n();
    // Find the first non-singleton color class.
    let mut class_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        class_of[colors[v]].push(v);
    }
    let target = class_of.iter().find(|c| c.len() > 1);
    match target {
        None => {
            // Discrete: colors define the order.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| colors[v]);
            let key = key_under_order(g, &order);
            if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                *best = Some((key, order));
            }
        }
        Some(class) => {
            for &v in class {
                // Individualize v: give it a color just below its classmates.
                let mut next = colors.clone();
                for u in 0..n {
                    if next[u] >= colors[v] && u != v {
                        next[u] += 1;
                    }
                }
                branch(g, refine(g, next), best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let mut out = Graph::empty(g.n());
        for (u, v) in g.edges() {
            out.insert_edge(perm[u], perm[v]);
        }
        out
    }

    #[test]
    fn isomorphic_relabelings_share_keys() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v);
                    }
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = relabel(&g, &perm);
            assert_eq!(canonical_key(&g), canonical_key(&h));
            assert!(are_isomorphic(&g, &h));
        }
    }

    #[test]
    fn distinguishes_close_graphs() {
        assert!(!are_isomorphic(&path_graph(4), &Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()));
        assert!(!are_isomorphic(&cycle_graph(6), &complete_graph(3).disjoint_union(&complete_graph(3))));
        // C6 vs prism vs K_{3,3} are the 2-regular/3-regular traps
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
            .unwrap();
        let k33 = crate::graph::complete_bipartite(3, 3);
        assert!(!are_isomorphic(&prism, &k33));
        assert!(are_isomorphic(&cycle_graph(6).complement(), &prism));
    }

    #[test]
    fn canonical_form_is_stable() {
        let g = cycle_graph(5);
        let c1 = canonical_form(&g);
        let c2 = canonical_form(&relabel(&g, &[2, 4, 0, 1, 3]));
        assert_eq!(c1, c2);
    }
}
