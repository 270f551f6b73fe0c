//! A PQ-tree over a fixed leaf set, supporting reduction by "these leaves
//! must be consecutive" constraints.
//!
//! P-nodes permute their children arbitrarily; Q-nodes fix the child order up
//! to reversal. The tree represents all leaf orders reachable under these
//! moves; `reduce` intersects the represented set with the orders making the
//! given leaves consecutive, failing iff the intersection is empty.
//!
//! This is a straightforward recursive implementation (not the linear-time
//! pointer machinery); it is validated against an exhaustive permutation
//! oracle in the circular-arc module tests.

#[derive(Clone, Debug)]
enum Node {
    Leaf(usize),
    P(Vec<Node>),
    Q(Vec<Node>),
}

enum Sub {
    Empty(Node),
    Full(Node),
    /// An orientable run: empty parts first, then full parts.
    Partial { e: Vec<Node>, f: Vec<Node> },
}

#[derive(Clone, Debug)]
pub struct PqTree {
    root: Option<Node>,
    num_leaves: usize,
}

impl PqTree {
    /// Universal tree over leaves 0..num_leaves (all orders allowed).
    pub fn new(num_leaves: usize) -> Self {
        let root = match num_leaves {
            0 => None,
            1 => Some(Node::Leaf(0)),
            _ => Some(Node::P((0..num_leaves).map(Node::Leaf).collect())),
        };
        PqTree { root, num_leaves }
    }

    pub fn num_leaves(&self) -> usize {
        self.num_leaves
    }

    /// Constrains the leaves in `set` to be consecutive. Returns false (and
    /// leaves the tree unusable) iff no represented order satisfies this.
    pub fn reduce(&mut self, set: &[usize]) -> bool {
        let mut in_s = vec![false; self.num_leaves];
        for &x in set {
            assert!(x < self.num_leaves, "leaf {x} out of range");
            in_s[x] = true;
        }
        let s_total = in_s.iter().filter(|&&b| b).count();
        if s_total <= 1 || s_total == self.num_leaves {
            return true;
        }
        let root = self.root.take().expect("nonempty tree");
        match reduce_node(root, &in_s, s_total) {
            Some(node) => {
                self.root = Some(node);
                true
            }
            None => false,
        }
    }

    /// One represented leaf order.
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_leaves);
        if let Some(root) = &self.root {
            collect(root, &mut out);
        }
        out
    }
}

fn collect(node: &Node, out: &mut Vec<usize>) {
    match node {
        Node::Leaf(x) => out.push(*x),
        Node::P(ch) | Node::Q(ch) => ch.iter().for_each(|c| collect(c, out)),
    }
}

fn full_count(node: &Node, in_s: &[bool]) -> usize {
    match node {
        Node::Leaf(x) => usize::from(in_s[*x]),
        Node::P(ch) | Node::Q(ch) => ch.iter().map(|c| full_count(c, in_s)).sum(),
    }
}

/// Wraps a sibling group in a P-node unless it is a single node.
fn group(mut nodes: Vec<Node>) -> Option<Node> {
    match nodes.len() {
        0 => None,
        1 => Some(nodes.pop().unwrap()),
        _ => Some(Node::P(nodes)),
    }
}

fn unwrap_singletons(node: Node) -> Node {
    match node {
        Node::P(mut ch) if ch.len() == 1 => ch.pop().unwrap(),
        Node::Q(mut ch) if ch.len() == 1 => ch.pop().unwrap(),
        other => other,
    }
}

/// Reduction at a node known to contain every leaf of S. Descends while some
/// single child still contains all of S, then applies the root templates.
fn reduce_node(node: Node, in_s: &[bool], s_total: usize) -> Option<Node> {
    descend(node, in_s, s_total)
}

/// Root template for a P-node: group the full children; with partial
/// children, assemble an oriented Q-run with the full block in the middle.
/// Callers guarantee no single child contains all of S.
fn reduce_here_p(ch: Vec<Node>, in_s: &[bool], _s_total: usize) -> Option<Node> {
    let mut empties = Vec::new();
    let mut fulls = Vec::new();
    let mut partials: Vec<(Vec<Node>, Vec<Node>)> = Vec::new();
    for c in ch {
        match classify(c, in_s)? {
            Sub::Empty(n) => empties.push(n),
            Sub::Full(n) => fulls.push(n),
            Sub::Partial { e, f } => partials.push((e, f)),
        }
    }
    build_root_p(empties, fulls, partials)
}

fn descend(node: Node, in_s: &[bool], s_total: usize) -> Option<Node> {
    match node {
        Node::Leaf(x) => Some(Node::Leaf(x)),
        Node::P(ch) => {
            if let Some(idx) = ch.iter().position(|c| full_count(c, in_s) == s_total) {
                let mut ch = ch;
                let child = ch.remove(idx);
                let reduced = descend(child, in_s, s_total)?;
                ch.insert(idx, reduced);
                Some(Node::P(ch))
            } else {
                reduce_here_p(ch, in_s, s_total)
            }
        }
        Node::Q(ch) => {
            if let Some(idx) = ch.iter().position(|c| full_count(c, in_s) == s_total) {
                let mut ch = ch;
                let child = ch.remove(idx);
                let reduced = descend(child, in_s, s_total)?;
                ch.insert(idx, reduced);
                Some(Node::Q(ch))
            } else {
                reduce_here_q(ch, in_s, s_total)
            }
        }
    }
}

fn build_root_p(
    empties: Vec<Node>,
    fulls: Vec<Node>,
    mut partials: Vec<(Vec<Node>, Vec<Node>)>,
) -> Option<Node> {
    if partials.len() > 2 {
        return None;
    }
    if partials.is_empty() {
        // group fulls so they stay consecutive
        let mut ch = empties;
        if let Some(f) = group(fulls) {
            ch.push(f);
        }
        return Some(unwrap_singletons(Node::P(ch)));
    }
    let (e1, f1) = partials.remove(0);
    let mut seq: Vec<Node> = Vec::new();
    seq.extend(e1);
    seq.extend(f1);
    if let Some(f) = group(fulls) {
        seq.push(f);
    }
    if let Some((e2, f2)) = partials.pop() {
        seq.extend(f2.into_iter().rev());
        seq.extend(e2.into_iter().rev());
    }
    let qnode = if seq.len() == 1 { seq.pop().unwrap() } else { Node::Q(seq) };
    if empties.is_empty() {
        Some(qnode)
    } else {
        let mut ch = empties;
        ch.push(qnode);
        Some(unwrap_singletons(Node::P(ch)))
    }
}

/// Root template for a Q-node: after an optional whole reversal, the children
/// must read empties*, partial?, fulls*, partial?, empties*, with the partial
/// children oriented toward the full block.
fn reduce_here_q(ch: Vec<Node>, in_s: &[bool], s_total: usize) -> Option<Node> {
    let subs: Option<Vec<Sub>> = ch.into_iter().map(|c| classify(c, in_s)).collect();
    let subs = subs?;
    match splice_q(subs, s_total) {
        Some(nodes) => Some(unwrap_singletons(Node::Q(nodes))),
        None => None,
    }
}

fn splice_q(subs: Vec<Sub>, _s_total: usize) -> Option<Vec<Node>> {
    // Try left-to-right; on failure retry on the reversed child list.
    if let Some(v) = try_splice(&subs) {
        return Some(v);
    }
    let reversed: Vec<&Sub> = subs.iter().rev().collect();
    try_splice_ref(&reversed)
}

fn try_splice(subs: &[Sub]) -> Option<Vec<Node>> {
    let refs: Vec<&Sub> = subs.iter().collect();
    try_splice_ref(&refs)
}

fn try_splice_ref(subs: &[&Sub]) -> Option<Vec<Node>> {
    // phases: 0 leading empties, 1 full block, 2 trailing empties
    let mut phase = 0u8;
    let mut out: Vec<Node> = Vec::new();
    for s in subs {
        match (phase, s) {
            (0, Sub::Empty(n)) => out.push((*n).clone()),
            (0, Sub::Full(n)) => {
                phase = 1;
                out.push((*n).clone());
            }
            (0, Sub::Partial { e, f }) => {
                phase = 1;
                out.extend(e.iter().cloned());
                out.extend(f.iter().cloned());
            }
            (1, Sub::Full(n)) => out.push((*n).clone()),
            (1, Sub::Partial { e, f }) => {
                phase = 2;
                out.extend(f.iter().cloned().rev());
                out.extend(e.iter().cloned().rev());
            }
            (1, Sub::Empty(n)) | (2, Sub::Empty(n)) => {
                phase = 2;
                out.push((*n).clone());
            }
            (2, _) => return None,
            (_, _) => unreachable!(),
        }
    }
    Some(out)
}

/// Classifies a non-pertinent-root node as empty, full, or an orientable
/// partial run, recursing as needed.
fn classify(node: Node, in_s: &[bool]) -> Option<Sub> {
    match node {
        Node::Leaf(x) => Some(if in_s[x] { Sub::Full(Node::Leaf(x)) } else { Sub::Empty(Node::Leaf(x)) }),
        Node::P(ch) => {
            let mut empties = Vec::new();
            let mut fulls = Vec::new();
            let mut partials = Vec::new();
            for c in ch {
                match classify(c, in_s)? {
                    Sub::Empty(n) => empties.push(n),
                    Sub::Full(n) => fulls.push(n),
                    Sub::Partial { e, f } => partials.push((e, f)),
                }
            }
            if partials.len() > 1 {
                return None;
            }
            match (empties.is_empty(), fulls.is_empty(), partials.pop()) {
                (_, true, None) if !empties.is_empty() => Some(Sub::Empty(unwrap_singletons(Node::P(empties)))),
                (true, _, None) => Some(Sub::Full(unwrap_singletons(Node::P(fulls)))),
                (false, false, None) => {
                    let e = vec![group(empties).unwrap()];
                    let f = vec![group(fulls).unwrap()];
                    Some(Sub::Partial { e, f })
                }
                (_, _, Some((pe, pf))) => {
                    let mut e = Vec::new();
                    if let Some(g) = group(empties) {
                        e.push(g);
                    }
                    e.extend(pe);
                    let mut f = pf;
                    if let Some(g) = group(fulls) {
                        f.push(g);
                    }
                    Some(Sub::Partial { e, f })
                }
                _ => unreachable!("empty P-node"),
            }
        }
        Node::Q(ch) => {
            let subs: Option<Vec<Sub>> = ch.into_iter().map(|c| classify(c, in_s)).collect();
            let subs = subs?;
            let all_empty = subs.iter().all(|s| matches!(s, Sub::Empty(_)));
            let all_full = subs.iter().all(|s| matches!(s, Sub::Full(_)));
            let rebuild = |subs: Vec<Sub>| -> Vec<Node> {
                subs.into_iter()
                    .map(|s| match s {
                        Sub::Empty(n) | Sub::Full(n) => n,
                        Sub::Partial { .. } => unreachable!(),
                    })
                    .collect()
            };
            if all_empty {
                return Some(Sub::Empty(unwrap_singletons(Node::Q(rebuild(subs)))));
            }
            if all_full {
                return Some(Sub::Full(unwrap_singletons(Node::Q(rebuild(subs)))));
            }
            // must be orientable to empties-then-fulls
            if let Some((e, f)) = try_orient(&subs) {
                return Some(Sub::Partial { e, f });
            }
            let reversed: Vec<&Sub> = subs.iter().rev().collect();
            try_orient_ref(&reversed).map(|(e, f)| Sub::Partial { e, f })
        }
    }
}

fn try_orient(subs: &[Sub]) -> Option<(Vec<Node>, Vec<Node>)> {
    let refs: Vec<&Sub> = subs.iter().collect();
    try_orient_ref(&refs)
}

/// Matches empties*, partial?, fulls* and returns the flattened two sides.
fn try_orient_ref(subs: &[&Sub]) -> Option<(Vec<Node>, Vec<Node>)> {
    let mut e: Vec<Node> = Vec::new();
    let mut f: Vec<Node> = Vec::new();
    let mut phase = 0u8; // 0 empties, 1 fulls
    for s in subs {
        match (phase, s) {
            (0, Sub::Empty(n)) => e.push((*n).clone()),
            (0, Sub::Partial { e: pe, f: pf }) => {
                phase = 1;
                e.extend(pe.iter().cloned());
                f.extend(pf.iter().cloned());
            }
            (0, Sub::Full(n)) => {
                phase = 1;
                f.push((*n).clone());
            }
            (1, Sub::Full(n)) => f.push((*n).clone()),
            (1, _) => return None,
            (_, _) => unreachable!(),
        }
    }
    Some((e, f))
}
