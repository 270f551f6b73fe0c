//! DOT (Graphviz) writers for graphs, representations, covers, and catalog
//! entries with their figure markings.

use crate::ca::{CircularArcRep, IntervalRep};
use crate::catalog::Marks;
use crate::cover::CoverFragment;
use crate::graph::Graph;

pub fn graph_to_dot(g: &Graph, marks: Option<&Marks>) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let mut attrs = Vec::new();
        if let Some(m) = marks {
            if m.green == Some(v) {
                attrs.push("color=green, style=filled, fillcolor=palegreen");
            } else if m.blue.contains(&v) {
                attrs.push("color=blue, style=filled, fillcolor=lightblue");
            }
            if m.red.contains(&v) {
                attrs.push("peripheries=2, color=red");
            }
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {v};\n"));
        } else {
            out.push_str(&format!("  {v} [{}];\n", attrs.join(", ")));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn interval_rep_to_dot(rep: &IntervalRep) -> String {
    let mut out = String::from("graph {\n  rankdir=LR;\n  node [shape=point];\n");
    for p in 0..rep.host_len {
        out.push_str(&format!("  h{p};\n"));
    }
    for p in 1..rep.host_len {
        out.push_str(&format!("  h{} -- h{};\n", p - 1, p));
    }
    for (v, &(lo, hi)) in rep.intervals.iter().enumerate() {
        out.push_str(&format!(
            "  v{v} [shape=plaintext, label=\"v{v}: [{lo},{hi}]\"];\n  v{v} -- h{lo} [style=dotted];\n  v{v} -- h{hi} [style=dotted];\n"
        ));
    }
    out.push_str("}\n");
    out
}

pub fn ca_rep_to_dot(rep: &CircularArcRep) -> String {
    let m = rep.host_len;
    let mut out = String::from("graph {\n  layout=circo;\n  node [shape=point];\n");
    for p in 0..m {
        out.push_str(&format!("  h{p};\n"));
    }
    for p in 0..m {
        out.push_str(&format!("  h{} -- h{};\n", p, (p + 1) % m));
    }
    for (v, &(start, len)) in rep.arcs.iter().enumerate() {
        let end = (start + len - 1) % m;
        out.push_str(&format!(
            "  v{v} [shape=plaintext, label=\"v{v}: start {start} len {len}\"];\n  v{v} -- h{start} [style=dotted];\n  v{v} -- h{end} [style=dotted];\n"
        ));
    }
    out.push_str("}\n");
    out
}

/// The cover fragment with projection labels `index:projected`.
pub fn cover_to_dot(frag: &CoverFragment) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    for v in frag.cover_graph.vertices() {
        let label = format!("{v}:{}", frag.projection[v]);
        let extra = if v == frag.base { ", style=filled, fillcolor=palegreen" } else { "" };
        out.push_str(&format!("  {v} [label=\"{label}\"{extra}];\n"));
    }
    for (u, v) in frag.cover_graph.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
