//! Machine-checkable certificates with a uniform JSON shape:
//! `{ "verdict": bool, "kind": "hole"|"wheel"|"embedding"|"ball"|"peo"|"at", ... }`
//! always in original vertex labels, plus an independent re-verification
//! entry point used by the CLI before it reports a failing property.

use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry, Embedding};
use crate::graph::Graph;
use crate::recognition::{
    self, AsteroidalTriple, EliminationOrder, HoleWitness, WheelWitness,
};

pub fn peo_certificate(order: &EliminationOrder) -> Value {
    json!({ "verdict": true, "kind": "peo", "order": order.order })
}

pub fn hole_certificate(h: &HoleWitness) -> Value {
    json!({ "verdict": false, "kind": "hole", "cycle": h.cycle })
}

pub fn wheel_certificate(w: &WheelWitness) -> Value {
    json!({ "verdict": false, "kind": "wheel", "hub": w.hub, "rim": w.rim.cycle })
}

pub fn at_certificate(t: &AsteroidalTriple) -> Value {
    json!({ "verdict": false, "kind": "at", "triple": [t.a, t.b, t.c] })
}

pub fn embedding_certificate(entry: &CatalogEntry, emb: &Embedding) -> Value {
    json!({
        "verdict": false,
        "kind": "embedding",
        "family": entry.family.name(),
        "params": entry.params,
        "pattern_edges": entry.graph.edges().collect::<Vec<_>>(),
        "mapping": emb.mapping,
    })
}

/// A bad-ball certificate wrapping the inner witness found in the ball
/// B(center, r/2).
pub fn ball_certificate(center: usize, radius_numerator: usize, inner: Value) -> Value {
    json!({
        "verdict": false,
        "kind": "ball",
        "center": center,
        "r": radius_numerator,
        "witness": inner,
    })
}

/// Re-verifies a certificate against a graph, independently of the search
/// that produced it. Unknown kinds and malformed payloads verify false.
pub fn verify_certificate(g: &Graph, cert: &Value) -> bool {
    let Some(kind) = cert.get("kind").and_then(Value::as_str) else {
        return false;
    };
    match kind {
        "peo" => match vec_usize(cert.get("order")) {
            Some(order) => {
                recognition::verify_elimination_order(g, &EliminationOrder { order })
            }
            None => false,
        },
        "hole" => match vec_usize(cert.get("cycle")) {
            Some(cycle) => recognition::verify_hole(g, &cycle),
            None => false,
        },
        "wheel" => match (cert.get("hub").and_then(Value::as_u64), vec_usize(cert.get("rim"))) {
            (Some(hub), Some(rim)) => recognition::verify_wheel(
                g,
                &WheelWitness { hub: hub as usize, rim: HoleWitness { cycle: rim } },
            ),
            _ => false,
        },
        "at" => match vec_usize(cert.get("triple")) {
            Some(t) if t.len() == 3 => recognition::verify_asteroidal_triple(
                g,
                &AsteroidalTriple { a: t[0], b: t[1], c: t[2] },
            ),
            _ => false,
        },
        "embedding" => {
            let (Some(family), Some(mapping)) = (
                cert.get("family").and_then(Value::as_str),
                vec_usize(cert.get("mapping")),
            ) else {
                return false;
            };
            let params = vec_usize(cert.get("params")).unwrap_or_default();
            let Some(fam) = catalog::Family::parse(family) else { return false };
            let Ok(entry) = catalog::generate(&fam, &params) else { return false };
            catalog::verify_embedding(&entry.graph, g, &Embedding { mapping })
        }
        "ball" => {
            let (Some(center), Some(r), Some(inner)) = (
                cert.get("center").and_then(Value::as_u64),
                cert.get("r").and_then(Value::as_u64),
                cert.get("witness"),
            ) else {
                return false;
            };
            let center = center as usize;
            if center >= g.n() {
                return false;
            }
            let ball = g.ball(center, r as usize);
            // the inner witness is in original labels; relabel into the ball
            let Some(relabeled) = relabel_into_ball(inner, &ball.vertex_map) else {
                return false;
            };
            verify_certificate(&ball.graph, &relabeled)
        }
        _ => false,
    }
}

fn vec_usize(v: Option<&Value>) -> Option<Vec<usize>> {
    v?.as_array()?.iter().map(|x| x.as_u64().map(|u| u as usize)).collect()
}

fn relabel_into_ball(inner: &Value, vertex_map: &[usize]) -> Option<Value> {
    let back = |orig: usize| vertex_map.binary_search(&orig).ok();
    let map_arr = |v: Option<&Value>| -> Option<Vec<usize>> {
        vec_usize(v)?.into_iter().map(back).collect()
    };
    let kind = inner.get("kind")?.as_str()?;
    let mut out = inner.clone();
    let obj = out.as_object_mut()?;
    match kind {
        "hole" => {
            obj.insert("cycle".into(), json!(map_arr(inner.get("cycle"))?));
        }
        "wheel" => {
            let hub = back(inner.get("hub")?.as_u64()? as usize)?;
            obj.insert("hub".into(), json!(hub));
            obj.insert("rim".into(), json!(map_arr(inner.get("rim"))?));
        }
        "embedding" => {
            obj.insert("mapping".into(), json!(map_arr(inner.get("mapping"))?));
        }
        "at" => {
            obj.insert("triple".into(), json!(map_arr(inner.get("triple"))?));
        }
        _ => return None,
    }
    Some(out)
}
