//! Browser bindings: three small views onto the core library, each returning a
//! JSON string (an `{"error": ...}` object on bad input).

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use nielsenkit::corpus::{class_json, evaluate, report_json, EvalOptions};
use nielsenkit::json::InstanceJson;
use nielsenkit::word::Basis;

const MAX_RANK: usize = 6;
const MAX_PREFIX: usize = 200;

/// `"ab, A"` means `a ↦ ab, b ↦ a⁻¹`.
fn endo_instance(images: &str) -> Result<InstanceJson, String> {
    let images: Vec<&str> = images.split(',').map(str::trim).collect();
    if images.len() > MAX_RANK {
        return Err(format!("at most {MAX_RANK} generators"));
    }
    let basis = Basis::alphabetic(images.len());
    let text = json!({
        "name": "web",
        "endomorphism": {
            "rank": images.len(),
            "letters": basis.names(),
            "images": basis.names().iter().zip(&images).map(|(l, w)| (l.clone(), json!(w))).collect::<serde_json::Map<_, _>>(),
        }
    });
    serde_json::from_value(text).map_err(|e| e.to_string())
}

pub fn invariants_value(images: &str) -> Result<Value, String> {
    let ev = evaluate(&endo_instance(images)?, &EvalOptions::default());
    match &ev.error {
        Some(e) => Err(e.clone()),
        None => Ok(report_json(&ev)),
    }
}

pub fn attracting_value(images: &str, len: usize) -> Result<Value, String> {
    let ev = evaluate(&endo_instance(images)?, &EvalOptions::default());
    let a = ev.analysis.ok_or_else(|| ev.error.unwrap_or_default())?;
    let len = len.min(MAX_PREFIX);
    Ok(json!(a.classes.iter().map(|c| class_json(c, len)).collect::<Vec<_>>()))
}

/// Classes of the degree-`k` map of a circle.
pub fn circle_value(k: i64) -> Result<Value, String> {
    if k.abs() > 40 {
        return Err("|k| <= 40".into());
    }
    let token = if k < 0 { "e-" } else { "e" };
    let image = vec![token; k.unsigned_abs() as usize];
    let edge_image = if k == 0 { json!({"path": [], "at": "v"}) } else { json!(image) };
    let inst: InstanceJson = serde_json::from_value(json!({
        "name": format!("circle_k{k}"),
        "vertices": ["v"],
        "edges": [{"name": "e", "from": "v", "to": "v"}],
        "vertex_map": {"v": "v"},
        "edge_map": {"e": edge_image},
    }))
    .map_err(|e| e.to_string())?;
    let ev = evaluate(&inst, &EvalOptions::default());
    let a = ev.analysis.ok_or_else(|| ev.error.unwrap_or_default())?;
    let rows: Vec<Value> = a
        .classes
        .iter()
        .map(|c| json!({"members": c.names, "ind": c.ind, "rk": c.rk, "a": c.a, "ichr": c.ichr()}))
        .collect();
    Ok(json!({"degree": k, "lefschetz": a.lefschetz, "classes": rows}))
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({"error": e})).to_string()
}

#[wasm_bindgen]
pub fn invariants(images: &str) -> String {
    render(invariants_value(images))
}

#[wasm_bindgen]
pub fn attracting(images: &str, len: usize) -> String {
    render(attracting_value(images, len))
}

#[wasm_bindgen]
pub fn circle(k: i64) -> String {
    render(circle_value(k))
}
