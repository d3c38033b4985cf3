//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function takes the datum as TOML text (the same format the
//! `strata` CLI reads from `--datum`) and returns a JSON string. The `*_json`
//! functions hold the logic and are what native tests exercise.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use strata_core::cli::config::SessionConfig;
use strata_core::cli::{classify_report, cocenter_json, reduce_report};
use strata_core::hecke::HeckeElt;
use strata_core::newton::PivotOrder;
use strata_core::setting::Setting;
use wasm_bindgen::prelude::*;

fn setting(config: &str) -> Result<Setting, String> {
    SessionConfig::parse(config).and_then(|c| c.setting()).map_err(|e| e.to_string())
}

pub fn classify_json(config: &str, element: &str) -> Result<String, String> {
    let st = setting(config)?;
    let w = st.parse_element(element).map_err(|e| e.to_string())?;
    Ok(classify_report(&st, &w).to_string())
}

pub fn reduce_json(config: &str, element: &str) -> Result<String, String> {
    let st = setting(config)?;
    let w = st.parse_element(element).map_err(|e| e.to_string())?;
    let r = st.reduce_to_min(&w);
    Ok(reduce_report(&st, &w, &r).to_string())
}

pub fn cocenter_json_str(config: &str, element: &str, reversed: bool) -> Result<String, String> {
    let st = setting(config)?;
    let w = st.parse_element(element).map_err(|e| e.to_string())?;
    let order = if reversed { PivotOrder::Reversed } else { PivotOrder::Default };
    let cv = st.cocenter_reduce_with(&HeckeElt::basis(w), order);
    Ok(json!({ "text": st.format_cocenter(&cv), "terms": cocenter_json(&st, &cv) }).to_string())
}

/// Upper-triangular factor R with RᵀR equal to the inverse of the
/// symmetrized Cartan matrix, mapping fundamental coweight coordinates to
/// the Euclidean plane.
fn plane_embedding(a: [[i64; 2]; 2]) -> [[f64; 2]; 2] {
    let d = [a[1][0].abs().max(1) as f64, a[0][1].abs().max(1) as f64];
    let b = [[d[0] * a[0][0] as f64, d[0] * a[0][1] as f64], [d[1] * a[1][0] as f64, d[1] * a[1][1] as f64]];
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let g = [[b[1][1] / det, -b[0][1] / det], [-b[1][0] / det, b[0][0] / det]];
    let r00 = g[0][0].sqrt();
    let r01 = g[0][1] / r00;
    let r11 = (g[1][1] - r01 * r01).sqrt();
    [[r00, r01], [0.0, r11]]
}

/// Alcoves w(C) for w ∈ W_a of length ≤ radius, as plane triangles. Rank 2 only.
pub fn alcoves_json(config: &str, radius: usize) -> Result<String, String> {
    let st = setting(config)?;
    let rd = &st.datum;
    if rd.rank != 2 {
        return Err("alcove view needs a rank 2 datum".into());
    }
    let theta = rd.highest_root().ok_or("no highest root")?.to_vec();
    let dim = rd.rank + rd.central_rank;
    let mut base = vec![vec![Rational64::from_integer(0); dim]];
    for (i, c) in theta.iter().enumerate() {
        let mut v = vec![Rational64::from_integer(0); dim];
        v[i] = Rational64::new(1, *c);
        base.push(v);
    }
    let r = plane_embedding([[rd.cartan.get(0, 0), rd.cartan.get(0, 1)], [rd.cartan.get(1, 0), rd.cartan.get(1, 1)]]);
    let to_plane = |v: &[Rational64]| {
        let (x, y) = (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0));
        [r[0][0] * x + r[0][1] * y, r[1][1] * y]
    };
    let alcoves: Vec<Value> = rd
        .ball_all(radius)
        .iter()
        .map(|w| {
            let pts: Vec<[f64; 2]> = base
                .iter()
                .map(|v| {
                    let mut img = w.fin.apply_q(v);
                    for (x, t) in img.iter_mut().zip(&w.trans) {
                        *x += Rational64::from_integer(*t);
                    }
                    to_plane(&img)
                })
                .collect();
            json!({ "element": st.format_element(w), "length": st.length(w), "points": pts })
        })
        .collect();
    Ok(json!({ "alcoves": alcoves }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(config: &str, element: &str) -> Result<String, JsError> {
    js(classify_json(config, element))
}

#[wasm_bindgen]
pub fn reduce(config: &str, element: &str) -> Result<String, JsError> {
    js(reduce_json(config, element))
}

#[wasm_bindgen]
pub fn cocenter(config: &str, element: &str, reversed: bool) -> Result<String, JsError> {
    js(cocenter_json_str(config, element, reversed))
}

#[wasm_bindgen]
pub fn alcoves(config: &str, radius: usize) -> Result<String, JsError> {
    js(alcoves_json(config, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = "cartan_type = \"A1\"\nlattice = \"simply_connected\"\n";

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    fn sides(p: &Value) -> Vec<f64> {
        let q: Vec<[f64; 2]> = serde_json::from_value(p["points"].clone()).unwrap();
        let d = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
        let mut v = vec![d(q[0], q[1]), d(q[1], q[2]), d(q[0], q[2])];
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn operations() {
        let v = parse(&classify_json(A1, "s0 s1").unwrap());
        assert_eq!(v["straight"], true);
        let v = parse(&reduce_json(A1, "s0 s1 s0").unwrap());
        assert_eq!(v["minimal_element"], "s1");
        let v = parse(&cocenter_json_str(A1, "s0 s1 s0", false).unwrap());
        assert_eq!(v["text"], "(q) * [s1]\n(-1 + q) * [s0 s1]");
        assert_eq!(classify_json(A1, "x").unwrap_err(), "weyl: unknown token `x`");
    }

    #[test]
    fn alcoves_are_congruent() {
        for t in ["A2", "C2", "G2"] {
            let cfg = format!("cartan_type = \"{t}\"\nlattice = \"simply_connected\"\n");
            let v = parse(&alcoves_json(&cfg, 4).unwrap());
            let all = v["alcoves"].as_array().unwrap();
            let s0 = sides(&all[0]);
            for a in all {
                let s = sides(a);
                assert!(s.iter().zip(&s0).all(|(x, y)| (x - y).abs() < 1e-9), "{t} {}", a["element"]);
            }
        }
        assert!(alcoves_json(A1, 2).is_err());
    }
}
