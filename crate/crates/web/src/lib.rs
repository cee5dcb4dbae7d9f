//! Browser bindings for the demo page in `www/`. Every export returns a
//! JSON string; errors are reported as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use krsl::graph::{graph_gdim, standard_graph, STANDARD_GRAPHS};
use krsl::link::kr_homology;
use krsl::oracle::{homfly_specialized, moy_eval, quantum_int};
use krsl::parse::parse_link;

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Names of the built-in graphs, as a JSON array.
#[wasm_bindgen]
pub fn graph_names() -> String {
    json!(STANDARD_GRAPHS).to_string()
}

/// Graded dimension of a standard graph for each `n` in `n_min..=n_max`,
/// with the skein value for closed graphs.
#[wasm_bindgen]
pub fn graph_gdims(name: &str, n_min: u32, n_max: u32) -> String {
    wrap((|| {
        let g = standard_graph(name).map_err(|e| e.to_string())?;
        if n_min < 1 || n_max < n_min || n_max > 6 {
            return Err("need 1 <= n_min <= n_max <= 6".to_string());
        }
        let mut rows = Vec::new();
        for n in n_min..=n_max {
            let gdim = graph_gdim(&g, n as usize).map_err(|e| e.to_string())?;
            let moy = g.is_closed().then(|| {
                moy_eval(&g, n as usize).map_or_else(|e| e.to_string(), |p| p.to_string())
            });
            rows.push(json!({ "n": n, "gdim": gdim.to_string(), "moy": moy }));
        }
        Ok(json!({ "name": name, "closed": g.is_closed(), "rows": rows }))
    })())
}

/// Homology table of a braid closure or PD code.
#[wasm_bindgen]
pub fn link_homology(input: &str, n: u32) -> String {
    wrap((|| {
        if !(1..=4).contains(&n) {
            return Err("n must be between 1 and 4".to_string());
        }
        let d = parse_link(input).map_err(|e| e.to_string())?;
        if d.crossings.len() > 6 {
            return Err("at most 6 crossings in the browser".to_string());
        }
        let t = kr_homology(&d, n as usize).map_err(|e| e.to_string())?;
        let table: Vec<Value> = t
            .entries
            .iter()
            .map(|(&(i, j), &dim)| json!({ "i": i, "j": j, "dim": dim }))
            .collect();
        Ok(json!({
            "n": n,
            "parity": t.parity,
            "table": table,
            "poincare": t.poincare().to_string(),
            "euler": t.euler().to_string(),
        }))
    })())
}

/// `[i]` for `i` in `0..=up_to` and the specialized HOMFLY polynomial of `input`.
#[wasm_bindgen]
pub fn quantum_and_homfly(input: &str, n: u32, up_to: u32) -> String {
    wrap((|| {
        if n < 1 {
            return Err("n must be at least 1".to_string());
        }
        let ints: Vec<String> = (0..=up_to.min(12))
            .map(|i| quantum_int(i as i64).to_string())
            .collect();
        let d = parse_link(input).map_err(|e| e.to_string())?;
        let p = homfly_specialized(&d, n as usize).map_err(|e| e.to_string())?;
        Ok(json!({ "quantum": ints, "homfly": p.to_string() }))
    })())
}
