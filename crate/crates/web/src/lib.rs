//! Browser bindings. Every entry point returns a JSON string; failures are
//! reported as `{"error": "..."}` so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use funcdyn_core::algebra::{Field, Place};
use funcdyn_core::constructions::sharp_rational_map;
use funcdyn_core::dynamics::{orbit, reduced_graph, Budgets};
use funcdyn_core::maps::{reduce_map, RationalMap};
use funcdyn_core::parse::{parse_map, parse_point, parse_poly};
use funcdyn_core::Result;

fn field(q: u32) -> Result<Field> {
    Field::of_order(q as u64)
}

fn map_json(phi: &RationalMap) -> Value {
    json!({
        "literal": phi.to_string(),
        "degree": phi.degree(),
        "resultant": phi.resultant().to_string(),
        "bad_places": phi.bad_places().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn respond(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({"error": e.to_string()})).to_string()
}

/// Orbit of `start` under `map` over `F_q(t)`, stopping after `max_steps`.
#[wasm_bindgen]
pub fn orbit_json(q: u32, map: &str, start: &str, max_steps: u32) -> String {
    respond((|| {
        let k = field(q)?;
        let phi = parse_map(map, &k)?;
        let budgets = Budgets { max_steps: max_steps as usize, ..Budgets::default() };
        let rec = orbit(&phi, &parse_point(start, &k)?, budgets);
        Ok(json!({"map": map_json(&phi), "orbit": rec}))
    })())
}

/// The functional graph of `map` reduced at `place`, a monic irreducible in
/// `t` or `inf`.
#[wasm_bindgen]
pub fn reduced_graph_json(q: u32, map: &str, place: &str) -> String {
    respond((|| {
        let k = field(q)?;
        let phi = parse_map(map, &k)?;
        let place = match place.trim() {
            "inf" => Place::infinity(&k),
            s => Place::finite(parse_poly(s, &k)?)?,
        };
        let psi = reduce_map(&phi, &place)?;
        let graph = reduced_graph(&psi)?;
        Ok(json!({"map": map_json(&phi), "place": place.to_string(), "reduction": psi.to_string(), "graph": graph}))
    })())
}

/// The map with a cycle of length `q + 1` through 0.
#[wasm_bindgen]
pub fn sharp_map_json(q: u32) -> String {
    respond((|| {
        let c = sharp_rational_map(&field(q)?)?;
        Ok(json!({"map": map_json(&c.map), "orbits": c.orbits}))
    })())
}
