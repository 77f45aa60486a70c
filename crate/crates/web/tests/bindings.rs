use serde_json::Value;

use funcdyn_web::{orbit_json, reduced_graph_json, sharp_map_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("valid json")
}

#[test]
fn orbit_of_the_sharp_map() {
    let v = parse(orbit_json(2, "(X^2+1)/X^2", "0", 100));
    assert_eq!(v["orbit"]["cycle"], serde_json::json!(["0", "inf", "1"]));
    assert_eq!(v["orbit"]["status"], "closed");
    assert_eq!(v["map"]["degree"], 2);
}

#[test]
fn escaping_orbit_reports_its_status() {
    let v = parse(orbit_json(2, "X^2 + t", "t", 5));
    assert!(v.get("error").is_none());
    assert_ne!(v["orbit"]["status"], "closed");
}

#[test]
fn sharp_maps_have_q_plus_1_cycles() {
    for q in [2u32, 3, 4, 5] {
        let v = parse(sharp_map_json(q));
        assert_eq!(v["orbits"][0]["cycle"].as_array().unwrap().len(), q as usize + 1);
        assert!(v["map"]["bad_places"].as_array().unwrap().len() <= 1);
    }
}

#[test]
fn reduced_graph_of_x_squared_plus_t() {
    // Modulo t the map is X^2 over F_3: 0 and 1 fixed, 2 -> 1, inf fixed.
    let v = parse(reduced_graph_json(3, "X^2 + t", "t"));
    let g = &v["graph"];
    assert_eq!(g["nodes"], serde_json::json!(["0", "1", "2", "inf"]));
    assert_eq!(g["successors"], serde_json::json!(["0", "1", "1", "inf"]));
    assert_eq!(g["cycle_lengths"], serde_json::json!([1, 1, 1]));
    assert_eq!(g["tail_depths"], serde_json::json!([0, 0, 1, 0]));

    let v = parse(reduced_graph_json(2, "(X^2+1)/X^2", "inf"));
    assert_eq!(v["graph"]["cycle_lengths"], serde_json::json!([3]));
}

#[test]
fn errors_are_json() {
    assert!(parse(orbit_json(6, "X", "0", 10))["error"].is_string());
    assert!(parse(orbit_json(2, "X^^", "0", 10))["error"].is_string());
    assert!(parse(reduced_graph_json(2, "t*X^2", "t"))["error"].is_string());
    assert!(parse(sharp_map_json(1))["error"].is_string());
}
