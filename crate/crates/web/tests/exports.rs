use grand_turbo_web::{list_bler_json, query_order_json, turbo_trace_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn query_order_lists_patterns_by_total_weight() {
    let v = parse(query_order_json(6, 2, 64).unwrap());
    let pats = v["patterns"].as_array().unwrap();
    assert_eq!(pats.len(), 64);
    assert_eq!(pats[0]["w_h"], 0);
    assert_eq!(pats[1]["ranks"], serde_json::json!([1]));
    let wt: Vec<u64> = pats.iter().map(|p| p["w_t"].as_u64().unwrap()).collect();
    assert!(wt.windows(2).all(|w| w[0] <= w[1]));
    assert!(query_order_json(0, 0, 1).is_err());
    assert!(query_order_json(8, 0, 10_000).is_err());
}

#[test]
fn turbo_trace_has_every_half_iteration() {
    let v = parse(turbo_trace_json(4.0, "chase", 4, 2, 5, 1).unwrap());
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 4);
    assert_eq!(stages[0]["profile"].as_array().unwrap().len(), 32);
    assert!(turbo_trace_json(4.0, "chase", 4, 2, 0, 1).is_err());
    assert!(turbo_trace_json(4.0, "viterbi", 4, 2, 5, 1).is_err());
}

#[test]
fn list_bler_curve_is_deterministic() {
    let a = list_bler_json("ebch:16,11", "orbgrand", 4, 1.0, 3.0, 1.0, 500, 9).unwrap();
    let b = list_bler_json("ebch:16,11", "orbgrand", 4, 1.0, 3.0, 1.0, 500, 9).unwrap();
    assert_eq!(a, b);
    let v = parse(a);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    assert!(pts.iter().all(|p| p["frames"] == 500));
    assert!(list_bler_json("file:x", "chase", 2, 1.0, 2.0, 1.0, 10, 1).is_err());
    assert!(list_bler_json("ebch:16,11", "chase", 2, 3.0, 1.0, 1.0, 10, 1).is_err());
}
