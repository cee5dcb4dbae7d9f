use krsl_web::*;
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn graph_exports() {
    let names = parse(&graph_names());
    assert!(names.as_array().unwrap().iter().any(|v| v == "theta"));
    let v = parse(&graph_gdims("theta", 2, 3));
    assert_eq!(v["closed"], true);
    assert_eq!(v["rows"][0]["gdim"], "q+q^-1");
    assert_eq!(v["rows"][1]["moy"], "q^3+2*q+2*q^-1+q^-3");
    let open = parse(&graph_gdims("wide", 2, 2));
    assert!(open["rows"][0]["moy"].is_null());
    assert!(parse(&graph_gdims("theta", 0, 2))["error"].is_string());
    assert!(parse(&graph_gdims("nonsense", 2, 2))["error"].is_string());
}

#[test]
fn link_exports() {
    let v = parse(&link_homology("braid:2:[1]", 2));
    assert_eq!(v["euler"], "q+q^-1");
    assert_eq!(v["parity"], 1);
    assert_eq!(v["table"].as_array().unwrap().len(), 2);
    assert!(parse(&link_homology("PD[", 2))["error"].is_string());
    assert!(parse(&link_homology("braid:2:[1,1,1,1,1,1,1]", 2))["error"].is_string());
    assert!(parse(&link_homology("braid:2:[1]", 9))["error"].is_string());

    let v = parse(&quantum_and_homfly("PD[] loops=1", 3, 3));
    assert_eq!(v["quantum"][2], "q+q^-1");
    assert_eq!(v["homfly"], "q^2+1+q^-2");
    assert!(parse(&quantum_and_homfly("PD[] loops=1", 0, 3))["error"].is_string());
}
