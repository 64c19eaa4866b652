use polyreg_web::{classify_polynomial, residual_transducer, series_values};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

fn verdict(v: &Value, class: &str) -> String {
    v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["class"] == class)
        .unwrap_or_else(|| panic!("no {class} in {v}"))["verdict"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn classifies_the_counterexample() {
    let v = parse(classify_polynomial("Z*(X + Y)^2 + 2*(X - Y)^2"));
    assert_eq!(verdict(&v, "PolyNNeg-maximal"), "yes");
    assert_eq!(verdict(&v, "PolyStrNNeg"), "no");
}

#[test]
fn reports_parse_errors() {
    let v = parse(classify_polynomial("X +"));
    assert!(v["error"].as_str().unwrap().contains("position"));
}

#[test]
fn lists_values_of_an_automaton() {
    let text = include_str!("../../../data/example1.json");
    let v = parse(series_values(text, 3));
    assert_eq!(v["commutative"], true);
    let values: Vec<&str> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["0", "-1", "2", "-3"]);
    assert!(parse(series_values(text, 20))["error"].is_string());
}

#[test]
fn builds_residual_transducers() {
    let text = include_str!("../../../data/bad_ex_ko.decomp.json");
    let v = parse(residual_transducer(text, 1));
    assert_eq!(verdict(&v, "counter-free"), "no");
    assert_eq!(verdict(&v, "NSF"), "yes");
    assert_eq!(v["transducer"]["states"], serde_json::json!(["", "a"]));
}
