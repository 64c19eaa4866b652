use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn polyreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn has_line(o: &Output, prefix: &str) -> bool {
    stdout(o).lines().any(|l| l.starts_with(prefix))
}

#[test]
fn counterexample_polynomial() {
    let o = polyreg(&["poly", "classify", "Z*(X + Y)^2 + 2*(X - Y)^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "class=PolyNNeg-maximal verdict=yes"));
    assert!(has_line(&o, "class=PolyStrNNeg verdict=no"));
    assert!(stdout(&o).contains("{Z=1}:-2*X*Y"));
}

#[test]
fn decidable_classes_of_a_shifted_square() {
    let o = polyreg(&["poly", "classify", "X^2 - 2*X + 2"]);
    for line in stdout(&o).lines().filter(|l| l.starts_with("class=")) {
        assert!(line.contains("verdict=yes"), "{line}");
    }
}

#[test]
fn minus_x_is_not_strongly_natural() {
    let o = polyreg(&["poly", "classify", "--", "-1*X"]);
    assert!(has_line(&o, "class=strongly-natural verdict=no"));
}

#[test]
fn polynomial_from_file_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "1/2*X^2 + 1/2*X\n").unwrap();
    let o = polyreg(&["poly", "classify", path.to_str().unwrap()]);
    assert!(has_line(&o, "class=strongly-natural verdict=yes"));
    assert!(has_line(&o, "scaled-by: 2"));

    let o = polyreg(&["poly", "classify", "X^2 +* 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 5"));
}

#[test]
fn example_one_is_commutative_but_not_natural() {
    let o = polyreg(&["series", "classify", &data("example1.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "class=commutative verdict=yes"));
    assert!(has_line(&o, "class=NPoly verdict=no"));
}

#[test]
fn product_of_counts_is_star_free() {
    let o = polyreg(&["series", "classify", &data("count_product.json")]);
    assert!(has_line(&o, "class=NPoly verdict=yes"));
    assert!(has_line(&o, "class=NSF verdict=yes"));
}

#[test]
fn evaluation_of_files() {
    let o = polyreg(&["series", "eval", &data("example1.json"), "ε", "a", "aa", "aaa"]);
    let out = stdout(&o);
    assert!(out.contains("f(ε): 0\nf(a): -1\nf(aa): 2\nf(aaa): -3\n"), "{out}");
    let o = polyreg(&["series", "eval", &data("choose2.presentation.json"), "aaaa"]);
    assert!(stdout(&o).contains("f(aaaa): 6"));
}

#[test]
fn figure_transducers_are_equivalent() {
    let o = polyreg(&[
        "series",
        "equiv",
        &data("bad_ex_ok.left.transducer.json"),
        &data("bad_ex_ok.right.transducer.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "class=equivalent verdict=yes"));
    let o = polyreg(&["series", "equiv", &data("parity.json"), &data("constant5.json")]);
    assert!(o.status.code() == Some(1), "different alphabets must be rejected");
}

#[test]
fn decompose_reports_non_commutative_input() {
    let o = polyreg(&["series", "decompose", &data("first_letter.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(has_line(&o, "class=commutative verdict=no witness=(ab,ba)"));
}

#[test]
fn decompose_within_limits_or_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let o = polyreg(&["series", "decompose", &data("parity.json"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    let expected = std::fs::read_to_string(data("parity.decomp.json")).unwrap();
    assert_eq!(written, expected);

    let o = polyreg(&["series", "decompose", &data("parity.json"), "--max-omega", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(has_line(&o, "class=decomposition verdict=inconclusive"));
}

#[test]
fn bad_ex_ok_transducer_matches_the_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = polyreg(&[
        "transducer",
        "build",
        &data("bad_ex_ok.decomp.json"),
        "--k",
        "1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&o, "states: ε,a"));
    assert!(has_line(&o, "class=counter-free verdict=yes"));
    let written = std::fs::read_to_string(&out).unwrap();
    let expected = std::fs::read_to_string(data("bad_ex_ok.left.transducer.json")).unwrap();
    assert_eq!(written, expected);
}

#[test]
fn bad_ex_ko_has_a_counter_and_is_star_free() {
    let o = polyreg(&["transducer", "build", &data("bad_ex_ko.decomp.json"), "--k", "1"]);
    assert!(has_line(&o, "class=counter-free verdict=no witness=counter(ε,a)"));
    assert!(has_line(&o, "class=NSF verdict=yes"));
}

#[test]
fn constant_function_has_one_state() {
    let o = polyreg(&["transducer", "build", &data("constant5.json"), "--k", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "states: ε"));
}

#[test]
fn transducer_verification_and_counters() {
    let right = data("bad_ex_ok.right.transducer.json");
    let o = polyreg(&["transducer", "verify", &right, &data("bad_ex_ok.decomp.json"), "--k", "1"]);
    assert!(has_line(&o, "class=canonical verdict=no"));
    let left = data("bad_ex_ok.left.transducer.json");
    let o = polyreg(&["transducer", "verify", &left, &data("bad_ex_ok.decomp.json"), "--k", "1"]);
    assert!(has_line(&o, "class=canonical verdict=yes"));
    let o = polyreg(&["transducer", "counters", &right]);
    assert!(has_line(&o, "class=counter-free verdict=no witness=counter(ε,a)"));
}

#[test]
fn transducer_build_gives_up_at_the_cap() {
    let o = polyreg(&["transducer", "build", &data("count_product.decomp.json"), "--k", "0", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(has_line(&o, "class=residual[0] verdict=inconclusive"));
}

fn without_timing(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn records_replay() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for r in [&first, &second] {
        let o = polyreg(&[
            "--record",
            r.to_str().unwrap(),
            "transducer",
            "build",
            &data("bad_ex_ko.decomp.json"),
            "--k",
            "1",
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read_to_string(&first).unwrap();
    let b = std::fs::read_to_string(&second).unwrap();
    assert_eq!(without_timing(&a), without_timing(&b));
    assert!(!a.contains("--record"));

    let o = polyreg(&["verify", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(has_line(&o, "class=replay verdict=yes"));

    let tampered = a.replace("\"verdict\": \"no\"", "\"verdict\": \"yes\"");
    assert_ne!(tampered, a);
    std::fs::write(&first, tampered).unwrap();
    let o = polyreg(&["verify", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(has_line(&o, "class=replay verdict=no"));
}
