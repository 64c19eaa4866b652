use super::*;
use crate::samples;

fn one() -> CommutativeDecomposition {
    CommutativeDecomposition::constant(&['a'], BigInt::one()).unwrap()
}

fn same_function(x: &CommutativeDecomposition, y: &CommutativeDecomposition) -> bool {
    x.sub(y).unwrap().is_zero()
}

fn built(f: &CommutativeDecomposition, k: u32) -> HTransducer {
    match build_residual_transducer(f, k, DEFAULT_CAP).unwrap() {
        BuildOutcome::Built(t) => t,
        other => panic!("construction gave up: {other:?}"),
    }
}

#[test]
fn bad_ex_ok_has_two_states() {
    let f = samples::bad_ex_ok();
    let t = built(&f, 1);
    assert_eq!(t.states(), ["", "a"]);
    assert_eq!(t.delta(0, 'a'), 1);
    assert_eq!(t.delta(1, 'a'), 1);
    assert!(t.lambda(0, 'a').is_zero());
    assert!(same_function(t.lambda(1, 'a'), &one()));
    assert_eq!(t.final_values(), [BigInt::one(), BigInt::zero()]);
    assert_eq!(find_counter(&t), None);
    for n in 0..12 {
        let w = "a".repeat(n);
        assert_eq!(t.eval(&w).unwrap(), f.eval_word(&w).unwrap());
    }
}

#[test]
fn bad_ex_ko_has_a_counter() {
    let f = samples::bad_ex_ko();
    let t = built(&f, 1);
    assert_eq!(t.states(), ["", "a"]);
    assert_eq!(t.delta(1, 'a'), 0);
    assert_eq!(find_counter(&t), Some((String::new(), "a".to_string())));
    for n in 3..=12u64 {
        let w = "a".repeat(n as usize);
        assert_eq!(t.eval(&w).unwrap(), BigInt::from(n) - 3);
    }
    assert!(f.is_nsf().unwrap().verdict.is_yes());
}

#[test]
fn constant_function_needs_one_state() {
    let f = CommutativeDecomposition::constant(&['a', 'b'], BigInt::from(5)).unwrap();
    for k in 0..3 {
        let t = built(&f, k);
        assert_eq!(t.states(), [""]);
        assert_eq!(t.final_values(), [BigInt::from(5)]);
        assert!(verify_canonical(&t, &f, k, 4).unwrap().verdict.is_yes());
    }
}

#[test]
fn alternative_transducer_computes_the_same_function() {
    let f = samples::bad_ex_ok();
    let alt = samples::bad_ex_ok_alternative();
    for n in 0..10 {
        let w = "a".repeat(n);
        assert_eq!(alt.eval(&w).unwrap(), f.eval_word(&w).unwrap());
    }
    let report = verify_canonical(&alt, &f, 1, 6).unwrap();
    assert!(report.verdict.is_no());
    assert!(verify_canonical(&built(&f, 1), &f, 1, 6).unwrap().verdict.is_yes());
}

#[test]
fn parity_counter_at_degree_zero() {
    let f = samples::parity_decomposition();
    let c = classify_via_transducer(&f, 0, DEFAULT_CAP).unwrap();
    let t = c.outcome.transducer().unwrap();
    assert_eq!(t.states().len(), 2);
    assert!(c.counter.is_some());
    assert!(c.zsf.verdict.is_no());
    assert!(c.degree_zero.unwrap().verdict.is_no());
}

#[test]
fn resleq_is_reflexive() {
    let f = samples::count_product_decomposition();
    for w in ["", "a", "ab", "bba"] {
        for k in 0..3 {
            let check = resleq(&f, w, w, k).unwrap();
            assert!(check.verdict);
            assert!(check.derivative.is_zero());
        }
    }
}

#[test]
fn to_automaton_agrees_with_eval() {
    for f in [samples::bad_ex_ok(), samples::bad_ex_ko(), samples::count_product_decomposition()] {
        let t = built(&f, f.degree());
        let a = t.to_automaton().unwrap();
        for w in crate::oracle::WordEnumerator::new(f.alphabet(), 6) {
            assert_eq!(a.evaluate(&w).unwrap(), t.eval(&w).unwrap(), "on {w}");
        }
    }
}

#[test]
fn cap_gives_inconclusive() {
    let f = samples::count_product_decomposition();
    let r = build_residual_transducer(&f, 0, 5).unwrap();
    assert!(matches!(r, BuildOutcome::Inconclusive { .. }));
}

#[test]
fn rejects_partial_transition_tables() {
    let err = HTransducer::new(
        &['a'],
        vec![String::new()],
        BTreeMap::new(),
        BTreeMap::new(),
        vec![BigInt::zero()],
    );
    assert!(matches!(err, Err(Error::InvalidTransducer(_))));
}
