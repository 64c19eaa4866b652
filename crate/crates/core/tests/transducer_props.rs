mod common;

use common::decomposition;
use polyreg::decomp::CommutativeDecomposition;
use polyreg::oracle::WordEnumerator;
use polyreg::samples;
use polyreg::transducer::{
    build_residual_transducer, build_residual_transducer_with, verify_canonical, BuildOutcome,
    HTransducer, DEFAULT_CAP,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const A: &[char] = &['a'];

fn build(f: &CommutativeDecomposition, k: u32) -> HTransducer {
    match build_residual_transducer(f, k, DEFAULT_CAP).unwrap() {
        BuildOutcome::Built(t) => t,
        other => panic!("gave up: {other:?}"),
    }
}

fn build_randomly(f: &CommutativeDecomposition, k: u32, seed: u64) -> HTransducer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome =
        build_residual_transducer_with(f, k, DEFAULT_CAP, |items| rng.gen_range(0..items.len()))
            .unwrap();
    match outcome {
        BuildOutcome::Built(t) => t,
        other => panic!("gave up: {other:?}"),
    }
}

/// Compares two transducers up to the order in which states were found.
fn same_transducer(x: &HTransducer, y: &HTransducer) -> bool {
    let mut xs = x.states().to_vec();
    let mut ys = y.states().to_vec();
    xs.sort();
    ys.sort();
    if xs != ys || x.alphabet() != y.alphabet() {
        return false;
    }
    x.states().iter().enumerate().all(|(q, name)| {
        let p = y.state_index(name).unwrap();
        x.final_value(q) == y.final_value(p)
            && x.alphabet().iter().all(|&a| {
                x.states()[x.delta(q, a)] == y.states()[y.delta(p, a)]
                    && x.lambda(q, a).sub(y.lambda(p, a)).unwrap().is_zero()
            })
    })
}

fn corpus() -> Vec<(CommutativeDecomposition, u32)> {
    vec![
        (samples::bad_ex_ok(), 1),
        (samples::bad_ex_ko(), 1),
        (samples::parity_decomposition(), 0),
        (samples::count_product_decomposition(), 2),
        (CommutativeDecomposition::constant(&['a', 'b'], 5.into()).unwrap(), 0),
    ]
}

#[test]
fn worklist_order_does_not_matter_on_the_corpus() {
    for (f, k) in corpus() {
        let reference = build(&f, k);
        for seed in 0..8 {
            assert!(same_transducer(&reference, &build_randomly(&f, k, seed)));
        }
    }
}

#[test]
fn transducers_compute_their_function() {
    for (f, k) in corpus() {
        let t = build(&f, k);
        let len = if f.alphabet().len() == 1 { 8 } else { 6 };
        for w in WordEnumerator::new(f.alphabet(), len) {
            assert_eq!(t.eval(&w).unwrap(), f.eval_word(&w).unwrap(), "on {w}");
        }
        assert!(verify_canonical(&t, &f, k, len).unwrap().verdict.is_yes());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_npoly_functions(f in decomposition(A), seed in any::<u64>()) {
        let k = f.degree();
        prop_assume!(f.is_npoly(Some(k)).unwrap().verdict.is_yes());
        let t = build(&f, k);
        prop_assert!(same_transducer(&t, &build_randomly(&f, k, seed)));
        for n in 0..=8 {
            let w = "a".repeat(n);
            prop_assert_eq!(t.eval(&w).unwrap(), f.eval_word(&w).unwrap());
        }
        prop_assert!(verify_canonical(&t, &f, k, 8).unwrap().verdict.is_yes());
    }

    #[test]
    fn degree_zero_transducers_exist_for_periodic_functions(f in decomposition(A)) {
        prop_assume!(f.degree() == 0);
        let t = build(&f, 0);
        for n in 0..=8 {
            let w = "a".repeat(n);
            prop_assert_eq!(t.eval(&w).unwrap(), f.eval_word(&w).unwrap());
        }
    }
}
