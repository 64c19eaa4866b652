//! Small named instances used throughout the tests, the command-line tool
//! and the demo.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::automaton::WeightedAutomaton;
use crate::decomp::CommutativeDecomposition;
use crate::poly::Polynomial;
use crate::transducer::HTransducer;

/// `Z(X + Y)² + 2(X − Y)²`: non-negative with non-negative maximal
/// monomials, yet `P(X, Y, 1) = 3X² − 2XY + 3Y²`.
pub fn p_star() -> Polynomial {
    "Z*(X + Y)^2 + 2*(X - Y)^2".parse().expect("valid polynomial")
}

/// `⟨X − 4, 1⟩⟨Y, 1⟩⟨Z, 1⟩ + 8⟨Y, 2⟩ + 8⟨Z, 2⟩ + 4`.
pub fn q_example() -> Polynomial {
    "C(X - 4, 1)*C(Y, 1)*C(Z, 1) + 8*C(Y, 2) + 8*C(Z, 2) + 4"
        .parse()
        .expect("valid polynomial")
}

/// Four states on the letter `a` computing `aⁿ ↦ (−1)ⁿ·n`.
pub fn alternating_length() -> WeightedAutomaton {
    let mut m = vec![vec![0; 4]; 4];
    m[0][1] = 1;
    m[1][0] = 1;
    m[1][2] = 1;
    m[2][3] = 1;
    m[3][2] = 1;
    WeightedAutomaton::from_dense(&['a'], &[1, 0, 0, 0], &[m], &[0, -1, 2, -2])
        .expect("valid automaton")
}

/// `w ↦ |w|_letter`.
pub fn letter_count(alphabet: &[char], letter: char) -> WeightedAutomaton {
    let matrices = alphabet
        .iter()
        .map(|&c| {
            if c == letter {
                vec![vec![1, 1], vec![0, 1]]
            } else {
                vec![vec![1, 0], vec![0, 1]]
            }
        })
        .collect::<Vec<_>>();
    WeightedAutomaton::from_dense(alphabet, &[1, 0], &matrices, &[0, 1]).expect("valid automaton")
}

/// `w ↦ |w|_a · |w|_b` over `{a, b}`.
pub fn count_product() -> WeightedAutomaton {
    let ab = ['a', 'b'];
    letter_count(&ab, 'a')
        .hadamard(&letter_count(&ab, 'b'))
        .expect("same alphabet")
}

pub fn constant(alphabet: &[char], c: i64) -> WeightedAutomaton {
    WeightedAutomaton::constant(alphabet, BigInt::from(c)).expect("non-empty dimension")
}

/// Indicator of `(aa)*`.
pub fn parity() -> WeightedAutomaton {
    WeightedAutomaton::from_dense(&['a'], &[1, 0], &[vec![vec![0, 1], vec![1, 0]]], &[1, 0])
        .expect("valid automaton")
}

/// `w ↦ 1` if `w` starts with `a`, over `{a, b}`.
pub fn first_letter_indicator() -> WeightedAutomaton {
    let ma = vec![vec![0, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let mb = vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 0, 1]];
    WeightedAutomaton::from_dense(&['a', 'b'], &[1, 0, 0], &[ma, mb], &[0, 1, 0])
        .expect("valid automaton")
}

/// Indicator of `(aa)*` as a decomposition with modulus two.
pub fn parity_decomposition() -> CommutativeDecomposition {
    CommutativeDecomposition::from_fn(&['a'], 2, |ty| Polynomial::int(i64::from(ty.r[0] == 0)))
        .expect("valid decomposition")
}

/// `ε ↦ 1` and `aw ↦ |w|`.
pub fn bad_ex_ok() -> CommutativeDecomposition {
    CommutativeDecomposition::from_fn(&['a'], 1, |ty| {
        if ty.s.is_empty() {
            Polynomial::int(1)
        } else {
            "a - 1".parse().expect("valid polynomial")
        }
    })
    .expect("valid decomposition")
}

/// `1, 0, 1` on the words of length below three, then `aⁿ ↦ n − 3`.
pub fn bad_ex_ko() -> CommutativeDecomposition {
    CommutativeDecomposition::interpolate(&['a'], 3, 1, |x| {
        let n = x[0] as i64;
        Ok(BigInt::from(match n {
            0 | 2 => 1,
            1 => 0,
            _ => n - 3,
        }))
    })
    .expect("valid decomposition")
}

/// `w ↦ |w|_a · |w|_b` as a decomposition.
pub fn count_product_decomposition() -> CommutativeDecomposition {
    CommutativeDecomposition::from_polynomial(&['a', 'b'], &"a*b".parse().expect("valid"))
        .expect("valid decomposition")
}

/// The two-state transducer that loops on its second state with output
/// `2·1{w ≠ ε}` instead of staying there with output `1`; it computes the
/// same function as [`bad_ex_ok`].
pub fn bad_ex_ok_alternative() -> HTransducer {
    let zero = CommutativeDecomposition::constant(&['a'], BigInt::from(0)).expect("valid");
    let nonempty = CommutativeDecomposition::from_fn(&['a'], 1, |ty| {
        Polynomial::int(if ty.s.is_empty() { 0 } else { 2 })
    })
    .expect("valid");
    let states = vec![String::new(), "a".to_string()];
    let mut delta = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    delta.insert((0, 'a'), 1);
    delta.insert((1, 'a'), 0);
    lambda.insert((0, 'a'), zero);
    lambda.insert((1, 'a'), nonempty);
    HTransducer::new(
        &['a'],
        states,
        delta,
        lambda,
        vec![BigInt::from(1), BigInt::from(0)],
    )
    .expect("valid transducer")
}
