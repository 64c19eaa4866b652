#![allow(dead_code)]

use std::collections::BTreeMap;

use polyreg::automaton::WeightedAutomaton;
use polyreg::decomp::CommutativeDecomposition;
use polyreg::linalg::SparseMatrix;
use polyreg::{BigInt, Polynomial, Rational};
use proptest::prelude::*;
use rand::Rng;

pub const VARS: [&str; 4] = ["X", "Y", "Z", "W"];

/// Polynomials in up to `nvars` variables of total degree at most
/// `max_degree` with integer coefficients in `-c..=c`.
pub fn polynomial(nvars: usize, max_degree: u32, c: i64) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_degree, nvars), -c..=c);
    prop::collection::vec(term, 0..7).prop_map(move |terms| {
        let terms = terms.into_iter().filter_map(|(mut e, k)| {
            while e.iter().sum::<u32>() > max_degree {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (k != 0).then(|| (e, Rational::from_integer(BigInt::from(k))))
        });
        Polynomial::from_terms(&VARS[..nvars], terms)
    })
}

pub fn random_polynomial(rng: &mut impl Rng, nvars: usize, max_degree: u32, c: i64) -> Polynomial {
    let n = rng.gen_range(1..=6);
    let terms = (0..n).map(|_| {
        let mut e = vec![0u32; nvars];
        let d = rng.gen_range(0..=max_degree);
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        (e, Rational::from_integer(BigInt::from(rng.gen_range(-c..=c))))
    });
    Polynomial::from_terms(&VARS[..nvars], terms)
}

pub fn random_automaton(rng: &mut impl Rng, alphabet: &[char], dim: usize, w: i64) -> WeightedAutomaton {
    let vector = |rng: &mut dyn rand::RngCore| -> Vec<BigInt> {
        (0..dim).map(|_| BigInt::from(rng.gen_range(-w..=w))).collect()
    };
    let initial = vector(rng);
    let final_weights = vector(rng);
    let matrices: BTreeMap<char, SparseMatrix> = alphabet
        .iter()
        .map(|&a| {
            let rows: Vec<Vec<BigInt>> = (0..dim).map(|_| vector(rng)).collect();
            (a, SparseMatrix::from_dense(&rows))
        })
        .collect();
    WeightedAutomaton::new(alphabet, initial, matrices, final_weights).unwrap()
}

/// A random commutative automaton: a sum of products of per-letter unary
/// automata, so it only depends on the letter counts.
pub fn random_commutative(rng: &mut impl Rng, alphabet: &[char], dim: usize) -> WeightedAutomaton {
    let mut total: Option<WeightedAutomaton> = None;
    for _ in 0..2 {
        let mut product: Option<WeightedAutomaton> = None;
        for &a in alphabet {
            let unary = random_automaton(rng, &[a], dim, 1);
            let lifted = lift(&unary, a, alphabet);
            product = Some(match product {
                None => lifted,
                Some(p) => p.hadamard(&lifted).unwrap(),
            });
        }
        let p = product.unwrap();
        total = Some(match total {
            None => p,
            Some(t) => t.sum(&p).unwrap(),
        });
    }
    total.unwrap()
}

/// Reads only the letter `a`; every other letter acts as the identity.
fn lift(unary: &WeightedAutomaton, a: char, alphabet: &[char]) -> WeightedAutomaton {
    let matrices = alphabet
        .iter()
        .map(|&b| {
            let m = if b == a {
                unary.matrix(a).unwrap().clone()
            } else {
                SparseMatrix::identity(unary.dim())
            };
            (b, m)
        })
        .collect();
    WeightedAutomaton::new(
        alphabet,
        unary.initial().to_vec(),
        matrices,
        unary.final_weights().to_vec(),
    )
    .unwrap()
}

pub fn grid(k: usize, max: u64) -> Vec<Vec<u64>> {
    (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|p| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect()
    })
}

/// Random decompositions over `alphabet` with small modulus and pieces of
/// degree at most two, built by interpolating a random table.
pub fn decomposition(alphabet: &'static [char]) -> impl Strategy<Value = CommutativeDecomposition> {
    (1..=3u64, 0..=2u32, any::<u64>()).prop_map(move |(omega, degree, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut table = std::collections::HashMap::new();
        CommutativeDecomposition::interpolate(alphabet, omega, degree, |x| {
            Ok(table
                .entry(x.to_vec())
                .or_insert_with(|| BigInt::from(rng.gen_range(-4..=6)))
                .clone())
        })
        .unwrap()
    })
}
