//! Brute-force reference implementations.
//!
//! Nothing here reuses the matrix, echelon or interpolation code of the
//! other modules. Every procedure is exponential, works up to an explicit
//! bound and only ever confirms or refutes on the words it has looked at.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automaton::WeightedAutomaton;
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

/// Largest number of path prefixes [`brute_eval_automaton`] will visit.
pub const PATH_LIMIT: u64 = 20_000_000;

/// All words of length at most `max_length` in shortlex order.
#[derive(Clone, Debug)]
pub struct WordEnumerator {
    alphabet: Vec<char>,
    max_length: usize,
    current: Option<Vec<usize>>,
}

impl WordEnumerator {
    pub fn new(alphabet: &[char], max_length: usize) -> Self {
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        WordEnumerator {
            alphabet,
            max_length,
            current: Some(Vec::new()),
        }
    }
}

impl Iterator for WordEnumerator {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let digits = self.current.take()?;
        let word = digits.iter().map(|&i| self.alphabet[i]).collect();
        let n = self.alphabet.len();
        let mut next = digits;
        let mut pos = next.len();
        loop {
            if pos == 0 {
                if next.len() < self.max_length && n > 0 {
                    self.current = Some(vec![0; next.len() + 1]);
                }
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < n {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(word)
    }
}

/// Sums, over every sequence of states, the product of the initial weight,
/// the transition weights along `w` and the final weight.
pub fn brute_eval_automaton(a: &WeightedAutomaton, w: &str) -> Result<BigInt> {
    let letters: Vec<char> = w.chars().collect();
    let mut dense = Vec::with_capacity(letters.len());
    for &c in &letters {
        dense.push(a.matrix(c).ok_or(Error::UnknownLetter(c))?.to_dense());
    }
    let mut visited = 0u64;
    let mut total = BigInt::zero();
    for (start, init) in a.initial().iter().enumerate() {
        if !init.is_zero() {
            walk(a, &dense, start, 0, init.clone(), &mut visited, &mut total)?;
        }
    }
    Ok(total)
}

fn walk(
    a: &WeightedAutomaton,
    dense: &[Vec<Vec<BigInt>>],
    state: usize,
    depth: usize,
    weight: BigInt,
    visited: &mut u64,
    total: &mut BigInt,
) -> Result<()> {
    *visited += 1;
    if *visited > PATH_LIMIT {
        return Err(Error::TooLarge(format!("more than {PATH_LIMIT} partial runs")));
    }
    if depth == dense.len() {
        *total += weight * &a.final_weights()[state];
        return Ok(());
    }
    for (next, x) in dense[depth][state].iter().enumerate() {
        if !x.is_zero() {
            walk(a, dense, next, depth + 1, &weight * x, visited, total)?;
        }
    }
    Ok(())
}

/// Compares `a` and `b` on every word of length at most `max_length` and
/// returns the shortlex-least word where they differ.
pub fn brute_equivalent(
    a: &WeightedAutomaton,
    b: &WeightedAutomaton,
    max_length: usize,
) -> Result<Option<String>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(a.alphabet().to_vec(), b.alphabet().to_vec()));
    }
    for w in WordEnumerator::new(a.alphabet(), max_length) {
        if brute_eval_automaton(a, &w)? != brute_eval_automaton(b, &w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Looks for two words of length at most `max_length` that are
/// permutations of each other and get different values. The first word is
/// the shortlex-least in its permutation class.
pub fn commutativity_brute(
    a: &WeightedAutomaton,
    max_length: usize,
) -> Result<Option<(String, String)>> {
    let mut seen: HashMap<Vec<char>, (String, BigInt)> = HashMap::new();
    for w in WordEnumerator::new(a.alphabet(), max_length) {
        let mut key: Vec<char> = w.chars().collect();
        key.sort_unstable();
        let value = brute_eval_automaton(a, &w)?;
        match seen.get(&key) {
            Some((first, v)) if *v != value => return Ok(Some((first.clone(), w))),
            Some(_) => {}
            None => {
                seen.insert(key, (w, value));
            }
        }
    }
    Ok(None)
}

/// The family of words `prefix · u₁^{X₁} s₁ ⋯ u_p^{X_p} s_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionPattern {
    pub prefix: String,
    pub blocks: Vec<PumpBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpBlock {
    /// Name of the exponent in the returned polynomial.
    pub var: String,
    pub pumped: String,
    pub suffix: String,
}

impl ProgressionPattern {
    /// `a₁^{X₁} ⋯ a_p^{X_p}` with each exponent named after its letter.
    pub fn letter_counts(alphabet: &[char]) -> Self {
        ProgressionPattern {
            prefix: String::new(),
            blocks: alphabet
                .iter()
                .map(|&a| PumpBlock {
                    var: a.to_string(),
                    pumped: a.to_string(),
                    suffix: String::new(),
                })
                .collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.blocks.len()
    }

    pub fn word(&self, exponents: &[u64]) -> String {
        let mut w = self.prefix.clone();
        for (b, &n) in self.blocks.iter().zip(exponents) {
            for _ in 0..n {
                w.push_str(&b.pumped);
            }
            w.push_str(&b.suffix);
        }
        w
    }
}

/// Interpolates `n ↦ f(pattern(n))` by a polynomial of degree at most
/// `degree` in each exponent, from its values on
/// `window + {0, …, degree}^p`, and validates the result on `2p` further
/// points of the window. Returns `None` if validation fails.
pub fn progression_polynomial_check(
    mut f: impl FnMut(&str) -> Result<BigInt>,
    pattern: &ProgressionPattern,
    degree: u32,
    window: &[u64],
) -> Result<Option<Polynomial>> {
    let p = pattern.dimension();
    if window.len() != p {
        return Err(Error::InvalidDecomposition(format!(
            "window has {} coordinates for a pattern with {p} exponents",
            window.len()
        )));
    }
    let side = degree as usize + 1;
    let size = side
        .checked_pow(p as u32)
        .filter(|&s| s <= 4096)
        .ok_or_else(|| Error::TooLarge(format!("{side}^{p} interpolation points")))?;
    let exponent_of = |mut idx: usize| {
        let mut e = vec![0u32; p];
        for slot in e.iter_mut().rev() {
            *slot = (idx % side) as u32;
            idx /= side;
        }
        e
    };
    let points: Vec<Vec<u64>> = (0..size)
        .map(|i| {
            exponent_of(i)
                .iter()
                .zip(window)
                .map(|(&t, &w)| w + u64::from(t))
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(size);
    for x in &points {
        let mut row: Vec<Rational> = (0..size)
            .map(|j| {
                exponent_of(j)
                    .iter()
                    .zip(x)
                    .fold(Rational::one(), |acc, (&e, &xi)| {
                        acc * Rational::from(BigInt::from(xi).pow(e))
                    })
            })
            .collect();
        row.push(Rational::from(f(&pattern.word(x))?));
        rows.push(row);
    }
    let coefficients = solve(rows);
    let vars: Vec<&str> = pattern.blocks.iter().map(|b| b.var.as_str()).collect();
    let poly = Polynomial::from_terms(
        &vars,
        coefficients.into_iter().enumerate().map(|(j, c)| (exponent_of(j), c)),
    );
    for i in 0..p {
        for extra in [side as u64, side as u64 + 3] {
            let mut x = window.to_vec();
            x[i] += extra;
            for (j, xj) in x.iter_mut().enumerate() {
                if j != i {
                    *xj += 1;
                }
            }
            let expected = Rational::from(f(&pattern.word(&x))?);
            let point: Vec<Rational> = pattern
                .blocks
                .iter()
                .map(|b| {
                    let k = vars.iter().position(|v| *v == b.var).unwrap();
                    Rational::from(BigInt::from(x[k]))
                })
                .collect();
            if poly_at(&poly, &vars, &point) != expected {
                return Ok(None);
            }
        }
    }
    Ok(Some(poly))
}

fn poly_at(p: &Polynomial, vars: &[&str], point: &[Rational]) -> Rational {
    let aligned: Vec<Rational> = p
        .vars()
        .iter()
        .map(|v| point[vars.iter().position(|w| w == v).unwrap()].clone())
        .collect();
    p.eval(&aligned)
}

/// Gauss-Jordan elimination on an invertible augmented system.
fn solve(mut rows: Vec<Vec<Rational>>) -> Vec<Rational> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .expect("interpolation grid is unisolvent");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    rows.into_iter().map(|mut r| r.pop().unwrap()).collect()
}
