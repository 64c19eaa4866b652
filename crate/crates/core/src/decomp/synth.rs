//! Conversion between decompositions and weighted automata.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{letter_name, CommutativeDecomposition, ModuloType};
use crate::automaton::WeightedAutomaton;
use crate::linalg::SparseMatrix;
use crate::poly::Rational;
use crate::{Error, Result};

/// Search limits for [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_omega: u64,
    /// Largest degree per variable; defaults to `dim − 1`.
    pub max_degree: Option<u32>,
    /// Largest dimension of a synthesized automaton.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_omega: 24,
            max_degree: None,
            max_dim: 4096,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Found(CommutativeDecomposition),
    Inconclusive(String),
}

/// Per-letter building block.
struct Block {
    omega: usize,
    degree: usize,
    literal: bool,
}

impl Block {
    fn dim(&self) -> usize {
        self.omega * (self.degree + 1) + if self.literal { self.omega } else { 0 }
    }

    fn state(&self, rho: usize, j: usize) -> usize {
        rho * (self.degree + 1) + j
    }

    fn lit(&self, rho: usize) -> usize {
        self.omega * (self.degree + 1) + rho
    }

    /// One more letter: the residue advances, and on wrap-around the
    /// binomial coordinates of the quotient follow Pascal's rule.
    fn matrix(&self) -> SparseMatrix {
        let one = BigInt::one();
        let mut m = SparseMatrix::zero(self.dim());
        for rho in 0..self.omega {
            for j in 0..=self.degree {
                if rho + 1 < self.omega {
                    m.add_entry(self.state(rho, j), self.state(rho + 1, j), &one);
                } else {
                    m.add_entry(self.state(rho, j), self.state(0, j), &one);
                    if j < self.degree {
                        m.add_entry(self.state(rho, j), self.state(0, j + 1), &one);
                    }
                }
            }
            if self.literal && rho + 1 < self.omega {
                m.add_entry(self.lit(rho), self.lit(rho + 1), &one);
            }
        }
        m
    }

    fn initial(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        v[self.state(0, 0)] = BigInt::one();
        if self.literal {
            v[self.lit(0)] = BigInt::one();
        }
        v
    }
}

fn kron_all(ms: &[SparseMatrix]) -> SparseMatrix {
    ms.iter()
        .skip(1)
        .fold(ms[0].clone(), |acc, m| acc.kron(m))
}

/// Builds a commutative automaton computing the decomposition on letter
/// counts. Fails with [`Error::TooLarge`] when the dimension would exceed
/// `max_dim`.
pub fn synthesize_automaton_with_limit(
    d: &CommutativeDecomposition,
    max_dim: usize,
) -> Result<WeightedAutomaton> {
    let alphabet = d.alphabet();
    let mut distinct = d.pieces().values();
    if let Some(first) = distinct.next() {
        if first.is_constant() && distinct.all(|p| p == first) {
            return WeightedAutomaton::constant(alphabet, first.constant_term().to_integer());
        }
    }
    let k = alphabet.len();
    let omega = d.omega() as usize;
    let blocks: Vec<Block> = (0..k)
        .map(|i| Block {
            omega,
            degree: d.degree_in(i) as usize,
            literal: needs_literal_states(d, i),
        })
        .collect();
    let mut dim: usize = 1;
    for b in &blocks {
        dim = dim
            .checked_mul(b.dim())
            .filter(|&n| n <= max_dim)
            .ok_or_else(|| {
                Error::TooLarge(format!("synthesized automaton exceeds dimension {max_dim}"))
            })?;
    }
    let strides: Vec<usize> = (0..k)
        .map(|i| blocks[i + 1..].iter().map(Block::dim).product())
        .collect();

    let mut final_weights = vec![BigInt::zero(); dim];
    for (ty, piece) in d.pieces() {
        if (0..k).any(|i| !blocks[i].literal && !ty.contains(i)) {
            continue;
        }
        let basis = piece.to_binomial_basis();
        for (alpha, c) in &basis.coefficients {
            let c = c.to_integer();
            // each letter contributes a vector with at most two entries
            let mut partial: Vec<(usize, BigInt)> = vec![(0, c)];
            for i in 0..k {
                let b = &blocks[i];
                let rho = ty.r[i] as usize;
                let feature: Vec<(usize, i64)> = if ty.contains(i) {
                    let exponent = basis
                        .vars
                        .iter()
                        .position(|v| *v == letter_name(alphabet[i]))
                        .map(|j| alpha[j] as usize)
                        .unwrap_or(0);
                    let mut f = vec![(b.state(rho, exponent), 1)];
                    if b.literal && exponent == 0 {
                        f.push((b.lit(rho), -1));
                    }
                    f
                } else {
                    vec![(b.lit(rho), 1)]
                };
                let stride = strides[i];
                let mut next = Vec::with_capacity(partial.len() * feature.len());
                for (pos, v) in &partial {
                    for (j, sign) in &feature {
                        next.push((pos + j * stride, v * BigInt::from(*sign)));
                    }
                }
                partial = next;
            }
            for (pos, v) in partial {
                final_weights[pos] += v;
            }
        }
    }

    let mut initial = vec![BigInt::one()];
    for b in &blocks {
        initial = crate::linalg::kron_vec(&initial, &b.initial());
    }
    let mut matrices = BTreeMap::new();
    for (i, a) in alphabet.iter().enumerate() {
        let factors: Vec<SparseMatrix> = blocks
            .iter()
            .enumerate()
            .map(|(j, b)| {
                if i == j {
                    b.matrix()
                } else {
                    SparseMatrix::identity(b.dim())
                }
            })
            .collect();
        matrices.insert(*a, kron_all(&factors));
    }
    WeightedAutomaton::new(alphabet, initial, matrices, final_weights)
}

/// [`synthesize_automaton_with_limit`] with the default dimension limit.
pub fn synthesize_automaton(d: &CommutativeDecomposition) -> Result<WeightedAutomaton> {
    synthesize_automaton_with_limit(d, Limits::default().max_dim)
}

/// Whether letter `i` needs states recognising counts below the modulus,
/// i.e. whether some piece differs at quotient zero from the literal piece
/// with the same residues.
fn needs_literal_states(d: &CommutativeDecomposition, i: usize) -> bool {
    let name = letter_name(d.alphabet()[i]);
    d.pieces().iter().any(|(ty, p)| {
        if !ty.contains(i) {
            return false;
        }
        let at_zero = match p.var_index(&name) {
            Some(j) => p.fix_vars(&[(j, Rational::zero())]),
            None => p.clone(),
        };
        let literal = ModuloType {
            s: ty.s.iter().copied().filter(|&j| j != i).collect(),
            r: ty.r.clone(),
        };
        at_zero != *d.piece(&literal)
    })
}

/// Finds a decomposition of a commutative automaton by trying moduli
/// `ω = 1, 2, …` and per-variable degrees `0, 1, …`, interpolating the
/// pieces from values and accepting a candidate only when the synthesized
/// automaton is equivalent to the input.
pub fn decompose(a: &WeightedAutomaton, limits: &Limits) -> Result<DecomposeOutcome> {
    if let Some((u, v)) = a.is_commutative() {
        return Err(Error::NotCommutative(u, v));
    }
    if let Some(c) = a.alphabet().iter().find(|c| !c.is_ascii_alphabetic()) {
        return Err(Error::InvalidAutomaton(format!(
            "letter `{c}` cannot name a variable"
        )));
    }
    let max_degree = limits
        .max_degree
        .unwrap_or_else(|| a.dim().saturating_sub(1) as u32);
    let mut cache: HashMap<Vec<u64>, BigInt> = HashMap::new();
    let mut value = |x: &[u64]| -> Result<BigInt> {
        if let Some(v) = cache.get(x) {
            return Ok(v.clone());
        }
        let v = a.evaluate_counts(x)?;
        cache.insert(x.to_vec(), v.clone());
        Ok(v)
    };
    let mut too_large = 0usize;
    for omega in 1..=limits.max_omega {
        for degree in 0..=max_degree {
            let candidate =
                CommutativeDecomposition::interpolate(a.alphabet(), omega, degree, &mut value)?;
            if !spot_check(&candidate, degree, &mut value)? {
                continue;
            }
            let synthesized = match synthesize_automaton_with_limit(&candidate, limits.max_dim) {
                Ok(s) => s,
                Err(Error::TooLarge(_)) => {
                    too_large += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if a.equivalent(&synthesized)?.is_none() {
                return Ok(DecomposeOutcome::Found(candidate));
            }
        }
    }
    let mut reason = format!(
        "no decomposition with modulus <= {} and degree <= {max_degree}",
        limits.max_omega
    );
    if too_large > 0 {
        reason.push_str(&format!(
            "; {too_large} candidates skipped above dimension {}",
            limits.max_dim
        ));
    }
    Ok(DecomposeOutcome::Inconclusive(reason))
}

/// Compares the candidate with the function just outside the interpolation
/// grid, to discard wrong candidates before the exact check.
fn spot_check(
    d: &CommutativeDecomposition,
    degree: u32,
    value: &mut impl FnMut(&[u64]) -> Result<BigInt>,
) -> Result<bool> {
    let beyond = u64::from(degree) + 2;
    for ty in d.pieces().keys() {
        let m = ty.s.len();
        if m == 0 {
            continue;
        }
        let mut points = vec![vec![beyond; m]];
        for i in 0..m {
            let mut q = vec![1; m];
            q[i] = beyond;
            points.push(q);
        }
        for q in points {
            let x = ty.point(d.omega(), &q);
            if d.eval(&x)? != value(&x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
