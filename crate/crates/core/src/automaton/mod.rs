//! ℤ-weighted automata given by linear representations.
//!
//! An automaton with dimension `n` has an initial row vector, one `n × n`
//! integer matrix per letter and a final column vector. The value of a word
//! `w₁⋯w_m` is `initial · M_{w₁} ⋯ M_{w_m} · final`.

mod monoid;

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{dot, kron_vec, primitive, EchelonBasis, SparseMatrix};
use crate::{Error, Result};

pub use monoid::{is_aperiodic_monoid, MonoidPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton {
    alphabet: Vec<char>,
    initial: Vec<BigInt>,
    matrices: BTreeMap<char, SparseMatrix>,
    final_weights: Vec<BigInt>,
}

impl WeightedAutomaton {
    /// Validates dimensions and builds the automaton. The alphabet is sorted
    /// and must not contain duplicates.
    pub fn new(
        alphabet: &[char],
        initial: Vec<BigInt>,
        matrices: BTreeMap<char, SparseMatrix>,
        final_weights: Vec<BigInt>,
    ) -> Result<Self> {
        let mut sorted = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton("repeated letter in alphabet".into()));
        }
        let dim = initial.len();
        if dim == 0 {
            return Err(Error::InvalidAutomaton("dimension must be positive".into()));
        }
        if final_weights.len() != dim {
            return Err(Error::InvalidAutomaton(format!(
                "final vector has length {} but dimension is {dim}",
                final_weights.len()
            )));
        }
        for a in &sorted {
            match matrices.get(a) {
                None => {
                    return Err(Error::InvalidAutomaton(format!("no matrix for letter `{a}`")))
                }
                Some(m) if m.dim() != dim => {
                    return Err(Error::InvalidAutomaton(format!(
                        "matrix for `{a}` has dimension {} but expected {dim}",
                        m.dim()
                    )))
                }
                _ => {}
            }
        }
        if let Some(extra) = matrices.keys().find(|a| !sorted.contains(a)) {
            return Err(Error::InvalidAutomaton(format!(
                "matrix given for `{extra}` which is not in the alphabet"
            )));
        }
        Ok(WeightedAutomaton {
            alphabet: sorted,
            initial,
            matrices,
            final_weights,
        })
    }

    /// Convenience constructor from dense machine-integer data; letters are
    /// paired with matrices in the order given.
    pub fn from_dense(
        alphabet: &[char],
        initial: &[i64],
        matrices: &[Vec<Vec<i64>>],
        final_weights: &[i64],
    ) -> Result<Self> {
        if matrices.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton(
                "one matrix per letter is required".into(),
            ));
        }
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let mut ms = BTreeMap::new();
        for (a, m) in alphabet.iter().zip(matrices) {
            if m.iter().any(|r| r.len() != m.len()) {
                return Err(Error::InvalidAutomaton(format!(
                    "matrix for `{a}` is not square"
                )));
            }
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| big(r)).collect();
            ms.insert(*a, SparseMatrix::from_dense(&rows));
        }
        Self::new(alphabet, big(initial), ms, big(final_weights))
    }

    /// The one-state automaton with value `c` on every word.
    pub fn constant(alphabet: &[char], c: BigInt) -> Result<Self> {
        let ms = alphabet
            .iter()
            .map(|&a| (a, SparseMatrix::identity(1)))
            .collect();
        Self::new(alphabet, vec![BigInt::one()], ms, vec![c])
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[BigInt] {
        &self.final_weights
    }

    pub fn matrix(&self, a: char) -> Option<&SparseMatrix> {
        self.matrices.get(&a)
    }

    fn matrix_or_err(&self, a: char) -> Result<&SparseMatrix> {
        self.matrices.get(&a).ok_or(Error::UnknownLetter(a))
    }

    /// `initial · M_w` as a row vector.
    pub fn run(&self, w: &str) -> Result<Vec<BigInt>> {
        let mut v = self.initial.clone();
        for a in w.chars() {
            v = self.matrix_or_err(a)?.left_mul(&v);
        }
        Ok(v)
    }

    pub fn evaluate(&self, w: &str) -> Result<BigInt> {
        Ok(dot(&self.run(w)?, &self.final_weights))
    }

    fn check_same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.clone(),
                other.alphabet.clone(),
            ));
        }
        Ok(())
    }

    /// Pointwise sum, by direct sum of the representations.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().cloned());
        let mut final_weights = self.final_weights.clone();
        final_weights.extend(other.final_weights.iter().cloned());
        let matrices = self
            .matrices
            .iter()
            .map(|(a, m)| (*a, m.direct_sum(&other.matrices[a])))
            .collect();
        Self::new(&self.alphabet, initial, matrices, final_weights)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.sum(&other.scalar_mul(&-BigInt::one()))
    }

    /// Pointwise product, by Kronecker product of the representations.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let matrices = self
            .matrices
            .iter()
            .map(|(a, m)| (*a, m.kron(&other.matrices[a])))
            .collect();
        Self::new(
            &self.alphabet,
            kron_vec(&self.initial, &other.initial),
            matrices,
            kron_vec(&self.final_weights, &other.final_weights),
        )
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        out.initial = self.initial.iter().map(|x| x * c).collect();
        out
    }

    /// `w ↦ α^{|w|} · A(w)`.
    pub fn geometric_scale(&self, alpha: &BigInt) -> Self {
        let mut out = self.clone();
        out.matrices = self
            .matrices
            .iter()
            .map(|(a, m)| (*a, m.scale(alpha)))
            .collect();
        out
    }

    /// Decides whether the series is identically zero. Returns `None` if it
    /// is, otherwise the shortlex-least word with a non-zero value.
    ///
    /// Words are explored breadth first in shortlex order; a word is expanded
    /// only when its vector is independent of the vectors seen so far, so at
    /// most `dim` words are expanded.
    pub fn is_zero(&self) -> Option<String> {
        let mut basis = EchelonBasis::new();
        let mut queue: VecDeque<(String, Vec<BigInt>)> = VecDeque::new();
        queue.push_back((String::new(), primitive(&self.initial)));
        while let Some((w, v)) = queue.pop_front() {
            if !basis.insert(&v) {
                continue;
            }
            if !dot(&v, &self.final_weights).is_zero() {
                return Some(w);
            }
            for (&a, m) in &self.matrices {
                let next = primitive(&m.left_mul(&v));
                let mut u = w.clone();
                u.push(a);
                queue.push_back((u, next));
            }
        }
        None
    }

    /// Returns `None` when both automata compute the same series, otherwise
    /// the shortlex-least word on which they differ.
    pub fn equivalent(&self, other: &Self) -> Result<Option<String>> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Computes `w ↦ A(w')` where `w'` swaps the first two letters of `w`.
    ///
    /// States: a start state, one state per letter holding the first letter
    /// read, and a copy of `A` entered on the second letter.
    pub fn compose_transposition(&self) -> Self {
        let n = self.dim();
        let s = self.alphabet.len();
        let dim = 1 + s + n;
        let hold = |i: usize| 1 + i;
        let run = 1 + s;
        let mut initial = vec![BigInt::zero(); dim];
        initial[0] = BigInt::one();
        let mut final_weights = vec![BigInt::zero(); dim];
        final_weights[0] = dot(&self.initial, &self.final_weights);
        for (i, a) in self.alphabet.iter().enumerate() {
            final_weights[hold(i)] = dot(&self.matrices[a].left_mul(&self.initial), &self.final_weights);
        }
        final_weights[run..].clone_from_slice(&self.final_weights);
        let mut matrices = BTreeMap::new();
        for (bi, b) in self.alphabet.iter().enumerate() {
            let mut m = SparseMatrix::zero(dim);
            m.add_entry(0, hold(bi), &BigInt::one());
            let after_b = self.matrices[b].left_mul(&self.initial);
            for (ai, a) in self.alphabet.iter().enumerate() {
                let row = self.matrices[a].left_mul(&after_b);
                for (j, x) in row.iter().enumerate() {
                    m.add_entry(hold(ai), run + j, x);
                }
            }
            for (i, j, x) in self.matrices[b].entries() {
                m.add_entry(run + i, run + j, x);
            }
            matrices.insert(*b, m);
        }
        Self::new(&self.alphabet, initial, matrices, final_weights)
            .expect("construction preserves dimensions")
    }

    /// Computes `w ↦ A(w')` where `w'` moves the last letter of `w` to the
    /// front.
    ///
    /// After the first letter the automaton guesses the last letter `c`,
    /// applies `M_c` up front and then runs `A` one letter behind, keeping the
    /// most recent letter `b` in its state. Runs whose final `b` differs from
    /// the guess get final weight zero.
    pub fn compose_cycle(&self) -> Self {
        let n = self.dim();
        let s = self.alphabet.len();
        let dim = 1 + s * s * n;
        let block = |c: usize, b: usize| 1 + (c * s + b) * n;
        let mut initial = vec![BigInt::zero(); dim];
        initial[0] = BigInt::one();
        let mut final_weights = vec![BigInt::zero(); dim];
        final_weights[0] = dot(&self.initial, &self.final_weights);
        for c in 0..s {
            final_weights[block(c, c)..block(c, c) + n].clone_from_slice(&self.final_weights);
        }
        let guessed: Vec<Vec<BigInt>> = self
            .alphabet
            .iter()
            .map(|c| self.matrices[c].left_mul(&self.initial))
            .collect();
        let mut matrices = BTreeMap::new();
        for (yi, y) in self.alphabet.iter().enumerate() {
            let mut m = SparseMatrix::zero(dim);
            for (c, row) in guessed.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    m.add_entry(0, block(c, yi) + j, x);
                }
            }
            for c in 0..s {
                for (bi, b) in self.alphabet.iter().enumerate() {
                    for (i, j, x) in self.matrices[b].entries() {
                        m.add_entry(block(c, bi) + i, block(c, yi) + j, x);
                    }
                }
            }
            matrices.insert(*y, m);
        }
        Self::new(&self.alphabet, initial, matrices, final_weights)
            .expect("construction preserves dimensions")
    }

    /// Decides commutativity. Returns `None` if the series is commutative,
    /// otherwise a word `w` and a permutation `w'` of it with different
    /// values.
    ///
    /// A series is commutative iff it is invariant under swapping the first
    /// two letters and under moving the last letter to the front, since these
    /// two permutations generate every symmetric group.
    pub fn is_commutative(&self) -> Option<(String, String)> {
        let swap = self
            .equivalent(&self.compose_transposition())
            .expect("same alphabet");
        if let Some(w) = swap {
            let mut letters: Vec<char> = w.chars().collect();
            letters.swap(0, 1);
            return Some((w, letters.into_iter().collect()));
        }
        let cycle = self
            .equivalent(&self.compose_cycle())
            .expect("same alphabet");
        cycle.map(|w| {
            let mut letters: Vec<char> = w.chars().collect();
            letters.rotate_right(1);
            (w, letters.into_iter().collect())
        })
    }

    /// Value on the word `a₁^{x₁} ⋯ a_k^{x_k}`.
    pub fn evaluate_counts(&self, counts: &[u64]) -> Result<BigInt> {
        if counts.len() != self.alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "expected {} letter counts, got {}",
                self.alphabet.len(),
                counts.len()
            )));
        }
        let mut v = self.initial.clone();
        for (a, &x) in self.alphabet.iter().zip(counts) {
            let m = &self.matrices[a];
            for _ in 0..x {
                v = m.left_mul(&v);
            }
        }
        Ok(dot(&v, &self.final_weights))
    }
}
