//! Deterministic transducers whose transitions emit functions of the rest of
//! the input, and the canonical residual transducer of a commutative
//! function.
//!
//! The value of a word `w` is
//! `Σᵢ λ(δ*(w₁⋯wᵢ), w_{i+1})(w_{i+2}⋯) + F(δ*(w))`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automaton::WeightedAutomaton;
use crate::decomp::{synthesize_automaton, CommutativeDecomposition};
use crate::linalg::SparseMatrix;
use crate::report::{Certificate, ClassificationReport, Verdict};
use crate::{Error, Result};

/// Default bound on worklist steps and on `|Q| + |O|`.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTransducer {
    alphabet: Vec<char>,
    /// State names as words; the initial state is at index 0.
    states: Vec<String>,
    delta: BTreeMap<(usize, char), usize>,
    lambda: BTreeMap<(usize, char), CommutativeDecomposition>,
    final_values: Vec<BigInt>,
}

impl HTransducer {
    pub fn new(
        alphabet: &[char],
        states: Vec<String>,
        delta: BTreeMap<(usize, char), usize>,
        lambda: BTreeMap<(usize, char), CommutativeDecomposition>,
        final_values: Vec<BigInt>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidTransducer(m));
        let mut sorted = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.as_slice() != alphabet {
            return invalid("alphabet must be sorted without repetitions".into());
        }
        if states.is_empty() {
            return invalid("there must be an initial state".into());
        }
        let mut names = states.clone();
        names.sort();
        names.dedup();
        if names.len() != states.len() {
            return invalid("state names must be distinct".into());
        }
        if let Some(s) = states.iter().find(|s| s.chars().any(|c| !alphabet.contains(&c))) {
            return invalid(format!("state `{s}` is not a word over the alphabet"));
        }
        if final_values.len() != states.len() {
            return invalid(format!(
                "{} final values for {} states",
                final_values.len(),
                states.len()
            ));
        }
        for q in 0..states.len() {
            for &a in alphabet {
                match delta.get(&(q, a)) {
                    None => return invalid(format!("no transition from state {q} on `{a}`")),
                    Some(&t) if t >= states.len() => {
                        return invalid(format!("transition to unknown state {t}"))
                    }
                    _ => {}
                }
                match lambda.get(&(q, a)) {
                    None => return invalid(format!("no output from state {q} on `{a}`")),
                    Some(l) if l.alphabet() != alphabet => {
                        return invalid(format!("output of state {q} on `{a}` has another alphabet"))
                    }
                    _ => {}
                }
            }
        }
        if delta.len() != states.len() * alphabet.len() || lambda.len() != delta.len() {
            return invalid("transitions mention unknown states or letters".into());
        }
        Ok(HTransducer {
            alphabet: alphabet.to_vec(),
            states,
            delta,
            lambda,
            final_values,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn delta(&self, q: usize, a: char) -> usize {
        self.delta[&(q, a)]
    }

    pub fn lambda(&self, q: usize, a: char) -> &CommutativeDecomposition {
        &self.lambda[&(q, a)]
    }

    pub fn final_value(&self, q: usize) -> &BigInt {
        &self.final_values[q]
    }

    pub fn final_values(&self) -> &[BigInt] {
        &self.final_values
    }

    /// `δ*(q, w)`.
    pub fn run_from(&self, q: usize, w: &str) -> Result<usize> {
        w.chars().try_fold(q, |s, a| {
            self.delta.get(&(s, a)).copied().ok_or(Error::UnknownLetter(a))
        })
    }

    pub fn eval(&self, w: &str) -> Result<BigInt> {
        let letters: Vec<char> = w.chars().collect();
        let mut q = 0;
        let mut total = BigInt::zero();
        for (i, &a) in letters.iter().enumerate() {
            let next = *self.delta.get(&(q, a)).ok_or(Error::UnknownLetter(a))?;
            let rest: String = letters[i + 1..].iter().collect();
            total += self.lambda[&(q, a)].eval_word(&rest)?;
            q = next;
        }
        Ok(total + &self.final_values[q])
    }

    /// A weighted automaton computing the same function: a copy of the
    /// control automaton whose transitions also enter, with weight one, an
    /// automaton computing the emitted function on the rest of the input.
    pub fn to_automaton(&self) -> Result<WeightedAutomaton> {
        let n = self.states.len();
        let blocks: Vec<((usize, char), WeightedAutomaton)> = self
            .lambda
            .iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(k, l)| synthesize_automaton(l).map(|a| (*k, a)))
            .collect::<Result<_>>()?;
        let dim = n + blocks.iter().map(|(_, a)| a.dim()).sum::<usize>();
        let mut matrices: BTreeMap<char, SparseMatrix> = self
            .alphabet
            .iter()
            .map(|&a| (a, SparseMatrix::zero(dim)))
            .collect();
        for (&(q, a), &t) in &self.delta {
            matrices.get_mut(&a).unwrap().add_entry(q, t, &BigInt::one());
        }
        let mut final_weights = vec![BigInt::zero(); dim];
        final_weights[..n].clone_from_slice(&self.final_values);
        let mut offset = n;
        for ((q, a), block) in &blocks {
            let entry = matrices.get_mut(a).unwrap();
            for (j, x) in block.initial().iter().enumerate() {
                entry.add_entry(*q, offset + j, x);
            }
            for &c in &self.alphabet {
                let m = block.matrix(c).expect("same alphabet");
                let target = matrices.get_mut(&c).unwrap();
                for (i, j, x) in m.entries() {
                    target.add_entry(offset + i, offset + j, x);
                }
            }
            final_weights[offset..offset + block.dim()].clone_from_slice(block.final_weights());
            offset += block.dim();
        }
        let mut initial = vec![BigInt::zero(); dim];
        initial[0] = BigInt::one();
        WeightedAutomaton::new(&self.alphabet, initial, matrices, final_weights)
    }
}

/// Outcome of testing `v ⪯ u`, i.e. whether `w ↦ f(uw) − f(vw)` lies in
/// `NPoly[k − 1]`; for `k = 0` that class only contains the zero function.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualOrderCheck {
    pub u: String,
    pub v: String,
    pub verdict: bool,
    pub derivative: CommutativeDecomposition,
    pub certificate: ClassificationReport,
}

/// `w ↦ f(uw) − f(vw)`.
pub fn derivative(f: &CommutativeDecomposition, u: &str, v: &str) -> Result<CommutativeDecomposition> {
    f.shift_word(u)?.sub(&f.shift_word(v)?)
}

pub fn resleq(f: &CommutativeDecomposition, u: &str, v: &str, k: u32) -> Result<ResidualOrderCheck> {
    let d = derivative(f, u, v)?;
    let certificate = match k {
        0 => {
            if d.is_zero() {
                ClassificationReport::new("NPoly[-1]", Verdict::Yes, Certificate::None)
            } else {
                let (ty, _) = d
                    .pieces()
                    .iter()
                    .find(|(_, p)| !p.is_zero())
                    .expect("a non-zero piece");
                let reason = ClassificationReport::new(
                    "zero",
                    Verdict::No,
                    Certificate::Reason(format!("piece {} is {}", ty, d.piece(ty))),
                );
                ClassificationReport::new(
                    "NPoly[-1]",
                    Verdict::No,
                    Certificate::Piece {
                        ty: ty.clone(),
                        reason: Box::new(reason),
                    },
                )
            }
        }
        _ => d.is_npoly(Some(k - 1))?,
    };
    Ok(ResidualOrderCheck {
        u: u.to_string(),
        v: v.to_string(),
        verdict: certificate.verdict.is_yes(),
        derivative: d,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum BuildOutcome {
    Built(HTransducer),
    Inconclusive { steps: usize, states: usize, pending: usize },
}

impl BuildOutcome {
    pub fn transducer(&self) -> Option<&HTransducer> {
        match self {
            BuildOutcome::Built(t) => Some(t),
            BuildOutcome::Inconclusive { .. } => None,
        }
    }
}

fn shortlex_key(w: &str) -> (usize, &str) {
    (w.chars().count(), w)
}

/// Builds the `k`-residual transducer, taking worklist items in shortlex
/// order.
pub fn build_residual_transducer(
    f: &CommutativeDecomposition,
    k: u32,
    cap: usize,
) -> Result<BuildOutcome> {
    build_residual_transducer_with(f, k, cap, |items| {
        (0..items.len())
            .min_by(|&i, &j| shortlex_key(&items[i]).cmp(&shortlex_key(&items[j])))
            .expect("worklist is not empty")
    })
}

/// Worklist construction of the `k`-residual transducer. `choose` picks the
/// index of the next item; the result does not depend on it.
///
/// States are words, starting from `ε`. For an item `ua`, the target of
/// `δ(u, a)` is the longest prefix `v` of `u` with `v ⪯ ua`; if there is none
/// `ua` becomes a state and its one-letter extensions join the worklist.
/// Gives up once `cap` steps are taken or `|Q| + |O|` exceeds `cap`.
pub fn build_residual_transducer_with(
    f: &CommutativeDecomposition,
    k: u32,
    cap: usize,
    mut choose: impl FnMut(&[String]) -> usize,
) -> Result<BuildOutcome> {
    let alphabet = f.alphabet().to_vec();
    let zero = CommutativeDecomposition::constant(&alphabet, BigInt::zero())?;
    let mut states: Vec<String> = vec![String::new()];
    let mut index: HashMap<String, usize> = HashMap::from([(String::new(), 0)]);
    let mut worklist: Vec<String> = alphabet.iter().map(|a| a.to_string()).collect();
    let mut delta = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    let mut steps = 0usize;
    while !worklist.is_empty() {
        debug_assert!(worklist_invariants(&states, &worklist));
        steps += 1;
        if steps > cap || states.len() + worklist.len() > cap {
            return Ok(BuildOutcome::Inconclusive {
                steps,
                states: states.len(),
                pending: worklist.len(),
            });
        }
        let i = choose(&worklist);
        let ua = worklist.swap_remove(i);
        let a = ua.chars().last().expect("worklist items are non-empty");
        let u = &ua[..ua.len() - a.len_utf8()];
        let q = index[u];
        let mut target = None;
        for end in (0..=u.len()).rev().filter(|&e| u.is_char_boundary(e)) {
            let v = &u[..end];
            let check = resleq(f, &ua, v, k)?;
            if check.verdict {
                debug_assert!(
                    !resleq(f, v, &ua, k)?.verdict || check.derivative.is_zero(),
                    "mutually comparable words must have equal residuals"
                );
                target = Some((index[v], check.derivative));
                break;
            }
        }
        match target {
            Some((t, d)) => {
                delta.insert((q, a), t);
                lambda.insert((q, a), d);
            }
            None => {
                let t = states.len();
                states.push(ua.clone());
                index.insert(ua.clone(), t);
                delta.insert((q, a), t);
                lambda.insert((q, a), zero.clone());
                worklist.extend(alphabet.iter().map(|b| format!("{ua}{b}")));
            }
        }
    }
    let final_values = states
        .iter()
        .map(|s| f.eval_word(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(BuildOutcome::Built(HTransducer::new(
        &alphabet,
        states,
        delta,
        lambda,
        final_values,
    )?))
}

/// `Q ∪ O` is closed under prefixes and the items of `O` are pairwise
/// incomparable for the prefix order.
fn worklist_invariants(states: &[String], worklist: &[String]) -> bool {
    let all: std::collections::HashSet<&str> = states
        .iter()
        .chain(worklist.iter())
        .map(String::as_str)
        .collect();
    let closed = all.iter().all(|w| {
        w.char_indices().all(|(i, _)| all.contains(&w[..i]))
    });
    let incomparable = worklist.iter().enumerate().all(|(i, x)| {
        worklist
            .iter()
            .enumerate()
            .all(|(j, y)| i == j || !y.starts_with(x.as_str()))
    });
    closed && incomparable
}

/// Rechecks every clause of the definition of the `k`-residual transducer
/// of `f` and compares values on all words up to `max_len`.
pub fn verify_canonical(
    t: &HTransducer,
    f: &CommutativeDecomposition,
    k: u32,
    max_len: usize,
) -> Result<ClassificationReport> {
    let fail = |reason: String| {
        Ok(ClassificationReport::new(
            "canonical",
            Verdict::No,
            Certificate::Reason(reason),
        ))
    };
    if t.alphabet() != f.alphabet() {
        return fail("alphabets differ".into());
    }
    if !t.states[0].is_empty() {
        return fail("the initial state is not the empty word".into());
    }
    for s in &t.states {
        for (i, _) in s.char_indices() {
            if t.state_index(&s[..i]).is_none() {
                return fail(format!("prefix `{}` of state `{s}` is not a state", &s[..i]));
            }
        }
    }
    let mut seen = vec![false; t.states.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        for &a in t.alphabet() {
            let r = t.delta(q, a);
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }
    if let Some(q) = seen.iter().position(|s| !s) {
        return fail(format!("state `{}` is unreachable", t.states[q]));
    }
    for (q, u) in t.states.iter().enumerate() {
        for &a in t.alphabet() {
            let ua = format!("{u}{a}");
            let expected = if t.state_index(&ua).is_some() {
                Some(ua.clone())
            } else {
                let mut found = None;
                for end in (0..=u.len()).rev().filter(|&e| u.is_char_boundary(e)) {
                    let v = &u[..end];
                    if resleq(f, &ua, v, k)?.verdict {
                        found = Some(v.to_string());
                        break;
                    }
                }
                found
            };
            let actual = &t.states[t.delta(q, a)];
            match expected {
                None => {
                    return fail(format!("no prefix of `{ua}` is below it, so it must be a state"))
                }
                Some(v) if v != *actual => {
                    return fail(format!(
                        "delta({}, {a}) is `{}` but should be `{}`",
                        crate::report::show_word(u),
                        crate::report::show_word(actual),
                        crate::report::show_word(&v)
                    ))
                }
                _ => {}
            }
            let check = resleq(f, &ua, actual, k)?;
            let emitted = t.lambda(q, a);
            if !emitted.sub(&check.derivative)?.is_zero() {
                return fail(format!(
                    "lambda({}, {a}) is not the derivative",
                    crate::report::show_word(u)
                ));
            }
            if !check.verdict {
                return fail(format!(
                    "lambda({}, {a}) is not in NPoly[{}]",
                    crate::report::show_word(u),
                    i64::from(k) - 1
                ));
            }
        }
    }
    for (q, s) in t.states.iter().enumerate() {
        if t.final_values[q] != f.eval_word(s)? {
            return fail(format!("F({}) differs from f", crate::report::show_word(s)));
        }
    }
    for w in crate::oracle::WordEnumerator::new(t.alphabet(), max_len) {
        if t.eval(&w)? != f.eval_word(&w)? {
            return fail(format!("values differ on `{}`", crate::report::show_word(&w)));
        }
    }
    Ok(ClassificationReport::new("canonical", Verdict::Yes, Certificate::None)
        .with_bound(format!("checked<={max_len}")))
}

/// A state `q` and word `u` with `δ(q, u) ≠ q` and `δ(q, uⁿ) = q` for some
/// `n ≥ 2`, or `None` if the transition monoid is aperiodic.
///
/// The transition monoid is enumerated breadth first, so `u` is the
/// shortlex-least word inducing a non-aperiodic transformation and `q` is the
/// first state on one of its non-trivial cycles.
pub fn find_counter(t: &HTransducer) -> Option<(String, String)> {
    let n = t.states.len();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, String> = HashMap::from([(identity.clone(), String::new())]);
    let mut queue = VecDeque::from([(identity, String::new())]);
    while let Some((rho, word)) = queue.pop_front() {
        if let Some(q) = (0..n).find(|&q| on_nontrivial_cycle(&rho, q)) {
            return Some((t.states[q].clone(), word));
        }
        for &a in t.alphabet() {
            let next: Vec<usize> = rho.iter().map(|&q| t.delta(q, a)).collect();
            if !seen.contains_key(&next) {
                let w = format!("{word}{a}");
                seen.insert(next.clone(), w.clone());
                queue.push_back((next, w));
            }
        }
    }
    None
}

fn on_nontrivial_cycle(rho: &[usize], q: usize) -> bool {
    if rho[q] == q {
        return false;
    }
    let mut p = rho[q];
    for _ in 0..rho.len() {
        if p == q {
            return true;
        }
        p = rho[p];
    }
    false
}

/// Everything the residual transducer reveals about a commutative function.
#[derive(Clone, Debug, PartialEq)]
pub struct TransducerClassification {
    pub k: u32,
    pub npoly: ClassificationReport,
    pub outcome: BuildOutcome,
    pub counter: Option<(String, String)>,
    pub nsf: ClassificationReport,
    pub zsf: ClassificationReport,
    /// For functions of degree zero: the counter analysis of the
    /// 0-residual transducer, which decides star-freeness on its own.
    pub degree_zero: Option<ClassificationReport>,
}

impl TransducerClassification {
    pub fn reports(&self) -> Vec<ClassificationReport> {
        let mut out = vec![self.npoly.clone()];
        let built = match &self.outcome {
            BuildOutcome::Built(t) => ClassificationReport::new(
                format!("residual[{}]", self.k),
                Verdict::Yes,
                Certificate::None,
            )
            .with_bound(format!("states={}", t.states().len())),
            BuildOutcome::Inconclusive { steps, .. } => ClassificationReport::new(
                format!("residual[{}]", self.k),
                Verdict::Inconclusive,
                Certificate::None,
            )
            .with_bound(format!("steps={steps}")),
        };
        out.push(built);
        if self.outcome.transducer().is_some() {
            out.push(counter_report(&self.counter));
        }
        out.push(self.nsf.clone());
        out.push(self.zsf.clone());
        if let Some(r) = &self.degree_zero {
            out.push(r.clone());
        }
        out
    }
}

fn counter_report(counter: &Option<(String, String)>) -> ClassificationReport {
    match counter {
        None => ClassificationReport::new("counter-free", Verdict::Yes, Certificate::None),
        Some((q, u)) => ClassificationReport::new(
            "counter-free",
            Verdict::No,
            Certificate::Counter(q.clone(), u.clone()),
        ),
    }
}

pub fn classify_via_transducer(
    f: &CommutativeDecomposition,
    k: u32,
    cap: usize,
) -> Result<TransducerClassification> {
    let npoly = f.is_npoly(Some(k))?;
    let outcome = build_residual_transducer(f, k, cap)?;
    let counter = outcome.transducer().and_then(find_counter);
    let nsf = f.is_nsf()?;
    let zsf = f.is_zsf();
    let degree_zero = if f.degree() == 0 && f.is_npoly(Some(0))?.verdict.is_yes() {
        let zero = build_residual_transducer(f, 0, cap)?;
        Some(match zero.transducer() {
            Some(t) => {
                let mut r = counter_report(&find_counter(t));
                r.class = "SF-by-0-residual".into();
                r.with_bound(format!("states={}", t.states().len()))
            }
            None => ClassificationReport::new(
                "SF-by-0-residual",
                Verdict::Inconclusive,
                Certificate::None,
            ),
        })
    } else {
        None
    };
    Ok(TransducerClassification {
        k,
        npoly,
        outcome,
        counter,
        nsf,
        zsf,
        degree_zero,
    })
}

#[cfg(test)]
mod tests;
