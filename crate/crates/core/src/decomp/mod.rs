//! Canonical form of commutative polynomial-growth functions.
//!
//! A commutative function over letters `a₁, …, a_k` depends only on the
//! letter counts `x ∈ ℕ^k`. Given a modulus `ω`, the type of `x` is the pair
//! `(S, r)` where `S = {i : xᵢ ≥ ω}` and `rᵢ = xᵢ mod ω`. A
//! [`CommutativeDecomposition`] stores one integer-valued polynomial per type,
//! in the quotients `⌊xᵢ/ω⌋` for `i ∈ S`; the quotient variables are named
//! after the letters.

mod synth;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::classes::is_strongly_natural;
use crate::poly::{binomial_monomial, Polynomial, Rational};
use crate::report::{Certificate, ClassificationReport, Verdict};
use crate::{Error, Result};

pub use synth::{
    decompose, synthesize_automaton, synthesize_automaton_with_limit, DecomposeOutcome, Limits,
};

/// The type `(S, r)` of a count vector for a given modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuloType {
    /// Sorted letter indices whose count is at least the modulus.
    pub s: Vec<usize>,
    pub r: Vec<u64>,
}

impl ModuloType {
    pub fn of(x: &[u64], omega: u64) -> Self {
        ModuloType {
            s: (0..x.len()).filter(|&i| x[i] >= omega).collect(),
            r: x.iter().map(|v| v % omega).collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.s.binary_search(&i).is_ok()
    }

    /// Every type for `k` letters and modulus `omega`.
    pub fn all(k: usize, omega: u64) -> Vec<ModuloType> {
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << k) {
            let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let mut r = vec![0u64; k];
            loop {
                out.push(ModuloType {
                    s: s.clone(),
                    r: r.clone(),
                });
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    r[i] += 1;
                    if r[i] < omega {
                        break;
                    }
                    r[i] = 0;
                }
                if r.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    /// A count vector of this type with the given quotients on `S`.
    pub fn point(&self, omega: u64, quotients: &[u64]) -> Vec<u64> {
        let mut x = self.r.clone();
        for (&i, q) in self.s.iter().zip(quotients) {
            x[i] += omega * q;
        }
        x
    }
}

impl fmt::Display for ModuloType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|i| i.to_string()).collect();
        let r: Vec<String> = self.r.iter().map(|i| i.to_string()).collect();
        write!(f, "S{{{}}}r[{}]", s.join(","), r.join(","))
    }
}

fn letter_name(a: char) -> String {
    a.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeDecomposition {
    alphabet: Vec<char>,
    omega: u64,
    pieces: BTreeMap<ModuloType, Polynomial>,
}

impl CommutativeDecomposition {
    /// Validates that every type has an integer-valued piece in the letters
    /// of its `S` component. Letters must be ASCII alphabetic.
    pub fn new(
        alphabet: &[char],
        omega: u64,
        pieces: BTreeMap<ModuloType, Polynomial>,
    ) -> Result<Self> {
        if omega == 0 {
            return Err(Error::InvalidDecomposition("modulus must be positive".into()));
        }
        let mut sorted = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alphabet.len() || sorted.as_slice() != alphabet {
            return Err(Error::InvalidDecomposition(
                "alphabet must be sorted without repetitions".into(),
            ));
        }
        if let Some(a) = alphabet.iter().find(|a| !a.is_ascii_alphabetic()) {
            return Err(Error::InvalidDecomposition(format!(
                "letter `{a}` cannot name a variable"
            )));
        }
        let k = alphabet.len();
        let expected = ModuloType::all(k, omega);
        for ty in &expected {
            let Some(p) = pieces.get(ty) else {
                return Err(Error::InvalidDecomposition(format!("missing piece for {ty}")));
            };
            let allowed: BTreeSet<String> = ty.s.iter().map(|&i| letter_name(alphabet[i])).collect();
            for i in p.used_vars() {
                let v = &p.vars()[i];
                if !allowed.contains(v) {
                    return Err(Error::InvalidDecomposition(format!(
                        "piece for {ty} uses `{v}`, which is not a letter of S"
                    )));
                }
            }
            if !p.is_integer_valued() {
                return Err(Error::InvalidDecomposition(format!(
                    "piece for {ty} is not integer-valued"
                )));
            }
        }
        if pieces.len() != expected.len() {
            return Err(Error::InvalidDecomposition(format!(
                "expected {} pieces, found {}",
                expected.len(),
                pieces.len()
            )));
        }
        let pieces = pieces.into_iter().map(|(t, p)| (t, p.trim_vars())).collect();
        Ok(CommutativeDecomposition {
            alphabet: alphabet.to_vec(),
            omega,
            pieces,
        })
    }

    /// Builds the decomposition whose piece for each type is `f(type)`.
    pub fn from_fn(
        alphabet: &[char],
        omega: u64,
        mut f: impl FnMut(&ModuloType) -> Polynomial,
    ) -> Result<Self> {
        let pieces = ModuloType::all(alphabet.len(), omega)
            .into_iter()
            .map(|t| {
                let p = f(&t);
                (t, p)
            })
            .collect();
        Self::new(alphabet, omega, pieces)
    }

    /// The function `x ↦ p(x)` for a polynomial in the letter variables,
    /// as a decomposition with modulus one.
    pub fn from_polynomial(alphabet: &[char], p: &Polynomial) -> Result<Self> {
        Self::from_fn(alphabet, 1, |ty| {
            let values: Vec<(usize, Rational)> = (0..alphabet.len())
                .filter(|i| !ty.contains(*i))
                .filter_map(|i| p.var_index(&letter_name(alphabet[i])).map(|j| (j, Rational::zero())))
                .collect();
            p.fix_vars(&values)
        })
    }

    pub fn constant(alphabet: &[char], c: BigInt) -> Result<Self> {
        Self::from_fn(alphabet, 1, |_| Polynomial::constant(Rational::from_integer(c.clone())))
    }

    /// Interpolates the pieces of a commutative function from its values.
    ///
    /// For each type, the piece is the unique polynomial of degree at most
    /// `degree` in each variable matching `f` on the quotient grid
    /// `{1, …, degree + 1}^S`. The result equals `f` only if `f` really has
    /// such a decomposition.
    pub fn interpolate(
        alphabet: &[char],
        omega: u64,
        degree: u32,
        mut f: impl FnMut(&[u64]) -> Result<BigInt>,
    ) -> Result<Self> {
        let mut pieces = BTreeMap::new();
        for ty in ModuloType::all(alphabet.len(), omega) {
            let names: Vec<String> = ty.s.iter().map(|&i| letter_name(alphabet[i])).collect();
            let piece = interpolate_piece(&names, degree, |q| f(&ty.point(omega, q)))?;
            pieces.insert(ty, piece);
        }
        Self::new(alphabet, omega, pieces)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn pieces(&self) -> &BTreeMap<ModuloType, Polynomial> {
        &self.pieces
    }

    pub fn piece(&self, ty: &ModuloType) -> &Polynomial {
        &self.pieces[ty]
    }

    fn letter_index(&self, a: char) -> Result<usize> {
        self.alphabet
            .binary_search(&a)
            .map_err(|_| Error::UnknownLetter(a))
    }

    /// Letter counts of a word.
    pub fn counts(&self, w: &str) -> Result<Vec<u64>> {
        let mut x = vec![0u64; self.alphabet.len()];
        for a in w.chars() {
            x[self.letter_index(a)?] += 1;
        }
        Ok(x)
    }

    fn piece_value(&self, ty: &ModuloType, x: &[u64]) -> BigInt {
        let p = &self.pieces[ty];
        let point: Vec<Rational> = p
            .vars()
            .iter()
            .map(|v| {
                let i = self
                    .alphabet
                    .iter()
                    .position(|a| letter_name(*a) == *v)
                    .expect("piece variables are letters");
                Rational::from_integer(BigInt::from(x[i] / self.omega))
            })
            .collect();
        let v = p.eval(&point);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    pub fn eval(&self, x: &[u64]) -> Result<BigInt> {
        if x.len() != self.alphabet.len() {
            return Err(Error::InvalidDecomposition(format!(
                "expected {} letter counts, got {}",
                self.alphabet.len(),
                x.len()
            )));
        }
        let ty = ModuloType::of(x, self.omega);
        Ok(self.piece_value(&ty, x))
    }

    pub fn eval_word(&self, w: &str) -> Result<BigInt> {
        self.eval(&self.counts(w)?)
    }

    /// Same function with modulus `m·ω`.
    pub fn refine(&self, m: u64) -> Self {
        assert!(m >= 1, "refinement factor must be positive");
        if m == 1 {
            return self.clone();
        }
        let omega = self.omega * m;
        let k = self.alphabet.len();
        let pieces = ModuloType::all(k, omega)
            .into_iter()
            .map(|ty| {
                let old = ModuloType {
                    s: (0..k)
                        .filter(|&i| ty.contains(i) || ty.r[i] >= self.omega)
                        .collect(),
                    r: ty.r.iter().map(|v| v % self.omega).collect(),
                };
                let p = &self.pieces[&old];
                let mut subs = vec![None; p.vars().len()];
                let mut fixed = Vec::new();
                for (j, v) in p.vars().iter().enumerate() {
                    let i = self.alphabet.iter().position(|a| letter_name(*a) == *v).unwrap();
                    let carry = Rational::from_integer(BigInt::from(ty.r[i] / self.omega));
                    if ty.contains(i) {
                        subs[j] = Some((Rational::from_integer(BigInt::from(m)), carry));
                    } else {
                        fixed.push((j, carry));
                    }
                }
                let piece = p.substitute_affine(&subs).fix_vars(&fixed).trim_vars();
                (ty, piece)
            })
            .collect();
        CommutativeDecomposition {
            alphabet: self.alphabet.clone(),
            omega,
            pieces,
        }
    }

    /// `x ↦ f(x + n·eᵢ)`, with the same modulus.
    pub fn shift(&self, i: usize, n: u64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let w = self.omega;
        let name = letter_name(self.alphabet[i]);
        let pieces = self
            .pieces
            .keys()
            .map(|ty| {
                let mut src = ty.clone();
                let total = ty.r[i] + n;
                src.r[i] = total % w;
                let carry = total / w;
                if !ty.contains(i) && total >= w {
                    src.s.push(i);
                    src.s.sort_unstable();
                }
                let p = &self.pieces[&src];
                let piece = match p.var_index(&name) {
                    None => p.clone(),
                    Some(j) => {
                        let c = Rational::from_integer(BigInt::from(carry));
                        if ty.contains(i) {
                            let mut subs = vec![None; p.vars().len()];
                            subs[j] = Some((Rational::one(), c));
                            p.substitute_affine(&subs)
                        } else {
                            p.fix_vars(&[(j, c)])
                        }
                    }
                };
                (ty.clone(), piece.trim_vars())
            })
            .collect();
        CommutativeDecomposition {
            alphabet: self.alphabet.clone(),
            omega: w,
            pieces,
        }
    }

    /// `x ↦ f(x + counts)`.
    pub fn shift_counts(&self, counts: &[u64]) -> Self {
        counts
            .iter()
            .enumerate()
            .fold(self.clone(), |d, (i, &n)| d.shift(i, n))
    }

    /// The residual `w ↦ f(uw)`.
    pub fn shift_word(&self, u: &str) -> Result<Self> {
        Ok(self.shift_counts(&self.counts(u)?))
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.clone(),
                other.alphabet.clone(),
            ));
        }
        let omega = self.omega.lcm(&other.omega);
        let a = self.refine(omega / self.omega);
        let b = other.refine(omega / other.omega);
        let pieces = a
            .pieces
            .iter()
            .map(|(t, p)| {
                let q = &b.pieces[t];
                let r = if sign < 0 { p - q } else { p + q };
                (t.clone(), r.trim_vars())
            })
            .collect();
        Ok(CommutativeDecomposition {
            alphabet: self.alphabet.clone(),
            omega,
            pieces,
        })
    }

    /// Pointwise difference, over the least common multiple of the moduli.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    /// Largest total degree of a piece.
    pub fn degree(&self) -> u32 {
        self.pieces.values().map(|p| p.total_degree()).max().unwrap_or(0)
    }

    /// Largest degree of a piece in the variable of letter `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        let name = letter_name(self.alphabet[i]);
        self.pieces
            .values()
            .filter_map(|p| p.var_index(&name).map(|j| p.degree_in(j)))
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.values().all(|p| p.is_zero())
    }

    /// Membership in `NPoly`, optionally with a degree bound: every piece,
    /// read on quotients `≥ 1`, must be strongly natural.
    ///
    /// Pieces are translated by one in each variable before the test, since
    /// a piece of type `(S, r)` is only ever evaluated at quotients `≥ 1`.
    pub fn is_npoly(&self, degree: Option<u32>) -> Result<ClassificationReport> {
        let class = match degree {
            Some(d) => format!("NPoly[{d}]"),
            None => "NPoly".to_string(),
        };
        if let Some(d) = degree {
            let actual = self.degree();
            if actual > d {
                return Ok(ClassificationReport::new(
                    class,
                    Verdict::No,
                    Certificate::Degree { actual, bound: d },
                ));
            }
        }
        for (ty, p) in &self.pieces {
            let shifted = p.translate(1);
            let report = is_strongly_natural(&shifted)?;
            if !report.verdict.is_yes() {
                return Ok(ClassificationReport::new(
                    class,
                    Verdict::No,
                    Certificate::Piece {
                        ty: ty.clone(),
                        reason: Box::new(report),
                    },
                ));
            }
        }
        Ok(ClassificationReport::new(class, Verdict::Yes, Certificate::None)
            .with_bound(format!("omega={} degree={}", self.omega, self.degree())))
    }

    /// The piece of `ty` as a polynomial in the letter counts:
    /// `Xᵢ ↦ (Xᵢ − rᵢ)/ω` for `i ∈ S`.
    pub fn count_polynomial(&self, ty: &ModuloType) -> Polynomial {
        let p = &self.pieces[ty];
        let inv = Rational::new(BigInt::one(), BigInt::from(self.omega));
        let subs: Vec<Option<(Rational, Rational)>> = p
            .vars()
            .iter()
            .map(|v| {
                let i = self.alphabet.iter().position(|a| letter_name(*a) == *v).unwrap();
                let r = Rational::from_integer(BigInt::from(ty.r[i]));
                Some((inv.clone(), -(r * &inv)))
            })
            .collect();
        p.substitute_affine(&subs)
    }

    /// For every `S` and every choice of residues outside `S`, the pieces
    /// rewritten in the letter counts must coincide across the residues on
    /// `S`.
    pub fn is_ultimately_polynomial(&self) -> ClassificationReport {
        let mut groups: BTreeMap<(Vec<usize>, Vec<u64>), (ModuloType, Polynomial)> = BTreeMap::new();
        for ty in self.pieces.keys() {
            let literal: Vec<u64> = (0..self.alphabet.len())
                .filter(|i| !ty.contains(*i))
                .map(|i| ty.r[i])
                .collect();
            let r = self.count_polynomial(ty);
            match groups.get(&(ty.s.clone(), literal.clone())) {
                None => {
                    groups.insert((ty.s.clone(), literal), (ty.clone(), r));
                }
                Some((first, q)) => {
                    if *q != r {
                        return ClassificationReport::new(
                            "UP",
                            Verdict::No,
                            Certificate::Gluing {
                                left: first.clone(),
                                right: ty.clone(),
                                left_poly: q.clone(),
                                right_poly: r,
                            },
                        );
                    }
                }
            }
        }
        let full = ModuloType {
            s: (0..self.alphabet.len()).collect(),
            r: vec![0; self.alphabet.len()],
        };
        let witness = report_polynomial(&self.count_polynomial(&full));
        ClassificationReport::new("UP", Verdict::Yes, Certificate::None).with_bound(witness)
    }

    /// Star-free ℕ-polyregular: in `NPoly` and ultimately polynomial.
    pub fn is_nsf(&self) -> Result<ClassificationReport> {
        let npoly = self.is_npoly(None)?;
        let up = self.is_ultimately_polynomial();
        Ok(combine_reports("NSF", vec![npoly, up]))
    }

    /// Star-free ℤ-polyregular: ultimately polynomial.
    pub fn is_zsf(&self) -> ClassificationReport {
        let mut r = self.is_ultimately_polynomial();
        r.class = "ZSF".into();
        r
    }
}

fn report_polynomial(p: &Polynomial) -> String {
    format!("P={}", crate::report::compact(p))
}

fn combine_reports(class: &str, parts: Vec<ClassificationReport>) -> ClassificationReport {
    let verdict = if parts.iter().all(|r| r.verdict.is_yes()) {
        Verdict::Yes
    } else if parts.iter().any(|r| r.verdict.is_no()) {
        Verdict::No
    } else {
        Verdict::Inconclusive
    };
    ClassificationReport::new(class, verdict, Certificate::Composite(parts))
}

/// Interpolates on `{1, …, degree + 1}^vars` and returns the polynomial in
/// the shifted binomial basis `∏ C(Xᵢ − 1, αᵢ)`.
pub(crate) fn interpolate_piece(
    names: &[String],
    degree: u32,
    mut f: impl FnMut(&[u64]) -> Result<BigInt>,
) -> Result<Polynomial> {
    let k = names.len();
    let n = degree as usize + 1;
    let total = n.checked_pow(k as u32).ok_or_else(|| Error::TooLarge("interpolation grid".into()))?;
    let mut grid: Vec<BigInt> = Vec::with_capacity(total);
    let mut idx = vec![0usize; k];
    for _ in 0..total {
        let q: Vec<u64> = idx.iter().map(|&i| i as u64 + 1).collect();
        grid.push(f(&q)?);
        for i in (0..k).rev() {
            idx[i] += 1;
            if idx[i] < n {
                break;
            }
            idx[i] = 0;
        }
    }
    let mut stride = 1;
    for _axis in (0..k).rev() {
        for base in 0..total {
            if (base / stride) % n != 0 {
                continue;
            }
            for level in 1..n {
                for j in (level..n).rev() {
                    let d = &grid[base + j * stride] - &grid[base + (j - 1) * stride];
                    grid[base + j * stride] = d;
                }
            }
        }
        stride *= n;
    }
    let one = BigInt::one();
    let mut acc = Polynomial::zero_in(names);
    let mut idx = vec![0u32; k];
    for c in grid {
        if !c.is_zero() {
            let mut term = Polynomial::constant(Rational::from_integer(c));
            for (name, &a) in names.iter().zip(&idx) {
                if a > 0 {
                    term = &term * &binomial_monomial(name, &one, a);
                }
            }
            acc = &acc + &term;
        }
        for i in (0..k).rev() {
            idx[i] += 1;
            if (idx[i] as usize) < n {
                break;
            }
            idx[i] = 0;
        }
    }
    Ok(acc.trim_vars())
}

#[cfg(test)]
mod tests;
