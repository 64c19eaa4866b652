//! Multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] keeps a sorted list of indeterminate names and a sparse map
//! from exponent vectors to non-zero coefficients. Binary operations work on
//! the union of the operands' variables.

mod binomial;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use binomial::{binomial_monomial, from_binomial_terms, BinomialBasis, BinomialFactor, BinomialTerm};
pub use parse::parse_polynomial;

pub type Rational = BigRational;

/// Builds the rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A single term `c · ∏ Xᵢ^eᵢ` with named indeterminates.
///
/// Exponents are never zero; the constant monomial has an empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: BTreeMap<String, u32>,
    pub coefficient: Rational,
}

impl Monomial {
    pub fn new(exponents: BTreeMap<String, u32>, coefficient: Rational) -> Self {
        let exponents = exponents.into_iter().filter(|(_, e)| *e > 0).collect();
        Monomial {
            exponents,
            coefficient,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    /// Exponentwise divisibility; coefficients are ignored.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .all(|(v, e)| other.exponents.get(v).is_some_and(|f| e <= f))
    }

    pub fn is_negative(&self) -> bool {
        self.coefficient.is_negative()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for (v, e) in &self.exponents {
            if *e == 1 {
                write!(f, "*{v}")?;
            } else {
                write!(f, "*{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A partial map from indeterminates to natural numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialValuation(pub BTreeMap<String, u64>);

impl PartialValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, value: u64) -> Self {
        self.0.insert(var.into(), value);
        self
    }

    pub fn get(&self, var: &str) -> Option<u64> {
        self.0.get(var).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &u64)> {
        self.0.iter()
    }
}

impl FromIterator<(String, u64)> for PartialValuation {
    fn from_iter<T: IntoIterator<Item = (String, u64)>>(iter: T) -> Self {
        PartialValuation(iter.into_iter().collect())
    }
}

impl fmt::Display for PartialValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}={x}")?;
        }
        f.write_str("}")
    }
}

/// Multivariate polynomial in `ℚ[X₁, …, X_k]`.
///
/// Equality compares polynomials as elements of the polynomial ring, so
/// variables that occur in no term are ignored.
#[derive(Clone, Debug, Default)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let a = self.trim_vars();
        let b = other.trim_vars();
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let t = self.trim_vars();
        t.vars.hash(state);
        t.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The zero polynomial over the given indeterminates.
    pub fn zero_in<S: AsRef<str>>(vars: &[S]) -> Self {
        let mut vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        vars.sort();
        vars.dedup();
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Polynomial {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from exponent vectors aligned with `vars`, which
    /// may be given in any order. Repeated exponent vectors are summed.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Self
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "duplicate variable names");
        let perm: Vec<usize> = sorted
            .iter()
            .map(|v| names.iter().position(|n| n == v).unwrap())
            .collect();
        let mut p = Polynomial {
            vars: sorted,
            terms: BTreeMap::new(),
        };
        for (exps, c) in terms {
            assert_eq!(exps.len(), names.len(), "exponent vector length mismatch");
            let key: Vec<u32> = perm.iter().map(|&j| exps[j]).collect();
            p.add_term(key, c);
        }
        p
    }

    fn add_term(&mut self, key: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    /// Indices of variables with positive degree somewhere.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|k| k[i] > 0))
            .collect()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|k| k[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// All coefficients are non-negative integers, i.e. `p ∈ ℕ[X⃗]`.
    pub fn is_natural(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Least positive integer `α` with `α·p ∈ ℤ[X⃗]`.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Re-expresses `self` over a superset of its variables.
    pub fn embed(&self, vars: &[String]) -> Polynomial {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .expect("embed target must contain every variable")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                for (i, &j) in map.iter().enumerate() {
                    e[j] = k[i];
                }
                (e, c.clone())
            })
            .collect();
        Polynomial {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn union_vars(a: &Polynomial, b: &Polynomial) -> Vec<String> {
        let set: BTreeSet<&String> = a.vars.iter().chain(b.vars.iter()).collect();
        set.into_iter().cloned().collect()
    }

    /// Drops variables that do not occur in any term.
    pub fn trim_vars(&self) -> Polynomial {
        let keep = self.used_vars();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (keep.iter().map(|&i| k[i]).collect(), c.clone()))
            .collect();
        Polynomial { vars, terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero_in(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Evaluates at a point given positionally in variable order.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(k) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_u64(&self, point: &[u64]) -> Rational {
        let pt: Vec<Rational> = point
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect();
        self.eval(&pt)
    }

    /// Substitutes `Xᵢ ↦ aᵢ·Xᵢ + bᵢ` for every `i` with `subs[i] = Some((aᵢ, bᵢ))`.
    /// The variable list is unchanged.
    pub fn substitute_affine(&self, subs: &[Option<(Rational, Rational)>]) -> Polynomial {
        assert_eq!(subs.len(), self.vars.len(), "substitution arity mismatch");
        // expansions[i][e] = coefficients of (aᵢX + bᵢ)^e by power of X
        let mut cache: BTreeMap<(usize, u32), Vec<Rational>> = BTreeMap::new();
        let mut expand = |i: usize, e: u32| -> Vec<Rational> {
            if let Some(v) = cache.get(&(i, e)) {
                return v.clone();
            }
            let (a, b) = subs[i].clone().expect("only substituted variables are expanded");
            let mut coeffs = vec![Rational::zero(); e as usize + 1];
            let mut binom = BigInt::one();
            for j in 0..=e {
                // C(e, j) a^j b^(e-j)
                let term = Rational::from_integer(binom.clone())
                    * num_traits::pow(a.clone(), j as usize)
                    * num_traits::pow(b.clone(), (e - j) as usize);
                coeffs[j as usize] = term;
                binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
            }
            cache.insert((i, e), coeffs.clone());
            coeffs
        };
        let mut out = Polynomial::zero_in(&self.vars);
        for (k, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(k.clone(), c.clone())];
            for (i, sub) in subs.iter().enumerate() {
                if sub.is_none() || k[i] == 0 {
                    continue;
                }
                let exp = expand(i, k[i]);
                let mut next = Vec::with_capacity(partial.len() * exp.len());
                for (key, coeff) in &partial {
                    for (j, f) in exp.iter().enumerate() {
                        if f.is_zero() {
                            continue;
                        }
                        let mut nk = key.clone();
                        nk[i] = j as u32;
                        next.push((nk, coeff * f));
                    }
                }
                partial = next;
            }
            for (key, coeff) in partial {
                out.add_term(key, coeff);
            }
        }
        out
    }

    /// Drops the given variables; they must have degree zero in every term.
    fn remove_vars(&self, drop: &BTreeSet<usize>) -> Polynomial {
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !drop.contains(i)).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Polynomial {
            vars,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            debug_assert!(drop.iter().all(|&i| k[i] == 0));
            out.add_term(keep.iter().map(|&i| k[i]).collect(), c.clone());
        }
        out
    }

    /// Fixes the variables in the domain of `nu`; the result is a polynomial in
    /// the remaining variables. Assignments to absent variables are ignored.
    pub fn restrict(&self, nu: &PartialValuation) -> Polynomial {
        let values: Vec<(usize, Rational)> = nu
            .iter()
            .filter_map(|(v, &x)| {
                self.var_index(v)
                    .map(|i| (i, Rational::from_integer(BigInt::from(x))))
            })
            .collect();
        self.fix_vars(&values)
    }

    /// Substitutes constants for the variables at the given indices and drops
    /// those variables.
    pub fn fix_vars(&self, values: &[(usize, Rational)]) -> Polynomial {
        if values.is_empty() {
            return self.clone();
        }
        let mut subs = vec![None; self.vars.len()];
        let mut drop = BTreeSet::new();
        for (i, x) in values {
            subs[*i] = Some((Rational::zero(), x.clone()));
            drop.insert(*i);
        }
        self.substitute_affine(&subs).remove_vars(&drop)
    }

    /// `τ_K(p) = p(X₁ + K, …, X_k + K)`.
    pub fn translate(&self, k: u64) -> Polynomial {
        self.translate_by(&Rational::from_integer(BigInt::from(k)))
    }

    pub fn translate_by(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return self.clone();
        }
        let subs = vec![Some((Rational::one(), k.clone())); self.vars.len()];
        self.substitute_affine(&subs)
    }

    /// `Δ_K p = τ_K(p) − p`.
    pub fn diff_k(&self, k: u64) -> Polynomial {
        &self.translate(k) - self
    }

    /// Forward difference in one variable: `p(…, Xᵢ + 1, …) − p`.
    pub fn partial_discrete_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut subs = vec![None; self.vars.len()];
        subs[i] = Some((Rational::one(), Rational::one()));
        Ok(&self.substitute_affine(&subs) - self)
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(k, c)| self.monomial_of(k, c))
            .collect()
    }

    fn monomial_of(&self, k: &[u32], c: &Rational) -> Monomial {
        Monomial::new(
            self.vars.iter().cloned().zip(k.iter().copied()).collect(),
            c.clone(),
        )
    }

    /// Terms maximal for exponentwise divisibility, in ascending graded
    /// lexicographic order. The zero polynomial has none.
    pub fn maximal_monomials(&self) -> Vec<Monomial> {
        let keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        let mut out: Vec<&Vec<u32>> = keys
            .iter()
            .filter(|k| {
                !keys
                    .iter()
                    .any(|o| o != *k && k.iter().zip(o.iter()).all(|(a, b)| a <= b))
            })
            .copied()
            .collect();
        out.sort_by(|a, b| grlex_cmp(a, b));
        out.into_iter()
            .map(|k| self.monomial_of(k, &self.terms[k]))
            .collect()
    }

    /// Exponent vectors of the terms, highest graded-lex first.
    fn sorted_keys(&self) -> Vec<&Vec<u32>> {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(b, a));
        keys
    }

    fn combine(&self, other: &Polynomial, sign: i64) -> Polynomial {
        let vars = Self::union_vars(self, other);
        let mut out = self.embed(&vars);
        let o = other.embed(&vars);
        for (k, c) in o.terms {
            if sign < 0 {
                out.add_term(k, -c);
            } else {
                out.add_term(k, c);
            }
        }
        out
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let vars = Self::union_vars(self, other);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                *acc.entry(k).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { vars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::int(1).embed(&self.vars);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }
}

fn fmt_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, k) in self.sorted_keys().into_iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&fmt_coefficient(&c.abs()))?;
            for (v, &e) in self.vars.iter().zip(k) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                let f: fn(&Polynomial, &Polynomial) -> Polynomial = $body;
                f(self, rhs)
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, 1));
forward_binop!(Sub, sub, |a, b| a.combine(b, -1));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn p_star() -> Polynomial {
        let x = Polynomial::var("X");
        let y = Polynomial::var("Y");
        let z = Polynomial::var("Z");
        &z * &(&x + &y).pow(2) + Polynomial::int(2) * (&x - &y).pow(2)
    }

    #[test]
    fn square_of_difference() {
        let d = &Polynomial::var("X") - &Polynomial::var("Y");
        assert_eq!(&d * &d, p("X^2 - 2*X*Y + Y^2"));
    }

    #[test]
    fn adding_zero_is_identity() {
        let q = p("3*X*Y - 1/2*Y + 7");
        assert_eq!(&q + &Polynomial::zero(), q);
    }

    #[test]
    fn counterexample_polynomial_expands() {
        assert_eq!(
            p_star(),
            p("Z*X^2 + Z*Y^2 + 2*Z*X*Y + 2*X^2 - 4*X*Y + 2*Y^2")
        );
        assert_eq!(
            p_star().to_string(),
            "1*X^2*Z + 2*X*Y*Z + 1*Y^2*Z + 2*X^2 - 4*X*Y + 2*Y^2"
        );
    }

    #[test]
    fn maximal_monomials_of_examples() {
        let m = p("X^2 - 2*X*Y + Y^2 + X + Y").maximal_monomials();
        let shown: Vec<String> = m.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["1*Y^2", "-2*X*Y", "1*X^2"]);

        let m = Polynomial::int(5).maximal_monomials();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].coefficient, rat(5));
        assert!(m[0].exponents.is_empty());

        let shown: Vec<String> = p_star()
            .maximal_monomials()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(shown, vec!["1*Y^2*Z", "2*X*Y*Z", "1*X^2*Z"]);

        assert!(Polynomial::zero().maximal_monomials().is_empty());
    }

    #[test]
    fn restrict_examples() {
        let nu = PartialValuation::new().with("Z", 1);
        let r = p_star().restrict(&nu);
        assert_eq!(r, p("3*X^2 - 2*X*Y + 3*Y^2"));
        assert_eq!(r.vars(), &["X".to_string(), "Y".to_string()]);

        assert_eq!(p_star().restrict(&PartialValuation::new()), p_star());

        let q = p("X^2 - 2*X + 2").restrict(&PartialValuation::new().with("X", 1));
        assert_eq!(q, Polynomial::int(1));
    }

    #[test]
    fn translate_examples() {
        assert_eq!(p_star().translate(0), p_star());
        assert!(p_star().translate(10).is_natural());
        assert_eq!(p("X^2").translate(1), p("X^2 + 2*X + 1"));
    }

    #[test]
    fn diff_k_examples() {
        assert!(Polynomial::int(9).diff_k(4).is_zero());
        let d = p("X^2").diff_k(2);
        assert_eq!(d, p("4*X + 4"));
        assert!(d.terms().all(|(_, c)| c.is_integer() && (c.numer() % 2u32).is_zero()));
        assert_eq!(p("X*Y").diff_k(1), p("X + Y + 1"));
    }

    #[test]
    fn partial_difference() {
        assert_eq!(
            p("X*Y").partial_discrete_derivative("X").unwrap(),
            p("Y")
        );
        assert!(matches!(
            p("X*Y").partial_discrete_derivative("Z"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn denominators() {
        assert_eq!(p("1/2*X^2 - 1/2*X").denominator_lcm(), BigInt::from(2));
        assert_eq!(p("1/6*X + 1/4").denominator_lcm(), BigInt::from(12));
        assert_eq!(p("3*X").denominator_lcm(), BigInt::from(1));
    }
}
