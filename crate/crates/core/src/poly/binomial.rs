//! Conversion between the monomial basis and the binomial basis
//! `∏ C(Xᵢ, αᵢ)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational};

/// `⟨X − ℓ, k⟩ = (X − ℓ)(X − ℓ − 1)⋯(X − ℓ − k + 1) / k!`.
pub fn binomial_monomial(var: &str, offset: &BigInt, k: u32) -> Polynomial {
    let x = Polynomial::var(var);
    let mut acc = Polynomial::int(1);
    let mut fact = BigInt::one();
    for j in 0..k {
        let shift = Rational::from_integer(offset + BigInt::from(j));
        acc = &acc * &(&x - &Polynomial::constant(shift));
        fact *= BigInt::from(j + 1);
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFactor {
    pub var: String,
    pub offset: BigInt,
    pub k: u32,
}

/// `coefficient · ∏ ⟨var − offset, k⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTerm {
    pub coefficient: Rational,
    pub factors: Vec<BinomialFactor>,
}

impl BinomialTerm {
    pub fn to_polynomial(&self) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(self.coefficient.clone()),
            |acc, f| &acc * &binomial_monomial(&f.var, &f.offset, f.k),
        )
    }
}

pub fn from_binomial_terms(terms: &[BinomialTerm]) -> Polynomial {
    terms
        .iter()
        .fold(Polynomial::zero(), |acc, t| &acc + &t.to_polynomial())
}

/// Coefficients `c_α` with `p = Σ_α c_α ∏ C(Xᵢ, αᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialBasis {
    pub vars: Vec<String>,
    pub coefficients: BTreeMap<Vec<u32>, Rational>,
}

impl BinomialBasis {
    pub fn to_polynomial(&self) -> Polynomial {
        let mut acc = Polynomial::zero_in(&self.vars);
        for (alpha, c) in &self.coefficients {
            let mut t = Polynomial::constant(c.clone());
            for (v, &a) in self.vars.iter().zip(alpha) {
                if a > 0 {
                    t = &t * &binomial_monomial(v, &BigInt::zero(), a);
                }
            }
            acc = &acc + &t;
        }
        acc.embed(&self.vars)
    }

    /// All coefficients are integers, which holds exactly when the polynomial
    /// maps `ℤ^k` into `ℤ`.
    pub fn is_integral(&self) -> bool {
        self.coefficients.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for BinomialBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        for (n, (alpha, c)) in self.coefficients.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, " - {}", -c)?,
                (_, false) => write!(f, " + {c}")?,
            }
            for (v, &a) in self.vars.iter().zip(alpha) {
                if a > 0 {
                    write!(f, "*C({v}, {a})")?;
                }
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Computes the binomial-basis coefficients by iterated forward
    /// differences on the grid `∏ {0, …, degᵢ}`.
    pub fn to_binomial_basis(&self) -> BinomialBasis {
        let k = self.vars().len();
        let dims: Vec<usize> = (0..k).map(|i| self.degree_in(i) as usize + 1).collect();
        let total: usize = dims.iter().product();
        let mut grid = Vec::with_capacity(total);
        let mut point = vec![0u64; k];
        for _ in 0..total {
            grid.push(self.eval_u64(&point));
            // row-major increment, last variable fastest
            for i in (0..k).rev() {
                point[i] += 1;
                if (point[i] as usize) < dims[i] {
                    break;
                }
                point[i] = 0;
            }
        }
        let mut stride = 1;
        for i in (0..k).rev() {
            let n = dims[i];
            for base in 0..total {
                if (base / stride) % n != 0 {
                    continue;
                }
                for level in 1..n {
                    for j in (level..n).rev() {
                        let hi = base + j * stride;
                        let lo = base + (j - 1) * stride;
                        let d = &grid[hi] - &grid[lo];
                        grid[hi] = d;
                    }
                }
            }
            stride *= n;
        }
        let mut coefficients = BTreeMap::new();
        let mut alpha = vec![0u32; k];
        for c in grid {
            if !c.is_zero() {
                coefficients.insert(alpha.clone(), c);
            }
            for i in (0..k).rev() {
                alpha[i] += 1;
                if (alpha[i] as usize) < dims[i] {
                    break;
                }
                alpha[i] = 0;
            }
        }
        BinomialBasis {
            vars: self.vars().to_vec(),
            coefficients,
        }
    }

    /// `p(ℤ^k) ⊆ ℤ`.
    pub fn is_integer_valued(&self) -> bool {
        self.to_binomial_basis().is_integral()
    }
}
