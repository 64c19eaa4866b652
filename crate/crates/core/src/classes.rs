//! Classifiers for polynomial classes: non-negative maximal monomials,
//! strong non-negativity under partial valuations, integer-valuedness and
//! strong naturality.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly::{Monomial, PartialValuation, Polynomial, Rational};
use crate::report::{Certificate, ClassificationReport, Verdict};
use crate::{Error, Result};

/// Largest number of partial valuations a single enumeration may visit.
pub const ENUMERATION_LIMIT: u64 = 1_000_000_000;

/// Number of failing valuations kept in a report besides the first one.
const MAX_ALTERNATIVES: usize = 31;

/// True iff every maximal monomial has a positive coefficient. Vacuously
/// true for the zero polynomial.
pub fn has_nonneg_maximal_monomials(p: &Polynomial) -> Result<bool> {
    Ok(first_negative_maximal(p)?.is_none())
}

fn first_negative_maximal(p: &Polynomial) -> Result<Option<Monomial>> {
    if !p.is_integral() {
        return Err(Error::NonIntegerCoefficients);
    }
    Ok(p.maximal_monomials().into_iter().find(|m| m.is_negative()))
}

pub fn nonneg_maximal_report(p: &Polynomial) -> Result<ClassificationReport> {
    Ok(match first_negative_maximal(p)? {
        None => ClassificationReport::new("PolyNNeg-maximal", Verdict::Yes, Certificate::None),
        Some(m) => ClassificationReport::new(
            "PolyNNeg-maximal",
            Verdict::No,
            Certificate::MaximalMonomial(m),
        ),
    })
}

/// First point of `{0..=bound}^k` (lexicographic, first variable slowest)
/// where `p` is negative.
pub fn first_negative_sample(p: &Polynomial, bound: u64) -> Option<(Vec<u64>, Rational)> {
    let k = p.vars().len();
    let mut point = vec![0u64; k];
    loop {
        let v = p.eval_u64(&point);
        if v.is_negative() {
            return Some((point, v));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if point[i] < bound {
                point[i] += 1;
                break;
            }
            point[i] = 0;
        }
    }
}

/// Bounded semi-check of non-negativity; `yes` only means no counterexample
/// was found up to `bound`.
pub fn sampled_nonnegative(p: &Polynomial, bound: u64) -> ClassificationReport {
    match first_negative_sample(p, bound) {
        None => ClassificationReport::new(
            "sampled-nonneg",
            Verdict::Yes,
            Certificate::SampledUpTo(bound),
        ),
        Some((point, value)) => ClassificationReport::new(
            "sampled-nonneg",
            Verdict::No,
            Certificate::NegativeSample { point, value },
        ),
    }
    .with_bound(bound)
}

/// A translation bound `K` such that strong non-negativity of `p` is decided
/// by the restrictions with values in `{0..=K}` translated by `K`.
///
/// The bound is computed on absolute-value majorants of the coefficients, so
/// it dominates the bound of every restriction reached by the recursion.
pub fn str_nneg_bound(p: &Polynomial) -> Result<BigUint> {
    if !p.is_integral() {
        return Err(Error::NonIntegerCoefficients);
    }
    let majorant = Polynomial::from_terms(
        p.vars(),
        p.terms().map(|(k, c)| (k.clone(), c.abs())),
    )
    .trim_vars();
    Ok(bound_rec(&majorant))
}

fn bound_rec(hat: &Polynomial) -> BigUint {
    if hat.is_constant() {
        return BigUint::zero();
    }
    let alpha = hat.max_abs_coefficient().to_integer();
    let d = BigInt::from(downward_closure_size(hat));
    let k0 = d * alpha;
    let k0_rat = Rational::from_integer(k0.clone());
    let n = hat.vars().len();
    let mut best = BigUint::zero();
    for mask in 1u64..(1u64 << n) {
        let fixed: Vec<(usize, Rational)> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (i, k0_rat.clone()))
            .collect();
        let sub = bound_rec(&hat.fix_vars(&fixed).trim_vars());
        if sub > best {
            best = sub;
        }
    }
    k0.to_biguint().expect("bound is non-negative") + best
}

/// Number of exponent vectors below some exponent vector of `p`, the
/// constant one included.
fn downward_closure_size(p: &Polynomial) -> usize {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for (k, _) in p.terms() {
        let mut cur = vec![0u32; k.len()];
        loop {
            seen.insert(cur.clone());
            let mut i = k.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                if cur[i] < k[i] {
                    cur[i] += 1;
                    done = false;
                    break;
                }
                cur[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    seen.len()
}

struct Scan {
    failures: Vec<Certificate>,
    failure_count: usize,
    translated: Option<Certificate>,
}

/// Visits every partial valuation of `vars` with values in `{0..=k}`,
/// unfixed before `0 < 1 < …`, first variable most significant.
fn scan(p: &Polynomial, vars: &[String], k: u64, stop_on_failure: bool) -> Scan {
    let mut out = Scan {
        failures: Vec::new(),
        failure_count: 0,
        translated: None,
    };
    let mut nu = PartialValuation::new();
    scan_rec(p, vars, 0, k, &mut nu, &mut out, stop_on_failure);
    out
}

fn scan_rec(
    q: &Polynomial,
    vars: &[String],
    depth: usize,
    k: u64,
    nu: &mut PartialValuation,
    out: &mut Scan,
    stop_on_failure: bool,
) -> bool {
    if depth == vars.len() {
        if let Some(m) = q.maximal_monomials().into_iter().find(|m| m.is_negative()) {
            out.failure_count += 1;
            if out.failures.len() <= MAX_ALTERNATIVES {
                out.failures.push(Certificate::NegativeMaximal {
                    valuation: nu.clone(),
                    monomial: m,
                });
            }
            return stop_on_failure;
        }
        if out.translated.is_none() && out.failure_count == 0 {
            let t = q.translate(k);
            if !t.is_natural() {
                let mut negatives: Vec<Monomial> =
                    t.monomials().into_iter().filter(|m| m.is_negative()).collect();
                negatives.sort_by(|a, b| {
                    let ka: Vec<u32> = t.vars().iter().map(|v| a.exponents.get(v).copied().unwrap_or(0)).collect();
                    let kb: Vec<u32> = t.vars().iter().map(|v| b.exponents.get(v).copied().unwrap_or(0)).collect();
                    crate::poly::grlex_cmp(&ka, &kb)
                });
                out.translated = Some(Certificate::NegativeTranslated {
                    valuation: nu.clone(),
                    translation: k,
                    monomial: negatives.swap_remove(0),
                });
            }
        }
        return false;
    }
    let var = &vars[depth];
    if scan_rec(q, vars, depth + 1, k, nu, out, stop_on_failure) {
        return true;
    }
    for x in 0..=k {
        let r = q.restrict(&PartialValuation::new().with(var.clone(), x));
        nu.0.insert(var.clone(), x);
        let stop = scan_rec(&r, vars, depth + 1, k, nu, out, stop_on_failure);
        nu.0.remove(var);
        if stop {
            return true;
        }
    }
    false
}

fn checked_count(k: u64, vars: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..vars {
        total = total
            .checked_mul(k + 2)
            .filter(|&t| t <= ENUMERATION_LIMIT)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "{}^{} partial valuations exceed the limit of {}",
                    k + 2,
                    vars,
                    ENUMERATION_LIMIT
                ))
            })?;
    }
    Ok(total)
}

/// Decides whether every restriction of `p` by a partial valuation has only
/// non-negative maximal monomials.
///
/// Translation bounds `1, 2, 4, …` are tried up to [`str_nneg_bound`]. At
/// each bound `K` every valuation with values in `{0..=K}` is inspected: a
/// negative maximal monomial refutes membership, and if all translated
/// restrictions are natural the polynomial is a member. A `no` verdict lists
/// every failing valuation found at the first bound where one appears, in
/// enumeration order.
pub fn is_poly_str_nneg(p: &Polynomial) -> Result<ClassificationReport> {
    if !p.is_integral() {
        return Err(Error::NonIntegerCoefficients);
    }
    let q = p.trim_vars();
    let vars = q.vars().to_vec();
    let cap = str_nneg_bound(&q)?;
    let mut level: u64 = 1;
    loop {
        let k = match cap.to_u64() {
            Some(c) if c <= level => c,
            _ => level,
        };
        checked_count(k, vars.len())?;
        let mut result = scan(&q, &vars, k, false);
        if !result.failures.is_empty() {
            let total = result.failure_count;
            let first = result.failures.remove(0);
            return Ok(
                ClassificationReport::new("PolyStrNNeg", Verdict::No, first)
                    .with_alternatives(result.failures)
                    .with_bound(format!("{k} failing={total}")),
            );
        }
        match result.translated {
            None => {
                return Ok(ClassificationReport::new(
                    "PolyStrNNeg",
                    Verdict::Yes,
                    Certificate::Translation(k),
                )
                .with_bound(k))
            }
            Some(cert) if BigUint::from(k) >= cap => {
                return Ok(
                    ClassificationReport::new("PolyStrNNeg", Verdict::No, cert).with_bound(k)
                )
            }
            Some(_) => {}
        }
        level = level
            .checked_mul(2)
            .ok_or_else(|| Error::TooLarge("translation bound overflow".into()))?;
    }
}

/// `p(ℤ^k) ⊆ ℤ`, certified by the binomial-basis coefficients.
pub fn is_integer_valued(p: &Polynomial) -> ClassificationReport {
    let basis = p.to_binomial_basis();
    match basis
        .coefficients
        .iter()
        .find(|(_, c)| !c.is_integer())
    {
        None => ClassificationReport::new("integer-valued", Verdict::Yes, Certificate::Binomial(basis)),
        Some((alpha, c)) => ClassificationReport::new(
            "integer-valued",
            Verdict::No,
            Certificate::NonIntegral {
                alpha: alpha.clone(),
                coefficient: c.clone(),
            },
        ),
    }
}

/// Smallest positive `α` with `α·p` integral.
pub fn integrality_factor(p: &Polynomial) -> BigInt {
    p.denominator_lcm()
}

/// `p` is integer-valued and `α·p` is strongly non-negative, where `α` is
/// the least common denominator of its coefficients.
pub fn is_strongly_natural(p: &Polynomial) -> Result<ClassificationReport> {
    let alpha = integrality_factor(p);
    let scaled = p.scale(&Rational::from_integer(alpha.clone()));
    let strong = is_poly_str_nneg(&scaled)?;
    let integral = is_integer_valued(p);
    let verdict = Verdict::from_bool(strong.verdict.is_yes() && integral.verdict.is_yes());
    let certificate = if !strong.verdict.is_yes() {
        strong.certificate.clone()
    } else if !integral.verdict.is_yes() {
        integral.certificate.clone()
    } else {
        Certificate::Composite(vec![strong.clone(), integral.clone()])
    };
    let alternatives = if verdict.is_yes() {
        Vec::new()
    } else {
        strong.alternatives.clone()
    };
    let mut report = ClassificationReport::new("strongly-natural", verdict, certificate)
        .with_alternatives(alternatives);
    report.bound = Some(match &strong.bound {
        Some(b) => format!("{b} alpha={alpha}"),
        None => format!("alpha={alpha}"),
    });
    Ok(report)
}
