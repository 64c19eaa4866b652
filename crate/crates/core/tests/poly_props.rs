mod common;

use common::{grid, polynomial};
use polyreg::poly::{from_binomial_terms, BinomialFactor, BinomialTerm, Monomial, PartialValuation};
use polyreg::{BigInt, Polynomial, Rational};
use num_traits::Signed;
use proptest::prelude::*;

fn binomial_terms(p: &Polynomial) -> Vec<BinomialTerm> {
    let basis = p.to_binomial_basis();
    basis
        .coefficients
        .iter()
        .map(|(alpha, c)| BinomialTerm {
            coefficient: c.clone(),
            factors: basis
                .vars
                .iter()
                .zip(alpha)
                .map(|(v, &k)| BinomialFactor {
                    var: v.clone(),
                    offset: BigInt::from(0),
                    k,
                })
                .collect(),
        })
        .collect()
}

fn divides_strictly(m: &Monomial, n: &Monomial) -> bool {
    m.divides(n) && m.exponents != n.exponents
}

fn divisors(n: &Monomial) -> Vec<Monomial> {
    n.exponents.iter().fold(vec![Monomial::new(Default::default(), Rational::from_integer(BigInt::from(1)))], |acc, (v, &e)| {
        acc.into_iter()
            .flat_map(|m| {
                (0..=e).map(move |j| {
                    let mut m = m.clone();
                    if j > 0 {
                        m.exponents.insert(v.clone(), j);
                    }
                    m
                })
            })
            .collect()
    })
}

fn support(p: &Polynomial) -> Vec<Monomial> {
    p.monomials()
        .into_iter()
        .map(|mut m| {
            m.exponents.retain(|_, e| *e > 0);
            m
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn binomial_basis_round_trip(p in polynomial(4, 5, 9)) {
        prop_assert_eq!(from_binomial_terms(&binomial_terms(&p)), p);
    }

    #[test]
    fn discrete_derivative_is_translation_minus_identity(p in polynomial(3, 4, 9), k in 0u64..6) {
        prop_assert_eq!(&p.diff_k(k) + &p, p.translate(k));
    }

    #[test]
    fn derivative_of_natural_polynomial(p in polynomial(3, 4, 5), k in 1u64..5) {
        let p = Polynomial::from_terms(
            p.vars(),
            p.terms().map(|(e, c)| (e.clone(), c.abs())),
        );
        prop_assume!(!p.is_constant());
        let d = p.diff_k(k);
        let kk = Rational::from_integer(BigInt::from(k));
        for (_, c) in d.terms() {
            prop_assert!(*c > Rational::from_integer(BigInt::from(0)));
            prop_assert!((c / &kk).is_integer());
        }
        let present = support(&d);
        for n in support(&p) {
            for m in divisors(&n) {
                if divides_strictly(&m, &n) {
                    prop_assert!(
                        present.iter().any(|x| x.exponents == m.exponents),
                        "{} is missing from {}", m, d
                    );
                }
            }
        }
    }

    #[test]
    fn restrict_commutes_with_translate(p in polynomial(3, 4, 9), k in 0u64..4, v in 0u64..4) {
        let nu = PartialValuation::new().with("X", v);
        let shifted = PartialValuation::new().with("X", v + k);
        prop_assert_eq!(p.translate(k).restrict(&nu), p.restrict(&shifted).translate(k));
    }

    #[test]
    fn binomial_form_evaluates_like_the_polynomial(p in polynomial(2, 4, 9)) {
        let basis = p.to_binomial_basis();
        let q = basis.to_polynomial();
        for x in grid(p.vars().len(), 5) {
            prop_assert_eq!(p.eval_u64(&x), q.eval_u64(&x));
        }
    }

    #[test]
    fn ring_laws(p in polynomial(3, 3, 9), q in polynomial(3, 3, 9), r in polynomial(3, 3, 9)) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero());
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn display_parses_back(p in polynomial(4, 4, 20)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Polynomial>().unwrap(), p);
    }
}

#[test]
fn strictly_dividing_monomials_of_a_square() {
    let p: Polynomial = "X^2*Y".parse().unwrap();
    let d = p.diff_k(3);
    for m in ["X", "Y", "X*Y", "X^2", "1"] {
        let q: Polynomial = m.parse().unwrap();
        let key = support(&q).remove(0);
        assert!(support(&d).iter().any(|x| x.exponents == key.exponents), "{m}");
    }
}
