//! Decision outcomes together with the evidence that justifies them.

use std::fmt;

use crate::decomp::ModuloType;
use crate::poly::{BinomialBasis, Monomial, PartialValuation, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence attached to a verdict. Every variant can be re-checked
/// independently of the procedure that produced it.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    None,
    /// `restrict(p, valuation)` has `monomial` as a negative maximal monomial.
    NegativeMaximal {
        valuation: PartialValuation,
        monomial: Monomial,
    },
    /// `τ_translation(restrict(p, valuation))` has a negative coefficient.
    NegativeTranslated {
        valuation: PartialValuation,
        translation: u64,
        monomial: Monomial,
    },
    /// Every restriction with values up to the bound becomes natural after
    /// translating by the bound.
    Translation(u64),
    Binomial(BinomialBasis),
    NonIntegral {
        alpha: Vec<u32>,
        coefficient: Rational,
    },
    NegativeSample {
        point: Vec<u64>,
        value: Rational,
    },
    SampledUpTo(u64),
    MaximalMonomial(Monomial),
    Degree {
        actual: u32,
        bound: u32,
    },
    /// The piece of type `ty` fails for the nested reason.
    Piece {
        ty: ModuloType,
        reason: Box<ClassificationReport>,
    },
    /// Two types with the same literal coordinates whose rescaled pieces differ.
    Gluing {
        left: ModuloType,
        right: ModuloType,
        left_poly: Polynomial,
        right_poly: Polynomial,
    },
    Word(String),
    /// A counter: the state and the word cycling through it.
    Counter(String, String),
    Reason(String),
    WordPair(String, String),
    Composite(Vec<ClassificationReport>),
}

pub(crate) fn compact(p: &Polynomial) -> String {
    p.to_string().replace(' ', "")
}

pub(crate) fn show_word(w: &str) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::None => f.write_str("-"),
            Certificate::NegativeMaximal {
                valuation,
                monomial,
            } => write!(f, "{valuation}:{monomial}"),
            Certificate::NegativeTranslated {
                valuation,
                translation,
                monomial,
            } => write!(f, "{valuation}:tau{translation}:{monomial}"),
            Certificate::Translation(k) => write!(f, "tau{k}"),
            Certificate::Binomial(b) => f.write_str(&b.to_string().replace(' ', "")),
            Certificate::NonIntegral { alpha, coefficient } => {
                write!(f, "c{alpha:?}={coefficient}")
            }
            Certificate::NegativeSample { point, value } => write!(f, "{point:?}={value}"),
            Certificate::SampledUpTo(b) => write!(f, "none<={b}"),
            Certificate::MaximalMonomial(m) => write!(f, "{m}"),
            Certificate::Degree { actual, bound } => write!(f, "degree{actual}>{bound}"),
            Certificate::Piece { ty, reason } => write!(f, "{ty}:{}", reason.certificate),
            Certificate::Gluing {
                left,
                right,
                left_poly,
                right_poly,
            } => write!(
                f,
                "{left}:{}!={right}:{}",
                compact(left_poly),
                compact(right_poly)
            ),
            Certificate::Word(w) => f.write_str(&show_word(w)),
            Certificate::Counter(q, u) => write!(f, "counter({},{})", show_word(q), show_word(u)),
            Certificate::Reason(r) => f.write_str(&r.replace(' ', "_")),
            Certificate::WordPair(a, b) => write!(f, "({},{})", show_word(a), show_word(b)),
            Certificate::Composite(parts) => {
                let failing: Vec<String> = parts
                    .iter()
                    .filter(|r| !r.verdict.is_yes())
                    .map(|r| format!("{}[{}]", r.class, r.certificate))
                    .collect();
                if failing.is_empty() {
                    f.write_str("-")
                } else {
                    f.write_str(&failing.join(";"))
                }
            }
        }
    }
}

/// Outcome of one classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub class: String,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Further certificates of the same kind as `certificate`, e.g. every
    /// failing valuation rather than only the first.
    pub alternatives: Vec<Certificate>,
    pub bound: Option<String>,
}

impl ClassificationReport {
    pub fn new(class: impl Into<String>, verdict: Verdict, certificate: Certificate) -> Self {
        ClassificationReport {
            class: class.into(),
            verdict,
            certificate,
            alternatives: Vec::new(),
            bound: None,
        }
    }

    pub fn with_bound(mut self, bound: impl ToString) -> Self {
        self.bound = Some(bound.to_string());
        self
    }

    pub fn with_alternatives(mut self, alternatives: Vec<Certificate>) -> Self {
        self.alternatives = alternatives;
        self
    }

    /// The primary certificate followed by the alternatives.
    pub fn all_certificates(&self) -> impl Iterator<Item = &Certificate> {
        std::iter::once(&self.certificate).chain(self.alternatives.iter())
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class={} verdict={} witness={}",
            self.class, self.verdict, self.certificate
        )?;
        if let Some(b) = &self.bound {
            write!(f, " bound={b}")?;
        }
        if !self.alternatives.is_empty() {
            let alts: Vec<String> = self.alternatives.iter().map(|c| c.to_string()).collect();
            write!(f, " also={}", alts.join(";"))?;
        }
        Ok(())
    }
}
