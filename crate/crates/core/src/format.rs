//! JSON files for automata, monoid presentations, decompositions and
//! transducers. Integers are stored as 64-bit numbers; writing a value that
//! does not fit is an [`Error::Overflow`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::automaton::{MonoidPresentation, WeightedAutomaton};
use crate::decomp::{CommutativeDecomposition, ModuloType};
use crate::linalg::SparseMatrix;
use crate::transducer::HTransducer;
use crate::{Error, Result};

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

fn smalls(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn letter(s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::InvalidAutomaton(format!(
            "`{s}` is not a single character"
        ))),
    }
}

fn letters(v: &[String]) -> Result<Vec<char>> {
    v.iter().map(|s| letter(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub alphabet: Vec<String>,
    pub dim: usize,
    pub initial: Vec<i64>,
    #[serde(rename = "final")]
    pub final_weights: Vec<i64>,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

impl AutomatonFile {
    pub fn from_automaton(a: &WeightedAutomaton) -> Result<Self> {
        let mut matrices = BTreeMap::new();
        for &c in a.alphabet() {
            let m = a.matrix(c).expect("every letter has a matrix");
            let rows = m
                .to_dense()
                .iter()
                .map(|r| smalls(r))
                .collect::<Result<_>>()?;
            matrices.insert(c.to_string(), rows);
        }
        Ok(AutomatonFile {
            alphabet: a.alphabet().iter().map(|c| c.to_string()).collect(),
            dim: a.dim(),
            initial: smalls(a.initial())?,
            final_weights: smalls(a.final_weights())?,
            matrices,
        })
    }

    pub fn to_automaton(&self) -> Result<WeightedAutomaton> {
        let alphabet = letters(&self.alphabet)?;
        if self.initial.len() != self.dim {
            return Err(Error::InvalidAutomaton(format!(
                "initial vector has length {} but dim is {}",
                self.initial.len(),
                self.dim
            )));
        }
        let mut matrices = BTreeMap::new();
        for (name, rows) in &self.matrices {
            let c = letter(name)?;
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::InvalidAutomaton(format!(
                    "matrix for `{c}` is not {0}x{0}",
                    self.dim
                )));
            }
            let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| big(r)).collect();
            matrices.insert(c, SparseMatrix::from_dense(&dense));
        }
        WeightedAutomaton::new(&alphabet, big(&self.initial), matrices, big(&self.final_weights))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductionEntry {
    pub tuple: Vec<u32>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub elements: Vec<u32>,
    pub identity: u32,
    pub table: Vec<Vec<u32>>,
    pub morphism: BTreeMap<String, u32>,
    pub degree: usize,
    pub production: Vec<ProductionEntry>,
}

impl PresentationFile {
    pub fn from_presentation(p: &MonoidPresentation) -> Result<Self> {
        Ok(PresentationFile {
            elements: (0..p.table().len() as u32).collect(),
            identity: p.identity(),
            table: p.table().to_vec(),
            morphism: p.morphism().iter().map(|(c, x)| (c.to_string(), *x)).collect(),
            degree: p.degree(),
            production: p
                .production()
                .iter()
                .map(|(t, v)| {
                    Ok(ProductionEntry {
                        tuple: t.clone(),
                        value: small(v)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_presentation(&self) -> Result<MonoidPresentation> {
        let n = self.table.len() as u32;
        if self.elements != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidPresentation(
                "elements must be 0, 1, … in table order".into(),
            ));
        }
        let morphism = self
            .morphism
            .iter()
            .map(|(c, x)| {
                let c = letter(c).map_err(|_| {
                    Error::InvalidPresentation(format!("`{c}` is not a single character"))
                })?;
                Ok((c, *x))
            })
            .collect::<Result<_>>()?;
        let mut production = BTreeMap::new();
        for e in &self.production {
            if production.insert(e.tuple.clone(), BigInt::from(e.value)).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "tuple {:?} appears twice",
                    e.tuple
                )));
            }
        }
        MonoidPresentation::new(self.table.clone(), self.identity, morphism, self.degree, production)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub r: Vec<u64>,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub alphabet: Vec<String>,
    pub omega: u64,
    pub pieces: Vec<PieceEntry>,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &CommutativeDecomposition) -> Self {
        DecompositionFile {
            alphabet: d.alphabet().iter().map(|c| c.to_string()).collect(),
            omega: d.omega(),
            pieces: d
                .pieces()
                .iter()
                .map(|(ty, p)| PieceEntry {
                    s: ty.s.clone(),
                    r: ty.r.clone(),
                    poly: p.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<CommutativeDecomposition> {
        let alphabet = letters(&self.alphabet)?;
        let mut pieces = BTreeMap::new();
        for e in &self.pieces {
            let mut s = e.s.clone();
            s.sort_unstable();
            let ty = ModuloType { s, r: e.r.clone() };
            if ty.r.len() != alphabet.len() || ty.r.iter().any(|&x| x >= self.omega.max(1)) {
                return Err(Error::InvalidDecomposition(format!(
                    "residues {:?} do not fit the alphabet and modulus",
                    ty.r
                )));
            }
            if pieces.insert(ty.clone(), e.poly.parse()?).is_some() {
                return Err(Error::InvalidDecomposition(format!("{ty} appears twice")));
            }
        }
        CommutativeDecomposition::new(&alphabet, self.omega, pieces)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub state: String,
    pub letter: String,
    pub target: String,
}

/// An output function, either inline or as a path to a decomposition file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutputRef {
    Inline(DecompositionFile),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputEntry {
    pub state: String,
    pub letter: String,
    pub decomposition: OutputRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransducerFile {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub delta: Vec<TransitionEntry>,
    pub lambda: Vec<OutputEntry>,
    #[serde(rename = "final")]
    pub final_values: BTreeMap<String, i64>,
}

impl TransducerFile {
    pub fn from_transducer(t: &HTransducer) -> Result<Self> {
        let mut delta = Vec::new();
        let mut lambda = Vec::new();
        for (q, name) in t.states().iter().enumerate() {
            for &a in t.alphabet() {
                delta.push(TransitionEntry {
                    state: name.clone(),
                    letter: a.to_string(),
                    target: t.states()[t.delta(q, a)].clone(),
                });
                lambda.push(OutputEntry {
                    state: name.clone(),
                    letter: a.to_string(),
                    decomposition: OutputRef::Inline(DecompositionFile::from_decomposition(
                        t.lambda(q, a),
                    )),
                });
            }
        }
        let final_values = t
            .states()
            .iter()
            .zip(t.final_values())
            .map(|(s, v)| Ok((s.clone(), small(v)?)))
            .collect::<Result<_>>()?;
        Ok(TransducerFile {
            alphabet: t.alphabet().iter().map(|c| c.to_string()).collect(),
            states: t.states().to_vec(),
            delta,
            lambda,
            final_values,
        })
    }

    /// Builds the transducer; `resolve` loads output functions given by
    /// path. The empty word must be the first state.
    pub fn to_transducer(
        &self,
        mut resolve: impl FnMut(&str) -> Result<CommutativeDecomposition>,
    ) -> Result<HTransducer> {
        let alphabet = letters(&self.alphabet)?;
        let index = |s: &str| {
            self.states
                .iter()
                .position(|q| q == s)
                .ok_or_else(|| Error::InvalidTransducer(format!("unknown state `{s}`")))
        };
        if self.states.first().map(String::as_str) != Some("") {
            return Err(Error::InvalidTransducer(
                "the first state must be the empty word".into(),
            ));
        }
        let mut delta = BTreeMap::new();
        for e in &self.delta {
            let key = (index(&e.state)?, letter(&e.letter)?);
            if delta.insert(key, index(&e.target)?).is_some() {
                return Err(Error::InvalidTransducer(format!(
                    "two transitions from `{}` on `{}`",
                    e.state, e.letter
                )));
            }
        }
        let mut lambda = BTreeMap::new();
        for e in &self.lambda {
            let key = (index(&e.state)?, letter(&e.letter)?);
            let d = match &e.decomposition {
                OutputRef::Inline(file) => file.to_decomposition()?,
                OutputRef::Path(path) => resolve(path)?,
            };
            if lambda.insert(key, d).is_some() {
                return Err(Error::InvalidTransducer(format!(
                    "two outputs from `{}` on `{}`",
                    e.state, e.letter
                )));
            }
        }
        let mut final_values = Vec::with_capacity(self.states.len());
        for s in &self.states {
            let v = self
                .final_values
                .get(s)
                .ok_or_else(|| Error::InvalidTransducer(format!("no final value for `{s}`")))?;
            final_values.push(BigInt::from(*v));
        }
        if self.final_values.len() != self.states.len() {
            return Err(Error::InvalidTransducer("final values for unknown states".into()));
        }
        HTransducer::new(&alphabet, self.states.clone(), delta, lambda, final_values)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn automaton_round_trip() {
        let a = samples::alternating_length();
        let file = AutomatonFile::from_automaton(&a).unwrap();
        let text = to_json(&file).unwrap();
        let back: AutomatonFile = from_json(&text).unwrap();
        assert_eq!(back.to_automaton().unwrap(), a);
    }

    #[test]
    fn automaton_file_layout() {
        let text = r#"{"alphabet":["a"],"dim":1,"initial":[1],"final":[3],"matrices":{"a":[[2]]}}"#;
        let a = from_json::<AutomatonFile>(text).unwrap().to_automaton().unwrap();
        assert_eq!(a.evaluate("aa").unwrap(), BigInt::from(12));
        let bad = r#"{"alphabet":["ab"],"dim":1,"initial":[1],"final":[3],"matrices":{}}"#;
        assert!(from_json::<AutomatonFile>(bad).unwrap().to_automaton().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let a = WeightedAutomaton::constant(&['a'], BigInt::from(u64::MAX)).unwrap();
        assert!(matches!(AutomatonFile::from_automaton(&a), Err(Error::Overflow(_))));
    }

    #[test]
    fn decomposition_round_trip() {
        for d in [samples::parity_decomposition(), samples::bad_ex_ko(), samples::count_product_decomposition()] {
            let text = to_json(&DecompositionFile::from_decomposition(&d)).unwrap();
            let back = from_json::<DecompositionFile>(&text).unwrap().to_decomposition().unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn transducer_round_trip() {
        let t = samples::bad_ex_ok_alternative();
        let text = to_json(&TransducerFile::from_transducer(&t).unwrap()).unwrap();
        let file: TransducerFile = from_json(&text).unwrap();
        let back = file.to_transducer(|p| panic!("unexpected reference {p}")).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn transducer_outputs_by_reference() {
        let t = samples::bad_ex_ok_alternative();
        let mut file = TransducerFile::from_transducer(&t).unwrap();
        for e in &mut file.lambda {
            e.decomposition = OutputRef::Path(format!("{}{}.json", e.state, e.letter));
        }
        let back = file
            .to_transducer(|p| Ok(t.lambda(usize::from(p == "aa.json"), 'a').clone()))
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn presentation_round_trip() {
        let text = r#"{
            "elements": [0, 1], "identity": 0, "table": [[0, 1], [1, 1]],
            "morphism": {"a": 1}, "degree": 1,
            "production": [{"tuple": [1, 1], "value": 1}]
        }"#;
        let p = from_json::<PresentationFile>(text).unwrap().to_presentation().unwrap();
        let again = PresentationFile::from_presentation(&p).unwrap().to_presentation().unwrap();
        assert_eq!(p, again);
    }
}
