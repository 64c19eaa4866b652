//! Browser bindings for a few polyreg operations. Every function takes and
//! returns JSON text; failures come back as `{"error": "..."}`.

use polyreg::classes::{
    integrality_factor, is_integer_valued, is_poly_str_nneg, is_strongly_natural,
    nonneg_maximal_report, sampled_nonnegative,
};
use polyreg::format::{AutomatonFile, DecompositionFile, TransducerFile};
use polyreg::oracle::WordEnumerator;
use polyreg::report::ClassificationReport;
use polyreg::transducer::{classify_via_transducer, BuildOutcome, DEFAULT_CAP};
use polyreg::{Polynomial, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest word length accepted by [`series_values`].
pub const MAX_WORD_LENGTH: usize = 8;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn report_json(r: &ClassificationReport) -> Value {
    json!({
        "class": r.class,
        "verdict": r.verdict.to_string(),
        "witness": r.certificate.to_string(),
        "bound": r.bound,
    })
}

/// Runs the polynomial classifiers on an expression such as
/// `Z*(X + Y)^2 + 2*(X - Y)^2`.
#[wasm_bindgen]
pub fn classify_polynomial(expr: &str) -> String {
    respond(classify(expr))
}

fn classify(expr: &str) -> Result<Value, String> {
    let p: Polynomial = expr.parse().map_err(|e: polyreg::Error| e.to_string())?;
    let scaled = p.scale(&Rational::from_integer(integrality_factor(&p)));
    let reports = vec![
        nonneg_maximal_report(&scaled).map_err(|e| e.to_string())?,
        sampled_nonnegative(&p, 20),
        is_integer_valued(&p),
        is_poly_str_nneg(&scaled).map_err(|e| e.to_string())?,
        is_strongly_natural(&p).map_err(|e| e.to_string())?,
    ];
    Ok(json!({
        "polynomial": p.to_string(),
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    }))
}

/// Values of an automaton, given in the automaton file format, on every
/// word up to `max_length` letters.
#[wasm_bindgen]
pub fn series_values(automaton_json: &str, max_length: usize) -> String {
    respond(values(automaton_json, max_length))
}

fn values(text: &str, max_length: usize) -> Result<Value, String> {
    if max_length > MAX_WORD_LENGTH {
        return Err(format!("words longer than {MAX_WORD_LENGTH} letters are not listed"));
    }
    let file: AutomatonFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let a = file.to_automaton().map_err(|e| e.to_string())?;
    let rows = WordEnumerator::new(a.alphabet(), max_length)
        .map(|w| {
            let v = a.evaluate(&w).map_err(|e| e.to_string())?;
            Ok(json!({ "word": w, "value": v.to_string() }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({
        "commutative": a.is_commutative().is_none(),
        "values": rows,
    }))
}

/// Builds the `k`-residual transducer of a function given in the
/// decomposition file format.
#[wasm_bindgen]
pub fn residual_transducer(decomposition_json: &str, k: u32) -> String {
    respond(transducer(decomposition_json, k))
}

fn transducer(text: &str, k: u32) -> Result<Value, String> {
    let file: DecompositionFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let f = file.to_decomposition().map_err(|e| e.to_string())?;
    let c = classify_via_transducer(&f, k, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let transducer = match &c.outcome {
        BuildOutcome::Built(t) => {
            serde_json::to_value(TransducerFile::from_transducer(t).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
        }
        BuildOutcome::Inconclusive { .. } => Value::Null,
    };
    Ok(json!({
        "reports": c.reports().iter().map(report_json).collect::<Vec<_>>(),
        "transducer": transducer,
    }))
}
