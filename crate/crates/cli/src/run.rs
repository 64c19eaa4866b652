use std::error::Error;
use std::path::{Path, PathBuf};

use clap::Parser;
use polyreg::automaton::WeightedAutomaton;
use polyreg::classes::{
    integrality_factor, is_integer_valued, is_poly_str_nneg, is_strongly_natural,
    nonneg_maximal_report, sampled_nonnegative,
};
use polyreg::decomp::{decompose, CommutativeDecomposition, DecomposeOutcome, Limits};
use polyreg::format::{
    from_json, to_json, AutomatonFile, DecompositionFile, PresentationFile, TransducerFile,
};
use polyreg::oracle::{brute_eval_automaton, commutativity_brute};
use polyreg::report::{Certificate, ClassificationReport, Verdict};
use polyreg::transducer::{classify_via_transducer, find_counter, verify_canonical, HTransducer};
use polyreg::{Polynomial, Rational};

use crate::record::{Fact, ResultEntry, RunRecord};
use crate::{Cli, Command, PolyCommand, SearchFlags, SeriesCommand, TransducerCommand};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Vec<String>,
    pub results: Vec<ResultEntry>,
    pub facts: Vec<Fact>,
    pub outputs: Vec<String>,
    /// Set when the input turned out to be unusable after some results were
    /// already produced.
    pub rejected: Option<String>,
}

impl Outcome {
    fn report(&mut self, r: &ClassificationReport) {
        self.results.push(r.into());
    }

    fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact {
            key: key.into(),
            value: value.to_string(),
        });
    }

    fn input(&mut self, p: &Path) {
        self.inputs.push(p.display().to_string());
    }

    pub fn lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.results.iter().map(|r| r.to_string()).collect();
        lines.extend(self.facts.iter().map(|f| format!("{}: {}", f.key, f.value)));
        lines.extend(self.outputs.iter().map(|o| format!("wrote: {o}")));
        if let Some(r) = &self.rejected {
            lines.push(format!("rejected: {r}"));
        }
        lines
    }

    pub fn exit_code(&self) -> u8 {
        if self.rejected.is_some() {
            1
        } else if self.results.iter().any(|r| r.verdict == "inconclusive") {
            2
        } else {
            0
        }
    }
}

fn word_label(w: &str) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.into()
    }
}

fn parse_word(w: &str) -> String {
    if w == "ε" {
        String::new()
    } else {
        w.to_string()
    }
}

/// Anything that denotes a series over a finite alphabet.
enum Series {
    Automaton(WeightedAutomaton),
    Decomposition(CommutativeDecomposition),
    Transducer(HTransducer),
}

impl Series {
    fn automaton(&self) -> Res<WeightedAutomaton> {
        Ok(match self {
            Series::Automaton(a) => a.clone(),
            Series::Decomposition(d) => polyreg::decomp::synthesize_automaton(d)?,
            Series::Transducer(t) => t.to_automaton()?,
        })
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn load_series(path: &Path) -> Res<Series> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let has = |k: &str| value.get(k).is_some();
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let series = if has("matrices") {
        Series::Automaton(from_json::<AutomatonFile>(&text)?.to_automaton()?)
    } else if has("table") {
        Series::Automaton(from_json::<PresentationFile>(&text)?.to_presentation()?.to_automaton()?)
    } else if has("omega") {
        Series::Decomposition(from_json::<DecompositionFile>(&text)?.to_decomposition()?)
    } else if has("delta") {
        let file: TransducerFile = from_json(&text)?;
        Series::Transducer(file.to_transducer(|p| {
            let text = std::fs::read_to_string(base.join(p))
                .map_err(|e| polyreg::Error::InvalidTransducer(format!("{p}: {e}")))?;
            from_json::<DecompositionFile>(&text)?.to_decomposition()
        })?)
    } else {
        return Err(format!("{}: not an automaton, presentation, decomposition or transducer", path.display()).into());
    };
    Ok(series)
}

fn load_transducer(path: &Path) -> Res<HTransducer> {
    match load_series(path)? {
        Series::Transducer(t) => Ok(t),
        _ => Err(format!("{} is not a transducer file", path.display()).into()),
    }
}

fn limits(flags: &SearchFlags) -> Limits {
    Limits {
        max_omega: flags.max_omega,
        max_degree: flags.max_degree,
        ..Limits::default()
    }
}

fn describe(d: &CommutativeDecomposition) -> String {
    let pieces: Vec<String> = d
        .pieces()
        .iter()
        .map(|(ty, p)| format!("{ty}={}", p.to_string().replace(' ', "")))
        .collect();
    format!("omega={} {}", d.omega(), pieces.join(" "))
}

/// A decomposition of the function in `path`, decomposing automata first.
/// Returns `None` after recording why when no decomposition is available.
fn load_function(path: &Path, flags: &SearchFlags, out: &mut Outcome) -> Res<Option<CommutativeDecomposition>> {
    let series = load_series(path)?;
    if let Series::Decomposition(d) = series {
        return Ok(Some(d));
    }
    let a = series.automaton()?;
    if let Some((u, v)) = a.is_commutative() {
        out.report(&ClassificationReport::new(
            "commutative",
            Verdict::No,
            Certificate::WordPair(u.clone(), v.clone()),
        ));
        out.rejected = Some(format!(
            "not commutative: f({}) != f({})",
            word_label(&u),
            word_label(&v)
        ));
        return Ok(None);
    }
    match decompose(&a, &limits(flags))? {
        DecomposeOutcome::Found(d) => {
            out.fact("decomposition", describe(&d));
            Ok(Some(d))
        }
        DecomposeOutcome::Inconclusive(reason) => {
            out.report(&ClassificationReport::new(
                "decomposition",
                Verdict::Inconclusive,
                Certificate::Reason(reason),
            ));
            Ok(None)
        }
    }
}

/// Compares the decomposition with run summation on every count vector of
/// total at most `len`.
fn oracle_agreement(a: &WeightedAutomaton, d: &CommutativeDecomposition, len: usize) -> Res<ClassificationReport> {
    for w in polyreg::oracle::WordEnumerator::new(a.alphabet(), len) {
        let mut sorted: Vec<char> = w.chars().collect();
        sorted.sort_unstable();
        if sorted.iter().collect::<String>() != w {
            continue;
        }
        if brute_eval_automaton(a, &w)? != d.eval_word(&w)? {
            return Ok(ClassificationReport::new(
                "oracle-agreement",
                Verdict::No,
                Certificate::Word(w),
            ));
        }
    }
    Ok(ClassificationReport::new("oracle-agreement", Verdict::Yes, Certificate::None)
        .with_bound(format!("length<={len}")))
}

pub fn execute(command: &Command) -> Res<Outcome> {
    let mut out = Outcome::default();
    match command {
        Command::Poly(PolyCommand::Classify { polynomial, sample_bound }) => {
            poly_classify(polynomial, *sample_bound, &mut out)?
        }
        Command::Series(c) => series(c, &mut out)?,
        Command::Transducer(c) => transducer(c, &mut out)?,
        Command::Verify { .. } => return Err("records of `verify` cannot be replayed".into()),
    }
    Ok(out)
}

fn poly_classify(text: &str, sample_bound: u64, out: &mut Outcome) -> Res<()> {
    let path = Path::new(text);
    let source = if path.is_file() {
        out.input(path);
        read(path)?
    } else {
        text.to_string()
    };
    let p: Polynomial = source.trim().parse()?;
    out.fact("polynomial", &p);
    let alpha = integrality_factor(&p);
    let integral = p.scale(&Rational::from_integer(alpha.clone()));
    if !p.is_integral() {
        out.fact("scaled-by", &alpha);
    }
    out.report(&nonneg_maximal_report(&integral)?);
    out.report(&sampled_nonnegative(&p, sample_bound));
    out.report(&is_integer_valued(&p));
    out.report(&is_poly_str_nneg(&integral)?);
    out.report(&is_strongly_natural(&p)?);
    Ok(())
}

fn series(command: &SeriesCommand, out: &mut Outcome) -> Res<()> {
    match command {
        SeriesCommand::Eval { series, words } => {
            out.input(series);
            let a = load_series(series)?.automaton()?;
            for w in words {
                let w = parse_word(w);
                out.fact(format!("f({})", word_label(&w)), a.evaluate(&w)?);
            }
        }
        SeriesCommand::Equiv { left, right } => {
            out.input(left);
            out.input(right);
            let a = load_series(left)?.automaton()?;
            let b = load_series(right)?.automaton()?;
            out.report(&match a.equivalent(&b)? {
                None => ClassificationReport::new("equivalent", Verdict::Yes, Certificate::None),
                Some(w) => ClassificationReport::new("equivalent", Verdict::No, Certificate::Word(w)),
            });
        }
        SeriesCommand::Commutative { series } => {
            out.input(series);
            let a = load_series(series)?.automaton()?;
            out.report(&commutativity_report(&a));
        }
        SeriesCommand::Decompose { series, flags, output } => {
            out.input(series);
            let a = load_series(series)?.automaton()?;
            if let Some((u, v)) = a.is_commutative() {
                out.report(&commutativity_report(&a));
                out.rejected = Some(format!("not commutative: f({}) != f({})", word_label(&u), word_label(&v)));
                return Ok(());
            }
            match decompose(&a, &limits(flags))? {
                DecomposeOutcome::Found(d) => {
                    out.report(
                        &ClassificationReport::new("decomposition", Verdict::Yes, Certificate::None)
                            .with_bound("equivalence-checked"),
                    );
                    out.report(&oracle_agreement(&a, &d, flags.oracle_length)?);
                    out.fact("decomposition", describe(&d));
                    if let Some(path) = output {
                        write_file(path, &to_json(&DecompositionFile::from_decomposition(&d))?, out)?;
                    }
                }
                DecomposeOutcome::Inconclusive(reason) => out.report(&ClassificationReport::new(
                    "decomposition",
                    Verdict::Inconclusive,
                    Certificate::Reason(reason),
                )),
            }
        }
        SeriesCommand::Classify { series, flags } => {
            out.input(series);
            let s = load_series(series)?;
            let a = s.automaton()?;
            let commutative = commutativity_report(&a);
            out.report(&commutative);
            let brute = commutativity_brute(&a, flags.oracle_length)?;
            out.fact(
                format!("oracle-commutative<={}", flags.oracle_length),
                match brute {
                    None => "no counterexample".to_string(),
                    Some((u, v)) => format!("f({}) != f({})", word_label(&u), word_label(&v)),
                },
            );
            if !commutative.verdict.is_yes() {
                return Ok(());
            }
            let d = match s {
                Series::Decomposition(d) => d,
                _ => match decompose(&a, &limits(flags))? {
                    DecomposeOutcome::Found(d) => d,
                    DecomposeOutcome::Inconclusive(reason) => {
                        out.report(&ClassificationReport::new(
                            "decomposition",
                            Verdict::Inconclusive,
                            Certificate::Reason(reason),
                        ));
                        return Ok(());
                    }
                },
            };
            out.fact("decomposition", describe(&d));
            out.report(&oracle_agreement(&a, &d, flags.oracle_length)?);
            out.report(&d.is_npoly(None)?);
            out.report(&d.is_ultimately_polynomial());
            out.report(&d.is_nsf()?);
            out.report(&d.is_zsf());
        }
    }
    Ok(())
}

fn commutativity_report(a: &WeightedAutomaton) -> ClassificationReport {
    match a.is_commutative() {
        None => ClassificationReport::new("commutative", Verdict::Yes, Certificate::None),
        Some((u, v)) => ClassificationReport::new("commutative", Verdict::No, Certificate::WordPair(u, v)),
    }
}

fn write_file(path: &Path, text: &str, out: &mut Outcome) -> Res<()> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    out.outputs.push(path.display().to_string());
    Ok(())
}

fn transducer_facts(t: &HTransducer, out: &mut Outcome) {
    let states: Vec<String> = t.states().iter().map(|s| word_label(s)).collect();
    out.fact("states", states.join(","));
    for (q, name) in t.states().iter().enumerate() {
        for &a in t.alphabet() {
            let key = format!("({},{a})", word_label(name));
            out.fact(format!("delta{key}"), word_label(&t.states()[t.delta(q, a)]));
            out.fact(format!("lambda{key}"), describe(t.lambda(q, a)));
        }
        out.fact(format!("F({})", word_label(name)), t.final_value(q));
    }
}

fn counter_report(t: &HTransducer) -> ClassificationReport {
    match find_counter(t) {
        None => ClassificationReport::new("counter-free", Verdict::Yes, Certificate::None),
        Some((q, u)) => ClassificationReport::new("counter-free", Verdict::No, Certificate::Counter(q, u)),
    }
}

fn transducer(command: &TransducerCommand, out: &mut Outcome) -> Res<()> {
    match command {
        TransducerCommand::Build { function, k, cap, flags, output } => {
            out.input(function);
            let Some(f) = load_function(function, flags, out)? else {
                return Ok(());
            };
            let c = classify_via_transducer(&f, *k, *cap)?;
            for r in c.reports() {
                out.report(&r);
            }
            if let Some(t) = c.outcome.transducer() {
                out.report(&verify_canonical(t, &f, *k, flags.oracle_length)?);
                transducer_facts(t, out);
                if let Some(path) = output {
                    write_file(path, &to_json(&TransducerFile::from_transducer(t)?)?, out)?;
                }
            }
        }
        TransducerCommand::Verify { transducer, function, k, flags } => {
            out.input(transducer);
            out.input(function);
            let t = load_transducer(transducer)?;
            let Some(f) = load_function(function, flags, out)? else {
                return Ok(());
            };
            out.report(&verify_canonical(&t, &f, *k, flags.oracle_length)?);
        }
        TransducerCommand::Counters { transducer } => {
            out.input(transducer);
            let t = load_transducer(transducer)?;
            out.report(&counter_report(&t));
            out.fact("states", t.states().len());
        }
    }
    Ok(())
}

/// Re-runs the command stored in a record and compares the outcome.
pub fn verify(path: &PathBuf) -> Res<Outcome> {
    let record: RunRecord = serde_json::from_str(&read(path)?)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let cli = Cli::try_parse_from(std::iter::once("polyreg".to_string()).chain(record.command.iter().cloned()))?;
    let replay = execute(&cli.command)?;
    let replayed = RunRecord {
        command: record.command.clone(),
        inputs: replay.inputs.clone(),
        results: replay.results.clone(),
        facts: replay.facts.clone(),
        outputs: replay.outputs.clone(),
        timing_ms: 0,
    };
    let mut out = Outcome::default();
    out.input(path);
    out.inputs.extend(replay.inputs.iter().cloned());
    if record.same_outcome(&replayed) {
        out.report(&ClassificationReport::new("replay", Verdict::Yes, Certificate::None)
            .with_bound(format!("{} results {} facts", record.results.len(), record.facts.len())));
    } else {
        let first = record
            .results
            .iter()
            .map(|r| r.to_string())
            .chain(record.facts.iter().map(|f| format!("{}: {}", f.key, f.value)))
            .zip(replay.lines())
            .find(|(a, b)| a != b)
            .map(|(a, b)| format!("recorded `{a}` but got `{b}`"))
            .unwrap_or_else(|| "different number of lines".to_string());
        out.report(&ClassificationReport::new("replay", Verdict::No, Certificate::Reason(first.clone())));
        out.rejected = Some(first);
    }
    Ok(out)
}
