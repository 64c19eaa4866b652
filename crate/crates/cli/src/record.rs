use polyreg::report::ClassificationReport;
use serde::{Deserialize, Serialize};

/// One classifier outcome as printed and recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub class: String,
    pub verdict: String,
    pub witness: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub also: Vec<String>,
}

impl From<&ClassificationReport> for ResultEntry {
    fn from(r: &ClassificationReport) -> Self {
        ResultEntry {
            class: r.class.clone(),
            verdict: r.verdict.to_string(),
            witness: r.certificate.to_string(),
            bound: r.bound.clone(),
            also: r.alternatives.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl std::fmt::Display for ResultEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "class={} verdict={} witness={}", self.class, self.verdict, self.witness)?;
        if let Some(b) = &self.bound {
            write!(f, " bound={b}")?;
        }
        if !self.also.is_empty() {
            write!(f, " also={}", self.also.join(";"))?;
        }
        Ok(())
    }
}

/// A named value that is not a verdict, such as `f(aa)` or a modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

/// Everything a run printed, in a form that can be replayed with
/// `polyreg verify`. Apart from `timing_ms`, re-running the same command on
/// the same inputs gives an identical record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: Vec<String>,
    pub inputs: Vec<String>,
    pub results: Vec<ResultEntry>,
    pub facts: Vec<Fact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
    pub timing_ms: u64,
}

impl RunRecord {
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        self.results == other.results && self.facts == other.facts
    }
}
