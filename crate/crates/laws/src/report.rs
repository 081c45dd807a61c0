//! Per-instance law records, the suite report and its summary table.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::GeneratorConfig;
use crate::subject::SubjectFile;

/// Proven claims are asserted; open ones are observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Law,
    Experiment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    FailsWithWitness,
    SkippedSizeGuard,
}

/// What a check found on one subject. `failure` describes the first failing
/// case and is present exactly when `holds` is false.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub holds: bool,
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observation: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Value>,
}

/// Everything needed to replay a failure standalone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub law_id: String,
    pub subject: SubjectFile,
    pub failure: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub anchor: String,
    pub kind: Kind,
    pub instance: usize,
    pub descriptor: String,
    pub verdict: Verdict,
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observation: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Wall-clock time; kept out of the serialized report so that reports are
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    /// A failed law, as opposed to an experiment observing a counterexample.
    pub fn is_failure(&self) -> bool {
        self.kind == Kind::Law && self.verdict == Verdict::FailsWithWitness
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub law_id: String,
    pub anchor: String,
    pub kind: Kind,
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub cases: usize,
}

/// Records are ordered by law, then by instance index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: GeneratorConfig,
    pub passed: bool,
    pub summary: Vec<SummaryRow>,
    pub records: Vec<LawReport>,
}

impl SuiteReport {
    pub fn new(config: GeneratorConfig, records: Vec<LawReport>) -> Self {
        let mut summary: Vec<SummaryRow> = Vec::new();
        for r in &records {
            if summary.last().map_or(true, |s| s.law_id != r.law_id) {
                summary.push(SummaryRow {
                    law_id: r.law_id.clone(),
                    anchor: r.anchor.clone(),
                    kind: r.kind,
                    holds: 0,
                    fails: 0,
                    skipped: 0,
                    cases: 0,
                });
            }
            let row = summary.last_mut().expect("pushed above");
            row.cases += r.cases;
            match r.verdict {
                Verdict::Holds => row.holds += 1,
                Verdict::FailsWithWitness => row.fails += 1,
                Verdict::SkippedSizeGuard => row.skipped += 1,
            }
        }
        let passed = !records.iter().any(LawReport::is_failure);
        SuiteReport { config, passed, summary, records }
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawReport> {
        self.records.iter().filter(|r| r.is_failure())
    }

    /// One line per law, keyed by anchor.
    pub fn summary_table(&self) -> String {
        let width = self.summary.iter().map(|r| r.anchor.chars().count()).max().unwrap_or(0).max(6);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<22} {:<width$} {:<10} {:>5} {:>5} {:>7} {:>7}",
            "law", "anchor", "kind", "holds", "fails", "skipped", "cases"
        );
        for r in &self.summary {
            let kind = match r.kind {
                Kind::Law => "law",
                Kind::Experiment => "experiment",
            };
            let pad = width - r.anchor.chars().count();
            let _ = writeln!(
                out,
                "{:<22} {}{} {:<10} {:>5} {:>5} {:>7} {:>7}",
                r.law_id,
                r.anchor,
                " ".repeat(pad),
                kind,
                r.holds,
                r.fails,
                r.skipped,
                r.cases
            );
        }
        let _ = writeln!(out, "suite {}", if self.passed { "passed" } else { "FAILED" });
        out
    }
}
