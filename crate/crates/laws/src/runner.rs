//! Running laws over generated instances and replaying recorded witnesses.

use std::time::Instant;

use rayon::prelude::*;

use balanced_core::{Error, Result, SizeGuard};

use crate::config::GeneratorConfig;
use crate::generate::{generate, rng_for, Instance};
use crate::laws::{find, registry, Law};
use crate::report::{LawReport, Outcome, SuiteReport, Verdict, Witness};
use crate::subject::Subject;

/// FNV-1a; keys the per-law generator so adding a law leaves the others'
/// draws unchanged.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Expands `all` and checks every id against the registry, keeping order
/// and dropping repeats.
pub fn resolve(ids: &[String]) -> Result<Vec<Law>> {
    let mut out: Vec<Law> = Vec::new();
    for id in ids {
        let batch = if id == "all" {
            registry()
        } else {
            vec![find(id).ok_or_else(|| Error::Precondition(format!("unknown law `{id}`")))?]
        };
        for law in batch {
            if !out.iter().any(|l| l.id == law.id) {
                out.push(law);
            }
        }
    }
    Ok(out)
}

/// Runs one check, mapping size-guard errors to a skip and any other error
/// to a failure that records the message.
fn evaluate(law: &Law, subject: &Subject, guard: &SizeGuard) -> std::result::Result<Outcome, String> {
    match (law.check)(subject, guard) {
        Ok(o) => Ok(o),
        Err(e) if e.is_size_guard() => Err(e.to_string()),
        Err(e) => Ok(Outcome {
            holds: false,
            cases: 0,
            observation: None,
            failure: Some(serde_json::json!({ "error": e.to_string() })),
        }),
    }
}

fn run_one(law: &Law, inst: &Instance, all: &[Instance], seed: u64, guard: &SizeGuard) -> LawReport {
    let start = Instant::now();
    let mut rng = rng_for(seed ^ fnv1a(law.id), inst.index as u64);
    let mut report = LawReport {
        law_id: law.id.to_string(),
        anchor: law.anchor.to_string(),
        kind: law.kind,
        instance: inst.index,
        descriptor: inst.descriptor.clone(),
        verdict: Verdict::Holds,
        cases: 0,
        observation: None,
        witness: None,
        skipped: None,
        elapsed: Default::default(),
    };
    let subject = match (law.prepare)(inst, all, &mut rng) {
        Ok(s) => s,
        Err(e) if e.is_size_guard() => {
            report.verdict = Verdict::SkippedSizeGuard;
            report.skipped = Some(e.to_string());
            report.elapsed = start.elapsed();
            return report;
        }
        Err(e) => {
            report.verdict = Verdict::FailsWithWitness;
            report.witness = Some(Witness {
                law_id: law.id.to_string(),
                subject: Subject::bare(inst.category.clone(), inst.poset.clone()).to_file(),
                failure: serde_json::json!({ "error": e.to_string() }),
            });
            report.elapsed = start.elapsed();
            return report;
        }
    };
    match evaluate(law, &subject, guard) {
        Ok(o) => {
            report.cases = o.cases;
            report.observation = o.observation;
            if !o.holds {
                report.verdict = Verdict::FailsWithWitness;
                report.witness = Some(Witness {
                    law_id: law.id.to_string(),
                    subject: subject.to_file(),
                    failure: o.failure.unwrap_or(serde_json::Value::Null),
                });
            }
        }
        Err(skip) => {
            report.verdict = Verdict::SkippedSizeGuard;
            report.skipped = Some(skip);
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Evaluates every law on every instance in parallel; records come back in
/// law order, then instance order, independent of scheduling.
pub fn run_laws(laws: &[Law], config: &GeneratorConfig, guard: &SizeGuard) -> Result<SuiteReport> {
    let instances = generate(config)?;
    let jobs: Vec<(&Law, &Instance)> = laws.iter().flat_map(|l| instances.iter().map(move |i| (l, i))).collect();
    let records = jobs.par_iter().map(|(l, i)| run_one(l, i, &instances, config.seed, guard)).collect();
    Ok(SuiteReport::new(config.clone(), records))
}

/// Runs a single law by id.
pub fn run_law(id: &str, config: &GeneratorConfig) -> Result<SuiteReport> {
    run_laws(&resolve(&[id.to_string()])?, config, &SizeGuard::from_env())
}

/// Re-evaluates a witness's law on its recorded subject alone.
pub fn replay(witness: &Witness, guard: &SizeGuard) -> Result<Outcome> {
    let law = find(&witness.law_id).ok_or_else(|| Error::Precondition(format!("unknown law `{}`", witness.law_id)))?;
    replay_with(&law, witness, guard)
}

/// As [`replay`], with the law given directly.
pub fn replay_with(law: &Law, witness: &Witness, guard: &SizeGuard) -> Result<Outcome> {
    (law.check)(&Subject::from_file(&witness.subject)?, guard)
}
