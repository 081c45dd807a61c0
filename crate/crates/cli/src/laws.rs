//! `balanced laws`: run, list and replay.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;

use balanced_core::io::{read_json, to_json, write_atomic};
use balanced_core::{Error, Result, SizeGuard};
use balanced_laws::{registry, replay, resolve, run_laws, Family, GeneratorConfig, Witness};

use crate::output::Sink;
use crate::Exit;

#[derive(Debug, Subcommand)]
pub enum LawsCommand {
    /// Run laws over generated instances and write the report.
    Run {
        /// Law ids, comma separated, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// A generator configuration file; flags below override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        per_family: Option<usize>,
        #[arg(long)]
        max_objects: Option<usize>,
        #[arg(long)]
        max_morphisms: Option<usize>,
        /// Families, comma separated.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Write every failure witness as its own file here.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// The registered laws.
    List,
    /// Re-run a law on a witness file; exit 1 when the failure reproduces.
    Replay { witness: PathBuf },
}

pub fn run(command: LawsCommand, guard: &SizeGuard, sink: &Sink) -> Result<Exit> {
    match command {
        LawsCommand::Run { suite, seed, config, per_family, max_objects, max_morphisms, families, witness_dir } => {
            let mut cfg = match config {
                Some(path) => read_json::<GeneratorConfig>(&path)?,
                None => GeneratorConfig::default(),
            };
            cfg.seed = seed;
            if let Some(n) = per_family {
                cfg.per_family = n;
            }
            if let Some(n) = max_objects {
                cfg.max_objects = n;
            }
            if let Some(n) = max_morphisms {
                cfg.max_morphisms = n;
            }
            if !families.is_empty() {
                cfg.families = families.iter().map(|f| Family::from_name(f)).collect::<Result<_>>()?;
            }
            let laws = resolve(&suite)?;
            let report = run_laws(&laws, &cfg, guard)?;
            if let Some(dir) = witness_dir {
                std::fs::create_dir_all(&dir)?;
                for r in report.failures() {
                    if let Some(w) = &r.witness {
                        write_atomic(&dir.join(format!("{}-{}.json", r.law_id, r.instance)), &to_json(w))?;
                    }
                }
            }
            sink.emit(&report)?;
            // The table goes to stdout only when stdout is not the report.
            if sink.out.is_some() {
                print!("{}", report.summary_table());
            } else {
                eprint!("{}", report.summary_table());
            }
            Ok(Exit::from_bool(report.passed))
        }
        LawsCommand::List => {
            let rows: Vec<_> = registry()
                .iter()
                .map(|l| json!({ "id": l.id, "anchor": l.anchor, "kind": l.kind }))
                .collect();
            sink.emit(&rows)?;
            Ok(Exit::Success)
        }
        LawsCommand::Replay { witness } => {
            let w: Witness = read_json(&witness)?;
            let outcome = replay(&w, guard)?;
            if outcome.holds && outcome.failure.is_none() {
                sink.emit(&json!({ "law_id": w.law_id, "reproduced": false }))?;
                return Ok(Exit::Success);
            }
            let failure = outcome.failure.ok_or_else(|| Error::Precondition("failing outcome without payload".into()))?;
            sink.emit(&json!({ "law_id": w.law_id, "reproduced": true, "failure": failure }))?;
            Ok(Exit::False)
        }
    }
}
