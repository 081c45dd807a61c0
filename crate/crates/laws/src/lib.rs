//! Instance generators and the law suite: every law is evaluated on
//! generated finite categories, and each failure carries a replayable
//! witness.

pub mod config;
pub mod generate;
pub mod laws;
pub mod report;
pub mod runner;
pub mod subject;

pub use config::{Family, GeneratorConfig};
pub use generate::{generate, Instance};
pub use laws::{find, registry, Law};
pub use report::{Kind, LawReport, Outcome, SuiteReport, SummaryRow, Verdict, Witness};
pub use runner::{replay, replay_with, resolve, run_law, run_laws};
pub use subject::{Subject, SubjectFile};
