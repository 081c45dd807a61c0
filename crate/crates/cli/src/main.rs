//! `balanced`: every library operation and the law suite from the command
//! line. Exit 0 on success or a true predicate, 1 on a false predicate or a
//! failed law, 2 on bad input or an exceeded size guard.

mod backend;
mod commands;
mod laws;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use balanced_core::{Error, Result, SizeGuard};

use crate::output::{parse_pair, Sink};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    False,
}

impl Exit {
    pub fn from_bool(holds: bool) -> Exit {
        if holds {
            Exit::Success
        } else {
            Exit::False
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceKind {
    Fincat,
    Pos,
    Finset,
    Graph,
    Discrete,
    Codiscrete,
}

impl InstanceKind {
    fn name(self) -> &'static str {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned().leak()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// (final, discrete fibration)
    Left,
    /// (initial, discrete opfibration)
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Final,
    Initial,
    Df,
    Dof,
    Dense,
    Adjunctible,
    FullyFaithful,
    Codiscrete,
    Groupoidal,
}

impl Predicate {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileKind {
    Category,
    Functor,
    Presheaf,
    Copresheaf,
    Poset,
    Monotone,
    Finmap,
    Graph,
}

impl FileKind {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "balanced", version, about = "Comprehensive factorizations and the balanced calculus on finite categories")]
struct Cli {
    /// Which balanced factorization category interprets the input files.
    #[arg(long, global = true, value_enum, default_value = "fincat")]
    instance: InstanceKind,

    /// Write the result here (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutDir {
    /// Write each part of the result as `<part>.json` in this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a file.
    Validate {
        file: PathBuf,
        /// File grammar; defaults to the instance's object grammar.
        #[arg(long = "as", value_enum)]
        kind: Option<FileKind>,
    },
    /// Connected components and the reflection into them.
    Pi0 {
        file: PathBuf,
        #[command(flatten)]
        dir: OutDir,
    },
    /// The opposite category.
    Opposite { category: PathBuf },
    /// The slice `X/x` with its projection.
    Slice {
        category: PathBuf,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        dir: OutDir,
    },
    /// The coslice `x\X` with its projection.
    Coslice {
        category: PathBuf,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        dir: OutDir,
    },
    /// The comma category `(p, q)`.
    Comma {
        p: PathBuf,
        q: PathBuf,
        #[command(flatten)]
        dir: OutDir,
    },
    /// The strict pullback of a cospan.
    Pullback {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        dir: OutDir,
    },
    /// `P ×_X Q` as an object over `X`.
    ProductOver {
        p: PathBuf,
        q: PathBuf,
        #[command(flatten)]
        dir: OutDir,
    },
    /// Factor a map through one of the two systems.
    Factorize {
        map: PathBuf,
        #[arg(long, value_enum)]
        system: System,
        #[command(flatten)]
        dir: OutDir,
    },
    /// The reflection `↓q` (left) or `↑q` (right) as a set-valued functor.
    Reflect {
        functor: PathBuf,
        #[arg(long, value_enum)]
        system: System,
    },
    /// Decide a predicate; exit 1 when it fails.
    Check {
        #[arg(value_enum)]
        predicate: Predicate,
        file: PathBuf,
        /// Restrict `fully-faithful` to one object.
        #[arg(long)]
        object: Option<String>,
    },
    /// The internal hom-set `X(x,y)`.
    Homset {
        category: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The interval `[x,y]`, or the arrow interval of one arrow.
    Interval {
        category: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        arrow: Option<String>,
        #[command(flatten)]
        dir: OutDir,
    },
    /// Enriched composition `μ: X(x,y) × X(y,z) → X(x,z)`.
    ComposeEnriched {
        category: PathBuf,
        /// The objects x, y, z.
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"])]
        objects: Vec<String>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        t: Option<String>,
    },
    /// The arrow map `X/x → Y/fx`.
    ArrowMap {
        functor: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// The underlying category, or with `--functor` the underlying functor.
    Underlying {
        file: PathBuf,
        #[arg(long)]
        functor: bool,
    },
    /// The right adjoint of an adjunctible map on underlying categories.
    RightAdjoint {
        map: PathBuf,
        #[command(flatten)]
        dir: OutDir,
    },
    /// Cones under a diagram.
    Cone {
        #[command(subcommand)]
        action: ConeCommand,
    },
    /// Whether a map sends every colimiting cone under `p` to a colimiting cone.
    PreservesColimits { functor: PathBuf, diagram: PathBuf },
    /// The pullback `α//f` of an arrow interval along `f/y → Y/y`.
    AlphaPullback {
        functor: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        arrow: String,
        #[command(flatten)]
        dir: OutDir,
    },
    /// `p ⊗ q = π0(P ×_X Q)`.
    Tensor { p: PathBuf, q: PathBuf },
    /// The enriched action `X(x,y) × (ym) → (xm)` of a presheaf.
    ModuleAction { presheaf: PathBuf },
    /// Check that a fiberwise map of presheaves is a map of modules.
    ModuleMorphism {
        m: PathBuf,
        n: PathBuf,
        /// `{"components": {object: {element: element}}}`.
        xi: PathBuf,
    },
    /// The complement `¬m(S)` as a covariant set-valued functor.
    Complement {
        presheaf: PathBuf,
        /// Elements of `S`, comma separated; empty for the empty set.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
    /// Paths between two nodes of an acyclic graph.
    Paths {
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The law suite.
    Laws {
        #[command(subcommand)]
        action: laws::LawsCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ConeCommand {
    /// Whether the given cone is colimiting; exit 1 when it is not.
    Check {
        diagram: PathBuf,
        #[arg(long)]
        apex: String,
        /// The leg at each object, as `object=arrow`.
        #[arg(long = "leg", value_parser = parse_pair)]
        legs: Vec<(String, String)>,
    },
    /// Every cone under the diagram.
    List { diagram: PathBuf },
}

pub fn unsupported(command: &str, kind: InstanceKind) -> Error {
    Error::Precondition(format!("{command} is not available for the {} instance", kind.name()))
}

fn only(command: &str, kind: InstanceKind, allowed: &[InstanceKind]) -> Result<()> {
    if allowed.contains(&kind) {
        Ok(())
    } else {
        Err(unsupported(command, kind))
    }
}

fn sink(out: &Option<PathBuf>, dir: Option<&OutDir>) -> Sink {
    Sink { out: out.clone(), out_dir: dir.and_then(|d| d.out_dir.clone()) }
}

fn run(cli: Cli) -> Result<Exit> {
    use InstanceKind as I;
    let kind = cli.instance;
    let guard = SizeGuard::from_env();
    let plain = sink(&cli.out, None);
    let fincat = |command: &str| only(command, kind, &[I::Fincat]);
    match cli.command {
        Command::Validate { file, kind: as_kind } => {
            let default = match kind {
                I::Pos => FileKind::Poset,
                I::Finset => FileKind::Finmap,
                I::Graph => FileKind::Graph,
                I::Fincat | I::Discrete | I::Codiscrete => FileKind::Category,
            };
            commands::validate(&file, as_kind.unwrap_or(default), &plain)
        }
        Command::Pi0 { file, dir } => {
            let s = sink(&cli.out, Some(&dir));
            match kind {
                I::Fincat => commands::pi0_fincat(&balanced_core::io::load_category(&file)?, &s),
                _ => backend::with_instance(kind, |ops| ops.pi0(&file, &s)),
            }
        }
        Command::Opposite { category } => {
            fincat("opposite")?;
            commands::opposite_cmd(&category, &plain)
        }
        Command::Slice { category, object, dir } => {
            fincat("slice")?;
            commands::slice_cmd(&category, &object, false, &sink(&cli.out, Some(&dir)))
        }
        Command::Coslice { category, object, dir } => {
            fincat("coslice")?;
            commands::slice_cmd(&category, &object, true, &sink(&cli.out, Some(&dir)))
        }
        Command::Comma { p, q, dir } => {
            fincat("comma")?;
            commands::comma_cmd(&p, &q, &sink(&cli.out, Some(&dir)))
        }
        Command::Pullback { f, g, dir } => backend::with_instance(kind, |ops| ops.pullback(&f, &g, &sink(&cli.out, Some(&dir)))),
        Command::ProductOver { p, q, dir } => {
            fincat("product-over")?;
            commands::product_over_cmd(&p, &q, &sink(&cli.out, Some(&dir)))
        }
        Command::Factorize { map, system, dir } => {
            backend::with_instance(kind, |ops| ops.factorize(&map, system, &sink(&cli.out, Some(&dir))))
        }
        Command::Reflect { functor, system } => {
            fincat("reflect")?;
            commands::reflect(&functor, system, &plain)
        }
        Command::Check { predicate, file, object } => match kind {
            I::Fincat => commands::check_fincat(predicate, &file, object.as_deref(), &plain),
            I::Pos => commands::check_pos(predicate, &file, &plain),
            _ => backend::with_instance(kind, |ops| ops.check(predicate, &file, &plain)),
        },
        Command::Homset { category, from, to } => {
            fincat("homset")?;
            commands::homset(&category, &from, &to, &plain)
        }
        Command::Interval { category, from, to, arrow, dir } => {
            fincat("interval")?;
            commands::interval(&category, &from, &to, arrow.as_deref(), &sink(&cli.out, Some(&dir)))
        }
        Command::ComposeEnriched { category, objects, s, t } => {
            fincat("compose-enriched")?;
            commands::compose_enriched(&category, &objects, s.as_deref(), t.as_deref(), &plain)
        }
        Command::ArrowMap { functor, object } => {
            fincat("arrow-map")?;
            commands::arrow_map_cmd(&functor, &object, &plain)
        }
        Command::Underlying { file, functor } => match kind {
            I::Fincat => commands::underlying(&file, functor, &plain),
            I::Graph if !functor => commands::underlying_graph(&file, &plain),
            _ => Err(unsupported("underlying", kind)),
        },
        Command::RightAdjoint { map, dir } => match kind {
            I::Fincat => commands::right_adjoint(&map, &sink(&cli.out, Some(&dir))),
            I::Pos => commands::right_adjoint_pos(&map, &plain),
            _ => Err(unsupported("right-adjoint", kind)),
        },
        Command::Cone { action } => {
            fincat("cone")?;
            match action {
                ConeCommand::Check { diagram, apex, legs } => commands::cone_check(&diagram, &apex, &legs, &guard, &plain),
                ConeCommand::List { diagram } => commands::cone_list(&diagram, &guard, &plain),
            }
        }
        Command::PreservesColimits { functor, diagram } => {
            fincat("preserves-colimits")?;
            commands::preserves_colimits(&functor, &diagram, &guard, &plain)
        }
        Command::AlphaPullback { functor, from, to, arrow, dir } => {
            fincat("alpha-pullback")?;
            commands::alpha_pullback_cmd(&functor, &from, &to, &arrow, &sink(&cli.out, Some(&dir)))
        }
        Command::Tensor { p, q } => {
            fincat("tensor")?;
            commands::tensor_cmd(&p, &q, &plain)
        }
        Command::ModuleAction { presheaf } => {
            fincat("module-action")?;
            commands::module_action_cmd(&presheaf, &plain)
        }
        Command::ModuleMorphism { m, n, xi } => {
            fincat("module-morphism")?;
            commands::module_morphism_cmd(&m, &n, &xi, &plain)
        }
        Command::Complement { presheaf, set } => {
            fincat("complement")?;
            commands::complement_cmd(&presheaf, &set, &plain)
        }
        Command::Paths { graph, from, to } => {
            only("paths", kind, &[I::Graph])?;
            commands::paths(&graph, &from, &to, &plain)
        }
        Command::Laws { action } => laws::run(action, &guard, &plain),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Exit::Success) => ExitCode::SUCCESS,
        Ok(Exit::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
