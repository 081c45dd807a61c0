use std::fmt;

use thiserror::Error;

/// One violated axiom or dangling reference found while validating input data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject(String),
    DuplicateMorphism(String),
    ReservedIdentifier(String),
    UnknownObject { context: String, name: String },
    UnknownMorphism { context: String, name: String },
    NotComposable { g: String, f: String },
    WrongComposite { g: String, f: String, result: String },
    ConflictingComposite { g: String, f: String, first: String, second: String },
    MissingComposite { g: String, f: String },
    IdentityLaw { morphism: String, side: &'static str, got: String },
    Associativity { h: String, g: String, f: String, left: String, right: String },
    UnmappedObject(String),
    UnmappedMorphism(String),
    SourceNotPreserved { morphism: String },
    TargetNotPreserved { morphism: String },
    IdentityNotPreserved { object: String },
    CompositeNotPreserved { g: String, f: String },
    NotReflexive(String),
    NotAntisymmetric { a: String, b: String },
    Cycle(Vec<String>),
    Other(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateObject(o) => write!(f, "duplicate object `{o}`"),
            DuplicateMorphism(m) => write!(f, "duplicate morphism `{m}`"),
            ReservedIdentifier(m) => write!(f, "`{m}` uses the reserved identity prefix `id:`"),
            UnknownObject { context, name } => write!(f, "{context}: unknown object `{name}`"),
            UnknownMorphism { context, name } => write!(f, "{context}: unknown morphism `{name}`"),
            NotComposable { g, f: ff } => {
                write!(f, "compose entry ({g}, {ff}) is not composable: src({g}) != tgt({ff})")
            }
            WrongComposite { g, f: ff, result } => write!(
                f,
                "compose({g}, {ff}) = {result} has the wrong source or target"
            ),
            ConflictingComposite { g, f: ff, first, second } => {
                write!(f, "compose({g}, {ff}) given twice: `{first}` and `{second}`")
            }
            MissingComposite { g, f: ff } => write!(f, "missing composite for ({g}, {ff})"),
            IdentityLaw { morphism, side, got } => {
                write!(f, "{side} identity law fails for `{morphism}` (got `{got}`)")
            }
            Associativity { h, g, f: ff, left, right } => write!(
                f,
                "associativity fails for ({h}, {g}, {ff}): h(gf) = {left}, (hg)f = {right}"
            ),
            UnmappedObject(o) => write!(f, "object `{o}` has no image"),
            UnmappedMorphism(m) => write!(f, "morphism `{m}` has no image"),
            SourceNotPreserved { morphism } => write!(f, "source of `{morphism}` not preserved"),
            TargetNotPreserved { morphism } => write!(f, "target of `{morphism}` not preserved"),
            IdentityNotPreserved { object } => write!(f, "identity of `{object}` not preserved"),
            CompositeNotPreserved { g, f: ff } => {
                write!(f, "composite of ({g}, {ff}) not preserved")
            }
            NotReflexive(e) => write!(f, "`{e}` is not related to itself"),
            NotAntisymmetric { a, b } => write!(f, "`{a}` <= `{b}` and `{b}` <= `{a}` but they differ"),
            Cycle(c) => write!(f, "cycle {}", c.join(" -> ")),
            Other(s) => f.write_str(s),
        }
    }
}

/// Every violation found in one validation pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input\n{0}")]
    Invalid(#[from] ValidationReport),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("size guard exceeded while {what} (limit {limit})")]
    SizeGuard { what: String, limit: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
