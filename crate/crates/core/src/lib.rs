//! Finite categories, comprehensive factorizations and the balanced
//! calculus built on them.

pub mod calculus;
pub mod category;
pub mod components;
pub mod construct;
pub mod error;
pub mod factorization;
pub mod functor;
pub mod instances;
pub mod io;
pub mod samples;
pub mod search;

pub use category::{validate_category, FiniteCategory, Mor, Morphism, Obj};
pub use components::{pi0, FinSetQuotient};
pub use error::{Error, Result, ValidationReport, Violation};
pub use functor::FunctorData;
pub use search::SizeGuard;
