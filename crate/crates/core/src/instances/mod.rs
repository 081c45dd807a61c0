//! Balanced factorization categories other than plain finite categories:
//! posets, finite sets, the (co)discrete constructions, and acyclic graphs.

pub mod bfc;
pub mod fincat;
pub mod finset;
pub mod graph;
pub mod pos;

use std::sync::Arc;

pub use bfc::{BfcInstance, IntervalObject, LexBackend};
pub use fincat::{fincat_bfc, FinCat};
pub use finset::{finset_epimono_bfc, image_factorization, FinMap, FinSet};
pub use graph::{Edge, Graph, Path};
pub use pos::{
    is_coinitial, is_cofinal, is_lower_set_inclusion, is_upper_set_inclusion, lower_set_complement, pos_bfc,
    pos_factorize_left, pos_factorize_right, pos_is_absolute, pos_is_adequate, pos_is_colimit, pos_is_dense, pos_pi0,
    pos_upper_adjoint, MonotoneMap, Pos, PosetObject,
};

/// `E = isomorphisms`, `M = all maps`.
pub fn make_discrete_bfc<B: LexBackend>(backend: B) -> BfcInstance<B> {
    BfcInstance::discrete(Arc::new(backend))
}

/// `E = all maps`, `M = isomorphisms`.
pub fn make_codiscrete_bfc<B: LexBackend>(backend: B) -> BfcInstance<B> {
    BfcInstance::codiscrete(Arc::new(backend))
}
