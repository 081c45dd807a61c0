//! Codiscrete and groupoidal objects, and homotopy of points.

use std::sync::Arc;

use crate::category::{FiniteCategory, Obj};
use crate::construct::{coslice, slice};
use crate::factorization::{is_final, is_initial};
use crate::functor::FunctorData;

/// Every point is both initial and final.
pub fn is_codiscrete(x: &Arc<FiniteCategory>) -> bool {
    x.objects().all(|o| {
        let p = FunctorData::point(x, o);
        is_initial(&p).holds() && is_final(&p).holds()
    })
}

/// Every slice and every coslice is codiscrete.
pub fn is_groupoidal(x: &Arc<FiniteCategory>) -> bool {
    x.objects().all(|o| is_codiscrete(&slice(x, o).apex) && is_codiscrete(&coslice(x, o).apex))
}

/// Two points are homotopic iff the hom-set between them is nonempty.
pub fn homotopic(x: &Arc<FiniteCategory>, a: Obj, b: Obj) -> crate::error::Result<bool> {
    Ok(!super::hom::hom_interval(x, a, b)?.is_empty())
}
