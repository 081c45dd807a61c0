//! Cones as maps over the base into slices, and their universal property.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FiniteCategory, Obj};
use crate::construct::{slice, CommaResult};
use crate::error::{Error, Result};
use crate::factorization::{is_final, Check};
use crate::functor::{same_category, FunctorData};
use crate::search::{FunctorSearch, SizeGuard};

use super::underlying::arrow_map_between;

/// A cone `λ: p → x`: a map `leg: P → X/x` with `↓x ∘ leg = p`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub p: FunctorData,
    pub x: Obj,
    pub slice: CommaResult,
    pub leg: FunctorData,
}

impl Cone {
    /// Checks the triangle over the base strictly.
    pub fn new(p: FunctorData, x: Obj, slice: CommaResult, leg: FunctorData) -> Result<Cone> {
        let c = Cone { p, x, slice, leg };
        if !is_cone(&c) {
            return Err(Error::Precondition("the leg does not commute with the projection".into()));
        }
        Ok(c)
    }
}

pub fn is_cone(c: &Cone) -> bool {
    c.leg.law_violations().is_empty()
        && same_category(c.leg.cod(), &c.slice.apex)
        && c.slice.proj_left.after(&c.leg).is_ok_and(|t| t == c.p)
}

/// All cones `p → x` for every object `x`.
pub fn cones_under(p: &FunctorData, guard: &SizeGuard) -> Result<Vec<Cone>> {
    let x = p.cod();
    let mut out = Vec::new();
    for o in x.objects() {
        let sl = slice(x, o);
        for leg in FunctorSearch::new(p.dom(), &sl.apex).over(&sl.proj_left, p).collect(guard)? {
            out.push(Cone { p: p.clone(), x: o, slice: sl.clone(), leg });
        }
    }
    Ok(out)
}

/// A cone into `X/y` factoring through the candidate in a number of ways other
/// than one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitWitness {
    pub target: String,
    pub cone_objects: Vec<String>,
    pub factorizations: usize,
}

/// For every `y` and every cone `γ: p → y`, exactly one `u: X/x → X/y` over
/// `X` with `u ∘ λ = γ`.
pub fn is_colimiting(c: &Cone, guard: &SizeGuard) -> Result<Check<ColimitWitness>> {
    let x: &Arc<FiniteCategory> = c.p.cod();
    for y in x.objects() {
        let sl = slice(x, y);
        let cones = FunctorSearch::new(c.p.dom(), &sl.apex).over(&sl.proj_left, &c.p).collect(guard)?;
        for gamma in &cones {
            let n = match FunctorSearch::new(&c.slice.apex, &sl.apex)
                .over(&sl.proj_left, &c.slice.proj_left)
                .extending(&c.leg, gamma)
            {
                Some(s) => s.count(guard)?,
                None => 0,
            };
            if n != 1 {
                return Ok(Check::Fail(ColimitWitness {
                    target: x.object_name(y).to_string(),
                    cone_objects: gamma.obj_map().iter().map(|&o| sl.apex.object_name(o).to_string()).collect(),
                    factorizations: n,
                }));
            }
        }
    }
    Ok(Check::Pass)
}

/// A colimiting cone whose leg is final.
pub fn is_absolute(c: &Cone) -> bool {
    is_final(&c.leg).holds()
}

/// The image cone `fλ = e_{f,x} ∘ λ: f∘p → fx`.
pub fn image_cone(f: &FunctorData, c: &Cone) -> Result<Cone> {
    let target = slice(f.cod(), f.obj(c.x));
    let e = arrow_map_between(f, c.x, &c.slice, &target)?;
    let leg = e.after(&c.leg)?;
    let p = f.after(&c.p)?;
    Cone::new(p, f.obj(c.x), target, leg)
}

/// Whether the image of a colimiting cone under `f` is colimiting.
pub fn preserves_colimits_check(f: &FunctorData, c: &Cone, guard: &SizeGuard) -> Result<bool> {
    Ok(is_colimiting(&image_cone(f, c)?, guard)?.holds())
}

/// The cone `λ ∘ e: p ∘ e → x`.
pub fn restrict_cone(c: &Cone, e: &FunctorData) -> Result<Cone> {
    Cone::new(c.p.after(e)?, c.x, c.slice.clone(), c.leg.after(e)?)
}
