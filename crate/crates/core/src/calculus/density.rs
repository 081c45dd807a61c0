//! Dense, adequate and fully faithful maps, and the pullbacks `α//f`.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FiniteCategory, Obj};
use crate::components::pi0;
use crate::construct::{comma, full_subcategory, pullback, slice, CommaResult, PullbackResult};
use crate::error::{Error, Result};
use crate::factorization::{is_final, Check};
use crate::functor::FunctorData;
use crate::search::SizeGuard;

use super::cones::{is_colimiting, Cone};
use super::hom::HomInterval;

/// `f/y` with the canonical map `e: f/y → Y/y`, `(x, β) ↦ (fx, β)`.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub over: CommaResult,
    pub e: FunctorData,
}

/// The comparison map into the given copy of `Y/y`.
pub fn comparison(f: &FunctorData, y: Obj, target: &CommaResult) -> Result<Comparison> {
    let over = comma(f, &FunctorData::point(f.cod(), y))?;
    let c = &over.apex;
    let obj_map: Vec<Obj> = c
        .objects()
        .map(|o| {
            let (a, _, beta) = over.tags[o];
            target.object_for(f.obj(a), 0, beta).expect("β lands in Y/y")
        })
        .collect();
    let mut mor_map = Vec::with_capacity(c.num_morphisms());
    for u in c.morphisms() {
        let (s, t) = (c.src(u), c.tgt(u));
        let image = target
            .morphism_for(obj_map[s], f.mor(over.proj_left.mor(u)), 0, obj_map[t])
            .ok_or_else(|| Error::Postcondition("comparison map misses a morphism".into()))?;
        mor_map.push(image);
    }
    let e = FunctorData::new_unchecked(c.clone(), target.apex.clone(), obj_map, mor_map);
    Ok(Comparison { over, e })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    pub object: String,
    pub under: String,
    pub components: usize,
}

/// Every comparison `f/y → Y/y` is final.
pub fn is_dense(f: &FunctorData) -> Result<Check<DensityWitness>> {
    let y = f.cod();
    for o in y.objects() {
        let sl = slice(y, o);
        let cmp = comparison(f, o, &sl)?;
        if let Check::Fail(w) = is_final(&cmp.e) {
            return Ok(Check::Fail(DensityWitness {
                object: y.object_name(o).to_string(),
                under: w.object_name,
                components: w.components,
            }));
        }
    }
    Ok(Check::Pass)
}

/// The comparison at `y` is a colimiting cone.
pub fn is_adequate_at(f: &FunctorData, y: Obj, guard: &SizeGuard) -> Result<bool> {
    let sl = slice(f.cod(), y);
    let cmp = comparison(f, y, &sl)?;
    let p = sl.proj_left.after(&cmp.e)?;
    let cone = Cone::new(p, y, sl, cmp.e)?;
    Ok(is_colimiting(&cone, guard)?.holds())
}

/// The unit `X/x → f/fx`, `(w, γ) ↦ (w, fγ)`, is an isomorphism.
pub fn is_fully_faithful_at(f: &FunctorData, x: Obj) -> Result<bool> {
    let xc: &Arc<FiniteCategory> = f.dom();
    let sl = slice(xc, x);
    let target = comma(f, &FunctorData::point(f.cod(), f.obj(x)))?;
    let s = &sl.apex;
    let mut obj_map = Vec::with_capacity(s.num_objects());
    for o in s.objects() {
        let (w, _, gamma) = sl.tags[o];
        obj_map.push(
            target
                .object_for(w, 0, f.mor(gamma))
                .ok_or_else(|| Error::Postcondition("unit misses an object".into()))?,
        );
    }
    let mut mor_map = Vec::with_capacity(s.num_morphisms());
    for u in s.morphisms() {
        mor_map.push(
            target
                .morphism_for(obj_map[s.src(u)], sl.proj_left.mor(u), 0, obj_map[s.tgt(u)])
                .ok_or_else(|| Error::Postcondition("unit misses a morphism".into()))?,
        );
    }
    let unit = FunctorData::new_unchecked(s.clone(), target.apex.clone(), obj_map, mor_map);
    Ok(unit.is_isomorphism())
}

/// `α//f`: the pullback of `[α] → [x,y] → Y/y` along `f/y → Y/y`.
#[derive(Debug, Clone)]
pub struct AlphaPullback {
    pub interval: Arc<FiniteCategory>,
    pub pullback: PullbackResult,
    pub connected: bool,
}

/// Builds `α//f` for the element `k` of the hom-set `h = Y(y0, y)`.
pub fn alpha_pullback(f: &FunctorData, h: &HomInterval, k: usize) -> Result<AlphaPullback> {
    let members: Vec<Obj> = h.apex.objects().filter(|&o| h.c_xy.class_of[o] == k).collect();
    let (interval, inclusion) = full_subcategory(&h.apex, &members);
    let into_slice = h.q_xy.after(&inclusion)?;
    let cmp = comparison(f, h.y, &h.slice)?;
    let pb = pullback(&cmp.e, &into_slice)?;
    let connected = pi0(&pb.apex).len() == 1;
    Ok(AlphaPullback { interval, pullback: pb, connected })
}
