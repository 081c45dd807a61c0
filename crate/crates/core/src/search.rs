//! Backtracking enumeration of functors under constraints, and isomorphism
//! search built on top of it.
//!
//! Objects are assigned first in index order; every non-identity morphism is
//! assigned as soon as both of its endpoints are. A composable triple is
//! checked at the moment its last member gets an image.

use std::sync::Arc;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::error::{Error, Result};
use crate::functor::FunctorData;

pub const DEFAULT_SIZE_GUARD: u64 = 1_000_000;
pub const SIZE_GUARD_ENV: &str = "BALANCED_SIZE_GUARD";

/// Bound on enumeration work. Exceeding it is an error, never a silent cut-off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub limit: u64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { limit: DEFAULT_SIZE_GUARD }
    }
}

impl SizeGuard {
    pub fn new(limit: u64) -> Self {
        SizeGuard { limit }
    }

    /// Reads `BALANCED_SIZE_GUARD`, falling back to the default bound.
    pub fn from_env() -> Self {
        std::env::var(SIZE_GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SizeGuard::new)
            .unwrap_or_default()
    }

    pub fn check(&self, what: &str, amount: u64) -> Result<()> {
        if amount > self.limit {
            Err(self.exceeded(what))
        } else {
            Ok(())
        }
    }

    pub fn exceeded(&self, what: &str) -> Error {
        Error::SizeGuard { what: what.to_string(), limit: self.limit }
    }
}

type ObjPred<'a> = Box<dyn Fn(Obj, Obj) -> bool + Sync + 'a>;
type MorPred<'a> = Box<dyn Fn(Mor, Mor) -> bool + Sync + 'a>;

#[derive(Clone, Copy)]
enum Var {
    Obj(Obj),
    Mor(Mor),
}

/// A constrained search over functors `dom → cod`.
pub struct FunctorSearch<'a> {
    dom: &'a Arc<FiniteCategory>,
    cod: &'a Arc<FiniteCategory>,
    obj_ok: Vec<ObjPred<'a>>,
    mor_ok: Vec<MorPred<'a>>,
    injective: bool,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a Arc<FiniteCategory>, cod: &'a Arc<FiniteCategory>) -> Self {
        FunctorSearch { dom, cod, obj_ok: Vec::new(), mor_ok: Vec::new(), injective: false }
    }

    pub fn filter_objects(mut self, f: impl Fn(Obj, Obj) -> bool + Sync + 'a) -> Self {
        self.obj_ok.push(Box::new(f));
        self
    }

    pub fn filter_morphisms(mut self, f: impl Fn(Mor, Mor) -> bool + Sync + 'a) -> Self {
        self.mor_ok.push(Box::new(f));
        self
    }

    /// Only functors `u` with `proj ∘ u = base`, where `proj: cod → B` and
    /// `base: dom → B` (maps over a base category).
    pub fn over(self, proj: &'a FunctorData, base: &'a FunctorData) -> Self {
        self.filter_objects(move |o, c| proj.obj(c) == base.obj(o))
            .filter_morphisms(move |m, c| proj.mor(c) == base.mor(m))
    }

    /// Only functors `u` with `u ∘ first = image`, where `first: S → dom`
    /// and `image: S → cod`. Returns `None` if no functor can satisfy it.
    pub fn extending(self, first: &FunctorData, image: &FunctorData) -> Option<Self> {
        let mut fixed_obj: Vec<Option<Obj>> = vec![None; self.dom.num_objects()];
        let mut fixed_mor: Vec<Option<Mor>> = vec![None; self.dom.num_morphisms()];
        for s in first.dom().objects() {
            let slot = &mut fixed_obj[first.obj(s)];
            match slot {
                Some(c) if *c != image.obj(s) => return None,
                _ => *slot = Some(image.obj(s)),
            }
        }
        for s in first.dom().morphisms() {
            let slot = &mut fixed_mor[first.mor(s)];
            match slot {
                Some(c) if *c != image.mor(s) => return None,
                _ => *slot = Some(image.mor(s)),
            }
        }
        Some(
            self.filter_objects(move |o, c| fixed_obj[o].is_none_or(|f| f == c))
                .filter_morphisms(move |m, c| fixed_mor[m].is_none_or(|f| f == c)),
        )
    }

    /// Only injective assignments (used for isomorphism search).
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    fn schedule(&self) -> (Vec<Var>, Vec<usize>) {
        let d = &**self.dom;
        let mut order = Vec::new();
        let mut pos = vec![usize::MAX; d.num_morphisms()];
        let mut assigned = vec![false; d.num_objects()];
        let mut scheduled = vec![false; d.num_morphisms()];
        for o in d.objects() {
            order.push(Var::Obj(o));
            assigned[o] = true;
            for m in d.proper_morphisms() {
                if !scheduled[m] && assigned[d.src(m)] && assigned[d.tgt(m)] {
                    scheduled[m] = true;
                    pos[m] = order.len();
                    order.push(Var::Mor(m));
                }
            }
        }
        (order, pos)
    }

    /// Calls `visit(obj_map, mor_map)` for every admissible functor until it
    /// returns `false`.
    pub fn for_each(
        &self,
        guard: &SizeGuard,
        mut visit: impl FnMut(&[Obj], &[Mor]) -> bool,
    ) -> Result<()> {
        let d = &**self.dom;
        let c = &**self.cod;
        let (order, pos) = self.schedule();
        // triple checks keyed by the schedule position completing them
        let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); order.len()];
        for (g, f, h) in d.proper_composites() {
            let mut at = pos[g].max(pos[f]);
            if !d.is_identity(h) {
                at = at.max(pos[h]);
            }
            checks[at].push((g, f, h));
        }
        let mut obj_map = vec![usize::MAX; d.num_objects()];
        let mut mor_map = vec![usize::MAX; d.num_morphisms()];
        let mut used_obj = vec![false; c.num_objects()];
        let mut used_mor = vec![false; c.num_morphisms()];
        let mut budget = guard.limit;
        let mut stop = false;

        #[allow(clippy::too_many_arguments)]
        fn go(
            s: &FunctorSearch<'_>,
            depth: usize,
            order: &[Var],
            checks: &[Vec<(Mor, Mor, Mor)>],
            obj_map: &mut Vec<Obj>,
            mor_map: &mut Vec<Mor>,
            used_obj: &mut Vec<bool>,
            used_mor: &mut Vec<bool>,
            budget: &mut u64,
            stop: &mut bool,
            visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
        ) -> Result<()> {
            let (d, c) = (&**s.dom, &**s.cod);
            if depth == order.len() {
                if !visit(obj_map, mor_map) {
                    *stop = true;
                }
                return Ok(());
            }
            match order[depth] {
                Var::Obj(o) => {
                    for cand in c.objects() {
                        if *budget == 0 {
                            return Err(Error::SizeGuard {
                                what: "enumerating functors".into(),
                                limit: 0,
                            });
                        }
                        *budget -= 1;
                        if s.injective && used_obj[cand] {
                            continue;
                        }
                        if !s.obj_ok.iter().all(|p| p(o, cand)) {
                            continue;
                        }
                        let id = d.identity(o);
                        let cid = c.identity(cand);
                        if !s.mor_ok.iter().all(|p| p(id, cid)) {
                            continue;
                        }
                        if s.injective && used_mor[cid] {
                            continue;
                        }
                        obj_map[o] = cand;
                        mor_map[id] = cid;
                        used_obj[cand] = true;
                        used_mor[cid] = true;
                        let r = go(s, depth + 1, order, checks, obj_map, mor_map, used_obj, used_mor, budget, stop, visit);
                        used_obj[cand] = false;
                        used_mor[cid] = false;
                        obj_map[o] = usize::MAX;
                        mor_map[id] = usize::MAX;
                        r?;
                        if *stop {
                            return Ok(());
                        }
                    }
                }
                Var::Mor(m) => {
                    let (a, b) = (obj_map[d.src(m)], obj_map[d.tgt(m)]);
                    let cands: Vec<Mor> = c.hom(a, b).collect();
                    for cand in cands {
                        if *budget == 0 {
                            return Err(Error::SizeGuard {
                                what: "enumerating functors".into(),
                                limit: 0,
                            });
                        }
                        *budget -= 1;
                        if s.injective && used_mor[cand] {
                            continue;
                        }
                        if !s.mor_ok.iter().all(|p| p(m, cand)) {
                            continue;
                        }
                        mor_map[m] = cand;
                        let consistent = checks[depth].iter().all(|&(g, f, h)| {
                            c.compose(mor_map[g], mor_map[f]) == mor_map[h]
                        });
                        if consistent {
                            used_mor[cand] = true;
                            let r = go(s, depth + 1, order, checks, obj_map, mor_map, used_obj, used_mor, budget, stop, visit);
                            used_mor[cand] = false;
                            mor_map[m] = usize::MAX;
                            r?;
                            if *stop {
                                return Ok(());
                            }
                        }
                        mor_map[m] = usize::MAX;
                    }
                }
            }
            Ok(())
        }

        // Identity images must be recorded before triple checks that involve
        // an identity composite; `go` assigns them with their object.
        go(
            self,
            0,
            &order,
            &checks,
            &mut obj_map,
            &mut mor_map,
            &mut used_obj,
            &mut used_mor,
            &mut budget,
            &mut stop,
            &mut visit,
        )
        .map_err(|e| match e {
            Error::SizeGuard { what, .. } => Error::SizeGuard { what, limit: guard.limit },
            other => other,
        })
    }

    pub fn collect(&self, guard: &SizeGuard) -> Result<Vec<FunctorData>> {
        let mut out = Vec::new();
        self.for_each(guard, |o, m| {
            out.push(FunctorData::new_unchecked(
                self.dom.clone(),
                self.cod.clone(),
                o.to_vec(),
                m.to_vec(),
            ));
            true
        })?;
        Ok(out)
    }

    pub fn first(&self, guard: &SizeGuard) -> Result<Option<FunctorData>> {
        let mut out = None;
        self.for_each(guard, |o, m| {
            out = Some(FunctorData::new_unchecked(
                self.dom.clone(),
                self.cod.clone(),
                o.to_vec(),
                m.to_vec(),
            ));
            false
        })?;
        Ok(out)
    }

    pub fn count(&self, guard: &SizeGuard) -> Result<usize> {
        let mut n = 0;
        self.for_each(guard, |_, _| {
            n += 1;
            true
        })?;
        Ok(n)
    }
}

fn profiles_compatible(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return false;
    }
    let mut pa: Vec<_> = a.objects().map(|o| a.object_profile(o)).collect();
    let mut pb: Vec<_> = b.objects().map(|o| b.object_profile(o)).collect();
    pa.sort_unstable();
    pb.sort_unstable();
    pa == pb
}

/// An isomorphism `a → b`, found by exhaustive backtracking with degree-profile
/// pruning.
pub fn find_isomorphism(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    guard: &SizeGuard,
) -> Result<Option<FunctorData>> {
    find_isomorphism_with(FunctorSearch::new(a, b), guard)
}

/// Isomorphism search restricted by the constraints already placed on `search`.
pub fn find_isomorphism_with(search: FunctorSearch<'_>, guard: &SizeGuard) -> Result<Option<FunctorData>> {
    let (a, b) = (search.dom, search.cod);
    if !profiles_compatible(a, b) {
        return Ok(None);
    }
    let search = search
        .injective()
        .filter_objects(move |o, c| a.object_profile(o) == b.object_profile(c));
    search.first(guard)
}

pub fn are_isomorphic(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>, guard: &SizeGuard) -> Result<bool> {
    Ok(find_isomorphism(a, b, guard)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;
    use crate::construct::opposite;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn two() -> Arc<FiniteCategory> {
        Arc::new(validate_category(&[s("0"), s("1")], &[(s("a"), s("0"), s("1"))], &[]).unwrap())
    }

    fn z2() -> Arc<FiniteCategory> {
        Arc::new(
            validate_category(&[s("o")], &[(s("g"), s("o"), s("o"))], &[(s("g"), s("g"), s("id:o"))])
                .unwrap(),
        )
    }

    #[test]
    fn functors_two_to_two() {
        // constant at 0, constant at 1, identity
        let x = two();
        let all = FunctorSearch::new(&x, &x).collect(&SizeGuard::default()).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|f| f.law_violations().is_empty()));
    }

    #[test]
    fn endofunctors_of_z2() {
        // trivial and identity homomorphisms
        let g = z2();
        assert_eq!(FunctorSearch::new(&g, &g).count(&SizeGuard::default()).unwrap(), 2);
    }

    #[test]
    fn two_is_self_dual() {
        let x = two();
        let op = Arc::new(opposite(&x));
        let iso = find_isomorphism(&x, &op, &SizeGuard::default()).unwrap().unwrap();
        assert_eq!(iso.obj_map(), &[1, 0]);
    }

    #[test]
    fn guard_fails_loudly() {
        let g = z2();
        let err = FunctorSearch::new(&g, &g).count(&SizeGuard::new(1)).unwrap_err();
        assert!(err.is_size_guard());
    }
}
