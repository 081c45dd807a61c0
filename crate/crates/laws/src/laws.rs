//! The law registry: one named check per proposition, corollary or named
//! equation, plus the two experiments.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use balanced_core::calculus::*;
use balanced_core::components::components_functor;
use balanced_core::construct::{comma, coslice, opposite, opposite_functor, product, product_over, pullback, slice};
use balanced_core::factorization::*;
use balanced_core::instances::{
    fincat_bfc, finset_epimono_bfc, lower_set_complement, make_codiscrete_bfc, make_discrete_bfc, pos_bfc,
    pos_is_dense, pos_upper_adjoint, FinCat, FinSet, LexBackend, MonotoneMap, PosetObject,
};
use balanced_core::samples::{arrow, discrete};
use balanced_core::search::{are_isomorphic, FunctorSearch};
use balanced_core::{pi0, Error, FiniteCategory, FunctorData, Morphism, Obj, Result, SizeGuard};

use crate::generate::{sample_functors, sample_monotone, shapes, Instance};
use crate::report::{Kind, Outcome};
use crate::subject::Subject;

/// Builds the subject of a law on one instance; all randomness lives here.
pub type Prepare = fn(&Instance, &[Instance], &mut ChaCha8Rng) -> Result<Subject>;
/// Evaluates a law on a subject; deterministic.
pub type CheckFn = fn(&Subject, &SizeGuard) -> Result<Outcome>;

#[derive(Clone, Copy)]
pub struct Law {
    pub id: &'static str,
    pub anchor: &'static str,
    pub kind: Kind,
    pub prepare: Prepare,
    pub check: CheckFn,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("kind", &self.kind).finish_non_exhaustive()
    }
}

const fn law(id: &'static str, anchor: &'static str, prepare: Prepare, check: CheckFn) -> Law {
    Law { id, anchor, kind: Kind::Law, prepare, check }
}

const fn experiment(id: &'static str, anchor: &'static str, prepare: Prepare, check: CheckFn) -> Law {
    Law { id, anchor, kind: Kind::Experiment, prepare, check }
}

/// Every law in report order.
pub fn registry() -> Vec<Law> {
    vec![
        law("cfs-soundness", "comprehensive factorization systems", prep_across, check_cfs),
        law("eq3a", "The ``reflection formula''", prep_into, check_eq3a),
        law("prop4", "The pullback of an initial (final) functor", prep_prop4, check_prop4),
        law("prop12", "λ∘e: p∘e→x is colimiting", prep_shapes, check_prop12),
        law("prop17", "An absolute colimiting cone is preserved", prep_cones_and_maps, check_prop17),
        law("eq18a", "arrow maps compose", prep_eq18a, check_eq18a),
        law("prop18b", "preserves the terminal object, sets, slices", prep_out, check_prop18b),
        law("prop22", "there is an adjunction f̄⊣ḡ", prep_adjunction, check_prop22),
        law("cor24", "underlying functor preserves adjunctible maps", prep_across, check_cor24),
        law("prop26", "preserves colimits", prep_prop26, check_prop26),
        law("prop34", "coequalized by any map C→S", prep_bare, check_prop34),
        law("cor36", "homotopic maps are coequalized", prep_cor36, check_cor36),
        law("eq40", "balanced cylinder of hom-sets", prep_bare, check_eq40),
        law("eq41b", "arrows as elements of hom-sets", prep_bare, check_eq41b),
        law("prop43", "homotopic iff there is an arrow", prep_bare, check_prop43),
        law("prop44a", "induces on the elements the composition", prep_bare, check_prop44a),
        law("cor48", "related by duality", prep_bare, check_cor48),
        law("eq49", "unity laws", prep_bare, check_eq49),
        law("cor53", "underlying functors related by duality", prep_out, check_cor53),
        law("prop55", "functorial with respect to enriched composition", prep_out, check_prop55),
        law("prop70", "pulling back the arrow interval", prep_dense, check_prop70),
        law("prop73", "if n∈M′/X and q∈C/X", prep_pairs, check_prop73),
        law("eq75", "the following ``inversion law''", prep_pairs, check_eq75),
        law("eq77", "the inversion law becomes the ``reflection formula''", prep_into, check_eq77),
        law("prop78", "then m^n∈M/X", prep_complement, check_prop78),
        law("bfc-axioms", "reciprocal stability law", prep_bfc, check_bfc),
        experiment("mu-assoc", "not been able to prove the associativity", prep_bare, check_mu_assoc),
        experiment("underlying-pullbacks", "does not know if this is true", prep_pairs, check_underlying_pullbacks),
    ]
}

pub fn find(id: &str) -> Option<Law> {
    registry().into_iter().find(|l| l.id == id)
}

/// Counts cases and keeps the first failure. Size-guard errors skip a case.
#[derive(Default)]
struct Tally {
    cases: usize,
    failed: usize,
    skipped: usize,
    first: Option<Value>,
    observation: Option<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    fn attempt<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_size_guard() => {
                self.skipped += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn observe(&mut self, v: Value) {
        self.observation = Some(v);
    }

    /// A tally whose every case was skipped reports the size guard.
    fn done(self) -> Result<Outcome> {
        if self.cases == 0 && self.skipped > 0 {
            return Err(Error::SizeGuard { what: format!("all {} cases", self.skipped), limit: 0 });
        }
        let mut observation = self.observation;
        if self.skipped > 0 {
            let mut o = observation.take().unwrap_or_else(|| json!({}));
            o["skipped_cases"] = json!(self.skipped);
            observation = Some(o);
        }
        Ok(Outcome {
            holds: self.failed == 0,
            cases: self.cases,
            observation,
            failure: self.first.map(|f| json!({ "failed_cases": self.failed, "first": f })),
        })
    }
}

fn name(x: &FiniteCategory, o: Obj) -> String {
    x.object_name(o).to_string()
}

fn partner<'a>(inst: &Instance, all: &'a [Instance], step: usize) -> &'a Instance {
    &all[(inst.index + step) % all.len()]
}

fn poset_companions(p: &Arc<PosetObject>) -> Vec<Arc<PosetObject>> {
    vec![
        Arc::new(PosetObject::chain(2)),
        Arc::new(PosetObject::chain(3)),
        Arc::new(PosetObject::antichain(2)),
        p.clone(),
    ]
}

/// Monotone maps from and to the instance poset.
fn monotone_across(inst: &Instance, rng: &mut ChaCha8Rng, k: usize) -> Vec<MonotoneMap> {
    let Some(p) = &inst.poset else { return Vec::new() };
    let mut out = Vec::new();
    for c in poset_companions(p) {
        out.extend(sample_monotone(p, &c, k, rng));
        out.extend(sample_monotone(&c, p, k, rng));
    }
    out
}

/// Maps into the instance from its partner and from each small shape.
fn into_x(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng, k: usize) -> Vec<FunctorData> {
    let x = &inst.category;
    let mut out = sample_functors(&partner(inst, all, 1).category, x, k, rng);
    for s in shapes() {
        out.extend(sample_functors(&s, x, 1, rng));
    }
    out
}

fn prep_bare(inst: &Instance, _: &[Instance], _: &mut ChaCha8Rng) -> Result<Subject> {
    Ok(Subject::bare(inst.category.clone(), inst.poset.clone()))
}

fn with_groups(inst: &Instance, groups: Vec<Vec<FunctorData>>) -> Subject {
    Subject { groups, ..Subject::bare(inst.category.clone(), inst.poset.clone()) }
}

fn prep_out(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    Ok(with_groups(inst, vec![sample_functors(&inst.category, y, 3, rng)]))
}

fn prep_across(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    let mut maps = sample_functors(&inst.category, y, 5, rng);
    maps.extend(sample_functors(y, &inst.category, 5, rng));
    Ok(with_groups(inst, vec![maps]))
}

fn prep_into(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    Ok(with_groups(inst, vec![into_x(inst, all, rng, 3)]))
}

fn prep_pairs(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let a = into_x(inst, all, rng, 2);
    let b = into_x(inst, all, rng, 2);
    Ok(with_groups(inst, vec![a, b]))
}

fn prep_shapes(inst: &Instance, _: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let ps = shapes().iter().flat_map(|s| sample_functors(s, &inst.category, 1, rng)).collect();
    Ok(with_groups(inst, vec![ps]))
}

fn prep_cones_and_maps(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let mut s = prep_shapes(inst, all, rng)?;
    s.groups.push(sample_functors(&inst.category, &partner(inst, all, 1).category, 3, rng));
    Ok(s)
}

// cfs-soundness ------------------------------------------------------------

/// An isomorphic copy with objects and morphisms listed in reverse, and the
/// isomorphism onto it.
fn permuted_copy(x: &Arc<FiniteCategory>) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    let (n, k) = (x.num_objects(), x.num_morphisms());
    let obj = |o: Obj| n - 1 - o;
    let mor = |m: usize| k - 1 - m;
    let objects = (0..n).map(|o| format!("~{}", x.object_name(obj(o)))).collect();
    let morphisms = (0..k)
        .map(|m| {
            let old = mor(m);
            let label = if x.is_identity(old) {
                format!("id:~{}", x.object_name(x.src(old)))
            } else {
                format!("~{}", x.morphism_name(old))
            };
            Morphism { name: label, src: obj(x.src(old)), tgt: obj(x.tgt(old)) }
        })
        .collect();
    let identities = (0..n).map(|o| mor(x.identity(obj(o)))).collect();
    let copy = Arc::new(FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
        mor(x.compose(mor(g), mor(f)))
    })?);
    let iso = FunctorData::new(x.clone(), copy.clone(), (0..n).map(obj).collect(), (0..k).map(mor).collect())?;
    Ok((copy, iso))
}

/// Both factorizations verify, are unique up to a unique isomorphism found
/// by search, and `E ∩ M` consists of isomorphisms.
fn check_cfs(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        for r in [factorize_left(f)?, factorize_right(f)?] {
            let system = format!("{:?}", r.system).to_lowercase();
            let sound = check_postconditions(f, &r);
            t.check(sound.is_ok(), || json!({ "map": i, "system": system, "error": sound.unwrap_err().to_string() }));
            let (copy, phi) = permuted_copy(&r.mid)?;
            let moved = FactorizationResult {
                e: phi.after(&r.e)?,
                mid: copy,
                m: r.m.after(&phi.inverse().expect("isomorphism"))?,
                system: r.system,
            };
            if let Some(found) = t.attempt(factorizations_isomorphic(&r, &moved, guard))? {
                t.check(found.as_ref() == Some(&phi), || json!({ "map": i, "system": system, "uniqueness": "no comparison isomorphism" }));
            }
            let again_m = factorize(&r.m, r.system)?;
            let again_e = factorize(&r.e, r.system)?;
            t.check(again_m.e.is_isomorphism() && again_e.m.is_isomorphism(), || {
                json!({ "map": i, "system": system, "closure": "refactoring a factor is not trivial" })
            });
        }
    }
    t.observe(json!({ "maps": s.group(0).len() }));
    t.done()
}

// eq3a / eq77 --------------------------------------------------------------

/// `|(↓q)x| = |π0(x\q)|` and `|(↑q)x| = |π0(q/x)|`.
fn check_eq3a(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (i, q) in s.group(0).iter().enumerate() {
        let (down, up) = (reflect_df(q), reflect_dof(q));
        for o in x.objects() {
            let point = FunctorData::point(x, o);
            let under = pi0(&comma(&point, q)?.apex).len();
            let over = pi0(&comma(q, &point)?.apex).len();
            t.check(down.fiber(o).len() == under, || {
                json!({ "map": i, "object": name(x, o), "fiber": down.fiber(o).len(), "components": under })
            });
            t.check(up.fiber(o).len() == over, || {
                json!({ "map": i, "object": name(x, o), "cofiber": up.fiber(o).len(), "components": over })
            });
        }
    }
    t.done()
}

/// `|(↓q)x| = |⊗(↑x, q)|` and `|(↑q)x| = |⊗(q, ↓x)|`.
fn check_eq77(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (i, q) in s.group(0).iter().enumerate() {
        let (down, up) = (reflect_df(q), reflect_dof(q));
        for o in x.objects() {
            let a = tensor(&coslice(x, o).proj_right, q)?.len();
            let b = tensor(q, &slice(x, o).proj_left)?.len();
            t.check(down.fiber(o).len() == a, || json!({ "map": i, "object": name(x, o), "fiber": down.fiber(o).len(), "tensor": a }));
            t.check(up.fiber(o).len() == b, || json!({ "map": i, "object": name(x, o), "cofiber": up.fiber(o).len(), "tensor": b }));
        }
    }
    t.done()
}

// prop4 --------------------------------------------------------------------

fn prep_prop4(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    let maps = sample_functors(&inst.category, y, 3, rng);
    let probes = shapes().iter().flat_map(|s| sample_functors(s, y, 2, rng)).collect();
    Ok(with_groups(inst, vec![maps, probes]))
}

/// Initial maps pulled back along discrete fibrations stay initial; final maps
/// pulled back along discrete opfibrations stay final.
fn check_prop4(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    let probes: Vec<&FunctorData> = s.group(0).iter().chain(s.group(1)).collect();
    for (i, f) in s.group(0).iter().enumerate() {
        let (left, right) = (factorize_left(f)?, factorize_right(f)?);
        for o in right.mid.objects() {
            let leg = pullback(&slice(&right.mid, o).proj_left, &right.e)?.left;
            t.check(is_initial(&leg).holds(), || json!({ "map": i, "square": "initial part along a slice projection", "object": name(&right.mid, o) }));
        }
        for o in left.mid.objects() {
            let leg = pullback(&coslice(&left.mid, o).proj_right, &left.e)?.left;
            t.check(is_final(&leg).holds(), || json!({ "map": i, "square": "final part along a coslice projection", "object": name(&left.mid, o) }));
        }
        for (j, g) in probes.iter().enumerate() {
            if is_initial(g).holds() {
                let leg = pullback(&left.m, g)?.left;
                t.check(is_initial(&leg).holds(), || json!({ "map": i, "probe": j, "square": "initial probe along the fibration part" }));
            }
            if is_final(g).holds() {
                let leg = pullback(&right.m, g)?.left;
                t.check(is_final(&leg).holds(), || json!({ "map": i, "probe": j, "square": "final probe along the opfibration part" }));
            }
        }
    }
    t.done()
}

// cones --------------------------------------------------------------------

/// Up to three final maps from small shapes into `p`.
fn finals_into(p: &Arc<FiniteCategory>, guard: &SizeGuard) -> Result<Vec<FunctorData>> {
    let mut out = Vec::new();
    for s in shapes() {
        for e in FunctorSearch::new(&s, p).collect(guard)? {
            if out.len() < 3 && is_final(&e).holds() {
                out.push(e);
            }
        }
    }
    Ok(out)
}

fn check_prop12(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, p) in s.group(0).iter().enumerate() {
        let Some(finals) = t.attempt(finals_into(p.dom(), guard))? else { continue };
        let Some(cones) = t.attempt(cones_under(p, guard))? else { continue };
        for (c_idx, c) in cones.iter().enumerate() {
            let Some(col) = t.attempt(is_colimiting(c, guard))? else { continue };
            for (j, e) in finals.iter().enumerate() {
                let r = restrict_cone(c, e)?;
                let Some(rcol) = t.attempt(is_colimiting(&r, guard))? else { continue };
                t.check(col.holds() == rcol.holds(), || {
                    json!({ "diagram": i, "cone": c_idx, "final": j, "colimiting": col.holds(), "restricted": rcol.holds() })
                });
            }
        }
    }
    t.done()
}

fn check_prop17(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    let mut absolute = 0;
    for (i, p) in s.group(0).iter().enumerate() {
        let Some(cones) = t.attempt(cones_under(p, guard))? else { continue };
        for (c_idx, c) in cones.iter().enumerate() {
            if !is_absolute(c) {
                continue;
            }
            let Some(col) = t.attempt(is_colimiting(c, guard))? else { continue };
            t.check(col.holds(), || json!({ "diagram": i, "cone": c_idx, "absolute": "final leg but not colimiting" }));
            absolute += 1;
            for (j, f) in s.group(1).iter().enumerate() {
                let image = image_cone(f, c)?;
                let Some(icol) = t.attempt(is_colimiting(&image, guard))? else { continue };
                t.check(icol.holds(), || json!({ "diagram": i, "cone": c_idx, "map": j, "image": "not colimiting" }));
            }
        }
    }
    t.observe(json!({ "absolute_cones": absolute }));
    t.done()
}

// eq18a --------------------------------------------------------------------

fn prep_eq18a(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    let z = &partner(inst, all, 2).category;
    let fs = sample_functors(&inst.category, y, 3, rng);
    let gs = sample_functors(y, z, 3, rng);
    Ok(with_groups(inst, vec![fs, gs]))
}

/// `e_{g,fx} ∘ e_{f,x} = e_{gf,x}`.
fn check_eq18a(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        for (j, g) in s.group(1).iter().enumerate() {
            let gf = g.after(f)?;
            for o in x.objects() {
                let a = slice(x, o);
                let b = slice(f.cod(), f.obj(o));
                let c = slice(g.cod(), gf.obj(o));
                let lhs = arrow_map_between(g, f.obj(o), &b, &c)?.after(&arrow_map_between(f, o, &a, &b)?)?;
                let rhs = arrow_map_between(&gf, o, &a, &c)?;
                t.check(lhs == rhs, || json!({ "f": i, "g": j, "object": name(x, o) }));
            }
        }
    }
    t.done()
}

// prop18b ------------------------------------------------------------------

/// The underlying construction keeps the terminal category and discrete
/// categories, commutes with slices, and sends discrete fibrations to
/// discrete fibrations.
fn check_prop18b(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    let one = Arc::new(FiniteCategory::terminal());
    let u1 = underlying_category(&one)?;
    t.check(are_isomorphic(&u1.category, &one, guard)?, || json!({ "terminal": "not preserved" }));
    let (_, to_components) = components_functor(x);
    let set = to_components.cod().clone();
    let uset = underlying_category(&set)?;
    t.check(uset.category.num_morphisms() == set.num_objects() && uset.category.num_objects() == set.num_objects(), || {
        json!({ "set": "underlying category of π0 is not discrete" })
    });
    let ux = underlying_category(x)?;
    for o in x.objects() {
        let of_slice = underlying_category(&slice(x, o).apex)?;
        let slice_of = slice(&ux.category, o);
        if let Some(iso) = t.attempt(are_isomorphic(&of_slice.category, &slice_of.apex, guard))? {
            t.check(iso, || json!({ "slice": name(x, o) }));
        }
    }
    for (i, f) in s.group(0).iter().enumerate() {
        let m = factorize_left(f)?.m;
        let um = underlying_functor(&m, &underlying_category(m.dom())?, &underlying_category(m.cod())?)?;
        t.check(is_discrete_fibration(&um).holds(), || json!({ "map": i, "fibration": "underlying map is not a discrete fibration" }));
    }
    t.done()
}

// adjunctions --------------------------------------------------------------

fn prep_adjunction(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let mut s = prep_across(inst, all, rng)?;
    s.monotone = monotone_across(inst, rng, 4);
    Ok(s)
}

/// Universal arrows for each codomain object of a functor, where they exist.
fn universal_objects(f: &FunctorData) -> Result<Option<Vec<Obj>>> {
    let mut out = Vec::new();
    for y in f.cod().objects() {
        match universal_arrow(f, y)? {
            Some(u) => out.push(u.object),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn thin_functor(m: &MonotoneMap) -> Result<FunctorData> {
    m.functor(&Arc::new(m.dom.category()), &Arc::new(m.cod.category()))
}

/// For every adjunctible map the transposition is a bijection natural in both
/// variables and the triangle identities hold; on posets the adjoint is the
/// Galois upper adjoint.
fn check_prop22(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    let (mut adjunctible, mut galois) = (0, 0);
    for (i, f) in s.group(0).iter().enumerate() {
        if adjunctible_failure(f)?.is_some() {
            continue;
        }
        adjunctible += 1;
        let r = right_adjoint_underlying(f, &underlying_category(f.dom())?, &underlying_category(f.cod())?);
        t.check(r.is_ok(), || json!({ "map": i, "error": r.as_ref().unwrap_err().to_string() }));
    }
    for (i, m) in s.monotone.iter().enumerate() {
        let f = thin_functor(m)?;
        let oracle = pos_upper_adjoint(m);
        let computed = universal_objects(&f)?;
        t.check(computed == oracle, || json!({ "monotone": i, "universal": computed, "upper_adjoint": oracle }));
        if let Some(g) = oracle {
            galois += 1;
            let r = right_adjoint_underlying(&f, &underlying_category(f.dom())?, &underlying_category(f.cod())?);
            match r {
                Ok(adj) => t.check(adj.right.obj_map() == g.as_slice(), || json!({ "monotone": i, "adjoint": adj.right.obj_map(), "upper_adjoint": g })),
                Err(e) => t.check(false, || json!({ "monotone": i, "error": e.to_string() })),
            }
        }
    }
    t.observe(json!({ "adjunctible": adjunctible, "galois_connections": galois }));
    t.done()
}

fn check_cor24(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        if adjunctible_failure(f)?.is_some() {
            continue;
        }
        let uf = underlying_functor(f, &underlying_category(f.dom())?, &underlying_category(f.cod())?)?;
        let failure = adjunctible_failure(&uf)?;
        t.check(failure.is_none(), || json!({ "map": i, "underlying": "not adjunctible" }));
    }
    t.done()
}

fn prep_prop26(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    let fs = sample_functors(&inst.category, y, 6, rng);
    let ps = shapes().iter().flat_map(|s| sample_functors(s, &inst.category, 1, rng)).collect();
    let mut s = with_groups(inst, vec![fs, ps]);
    if let Some(p) = &inst.poset {
        s.monotone = poset_companions(p).iter().flat_map(|c| sample_monotone(p, c, 4, rng)).collect();
    }
    Ok(s)
}

/// Adjunctible maps send colimiting cones to colimiting cones; monotone
/// lower adjoints preserve every existing sup.
fn check_prop26(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        if adjunctible_failure(f)?.is_some() {
            continue;
        }
        for (j, p) in s.group(1).iter().enumerate() {
            let Some(cones) = t.attempt(cones_under(p, guard))? else { continue };
            for (c_idx, c) in cones.iter().enumerate() {
                let Some(col) = t.attempt(is_colimiting(c, guard))? else { continue };
                if !col.holds() {
                    continue;
                }
                let Some(kept) = t.attempt(preserves_colimits_check(f, c, guard))? else { continue };
                t.check(kept, || json!({ "map": i, "diagram": j, "cone": c_idx }));
            }
        }
    }
    for (i, m) in s.monotone.iter().enumerate() {
        if pos_upper_adjoint(m).is_none() {
            continue;
        }
        let n = m.dom.len();
        for bits in 0..(1u32 << n) {
            let subset: Vec<bool> = (0..n).map(|a| bits >> a & 1 == 1).collect();
            let Some(sup) = m.dom.sup(&subset) else { continue };
            let mut image = vec![false; m.cod.len()];
            for a in (0..n).filter(|&a| subset[a]) {
                image[m.map[a]] = true;
            }
            let image_sup = m.cod.sup(&image);
            t.check(image_sup == Some(m.map[sup]), || json!({ "monotone": i, "subset": bits, "image_sup": image_sup }));
        }
    }
    t.done()
}

// cylinders and homotopy ---------------------------------------------------

fn pairs(x: &FiniteCategory) -> impl Iterator<Item = (Obj, Obj)> + '_ {
    x.objects().flat_map(move |a| x.objects().map(move |b| (a, b)))
}

/// Every map `[x,y] → S` into a discrete category coequalizes `i_xy`, `e_xy`.
fn check_prop34(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let two = Arc::new(discrete(2));
    let mut t = Tally::default();
    for (a, b) in pairs(x) {
        let h = hom_interval(x, a, b)?;
        t.check(h.c_functor.after(&h.i_xy)? == h.c_functor.after(&h.e_xy)?, || json!({ "pair": [name(x, a), name(x, b)], "map": "c_xy" }));
        let Some(maps) = t.attempt(FunctorSearch::new(&h.apex, &two).collect(guard))? else { continue };
        for (j, c) in maps.iter().enumerate() {
            t.check(c.after(&h.i_xy)? == c.after(&h.e_xy)?, || json!({ "pair": [name(x, a), name(x, b)], "map": j }));
        }
    }
    t.done()
}

fn prep_cor36(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let x = &inst.category;
    let y = &partner(inst, all, 1).category;
    let two = Arc::new(arrow());
    let cyl = product(x, &two);
    let id = FunctorData::identity(x);
    let ends = vec![
        cyl.pair(&id, &FunctorData::constant(x, &two, 0))?,
        cyl.pair(&id, &FunctorData::constant(x, &two, 1))?,
    ];
    let homotopies = sample_functors(&cyl.apex, y, 3, rng);
    Ok(with_groups(inst, vec![homotopies, ends]))
}

/// Maps homotopic through `X × 2` are coequalized by every map to a discrete
/// category, and so are points joined by an arrow.
fn check_cor36(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let two = Arc::new(discrete(2));
    let mut t = Tally::default();
    if let [i0, i1] = s.group(1) {
        for (j, h) in s.group(0).iter().enumerate() {
            let (f, g) = (h.after(i0)?, h.after(i1)?);
            let Some(maps) = t.attempt(FunctorSearch::new(h.cod(), &two).collect(guard))? else { continue };
            for (k, c) in maps.iter().enumerate() {
                t.check(c.after(&f)? == c.after(&g)?, || json!({ "homotopy": j, "map": k }));
            }
        }
    }
    if let Some(maps) = t.attempt(FunctorSearch::new(x, &two).collect(guard))? {
        for (a, b) in pairs(x).filter(|&(a, b)| x.hom_count(a, b) > 0) {
            for (k, c) in maps.iter().enumerate() {
                t.check(c.obj(a) == c.obj(b), || json!({ "points": [name(x, a), name(x, b)], "map": k }));
            }
        }
    }
    t.done()
}

fn check_eq40(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (a, b) in pairs(x) {
        let v = cylinder_violations(&hom_interval(x, a, b)?);
        t.check(v.is_empty(), || json!({ "pair": [name(x, a), name(x, b)], "violations": v }));
    }
    t.done()
}

fn check_eq41b(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (a, b) in pairs(x) {
        let h = hom_interval(x, a, b)?;
        let v = arrow_bijection_violations(&h);
        t.check(v.is_empty(), || json!({ "pair": [name(x, a), name(x, b)], "violations": v }));
        t.check(h.len() == x.hom_count(a, b), || json!({ "pair": [name(x, a), name(x, b)], "elements": h.len(), "arrows": x.hom_count(a, b) }));
    }
    t.done()
}

/// Homotopy of points agrees with the existence of an arrow, and each arrow
/// interval is a homotopy whose unique arrow maps to the element's arrow.
fn check_prop43(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    for (a, b) in pairs(x) {
        let h = hom_interval(x, a, b)?;
        let linked = homotopic(x, a, b)?;
        t.check(linked == (x.hom_count(a, b) > 0), || json!({ "pair": [name(x, a), name(x, b)], "homotopic": linked }));
        for k in 0..h.len() {
            let iv = arrow_interval(&h, k)?;
            let path = h.coslice.proj_right.after(&h.p_xy)?.after(&iv.inclusion)?;
            let arrows: Vec<_> = iv.category.hom(iv.initial, iv.terminal).collect();
            let ok = path.obj(iv.initial) == a
                && path.obj(iv.terminal) == b
                && arrows.len() == 1
                && path.mor(arrows[0]) == h.morphism(k);
            t.check(ok, || json!({ "pair": [name(x, a), name(x, b)], "element": h.element_name(k) }));
        }
    }
    t.done()
}

// enriched structure -------------------------------------------------------

fn check_prop44a(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let es = enriched_structure(x)?;
    let mut t = Tally::default();
    for a in x.objects() {
        t.check(es.homs[a][a].morphism(es.unit[a]) == x.identity(a), || json!({ "unit": name(x, a) }));
        for b in x.objects() {
            for c in x.objects() {
                for sx in 0..es.homs[a][b].len() {
                    for tx in 0..es.homs[b][c].len() {
                        let composed = es.homs[a][c].morphism(es.compose(a, b, c, sx, tx));
                        let direct = x.compose(es.homs[b][c].morphism(tx), es.homs[a][b].morphism(sx));
                        t.check(composed == direct, || {
                            json!({
                                "objects": [name(x, a), name(x, b), name(x, c)],
                                "mu": x.morphism_name(composed),
                                "composite": x.morphism_name(direct),
                            })
                        });
                    }
                }
            }
        }
    }
    t.done()
}

fn check_eq49(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    match enriched_structure(x) {
        Ok(es) => {
            let v = es.unit_violations();
            let elements: usize = pairs(x).map(|(a, b)| es.homs[a][b].len()).sum();
            t.cases += elements.saturating_sub(1);
            t.check(v.is_empty(), || json!({ "violations": v }));
        }
        Err(e) => t.check(false, || json!({ "error": e.to_string() })),
    }
    t.done()
}

/// The duality map `X̄′ → X̄^op`, listed arrow by arrow.
fn check_cor48(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    let es = enriched_structure(x)?;
    let ux = underlying_category(x)?;
    let ux_dual = underlying_category(&Arc::new(opposite(x)))?;
    match duality_isomorphism(&es, &ux, &ux_dual) {
        Ok((target, iso)) => {
            let identity_on_objects = iso.obj_map().iter().enumerate().all(|(i, &o)| i == o);
            t.check(iso.is_isomorphism() && identity_on_objects, || json!({ "duality": "not an isomorphism" }));
            let table: Vec<[String; 2]> = ux_dual
                .category
                .proper_morphisms()
                .map(|m| [ux_dual.category.morphism_name(m).to_string(), target.morphism_name(iso.mor(m)).to_string()])
                .collect();
            t.observe(json!({ "isomorphism": table }));
        }
        Err(e) => t.check(false, || json!({ "error": e.to_string() })),
    }
    t.done()
}

/// `iso_Y ∘ f̄′ = (f̄)^op ∘ iso_X`.
fn check_cor53(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        let (x, y) = (f.dom(), f.cod());
        let (xop, yop) = (Arc::new(opposite(x)), Arc::new(opposite(y)));
        let (ux, uy) = (underlying_category(x)?, underlying_category(y)?);
        let (uxd, uyd) = (underlying_category(&xop)?, underlying_category(&yop)?);
        let (_, iso_x) = duality_isomorphism(&enriched_structure(x)?, &ux, &uxd)?;
        let (_, iso_y) = duality_isomorphism(&enriched_structure(y)?, &uy, &uyd)?;
        let uf = underlying_functor(f, &ux, &uy)?;
        let ufd = underlying_functor(&opposite_functor(f), &uxd, &uyd)?;
        let lhs = iso_y.after(&ufd)?;
        let rhs = opposite_functor(&uf).after(&iso_x)?;
        t.check(lhs == rhs, || json!({ "map": i }));
    }
    t.done()
}

/// `f_{x,z}(μ(s,t)) = μ(f_{x,y}(s), f_{y,z}(t))`, units go to units, and
/// the action agrees with `f` on arrows.
fn check_prop55(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let ex = enriched_structure(x)?;
    let mut t = Tally::default();
    for (i, f) in s.group(0).iter().enumerate() {
        let ey = enriched_structure(f.cod())?;
        let n = x.num_objects();
        let mut act = vec![vec![Vec::new(); n]; n];
        for (a, b) in pairs(x) {
            act[a][b] = hom_action(f, &ex, &ey, a, b)?;
            for k in 0..ex.homs[a][b].len() {
                let image = ey.homs[f.obj(a)][f.obj(b)].morphism(act[a][b][k]);
                t.check(image == f.mor(ex.homs[a][b].morphism(k)), || json!({ "map": i, "pair": [name(x, a), name(x, b)], "element": k }));
            }
        }
        for a in x.objects() {
            t.check(act[a][a][ex.unit[a]] == ey.unit[f.obj(a)], || json!({ "map": i, "unit": name(x, a) }));
            for b in x.objects() {
                for c in x.objects() {
                    for sx in 0..ex.homs[a][b].len() {
                        for tx in 0..ex.homs[b][c].len() {
                            let lhs = act[a][c][ex.compose(a, b, c, sx, tx)];
                            let rhs = ey.compose(f.obj(a), f.obj(b), f.obj(c), act[a][b][sx], act[b][c][tx]);
                            t.check(lhs == rhs, || json!({ "map": i, "objects": [name(x, a), name(x, b), name(x, c)], "s": sx, "t": tx }));
                        }
                    }
                }
            }
        }
    }
    t.done()
}

// density ------------------------------------------------------------------

fn prep_dense(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &partner(inst, all, 1).category;
    let mut maps = sample_functors(&inst.category, y, 3, rng);
    maps.extend(sample_functors(y, &inst.category, 2, rng));
    maps.extend(shapes().iter().flat_map(|s| sample_functors(s, &inst.category, 1, rng)));
    let mut s = with_groups(inst, vec![maps]);
    s.monotone = monotone_across(inst, rng, 2);
    Ok(s)
}

/// `f` dense iff every `α//f` is connected; on posets, dense iff surjective.
fn check_prop70(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    let (mut dense, mut sparse) = (0, 0);
    for (i, f) in s.group(0).iter().enumerate() {
        let y = f.cod();
        let is = is_dense(f)?.holds();
        let mut connected = true;
        for (a, b) in pairs(y) {
            let h = hom_interval(y, a, b)?;
            for k in 0..h.len() {
                connected &= alpha_pullback(f, &h, k)?.connected;
            }
        }
        if is {
            dense += 1;
        } else {
            sparse += 1;
        }
        t.check(is == connected, || json!({ "map": i, "dense": is, "all_connected": connected }));
    }
    // Components in Pos are truth values, so density there is weaker than
    // density of the thin functor in FinCat.
    let mut pos_only = 0;
    for (i, m) in s.monotone.iter().enumerate() {
        let surjective = (0..m.cod.len()).all(|y| m.map.contains(&y));
        let thin = is_dense(&thin_functor(m)?)?.holds();
        t.check(pos_is_dense(m) == surjective && (!thin || surjective), || {
            json!({ "monotone": i, "surjective": surjective, "pos_dense": pos_is_dense(m), "thin_dense": thin })
        });
        pos_only += usize::from(surjective && !thin);
    }
    t.observe(json!({ "dense": dense, "not_dense": sparse, "pos_dense_only": pos_only }));
    t.done()
}

// tensors ------------------------------------------------------------------

/// `↓(n × q) ≅ ↓(n × ↓q)` for a discrete opfibration `n`, via the final
/// comparison `n × e_q`; dually `↑(m × p) ≅ ↑(m × ↑p)` for a discrete
/// fibration `m`.
fn check_prop73(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, g) in s.group(0).iter().enumerate() {
        let n = factorize_right(g)?.m;
        let m = factorize_left(g)?.m;
        for (j, q) in s.group(1).iter().enumerate() {
            let lq = factorize_left(q)?;
            let a = product_over(&n, q)?;
            let b = product_over(&n, &lq.m)?;
            let u = b.pullback.pair(&a.pullback.left, &lq.e.after(&a.pullback.right)?)?;
            let same = reflect_df(&a.structure).fiber_sizes() == reflect_df(&b.structure).fiber_sizes();
            t.check(same && is_final(&u).holds(), || json!({ "opfibration": i, "map": j, "fibers_agree": same }));

            let rq = factorize_right(q)?;
            let a = product_over(&m, q)?;
            let b = product_over(&m, &rq.m)?;
            let u = b.pullback.pair(&a.pullback.left, &rq.e.after(&a.pullback.right)?)?;
            let same = reflect_dof(&a.structure).fiber_sizes() == reflect_dof(&b.structure).fiber_sizes();
            t.check(same && is_initial(&u).holds(), || json!({ "fibration": i, "map": j, "fibers_agree": same }));
        }
    }
    t.done()
}

/// `|⊗(↑p, q)| = |⊗(↑p, ↓q)| = |⊗(p, ↓q)|`.
fn check_eq75(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, p) in s.group(0).iter().enumerate() {
        let up = factorize_right(p)?.m;
        for (j, q) in s.group(1).iter().enumerate() {
            let down = factorize_left(q)?.m;
            let sizes = [tensor(&up, q)?.len(), tensor(&up, &down)?.len(), tensor(p, &down)?.len()];
            t.check(sizes[0] == sizes[1] && sizes[1] == sizes[2], || json!({ "p": i, "q": j, "sizes": sizes }));
        }
    }
    t.done()
}

fn prep_complement(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let x = &inst.category;
    let fibrations = shapes().iter().skip(1).flat_map(|s| sample_functors(s, x, 1, rng)).collect();
    let probes = into_x(inst, all, rng, 1);
    Ok(with_groups(inst, vec![fibrations, probes]))
}

/// Largest complement `¬m(S)`, counted in elements, searched for maps.
const COMPLEMENT_BOUND: usize = 1024;

/// Maps `q → ¬m(S)` over `X` biject with functions `q ⊗ m → S` for
/// `|S| ≤ 3`; in a poset `¬L(∅)` is the complementary upper set.
fn check_prop78(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let mut t = Tally::default();
    for (i, g) in s.group(0).iter().enumerate() {
        let m = reflect_df(g);
        for (j, q) in s.group(1).iter().enumerate() {
            for k in 0..=3usize {
                let size: usize = m.fiber_sizes().iter().map(|&n| k.saturating_pow(n as u32)).sum();
                if size > COMPLEMENT_BOUND {
                    t.skipped += 1;
                    continue;
                }
                let set: Vec<String> = (0..k).map(|v| format!("s{v}")).collect();
                let Some(c) = t.attempt(complement_adjunction(&m, &set, q, guard))? else { continue };
                t.check(c.holds(), || json!({ "fibration": i, "map": j, "set_size": k, "witness": c.witness() }));
            }
        }
    }
    if let Some(p) = &s.poset {
        let n = p.len();
        for bits in 0..(1u32 << n) {
            let lower: Vec<bool> = (0..n).map(|a| bits >> a & 1 == 1).collect();
            if !p.is_lower_set(&lower) {
                continue;
            }
            let c = lower_set_complement(p, &lower)?;
            let expected: Vec<bool> = lower.iter().map(|&b| !b).collect();
            t.check(c == expected && p.is_upper_set(&c), || json!({ "lower_set": bits, "complement": c }));
        }
    }
    t.done()
}

// instances ----------------------------------------------------------------

/// Work bound for orthogonality, which visits every filler of every square.
const BFC_GUARD: u64 = 2_000_000;

fn prep_bfc(inst: &Instance, _: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let x = &inst.category;
    let (one, two) = (Arc::new(FiniteCategory::terminal()), Arc::new(arrow()));
    let mut maps = vec![FunctorData::to_terminal(x).with_codomain(one.clone())];
    maps.extend(sample_functors(&one, x, 2, rng));
    maps.extend(sample_functors(&two, x, 2, rng));
    maps.extend(sample_functors(x, &two, 1, rng));
    let mut s = with_groups(inst, vec![maps]);
    if let Some(p) = &inst.poset {
        let c = Arc::new(PosetObject::chain(2));
        s.monotone = sample_monotone(p, &c, 2, rng);
        s.monotone.extend(sample_monotone(&c, p, 2, rng));
    }
    Ok(s)
}

/// The structural invariants of one backend as one case, never skipped, and
/// orthogonality as a second case, skipped past the work bound.
fn backend_case<B: LexBackend>(
    t: &mut Tally,
    inst: &balanced_core::instances::BfcInstance<B>,
    objects: &[B::Object],
    maps: &[B::Map],
    guard: &SizeGuard,
) -> Result<()> {
    let v = inst.structural_violations(objects, maps)?;
    t.check(v.is_empty(), || json!({ "backend": inst.name, "violations": v }));
    if let Some(v) = t.attempt(inst.orthogonality_violations(maps, guard))? {
        t.check(v.is_empty(), || json!({ "backend": inst.name, "violations": v }));
    }
    Ok(())
}

/// Factorization laws, orthogonality, reciprocal stability and `M/1 = M′/1`
/// for the FinCat, Pos, FinSet, discrete and codiscrete backends on samples
/// drawn from the instance.
fn check_bfc(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let mut t = Tally::default();
    // Orthogonality enumerates whole hom-sets of maps per square.
    let guard = &SizeGuard::new(guard.limit.min(BFC_GUARD));
    let objects = vec![x.clone(), Arc::new(FiniteCategory::terminal()), Arc::new(arrow())];
    let maps = s.group(0);
    backend_case(&mut t, &fincat_bfc(), &objects, maps, guard)?;
    backend_case(&mut t, &make_discrete_bfc(FinCat), &objects, maps, guard)?;
    backend_case(&mut t, &make_codiscrete_bfc(FinCat), &objects, maps, guard)?;
    if let Some(p) = &s.poset {
        let posets = vec![p.clone(), Arc::new(PosetObject::chain(1)), Arc::new(PosetObject::chain(2))];
        backend_case(&mut t, &pos_bfc(), &posets, &s.monotone, guard)?;
    }
    let components = pi0(x).len();
    let sizes = vec![0, 1, 2, x.num_objects(), components];
    let small = components.min(3);
    let mut finmaps = Vec::new();
    for (a, b) in [(small, 2), (2, small), (1, small)] {
        finmaps.extend(FinSet.maps(&a, &b, guard)?);
    }
    backend_case(&mut t, &finset_epimono_bfc(), &sizes, &finmaps, guard)?;
    backend_case(&mut t, &make_discrete_bfc(FinSet), &sizes, &finmaps, guard)?;
    backend_case(&mut t, &make_codiscrete_bfc(FinSet), &sizes, &finmaps, guard)?;
    t.done()
}

// experiments --------------------------------------------------------------

fn check_mu_assoc(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let es = enriched_structure(x)?;
    let failures = es.associativity_failures();
    let cases = es.associativity_cases();
    let mut t = Tally { cases: cases.saturating_sub(failures.len()), ..Tally::default() };
    for f in &failures {
        t.check(false, || {
            json!({
                "objects": [name(x, f[0]), name(x, f[1]), name(x, f[2]), name(x, f[3])],
                "elements": [f[4], f[5], f[6]],
            })
        });
    }
    t.observe(json!({ "triples": cases, "non_associative": failures.len() }));
    t.done()
}

/// Whether the underlying category of a pullback is the pullback of the
/// underlying maps, up to isomorphism.
fn check_underlying_pullbacks(s: &Subject, guard: &SizeGuard) -> Result<Outcome> {
    let x = &s.category;
    let ux = underlying_category(x)?;
    let mut t = Tally::default();
    let mut rows = Vec::new();
    for (i, f) in s.group(0).iter().enumerate() {
        for (j, g) in s.group(1).iter().enumerate() {
            let pb = pullback(f, g)?;
            let of_pullback = underlying_category(&pb.apex)?;
            let uf = underlying_functor(f, &underlying_category(f.dom())?, &ux)?;
            let ug = underlying_functor(g, &underlying_category(g.dom())?, &ux)?;
            let pullback_of = pullback(&uf, &ug)?;
            let Some(iso) = t.attempt(are_isomorphic(&of_pullback.category, &pullback_of.apex, guard))? else { continue };
            rows.push(json!([i, j, pb.apex.num_objects(), pb.apex.num_morphisms(), iso]));
            t.check(iso, || json!({ "f": i, "g": j }));
        }
    }
    t.observe(json!({ "columns": ["f", "g", "objects", "morphisms", "preserved"], "rows": rows }));
    t.done()
}
