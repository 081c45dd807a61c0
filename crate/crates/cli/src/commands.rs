//! Commands on finite categories and their set-valued functors.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use balanced_core::calculus::*;
use balanced_core::components::components_functor;
use balanced_core::construct::{comma, coslice, opposite, product_over, slice, CommaResult};
use balanced_core::factorization::*;
use balanced_core::instances::{is_coinitial, is_cofinal, is_lower_set_inclusion, is_upper_set_inclusion, pos_is_dense, pos_upper_adjoint, MonotoneMap};
use balanced_core::io::*;
use balanced_core::{pi0, Error, FiniteCategory, FunctorData, Mor, Obj, Result, SizeGuard};

use crate::output::{Bundle, Sink};
use crate::{Exit, Predicate, System};

fn object(x: &FiniteCategory, name: &str) -> Result<Obj> {
    x.object_index(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
}

fn morphism(x: &FiniteCategory, name: &str) -> Result<Mor> {
    x.morphism_index(name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
}

fn comma_bundle(c: &CommaResult) -> Bundle {
    Bundle::new()
        .with("apex", category_to_file(&c.apex))
        .with("left", functor_to_file(&c.proj_left))
        .with("right", functor_to_file(&c.proj_right))
}

pub fn validate(path: &Path, kind: crate::FileKind, sink: &Sink) -> Result<Exit> {
    use crate::FileKind as K;
    let summary = match kind {
        K::Category => {
            let x = load_category(path)?;
            json!({ "objects": x.num_objects(), "morphisms": x.num_morphisms() })
        }
        K::Functor => {
            let f = load_functor(path)?;
            json!({ "dom_objects": f.dom().num_objects(), "cod_objects": f.cod().num_objects() })
        }
        K::Presheaf => json!({ "fiber_sizes": load_presheaf(path)?.fiber_sizes() }),
        K::Copresheaf => json!({ "fiber_sizes": load_copresheaf(path)?.fiber_sizes() }),
        K::Poset => {
            let p = load_poset(path)?;
            json!({ "elements": p.len(), "strict_pairs": p.strict_pairs().len() })
        }
        K::Monotone => {
            let m = load_monotone(path)?;
            json!({ "dom_elements": m.dom.len(), "cod_elements": m.cod.len() })
        }
        K::Finmap => {
            let f = load_finmap(path)?;
            json!({ "dom": f.dom, "cod": f.cod })
        }
        K::Graph => {
            let g = load_graph(path)?;
            json!({ "nodes": g.nodes().len(), "edges": g.num_edges() })
        }
    };
    sink.emit(&json!({ "kind": kind.name(), "valid": true, "summary": summary }))?;
    Ok(Exit::Success)
}

/// Components with their classes and the reflection `X → π0 X`.
pub fn pi0_fincat(x: &Arc<FiniteCategory>, sink: &Sink) -> Result<Exit> {
    let q = pi0(x);
    let classes: Vec<Vec<&str>> = (0..q.len())
        .map(|c| x.objects().filter(|&o| q.class_of[o] == c).map(|o| x.object_name(o)).collect())
        .collect();
    let (_, reflection) = components_functor(x);
    sink.emit_bundle(
        Bundle::new()
            .with("classes", classes)
            .with("components", category_to_file(reflection.cod()))
            .with("reflection", functor_to_file(&reflection)),
    )?;
    Ok(Exit::Success)
}

pub fn opposite_cmd(path: &Path, sink: &Sink) -> Result<Exit> {
    sink.emit(&category_to_file(&opposite(&*load_category(path)?)))?;
    Ok(Exit::Success)
}

pub fn slice_cmd(path: &Path, at: &str, under: bool, sink: &Sink) -> Result<Exit> {
    let x = load_category(path)?;
    let o = object(&x, at)?;
    let c = if under { coslice(&x, o) } else { slice(&x, o) };
    let projection = if under { &c.proj_right } else { &c.proj_left };
    sink.emit_bundle(Bundle::new().with("apex", category_to_file(&c.apex)).with("projection", functor_to_file(projection)))?;
    Ok(Exit::Success)
}

pub fn comma_cmd(p: &Path, q: &Path, sink: &Sink) -> Result<Exit> {
    sink.emit_bundle(comma_bundle(&comma(&load_functor(p)?, &load_functor(q)?)?))?;
    Ok(Exit::Success)
}

pub fn product_over_cmd(p: &Path, q: &Path, sink: &Sink) -> Result<Exit> {
    let o = product_over(&load_functor(p)?, &load_functor(q)?)?;
    sink.emit_bundle(
        Bundle::new()
            .with("apex", category_to_file(&o.pullback.apex))
            .with("left", functor_to_file(&o.pullback.left))
            .with("right", functor_to_file(&o.pullback.right))
            .with("structure", functor_to_file(&o.structure)),
    )?;
    Ok(Exit::Success)
}

pub fn reflect(path: &Path, system: System, sink: &Sink) -> Result<Exit> {
    let q = load_functor(path)?;
    match system {
        System::Left => sink.emit(&presheaf_to_file(&reflect_df(&q)))?,
        System::Right => sink.emit(&copresheaf_to_file(&reflect_dof(&q)))?,
    }
    Ok(Exit::Success)
}

fn verdict<W: serde::Serialize>(predicate: Predicate, c: &Check<W>, sink: &Sink) -> Result<Exit> {
    sink.emit(&json!({ "predicate": predicate.name(), "holds": c.holds(), "witness": c.witness() }))?;
    Ok(Exit::from_bool(c.holds()))
}

fn named(x: &FiniteCategory, o: Option<Obj>) -> Option<&str> {
    o.map(|o| x.object_name(o))
}

pub fn check_fincat(predicate: Predicate, path: &Path, at: Option<&str>, sink: &Sink) -> Result<Exit> {
    use Predicate as P;
    if matches!(predicate, P::Codiscrete | P::Groupoidal) {
        let x = load_category(path)?;
        let holds = if predicate == P::Codiscrete { is_codiscrete(&x) } else { is_groupoidal(&x) };
        sink.emit(&json!({ "predicate": predicate.name(), "holds": holds }))?;
        return Ok(Exit::from_bool(holds));
    }
    let f = load_functor(path)?;
    match predicate {
        P::Final => verdict(predicate, &is_final(&f), sink),
        P::Initial => verdict(predicate, &is_initial(&f), sink),
        P::Df => verdict(predicate, &is_discrete_fibration(&f), sink),
        P::Dof => verdict(predicate, &is_discrete_opfibration(&f), sink),
        P::Dense => verdict(predicate, &is_dense(&f)?, sink),
        P::Adjunctible => {
            let failure = adjunctible_failure(&f)?;
            let witness = named(f.cod(), failure).map(|y| json!({ "object": y, "reason": "no terminal object in f/y" }));
            sink.emit(&json!({ "predicate": predicate.name(), "holds": failure.is_none(), "witness": witness }))?;
            Ok(Exit::from_bool(failure.is_none()))
        }
        P::FullyFaithful => {
            let objects: Vec<Obj> = match at {
                Some(name) => vec![object(f.dom(), name)?],
                None => f.dom().objects().collect(),
            };
            let mut failure = None;
            for x in objects {
                if !is_fully_faithful_at(&f, x)? {
                    failure = Some(x);
                    break;
                }
            }
            let witness = named(f.dom(), failure).map(|x| json!({ "object": x }));
            sink.emit(&json!({ "predicate": predicate.name(), "holds": failure.is_none(), "witness": witness }))?;
            Ok(Exit::from_bool(failure.is_none()))
        }
        P::Codiscrete | P::Groupoidal => unreachable!("handled above"),
    }
}

pub fn check_pos(predicate: Predicate, path: &Path, sink: &Sink) -> Result<Exit> {
    use Predicate as P;
    let m: MonotoneMap = load_monotone(path)?;
    let holds = match predicate {
        P::Final => is_cofinal(&m),
        P::Initial => is_coinitial(&m),
        P::Df => is_lower_set_inclusion(&m),
        P::Dof => is_upper_set_inclusion(&m),
        P::Dense => pos_is_dense(&m),
        P::Adjunctible => pos_upper_adjoint(&m).is_some(),
        other => return Err(Error::Precondition(format!("check {} is not available for the pos instance", other.name()))),
    };
    sink.emit(&json!({ "instance": "pos", "predicate": predicate.name(), "holds": holds }))?;
    Ok(Exit::from_bool(holds))
}

pub fn homset(path: &Path, from: &str, to: &str, sink: &Sink) -> Result<Exit> {
    let x = load_category(path)?;
    let h = hom_set(&x, object(&x, from)?, object(&x, to)?)?;
    sink.emit(&json!({ "from": from, "to": to, "size": h.elements.len(), "elements": h.elements }))?;
    Ok(Exit::Success)
}

fn element_of(x: &FiniteCategory, h: &HomInterval, arrow: &str) -> Result<usize> {
    let m = morphism(x, arrow)?;
    (0..h.len())
        .find(|&k| h.morphism(k) == m)
        .ok_or_else(|| Error::Precondition(format!("`{arrow}` is not an arrow {} → {}", x.object_name(h.x), x.object_name(h.y))))
}

pub fn interval(path: &Path, from: &str, to: &str, arrow: Option<&str>, sink: &Sink) -> Result<Exit> {
    let x = load_category(path)?;
    let h = hom_interval(&x, object(&x, from)?, object(&x, to)?)?;
    let bundle = match arrow {
        None => Bundle::new()
            .with("apex", category_to_file(&h.apex))
            .with("to_coslice", functor_to_file(&h.p_xy))
            .with("to_slice", functor_to_file(&h.q_xy))
            .with("components", category_to_file(&h.components))
            .with("reflection", functor_to_file(&h.c_functor))
            .with("initial_section", functor_to_file(&h.i_xy))
            .with("final_section", functor_to_file(&h.e_xy)),
        Some(a) => {
            let iv = arrow_interval(&h, element_of(&x, &h, a)?)?;
            Bundle::new()
                .with("interval", category_to_file(&iv.category))
                .with("inclusion", functor_to_file(&iv.inclusion))
                .with(
                    "ends",
                    json!({
                        "initial": iv.category.object_name(iv.initial),
                        "terminal": iv.category.object_name(iv.terminal),
                    }),
                )
        }
    };
    sink.emit_bundle(bundle)?;
    Ok(Exit::Success)
}

/// `μ(s, t)` for one pair of arrows, or the whole table for `x, y, z`.
pub fn compose_enriched(path: &Path, objects: &[String], s: Option<&str>, t: Option<&str>, sink: &Sink) -> Result<Exit> {
    let x = load_category(path)?;
    let [a, b, c] = objects else {
        return Err(Error::Precondition("expected three objects".into()));
    };
    let (a, b, c) = (object(&x, a)?, object(&x, b)?, object(&x, c)?);
    let es = enriched_structure(&x)?;
    let (hab, hbc, hac) = (&es.homs[a][b], &es.homs[b][c], &es.homs[a][c]);
    let row = |i: usize, j: usize| {
        let k = es.compose(a, b, c, i, j);
        json!({
            "s": x.morphism_name(hab.morphism(i)),
            "t": x.morphism_name(hbc.morphism(j)),
            "mu": hac.element_name(k),
            "morphism": x.morphism_name(hac.morphism(k)),
        })
    };
    let out = match (s, t) {
        (Some(s), Some(t)) => row(element_of(&x, hab, s)?, element_of(&x, hbc, t)?),
        (None, None) => Value::Array((0..hab.len()).flat_map(|i| (0..hbc.len()).map(move |j| (i, j))).map(|(i, j)| row(i, j)).collect()),
        _ => return Err(Error::Precondition("give both --s and --t, or neither".into())),
    };
    sink.emit(&out)?;
    Ok(Exit::Success)
}

pub fn arrow_map_cmd(path: &Path, at: &str, sink: &Sink) -> Result<Exit> {
    let f = load_functor(path)?;
    sink.emit(&functor_to_file(&arrow_map(&f, object(f.dom(), at)?)?))?;
    Ok(Exit::Success)
}

pub fn underlying(path: &Path, functor: bool, sink: &Sink) -> Result<Exit> {
    if functor {
        let f = load_functor(path)?;
        let uf = underlying_functor(&f, &underlying_category(f.dom())?, &underlying_category(f.cod())?)?;
        sink.emit(&functor_to_file(&uf))?;
    } else {
        sink.emit(&category_to_file(&underlying_category(&load_category(path)?)?.category))?;
    }
    Ok(Exit::Success)
}

pub fn right_adjoint(path: &Path, sink: &Sink) -> Result<Exit> {
    let f = load_functor(path)?;
    if let Some(y) = adjunctible_failure(&f)? {
        sink.emit(&json!({ "adjunctible": false, "witness": { "object": f.cod().object_name(y) } }))?;
        return Ok(Exit::False);
    }
    let adj = right_adjoint_underlying(&f, &underlying_category(f.dom())?, &underlying_category(f.cod())?)?;
    let universal: BTreeMap<&str, Value> = f
        .cod()
        .objects()
        .map(|y| {
            let u = adj.universal[y];
            (f.cod().object_name(y), json!({ "object": f.dom().object_name(u.object), "counit": f.cod().morphism_name(u.counit) }))
        })
        .collect();
    sink.emit_bundle(
        Bundle::new()
            .with("left", functor_to_file(&adj.left))
            .with("right", functor_to_file(&adj.right))
            .with("universal", universal),
    )?;
    Ok(Exit::Success)
}

pub fn right_adjoint_pos(path: &Path, sink: &Sink) -> Result<Exit> {
    let m = load_monotone(path)?;
    match pos_upper_adjoint(&m) {
        Some(g) => {
            let upper = MonotoneMap { dom: m.cod.clone(), cod: m.dom.clone(), map: g };
            sink.emit(&monotone_to_file(&upper))?;
            Ok(Exit::Success)
        }
        None => {
            sink.emit(&json!({ "adjunctible": false }))?;
            Ok(Exit::False)
        }
    }
}

/// The cone under `p` with apex `x` whose leg at each `a` is the named arrow.
fn find_cone(p: &FunctorData, apex: &str, legs: &[(String, String)], guard: &SizeGuard) -> Result<Option<Cone>> {
    let x = p.cod();
    let at = object(x, apex)?;
    let mut wanted = vec![None; p.dom().num_objects()];
    for (a, m) in legs {
        wanted[object(p.dom(), a)?] = Some(morphism(x, m)?);
    }
    if let Some(a) = wanted.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!("no leg given at `{}`", p.dom().object_name(a))));
    }
    Ok(cones_under(p, guard)?.into_iter().find(|c| {
        c.x == at && p.dom().objects().all(|a| Some(c.slice.connecting(c.leg.obj(a))) == wanted[a])
    }))
}

fn cone_legs(c: &Cone) -> BTreeMap<String, String> {
    let (p, x) = (&c.p, c.p.cod());
    p.dom()
        .objects()
        .map(|a| (p.dom().object_name(a).to_string(), x.morphism_name(c.slice.connecting(c.leg.obj(a))).to_string()))
        .collect()
}

pub fn cone_check(path: &Path, apex: &str, legs: &[(String, String)], guard: &SizeGuard, sink: &Sink) -> Result<Exit> {
    let p = load_functor(path)?;
    let Some(c) = find_cone(&p, apex, legs, guard)? else {
        sink.emit(&json!({ "cone": false, "colimiting": false }))?;
        return Ok(Exit::False);
    };
    let col = is_colimiting(&c, guard)?;
    sink.emit(&json!({ "cone": true, "colimiting": col.holds(), "absolute": is_absolute(&c), "witness": col.witness() }))?;
    Ok(Exit::from_bool(col.holds()))
}

pub fn cone_list(path: &Path, guard: &SizeGuard, sink: &Sink) -> Result<Exit> {
    let p = load_functor(path)?;
    let mut rows = Vec::new();
    for c in cones_under(&p, guard)? {
        rows.push(json!({
            "apex": p.cod().object_name(c.x),
            "legs": cone_legs(&c),
            "colimiting": is_colimiting(&c, guard)?.holds(),
            "absolute": is_absolute(&c),
        }));
    }
    sink.emit(&rows)?;
    Ok(Exit::Success)
}

/// Every colimiting cone under `p` is sent to a colimiting cone by `f`.
pub fn preserves_colimits(f: &Path, p: &Path, guard: &SizeGuard, sink: &Sink) -> Result<Exit> {
    let (f, p) = (load_functor(f)?, load_functor(p)?);
    let (mut colimiting, mut failures) = (0, Vec::new());
    for c in cones_under(&p, guard)? {
        if !is_colimiting(&c, guard)?.holds() {
            continue;
        }
        colimiting += 1;
        if !preserves_colimits_check(&f, &c, guard)? {
            failures.push(json!({ "apex": p.cod().object_name(c.x), "legs": cone_legs(&c) }));
        }
    }
    let holds = failures.is_empty();
    sink.emit(&json!({ "colimiting_cones": colimiting, "preserved": holds, "failures": failures }))?;
    Ok(Exit::from_bool(holds))
}

pub fn alpha_pullback_cmd(path: &Path, from: &str, to: &str, arrow: &str, sink: &Sink) -> Result<Exit> {
    let f = load_functor(path)?;
    let y = f.cod();
    let h = hom_interval(y, object(y, from)?, object(y, to)?)?;
    let ap = alpha_pullback(&f, &h, element_of(y, &h, arrow)?)?;
    sink.emit_bundle(
        Bundle::new()
            .with("connected", ap.connected)
            .with("interval", category_to_file(&ap.interval))
            .with("apex", category_to_file(&ap.pullback.apex)),
    )?;
    Ok(Exit::Success)
}

pub fn tensor_cmd(p: &Path, q: &Path, sink: &Sink) -> Result<Exit> {
    let t = tensor(&load_functor(p)?, &load_functor(q)?)?;
    sink.emit(&json!({ "size": t.len(), "elements": t.element_names() }))?;
    Ok(Exit::Success)
}

pub fn module_action_cmd(path: &Path, sink: &Sink) -> Result<Exit> {
    let m = load_presheaf(path)?;
    let x = m.base().clone();
    let es = enriched_structure(&x)?;
    let ma = module_action(&m, &es)?;
    let mut rows = Vec::new();
    for a in x.objects() {
        for b in x.objects() {
            for (k, acts) in ma.act[a][b].iter().enumerate() {
                for (s, &r) in acts.iter().enumerate() {
                    rows.push(json!({
                        "arrow": x.morphism_name(es.homs[a][b].morphism(k)),
                        "element": m.fiber(b)[s],
                        "result": m.fiber(a)[r],
                    }));
                }
            }
        }
    }
    sink.emit(&rows)?;
    Ok(Exit::Success)
}

/// `ξ` as `{object: {element: element}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationFile {
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn module_morphism_cmd(m: &Path, n: &Path, xi: &Path, sink: &Sink) -> Result<Exit> {
    let (m, n) = (load_presheaf(m)?, load_presheaf(n)?);
    let file: TransformationFile = read_json(xi)?;
    let x = m.base().clone();
    let mut table = Vec::with_capacity(x.num_objects());
    for o in x.objects() {
        let name = x.object_name(o);
        let comp = file.components.get(name);
        let mut row = Vec::with_capacity(m.fiber(o).len());
        for e in m.fiber(o) {
            let image = comp.and_then(|c| c.get(e)).ok_or_else(|| Error::Precondition(format!("ξ at `{name}` misses `{e}`")))?;
            let j = n.fiber(o).iter().position(|v| v == image).ok_or_else(|| Error::Precondition(format!("`{image}` is not in the fiber of n at `{name}`")))?;
            row.push(j);
        }
        table.push(row);
    }
    let es = enriched_structure(&x)?;
    let induced = module_morphism(&module_action(&m, &es)?, &module_action(&n, &es)?, &table)?;
    let components: BTreeMap<&str, BTreeMap<&str, &str>> = x
        .objects()
        .map(|o| (x.object_name(o), m.fiber(o).iter().zip(&induced[o]).map(|(a, &b)| (a.as_str(), n.fiber(o)[b].as_str())).collect()))
        .collect();
    sink.emit(&json!({ "module_map": true, "components": components }))?;
    Ok(Exit::Success)
}

pub fn complement_cmd(path: &Path, set: &[String], sink: &Sink) -> Result<Exit> {
    sink.emit(&copresheaf_to_file(&complement(&load_presheaf(path)?, set)?))?;
    Ok(Exit::Success)
}

pub fn paths(path: &Path, from: &str, to: &str, sink: &Sink) -> Result<Exit> {
    let g = load_graph(path)?;
    let (a, b) = (g.node_index(from)?, g.node_index(to)?);
    let names: Vec<String> = g.paths(a, b).iter().map(|p| g.path_name(a, p)).collect();
    sink.emit(&json!({ "from": from, "to": to, "paths": names }))?;
    Ok(Exit::Success)
}

pub fn underlying_graph(path: &Path, sink: &Sink) -> Result<Exit> {
    let free = Arc::new(load_graph(path)?.free_category());
    sink.emit(&category_to_file(&underlying_category(&free)?.category))?;
    Ok(Exit::Success)
}
