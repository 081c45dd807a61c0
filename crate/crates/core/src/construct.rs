//! Universal constructions on finite categories: comma categories, strict
//! pullbacks, products over a base, opposites, (co)products and full
//! subcategories.
//!
//! Every derived object and morphism gets a deterministic name built from the
//! names of its components, so serialized outputs are reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{identity_name, FiniteCategory, Mor, Morphism, Obj};
use crate::error::{Error, Result};
use crate::functor::{same_category, FunctorData};

/// The comma category `(p, q)` with its two projections.
#[derive(Debug, Clone)]
pub struct CommaResult {
    pub apex: Arc<FiniteCategory>,
    pub proj_left: FunctorData,
    pub proj_right: FunctorData,
    /// `(a, b, α: p a → q b)` for every apex object.
    pub tags: Vec<(Obj, Obj, Mor)>,
    index: HashMap<(Obj, Obj, Mor), Obj>,
    mor_index: HashMap<(Obj, Mor, Mor, Obj), Mor>,
}

impl CommaResult {
    pub fn object_for(&self, a: Obj, b: Obj, alpha: Mor) -> Option<Obj> {
        self.index.get(&(a, b, alpha)).copied()
    }

    /// The morphism `(u, v): src → tgt`, if it exists.
    pub fn morphism_for(&self, src: Obj, u: Mor, v: Mor, tgt: Obj) -> Option<Mor> {
        self.mor_index.get(&(src, u, v, tgt)).copied()
    }

    /// The connecting morphism of an apex object.
    pub fn connecting(&self, o: Obj) -> Mor {
        self.tags[o].2
    }
}

/// A strict pullback `A ×_Z B` with its projections.
#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub apex: Arc<FiniteCategory>,
    pub left: FunctorData,
    pub right: FunctorData,
    pub pairs: Vec<(Obj, Obj)>,
    index: HashMap<(Obj, Obj), Obj>,
    mor_index: HashMap<(Mor, Mor), Mor>,
}

impl PullbackResult {
    pub fn object_for(&self, a: Obj, b: Obj) -> Option<Obj> {
        self.index.get(&(a, b)).copied()
    }

    pub fn morphism_for(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.mor_index.get(&(u, v)).copied()
    }

    /// The universal map `T → A ×_Z B` induced by `h: T → A` and `k: T → B`.
    pub fn pair(&self, h: &FunctorData, k: &FunctorData) -> Result<FunctorData> {
        if !same_category(h.dom(), k.dom()) {
            return Err(Error::Precondition("pairing needs a common domain".into()));
        }
        let t = h.dom();
        let mut obj_map = Vec::with_capacity(t.num_objects());
        for o in t.objects() {
            obj_map.push(self.object_for(h.obj(o), k.obj(o)).ok_or_else(|| {
                Error::Precondition(format!(
                    "pairing: object `{}` does not land in the pullback",
                    t.object_name(o)
                ))
            })?);
        }
        let mut mor_map = Vec::with_capacity(t.num_morphisms());
        for m in t.morphisms() {
            mor_map.push(self.morphism_for(h.mor(m), k.mor(m)).ok_or_else(|| {
                Error::Precondition(format!(
                    "pairing: morphism `{}` does not land in the pullback",
                    t.morphism_name(m)
                ))
            })?);
        }
        Ok(FunctorData::new_unchecked(t.clone(), self.apex.clone(), obj_map, mor_map))
    }
}

/// The pullback presented as an object of `Cat/X`.
#[derive(Debug, Clone)]
pub struct OverProduct {
    pub pullback: PullbackResult,
    pub structure: FunctorData,
}

fn check_common_codomain(p: &FunctorData, q: &FunctorData) -> Result<()> {
    if same_category(p.cod(), q.cod()) {
        Ok(())
    } else {
        Err(Error::CodomainMismatch("the two functors have different codomains".into()))
    }
}

/// Comma category `(p, q)`: objects `(a, b, α: p a → q b)`, morphisms pairs
/// `(u, v)` with `q v ∘ α = α' ∘ p u`.
pub fn comma(p: &FunctorData, q: &FunctorData) -> Result<CommaResult> {
    check_common_codomain(p, q)?;
    let x = p.cod();
    let (pc, qc) = (p.dom(), q.dom());
    let mut tags = Vec::new();
    let mut index = HashMap::new();
    let mut names = Vec::new();
    for a in pc.objects() {
        for b in qc.objects() {
            for alpha in x.hom(p.obj(a), q.obj(b)) {
                index.insert((a, b, alpha), tags.len());
                tags.push((a, b, alpha));
                names.push(format!(
                    "({}|{}|{})",
                    pc.object_name(a),
                    qc.object_name(b),
                    x.morphism_name(alpha)
                ));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_key: HashMap<(Obj, Mor, Mor, Obj), Mor> = HashMap::new();
    let mut mor_parts = Vec::new();
    let mut identities = vec![0; tags.len()];
    for (o, &(a, b, alpha)) in tags.iter().enumerate() {
        for &u in pc.out_of_object(a) {
            let pu = p.mor(u);
            for &v in qc.out_of_object(b) {
                let along = x.compose(q.mor(v), alpha);
                let (a2, b2) = (pc.tgt(u), qc.tgt(v));
                for alpha2 in x.hom(p.obj(a2), q.obj(b2)) {
                    if x.compose(alpha2, pu) != along {
                        continue;
                    }
                    let o2 = index[&(a2, b2, alpha2)];
                    let is_id = pc.is_identity(u) && qc.is_identity(v);
                    let name = if is_id {
                        identity_name(&names[o])
                    } else {
                        format!(
                            "({}|{}|{}|{})",
                            pc.morphism_name(u),
                            qc.morphism_name(v),
                            x.morphism_name(alpha),
                            x.morphism_name(alpha2)
                        )
                    };
                    if is_id {
                        identities[o] = morphisms.len();
                    }
                    mor_key.insert((o, u, v, o2), morphisms.len());
                    mor_parts.push((u, v));
                    morphisms.push(Morphism { name, src: o, tgt: o2 });
                }
            }
        }
    }
    let morphisms_ref = morphisms.clone();
    let apex = FiniteCategory::from_parts(names, morphisms, identities, |g, f| {
        let (ug, vg) = mor_parts[g];
        let (uf, vf) = mor_parts[f];
        let key = (
            morphisms_ref[f].src,
            pc.compose(ug, uf),
            qc.compose(vg, vf),
            morphisms_ref[g].tgt,
        );
        mor_key[&key]
    })?;
    let apex = Arc::new(apex);
    let proj_left = FunctorData::new_unchecked(
        apex.clone(),
        pc.clone(),
        tags.iter().map(|t| t.0).collect(),
        mor_parts.iter().map(|m| m.0).collect(),
    );
    let proj_right = FunctorData::new_unchecked(
        apex.clone(),
        qc.clone(),
        tags.iter().map(|t| t.1).collect(),
        mor_parts.iter().map(|m| m.1).collect(),
    );
    Ok(CommaResult { apex, proj_left, proj_right, tags, index, mor_index: mor_key })
}

/// Slice `X/x = (id_X, x)`; its projection `↓x` is `proj_left`.
pub fn slice(x: &Arc<FiniteCategory>, object: Obj) -> CommaResult {
    comma(&FunctorData::identity(x), &FunctorData::point(x, object)).expect("same codomain")
}

/// Coslice `x\X = (x, id_X)`; its projection `↑x` is `proj_right`.
pub fn coslice(x: &Arc<FiniteCategory>, object: Obj) -> CommaResult {
    comma(&FunctorData::point(x, object), &FunctorData::identity(x)).expect("same codomain")
}

/// Strict pullback of `f: A → Z` and `g: B → Z`.
pub fn pullback(f: &FunctorData, g: &FunctorData) -> Result<PullbackResult> {
    check_common_codomain(f, g)?;
    let (a, b) = (f.dom(), g.dom());
    let z = f.cod();
    let mut b_over: Vec<Vec<Obj>> = vec![Vec::new(); z.num_objects()];
    for o in b.objects() {
        b_over[g.obj(o)].push(o);
    }
    let mut b_mor_over: Vec<Vec<Mor>> = vec![Vec::new(); z.num_morphisms()];
    for m in b.morphisms() {
        b_mor_over[g.mor(m)].push(m);
    }
    let mut pairs = Vec::new();
    let mut names = Vec::new();
    let mut index = HashMap::new();
    for oa in a.objects() {
        for &ob in &b_over[f.obj(oa)] {
            index.insert((oa, ob), pairs.len());
            pairs.push((oa, ob));
            names.push(format!("({}|{})", a.object_name(oa), b.object_name(ob)));
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    let mut mor_index = HashMap::new();
    let mut identities = vec![0; pairs.len()];
    for u in a.morphisms() {
        for &v in &b_mor_over[f.mor(u)] {
            let src = index[&(a.src(u), b.src(v))];
            let tgt = index[&(a.tgt(u), b.tgt(v))];
            let is_id = a.is_identity(u) && b.is_identity(v);
            let name = if is_id {
                identities[src] = morphisms.len();
                identity_name(&names[src])
            } else {
                format!("({}|{})", a.morphism_name(u), b.morphism_name(v))
            };
            mor_index.insert((u, v), morphisms.len());
            mor_pairs.push((u, v));
            morphisms.push(Morphism { name, src, tgt });
        }
    }
    let apex = FiniteCategory::from_parts(names, morphisms, identities, |gm, fm| {
        let (ug, vg) = mor_pairs[gm];
        let (uf, vf) = mor_pairs[fm];
        mor_index[&(a.compose(ug, uf), b.compose(vg, vf))]
    })?;
    let apex = Arc::new(apex);
    let left = FunctorData::new_unchecked(
        apex.clone(),
        a.clone(),
        pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    );
    let right = FunctorData::new_unchecked(
        apex.clone(),
        b.clone(),
        pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    );
    Ok(PullbackResult { apex, left, right, pairs, index, mor_index })
}

/// The product `p × q` in `Cat/X`.
pub fn product_over(p: &FunctorData, q: &FunctorData) -> Result<OverProduct> {
    let pullback = pullback(p, q)?;
    let structure = p.after(&pullback.left)?;
    Ok(OverProduct { pullback, structure })
}

/// Product category `A × B`.
pub fn product(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> PullbackResult {
    let one = Arc::new(FiniteCategory::terminal());
    let fa = FunctorData::to_terminal(a).with_codomain(one.clone());
    let fb = FunctorData::to_terminal(b).with_codomain(one);
    pullback(&fa, &fb).expect("common terminal codomain")
}

/// Disjoint union `A ⊔ B`; objects and morphisms are tagged `(0|·)` and `(1|·)`.
pub fn coproduct(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    let na = a.num_objects();
    let ma = a.num_morphisms();
    let mut objects: Vec<String> = a.object_names().iter().map(|o| format!("(0|{o})")).collect();
    objects.extend(b.object_names().iter().map(|o| format!("(1|{o})")));
    let mut morphisms = Vec::with_capacity(ma + b.num_morphisms());
    for (tag, c, off) in [(0, a, 0), (1, b, na)] {
        for m in c.morphisms() {
            let src = c.src(m) + off;
            let name = if c.is_identity(m) {
                identity_name(&objects[src])
            } else {
                format!("({tag}|{})", c.morphism_name(m))
            };
            morphisms.push(Morphism { name, src, tgt: c.tgt(m) + off });
        }
    }
    let mut identities: Vec<Mor> = a.objects().map(|o| a.identity(o)).collect();
    identities.extend(b.objects().map(|o| b.identity(o) + ma));
    FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
        if g < ma {
            a.compose(g, f)
        } else {
            b.compose(g - ma, f - ma) + ma
        }
    })
    .expect("coproduct of valid categories")
}

/// The opposite category: same names, reversed arrows.
pub fn opposite(x: &FiniteCategory) -> FiniteCategory {
    let morphisms = x
        .morphisms()
        .map(|m| Morphism { name: x.morphism_name(m).to_string(), src: x.tgt(m), tgt: x.src(m) })
        .collect();
    let identities = x.objects().map(|o| x.identity(o)).collect();
    FiniteCategory::from_parts(x.object_names().to_vec(), morphisms, identities, |g, f| {
        x.compose(f, g)
    })
    .expect("opposite of a valid category")
}

/// The opposite functor between the given opposite categories.
pub fn opposite_functor_between(
    f: &FunctorData,
    dom_op: &Arc<FiniteCategory>,
    cod_op: &Arc<FiniteCategory>,
) -> FunctorData {
    FunctorData::new_unchecked(
        dom_op.clone(),
        cod_op.clone(),
        f.obj_map().to_vec(),
        f.mor_map().to_vec(),
    )
}

/// `F^op: A^op → B^op`, building fresh opposite categories.
pub fn opposite_functor(f: &FunctorData) -> FunctorData {
    let d = Arc::new(opposite(f.dom()));
    let c = if Arc::ptr_eq(f.dom(), f.cod()) { d.clone() } else { Arc::new(opposite(f.cod())) };
    opposite_functor_between(f, &d, &c)
}

/// Full subcategory on the listed objects, with its inclusion.
pub fn full_subcategory(x: &Arc<FiniteCategory>, keep: &[Obj]) -> (Arc<FiniteCategory>, FunctorData) {
    let mut new_index = vec![usize::MAX; x.num_objects()];
    for (i, &o) in keep.iter().enumerate() {
        new_index[o] = i;
    }
    let mut mor_new = vec![usize::MAX; x.num_morphisms()];
    let mut old_mor = Vec::new();
    let mut morphisms = Vec::new();
    for m in x.morphisms() {
        let (s, t) = (new_index[x.src(m)], new_index[x.tgt(m)]);
        if s != usize::MAX && t != usize::MAX {
            mor_new[m] = morphisms.len();
            old_mor.push(m);
            morphisms.push(Morphism { name: x.morphism_name(m).to_string(), src: s, tgt: t });
        }
    }
    let objects = keep.iter().map(|&o| x.object_name(o).to_string()).collect();
    let identities = keep.iter().map(|&o| mor_new[x.identity(o)]).collect();
    let sub = FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
        mor_new[x.compose(old_mor[g], old_mor[f])]
    })
    .expect("full subcategory");
    let sub = Arc::new(sub);
    let inclusion = FunctorData::new_unchecked(sub.clone(), x.clone(), keep.to_vec(), old_mor);
    (sub, inclusion)
}

/// The factorization category `[x, y]`: the pullback of `↑x: x\X → X` and
/// `↓y: X/y → X`. Objects are pairs `(β: x → z, γ: z → y)`.
pub fn factorization_category(
    x: &Arc<FiniteCategory>,
    from: Obj,
    to: Obj,
) -> (CommaResult, CommaResult, PullbackResult) {
    let co = coslice(x, from);
    let sl = slice(x, to);
    let pb = pullback(&co.proj_right, &sl.proj_left).expect("both project to X");
    (co, sl, pb)
}
