//! Underlying categories: arrows `x → y` are the objects of `X/y` over `x`,
//! composed by Yoneda extension along slice projections. Also arrow maps and
//! the action of a functor on hom-sets.

use std::sync::Arc;

use crate::category::{identity_name, FiniteCategory, Mor, Morphism, Obj};
use crate::construct::{opposite, opposite_functor, slice, CommaResult};
use crate::error::{Error, Result};
use crate::factorization::factorize_left;
use crate::functor::FunctorData;

use super::hom::EnrichedStructure;

/// The unique morphism of `m.dom()` with target `target` lying over `beta`.
pub fn unique_lift(m: &FunctorData, target: Obj, beta: Mor) -> Option<Mor> {
    let mut found = None;
    for &u in m.dom().into_object(target) {
        if m.mor(u) == beta {
            if found.is_some() {
                return None;
            }
            found = Some(u);
        }
    }
    found
}

/// The map `β̂: X/y → A` over `X` sending the final point of `X/y` to `a`,
/// for a discrete fibration `m: A → X` with `m(a) = y`.
pub fn yoneda_extension(sl: &CommaResult, m: &FunctorData, a: Obj) -> Result<FunctorData> {
    let s = &sl.apex;
    let lift = |target: Obj, beta: Mor| {
        unique_lift(m, target, beta)
            .ok_or_else(|| Error::Precondition("Yoneda extension needs a discrete fibration".into()))
    };
    let mut obj_map = Vec::with_capacity(s.num_objects());
    for o in s.objects() {
        obj_map.push(m.dom().src(lift(a, sl.connecting(o))?));
    }
    let mut mor_map = Vec::with_capacity(s.num_morphisms());
    for u in s.morphisms() {
        mor_map.push(lift(obj_map[s.tgt(u)], sl.proj_left.mor(u))?);
    }
    let ext = FunctorData::new_unchecked(s.clone(), m.dom().clone(), obj_map, mor_map);
    if !ext.law_violations().is_empty() {
        return Err(Error::Postcondition("Yoneda extension is not a functor".into()));
    }
    Ok(ext)
}

/// The final point `(x, id_x)` of a slice `X/x`.
pub fn slice_top(sl: &CommaResult, x: &FiniteCategory, at: Obj) -> Obj {
    sl.object_for(at, 0, x.identity(at)).expect("identity is a slice object")
}

/// Arrow map `e_{f,x}: X/x → Y/fx`, built by factorizing `f ∘ ↓x` and
/// identifying the middle object with `Y/fx` through its final point.
pub fn arrow_map_between(f: &FunctorData, at: Obj, source: &CommaResult, target: &CommaResult) -> Result<FunctorData> {
    let g = f.after(&source.proj_left)?;
    let r = factorize_left(&g)?;
    let top = r.e.obj(slice_top(source, f.dom(), at));
    let psi = yoneda_extension(target, &r.m, top)?;
    let phi = psi
        .inverse()
        .ok_or_else(|| Error::Postcondition("middle object of f∘↓x is not a slice".into()))?;
    phi.after(&r.e)
}

pub fn arrow_map(f: &FunctorData, at: Obj) -> Result<FunctorData> {
    let source = slice(f.dom(), at);
    let target = slice(f.cod(), f.obj(at));
    arrow_map_between(f, at, &source, &target)
}

/// `X̄` with the slices its arrows live in.
#[derive(Debug, Clone)]
pub struct Underlying {
    pub base: Arc<FiniteCategory>,
    pub category: Arc<FiniteCategory>,
    pub slices: Vec<CommaResult>,
    /// `arrows[y][o]`: the arrow given by object `o` of `X/y`.
    arrows: Vec<Vec<Mor>>,
    /// Inverse of `arrows`.
    located: Vec<(Obj, Obj)>,
}

impl Underlying {
    pub fn arrow(&self, y: Obj, slice_obj: Obj) -> Mor {
        self.arrows[y][slice_obj]
    }

    /// `(y, o)` with `o` an object of `X/y`.
    pub fn locate(&self, arrow: Mor) -> (Obj, Obj) {
        self.located[arrow]
    }

    /// The arrow `(x, γ)` of `X/y` for a morphism `γ: x → y` of the base.
    pub fn arrow_for_morphism(&self, gamma: Mor) -> Mor {
        let (x, y) = (self.base.src(gamma), self.base.tgt(gamma));
        self.arrow(y, self.slices[y].object_for(x, 0, gamma).expect("slice object"))
    }

    /// The base morphism connecting the slice object of an arrow.
    pub fn connecting_morphism(&self, arrow: Mor) -> Mor {
        let (y, o) = self.locate(arrow);
        self.slices[y].connecting(o)
    }
}

/// Builds `X̄`: objects are the objects of `X`, arrows `x → y` are the objects
/// of `X/y` over `x`, and `b ∘ a = b̂(a)`. Identities are final points.
pub fn underlying_category(x: &Arc<FiniteCategory>) -> Result<Underlying> {
    let slices: Vec<CommaResult> = x.objects().map(|y| slice(x, y)).collect();
    let mut morphisms = Vec::new();
    let mut arrows = Vec::with_capacity(slices.len());
    let mut located = Vec::new();
    let mut identities = vec![0; x.num_objects()];
    for (y, sl) in slices.iter().enumerate() {
        let top = slice_top(sl, x, y);
        let mut ids = Vec::with_capacity(sl.apex.num_objects());
        for o in sl.apex.objects() {
            let name = if o == top {
                identities[y] = morphisms.len();
                identity_name(x.object_name(y))
            } else {
                sl.apex.object_name(o).to_string()
            };
            ids.push(morphisms.len());
            located.push((y, o));
            morphisms.push(Morphism { name, src: sl.proj_left.obj(o), tgt: y });
        }
        arrows.push(ids);
    }
    // extensions[b]: object map of b̂ for the arrow b
    let mut extensions = Vec::with_capacity(morphisms.len());
    for &(y, b) in &located {
        let src = slices[y].proj_left.obj(b);
        extensions.push(yoneda_extension(&slices[src], &slices[y].proj_left, b)?.obj_map().to_vec());
    }
    let cat = FiniteCategory::from_parts(x.object_names().to_vec(), morphisms, identities, |g, f| {
        let (y, _) = located[g];
        let (_, a) = located[f];
        arrows[y][extensions[g][a]]
    })?;
    if let Some(v) = cat.axiom_violations().first() {
        return Err(Error::Postcondition(format!("underlying category: {v}")));
    }
    Ok(Underlying { base: x.clone(), category: Arc::new(cat), slices, arrows, located })
}

/// `f̄: X̄ → Ȳ`, acting on arrows by arrow maps.
pub fn underlying_functor(f: &FunctorData, ux: &Underlying, uy: &Underlying) -> Result<FunctorData> {
    let x = f.dom();
    let maps = x
        .objects()
        .map(|y| arrow_map_between(f, y, &ux.slices[y], &uy.slices[f.obj(y)]))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = ux
        .category
        .morphisms()
        .map(|a| {
            let (y, o) = ux.locate(a);
            uy.arrow(f.obj(y), maps[y].obj(o))
        })
        .collect();
    FunctorData::new(ux.category.clone(), uy.category.clone(), f.obj_map().to_vec(), mor_map)
        .map_err(|e| Error::Postcondition(format!("underlying functor: {e}")))
}

/// Object map of the coslice arrow map `x\X → fx\Y`, obtained from the
/// arrow map of `f^op`.
pub fn coarrow_object_map(f: &FunctorData, at: Obj, source: &CommaResult, target: &CommaResult) -> Result<Vec<Obj>> {
    let fop = opposite_functor(f);
    let op_source = slice(fop.dom(), at);
    let op_target = slice(fop.cod(), f.obj(at));
    let map = arrow_map_between(&fop, at, &op_source, &op_target)?;
    source
        .apex
        .objects()
        .map(|o| {
            let (_, w, gamma) = source.tags[o];
            let there = map.obj(op_source.object_for(w, 0, gamma).expect("same arrows"));
            let (v, _, delta) = op_target.tags[there];
            target.object_for(0, v, delta).ok_or_else(|| Error::Postcondition("coslice arrow map".into()))
        })
        .collect()
}

/// `f_{x,y}: X(x,y) → Y(fx,fy)`, the components of `f_[x,y]` induced on the
/// pullbacks by the coslice and slice arrow maps. Asserted constant on classes.
pub fn hom_action(f: &FunctorData, ex: &EnrichedStructure, ey: &EnrichedStructure, x: Obj, y: Obj) -> Result<Vec<usize>> {
    let (hx, hy) = (&ex.homs[x][y], &ey.homs[f.obj(x)][f.obj(y)]);
    let co = coarrow_object_map(f, x, &hx.coslice, &hy.coslice)?;
    let sl = arrow_map_between(f, y, &hx.slice, &hy.slice)?;
    let mut out: Vec<Option<usize>> = vec![None; hx.len()];
    for (o, &(a, b)) in hx.pullback.pairs.iter().enumerate() {
        let image = hy
            .pullback
            .object_for(co[a], sl.obj(b))
            .ok_or_else(|| Error::Postcondition("f_[x,y] leaves the pullback".into()))?;
        let class = hy.c_xy.class_of[image];
        let slot = &mut out[hx.c_xy.class_of[o]];
        match slot {
            Some(c) if *c != class => {
                return Err(Error::Postcondition("f_[x,y] does not respect components".into()));
            }
            _ => *slot = Some(class),
        }
    }
    Ok(out.into_iter().map(|c| c.expect("components are nonempty")).collect())
}

/// The isomorphism `X̄' → X̄^op` given on arrows by the hom-set bijections:
/// the right arrow of `k ∈ (x,y)` goes to its left arrow. Checked to be an
/// isomorphism of categories.
pub fn duality_isomorphism(
    es: &EnrichedStructure,
    ux: &Underlying,
    ux_dual: &Underlying,
) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    let target = Arc::new(opposite(&ux.category));
    let mut mor_map = vec![usize::MAX; ux_dual.category.num_morphisms()];
    let n = es.base.num_objects();
    for x in 0..n {
        for y in 0..n {
            let h = &es.homs[x][y];
            for k in 0..h.len() {
                let (_, w, alpha) = h.coslice.tags[h.right_arrow(k)];
                let in_dual = ux_dual.slices[x]
                    .object_for(w, 0, alpha)
                    .ok_or_else(|| Error::Postcondition("right arrow missing from X̄'".into()))?;
                mor_map[ux_dual.arrow(x, in_dual)] = ux.arrow(y, h.left_arrow(k));
            }
        }
    }
    if mor_map.contains(&usize::MAX) {
        return Err(Error::Postcondition("some arrow of X̄' has no hom-set element".into()));
    }
    let obj_map = (0..n).collect();
    let iso = FunctorData::new(ux_dual.category.clone(), target.clone(), obj_map, mor_map)
        .map_err(|e| Error::Postcondition(format!("duality map: {e}")))?;
    if !iso.is_isomorphism() {
        return Err(Error::Postcondition("duality map is not an isomorphism".into()));
    }
    Ok((target, iso))
}

/// Object map of the base-change `X̄ ≅ X` sending arrows to their connecting
/// morphisms; an isomorphism for finite categories.
pub fn comparison_with_base(u: &Underlying) -> Result<FunctorData> {
    let obj_map = u.base.objects().collect();
    let mor_map = u.category.morphisms().map(|a| u.connecting_morphism(a)).collect();
    FunctorData::new(u.category.clone(), u.base.clone(), obj_map, mor_map)
        .map_err(|e| Error::Postcondition(format!("comparison X̄ → X: {e}")))
}
