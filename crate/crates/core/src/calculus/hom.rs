//! Internal hom data: the factorization category `[x,y]`, its components
//! `(x,y)`, the base inclusions of the cylinder, arrow intervals and the
//! enriched composition.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::components::{components_functor, FinSetQuotient};
use crate::construct::{factorization_category, full_subcategory, CommaResult, PullbackResult};
use crate::error::{Error, Result};
use crate::factorization::{is_final, is_initial, is_initial_object, is_terminal_object};
use crate::functor::FunctorData;

/// The pullback `[x,y]` of `↑x` and `↓y` with its reflection into components
/// and the two base inclusions `i_xy`, `e_xy`.
#[derive(Debug, Clone)]
pub struct HomInterval {
    pub x: Obj,
    pub y: Obj,
    /// `x\X`, projection `↑x = coslice.proj_right`.
    pub coslice: CommaResult,
    /// `X/y`, projection `↓y = slice.proj_left`.
    pub slice: CommaResult,
    pub pullback: PullbackResult,
    pub apex: Arc<FiniteCategory>,
    pub p_xy: FunctorData,
    pub q_xy: FunctorData,
    pub c_xy: FinSetQuotient,
    /// Discrete category on `(x,y)`.
    pub components: Arc<FiniteCategory>,
    pub c_functor: FunctorData,
    pub i_xy: FunctorData,
    pub e_xy: FunctorData,
}

/// Objects lying over one object of a projection, reindexed by their class.
fn section_over(
    apex: &FiniteCategory,
    proj: &FunctorData,
    over: Obj,
    q: &FinSetQuotient,
    which: &str,
) -> Result<Vec<Obj>> {
    let mut chosen = vec![None; q.len()];
    for o in apex.objects().filter(|&o| proj.obj(o) == over) {
        let slot = &mut chosen[q.class_of[o]];
        if slot.is_some() {
            return Err(Error::Postcondition(format!("{which}: two base points in one component")));
        }
        *slot = Some(o);
    }
    chosen
        .into_iter()
        .map(|c| c.ok_or_else(|| Error::Postcondition(format!("{which}: a component has no base point"))))
        .collect()
}

fn discrete_inclusion(components: &Arc<FiniteCategory>, apex: &Arc<FiniteCategory>, objs: Vec<Obj>) -> FunctorData {
    let mor_map = objs.iter().map(|&o| apex.identity(o)).collect();
    FunctorData::new_unchecked(components.clone(), apex.clone(), objs, mor_map)
}

/// Builds `[x,y]` and its balanced cylinder, asserting the cylinder laws:
/// `i_xy` initial, `e_xy` final, `c_xy ∘ i_xy = c_xy ∘ e_xy = id`.
pub fn hom_interval(x: &Arc<FiniteCategory>, from: Obj, to: Obj) -> Result<HomInterval> {
    let (coslice, slice, pullback) = factorization_category(x, from, to);
    let apex = pullback.apex.clone();
    let (c_xy, c_functor) = components_functor(&apex);
    let components = c_functor.cod().clone();
    let initial_point = coslice.object_for(0, from, x.identity(from)).expect("identity is a coslice object");
    let final_point = slice.object_for(to, 0, x.identity(to)).expect("identity is a slice object");
    let i_objs = section_over(&apex, &pullback.left, initial_point, &c_xy, "initial section")?;
    let e_objs = section_over(&apex, &pullback.right, final_point, &c_xy, "final section")?;
    let i_xy = discrete_inclusion(&components, &apex, i_objs);
    let e_xy = discrete_inclusion(&components, &apex, e_objs);
    let hom = HomInterval {
        x: from,
        y: to,
        p_xy: pullback.left.clone(),
        q_xy: pullback.right.clone(),
        coslice,
        slice,
        pullback,
        apex,
        c_xy,
        components,
        c_functor,
        i_xy,
        e_xy,
    };
    let problems = cylinder_violations(&hom);
    if let Some(p) = problems.first() {
        return Err(Error::Postcondition(p.clone()));
    }
    Ok(hom)
}

/// Every failed cylinder law, as a message.
pub fn cylinder_violations(h: &HomInterval) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(w) = is_initial(&h.i_xy).witness() {
        out.push(format!("i_xy is not initial (over `{}`: {} components)", w.object_name, w.components));
    }
    if let Some(w) = is_final(&h.e_xy).witness() {
        out.push(format!("e_xy is not final (over `{}`: {} components)", w.object_name, w.components));
    }
    let id = FunctorData::identity(&h.components);
    for (name, inc) in [("i_xy", &h.i_xy), ("e_xy", &h.e_xy)] {
        match h.c_functor.after(inc) {
            Ok(r) if r == id => {}
            _ => out.push(format!("c_xy ∘ {name} is not the identity")),
        }
    }
    out
}

impl HomInterval {
    pub fn len(&self) -> usize {
        self.c_xy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c_xy.is_empty()
    }

    /// Left arrow `q_xy ∘ i_xy ∘ k`: an object of `X/y` over `x`.
    pub fn left_arrow(&self, k: usize) -> Obj {
        self.q_xy.obj(self.i_xy.obj(k))
    }

    /// Right arrow `p_xy ∘ e_xy ∘ k`: an object of `x\X` over `y`.
    pub fn right_arrow(&self, k: usize) -> Obj {
        self.p_xy.obj(self.e_xy.obj(k))
    }

    /// The morphism of `X` underlying the left arrow of `k`.
    pub fn morphism(&self, k: usize) -> Mor {
        self.slice.connecting(self.left_arrow(k))
    }

    /// The element whose left arrow is the given slice object, if any.
    pub fn element_with_left_arrow(&self, slice_obj: Obj) -> Option<usize> {
        (0..self.len()).find(|&k| self.left_arrow(k) == slice_obj)
    }

    pub fn element_name(&self, k: usize) -> &str {
        self.components.object_name(k)
    }
}

/// One element of `(x,y)` with the arrows it corresponds to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomElement {
    pub name: String,
    /// Least object of the component in `[x,y]`.
    pub representative: String,
    /// Object of `X/y` over `x`.
    pub left_arrow: String,
    /// Object of `x\X` over `y`.
    pub right_arrow: String,
    pub morphism: String,
}

/// `(x,y)` with its bijections to left and right arrows.
#[derive(Debug, Clone)]
pub struct HomSet {
    pub interval: HomInterval,
    pub elements: Vec<HomElement>,
}

/// The internal hom-set and its two arrow bijections, asserted bijective onto
/// the slice objects over `x` and the coslice objects over `y`.
pub fn hom_set(x: &Arc<FiniteCategory>, from: Obj, to: Obj) -> Result<HomSet> {
    let interval = hom_interval(x, from, to)?;
    let problems = arrow_bijection_violations(&interval);
    if let Some(p) = problems.first() {
        return Err(Error::Postcondition(p.clone()));
    }
    let h = &interval;
    let elements = (0..h.len())
        .map(|k| HomElement {
            name: h.element_name(k).to_string(),
            representative: h.apex.object_name(h.c_xy.representatives[k]).to_string(),
            left_arrow: h.slice.apex.object_name(h.left_arrow(k)).to_string(),
            right_arrow: h.coslice.apex.object_name(h.right_arrow(k)).to_string(),
            morphism: x.morphism_name(h.morphism(k)).to_string(),
        })
        .collect();
    Ok(HomSet { interval, elements })
}

/// Checks that `k ↦ left_arrow(k)` and `k ↦ right_arrow(k)` are bijections
/// onto the arrows `x → y` seen from either side.
pub fn arrow_bijection_violations(h: &HomInterval) -> Vec<String> {
    let mut out = Vec::new();
    let mut lefts: Vec<Obj> = (0..h.len()).map(|k| h.left_arrow(k)).collect();
    let mut expected_left: Vec<Obj> =
        h.slice.apex.objects().filter(|&o| h.slice.proj_left.obj(o) == h.x).collect();
    lefts.sort_unstable();
    expected_left.sort_unstable();
    if lefts != expected_left {
        out.push("left arrows are not in bijection with (x,y)".to_string());
    }
    let mut rights: Vec<Obj> = (0..h.len()).map(|k| h.right_arrow(k)).collect();
    let mut expected_right: Vec<Obj> =
        h.coslice.apex.objects().filter(|&o| h.coslice.proj_right.obj(o) == h.y).collect();
    rights.sort_unstable();
    expected_right.sort_unstable();
    if rights != expected_right {
        out.push("right arrows are not in bijection with (x,y)".to_string());
    }
    for k in 0..h.len() {
        let l = h.slice.connecting(h.left_arrow(k));
        let r = h.coslice.connecting(h.right_arrow(k));
        if l != r {
            out.push(format!("element `{}` has mismatched left and right arrows", h.element_name(k)));
        }
    }
    out
}

/// The component `[α]` of `[x,y]` with its initial and final points.
#[derive(Debug, Clone)]
pub struct ArrowInterval {
    pub category: Arc<FiniteCategory>,
    pub inclusion: FunctorData,
    pub initial: Obj,
    pub terminal: Obj,
}

/// Full subcategory of `[x,y]` on the class of `k`, asserted connected with
/// an initial point (from `i_xy`) and a final point (from `e_xy`).
pub fn arrow_interval(h: &HomInterval, k: usize) -> Result<ArrowInterval> {
    let members: Vec<Obj> = h.apex.objects().filter(|&o| h.c_xy.class_of[o] == k).collect();
    let (category, inclusion) = full_subcategory(&h.apex, &members);
    let position = |o: Obj| members.iter().position(|&m| m == o).expect("member of the class");
    let initial = position(h.i_xy.obj(k));
    let terminal = position(h.e_xy.obj(k));
    if crate::components::pi0(&category).len() != 1 {
        return Err(Error::Postcondition("arrow interval is not connected".into()));
    }
    if !is_initial_object(&category, initial) || !is_terminal_object(&category, terminal) {
        return Err(Error::Postcondition("arrow interval lacks its initial or final point".into()));
    }
    Ok(ArrowInterval { category, inclusion, initial, terminal })
}

/// `X(x,y)` for all pairs, the enriched composition and the units.
#[derive(Debug, Clone)]
pub struct EnrichedStructure {
    pub base: Arc<FiniteCategory>,
    /// `homs[x][y]`.
    pub homs: Vec<Vec<HomInterval>>,
    /// `mu[x][y][z][s][t] = μ(s, t)` for `s ∈ (x,y)`, `t ∈ (y,z)`.
    pub mu: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    pub unit: Vec<usize>,
}

/// `μ(s, t)`: the class in `[x,z]` of `(p_xy(e_xy s), q_yz(i_yz t))`.
fn compose_classes(homs: &[Vec<HomInterval>], x: Obj, y: Obj, z: Obj, s: usize, t: usize) -> Result<usize> {
    let (hxy, hyz, hxz) = (&homs[x][y], &homs[y][z], &homs[x][z]);
    let l = hxy.right_arrow(s);
    let r = hyz.left_arrow(t);
    // x\X and X/z are built identically for every pair, so indices carry over
    let o = hxz
        .pullback
        .object_for(l, r)
        .ok_or_else(|| Error::Postcondition("μ′ does not land in [x,z]".into()))?;
    Ok(hxz.c_xy.class_of[o])
}

/// Computes `μ` and `u`, asserting the unit laws. Associativity is not
/// assumed; see [`EnrichedStructure::associativity_failures`].
pub fn enriched_structure(x: &Arc<FiniteCategory>) -> Result<EnrichedStructure> {
    let n = x.num_objects();
    let homs = (0..n)
        .map(|a| (0..n).map(|b| hom_interval(x, a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut mu = vec![vec![vec![Vec::new(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let table = (0..homs[a][b].len())
                    .map(|s| (0..homs[b][c].len()).map(|t| compose_classes(&homs, a, b, c, s, t)).collect())
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                mu[a][b][c] = table;
            }
        }
    }
    let unit = (0..n)
        .map(|a| {
            let h = &homs[a][a];
            let o = h
                .pullback
                .object_for(
                    h.coslice.object_for(0, a, x.identity(a)).expect("initial point"),
                    h.slice.object_for(a, 0, x.identity(a)).expect("final point"),
                )
                .expect("(i_x, e_x) lies in [x,x]");
            h.c_xy.class_of[o]
        })
        .collect();
    let es = EnrichedStructure { base: x.clone(), homs, mu, unit };
    if let Some(p) = es.unit_violations().first() {
        return Err(Error::Postcondition(p.clone()));
    }
    Ok(es)
}

impl EnrichedStructure {
    pub fn compose(&self, x: Obj, y: Obj, z: Obj, s: usize, t: usize) -> usize {
        self.mu[x][y][z][s][t]
    }

    /// `μ(u_x, α) = α = μ(α, u_y)`.
    pub fn unit_violations(&self) -> Vec<String> {
        let n = self.base.num_objects();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for s in 0..self.homs[x][y].len() {
                    if self.compose(x, x, y, self.unit[x], s) != s || self.compose(x, y, y, s, self.unit[y]) != s {
                        out.push(format!(
                            "unit law fails at `{}` in ({},{})",
                            self.homs[x][y].element_name(s),
                            self.base.object_name(x),
                            self.base.object_name(y)
                        ));
                    }
                }
            }
        }
        out
    }

    /// Triples `(s, t, r)` with `μ(μ(s,t),r) ≠ μ(s,μ(t,r))`, over all
    /// object quadruples.
    pub fn associativity_failures(&self) -> Vec<[usize; 7]> {
        let n = self.base.num_objects();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for s in 0..self.homs[x][y].len() {
                            for t in 0..self.homs[y][z].len() {
                                for r in 0..self.homs[z][w].len() {
                                    let left = self.compose(x, z, w, self.compose(x, y, z, s, t), r);
                                    let right = self.compose(x, y, w, s, self.compose(y, z, w, t, r));
                                    if left != right {
                                        out.push([x, y, z, w, s, t, r]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Number of composable triples examined by [`Self::associativity_failures`].
    pub fn associativity_cases(&self) -> usize {
        let n = self.base.num_objects();
        let mut total = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        total += self.homs[x][y].len() * self.homs[y][z].len() * self.homs[z][w].len();
                    }
                }
            }
        }
        total
    }
}
