//! Membership tests for the four classes: discrete (op)fibrations and
//! final/initial functors, plus exhaustive orthogonality.

use std::collections::HashMap;

use serde::Serialize;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::components::{FinSetQuotient, UnionFind};
use crate::error::Result;
use crate::functor::FunctorData;
use crate::search::{FunctorSearch, SizeGuard};

/// Outcome of a predicate: pass, or fail with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }
}

/// An object and a base morphism at it with the wrong number of lifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftWitness {
    pub object: Obj,
    pub object_name: String,
    pub morphism: Mor,
    pub morphism_name: String,
    pub lifts: usize,
}

/// A base object whose comma category does not have exactly one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentWitness {
    pub object: Obj,
    pub object_name: String,
    pub components: usize,
}

/// A commutative square `m ∘ top = bottom ∘ e` with the wrong number of fillers.
#[derive(Debug, Clone, Serialize)]
pub struct SquareWitness {
    pub top_objects: Vec<String>,
    pub bottom_objects: Vec<String>,
    #[serde(skip)]
    pub top: FunctorData,
    #[serde(skip)]
    pub bottom: FunctorData,
    pub fillers: usize,
}

fn lifts(m: &FunctorData, contravariant: bool) -> Check<LiftWitness> {
    let (a, x) = (m.dom(), m.cod());
    let mut count: HashMap<Mor, usize> = HashMap::new();
    for o in a.objects() {
        count.clear();
        let (local, base): (&[Mor], &[Mor]) = if contravariant {
            (a.into_object(o), x.into_object(m.obj(o)))
        } else {
            (a.out_of_object(o), x.out_of_object(m.obj(o)))
        };
        for &u in local {
            *count.entry(m.mor(u)).or_default() += 1;
        }
        for &beta in base {
            let n = count.get(&beta).copied().unwrap_or(0);
            if n != 1 {
                return Check::Fail(LiftWitness {
                    object: o,
                    object_name: a.object_name(o).into(),
                    morphism: beta,
                    morphism_name: x.morphism_name(beta).into(),
                    lifts: n,
                });
            }
        }
    }
    Check::Pass
}

/// Unique lifting of every base morphism at its target.
pub fn is_discrete_fibration(m: &FunctorData) -> Check<LiftWitness> {
    lifts(m, true)
}

/// Unique lifting of every base morphism at its source.
pub fn is_discrete_opfibration(n: &FunctorData) -> Check<LiftWitness> {
    lifts(n, false)
}

/// Objects `(a, α: x → p a)` of the comma category `x\p` with its components.
/// Objects are listed by `a`, then by `α` in hom order.
#[derive(Debug, Clone)]
pub struct CommaComponents {
    pub objects: Vec<(Obj, Mor)>,
    pub quotient: FinSetQuotient,
    index: HashMap<(Obj, Mor), usize>,
}

impl CommaComponents {
    pub fn class_of(&self, a: Obj, alpha: Mor) -> usize {
        self.quotient.class_of[self.index[&(a, alpha)]]
    }

    pub fn len(&self) -> usize {
        self.quotient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }
}

/// Components of `x\p` without materializing its morphisms.
pub fn coslice_components(p: &FunctorData, x: Obj) -> CommaComponents {
    let (pc, base) = (p.dom(), p.cod());
    let mut objects = Vec::new();
    let mut index = HashMap::new();
    for a in pc.objects() {
        for alpha in base.hom(x, p.obj(a)) {
            index.insert((a, alpha), objects.len());
            objects.push((a, alpha));
        }
    }
    let mut uf = UnionFind::new(objects.len());
    for (i, &(a, alpha)) in objects.iter().enumerate() {
        for &u in pc.out_of_object(a) {
            let j = index[&(pc.tgt(u), base.compose(p.mor(u), alpha))];
            uf.union(i, j);
        }
    }
    let quotient = FinSetQuotient::from_union_find(&mut uf);
    CommaComponents { objects, quotient, index }
}

/// Components of `p/x`: objects `(a, α: p a → x)`.
pub fn slice_components(p: &FunctorData, x: Obj) -> CommaComponents {
    let (pc, base) = (p.dom(), p.cod());
    let mut objects = Vec::new();
    let mut index = HashMap::new();
    for a in pc.objects() {
        for alpha in base.hom(p.obj(a), x) {
            index.insert((a, alpha), objects.len());
            objects.push((a, alpha));
        }
    }
    let mut uf = UnionFind::new(objects.len());
    for (i, &(a, alpha)) in objects.iter().enumerate() {
        for &u in pc.into_object(a) {
            let j = index[&(pc.src(u), base.compose(alpha, p.mor(u)))];
            uf.union(i, j);
        }
    }
    let quotient = FinSetQuotient::from_union_find(&mut uf);
    CommaComponents { objects, quotient, index }
}

fn connected_everywhere(
    p: &FunctorData,
    components: impl Fn(&FunctorData, Obj) -> CommaComponents,
) -> Check<ComponentWitness> {
    let x = p.cod();
    for o in x.objects() {
        let n = components(p, o).len();
        if n != 1 {
            return Check::Fail(ComponentWitness {
                object: o,
                object_name: x.object_name(o).into(),
                components: n,
            });
        }
    }
    Check::Pass
}

/// `π0(x\p)` is a singleton for every object `x`.
pub fn is_final(p: &FunctorData) -> Check<ComponentWitness> {
    connected_everywhere(p, coslice_components)
}

/// `π0(p/x)` is a singleton for every object `x`.
pub fn is_initial(p: &FunctorData) -> Check<ComponentWitness> {
    connected_everywhere(p, slice_components)
}

/// Whether the object is terminal, i.e. its point is final.
pub fn is_terminal_object(x: &FiniteCategory, o: Obj) -> bool {
    x.objects().all(|y| x.hom_count(y, o) == 1)
}

pub fn is_initial_object(x: &FiniteCategory, o: Obj) -> bool {
    x.objects().all(|y| x.hom_count(o, y) == 1)
}

/// Exhaustive orthogonality `e ⊥ m`: every square from `e` to `m` has exactly
/// one diagonal filler.
pub fn is_orthogonal(e: &FunctorData, m: &FunctorData, guard: &SizeGuard) -> Result<Check<SquareWitness>> {
    let work = [e.dom(), e.cod(), m.dom(), m.cod()]
        .iter()
        .map(|c| c.num_morphisms().max(1) as u64)
        .fold(1u64, |acc, n| acc.saturating_mul(n));
    guard.check("checking orthogonality (product of morphism counts)", work)?;
    let (a, b) = (e.dom(), e.cod());
    let (c, d) = (m.dom(), m.cod());
    let bottoms = FunctorSearch::new(b, d).collect(guard)?;
    for v in &bottoms {
        let ve = v.after(e)?;
        let tops = FunctorSearch::new(a, c).over(m, &ve).collect(guard)?;
        for u in &tops {
            let fillers = match FunctorSearch::new(b, c).over(m, v).extending(e, u) {
                Some(search) => search.count(guard)?,
                None => 0,
            };
            if fillers != 1 {
                return Ok(Check::Fail(SquareWitness {
                    top_objects: u.obj_map().iter().map(|&o| c.object_name(o).to_string()).collect(),
                    bottom_objects: v.obj_map().iter().map(|&o| d.object_name(o).to_string()).collect(),
                    top: u.clone(),
                    bottom: v.clone(),
                    fillers,
                }));
            }
        }
    }
    Ok(Check::Pass)
}
