//! Tensors over a base, module actions of presheaves, and complements.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FiniteCategory, Obj};
use crate::components::{pi0, FinSetQuotient};
use crate::construct::{coslice, product_over, pullback, CommaResult, OverProduct, PullbackResult};
use crate::error::{Error, Result};
use crate::factorization::{is_discrete_opfibration, Check, Copresheaf, Presheaf};
use crate::functor::FunctorData;
use crate::search::{FunctorSearch, SizeGuard};

use super::hom::EnrichedStructure;

/// `p ⊗ q = π0(P ×_X Q)`.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub over: OverProduct,
    pub quotient: FinSetQuotient,
}

impl Tensor {
    pub fn len(&self) -> usize {
        self.quotient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }

    /// One `(a|b)` name per class, from its least object.
    pub fn element_names(&self) -> Vec<String> {
        let apex = &self.over.pullback.apex;
        self.quotient.representatives.iter().map(|&o| apex.object_name(o).to_string()).collect()
    }
}

pub fn tensor(p: &FunctorData, q: &FunctorData) -> Result<Tensor> {
    let over = product_over(p, q)?;
    let quotient = pi0(&over.pullback.apex);
    Ok(Tensor { over, quotient })
}

/// `h ⊗ r: (p' ⊗ r) → (p ⊗ r)` for `h: P' → P` with `p ∘ h = p'`.
pub fn tensor_map(h: &FunctorData, from: &Tensor, to: &Tensor) -> Result<Vec<usize>> {
    let mut out: Vec<Option<usize>> = vec![None; from.len()];
    for (o, &(a, b)) in from.over.pullback.pairs.iter().enumerate() {
        let image = to
            .over
            .pullback
            .object_for(h.obj(a), b)
            .ok_or_else(|| Error::Precondition("the map does not commute with the structure maps".into()))?;
        let class = to.quotient.class_of[image];
        let slot = &mut out[from.quotient.class_of[o]];
        match slot {
            Some(c) if *c != class => return Err(Error::Postcondition("tensor map not constant on a class".into())),
            _ => *slot = Some(class),
        }
    }
    Ok(out.into_iter().map(|c| c.expect("classes are nonempty")).collect())
}

/// `[xm]`, `(xm)` and the action `X(x,y) × (ym) → (xm)` of a presheaf,
/// with `(xm)` identified with `fiber(x)`.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    pub m: Presheaf,
    pub elements: Arc<FiniteCategory>,
    pub projection: FunctorData,
    pub coslices: Vec<CommaResult>,
    /// `brackets[x] = [xm]`, the pullback of `↑x` and the projection.
    pub brackets: Vec<PullbackResult>,
    pub classes: Vec<FinSetQuotient>,
    /// `to_fiber[x][class]`: the element of `fiber(x)` in that class.
    pub to_fiber: Vec<Vec<usize>>,
    /// `act[x][y][k][a]` for `k ∈ X(x,y)` and `a ∈ fiber(y)`.
    pub act: Vec<Vec<Vec<Vec<usize>>>>,
}

/// The class of `((y, α), (y, a))` in `(xm)` for the element `α` of `X(x,y)`.
fn act_on(ma: &ModuleAction, es: &EnrichedStructure, x: Obj, y: Obj, k: usize, a: usize) -> Result<usize> {
    let h = &es.homs[x][y];
    let (_, _, alpha) = h.coslice.tags[h.right_arrow(k)];
    let c = ma.coslices[x].object_for(0, y, alpha).expect("coslice object");
    let o = ma.brackets[x]
        .object_for(c, ma.m.element_object(y, a))
        .ok_or_else(|| Error::Postcondition("right arrow does not meet the element".into()))?;
    Ok(ma.to_fiber[x][ma.classes[x].class_of[o]])
}

pub fn module_action(m: &Presheaf, es: &EnrichedStructure) -> Result<ModuleAction> {
    let base = m.base();
    let (elements, projection) = m.elements();
    let mut coslices = Vec::with_capacity(base.num_objects());
    let mut brackets = Vec::with_capacity(base.num_objects());
    let mut classes = Vec::with_capacity(base.num_objects());
    let mut to_fiber = Vec::with_capacity(base.num_objects());
    for x in base.objects() {
        let co = coslice(base, x);
        let pb = pullback(&co.proj_right, &projection)?;
        let q = pi0(&pb.apex);
        let bottom = co.object_for(0, x, base.identity(x)).expect("initial point");
        let mut table = vec![usize::MAX; q.len()];
        for s in 0..m.fiber(x).len() {
            let o = pb.object_for(bottom, m.element_object(x, s)).expect("element over x");
            let slot = &mut table[q.class_of[o]];
            if *slot != usize::MAX {
                return Err(Error::Postcondition("(xm) identifies two elements of the fiber".into()));
            }
            *slot = s;
        }
        if table.contains(&usize::MAX) {
            return Err(Error::Postcondition("(xm) has a class missing from the fiber".into()));
        }
        coslices.push(co);
        brackets.push(pb);
        classes.push(q);
        to_fiber.push(table);
    }
    let mut ma = ModuleAction {
        m: m.clone(),
        elements,
        projection,
        coslices,
        brackets,
        classes,
        to_fiber,
        act: Vec::new(),
    };
    let mut act = Vec::with_capacity(base.num_objects());
    for x in base.objects() {
        let mut row = Vec::with_capacity(base.num_objects());
        for y in base.objects() {
            let h = &es.homs[x][y];
            let mut per = Vec::with_capacity(h.len());
            for k in 0..h.len() {
                let values = (0..m.fiber(y).len())
                    .map(|a| act_on(&ma, es, x, y, k, a))
                    .collect::<Result<Vec<_>>>()?;
                if values != m.act(h.morphism(k)) {
                    return Err(Error::Postcondition(format!(
                        "action of `{}` disagrees with the presheaf",
                        base.morphism_name(h.morphism(k))
                    )));
                }
                per.push(values);
            }
            row.push(per);
        }
        act.push(row);
    }
    ma.act = act;
    Ok(ma)
}

/// The components `(x, ξ): (xm) → (xn)` of a map of presheaves given
/// fiberwise, induced on `[xm] → [xn]`. Asserts that `ξ` is natural and that
/// the components commute with both actions.
pub fn module_morphism(ma: &ModuleAction, na: &ModuleAction, xi: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let (m, n) = (&ma.m, &na.m);
    let base = m.base();
    if xi.len() != base.num_objects()
        || base.objects().any(|x| xi[x].len() != m.fiber(x).len() || xi[x].iter().any(|&b| b >= n.fiber(x).len()))
    {
        return Err(Error::Precondition("ξ is not a family of functions between the fibers".into()));
    }
    for a in base.morphisms() {
        let (x, y) = (base.src(a), base.tgt(a));
        for s in 0..m.fiber(y).len() {
            if xi[x][m.act(a)[s]] != n.act(a)[xi[y][s]] {
                return Err(Error::Precondition(format!("ξ is not natural at `{}`", base.morphism_name(a))));
            }
        }
    }
    let mut out = Vec::with_capacity(base.num_objects());
    for x in base.objects() {
        let (from, to) = (&ma.brackets[x], &na.brackets[x]);
        let mut table: Vec<Option<usize>> = vec![None; ma.classes[x].len()];
        for (o, &(c, e)) in from.pairs.iter().enumerate() {
            let w = ma.projection.obj(e);
            let s = e - m.element_object(w, 0);
            let image = to.object_for(c, n.element_object(w, xi[w][s])).expect("same coslice");
            let class = na.to_fiber[x][na.classes[x].class_of[image]];
            let slot = &mut table[ma.to_fiber[x][ma.classes[x].class_of[o]]];
            match slot {
                Some(v) if *v != class => return Err(Error::Postcondition("(x, ξ) not constant on a class".into())),
                _ => *slot = Some(class),
            }
        }
        let table: Vec<usize> = table.into_iter().map(|v| v.expect("classes are nonempty")).collect();
        if table != xi[x] {
            return Err(Error::Postcondition("(x, ξ) disagrees with ξ".into()));
        }
        out.push(table);
    }
    for x in base.objects() {
        for y in base.objects() {
            for (k, acts) in ma.act[x][y].iter().enumerate() {
                for (a, &v) in acts.iter().enumerate() {
                    if out[x][v] != na.act[x][y][k][out[y][a]] {
                        return Err(Error::Postcondition("(−, ξ) is not a map of modules".into()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Functions `n → S` as mixed-radix numbers, first argument most significant.
fn digit(code: usize, arg: usize, n: usize, s: usize) -> usize {
    (code / s.pow((n - 1 - arg) as u32)) % s
}

fn encode(values: &[usize], s: usize) -> usize {
    values.iter().fold(0, |acc, &v| acc * s + v)
}

/// `¬m(S)`: `fiber(x) = S^{m(x)}`, and `α: x → y` acts by precomposition
/// with `m(α): m(y) → m(x)`.
pub fn complement(m: &Presheaf, s: &[String]) -> Result<Copresheaf> {
    let base = m.base();
    let k = s.len();
    let mut fibers = Vec::with_capacity(base.num_objects());
    for x in base.objects() {
        let n = m.fiber(x).len();
        let count = k.pow(n as u32);
        let fiber: Vec<String> = (0..count)
            .map(|code| {
                let parts: Vec<&str> = (0..n).map(|i| s[digit(code, i, n, k)].as_str()).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        fibers.push(fiber);
    }
    let mut action = Vec::with_capacity(base.num_morphisms());
    for a in base.morphisms() {
        let x = base.src(a);
        let nx = m.fiber(x).len();
        let along = m.act(a);
        let map = (0..fibers[x].len())
            .map(|code| {
                let values: Vec<usize> = along.iter().map(|&i| digit(code, i, nx, k)).collect();
                encode(&values, k)
            })
            .collect();
        action.push(map);
    }
    let c = Copresheaf::new(base.clone(), fibers, action)
        .map_err(|e| Error::Postcondition(format!("complement is not a copresheaf: {e}")))?;
    if !is_discrete_opfibration(&c.elements().1).holds() {
        return Err(Error::Postcondition("complement is not a discrete opfibration".into()));
    }
    Ok(c)
}

/// The function `q ⊗ m → S` transposed from a map `g: Q → El(¬m(S))` over `X`.
pub fn complement_transpose(m: &Presheaf, c: &Copresheaf, t: &Tensor, g: &FunctorData, s: usize) -> Result<Vec<usize>> {
    let mut out: Vec<Option<usize>> = vec![None; t.len()];
    for (o, &(b, e)) in t.over.pullback.pairs.iter().enumerate() {
        let w = t.over.structure.obj(o);
        let arg = e - m.element_object(w, 0);
        let code = g.obj(b) - c.element_object(w, 0);
        let v = digit(code, arg, m.fiber(w).len(), s);
        let slot = &mut out[t.quotient.class_of[o]];
        match slot {
            Some(old) if *old != v => return Err(Error::Postcondition("transpose not constant on a class".into())),
            _ => *slot = Some(v),
        }
    }
    Ok(out.into_iter().map(|v| v.expect("classes are nonempty")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementWitness {
    pub maps: usize,
    pub functions: usize,
    pub injective: bool,
}

/// Maps `q → ¬m(S)` over `X` correspond bijectively to functions `q ⊗ m → S`.
pub fn complement_adjunction(
    m: &Presheaf,
    s: &[String],
    q: &FunctorData,
    guard: &SizeGuard,
) -> Result<Check<ComplementWitness>> {
    let c = complement(m, s)?;
    let (_, proj) = m.elements();
    let (cel, cproj) = c.elements();
    let t = tensor(q, &proj)?;
    let maps = FunctorSearch::new(q.dom(), &cel).over(&cproj, q).collect(guard)?;
    let functions = s.len().checked_pow(t.len() as u32).unwrap_or(usize::MAX);
    let mut seen = std::collections::HashSet::new();
    for g in &maps {
        seen.insert(complement_transpose(m, &c, &t, g, s.len())?);
    }
    let injective = seen.len() == maps.len();
    if maps.len() == functions && injective {
        Ok(Check::Pass)
    } else {
        Ok(Check::Fail(ComplementWitness { maps: maps.len(), functions, injective }))
    }
}
