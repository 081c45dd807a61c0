//! Finite posets with (cofinal, lower-set inclusion) and (coinitial,
//! upper-set inclusion).

use std::sync::Arc;


use super::bfc::{mismatch, BfcInstance, LexBackend};
use crate::calculus::complement;
use crate::category::FiniteCategory;
use crate::error::{Error, Result, ValidationReport, Violation};
use crate::factorization::Presheaf;
use crate::functor::FunctorData;
use crate::samples::preorder;
use crate::search::SizeGuard;

/// A finite poset; `leq` is stored closed under reflexivity and transitivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetObject {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl PosetObject {
    /// Closes the generating pairs and checks antisymmetry.
    pub fn new(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut sorted: Vec<&String> = elements.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Precondition(format!("element `{}` is repeated", w[0])));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Precondition("relation mentions a missing element".into()));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    let v = Violation::NotAntisymmetric { a: elements[i].clone(), b: elements[j].clone() };
                    return Err(ValidationReport { violations: vec![v] }.into());
                }
            }
        }
        Ok(PosetObject { elements, leq })
    }

    /// The poset given by an already closed order relation.
    pub fn from_fn(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| leq(i, j)).collect();
        Self::new(elements, &pairs)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i == j).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All pairs `a ≤ b` with `a ≠ b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.leq[i][j]).collect()
    }

    pub fn is_lower_set(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|j| !subset[j] || (0..self.len()).all(|i| !self.leq[i][j] || subset[i]))
    }

    pub fn is_upper_set(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|i| !subset[i] || (0..self.len()).all(|j| !self.leq[i][j] || subset[j]))
    }

    pub fn down_closure(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|i| (0..self.len()).any(|j| subset[j] && self.leq[i][j])).collect()
    }

    pub fn up_closure(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|j| (0..self.len()).any(|i| subset[i] && self.leq[i][j])).collect()
    }

    /// The least upper bound of a subset, if any.
    pub fn sup(&self, subset: &[bool]) -> Option<usize> {
        let n = self.len();
        let upper: Vec<usize> = (0..n).filter(|&u| (0..n).all(|a| !subset[a] || self.leq[a][u])).collect();
        upper.iter().copied().find(|&u| upper.iter().all(|&v| self.leq[u][v]))
    }

    /// The sub-poset on the marked elements, in their original order.
    pub fn restrict(&self, keep: &[bool]) -> (PosetObject, Vec<usize>) {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        let elements = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let leq = idx.iter().map(|&i| idx.iter().map(|&j| self.leq[i][j]).collect()).collect();
        (PosetObject { elements, leq }, idx)
    }

    /// The thin category with an arrow `a → b` iff `a ≤ b`.
    pub fn category(&self) -> FiniteCategory {
        preorder(self.elements.clone(), |i, j| self.leq[i][j]).expect("a poset is a preorder")
    }

    pub fn opposite(&self) -> PosetObject {
        let n = self.len();
        PosetObject { elements: self.elements.clone(), leq: (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect() }
    }
}

/// A monotone map between finite posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub dom: Arc<PosetObject>,
    pub cod: Arc<PosetObject>,
    pub map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: Arc<PosetObject>, cod: Arc<PosetObject>, map: Vec<usize>) -> Result<Self> {
        let f = MonotoneMap { dom, cod, map };
        monotone_violation(&f).map_or(Ok(f), |v| Err(Error::Precondition(v)))
    }

    pub fn image(&self) -> Vec<bool> {
        let mut out = vec![false; self.cod.len()];
        for &b in &self.map {
            out[b] = true;
        }
        out
    }

    /// The functor between the thin categories.
    pub fn functor(&self, dom: &Arc<FiniteCategory>, cod: &Arc<FiniteCategory>) -> Result<FunctorData> {
        let mor_map = dom
            .morphisms()
            .map(|m| {
                let (a, b) = (self.map[dom.src(m)], self.map[dom.tgt(m)]);
                cod.hom(a, b).next().expect("monotone")
            })
            .collect();
        FunctorData::new(dom.clone(), cod.clone(), self.map.clone(), mor_map).map_err(Error::from)
    }
}

fn monotone_violation(f: &MonotoneMap) -> Option<String> {
    if f.map.len() != f.dom.len() || f.map.iter().any(|&b| b >= f.cod.len()) {
        return Some("map is not a function between the carriers".into());
    }
    for (a, a2) in f.dom.strict_pairs() {
        if !f.cod.leq(f.map[a], f.map[a2]) {
            return Some(format!(
                "not monotone: `{}` ≤ `{}` but their images are not ordered",
                f.dom.elements[a], f.dom.elements[a2]
            ));
        }
    }
    None
}

/// Every point of the codomain is below some image point.
pub fn is_cofinal(f: &MonotoneMap) -> bool {
    (0..f.cod.len()).all(|x| f.map.iter().any(|&b| f.cod.leq(x, b)))
}

/// Every point of the codomain is above some image point.
pub fn is_coinitial(f: &MonotoneMap) -> bool {
    (0..f.cod.len()).all(|x| f.map.iter().any(|&b| f.cod.leq(b, x)))
}

fn is_embedding(f: &MonotoneMap) -> bool {
    let n = f.dom.len();
    (0..n).all(|a| (0..n).all(|b| f.dom.leq(a, b) == f.cod.leq(f.map[a], f.map[b])))
}

/// Injective order embedding onto a lower set.
pub fn is_lower_set_inclusion(f: &MonotoneMap) -> bool {
    is_embedding(f) && f.cod.is_lower_set(&f.image())
}

pub fn is_upper_set_inclusion(f: &MonotoneMap) -> bool {
    is_embedding(f) && f.cod.is_upper_set(&f.image())
}

fn through(f: &MonotoneMap, closure: Vec<bool>) -> (MonotoneMap, MonotoneMap) {
    let (mid, idx) = f.cod.restrict(&closure);
    let mid = Arc::new(mid);
    let position = |b: usize| idx.iter().position(|&i| i == b).expect("image lies in the closure");
    let e = MonotoneMap { dom: f.dom.clone(), cod: mid.clone(), map: f.map.iter().map(|&b| position(b)).collect() };
    let m = MonotoneMap { dom: mid, cod: f.cod.clone(), map: idx };
    (e, m)
}

/// `f = m ∘ e` through the down-closure of the image.
pub fn pos_factorize_left(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    through(f, f.cod.down_closure(&f.image()))
}

/// `f = m ∘ e` through the up-closure of the image.
pub fn pos_factorize_right(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    through(f, f.cod.up_closure(&f.image()))
}

/// Internal components: the truth value "nonempty".
pub fn pos_pi0(x: &PosetObject) -> bool {
    !x.is_empty()
}

/// Each comparison `f/y → ↓y` is cofinal: some `a` has `f a = y`.
pub fn pos_is_dense(f: &MonotoneMap) -> bool {
    (0..f.cod.len()).all(|y| f.map.iter().any(|&b| f.cod.leq(b, y) && f.cod.leq(y, b)))
}

/// Every `y` is the sup of the images below it.
pub fn pos_is_adequate(f: &MonotoneMap) -> bool {
    (0..f.cod.len()).all(|y| {
        let below: Vec<bool> = (0..f.cod.len()).map(|b| f.cod.leq(b, y) && f.map.contains(&b)).collect();
        f.cod.sup(&below) == Some(y)
    })
}

/// The upper adjoint `g y = max{a : f a ≤ y}`, where every such maximum exists.
pub fn pos_upper_adjoint(f: &MonotoneMap) -> Option<Vec<usize>> {
    (0..f.cod.len())
        .map(|y| {
            let below: Vec<usize> = (0..f.dom.len()).filter(|&a| f.cod.leq(f.map[a], y)).collect();
            below.iter().copied().find(|&m| below.iter().all(|&a| f.dom.leq(a, m)))
        })
        .collect()
}

/// A cone from the image of `p` to `x` is colimiting iff `x` is its sup.
pub fn pos_is_colimit(p: &MonotoneMap, x: usize) -> bool {
    p.cod.sup(&p.image()) == Some(x)
}

/// Colimiting and attained: the sup is a maximum of the image.
pub fn pos_is_absolute(p: &MonotoneMap, x: usize) -> bool {
    pos_is_colimit(p, x) && p.map.contains(&x)
}

/// `¬L(∅)` computed as the complement of the lower set read as a presheaf.
pub fn lower_set_complement(x: &PosetObject, lower: &[bool]) -> Result<Vec<bool>> {
    if !x.is_lower_set(lower) {
        return Err(Error::Precondition("subset is not a lower set".into()));
    }
    let cat = Arc::new(x.category());
    let fibers: Vec<Vec<String>> = lower.iter().map(|&l| if l { vec!["*".to_string()] } else { Vec::new() }).collect();
    let action = cat.morphisms().map(|m| if lower[cat.tgt(m)] { vec![0] } else { Vec::new() }).collect();
    let m = Presheaf::new(cat, fibers, action).map_err(Error::from)?;
    let c = complement(&m, &[])?;
    Ok(c.fiber_sizes().iter().map(|&n| n == 1).collect())
}

#[derive(Debug, Clone, Default)]
pub struct Pos;

impl LexBackend for Pos {
    type Object = Arc<PosetObject>;
    type Map = MonotoneMap;

    fn name(&self) -> &'static str {
        "pos"
    }

    fn validate_object(&self, o: &Self::Object) -> Result<()> {
        PosetObject::new(o.elements.clone(), &o.strict_pairs()).map(|_| ())
    }

    fn validate_map(&self, f: &Self::Map) -> Result<()> {
        monotone_violation(f).map_or(Ok(()), |v| Err(Error::Precondition(v)))
    }

    fn dom(&self, f: &Self::Map) -> Self::Object {
        f.dom.clone()
    }

    fn cod(&self, f: &Self::Map) -> Self::Object {
        f.cod.clone()
    }

    fn identity(&self, o: &Self::Object) -> Self::Map {
        MonotoneMap { dom: o.clone(), cod: o.clone(), map: (0..o.len()).collect() }
    }

    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map> {
        if f.cod != g.dom {
            return Err(mismatch("monotone maps are not composable"));
        }
        Ok(MonotoneMap { dom: f.dom.clone(), cod: g.cod.clone(), map: f.map.iter().map(|&b| g.map[b]).collect() })
    }

    fn terminal(&self) -> Self::Object {
        Arc::new(PosetObject::chain(1))
    }

    fn to_terminal(&self, o: &Self::Object) -> Self::Map {
        MonotoneMap { dom: o.clone(), cod: self.terminal(), map: vec![0; o.len()] }
    }

    fn pullback(&self, f: &Self::Map, g: &Self::Map) -> Result<(Self::Object, Self::Map, Self::Map)> {
        if f.cod != g.cod {
            return Err(mismatch("monotone maps have different codomains"));
        }
        let pairs: Vec<(usize, usize)> = (0..f.dom.len())
            .flat_map(|a| (0..g.dom.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| f.map[a] == g.map[b])
            .collect();
        let names = pairs.iter().map(|&(a, b)| format!("({}|{})", f.dom.elements[a], g.dom.elements[b])).collect();
        let apex = Arc::new(PosetObject::from_fn(names, |i, j| {
            f.dom.leq(pairs[i].0, pairs[j].0) && g.dom.leq(pairs[i].1, pairs[j].1)
        })?);
        let left = MonotoneMap { dom: apex.clone(), cod: f.dom.clone(), map: pairs.iter().map(|p| p.0).collect() };
        let right = MonotoneMap { dom: apex.clone(), cod: g.dom.clone(), map: pairs.iter().map(|p| p.1).collect() };
        Ok((apex, left, right))
    }

    fn maps(&self, a: &Self::Object, b: &Self::Object, guard: &SizeGuard) -> Result<Vec<Self::Map>> {
        let total = (b.len() as u64).checked_pow(a.len() as u32).unwrap_or(u64::MAX);
        guard.check("enumerating monotone maps", total)?;
        let mut out = Vec::new();
        let mut map = vec![0; a.len()];
        enumerate_functions(&mut map, 0, b.len(), &mut |m| {
            let f = MonotoneMap { dom: a.clone(), cod: b.clone(), map: m.to_vec() };
            if monotone_violation(&f).is_none() {
                out.push(f);
            }
        });
        Ok(out)
    }

    fn is_iso(&self, f: &Self::Map) -> bool {
        f.dom.len() == f.cod.len() && is_embedding(f) && {
            let mut seen = f.map.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == f.map.len()
        }
    }
}

/// Visits every function `0..map.len() → 0..n` in lexicographic order.
pub(crate) fn enumerate_functions(map: &mut Vec<usize>, at: usize, n: usize, visit: &mut impl FnMut(&[usize])) {
    if at == map.len() {
        visit(map);
        return;
    }
    for v in 0..n {
        map[at] = v;
        enumerate_functions(map, at + 1, n, visit);
    }
}

pub fn pos_bfc() -> BfcInstance<Pos> {
    BfcInstance {
        name: "pos".into(),
        backend: Arc::new(Pos),
        in_e: Arc::new(is_cofinal),
        in_m: Arc::new(is_lower_set_inclusion),
        in_e_dual: Arc::new(is_coinitial),
        in_m_dual: Arc::new(is_upper_set_inclusion),
        factorize_left: Arc::new(|f| Ok(pos_factorize_left(f))),
        factorize_right: Arc::new(|f| Ok(pos_factorize_right(f))),
    }
}
