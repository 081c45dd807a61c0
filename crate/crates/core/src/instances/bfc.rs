//! Balanced factorization categories as first-class descriptors over a
//! finitely complete backend.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::search::SizeGuard;

/// A category with a terminal object and pullbacks, whose hom-sets between
/// the objects it is asked about are finite and enumerable.
pub trait LexBackend: Send + Sync + 'static {
    type Object: Clone + Debug + PartialEq + Send + Sync + 'static;
    type Map: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn name(&self) -> &'static str;
    fn validate_object(&self, o: &Self::Object) -> Result<()>;
    fn validate_map(&self, f: &Self::Map) -> Result<()>;
    fn dom(&self, f: &Self::Map) -> Self::Object;
    fn cod(&self, f: &Self::Map) -> Self::Object;
    fn identity(&self, o: &Self::Object) -> Self::Map;
    /// `g ∘ f`; fails unless `cod f = dom g`.
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map>;
    fn terminal(&self) -> Self::Object;
    fn to_terminal(&self, o: &Self::Object) -> Self::Map;
    /// Vertex and the two legs `(left, right)` with `f ∘ left = g ∘ right`.
    fn pullback(&self, f: &Self::Map, g: &Self::Map) -> Result<(Self::Object, Self::Map, Self::Map)>;
    fn maps(&self, a: &Self::Object, b: &Self::Object, guard: &SizeGuard) -> Result<Vec<Self::Map>>;
    fn is_iso(&self, f: &Self::Map) -> bool;
}

pub type Membership<B> = Arc<dyn Fn(&<B as LexBackend>::Map) -> bool + Send + Sync>;
/// Returns `(e, m)` with `f = m ∘ e`.
pub type Factorizer<B> =
    Arc<dyn Fn(&<B as LexBackend>::Map) -> Result<(<B as LexBackend>::Map, <B as LexBackend>::Map)> + Send + Sync>;

/// The two factorization systems `(E, M)` and `(E', M')` on a backend.
#[derive(Clone)]
pub struct BfcInstance<B: LexBackend> {
    pub name: String,
    pub backend: Arc<B>,
    pub in_e: Membership<B>,
    pub in_m: Membership<B>,
    pub in_e_dual: Membership<B>,
    pub in_m_dual: Membership<B>,
    pub factorize_left: Factorizer<B>,
    pub factorize_right: Factorizer<B>,
}

/// The interval object `[x,y]` with its projections to the coslice and slice
/// domains.
#[derive(Debug, Clone)]
pub struct IntervalObject<B: LexBackend> {
    pub apex: B::Object,
    pub to_coslice: B::Map,
    pub to_slice: B::Map,
}

impl<B: LexBackend> BfcInstance<B> {
    /// `E = isomorphisms`, `M = all maps`, on both sides.
    pub fn discrete(backend: Arc<B>) -> Self {
        let b1 = backend.clone();
        let b2 = backend.clone();
        let b3 = backend.clone();
        let left: Factorizer<B> = Arc::new(move |f| Ok((b3.identity(&b3.dom(f)), f.clone())));
        BfcInstance {
            name: format!("discrete({})", backend.name()),
            backend,
            in_e: Arc::new(move |f| b1.is_iso(f)),
            in_m: Arc::new(|_| true),
            in_e_dual: Arc::new(move |f| b2.is_iso(f)),
            in_m_dual: Arc::new(|_| true),
            factorize_left: left.clone(),
            factorize_right: left,
        }
    }

    /// `E = all maps`, `M = isomorphisms`, on both sides.
    pub fn codiscrete(backend: Arc<B>) -> Self {
        let b1 = backend.clone();
        let b2 = backend.clone();
        let b3 = backend.clone();
        let left: Factorizer<B> = Arc::new(move |f| Ok((f.clone(), b3.identity(&b3.cod(f)))));
        BfcInstance {
            name: format!("codiscrete({})", backend.name()),
            backend,
            in_e: Arc::new(|_| true),
            in_m: Arc::new(move |f| b1.is_iso(f)),
            in_e_dual: Arc::new(|_| true),
            in_m_dual: Arc::new(move |f| b2.is_iso(f)),
            factorize_left: left.clone(),
            factorize_right: left,
        }
    }

    /// The reflection `X → π0 X` in sets: the left factorization of `X → 1`.
    pub fn pi0(&self, x: &B::Object) -> Result<(B::Object, B::Map)> {
        let (e, _) = (self.factorize_left)(&self.backend.to_terminal(x))?;
        Ok((self.backend.cod(&e), e))
    }

    /// `X → 1` lies in `M`.
    pub fn is_set(&self, x: &B::Object) -> bool {
        (self.in_m)(&self.backend.to_terminal(x))
    }

    /// `X → 1` lies in `M'`.
    pub fn is_dual_set(&self, x: &B::Object) -> bool {
        (self.in_m_dual)(&self.backend.to_terminal(x))
    }

    pub fn points(&self, x: &B::Object, guard: &SizeGuard) -> Result<Vec<B::Map>> {
        self.backend.maps(&self.backend.terminal(), x, guard)
    }

    /// `↓x: X/x → X`, the `M`-part of the point `x`.
    pub fn slice(&self, x: &B::Map) -> Result<B::Map> {
        Ok((self.factorize_left)(x)?.1)
    }

    /// `↑x: x\X → X`, the `M'`-part of the point `x`.
    pub fn coslice(&self, x: &B::Map) -> Result<B::Map> {
        Ok((self.factorize_right)(x)?.1)
    }

    /// `[x,y]`: the pullback of `↑x` and `↓y`.
    pub fn interval(&self, x: &B::Map, y: &B::Map) -> Result<IntervalObject<B>> {
        let up = self.coslice(x)?;
        let down = self.slice(y)?;
        let (apex, to_coslice, to_slice) = self.backend.pullback(&up, &down)?;
        Ok(IntervalObject { apex, to_coslice, to_slice })
    }

    /// `|X(x,y)|`: the number of points of `π0[x,y]`.
    pub fn hom_size(&self, x: &B::Map, y: &B::Map, guard: &SizeGuard) -> Result<usize> {
        let interval = self.interval(x, y)?;
        let (set, _) = self.pi0(&interval.apex)?;
        Ok(self.points(&set, guard)?.len())
    }

    /// `|X̄(x,y)|`: points of `X/y` lying over `x`.
    pub fn underlying_hom_size(&self, x: &B::Map, y: &B::Map, guard: &SizeGuard) -> Result<usize> {
        let down = self.slice(y)?;
        let mut n = 0;
        for p in self.points(&self.backend.dom(&down), guard)? {
            if self.backend.compose(&down, &p)? == *x {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Both factorizations compose back to `f` with parts in the right classes.
    pub fn factorization_violations(&self, f: &B::Map) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let sides = [
            ("left", &self.factorize_left, &self.in_e, &self.in_m),
            ("right", &self.factorize_right, &self.in_e_dual, &self.in_m_dual),
        ];
        for (side, factorize, in_e, in_m) in sides {
            let (e, m) = factorize(f)?;
            if self.backend.compose(&m, &e)? != *f {
                out.push(format!("{side} factorization does not compose to the map"));
            }
            if !in_e(&e) {
                out.push(format!("{side} factorization: first part outside its class"));
            }
            if !in_m(&m) {
                out.push(format!("{side} factorization: second part outside its class"));
            }
        }
        Ok(out)
    }

    /// Unique diagonal fillers for every square from `e` to `m`.
    pub fn orthogonal(&self, e: &B::Map, m: &B::Map, guard: &SizeGuard) -> Result<bool> {
        let b = &self.backend;
        let (a, c) = (b.dom(e), b.cod(e));
        let (d, x) = (b.dom(m), b.cod(m));
        let us = b.maps(&a, &d, guard)?;
        let vs = b.maps(&c, &x, guard)?;
        let fills = b.maps(&c, &d, guard)?;
        let squares = (us.len() as u64).saturating_mul(vs.len() as u64);
        guard.check("enumerating squares", squares)?;
        guard.check("enumerating fillers", squares.saturating_mul(fills.len().max(1) as u64))?;
        for u in &us {
            for v in &vs {
                if b.compose(m, u)? != b.compose(v, e)? {
                    continue;
                }
                let mut n = 0;
                for d in &fills {
                    if b.compose(d, e)? == *u && b.compose(m, d)? == *v {
                        n += 1;
                    }
                }
                if n != 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `M/1 = M'/1` at `x`.
    pub fn sets_agree(&self, x: &B::Object) -> bool {
        self.is_set(x) == self.is_dual_set(x)
    }

    /// Reciprocal stability on one cospan `p → X ← q`: the pullback of `p`
    /// along `q` (the leg into the domain of `q`) is in `E'` when `p ∈ E'`
    /// and `q ∈ M`, and in `E` when `p ∈ E` and `q ∈ M'`. Returns the failing
    /// clause.
    pub fn reciprocal_stability(&self, p: &B::Map, q: &B::Map) -> Result<Option<&'static str>> {
        let (_, leg, _) = self.backend.pullback(q, p)?;
        if (self.in_m)(q) && (self.in_e_dual)(p) && !(self.in_e_dual)(&leg) {
            return Ok(Some("pullback of an E'-map along an M-map left E'"));
        }
        if (self.in_m_dual)(q) && (self.in_e)(p) && !(self.in_e)(&leg) {
            return Ok(Some("pullback of an E-map along an M'-map left E"));
        }
        Ok(None)
    }

    /// `E` is stable under pullback along `M` on one cospan.
    pub fn e_is_m_stable_at(&self, e: &B::Map, m: &B::Map) -> Result<bool> {
        if !(self.in_e)(e) || !(self.in_m)(m) {
            return Ok(true);
        }
        let (_, leg, _) = self.backend.pullback(m, e)?;
        Ok((self.in_e)(&leg))
    }

    /// All instance invariants on the given sample maps. Cospans are the
    /// pairs of samples with a common codomain.
    pub fn invariant_violations(&self, objects: &[B::Object], maps: &[B::Map], guard: &SizeGuard) -> Result<Vec<String>> {
        let mut out = self.structural_violations(objects, maps)?;
        out.extend(self.orthogonality_violations(maps, guard)?);
        Ok(out)
    }

    /// `M/1 = M′/1`, the factorization laws and reciprocal stability; no
    /// hom-set enumeration.
    pub fn structural_violations(&self, objects: &[B::Object], maps: &[B::Map]) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for x in objects {
            if !self.sets_agree(x) {
                out.push(format!("{}: M/1 and M'/1 disagree at {x:?}", self.name));
            }
        }
        for f in maps {
            out.extend(self.factorization_violations(f)?.into_iter().map(|v| format!("{}: {v}", self.name)));
            for g in maps {
                if self.backend.cod(f) == self.backend.cod(g) {
                    if let Some(clause) = self.reciprocal_stability(f, g)? {
                        out.push(format!("{}: {clause}", self.name));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `E ⊥ M` and `E′ ⊥ M′` on the factors of every pair of samples.
    pub fn orthogonality_violations(&self, maps: &[B::Map], guard: &SizeGuard) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for f in maps {
            let (e, _) = (self.factorize_left)(f)?;
            let (_, m) = (self.factorize_right)(f)?;
            for g in maps {
                let (_, mg) = (self.factorize_left)(g)?;
                if !self.orthogonal(&e, &mg, guard)? {
                    out.push(format!("{}: left system not orthogonal on a sampled pair", self.name));
                }
                let (eg, _) = (self.factorize_right)(g)?;
                if !self.orthogonal(&eg, &m, guard)? {
                    out.push(format!("{}: right system not orthogonal on a sampled pair", self.name));
                }
            }
        }
        Ok(out)
    }
}

impl<B: LexBackend> std::fmt::Debug for BfcInstance<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BfcInstance").field("name", &self.name).finish_non_exhaustive()
    }
}

pub(crate) fn mismatch(what: &str) -> Error {
    Error::CodomainMismatch(what.to_string())
}
