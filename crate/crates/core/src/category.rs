//! Finite categories stored as explicit composition tables.
//!
//! Objects and morphisms are addressed by dense indices; the string names
//! are kept for I/O and for deterministic naming of derived categories.
//! Identities are ordinary morphisms named `id:<object>`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result, ValidationReport, Violation};

pub type Obj = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Mor>,
    incoming: Vec<Vec<Mor>>,
    outgoing: Vec<Vec<Mor>>,
    // position of each morphism inside `incoming[tgt]`
    slot: Vec<usize>,
    // table[g][slot[f]] = g∘f, for every f with tgt f = src g
    table: Vec<Vec<u32>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

/// Name of the synthesized identity on an object.
pub fn identity_name(object: &str) -> String {
    format!("id:{object}")
}

impl FiniteCategory {
    /// Assembles a category from already-consistent parts. The composition
    /// callback is queried once for every composable pair; associativity and
    /// identity laws are not re-checked here (see [`FiniteCategory::axiom_violations`]).
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self> {
        let n = objects.len();
        let mut violations = Vec::new();
        let mut obj_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                violations.push(Violation::DuplicateObject(o.clone()));
            }
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if mor_index.insert(m.name.clone(), i).is_some() {
                violations.push(Violation::DuplicateMorphism(m.name.clone()));
            }
            if m.src >= n || m.tgt >= n {
                violations.push(Violation::Other(format!("morphism `{}` has dangling endpoints", m.name)));
            }
        }
        if identities.len() != n {
            violations.push(Violation::Other("identity table has the wrong length".into()));
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations }.into());
        }
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        let mut slot = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            slot[i] = incoming[m.tgt].len();
            incoming[m.tgt].push(i);
            outgoing[m.src].push(i);
        }
        let mut table = Vec::with_capacity(morphisms.len());
        for g in 0..morphisms.len() {
            let src = morphisms[g].src;
            let row: Vec<u32> = incoming[src].iter().map(|&f| compose(g, f) as u32).collect();
            table.push(row);
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identities,
            incoming,
            outgoing,
            slot,
            table,
            obj_index,
            mor_index,
        })
    }

    /// The terminal category: one object `*` and its identity.
    pub fn terminal() -> Self {
        Self::discrete(vec!["*".to_string()])
    }

    /// A category with the given objects and identities only.
    pub fn discrete(objects: Vec<String>) -> Self {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { name: identity_name(o), src: i, tgt: i })
            .collect();
        let identities = (0..objects.len()).collect();
        Self::from_parts(objects, morphisms, identities, |g, _| g).expect("discrete category")
    }

    pub fn empty() -> Self {
        Self::discrete(Vec::new())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identities[self.src(m)] == m
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn object_by_name(&self, name: &str) -> Result<Obj> {
        self.object_index(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_by_name(&self, name: &str) -> Result<Mor> {
        self.morphism_index(name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    /// Morphisms with the given target.
    pub fn into_object(&self, o: Obj) -> &[Mor] {
        &self.incoming[o]
    }

    /// Morphisms with the given source.
    pub fn out_of_object(&self, o: Obj) -> &[Mor] {
        &self.outgoing[o]
    }

    /// Morphisms `x → y`.
    pub fn hom(&self, x: Obj, y: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.outgoing[x].iter().copied().filter(move |&m| self.morphisms[m].tgt == y)
    }

    pub fn hom_count(&self, x: Obj, y: Obj) -> usize {
        self.hom(x, y).count()
    }

    /// `g ∘ f`, or `None` when `tgt f != src g`.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.morphisms[f].tgt != self.morphisms[g].src {
            return None;
        }
        let r = self.table[g][self.slot[f]];
        (r != NONE).then_some(r as Mor)
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "morphisms `{}` and `{}` are not composable",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    /// Non-identity morphisms, in index order.
    pub fn proper_morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        self.morphisms().filter(move |&m| !self.is_identity(m))
    }

    /// Checks identity and associativity laws exhaustively.
    pub fn axiom_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for f in self.morphisms() {
            let m = &self.morphisms[f];
            let left = self.compose(self.identities[m.tgt], f);
            if left != f {
                out.push(Violation::IdentityLaw {
                    morphism: m.name.clone(),
                    side: "left",
                    got: self.morphism_name(left).to_string(),
                });
            }
            let right = self.compose(f, self.identities[m.src]);
            if right != f {
                out.push(Violation::IdentityLaw {
                    morphism: m.name.clone(),
                    side: "right",
                    got: self.morphism_name(right).to_string(),
                });
            }
        }
        for g in self.morphisms() {
            for &f in &self.incoming[self.src(g)] {
                let gf = self.compose(g, f);
                if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                    out.push(Violation::WrongComposite {
                        g: self.morphism_name(g).into(),
                        f: self.morphism_name(f).into(),
                        result: self.morphism_name(gf).into(),
                    });
                    continue;
                }
                for &h in &self.outgoing[self.tgt(g)] {
                    let left = self.compose(h, gf);
                    let right = self.compose(self.compose(h, g), f);
                    if left != right {
                        out.push(Violation::Associativity {
                            h: self.morphism_name(h).into(),
                            g: self.morphism_name(g).into(),
                            f: self.morphism_name(f).into(),
                            left: self.morphism_name(left).into(),
                            right: self.morphism_name(right).into(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Composable pairs `(g, f)` of non-identity morphisms with their composite,
    /// in a stable order.
    pub fn proper_composites(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for g in self.proper_morphisms() {
            for &f in &self.incoming[self.src(g)] {
                if !self.is_identity(f) {
                    out.push((g, f, self.compose(g, f)));
                }
            }
        }
        out
    }

    /// Whether `m` is invertible.
    pub fn is_isomorphism(&self, m: Mor) -> bool {
        let (s, t) = (self.src(m), self.tgt(m));
        self.hom(t, s).any(|n| {
            self.compose(n, m) == self.identities[s] && self.compose(m, n) == self.identities[t]
        })
    }

    /// Per-object profile used to prune isomorphism search: number of loops,
    /// out-going and in-coming morphisms.
    pub(crate) fn object_profile(&self, o: Obj) -> (usize, usize, usize) {
        (self.hom_count(o, o), self.outgoing[o].len(), self.incoming[o].len())
    }
}

/// Assembles and validates a category from named data, synthesizing identities.
///
/// `compose` lists `(g, f, g∘f)` triples by name; entries involving identities
/// are optional and, when present, must agree with the identity laws.
pub fn validate_category(
    objects: &[String],
    morphisms: &[(String, String, String)],
    compose: &[(String, String, String)],
) -> Result<FiniteCategory, ValidationReport> {
    let mut violations = Vec::new();
    let mut obj_index: HashMap<&str, Obj> = HashMap::new();
    for (i, o) in objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), i).is_some() {
            violations.push(Violation::DuplicateObject(o.clone()));
        }
    }
    let mut all: Vec<Morphism> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism { name: identity_name(o), src: i, tgt: i })
        .collect();
    let mut mor_index: HashMap<String, Mor> =
        all.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
    for (id, src, tgt) in morphisms {
        if id.starts_with("id:") {
            violations.push(Violation::ReservedIdentifier(id.clone()));
            continue;
        }
        let s = obj_index.get(src.as_str()).copied();
        let t = obj_index.get(tgt.as_str()).copied();
        if s.is_none() {
            violations.push(Violation::UnknownObject { context: format!("src of `{id}`"), name: src.clone() });
        }
        if t.is_none() {
            violations.push(Violation::UnknownObject { context: format!("tgt of `{id}`"), name: tgt.clone() });
        }
        let (Some(s), Some(t)) = (s, t) else { continue };
        if mor_index.contains_key(id) {
            violations.push(Violation::DuplicateMorphism(id.clone()));
            continue;
        }
        mor_index.insert(id.clone(), all.len());
        all.push(Morphism { name: id.clone(), src: s, tgt: t });
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }
    let n = objects.len();
    let is_id = |m: Mor| m < n;
    let mut table: BTreeMap<(Mor, Mor), Mor> = BTreeMap::new();
    for (g, f, r) in compose {
        let lookup = |name: &String, role: &str, violations: &mut Vec<Violation>| {
            let found = mor_index.get(name).copied();
            if found.is_none() {
                violations.push(Violation::UnknownMorphism {
                    context: format!("compose entry ({g}, {f}) {role}"),
                    name: name.clone(),
                });
            }
            found
        };
        let (gi, fi, ri) = (
            lookup(g, "g", &mut violations),
            lookup(f, "f", &mut violations),
            lookup(r, "result", &mut violations),
        );
        let (Some(gi), Some(fi), Some(ri)) = (gi, fi, ri) else { continue };
        if all[fi].tgt != all[gi].src {
            violations.push(Violation::NotComposable { g: g.clone(), f: f.clone() });
            continue;
        }
        if all[ri].src != all[fi].src || all[ri].tgt != all[gi].tgt {
            violations.push(Violation::WrongComposite { g: g.clone(), f: f.clone(), result: r.clone() });
            continue;
        }
        if is_id(gi) && ri != fi {
            violations.push(Violation::IdentityLaw { morphism: f.clone(), side: "left", got: r.clone() });
            continue;
        }
        if is_id(fi) && ri != gi {
            violations.push(Violation::IdentityLaw { morphism: g.clone(), side: "right", got: r.clone() });
            continue;
        }
        if let Some(&prev) = table.get(&(gi, fi)) {
            if prev != ri {
                violations.push(Violation::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    first: all[prev].name.clone(),
                    second: r.clone(),
                });
            }
            continue;
        }
        table.insert((gi, fi), ri);
    }
    for g in 0..all.len() {
        for f in 0..all.len() {
            if all[f].tgt != all[g].src {
                continue;
            }
            if is_id(g) {
                table.insert((g, f), f);
            } else if is_id(f) {
                table.insert((g, f), g);
            } else if !table.contains_key(&(g, f)) {
                violations.push(Violation::MissingComposite {
                    g: all[g].name.clone(),
                    f: all[f].name.clone(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }
    let identities = (0..n).collect();
    let cat = FiniteCategory::from_parts(objects.to_vec(), all, identities, |g, f| table[&(g, f)])
        .map_err(|e| match e {
            Error::Invalid(r) => r,
            other => ValidationReport { violations: vec![Violation::Other(other.to_string())] },
        })?;
    let axioms = cat.axiom_violations();
    if axioms.is_empty() {
        Ok(cat)
    } else {
        Err(ValidationReport { violations: axioms })
    }
}
