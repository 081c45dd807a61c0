use std::sync::Arc;

use crate::category::{FiniteCategory, Mor, Obj};
use crate::error::{Error, Result, ValidationReport, Violation};

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Debug, Clone)]
pub struct FunctorData {
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.dom, &other.dom)
            && same_category(&self.cod, &other.cod)
    }
}

impl Eq for FunctorData {}

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FunctorData {
    /// Builds a functor after checking every functor law exhaustively.
    pub fn new(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self, ValidationReport> {
        let f = FunctorData { dom, cod, obj_map, mor_map };
        let violations = f.law_violations();
        if violations.is_empty() {
            Ok(f)
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Builds a functor without checking the laws; callers construct maps that
    /// are functorial by construction.
    pub fn new_unchecked(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Self {
        debug_assert_eq!(obj_map.len(), dom.num_objects());
        debug_assert_eq!(mor_map.len(), dom.num_morphisms());
        FunctorData { dom, cod, obj_map, mor_map }
    }

    pub fn law_violations(&self) -> Vec<Violation> {
        let (d, c) = (&*self.dom, &*self.cod);
        let mut out = Vec::new();
        if self.obj_map.len() != d.num_objects() {
            out.push(Violation::Other("object map has the wrong length".into()));
        }
        if self.mor_map.len() != d.num_morphisms() {
            out.push(Violation::Other("morphism map has the wrong length".into()));
        }
        if !out.is_empty() {
            return out;
        }
        if let Some(&bad) = self.obj_map.iter().find(|&&o| o >= c.num_objects()) {
            out.push(Violation::Other(format!("object image {bad} out of range")));
        }
        if let Some(&bad) = self.mor_map.iter().find(|&&m| m >= c.num_morphisms()) {
            out.push(Violation::Other(format!("morphism image {bad} out of range")));
        }
        if !out.is_empty() {
            return out;
        }
        for u in d.morphisms() {
            let image = self.mor_map[u];
            if c.src(image) != self.obj_map[d.src(u)] {
                out.push(Violation::SourceNotPreserved { morphism: d.morphism_name(u).into() });
            }
            if c.tgt(image) != self.obj_map[d.tgt(u)] {
                out.push(Violation::TargetNotPreserved { morphism: d.morphism_name(u).into() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in d.objects() {
            if self.mor_map[d.identity(o)] != c.identity(self.obj_map[o]) {
                out.push(Violation::IdentityNotPreserved { object: d.object_name(o).into() });
            }
        }
        for g in d.morphisms() {
            for &f in d.into_object(d.src(g)) {
                let lhs = self.mor_map[d.compose(g, f)];
                let rhs = c.compose(self.mor_map[g], self.mor_map[f]);
                if lhs != rhs {
                    out.push(Violation::CompositeNotPreserved {
                        g: d.morphism_name(g).into(),
                        f: d.morphism_name(f).into(),
                    });
                }
            }
        }
        out
    }

    pub fn dom(&self) -> &Arc<FiniteCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteCategory> {
        &self.cod
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj_map[a]
    }

    pub fn mor(&self, u: Mor) -> Mor {
        self.mor_map[u]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn identity(x: &Arc<FiniteCategory>) -> Self {
        FunctorData {
            dom: x.clone(),
            cod: x.clone(),
            obj_map: x.objects().collect(),
            mor_map: x.morphisms().collect(),
        }
    }

    /// The point `1 → X` selecting `x`.
    pub fn point(x: &Arc<FiniteCategory>, object: Obj) -> Self {
        FunctorData {
            dom: Arc::new(FiniteCategory::terminal()),
            cod: x.clone(),
            obj_map: vec![object],
            mor_map: vec![x.identity(object)],
        }
    }

    /// The unique functor `X → 1`.
    pub fn to_terminal(x: &Arc<FiniteCategory>) -> Self {
        Self::constant(x, &Arc::new(FiniteCategory::terminal()), 0)
    }

    /// The functor sending everything to `object` and its identity.
    pub fn constant(x: &Arc<FiniteCategory>, y: &Arc<FiniteCategory>, object: Obj) -> Self {
        FunctorData {
            dom: x.clone(),
            cod: y.clone(),
            obj_map: vec![object; x.num_objects()],
            mor_map: vec![y.identity(object); x.num_morphisms()],
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorData) -> Result<FunctorData> {
        if !same_category(first.cod(), self.dom()) {
            return Err(Error::CodomainMismatch(
                "cannot compose: codomain of the first functor is not the domain of the second".into(),
            ));
        }
        Ok(FunctorData {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        })
    }

    /// Same maps on the same underlying categories, with the categories compared
    /// structurally.
    pub fn same_as(&self, other: &FunctorData) -> bool {
        self == other
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        self.obj_map.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    /// Bijective on objects and morphisms, i.e. an isomorphism of categories.
    pub fn is_isomorphism(&self) -> bool {
        if self.dom.num_objects() != self.cod.num_objects()
            || self.dom.num_morphisms() != self.cod.num_morphisms()
        {
            return false;
        }
        let mut seen = vec![false; self.cod.num_morphisms()];
        self.is_injective_on_objects()
            && self.mor_map.iter().all(|&m| !std::mem::replace(&mut seen[m], true))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<FunctorData> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj_map = vec![0; self.cod.num_objects()];
        for (a, &b) in self.obj_map.iter().enumerate() {
            obj_map[b] = a;
        }
        let mut mor_map = vec![0; self.cod.num_morphisms()];
        for (a, &b) in self.mor_map.iter().enumerate() {
            mor_map[b] = a;
        }
        Some(FunctorData { dom: self.cod.clone(), cod: self.dom.clone(), obj_map, mor_map })
    }

    /// Replaces the codomain by a structurally equal category (same indices).
    pub fn with_codomain(&self, cod: Arc<FiniteCategory>) -> FunctorData {
        debug_assert!(same_category(&self.cod, &cod));
        FunctorData { cod, ..self.clone() }
    }

    pub fn with_domain(&self, dom: Arc<FiniteCategory>) -> FunctorData {
        debug_assert!(same_category(&self.dom, &dom));
        FunctorData { dom, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;

    fn two() -> Arc<FiniteCategory> {
        Arc::new(
            validate_category(
                &["0".into(), "1".into()],
                &[("a".into(), "0".into(), "1".into())],
                &[],
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_and_collapse_are_functors() {
        let x = two();
        let id = FunctorData::identity(&x);
        assert!(id.law_violations().is_empty());
        let bang = FunctorData::to_terminal(&x);
        assert!(bang.law_violations().is_empty());
    }

    #[test]
    fn swapping_objects_breaks_sources() {
        let x = two();
        let a = x.morphism_by_name("a").unwrap();
        let mut mor_map: Vec<Mor> = x.morphisms().collect();
        // identities follow the swapped objects, `a` is kept
        mor_map[x.identity(0)] = x.identity(1);
        mor_map[x.identity(1)] = x.identity(0);
        mor_map[a] = a;
        let err = FunctorData::new(x.clone(), x, vec![1, 0], mor_map).unwrap_err();
        assert!(err
            .violations
            .contains(&Violation::SourceNotPreserved { morphism: "a".into() }));
    }

    #[test]
    fn composition_of_points() {
        let x = two();
        let p = FunctorData::point(&x, 1);
        let bang = FunctorData::to_terminal(&x);
        let loop_ = bang.after(&p).unwrap();
        assert_eq!(loop_.obj_map(), &[0]);
        assert!(loop_.is_isomorphism());
    }
}
