//! The two comprehensive factorizations: (final, discrete fibration) and
//! (initial, discrete opfibration).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::predicates::{coslice_components, is_discrete_fibration, is_discrete_opfibration, is_final, is_initial};
use super::presheaf::{Copresheaf, Presheaf};
use crate::category::FiniteCategory;
use crate::construct::{opposite, opposite_functor, opposite_functor_between};
use crate::error::{Error, Result};
use crate::functor::FunctorData;
use crate::search::{find_isomorphism_with, FunctorSearch, SizeGuard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Final functors and discrete fibrations.
    Left,
    /// Initial functors and discrete opfibrations.
    Right,
}

/// `f = m ∘ e` with `e: P → mid` and `m: mid → X`.
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub e: FunctorData,
    pub mid: Arc<FiniteCategory>,
    pub m: FunctorData,
    pub system: System,
}

/// Presheaf `x ↦ π0(x\f)` acting by precomposition, together with the class
/// of `(a, id_{f a})` for every object `a` of the domain.
fn reflection_data(f: &FunctorData) -> (Presheaf, Vec<usize>) {
    let (p, x) = (f.dom(), f.cod());
    let comps: Vec<_> = x.objects().map(|o| coslice_components(f, o)).collect();
    let fibers = comps
        .iter()
        .map(|c| {
            c.quotient
                .representatives
                .iter()
                .map(|&r| {
                    let (a, alpha) = c.objects[r];
                    format!("[{}|{}]", p.object_name(a), x.morphism_name(alpha))
                })
                .collect()
        })
        .collect();
    // β: x' → x sends the class of (a, α: x → f a) to the class of (a, α∘β)
    let action = x
        .morphisms()
        .map(|beta| {
            let (src, tgt) = (x.src(beta), x.tgt(beta));
            comps[tgt]
                .quotient
                .representatives
                .iter()
                .map(|&r| {
                    let (a, alpha) = comps[tgt].objects[r];
                    comps[src].class_of(a, x.compose(alpha, beta))
                })
                .collect()
        })
        .collect();
    let base_class = p.objects().map(|a| comps[f.obj(a)].class_of(a, x.identity(f.obj(a)))).collect();
    (Presheaf::new_unchecked(x.clone(), fibers, action), base_class)
}

/// The discrete fibration reflecting `q`, as a presheaf: `fiber(x) = π0(x\q)`.
pub fn reflect_df(q: &FunctorData) -> Presheaf {
    reflection_data(q).0
}

/// The discrete opfibration reflecting `q`: `fiber(x) = π0(q/x)`.
pub fn reflect_dof(q: &FunctorData) -> Copresheaf {
    reflect_df(&opposite_functor(q)).into_opposite(q.cod().clone())
}

/// Comprehensive factorization `f = m ∘ e` with `e` final and `m` a discrete
/// fibration; `mid` is the category of elements of [`reflect_df`].
pub fn factorize_left(f: &FunctorData) -> Result<FactorizationResult> {
    let (presheaf, base_class) = reflection_data(f);
    let (mid, m) = presheaf.elements();
    let p = f.dom();
    let obj_map = p.objects().map(|a| presheaf.element_object(f.obj(a), base_class[a])).collect();
    let mor_map = p
        .morphisms()
        .map(|u| presheaf.element_morphism(f.mor(u), base_class[p.tgt(u)]))
        .collect();
    let e = FunctorData::new_unchecked(p.clone(), mid.clone(), obj_map, mor_map);
    let result = FactorizationResult { e, mid, m, system: System::Left };
    check_postconditions(f, &result)?;
    Ok(result)
}

/// Comprehensive factorization `f = m ∘ e` with `e` initial and `m` a discrete
/// opfibration, obtained by dualizing the left factorization of `f^op`.
pub fn factorize_right(f: &FunctorData) -> Result<FactorizationResult> {
    let dual = factorize_left(&opposite_functor(f))?;
    let mid = Arc::new(opposite(&dual.mid));
    let e = opposite_functor_between(&dual.e, f.dom(), &mid);
    let m = opposite_functor_between(&dual.m, &mid, f.cod());
    let result = FactorizationResult { e, mid, m, system: System::Right };
    check_postconditions(f, &result)?;
    Ok(result)
}

pub fn factorize(f: &FunctorData, system: System) -> Result<FactorizationResult> {
    match system {
        System::Left => factorize_left(f),
        System::Right => factorize_right(f),
    }
}

/// Verifies `m ∘ e = f` and the class memberships of both legs.
pub fn check_postconditions(f: &FunctorData, r: &FactorizationResult) -> Result<()> {
    let composite = r.m.after(&r.e)?;
    if composite != *f {
        return Err(Error::Postcondition("m ∘ e differs from the input functor".into()));
    }
    let (left_ok, right_ok) = match r.system {
        System::Left => (is_final(&r.e).holds(), is_discrete_fibration(&r.m).holds()),
        System::Right => (is_initial(&r.e).holds(), is_discrete_opfibration(&r.m).holds()),
    };
    if !left_ok {
        return Err(Error::Postcondition("left factor is not in the left class".into()));
    }
    if !right_ok {
        return Err(Error::Postcondition("right factor is not in the right class".into()));
    }
    Ok(())
}

/// An isomorphism `φ: a.mid → b.mid` with `φ ∘ a.e = b.e` and `b.m ∘ φ = a.m`.
pub fn factorizations_isomorphic(
    a: &FactorizationResult,
    b: &FactorizationResult,
    guard: &SizeGuard,
) -> Result<Option<FunctorData>> {
    let search = match FunctorSearch::new(&a.mid, &b.mid).over(&b.m, &a.m).extending(&a.e, &b.e) {
        Some(s) => s,
        None => return Ok(None),
    };
    find_isomorphism_with(search, guard)
}
