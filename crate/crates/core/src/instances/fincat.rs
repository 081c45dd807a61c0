//! Finite categories and functors as a backend, with the comprehensive
//! factorizations.

use std::sync::Arc;

use super::bfc::{mismatch, BfcInstance, LexBackend};
use crate::category::FiniteCategory;
use crate::construct::pullback;
use crate::error::{Error, Result};
use crate::factorization::{
    factorize_left, factorize_right, is_discrete_fibration, is_discrete_opfibration, is_final, is_initial,
};
use crate::functor::FunctorData;
use crate::search::{FunctorSearch, SizeGuard};

#[derive(Debug, Clone, Default)]
pub struct FinCat;

impl LexBackend for FinCat {
    type Object = Arc<FiniteCategory>;
    type Map = FunctorData;

    fn name(&self) -> &'static str {
        "fincat"
    }

    fn validate_object(&self, o: &Self::Object) -> Result<()> {
        match o.axiom_violations() {
            v if v.is_empty() => Ok(()),
            violations => Err(Error::Invalid(crate::error::ValidationReport { violations })),
        }
    }

    fn validate_map(&self, f: &Self::Map) -> Result<()> {
        match f.law_violations() {
            v if v.is_empty() => Ok(()),
            violations => Err(Error::Invalid(crate::error::ValidationReport { violations })),
        }
    }

    fn dom(&self, f: &Self::Map) -> Self::Object {
        f.dom().clone()
    }

    fn cod(&self, f: &Self::Map) -> Self::Object {
        f.cod().clone()
    }

    fn identity(&self, o: &Self::Object) -> Self::Map {
        FunctorData::identity(o)
    }

    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map> {
        if **f.cod() != **g.dom() {
            return Err(mismatch("functors are not composable"));
        }
        g.with_domain(f.cod().clone()).after(f)
    }

    fn terminal(&self) -> Self::Object {
        Arc::new(FiniteCategory::terminal())
    }

    fn to_terminal(&self, o: &Self::Object) -> Self::Map {
        FunctorData::to_terminal(o)
    }

    fn pullback(&self, f: &Self::Map, g: &Self::Map) -> Result<(Self::Object, Self::Map, Self::Map)> {
        let pb = pullback(f, g)?;
        Ok((pb.apex, pb.left, pb.right))
    }

    fn maps(&self, a: &Self::Object, b: &Self::Object, guard: &SizeGuard) -> Result<Vec<Self::Map>> {
        FunctorSearch::new(a, b).collect(guard)
    }

    fn is_iso(&self, f: &Self::Map) -> bool {
        f.is_isomorphism()
    }
}

/// `(final, discrete fibration)` and `(initial, discrete opfibration)`.
pub fn fincat_bfc() -> BfcInstance<FinCat> {
    BfcInstance {
        name: "fincat".into(),
        backend: Arc::new(FinCat),
        in_e: Arc::new(|f| is_final(f).holds()),
        in_m: Arc::new(|f| is_discrete_fibration(f).holds()),
        in_e_dual: Arc::new(|f| is_initial(f).holds()),
        in_m_dual: Arc::new(|f| is_discrete_opfibration(f).holds()),
        factorize_left: Arc::new(|f| {
            let r = factorize_left(f)?;
            Ok((r.e, r.m))
        }),
        factorize_right: Arc::new(|f| {
            let r = factorize_right(f)?;
            Ok((r.e, r.m))
        }),
    }
}
