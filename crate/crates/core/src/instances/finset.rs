//! Finite sets with the (surjection, injection) factorization on both sides.

use std::sync::Arc;


use super::bfc::{mismatch, BfcInstance, LexBackend};
use super::pos::enumerate_functions;
use crate::error::{Error, Result};
use crate::search::SizeGuard;

/// A function `{0..dom} → {0..cod}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    pub dom: usize,
    pub cod: usize,
    pub map: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: usize, cod: usize, map: Vec<usize>) -> Result<Self> {
        let f = FinMap { dom, cod, map };
        FinSet.validate_map(&f)?;
        Ok(f)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &b in &self.map {
            hit[b] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }
}

#[derive(Debug, Clone, Default)]
pub struct FinSet;

impl LexBackend for FinSet {
    type Object = usize;
    type Map = FinMap;

    fn name(&self) -> &'static str {
        "finset"
    }

    fn validate_object(&self, _: &usize) -> Result<()> {
        Ok(())
    }

    fn validate_map(&self, f: &FinMap) -> Result<()> {
        if f.map.len() != f.dom || f.map.iter().any(|&b| b >= f.cod) {
            return Err(Error::Precondition("not a function between the given sets".into()));
        }
        Ok(())
    }

    fn dom(&self, f: &FinMap) -> usize {
        f.dom
    }

    fn cod(&self, f: &FinMap) -> usize {
        f.cod
    }

    fn identity(&self, o: &usize) -> FinMap {
        FinMap { dom: *o, cod: *o, map: (0..*o).collect() }
    }

    fn compose(&self, g: &FinMap, f: &FinMap) -> Result<FinMap> {
        if f.cod != g.dom {
            return Err(mismatch("functions are not composable"));
        }
        Ok(FinMap { dom: f.dom, cod: g.cod, map: f.map.iter().map(|&b| g.map[b]).collect() })
    }

    fn terminal(&self) -> usize {
        1
    }

    fn to_terminal(&self, o: &usize) -> FinMap {
        FinMap { dom: *o, cod: 1, map: vec![0; *o] }
    }

    /// Pairs `(a, b)` with `f a = g b` in lexicographic order.
    fn pullback(&self, f: &FinMap, g: &FinMap) -> Result<(usize, FinMap, FinMap)> {
        if f.cod != g.cod {
            return Err(mismatch("functions have different codomains"));
        }
        let pairs: Vec<(usize, usize)> = (0..f.dom)
            .flat_map(|a| (0..g.dom).map(move |b| (a, b)))
            .filter(|&(a, b)| f.map[a] == g.map[b])
            .collect();
        let n = pairs.len();
        Ok((
            n,
            FinMap { dom: n, cod: f.dom, map: pairs.iter().map(|p| p.0).collect() },
            FinMap { dom: n, cod: g.dom, map: pairs.iter().map(|p| p.1).collect() },
        ))
    }

    fn maps(&self, a: &usize, b: &usize, guard: &SizeGuard) -> Result<Vec<FinMap>> {
        guard.check("enumerating functions", (*b as u64).checked_pow(*a as u32).unwrap_or(u64::MAX))?;
        let mut out = Vec::new();
        let mut map = vec![0; *a];
        enumerate_functions(&mut map, 0, *b, &mut |m| out.push(FinMap { dom: *a, cod: *b, map: m.to_vec() }));
        Ok(out)
    }

    fn is_iso(&self, f: &FinMap) -> bool {
        f.dom == f.cod && f.is_injective()
    }
}

/// `f = m ∘ e` through the image, listed in increasing order.
pub fn image_factorization(f: &FinMap) -> (FinMap, FinMap) {
    let mut image = f.map.clone();
    image.sort_unstable();
    image.dedup();
    let e = FinMap {
        dom: f.dom,
        cod: image.len(),
        map: f.map.iter().map(|b| image.binary_search(b).expect("in image")).collect(),
    };
    let m = FinMap { dom: image.len(), cod: f.cod, map: image };
    (e, m)
}

pub fn finset_epimono_bfc() -> BfcInstance<FinSet> {
    BfcInstance {
        name: "finset".into(),
        backend: Arc::new(FinSet),
        in_e: Arc::new(FinMap::is_surjective),
        in_m: Arc::new(FinMap::is_injective),
        in_e_dual: Arc::new(FinMap::is_surjective),
        in_m_dual: Arc::new(FinMap::is_injective),
        factorize_left: Arc::new(|f| Ok(image_factorization(f))),
        factorize_right: Arc::new(|f| Ok(image_factorization(f))),
    }
}
