//! Adjunctible maps and the right adjoint they induce on underlying categories.

use crate::category::{Mor, Obj};
use crate::construct::comma;
use crate::error::{Error, Result};
use crate::factorization::is_terminal_object;
use crate::functor::FunctorData;

use super::underlying::{underlying_functor, Underlying};

/// A universal arrow `⟨gy, ε_y: f(gy) → y⟩`: the terminal object of `f/y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalArrow {
    pub object: Obj,
    pub counit: Mor,
}

/// A terminal object of `f/y`: `(y, id_y)` when that is one, else the least.
pub fn universal_arrow(f: &FunctorData, y: Obj) -> Result<Option<UniversalArrow>> {
    let fy = comma(f, &FunctorData::point(f.cod(), y))?;
    let id = f.cod().identity(y);
    let preferred = f.dom().objects().filter(|&x| f.obj(x) == y).find_map(|x| fy.object_for(x, 0, id));
    Ok(preferred
        .filter(|&o| is_terminal_object(&fy.apex, o))
        .or_else(|| fy.apex.objects().find(|&o| is_terminal_object(&fy.apex, o)))
        .map(|o| UniversalArrow { object: fy.tags[o].0, counit: fy.tags[o].2 }))
}

pub fn is_adjunctible_at(f: &FunctorData, y: Obj) -> Result<bool> {
    Ok(universal_arrow(f, y)?.is_some())
}

/// The first object at which `f` is not adjunctible.
pub fn adjunctible_failure(f: &FunctorData) -> Result<Option<Obj>> {
    for y in f.cod().objects() {
        if !is_adjunctible_at(f, y)? {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// `f̄ ⊣ ḡ` on underlying categories, with the chosen universal arrows.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub left: FunctorData,
    pub right: FunctorData,
    pub universal: Vec<UniversalArrow>,
    /// `unit[x]: x → ḡf̄x` in `X̄`.
    pub unit: Vec<Mor>,
    /// `counit[y]: f̄ḡy → y` in `Ȳ`.
    pub counit: Vec<Mor>,
}

/// The unique `u: x → gy` in `X` with `ε_y ∘ f(u) = beta`.
fn transpose(f: &FunctorData, ua: &UniversalArrow, x: Obj, beta: Mor) -> Option<Mor> {
    let (xc, yc) = (f.dom(), f.cod());
    let mut hits = xc.hom(x, ua.object).filter(|&u| yc.compose(ua.counit, f.mor(u)) == beta);
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

/// Assembles `ḡ: Ȳ → X̄` from the universal arrows and verifies the
/// adjunction: the transposition is a bijection natural in both variables and
/// the triangle identities hold.
pub fn right_adjoint_underlying(f: &FunctorData, ux: &Underlying, uy: &Underlying) -> Result<Adjunction> {
    let (xc, yc) = (f.dom(), f.cod());
    let mut universal = Vec::with_capacity(yc.num_objects());
    for y in yc.objects() {
        universal.push(universal_arrow(f, y)?.ok_or_else(|| {
            Error::Precondition(format!("not adjunctible at `{}`: f/y has no final point", yc.object_name(y)))
        })?);
    }
    let g_obj: Vec<Obj> = universal.iter().map(|u| u.object).collect();
    let (xbar, ybar) = (&ux.category, &uy.category);
    // ḡ(β) for β: y → y' is the morphism (gy, β∘ε_y) → (gy', ε_y') of f/y'
    let mut g_mor = Vec::with_capacity(ybar.num_morphisms());
    for b in ybar.morphisms() {
        let beta = uy.connecting_morphism(b);
        let (y, y2) = (ybar.src(b), ybar.tgt(b));
        let u = transpose(f, &universal[y2], g_obj[y], yc.compose(beta, universal[y].counit))
            .ok_or_else(|| Error::Postcondition("ḡ is not defined on an arrow".into()))?;
        g_mor.push(ux.arrow_for_morphism(u));
    }
    let right = FunctorData::new(ybar.clone(), xbar.clone(), g_obj.clone(), g_mor)
        .map_err(|e| Error::Postcondition(format!("ḡ is not a functor: {e}")))?;
    let left = underlying_functor(f, ux, uy)?;
    let counit: Vec<Mor> = yc.objects().map(|y| uy.arrow_for_morphism(universal[y].counit)).collect();
    let phi = |x: Obj, y: Obj, b: Mor| -> Result<Mor> {
        let u = transpose(f, &universal[y], x, uy.connecting_morphism(b))
            .ok_or_else(|| Error::Postcondition("transposition is undefined".into()))?;
        Ok(ux.arrow_for_morphism(u))
    };
    let unit = xc
        .objects()
        .map(|x| phi(x, f.obj(x), ybar.identity(f.obj(x))))
        .collect::<Result<Vec<_>>>()?;
    let adj = Adjunction { left, right, universal: universal.clone(), unit, counit };

    let hom = |c: &crate::category::FiniteCategory, a: Obj, b: Obj| c.hom(a, b).collect::<Vec<_>>();
    for x in xc.objects() {
        for y in yc.objects() {
            let ys = hom(ybar, f.obj(x), y);
            let mut xs = hom(xbar, x, g_obj[y]);
            xs.sort_unstable();
            let mut images = ys.iter().map(|&b| phi(x, y, b)).collect::<Result<Vec<_>>>()?;
            images.sort_unstable();
            if images != xs {
                return Err(Error::Postcondition(format!(
                    "transposition is not a bijection at ({}, {})",
                    xc.object_name(x),
                    yc.object_name(y)
                )));
            }
            for &b in &ys {
                let t = phi(x, y, b)?;
                for &a in xbar.into_object(x) {
                    let x2 = xbar.src(a);
                    let lhs = phi(x2, y, ybar.compose(b, adj.left.mor(a)))?;
                    if lhs != xbar.compose(t, a) {
                        return Err(Error::Postcondition("transposition is not natural in x".into()));
                    }
                }
                for &c in ybar.out_of_object(y) {
                    let y2 = ybar.tgt(c);
                    let lhs = phi(x, y2, ybar.compose(c, b))?;
                    if lhs != xbar.compose(adj.right.mor(c), t) {
                        return Err(Error::Postcondition("transposition is not natural in y".into()));
                    }
                }
            }
        }
    }
    for x in xc.objects() {
        let fx = f.obj(x);
        if ybar.compose(adj.counit[fx], adj.left.mor(adj.unit[x])) != ybar.identity(fx) {
            return Err(Error::Postcondition("triangle identity ε f̄ ∘ f̄ η fails".into()));
        }
    }
    for y in yc.objects() {
        let gy = g_obj[y];
        if xbar.compose(adj.right.mor(adj.counit[y]), adj.unit[gy]) != xbar.identity(gy) {
            return Err(Error::Postcondition("triangle identity ḡ ε ∘ η ḡ fails".into()));
        }
    }
    Ok(adj)
}
