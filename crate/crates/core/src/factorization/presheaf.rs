//! Finite-set-valued functors and their categories of elements.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{identity_name, FiniteCategory, Mor, Morphism, Obj};
use crate::error::{Result, ValidationReport, Violation};
use crate::functor::FunctorData;

/// A presheaf `X^op → FinSet`: `action[α]` maps `fiber(tgt α)` to `fiber(src α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FiniteCategory>,
    fibers: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

/// A copresheaf `X → FinSet`: `action[α]` maps `fiber(src α)` to `fiber(tgt α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copresheaf {
    base: Arc<FiniteCategory>,
    fibers: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

fn check_action(
    base: &FiniteCategory,
    fibers: &[Vec<String>],
    action: &[Vec<usize>],
    covariant: bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if fibers.len() != base.num_objects() || action.len() != base.num_morphisms() {
        out.push(Violation::Other("fiber or action table has the wrong length".into()));
        return out;
    }
    let from = |m: Mor| if covariant { base.src(m) } else { base.tgt(m) };
    let to = |m: Mor| if covariant { base.tgt(m) } else { base.src(m) };
    for m in base.morphisms() {
        let (a, b) = (from(m), to(m));
        if action[m].len() != fibers[a].len() || action[m].iter().any(|&s| s >= fibers[b].len()) {
            out.push(Violation::Other(format!(
                "action of `{}` is not a function between the right fibers",
                base.morphism_name(m)
            )));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for o in base.objects() {
        let id = base.identity(o);
        if action[id].iter().enumerate().any(|(i, &j)| i != j) {
            out.push(Violation::IdentityNotPreserved { object: base.object_name(o).into() });
        }
    }
    for g in base.morphisms() {
        for &f in base.into_object(base.src(g)) {
            let gf = base.compose(g, f);
            let ok = if covariant {
                (0..fibers[base.src(f)].len()).all(|s| action[gf][s] == action[g][action[f][s]])
            } else {
                (0..fibers[base.tgt(g)].len()).all(|s| action[gf][s] == action[f][action[g][s]])
            };
            if !ok {
                out.push(Violation::CompositeNotPreserved {
                    g: base.morphism_name(g).into(),
                    f: base.morphism_name(f).into(),
                });
            }
        }
    }
    out
}

/// Category of elements, shared by both variances. For a presheaf a morphism
/// `(α, s')` runs `(x, α·s') → (x', s')`; for a copresheaf `(α, s)` runs
/// `(x, s) → (x', α·s)`.
fn elements(
    base: &Arc<FiniteCategory>,
    fibers: &[Vec<String>],
    action: &[Vec<usize>],
    covariant: bool,
) -> (Arc<FiniteCategory>, FunctorData) {
    let mut objects = Vec::new();
    let mut obj_of = Vec::with_capacity(fibers.len());
    let mut proj_obj = Vec::new();
    for (x, fiber) in fibers.iter().enumerate() {
        let mut ids = Vec::with_capacity(fiber.len());
        for s in fiber {
            ids.push(objects.len());
            objects.push(format!("({}|{})", base.object_name(x), s));
            proj_obj.push(x);
        }
        obj_of.push(ids);
    }
    let mut morphisms = Vec::new();
    let mut parts = Vec::new();
    let mut key: HashMap<(Mor, usize), Mor> = HashMap::new();
    let mut identities = vec![0; objects.len()];
    for m in base.morphisms() {
        let (x, y) = (base.src(m), base.tgt(m));
        // the element that labels the morphism: target element for presheaves,
        // source element for copresheaves
        let labels = if covariant { fibers[x].len() } else { fibers[y].len() };
        for t in 0..labels {
            let (src, tgt) = if covariant {
                (obj_of[x][t], obj_of[y][action[m][t]])
            } else {
                (obj_of[x][action[m][t]], obj_of[y][t])
            };
            let name = if base.is_identity(m) {
                identities[src] = morphisms.len();
                identity_name(&objects[src])
            } else {
                let label = if covariant { &fibers[x][t] } else { &fibers[y][t] };
                format!("({}|{})", base.morphism_name(m), label)
            };
            key.insert((m, t), morphisms.len());
            parts.push((m, t));
            morphisms.push(Morphism { name, src, tgt });
        }
    }
    let cat = FiniteCategory::from_parts(objects, morphisms, identities, |g, f| {
        let (mg, tg) = parts[g];
        let (mf, tf) = parts[f];
        let label = if covariant { tf } else { tg };
        key[&(base.compose(mg, mf), label)]
    })
    .expect("category of elements");
    let cat = Arc::new(cat);
    let proj = FunctorData::new_unchecked(
        cat.clone(),
        base.clone(),
        proj_obj,
        parts.iter().map(|p| p.0).collect(),
    );
    (cat, proj)
}

macro_rules! set_valued_common {
    ($ty:ident, $covariant:expr) => {
        impl $ty {
            pub fn new(
                base: Arc<FiniteCategory>,
                fibers: Vec<Vec<String>>,
                action: Vec<Vec<usize>>,
            ) -> Result<Self, ValidationReport> {
                let mut violations = check_action(&base, &fibers, &action, $covariant);
                for (o, f) in fibers.iter().enumerate() {
                    let mut sorted: Vec<&String> = f.iter().collect();
                    sorted.sort();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        violations.push(Violation::Other(format!(
                            "fiber over `{}` has repeated labels",
                            base.object_name(o)
                        )));
                    }
                }
                if violations.is_empty() {
                    Ok($ty { base, fibers, action })
                } else {
                    Err(ValidationReport { violations })
                }
            }

            #[allow(dead_code)]
            pub(crate) fn new_unchecked(
                base: Arc<FiniteCategory>,
                fibers: Vec<Vec<String>>,
                action: Vec<Vec<usize>>,
            ) -> Self {
                debug_assert!(check_action(&base, &fibers, &action, $covariant).is_empty());
                $ty { base, fibers, action }
            }

            pub fn base(&self) -> &Arc<FiniteCategory> {
                &self.base
            }

            pub fn fiber(&self, x: Obj) -> &[String] {
                &self.fibers[x]
            }

            pub fn fibers(&self) -> &[Vec<String>] {
                &self.fibers
            }

            pub fn fiber_sizes(&self) -> Vec<usize> {
                self.fibers.iter().map(Vec::len).collect()
            }

            /// The function assigned to a morphism.
            pub fn act(&self, m: Mor) -> &[usize] {
                &self.action[m]
            }

            pub fn actions(&self) -> &[Vec<usize>] {
                &self.action
            }

            /// Category of elements with its projection to the base.
            pub fn elements(&self) -> (Arc<FiniteCategory>, FunctorData) {
                elements(&self.base, &self.fibers, &self.action, $covariant)
            }

            /// Index of the element object `(x, s)` in [`Self::elements`].
            pub fn element_object(&self, x: Obj, s: usize) -> Obj {
                self.fibers[..x].iter().map(Vec::len).sum::<usize>() + s
            }

            /// Index in [`Self::elements`] of the morphism over `m` labelled by
            /// element `t` (the target element for presheaves, the source
            /// element for copresheaves).
            pub fn element_morphism(&self, m: Mor, t: usize) -> Mor {
                let labelled = |k: Mor| {
                    let o = if $covariant { self.base.src(k) } else { self.base.tgt(k) };
                    self.fibers[o].len()
                };
                (0..m).map(labelled).sum::<usize>() + t
            }

            /// All fibers singletons.
            pub fn terminal(base: Arc<FiniteCategory>) -> Self {
                let fibers = vec![vec!["*".to_string()]; base.num_objects()];
                let action = vec![vec![0]; base.num_morphisms()];
                $ty { base, fibers, action }
            }
        }
    };
}

set_valued_common!(Presheaf, false);
set_valued_common!(Copresheaf, true);

impl Presheaf {
    /// The same data read as a copresheaf on the opposite category.
    pub fn into_opposite(self, base_op: Arc<FiniteCategory>) -> Copresheaf {
        Copresheaf { base: base_op, fibers: self.fibers, action: self.action }
    }
}

impl Copresheaf {
    pub fn into_opposite(self, base_op: Arc<FiniteCategory>) -> Presheaf {
        Presheaf { base: base_op, fibers: self.fibers, action: self.action }
    }
}
