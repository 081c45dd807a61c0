//! Brute-force oracles and generators shared by the integration tests. The
//! oracles use only the raw tables of a category, never the library's
//! constructions.
#![allow(dead_code)]

use std::sync::Arc;

use balanced_core::construct::{coproduct, product};
use balanced_core::samples::{by_name, cyclic, preorder};
use balanced_core::search::FunctorSearch;
use balanced_core::{FiniteCategory, FunctorData, Mor, Morphism, Obj, SizeGuard};
use proptest::prelude::*;

pub const SAMPLE_NAMES: [&str; 12] = [
    "arrow", "chain3", "discrete2", "cyclic2", "cyclic3", "chaotic2", "idempotent", "parallel", "span", "cospan",
    "chain1", "discrete0",
];

pub fn samples() -> Vec<Arc<FiniteCategory>> {
    SAMPLE_NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}

/// Components of the graph on `n` vertices by depth-first search.
pub fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

pub fn pi0_oracle(x: &FiniteCategory) -> usize {
    let edges: Vec<_> = x.morphisms().map(|m| (x.src(m), x.tgt(m))).collect();
    components(x.num_objects(), &edges)
}

/// `|π0(x\p)|`: vertices `(a, α: x → p a)`, edges `u: a → a'` with
/// `p u ∘ α = α'`.
pub fn coslice_components_oracle(p: &FunctorData, x: Obj) -> usize {
    let (a, c) = (p.dom(), p.cod());
    let mut vertices = Vec::new();
    for o in a.objects() {
        for alpha in c.morphisms() {
            if c.src(alpha) == x && c.tgt(alpha) == p.obj(o) {
                vertices.push((o, alpha));
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &(o, alpha)) in vertices.iter().enumerate() {
        for u in a.morphisms().filter(|&u| a.src(u) == o) {
            let target = (a.tgt(u), c.compose(p.mor(u), alpha));
            let j = vertices.iter().position(|&v| v == target).unwrap();
            edges.push((i, j));
        }
    }
    components(vertices.len(), &edges)
}

/// `|π0(p/x)|`, dually.
pub fn slice_components_oracle(p: &FunctorData, x: Obj) -> usize {
    let (a, c) = (p.dom(), p.cod());
    let mut vertices = Vec::new();
    for o in a.objects() {
        for alpha in c.morphisms() {
            if c.tgt(alpha) == x && c.src(alpha) == p.obj(o) {
                vertices.push((o, alpha));
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &(o, alpha)) in vertices.iter().enumerate() {
        for u in a.morphisms().filter(|&u| a.tgt(u) == o) {
            let source = (a.src(u), c.compose(alpha, p.mor(u)));
            let j = vertices.iter().position(|&v| v == source).unwrap();
            edges.push((j, i));
        }
    }
    components(vertices.len(), &edges)
}

pub fn is_final_oracle(p: &FunctorData) -> bool {
    p.cod().objects().all(|x| coslice_components_oracle(p, x) == 1)
}

pub fn is_initial_oracle(p: &FunctorData) -> bool {
    p.cod().objects().all(|x| slice_components_oracle(p, x) == 1)
}

/// Number of `u` with `cod u = a` (or `dom u = a`) and `m u = β`.
fn lift_count(m: &FunctorData, a: Obj, beta: Mor, at_target: bool) -> usize {
    let d = m.dom();
    d.morphisms()
        .filter(|&u| m.mor(u) == beta && if at_target { d.tgt(u) == a } else { d.src(u) == a })
        .count()
}

pub fn is_df_oracle(m: &FunctorData) -> bool {
    let (d, c) = (m.dom(), m.cod());
    d.objects().all(|a| {
        c.morphisms().filter(|&b| c.tgt(b) == m.obj(a)).all(|b| lift_count(m, a, b, true) == 1)
    })
}

pub fn is_dof_oracle(m: &FunctorData) -> bool {
    let (d, c) = (m.dom(), m.cod());
    d.objects().all(|a| {
        c.morphisms().filter(|&b| c.src(b) == m.obj(a)).all(|b| lift_count(m, a, b, false) == 1)
    })
}

/// An isomorphic copy of `x` with objects and morphisms listed in reverse and
/// renamed, with the isomorphism from `x`.
pub fn reversed_copy(x: &Arc<FiniteCategory>) -> (Arc<FiniteCategory>, FunctorData) {
    let (n, k) = (x.num_objects(), x.num_morphisms());
    let obj = |o: Obj| n - 1 - o;
    let mor = |m: Mor| k - 1 - m;
    let objects = (0..n).map(|o| format!("r{}", x.object_name(obj(o)))).collect();
    let morphisms = (0..k)
        .map(|m| {
            let old = mor(m);
            let name = if x.is_identity(old) {
                format!("id:r{}", x.object_name(x.src(old)))
            } else {
                format!("r{}", x.morphism_name(old))
            };
            Morphism { name, src: obj(x.src(old)), tgt: obj(x.tgt(old)) }
        })
        .collect();
    let identities = (0..n).map(|o| mor(x.identity(obj(o)))).collect();
    let copy = Arc::new(FiniteCategory::from_parts(objects, morphisms, identities, |g, f| mor(x.compose(mor(g), mor(f)))).unwrap());
    let iso = FunctorData::new(x.clone(), copy.clone(), (0..n).map(obj).collect(), (0..k).map(mor).collect()).unwrap();
    (copy, iso)
}

pub fn all_functors(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Vec<FunctorData> {
    FunctorSearch::new(a, b).collect(&SizeGuard::default()).unwrap()
}

/// A random finite poset category on up to `max` elements: a random subset of
/// the pairs `i < j`, transitively closed.
pub fn arb_poset(max: usize) -> impl Strategy<Value = Arc<FiniteCategory>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut leq = vec![vec![false; n]; n];
            for i in 0..n {
                leq[i][i] = true;
                for j in (i + 1)..n {
                    leq[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if leq[i][k] && leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
            let names = (0..n).map(|i| format!("p{i}")).collect();
            Arc::new(preorder(names, |i, j| leq[i][j]).unwrap())
        })
    })
}

/// Small categories from associativity-safe families: posets, cyclic groups,
/// named samples, and binary products and coproducts of these.
pub fn arb_category() -> impl Strategy<Value = Arc<FiniteCategory>> {
    let leaf = prop_oneof![
        arb_poset(3),
        (1usize..=3).prop_map(|n| Arc::new(cyclic(n))),
        proptest::sample::select(SAMPLE_NAMES.to_vec()).prop_map(|n| by_name(n).unwrap()),
    ];
    let combined = (leaf.clone(), leaf.clone(), any::<bool>()).prop_filter_map("too large", |(a, b, prod)| {
        let c = if prod { product(&a, &b).apex } else { Arc::new(coproduct(&a, &b)) };
        (c.num_objects() <= 5 && c.num_morphisms() <= 30).then_some(c)
    });
    prop_oneof![3 => leaf, 1 => combined]
}

/// A random functor between two generated categories, chosen among all of
/// them; `None` when there are none.
pub fn arb_functor() -> impl Strategy<Value = FunctorData> {
    (arb_category(), arb_category(), any::<prop::sample::Index>()).prop_filter_map("no functors", |(a, b, i)| {
        let guard = SizeGuard::new(200_000);
        let all = FunctorSearch::new(&a, &b).collect(&guard).ok()?;
        (!all.is_empty()).then(|| all[i.index(all.len())].clone())
    })
}
