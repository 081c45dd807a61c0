mod common;

use std::sync::Arc;

use balanced_core::components::components_functor;
use balanced_core::construct::*;
use balanced_core::factorization::{is_final, is_initial};
use balanced_core::samples::{arrow, by_name, chain, cyclic, discrete, parallel_pair};
use balanced_core::search::{are_isomorphic, find_isomorphism};
use balanced_core::{pi0, Error, FiniteCategory, FunctorData, SizeGuard};
use common::*;

fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
    Arc::new(c)
}

fn iso(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    are_isomorphic(a, b, &SizeGuard::default()).unwrap()
}

#[test]
fn comma_examples() {
    let two = arc(arrow());
    let sl = comma(&FunctorData::identity(&two), &FunctorData::point(&two, 1)).unwrap();
    assert!(iso(&sl.apex, &two));
    let names: Vec<_> = sl.tags.iter().map(|&(_, _, alpha)| two.morphism_name(alpha)).collect();
    assert_eq!(names, ["a", "id:1"]);
    let co = comma(&FunctorData::point(&two, 0), &FunctorData::identity(&two)).unwrap();
    assert!(iso(&co.apex, &two));
    let one = arc(FiniteCategory::terminal());
    let t = comma(&FunctorData::identity(&one), &FunctorData::identity(&one)).unwrap();
    assert_eq!((t.apex.num_objects(), t.apex.num_morphisms()), (1, 1));
}

#[test]
fn comma_tags_connect_the_projections() {
    for x in samples() {
        for a in x.objects() {
            for (c, p, q) in [
                (slice(&x, a), FunctorData::identity(&x), FunctorData::point(&x, a)),
                (coslice(&x, a), FunctorData::point(&x, a), FunctorData::identity(&x)),
            ] {
                assert!(c.apex.axiom_violations().is_empty());
                for o in c.apex.objects() {
                    let (l, r, alpha) = c.tags[o];
                    assert_eq!((c.proj_left.obj(o), c.proj_right.obj(o)), (l, r));
                    assert_eq!((x.src(alpha), x.tgt(alpha)), (p.obj(l), q.obj(r)));
                }
                for m in c.apex.morphisms() {
                    let (s, t) = (c.apex.src(m), c.apex.tgt(m));
                    let lhs = x.compose(q.mor(c.proj_right.mor(m)), c.tags[s].2);
                    let rhs = x.compose(c.tags[t].2, p.mor(c.proj_left.mor(m)));
                    assert_eq!(lhs, rhs);
                }
                // objects are exactly the triples
                let count: usize = p
                    .dom()
                    .objects()
                    .flat_map(|l| q.dom().objects().map(move |r| (l, r)))
                    .map(|(l, r)| x.hom_count(p.obj(l), q.obj(r)))
                    .sum();
                assert_eq!(c.apex.num_objects(), count);
            }
        }
    }
}

#[test]
fn comma_rejects_codomain_mismatch() {
    let (a, b) = (arc(arrow()), arc(chain(3)));
    let err = comma(&FunctorData::identity(&a), &FunctorData::identity(&b)).unwrap_err();
    assert!(matches!(err, Error::CodomainMismatch(_)));
    assert!(pullback(&FunctorData::identity(&a), &FunctorData::identity(&b)).is_err());
}

#[test]
fn pullback_examples() {
    // the fiber of `A → X` over a point is discrete
    let x = arc(arrow());
    let a = arc(coproduct(&chain(1), &arrow()));
    let f = FunctorData::new(a.clone(), x.clone(), vec![1, 0, 1], vec![1, 0, 1, 2]).unwrap();
    let fib = pullback(&FunctorData::point(&x, 1), &f).unwrap();
    assert_eq!(fib.apex.num_objects(), 2);
    assert_eq!(fib.apex.num_morphisms(), 2);
    // the diagonal
    for x in samples() {
        let d = pullback(&FunctorData::identity(&x), &FunctorData::identity(&x)).unwrap();
        assert!(iso(&d.apex, &x));
        assert!(d.left.is_isomorphism());
    }
    // [0,1] in 2: two objects and one arrow between them
    let (_, _, pb) = factorization_category(&x, 0, 1);
    assert_eq!(pb.apex.num_objects(), 2);
    assert_eq!(pb.apex.num_morphisms() - pb.apex.num_objects(), 1);
    assert_eq!(pi0(&pb.apex).len(), 1);
}

/// Every cone `(h, k)` from a small test category factors through the
/// pullback in exactly one way.
#[test]
fn pullback_universal_property() {
    let tests = [arc(FiniteCategory::terminal()), arc(arrow()), arc(discrete(2)), arc(cyclic(2))];
    let cats = [arc(arrow()), arc(parallel_pair()), by_name("span").unwrap(), arc(cyclic(2)), arc(chain(3))];
    for z in &cats {
        for a in &cats {
            for f in all_functors(a, z).into_iter().take(4) {
                for g in all_functors(a, z).into_iter().rev().take(3) {
                    let pb = pullback(&f, &g).unwrap();
                    assert!(pb.apex.axiom_violations().is_empty());
                    for t in &tests {
                        for h in all_functors(t, a) {
                            for k in all_functors(t, a) {
                                if f.after(&h).unwrap() != g.after(&k).unwrap() {
                                    continue;
                                }
                                let through: Vec<_> = all_functors(t, &pb.apex)
                                    .into_iter()
                                    .filter(|u| pb.left.after(u).unwrap() == h && pb.right.after(u).unwrap() == k)
                                    .collect();
                                assert_eq!(through.len(), 1);
                                assert_eq!(pb.pair(&h, &k).unwrap(), through[0]);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn pi0_examples_and_oracle() {
    assert_eq!(pi0(&arrow()).len(), 1);
    assert_eq!(pi0(&discrete(2)).len(), 2);
    assert_eq!(pi0(&parallel_pair()).len(), 1);
    for x in samples() {
        assert_eq!(pi0(&x).len(), pi0_oracle(&x));
        assert_eq!(pi0(&opposite(&x)).len(), pi0(&x).len());
        let q = pi0(&x);
        let mut hit = vec![false; q.len()];
        for &c in &q.class_of {
            hit[c] = true;
        }
        assert!(hit.into_iter().all(|h| h), "class_of is surjective");
        let (_, to_components) = components_functor(&x);
        assert!(is_final(&to_components).holds());
        assert!(is_initial(&to_components).holds());
    }
}

#[test]
fn product_over_examples() {
    for x in samples() {
        for y in samples().into_iter().take(5) {
            for q in all_functors(&y, &x).into_iter().take(3) {
                let over = product_over(&FunctorData::identity(&x), &q).unwrap();
                let iso = find_isomorphism(&over.pullback.apex, q.dom(), &SizeGuard::default()).unwrap();
                assert!(iso.is_some());
                assert!(over.pullback.right.is_isomorphism());
                assert_eq!(q.after(&over.pullback.right).unwrap(), over.structure);
            }
        }
    }
    let two = arc(arrow());
    let sl = slice(&two, 1);
    let co = coslice(&two, 0);
    let over = product_over(&sl.proj_left, &co.proj_right).unwrap();
    let (_, _, pb) = factorization_category(&two, 0, 1);
    assert!(iso(&over.pullback.apex, &pb.apex));
    let (a, b) = (arc(arrow()), arc(cyclic(2)));
    let one = arc(FiniteCategory::terminal());
    let to_one = |c: &Arc<FiniteCategory>| FunctorData::to_terminal(c).with_codomain(one.clone());
    let over = product_over(&to_one(&a), &to_one(&b)).unwrap();
    assert_eq!(over.pullback.apex.num_objects(), 2);
    assert_eq!(over.pullback.apex.num_morphisms(), 3 * 2);
}

#[test]
fn opposite_examples() {
    let two = arrow();
    let op = opposite(&two);
    let a = op.morphism_by_name("a").unwrap();
    assert_eq!((op.src(a), op.tgt(a)), (1, 0));
    for x in samples() {
        assert_eq!(opposite(&opposite(&x)), *x);
    }
    let z2 = arc(cyclic(2));
    assert!(iso(&arc(opposite(&z2)), &z2));
    for x in samples() {
        for f in all_functors(&x, &x).into_iter().take(5) {
            assert_eq!(opposite_functor(&opposite_functor(&f)), f);
        }
    }
}

#[test]
fn slices_and_coslices_are_dual() {
    for x in samples() {
        let op = arc(opposite(&x));
        for o in x.objects() {
            let left = arc(opposite(&slice(&x, o).apex));
            assert!(iso(&left, &coslice(&op, o).apex));
        }
    }
}

#[test]
fn permuted_copies_are_isomorphic() {
    for x in samples() {
        let (copy, phi) = reversed_copy(&x);
        assert!(phi.is_isomorphism());
        assert!(iso(&x, &copy));
    }
}
