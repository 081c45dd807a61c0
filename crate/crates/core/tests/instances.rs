use std::sync::Arc;

use balanced_core::calculus::{
    cones_under, is_colimiting, is_dense, right_adjoint_underlying, underlying_category, universal_arrow,
};
use balanced_core::instances::*;
use balanced_core::search::{are_isomorphic, FunctorSearch};
use balanced_core::{samples, FiniteCategory, FunctorData, SizeGuard};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn diamond() -> Arc<PosetObject> {
    // 0 < 1, 2 < 3
    Arc::new(PosetObject::new(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
}

fn two_chains() -> Arc<PosetObject> {
    Arc::new(PosetObject::new(names(4), &[(0, 1), (2, 3)]).unwrap())
}

fn posets() -> Vec<Arc<PosetObject>> {
    vec![
        Arc::new(PosetObject::chain(0)),
        Arc::new(PosetObject::chain(1)),
        Arc::new(PosetObject::chain(2)),
        Arc::new(PosetObject::chain(3)),
        Arc::new(PosetObject::antichain(2)),
        diamond(),
        two_chains(),
    ]
}

fn all_monotone(a: &Arc<PosetObject>, b: &Arc<PosetObject>) -> Vec<MonotoneMap> {
    Pos.maps(a, b, &SizeGuard::default()).unwrap()
}

#[test]
fn poset_closure_and_antisymmetry() {
    let p = PosetObject::new(names(3), &[(0, 1), (1, 2)]).unwrap();
    assert!(p.leq(0, 2));
    assert!(PosetObject::new(names(2), &[(0, 1), (1, 0)]).is_err());
}

#[test]
fn pos_factorization_examples() {
    let one = Arc::new(PosetObject::chain(1));
    let two = Arc::new(PosetObject::chain(2));
    let top = MonotoneMap::new(one.clone(), two.clone(), vec![1]).unwrap();
    assert_eq!(pos_factorize_left(&top).0.cod.len(), 2);
    let bottom = MonotoneMap::new(one, two.clone(), vec![0]).unwrap();
    assert_eq!(pos_factorize_left(&bottom).0.cod.len(), 1);
    let id = Pos.identity(&two);
    let (e, m) = pos_factorize_left(&id);
    assert_eq!(e.map, vec![0, 1]);
    assert_eq!(m.map, vec![0, 1]);
}

#[test]
fn pos_factorizations_compose_and_land_in_classes() {
    let bfc = pos_bfc();
    for a in posets() {
        for b in posets() {
            for f in all_monotone(&a, &b) {
                assert!(bfc.factorization_violations(&f).unwrap().is_empty());
                let (e, m) = pos_factorize_left(&f);
                assert!(is_cofinal(&e) && is_lower_set_inclusion(&m));
                let (e, m) = pos_factorize_right(&f);
                assert!(is_coinitial(&e) && is_upper_set_inclusion(&m));
            }
        }
    }
}

#[test]
fn pos_pi0_is_nonempty() {
    assert!(!pos_pi0(&PosetObject::chain(0)));
    assert!(pos_pi0(&PosetObject::chain(3)));
    assert!(pos_pi0(&two_chains()));
    let bfc = pos_bfc();
    let (set, _) = bfc.pi0(&two_chains()).unwrap();
    assert_eq!(set.len(), 1);
    let (set, _) = bfc.pi0(&Arc::new(PosetObject::chain(0))).unwrap();
    assert_eq!(set.len(), 0);
}

#[test]
fn pos_slices_are_principal_lower_sets() {
    let bfc = pos_bfc();
    let guard = SizeGuard::default();
    for x in posets() {
        for p in bfc.points(&x, &guard).unwrap() {
            let at = p.map[0];
            let down = bfc.slice(&p).unwrap();
            let expected: Vec<usize> = (0..x.len()).filter(|&i| x.leq(i, at)).collect();
            assert_eq!(down.map, expected);
            let up = bfc.coslice(&p).unwrap();
            let expected: Vec<usize> = (0..x.len()).filter(|&i| x.leq(at, i)).collect();
            assert_eq!(up.map, expected);
        }
    }
}

#[test]
fn pos_hom_sets_are_truth_values() {
    let bfc = pos_bfc();
    let guard = SizeGuard::default();
    for x in posets() {
        let points = bfc.points(&x, &guard).unwrap();
        for p in &points {
            for q in &points {
                let n = bfc.hom_size(p, q, &guard).unwrap();
                assert_eq!(n, usize::from(x.leq(p.map[0], q.map[0])));
                assert_eq!(bfc.underlying_hom_size(p, q, &guard).unwrap(), n);
                let interval = bfc.interval(p, q).unwrap();
                let between = (0..x.len()).filter(|&z| x.leq(p.map[0], z) && x.leq(z, q.map[0])).count();
                assert_eq!(interval.apex.len(), between);
            }
        }
    }
}

#[test]
fn pos_underlying_is_the_poset() {
    for x in posets() {
        let cat = Arc::new(x.category());
        let u = underlying_category(&cat).unwrap();
        assert!(are_isomorphic(&u.category, &cat, &SizeGuard::default()).unwrap());
    }
}

#[test]
fn pos_complement_of_a_lower_set_is_its_set_complement() {
    for x in posets() {
        let n = x.len();
        for bits in 0..(1u32 << n) {
            let subset: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            if !x.is_lower_set(&subset) {
                assert!(lower_set_complement(&x, &subset).is_err());
                continue;
            }
            let c = lower_set_complement(&x, &subset).unwrap();
            let expected: Vec<bool> = subset.iter().map(|&b| !b).collect();
            assert_eq!(c, expected);
            assert!(x.is_upper_set(&c));
        }
    }
}

#[test]
fn pos_dense_iff_surjective() {
    for a in posets() {
        for b in posets() {
            for f in all_monotone(&a, &b) {
                let surjective = (0..b.len()).all(|y| f.map.contains(&y));
                assert_eq!(pos_is_dense(&f), surjective);
            }
        }
    }
}

/// On thin categories the categorical density agrees with surjectivity too.
#[test]
fn pos_density_agrees_with_the_categorical_one_on_chains() {
    for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let (a, b) = (Arc::new(PosetObject::chain(m)), Arc::new(PosetObject::chain(n)));
        let (ca, cb) = (Arc::new(a.category()), Arc::new(b.category()));
        for f in all_monotone(&a, &b) {
            let functor = f.functor(&ca, &cb).unwrap();
            assert_eq!(pos_is_dense(&f), is_dense(&functor).unwrap().holds());
        }
    }
}

#[test]
fn pos_galois_connections_match_the_categorical_adjoint() {
    let guard = SizeGuard::default();
    for a in posets() {
        for b in posets() {
            let (ca, cb) = (Arc::new(a.category()), Arc::new(b.category()));
            for f in all_monotone(&a, &b) {
                let functor = f.functor(&ca, &cb).unwrap();
                let oracle = pos_upper_adjoint(&f);
                let computed: Option<Vec<usize>> = cb
                    .objects()
                    .map(|y| universal_arrow(&functor, y).unwrap().map(|u| u.object))
                    .collect();
                assert_eq!(computed, oracle);
                if let Some(g) = oracle {
                    let ux = underlying_category(&ca).unwrap();
                    let uy = underlying_category(&cb).unwrap();
                    let adj = right_adjoint_underlying(&functor, &ux, &uy).unwrap();
                    assert_eq!(adj.right.obj_map(), g.as_slice());
                }
                let _ = &guard;
            }
        }
    }
}

#[test]
fn pos_colimits_are_sups() {
    let guard = SizeGuard::default();
    let x = diamond();
    let cx = Arc::new(x.category());
    for p_dom in [Arc::new(PosetObject::antichain(2)), Arc::new(PosetObject::chain(2))] {
        let cp = Arc::new(p_dom.category());
        for p in all_monotone(&p_dom, &x) {
            let functor = p.functor(&cp, &cx).unwrap();
            for c in cones_under(&functor, &guard).unwrap() {
                assert_eq!(is_colimiting(&c, &guard).unwrap().holds(), pos_is_colimit(&p, c.x));
            }
        }
    }
    // {1, 2} has sup 3, not attained; {0, 1} has maximum 1
    let anti = Arc::new(PosetObject::antichain(2));
    let sides = MonotoneMap::new(anti.clone(), x.clone(), vec![1, 2]).unwrap();
    assert!(pos_is_colimit(&sides, 3) && !pos_is_absolute(&sides, 3));
    let low = MonotoneMap::new(anti, x, vec![0, 1]).unwrap();
    assert!(pos_is_absolute(&low, 1));
}

#[test]
fn pos_adequate_maps() {
    let x = diamond();
    let anti = Arc::new(PosetObject::antichain(3));
    // 0, 1, 2 generate 3 as a sup
    let f = MonotoneMap::new(anti.clone(), x.clone(), vec![0, 1, 2]).unwrap();
    assert!(pos_is_adequate(&f));
    let g = MonotoneMap::new(anti, x, vec![0, 1, 1]).unwrap();
    assert!(!pos_is_adequate(&g));
}

#[test]
fn finset_factorization_examples() {
    let f = FinMap::new(2, 1, vec![0, 0]).unwrap();
    let (e, m) = image_factorization(&f);
    assert_eq!(e, f);
    assert_eq!(m, FinSet.identity(&1));
    let g = FinMap::new(1, 2, vec![0]).unwrap();
    let (e, m) = image_factorization(&g);
    assert_eq!(e.cod, 1);
    assert_eq!(m.map, vec![0]);
}

#[test]
fn finset_pi0_is_the_nonempty_truth_value() {
    let bfc = finset_epimono_bfc();
    assert_eq!(bfc.pi0(&0).unwrap().0, 0);
    for n in 1..4 {
        assert_eq!(bfc.pi0(&n).unwrap().0, 1);
        assert_eq!(bfc.is_set(&n), n <= 1);
    }
}

fn finset_samples() -> (Vec<usize>, Vec<FinMap>) {
    let objects = vec![0, 1, 2, 3];
    let guard = SizeGuard::default();
    let mut maps = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            maps.extend(FinSet.maps(&a, &b, &guard).unwrap());
        }
    }
    (objects, maps)
}

#[test]
fn finset_instance_invariants() {
    let (objects, maps) = finset_samples();
    let v = finset_epimono_bfc().invariant_violations(&objects, &maps, &SizeGuard::default()).unwrap();
    assert!(v.is_empty(), "{v:?}");
}

#[test]
fn pos_instance_invariants() {
    let objects = posets();
    let small = [Arc::new(PosetObject::chain(1)), Arc::new(PosetObject::chain(2)), Arc::new(PosetObject::antichain(2))];
    let mut maps = Vec::new();
    for a in &small {
        for b in &small {
            maps.extend(all_monotone(a, b));
        }
    }
    let v = pos_bfc().invariant_violations(&objects, &maps, &SizeGuard::default()).unwrap();
    assert!(v.is_empty(), "{v:?}");
}

#[test]
fn fincat_instance_invariants() {
    let guard = SizeGuard::default();
    let objects: Vec<Arc<FiniteCategory>> =
        ["arrow", "discrete2", "cyclic2", "span"].iter().map(|n| samples::by_name(n).unwrap()).collect();
    let small = [samples::by_name("discrete1").unwrap(), samples::by_name("arrow").unwrap()];
    let mut maps = Vec::new();
    for a in &small {
        for b in &small {
            maps.extend(FunctorSearch::new(a, b).collect(&guard).unwrap());
        }
    }
    let v = fincat_bfc().invariant_violations(&objects, &maps, &guard).unwrap();
    assert!(v.is_empty(), "{v:?}");
}

#[test]
fn discrete_and_codiscrete_instances() {
    let guard = SizeGuard::default();
    let (objects, maps) = finset_samples();
    let d = make_discrete_bfc(FinSet);
    let c = make_codiscrete_bfc(FinSet);
    assert!(d.invariant_violations(&objects, &maps, &guard).unwrap().is_empty());
    assert!(c.invariant_violations(&objects, &maps, &guard).unwrap().is_empty());
    for f in &maps {
        assert_eq!((d.factorize_left)(f).unwrap(), (FinSet.identity(&f.dom), f.clone()));
        for g in &maps {
            if f.cod == g.cod {
                assert!(d.e_is_m_stable_at(f, g).unwrap());
            }
        }
    }
    for n in 1..4 {
        let points = d.points(&n, &guard).unwrap();
        for p in &points {
            for q in &points {
                assert_eq!(d.hom_size(p, q, &guard).unwrap(), usize::from(p == q));
                let interval = d.interval(p, q).unwrap();
                assert_eq!(interval.apex, usize::from(p == q));
                assert_eq!(c.hom_size(p, q, &guard).unwrap(), 1);
                assert_eq!(c.interval(p, q).unwrap().apex, n);
                assert_eq!(d.underlying_hom_size(p, q, &guard).unwrap(), usize::from(p == q));
                assert_eq!(c.underlying_hom_size(p, q, &guard).unwrap(), 1);
            }
        }
    }
}

#[test]
fn discrete_and_codiscrete_on_categories() {
    let guard = SizeGuard::default();
    let objects: Vec<Arc<FiniteCategory>> =
        ["arrow", "discrete2", "cyclic2"].iter().map(|n| samples::by_name(n).unwrap()).collect();
    let small = [samples::by_name("discrete1").unwrap(), samples::by_name("arrow").unwrap()];
    let mut maps = Vec::new();
    for a in &small {
        for b in &small {
            maps.extend(FunctorSearch::new(a, b).collect(&guard).unwrap());
        }
    }
    for inst in [make_discrete_bfc(FinCat), make_codiscrete_bfc(FinCat)] {
        let v = inst.invariant_violations(&objects, &maps, &guard).unwrap();
        assert!(v.is_empty(), "{}: {v:?}", inst.name);
    }
}

fn edge(id: &str, s: &str, t: &str) -> Edge {
    Edge { id: id.into(), src: s.into(), tgt: t.into() }
}

fn square() -> Graph {
    let nodes = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    Graph::new(nodes, &[edge("f", "a", "b"), edge("g", "a", "c"), edge("h", "b", "d"), edge("k", "c", "d")]).unwrap()
}

#[test]
fn graph_paths_examples() {
    let g = Graph::new(vec!["x".into(), "y".into()], &[edge("e", "x", "y")]).unwrap();
    assert_eq!(g.paths(0, 1).len(), 1);
    assert_eq!(g.paths(1, 0).len(), 0);
    let sq = square();
    assert_eq!(sq.paths(0, 3).len(), 2);
}

#[test]
fn graph_rejects_cycles() {
    let err = Graph::new(vec!["x".into(), "y".into()], &[edge("e", "x", "y"), edge("r", "y", "x")]).unwrap_err();
    assert!(err.to_string().contains("x -> y -> x") || err.to_string().contains("y -> x -> y"));
    assert!(Graph::new(vec!["x".into()], &[edge("l", "x", "x")]).is_err());
}

/// Depth-first path count against the transfer-matrix count.
#[test]
fn graph_path_counts_and_free_category() {
    let sq = square();
    let free = Arc::new(sq.free_category());
    assert!(free.axiom_violations().is_empty());
    let n = sq.nodes().len();
    let mut adj = vec![vec![0usize; n]; n];
    for e in 0..4 {
        let (s, t) = sq.edge_ends(e);
        adj[s][t] += 1;
    }
    // (I + A + A^2 + A^3)
    let mut total = vec![vec![0usize; n]; n];
    let mut power: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    for _ in 0..n {
        for i in 0..n {
            for j in 0..n {
                total[i][j] += power[i][j];
            }
        }
        power = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * adj[k][j]).sum()).collect()).collect();
    }
    for x in 0..n {
        for y in 0..n {
            assert_eq!(sq.paths(x, y).len(), total[x][y]);
            assert_eq!(free.hom_count(x, y), total[x][y]);
            assert_eq!(sq.interval_components(x, y).unwrap().len(), total[x][y]);
        }
    }
    let u = underlying_category(&free).unwrap();
    assert!(are_isomorphic(&u.category, &free, &SizeGuard::default()).unwrap());
}

#[test]
fn chain_functor_roundtrip() {
    let a = Arc::new(PosetObject::chain(2));
    let ca = Arc::new(a.category());
    let id = Pos.identity(&a).functor(&ca, &ca).unwrap();
    assert_eq!(id, FunctorData::identity(&ca));
}
