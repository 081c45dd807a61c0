use std::collections::BTreeMap;
use std::sync::Arc;

use balanced_core::factorization::{factorize_left, reflect_df, reflect_dof};
use balanced_core::instances::{pos_factorize_left, FinMap, Graph, MonotoneMap, PosetObject};
use balanced_core::io::*;
use balanced_core::samples::{arrow, by_name, chain};
use balanced_core::{Error, FunctorData, Violation};

const NAMES: [&str; 10] =
    ["arrow", "chain3", "discrete2", "cyclic2", "cyclic3", "chaotic2", "idempotent", "parallel", "span", "cospan"];

fn point(x: &Arc<balanced_core::FiniteCategory>, o: usize) -> FunctorData {
    let one = Arc::new(balanced_core::FiniteCategory::terminal());
    FunctorData::new(one, x.clone(), vec![o], vec![x.identity(o)]).unwrap()
}

#[test]
fn categories_round_trip() {
    for name in NAMES {
        let x = by_name(name).unwrap();
        let file = category_to_file(&x);
        let text = to_json(&file);
        let back: CategoryFile = parse(&text, name).unwrap();
        let y = category_from_file(&back).unwrap();
        assert_eq!(category_to_file(&y), file, "{name}");
        assert_eq!(to_json(&category_to_file(&y)), text, "{name}");
    }
}

#[test]
fn terminal_and_interval_validate() {
    let one: CategoryFile = parse(r#"{"objects":["*"]}"#, "one").unwrap();
    assert_eq!(category_from_file(&one).unwrap().num_morphisms(), 1);
    let two: CategoryFile =
        parse(r#"{"objects":["0","1"],"morphisms":[{"id":"a","src":"0","tgt":"1"}]}"#, "two").unwrap();
    assert_eq!(category_from_file(&two).unwrap().num_morphisms(), 3);
}

#[test]
fn non_composable_entry_is_named() {
    let bad: CategoryFile = parse(
        r#"{"objects":["0","1"],"morphisms":[{"id":"a","src":"0","tgt":"1"}],
            "compose":[{"g":"a","f":"a","result":"a"}]}"#,
        "bad",
    )
    .unwrap();
    let Err(Error::Invalid(report)) = category_from_file(&bad) else { panic!("accepted") };
    assert!(report.violations.contains(&Violation::NotComposable { g: "a".into(), f: "a".into() }));
}

#[test]
fn unknown_fields_and_bad_json_are_rejected_with_positions() {
    for text in [r#"{"objects":["0"],"extra":[]}"#, "{\"objects\": [\"0\"\n", r#"{"objects":"0"}"#] {
        let err = parse::<CategoryFile>(text, "f.json").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(err.to_string().contains("line"), "{err}");
    }
}

#[test]
fn functors_round_trip_and_validate() {
    let x = Arc::new(arrow());
    let f = point(&x, 1);
    let file = functor_to_file(&f);
    let back: FunctorFile = parse(&to_json(&file), "f").unwrap();
    assert_eq!(Loader::new(".").functor(&back).unwrap(), f);

    let swap = FunctorFile {
        dom: CategoryRef::Inline(category_to_file(&x)),
        cod: CategoryRef::Inline(category_to_file(&x)),
        obj_map: BTreeMap::from([("0".into(), "1".into()), ("1".into(), "0".into())]),
        mor_map: BTreeMap::from([("a".into(), "a".into())]),
    };
    let Err(Error::Invalid(report)) = Loader::new(".").functor(&swap) else { panic!("accepted") };
    assert!(report.violations.iter().any(|v| matches!(v, Violation::SourceNotPreserved { .. })));

    let missing = FunctorFile { mor_map: BTreeMap::new(), ..swap };
    let Err(Error::Invalid(report)) = Loader::new(".").functor(&missing) else { panic!("accepted") };
    assert!(report.violations.contains(&Violation::UnmappedMorphism("a".into())));
}

#[test]
fn references_resolve_relative_to_the_referring_file() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("sub");
    std::fs::create_dir(&sub).unwrap();
    write_atomic(&sub.join("two.json"), &to_json(&category_to_file(&arrow()))).unwrap();
    write_atomic(&sub.join("one.json"), "{\"objects\": [\"*\"]}\n").unwrap();
    let text = r#"{"dom":"one.json","cod":"two.json","obj_map":{"*":"1"}}"#;
    write_atomic(&sub.join("p.json"), text).unwrap();
    let p = load_functor(&sub.join("p.json")).unwrap();
    assert_eq!(p.obj(0), 1);
    let leftovers: Vec<_> = std::fs::read_dir(&sub).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 3, "temporary files left behind: {leftovers:?}");
}

#[test]
fn set_valued_functors_round_trip() {
    for name in NAMES {
        let x = by_name(name).unwrap();
        for o in x.objects() {
            let p = point(&x, o);
            let df = reflect_df(&p);
            let file = presheaf_to_file(&df);
            let back: PresheafFile = parse(&to_json(&file), name).unwrap();
            assert_eq!(presheaf_to_file(&Loader::new(".").presheaf(&back).unwrap()), file, "{name}");
            assert!(Loader::new(".").copresheaf(&back).is_err());
            let dof = reflect_dof(&p);
            let file = copresheaf_to_file(&dof);
            let back: PresheafFile = parse(&to_json(&file), name).unwrap();
            assert_eq!(copresheaf_to_file(&Loader::new(".").copresheaf(&back).unwrap()), file, "{name}");
        }
    }
}

#[test]
fn factorization_mid_category_feeds_back() {
    let x = Arc::new(chain(3));
    let f = point(&x, 1);
    let r = factorize_left(&f).unwrap();
    let mid = category_from_file(&parse(&to_json(&category_to_file(&r.mid)), "mid").unwrap()).unwrap();
    assert_eq!(category_to_file(&mid), category_to_file(&r.mid));
    let m = Loader::new(".").functor(&parse(&to_json(&functor_to_file(&r.m)), "m").unwrap()).unwrap();
    assert_eq!(functor_to_file(&m), functor_to_file(&r.m));
}

#[test]
fn posets_and_monotone_maps_round_trip() {
    let v = PosetObject::new(vec!["b".into(), "l".into(), "r".into()], &[(0, 1), (0, 2)]).unwrap();
    let file = poset_to_file(&v);
    assert_eq!(poset_from_file(&parse(&to_json(&file), "v").unwrap()).unwrap(), v);
    let c = Arc::new(PosetObject::chain(2));
    let f = MonotoneMap::new(Arc::new(v), c, vec![0, 1, 1]).unwrap();
    let (e, m) = pos_factorize_left(&f);
    for g in [f, e, m] {
        let back: MonotoneFile = parse(&to_json(&monotone_to_file(&g)), "g").unwrap();
        assert_eq!(Loader::new(".").monotone(&back).unwrap(), g);
    }
    let cyc: PosetFile = parse(r#"{"elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#, "c").unwrap();
    let Err(Error::Invalid(report)) = poset_from_file(&cyc) else { panic!("accepted") };
    assert!(matches!(report.violations[0], Violation::NotAntisymmetric { .. }));
}

#[test]
fn graphs_and_finite_maps_round_trip() {
    let g: GraphFile = parse(
        r#"{"nodes":["a","b","c"],"edges":[{"id":"x","src":"a","tgt":"b"},{"id":"y","src":"b","tgt":"c"}]}"#,
        "g",
    )
    .unwrap();
    let graph = Graph::new(g.nodes.clone(), &g.edges).unwrap();
    assert_eq!(graph_to_file(&graph), g);
    let cyclic: GraphFile =
        parse(r#"{"nodes":["a"],"edges":[{"id":"l","src":"a","tgt":"a"}]}"#, "g").unwrap();
    let Err(Error::Invalid(report)) = Graph::new(cyclic.nodes, &cyclic.edges) else { panic!("accepted") };
    assert_eq!(report.violations, vec![Violation::Cycle(vec!["a".into(), "a".into()])]);

    let f = FinMap::new(3, 2, vec![0, 1, 1]).unwrap();
    let back: FinMapFile = parse(&to_json(&finmap_to_file(&f)), "f").unwrap();
    assert_eq!(FinMap::new(back.dom, back.cod, back.map).unwrap(), f);
    assert!(parse::<FinMapFile>(r#"{"dom":1,"cod":1,"map":[0],"x":0}"#, "f").is_err());
}
