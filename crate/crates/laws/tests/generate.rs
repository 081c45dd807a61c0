use std::sync::Arc;

use balanced_core::instances::PosetObject;
use balanced_core::io::{category_from_file, category_to_file};
use balanced_core::search::are_isomorphic;
use balanced_core::{FiniteCategory, SizeGuard};
use balanced_laws::generate::{cyclic_group_category, dag_free_category, generate, interval_power, random_poset, rng_for};
use balanced_laws::{Family, GeneratorConfig};
use proptest::prelude::*;

fn guard() -> SizeGuard {
    SizeGuard::new(1_000_000)
}

#[test]
fn random_poset_is_the_same_on_every_run() {
    let config = GeneratorConfig {
        seed: 0,
        max_objects: 4,
        max_morphisms: 10,
        families: vec![Family::RandomPoset],
        per_family: 3,
    };
    let a = generate(&config).unwrap();
    let b = generate(&config).unwrap();
    assert_eq!(a.len(), 3);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.descriptor, y.descriptor);
        assert_eq!(category_to_file(&x.category), category_to_file(&y.category));
        assert_eq!(x.poset.as_ref().unwrap().strict_pairs(), y.poset.as_ref().unwrap().strict_pairs());
        assert!(x.category.num_objects() <= 4);
    }
}

#[test]
fn seeds_change_the_stream() {
    let draw = |seed| {
        let config = GeneratorConfig { seed, ..GeneratorConfig::default() };
        generate(&config).unwrap().into_iter().map(|i| i.descriptor).collect::<Vec<_>>()
    };
    assert_ne!(draw(0), draw(1));
}

#[test]
fn cyclic_two_is_the_two_element_group() {
    let z2 = Arc::new(cyclic_group_category(2));
    assert_eq!(z2.num_objects(), 1);
    assert_eq!(z2.num_morphisms(), 2);
    let g = z2.proper_morphisms().next().unwrap();
    assert_eq!(z2.compose(g, g), z2.identity(0));
    let expected = Arc::new(
        FiniteCategory::from_parts(
            vec!["*".into()],
            vec![
                balanced_core::Morphism { name: "id".into(), src: 0, tgt: 0 },
                balanced_core::Morphism { name: "s".into(), src: 0, tgt: 0 },
            ],
            vec![0],
            |a, b| a ^ b,
        )
        .unwrap(),
    );
    assert!(are_isomorphic(&z2, &expected, &guard()).unwrap());
}

#[test]
fn chain_dag_is_the_three_chain() {
    let free = Arc::new(dag_free_category(3, &[(0, 1), (1, 2)]).unwrap());
    // One path per ordered pair: 3 identities, 2 edges, 1 composite.
    assert_eq!(free.num_morphisms(), 6);
    let chain = Arc::new(PosetObject::chain(3).category());
    assert!(are_isomorphic(&free, &chain, &guard()).unwrap());
}

#[test]
fn parallel_edges_give_parallel_paths() {
    let free = dag_free_category(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
    assert_eq!(free.hom_count(0, 2), 2);
    assert_eq!(free.hom_count(0, 1), 2);
}

#[test]
fn interval_power_is_the_boolean_lattice() {
    let (c, p) = interval_power(2);
    assert_eq!(c.num_objects(), 4);
    // 4 identities and 5 strict pairs: 3^2 comparable pairs.
    assert_eq!(c.num_morphisms(), 9);
    assert_eq!(p.strict_pairs().len(), 5);
}

#[test]
fn invalid_configs_are_rejected() {
    let base = GeneratorConfig::default();
    for bad in [
        GeneratorConfig { max_objects: 0, ..base.clone() },
        GeneratorConfig { max_morphisms: 0, ..base.clone() },
        GeneratorConfig { max_objects: 6, max_morphisms: 5, ..base.clone() },
        GeneratorConfig { families: vec![], ..base.clone() },
        GeneratorConfig { per_family: 0, ..base.clone() },
    ] {
        assert!(generate(&bad).is_err(), "{bad:?}");
    }
    assert!(Family::from_name("random-poset").is_ok());
    assert!(Family::from_name("random").is_err());
}

#[test]
fn config_rejects_unknown_fields() {
    let text = r#"{"seed":1,"max_objects":3,"max_morphisms":9,"families":["product"],"per_family":1,"extra":0}"#;
    assert!(serde_json::from_str::<GeneratorConfig>(text).is_err());
    let ok = r#"{"seed":1,"max_objects":3,"max_morphisms":9,"families":["interval-power"],"per_family":1}"#;
    let config: GeneratorConfig = serde_json::from_str(ok).unwrap();
    assert_eq!(config.families, vec![Family::IntervalPower]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn generated_instances_are_valid_and_bounded(seed in any::<u64>(), max_o in 1usize..6, extra in 0usize..20) {
        let config = GeneratorConfig { seed, max_objects: max_o, max_morphisms: max_o + extra, per_family: 2, ..GeneratorConfig::default() };
        for inst in generate(&config).unwrap() {
            let c = &inst.category;
            prop_assert!(c.num_objects() <= max_o, "{}", inst.descriptor);
            prop_assert!(c.num_morphisms() <= max_o + extra, "{}", inst.descriptor);
            prop_assert!(c.axiom_violations().is_empty(), "{}", inst.descriptor);
            let back = category_from_file(&category_to_file(c)).unwrap();
            prop_assert_eq!(back.num_morphisms(), c.num_morphisms());
            if let Some(p) = &inst.poset {
                prop_assert_eq!(p.len(), c.num_objects());
            }
        }
    }

    #[test]
    fn random_posets_respect_bounds(seed in any::<u64>(), max_o in 1usize..7) {
        let mut rng = rng_for(seed, 0);
        let p = random_poset(&mut rng, max_o, max_o * 2);
        let size: usize = (0..p.len()).map(|a| (0..p.len()).filter(|&b| p.leq(a, b)).count()).sum();
        prop_assert!(p.len() <= max_o);
        prop_assert!(size <= max_o * 2 || p.len() == 1);
    }
}
