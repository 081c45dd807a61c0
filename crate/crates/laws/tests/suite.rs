use std::collections::BTreeSet;
use std::sync::Arc;

use balanced_core::construct::pullback;
use balanced_core::factorization::{factorize_left, factorize_right, is_final, is_initial};
use balanced_core::{FiniteCategory, FunctorData, Result, SizeGuard};
use balanced_laws::generate::{generate, rng_for, sample_functors, shapes, Instance};
use balanced_laws::report::{Kind, Verdict};
use balanced_laws::*;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn guard() -> SizeGuard {
    SizeGuard::new(1_000_000)
}

fn small(seed: u64, max_objects: usize) -> GeneratorConfig {
    GeneratorConfig { seed, max_objects, max_morphisms: 16, per_family: 2, ..GeneratorConfig::default() }
}

/// Connected components of `p/x` (or `x\p` when `under`) by union-find over
/// its morphisms.
fn comma_components(p: &FunctorData, x: usize, under: bool) -> usize {
    let (a, c) = (p.dom(), p.cod());
    let mut objects = Vec::new();
    for o in a.objects() {
        let arrows: Vec<usize> = if under { c.hom(x, p.obj(o)).collect() } else { c.hom(p.obj(o), x).collect() };
        objects.extend(arrows.into_iter().map(|f| (o, f)));
    }
    let mut parent: Vec<usize> = (0..objects.len()).collect();
    fn root(parent: &mut [usize], i: usize) -> usize {
        if parent[i] == i {
            i
        } else {
            let r = root(parent, parent[i]);
            parent[i] = r;
            r
        }
    }
    for (i, &(o1, f1)) in objects.iter().enumerate() {
        for (j, &(o2, f2)) in objects.iter().enumerate() {
            let linked = a.hom(o1, o2).any(|u| {
                if under {
                    c.compose(p.mor(u), f1) == f2
                } else {
                    c.compose(f2, p.mor(u)) == f1
                }
            });
            if linked {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..objects.len()).map(|i| root(&mut parent, i)).collect::<BTreeSet<_>>().len()
}

fn initial_oracle(p: &FunctorData) -> bool {
    p.cod().objects().all(|x| comma_components(p, x, false) == 1)
}

fn final_oracle(p: &FunctorData) -> bool {
    p.cod().objects().all(|x| comma_components(p, x, true) == 1)
}

#[test]
fn prop4_holds_at_seed_one() {
    let report = run_law("prop4", &small(1, 4)).unwrap();
    assert!(report.passed);
    assert!(report.records.iter().all(|r| r.verdict == Verdict::Holds), "{}", report.summary_table());
    assert!(report.records.iter().map(|r| r.cases).sum::<usize>() > 0);
}

#[test]
fn pullback_legs_pass_the_brute_force_initiality_oracle() {
    let instances = generate(&small(1, 4)).unwrap();
    let mut rng = rng_for(1, 99);
    let mut checked = 0;
    for inst in &instances {
        let x = &inst.category;
        let other = &instances[(inst.index + 1) % instances.len()].category;
        for f in sample_functors(other, x, 2, &mut rng) {
            let (left, right) = (factorize_left(&f).unwrap(), factorize_right(&f).unwrap());
            for s in shapes() {
                for g in sample_functors(&s, x, 3, &mut rng) {
                    assert_eq!(is_initial(&g).holds(), initial_oracle(&g));
                    assert_eq!(is_final(&g).holds(), final_oracle(&g));
                    if initial_oracle(&g) {
                        let leg = pullback(&left.m, &g).unwrap().left;
                        assert!(initial_oracle(&leg), "{}", inst.descriptor);
                        checked += 1;
                    }
                    if final_oracle(&g) {
                        let leg = pullback(&right.m, &g).unwrap().left;
                        assert!(final_oracle(&leg), "{}", inst.descriptor);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10, "only {checked} squares");
}

#[test]
fn eq3a_holds() {
    let report = run_law("eq3a", &GeneratorConfig::default()).unwrap();
    assert!(report.records.iter().all(|r| r.verdict == Verdict::Holds));
}

#[test]
fn unknown_law_is_an_error() {
    assert!(run_law("prop999", &GeneratorConfig::default()).is_err());
    assert!(resolve(&["prop4".into(), "nope".into()]).is_err());
}

#[test]
fn resolve_expands_all_and_drops_repeats() {
    let all = resolve(&["all".into()]).unwrap();
    assert_eq!(all.len(), registry().len());
    let some = resolve(&["eq3a".into(), "prop4".into(), "eq3a".into()]).unwrap();
    let ids: Vec<_> = some.iter().map(|l| l.id).collect();
    assert_eq!(ids, ["eq3a", "prop4"]);
}

#[test]
fn registry_covers_the_required_ids() {
    let ids: BTreeSet<_> = registry().iter().map(|l| l.id).collect();
    for id in [
        "prop4", "eq3a", "prop12", "prop17", "prop18b", "prop22", "prop26", "prop34", "prop43", "prop44a", "cor48",
        "prop55", "prop70", "prop73", "eq75", "eq77", "prop78", "bfc-axioms", "mu-assoc", "underlying-pullbacks",
    ] {
        assert!(ids.contains(id), "{id}");
    }
    assert_eq!(ids.len(), registry().len(), "ids are unique");
    let experiments: Vec<_> = registry().iter().filter(|l| l.kind == Kind::Experiment).map(|l| l.id).collect();
    assert_eq!(experiments, ["mu-assoc", "underlying-pullbacks"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let laws = resolve(&["eq40".into(), "prop55".into(), "mu-assoc".into()]).unwrap();
    let config = small(5, 4);
    let a = serde_json::to_string(&run_laws(&laws, &config, &guard()).unwrap()).unwrap();
    let b = serde_json::to_string(&run_laws(&laws, &config, &guard()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn records_are_ordered_by_law_then_instance() {
    let laws = resolve(&["eq49".into(), "eq40".into()]).unwrap();
    let report = run_laws(&laws, &small(2, 3), &guard()).unwrap();
    let n = report.records.len() / 2;
    for (k, r) in report.records.iter().enumerate() {
        assert_eq!(r.law_id, if k < n { "eq49" } else { "eq40" });
        assert_eq!(r.instance, k % n);
    }
    assert_eq!(report.summary.len(), 2);
}

#[test]
fn adding_a_law_leaves_other_draws_unchanged() {
    let config = small(3, 4);
    let alone = run_laws(&resolve(&["prop55".into()]).unwrap(), &config, &guard()).unwrap();
    let both = run_laws(&resolve(&["eq3a".into(), "prop55".into()]).unwrap(), &config, &guard()).unwrap();
    let tail: Vec<_> = both.records.iter().filter(|r| r.law_id == "prop55").cloned().collect();
    assert_eq!(serde_json::to_value(&alone.records).unwrap(), serde_json::to_value(&tail).unwrap());
}

fn prep_maps(inst: &Instance, all: &[Instance], rng: &mut ChaCha8Rng) -> Result<Subject> {
    let y = &all[(inst.index + 1) % all.len()].category;
    let mut s = Subject::bare(inst.category.clone(), inst.poset.clone());
    s.groups.push(sample_functors(&inst.category, y, 2, rng));
    Ok(s)
}

/// Deliberately false: every category has at most one object.
fn at_most_one_object(s: &Subject, _: &SizeGuard) -> Result<Outcome> {
    let n = s.category.num_objects();
    Ok(Outcome {
        holds: n <= 1,
        cases: 1,
        observation: None,
        failure: (n > 1).then(|| json!({ "objects": n, "maps": s.group(0).len() })),
    })
}

fn false_law() -> Law {
    Law { id: "at-most-one-object", anchor: "false on purpose", kind: Kind::Law, prepare: prep_maps, check: at_most_one_object }
}

#[test]
fn witnesses_replay_standalone() {
    let law = false_law();
    let report = run_laws(&[law], &small(4, 4), &guard()).unwrap();
    assert!(!report.passed);
    let failures: Vec<_> = report.failures().collect();
    assert!(!failures.is_empty());
    for f in failures {
        let witness = f.witness.clone().unwrap();
        let text = serde_json::to_string(&witness).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        let outcome = replay_with(&law, &back, &guard()).unwrap();
        assert!(!outcome.holds);
        assert_eq!(outcome.failure.unwrap(), witness.failure);
        let subject = Subject::from_file(&back.subject).unwrap();
        assert_eq!(subject.group(0).len(), witness.failure["maps"].as_u64().unwrap() as usize);
    }
    assert!(report.summary_table().ends_with("suite FAILED\n"));
}

#[test]
fn replay_finds_the_registered_law() {
    let x = Arc::new(FiniteCategory::terminal());
    let witness = Witness {
        law_id: "eq40".into(),
        subject: Subject::bare(x, None).to_file(),
        failure: json!(null),
    };
    assert!(replay(&witness, &guard()).unwrap().holds);
    let unknown = Witness { law_id: "nope".into(), ..witness };
    assert!(replay(&unknown, &guard()).is_err());
}

#[test]
fn experiments_never_fail_the_suite() {
    fn always_false(_: &Subject, _: &SizeGuard) -> Result<Outcome> {
        Ok(Outcome { holds: false, cases: 1, observation: None, failure: Some(json!("observed")) })
    }
    let law = Law { id: "observed", anchor: "open", kind: Kind::Experiment, prepare: prep_maps, check: always_false };
    let report = run_laws(&[law], &small(0, 3), &guard()).unwrap();
    assert!(report.passed);
    assert!(report.records.iter().all(|r| r.verdict == Verdict::FailsWithWitness));
    assert_eq!(report.failures().count(), 0);
}

#[test]
fn size_guard_errors_become_skips() {
    fn guarded(_: &Subject, guard: &SizeGuard) -> Result<Outcome> {
        Err(guard.exceeded("testing"))
    }
    let law = Law { id: "guarded", anchor: "guard", kind: Kind::Law, prepare: prep_maps, check: guarded };
    let report = run_laws(&[law], &small(0, 3), &guard()).unwrap();
    assert!(report.passed);
    assert!(report.records.iter().all(|r| r.verdict == Verdict::SkippedSizeGuard && r.skipped.is_some()));
    assert_eq!(report.summary[0].skipped, report.records.len());
}

#[test]
fn galois_connections_are_plentiful() {
    let report = run_law("prop22", &GeneratorConfig::default()).unwrap();
    assert!(report.passed);
    let galois: u64 = report
        .records
        .iter()
        .filter_map(|r| r.observation.as_ref())
        .map(|o| o["galois_connections"].as_u64().unwrap())
        .sum();
    assert!(galois >= 20, "{galois}");
}

#[test]
fn mu_is_associative_on_generated_instances() {
    let report = run_law("mu-assoc", &GeneratorConfig::default()).unwrap();
    assert!(report.records.iter().all(|r| r.verdict == Verdict::Holds));
}
