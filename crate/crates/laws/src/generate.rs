//! Deterministic instance generation from associativity-safe families.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use balanced_core::construct::{coproduct, product};
use balanced_core::instances::{Edge, Graph, LexBackend, MonotoneMap, Pos, PosetObject};
use balanced_core::samples::{arrow, cyclic};
use balanced_core::search::FunctorSearch;
use balanced_core::{FiniteCategory, FunctorData, Result, SizeGuard};

use crate::config::{Family, GeneratorConfig};

/// Enumeration bound used when sampling maps between two instances.
pub const SAMPLE_GUARD: u64 = 20_000;

/// One generated category; posets keep their order alongside.
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: usize,
    pub family: Family,
    pub descriptor: String,
    pub category: Arc<FiniteCategory>,
    pub poset: Option<Arc<PosetObject>>,
}

/// A generator stream keyed by `(seed, stream)`; distinct streams never share
/// draws.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `per_family` instances per listed family, indexed in generation order.
pub fn generate(config: &GeneratorConfig) -> Result<Vec<Instance>> {
    config.validate()?;
    let mut out = Vec::new();
    for &family in &config.families {
        for j in 0..config.per_family {
            let stream = (family as u64) << 32 | j as u64;
            let mut rng = rng_for(config.seed, stream);
            let (descriptor, category, poset) = draw(family, &mut rng, config.max_objects, config.max_morphisms);
            out.push(Instance {
                index: out.len(),
                family,
                descriptor: format!(
                    "{}#{j} {descriptor} ({} objects, {} morphisms)",
                    family.name(),
                    category.num_objects(),
                    category.num_morphisms()
                ),
                category,
                poset,
            });
        }
    }
    Ok(out)
}

type Drawn = (String, Arc<FiniteCategory>, Option<Arc<PosetObject>>);

fn draw(family: Family, rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> Drawn {
    match family {
        Family::RandomPoset => {
            let p = Arc::new(random_poset(rng, max_objects, max_morphisms));
            (poset_descriptor(&p), Arc::new(p.category()), Some(p))
        }
        Family::DagFreeCategory => {
            let (desc, c) = random_dag(rng, max_objects, max_morphisms);
            (desc, c, None)
        }
        Family::CyclicGroupCategory => {
            let n = rng.gen_range(1..=max_morphisms.min(6));
            (format!("Z/{n}"), Arc::new(cyclic_group_category(n)), None)
        }
        Family::Product | Family::Coproduct => combined(family, rng, max_objects, max_morphisms),
        Family::IntervalPower => {
            let mut kmax = 0;
            while 2usize.pow(kmax + 1) <= max_objects && 3usize.pow(kmax + 1) <= max_morphisms {
                kmax += 1;
            }
            let k = rng.gen_range(0..=kmax);
            let (c, p) = interval_power(k as usize);
            (format!("2^{k}"), c, Some(p))
        }
    }
}

/// A random subset of the pairs `i < j`, closed; shrinks until the category
/// fits the bounds.
pub fn random_poset(rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> PosetObject {
    let mut n = rng.gen_range(1..=max_objects);
    loop {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.4) {
                    pairs.push((i, j));
                }
            }
        }
        let p = PosetObject::new(element_names(n), &pairs).expect("pairs i < j are antisymmetric");
        let size: usize = (0..n).map(|a| (0..n).filter(|&b| p.leq(a, b)).count()).sum();
        if size <= max_morphisms || n == 1 {
            return p;
        }
        n -= 1;
    }
}

fn element_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn poset_descriptor(p: &PosetObject) -> String {
    let pairs: Vec<String> =
        p.strict_pairs().iter().map(|&(a, b)| format!("{}<{}", p.elements()[a], p.elements()[b])).collect();
    format!("{{{}}}", pairs.join(","))
}

/// The free category on a finite acyclic graph given by `(src, tgt)` edges
/// between nodes `v0..`.
pub fn dag_free_category(nodes: usize, edges: &[(usize, usize)]) -> Result<FiniteCategory> {
    let names: Vec<String> = (0..nodes).map(|i| format!("v{i}")).collect();
    let edges: Vec<Edge> = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Edge { id: format!("e{k}"), src: names[s].clone(), tgt: names[t].clone() })
        .collect();
    Ok(Graph::new(names, &edges)?.free_category())
}

fn random_dag(rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> (String, Arc<FiniteCategory>) {
    let n = rng.gen_range(1..=max_objects);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.35) {
                edges.push((i, j));
                if rng.gen_bool(0.15) {
                    edges.push((i, j));
                }
            }
        }
    }
    loop {
        let c = dag_free_category(n, &edges).expect("edges go forward");
        if c.num_morphisms() <= max_morphisms || edges.is_empty() {
            let list: Vec<String> = edges.iter().map(|(s, t)| format!("v{s}->v{t}")).collect();
            return (format!("dag[{}]", list.join(",")), Arc::new(c));
        }
        edges.pop();
    }
}

/// `Z/n` as a one-object category.
pub fn cyclic_group_category(n: usize) -> FiniteCategory {
    cyclic(n)
}

/// `2^k` as the poset of bit vectors under inclusion.
pub fn interval_power(k: usize) -> (Arc<FiniteCategory>, Arc<PosetObject>) {
    let n = 1usize << k;
    let names = (0..n).map(|v| format!("{v:0width$b}", width = k.max(1))).collect();
    let p = PosetObject::from_fn(names, |a, b| a & b == a).expect("subset order");
    (Arc::new(p.category()), Arc::new(p))
}

fn leaf(rng: &mut ChaCha8Rng) -> (String, Arc<FiniteCategory>) {
    match rng.gen_range(0..3) {
        0 => {
            let p = random_poset(rng, 3, 6);
            (format!("poset{}", poset_descriptor(&p)), Arc::new(p.category()))
        }
        1 => {
            let n = rng.gen_range(1..=3);
            (format!("Z/{n}"), Arc::new(cyclic(n)))
        }
        _ => ("2".to_string(), Arc::new(arrow())),
    }
}

fn combined(family: Family, rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> Drawn {
    let op = if family == Family::Product { "x" } else { "+" };
    for _ in 0..16 {
        let ((da, a), (db, b)) = (leaf(rng), leaf(rng));
        let c = if family == Family::Product { product(&a, &b).apex } else { Arc::new(coproduct(&a, &b)) };
        if c.num_objects() <= max_objects && c.num_morphisms() <= max_morphisms {
            return (format!("{da} {op} {db}"), c, None);
        }
    }
    let one = Arc::new(FiniteCategory::terminal());
    let c = if family == Family::Product { product(&one, &one).apex } else { Arc::new(FiniteCategory::terminal()) };
    (format!("1 {op} 1"), c, None)
}

/// Up to `k` functors `a → b` chosen uniformly among all of them; constant
/// functors when enumeration exceeds [`SAMPLE_GUARD`].
pub fn sample_functors(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<FunctorData> {
    let all = FunctorSearch::new(a, b)
        .collect(&SizeGuard::new(SAMPLE_GUARD))
        .unwrap_or_else(|_| b.objects().map(|o| FunctorData::constant(a, b, o)).collect());
    pick(all, k, rng)
}

/// Up to `k` monotone maps `a → b`.
pub fn sample_monotone(a: &Arc<PosetObject>, b: &Arc<PosetObject>, k: usize, rng: &mut ChaCha8Rng) -> Vec<MonotoneMap> {
    let all = Pos.maps(a, b, &SizeGuard::new(SAMPLE_GUARD)).unwrap_or_default();
    pick(all, k, rng)
}

fn pick<T>(mut all: Vec<T>, k: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if all.len() <= k {
        return all;
    }
    let mut chosen = sample(rng, all.len(), k).into_vec();
    chosen.sort_unstable();
    chosen.reverse();
    let mut out: Vec<T> = chosen.into_iter().map(|i| all.swap_remove(i)).collect();
    out.reverse();
    out
}

/// Small diagram shapes: the empty category, a point, two points, an arrow
/// and a span.
pub fn shapes() -> Vec<Arc<FiniteCategory>> {
    use balanced_core::samples::{discrete, span};
    vec![
        Arc::new(discrete(0)),
        Arc::new(FiniteCategory::terminal()),
        Arc::new(discrete(2)),
        Arc::new(arrow()),
        Arc::new(span()),
    ]
}
