//! Small named categories used by tests, generators and the CLI.

use std::sync::Arc;

use crate::category::{identity_name, FiniteCategory, Morphism};
use crate::error::{Error, Result};

/// The thin category of a reflexive transitive relation; the arrow `i → j` is
/// named `i<=j`. Fails if `leq` is not a preorder.
pub fn preorder(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory> {
    let n = names.len();
    for i in 0..n {
        if !leq(i, i) {
            return Err(Error::Precondition(format!("`{}` is not below itself", names[i])));
        }
        for j in 0..n {
            for k in 0..n {
                if leq(i, j) && leq(j, k) && !leq(i, k) {
                    return Err(Error::Precondition("relation is not transitive".into()));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut identities = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let name = if i == j { identity_name(&names[i]) } else { format!("{}<={}", names[i], names[j]) };
                if i == j {
                    identities[i] = morphisms.len();
                }
                index[i][j] = morphisms.len();
                morphisms.push(Morphism { name, src: i, tgt: j });
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    FiniteCategory::from_parts(names, morphisms, identities, |g, f| index[ends[f].0][ends[g].1])
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The ordinal `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> FiniteCategory {
    preorder(numbered(n), |i, j| i <= j).expect("total order")
}

/// The arrow category `2`: objects `0`, `1` and one arrow `a: 0 → 1`.
pub fn arrow() -> FiniteCategory {
    let objects = numbered(2);
    let morphisms = vec![
        Morphism { name: identity_name("0"), src: 0, tgt: 0 },
        Morphism { name: identity_name("1"), src: 1, tgt: 1 },
        Morphism { name: "a".into(), src: 0, tgt: 1 },
    ];
    FiniteCategory::from_parts(objects, morphisms, vec![0, 1], |g, f| if g < 2 { f } else { g }).expect("arrow")
}

/// `n` objects and identities only.
pub fn discrete(n: usize) -> FiniteCategory {
    FiniteCategory::discrete(numbered(n))
}

/// The one-object category of a finite monoid given by a multiplication
/// table on `0..n`, element `0` the unit. Morphism `k` is named `names[k]`.
pub fn monoid(names: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<FiniteCategory> {
    let n = names.len();
    for a in 0..n {
        if mul(0, a) != a || mul(a, 0) != a {
            return Err(Error::Precondition("element 0 is not a unit".into()));
        }
        for b in 0..n {
            if mul(a, b) >= n {
                return Err(Error::Precondition("multiplication leaves the carrier".into()));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::Precondition("multiplication is not associative".into()));
                }
            }
        }
    }
    let morphisms = (0..n)
        .map(|k| Morphism { name: if k == 0 { identity_name("o") } else { names[k].to_string() }, src: 0, tgt: 0 })
        .collect();
    FiniteCategory::from_parts(vec!["o".into()], morphisms, vec![0], mul)
}

/// The cyclic group `Z/n` on one object, generator `g`, powers `g2`, `g3`, ….
pub fn cyclic(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|k| if k == 1 { "g".to_string() } else { format!("g{k}") }).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    monoid(&refs, |a, b| (a + b) % n).expect("cyclic group")
}

/// One object with an idempotent `e`.
pub fn idempotent() -> FiniteCategory {
    monoid(&["1", "e"], |a, b| a | b).expect("idempotent monoid")
}

/// Two parallel arrows `f, g: 0 → 1`.
pub fn parallel_pair() -> FiniteCategory {
    let morphisms = vec![
        Morphism { name: identity_name("0"), src: 0, tgt: 0 },
        Morphism { name: identity_name("1"), src: 1, tgt: 1 },
        Morphism { name: "f".into(), src: 0, tgt: 1 },
        Morphism { name: "g".into(), src: 0, tgt: 1 },
    ];
    FiniteCategory::from_parts(numbered(2), morphisms, vec![0, 1], |g, f| if g < 2 { f } else { g })
        .expect("parallel pair")
}

/// `1 ← 0 → 2`.
pub fn span() -> FiniteCategory {
    preorder(numbered(3), |i, j| i == j || i == 0).expect("span")
}

/// `0 → 2 ← 1`.
pub fn cospan() -> FiniteCategory {
    preorder(numbered(3), |i, j| i == j || j == 2).expect("cospan")
}

/// The chaotic category on `n` objects: exactly one arrow between any two.
pub fn chaotic(n: usize) -> FiniteCategory {
    preorder(numbered(n), |_, _| true).expect("chaotic")
}

/// Looks a sample up by name: `arrow`, `chainN`, `discreteN`, `cyclicN`,
/// `chaoticN`, `idempotent`, `parallel`, `span`, `cospan`.
pub fn by_name(name: &str) -> Option<Arc<FiniteCategory>> {
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    let cat = match name {
        "arrow" => arrow(),
        "idempotent" => idempotent(),
        "parallel" => parallel_pair(),
        "span" => span(),
        "cospan" => cospan(),
        _ => {
            if let Some(n) = sized("chain") {
                chain(n)
            } else if let Some(n) = sized("discrete") {
                discrete(n)
            } else if let Some(n) = sized("cyclic").filter(|&n| n > 0) {
                cyclic(n)
            } else if let Some(n) = sized("chaotic") {
                chaotic(n)
            } else {
                return None;
            }
        }
    };
    Some(Arc::new(cat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_satisfy_the_axioms() {
        for name in ["arrow", "chain4", "discrete3", "cyclic3", "chaotic3", "idempotent", "parallel", "span", "cospan"] {
            let c = by_name(name).unwrap();
            assert!(c.axiom_violations().is_empty(), "{name}");
        }
    }

    #[test]
    fn sample_sizes() {
        assert_eq!(chain(3).num_morphisms(), 6);
        assert_eq!(cyclic(4).num_morphisms(), 4);
        assert_eq!(chaotic(3).num_morphisms(), 9);
        assert!(monoid(&["1", "a"], |a, b| (a + b) % 3).is_err());
    }
}
