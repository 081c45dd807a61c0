//! Connected components and the reflection into discrete categories.

use std::sync::Arc;

use crate::category::{FiniteCategory, Obj};
use crate::functor::FunctorData;

/// A finite quotient: `class_of[i]` is the element containing item `i`.
///
/// Elements are numbered in order of their least member, and
/// `representatives[e]` is that least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetQuotient {
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
}

impl FinSetQuotient {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Members of each class, in increasing order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (item, &c) in self.class_of.iter().enumerate() {
            out[c].push(item);
        }
        out
    }

    /// Builds the quotient from a union-find forest.
    pub fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.len();
        let mut root_class = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for i in 0..n {
            let r = uf.find(i);
            if root_class[r] == usize::MAX {
                root_class[r] = representatives.len();
                representatives.push(i);
            }
            class_of.push(root_class[r]);
        }
        FinSetQuotient { representatives, class_of }
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Connected components of a category: objects linked by zig-zags of morphisms.
pub fn pi0(x: &FiniteCategory) -> FinSetQuotient {
    let mut uf = UnionFind::new(x.num_objects());
    for m in x.morphisms() {
        uf.union(x.src(m), x.tgt(m));
    }
    FinSetQuotient::from_union_find(&mut uf)
}

/// The discrete category on the components, objects named after the least
/// object of each component.
pub fn components_category(x: &FiniteCategory, q: &FinSetQuotient) -> FiniteCategory {
    FiniteCategory::discrete(
        q.representatives.iter().map(|&o| x.object_name(o).to_string()).collect(),
    )
}

/// The reflection `X → π0 X` as a functor into the discrete category of components.
pub fn components_functor(x: &Arc<FiniteCategory>) -> (FinSetQuotient, FunctorData) {
    let q = pi0(x);
    let target = Arc::new(components_category(x, &q));
    let obj_map: Vec<Obj> = q.class_of.clone();
    let mor_map = x.morphisms().map(|m| target.identity(q.class_of[x.src(m)])).collect();
    let f = FunctorData::new_unchecked(x.clone(), target, obj_map, mor_map);
    (q, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;

    fn cat(objs: &[&str], mors: &[(&str, &str, &str)]) -> FiniteCategory {
        validate_category(
            &objs.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &mors
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect::<Vec<_>>(),
            &[],
        )
        .unwrap()
    }

    #[test]
    fn interval_is_connected() {
        assert_eq!(pi0(&cat(&["0", "1"], &[("a", "0", "1")])).len(), 1);
    }

    #[test]
    fn two_points_two_components() {
        assert_eq!(pi0(&cat(&["p", "q"], &[])).len(), 2);
    }

    #[test]
    fn parallel_pair_connected() {
        let q = pi0(&cat(&["s", "t"], &[("u", "s", "t"), ("v", "s", "t")]));
        assert_eq!(q.len(), 1);
        assert_eq!(q.representatives, vec![0]);
    }

    #[test]
    fn empty_category_has_no_components() {
        assert!(pi0(&FiniteCategory::empty()).is_empty());
    }
}
