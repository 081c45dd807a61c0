//! Finite acyclic reflexive graphs: paths, free categories and the
//! components of `X[x,y]`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::category::{identity_name, FiniteCategory, Morphism, Obj};
use crate::components::UnionFind;
use crate::error::{Error, Result, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Nodes and non-loop edges; the reflexive loops are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<String>,
    edges: Vec<(String, usize, usize)>,
    out: Vec<Vec<usize>>,
}

/// A path as the list of its edges in traversal order.
pub type Path = Vec<usize>;

impl Graph {
    /// Rejects unknown endpoints, repeated names and directed cycles; a
    /// self-loop edge counts as a cycle.
    pub fn new(nodes: Vec<String>, edges: &[Edge]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Precondition(format!("node `{n}` is repeated")));
            }
        }
        let mut ids = HashMap::new();
        let mut list = Vec::with_capacity(edges.len());
        let mut out = vec![Vec::new(); nodes.len()];
        for e in edges {
            if ids.insert(e.id.clone(), ()).is_some() {
                return Err(Error::Precondition(format!("edge `{}` is repeated", e.id)));
            }
            let end = |n: &String| index.get(n).copied().ok_or_else(|| Error::UnknownObject(n.clone()));
            let (s, t) = (end(&e.src)?, end(&e.tgt)?);
            out[s].push(list.len());
            list.push((e.id.clone(), s, t));
        }
        let g = Graph { nodes, edges: list, out };
        if let Some(cycle) = g.find_cycle() {
            let names = cycle.iter().map(|&v| g.nodes[v].clone()).collect();
            return Err(ValidationReport { violations: vec![Violation::Cycle(names)] }.into());
        }
        Ok(g)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_index(&self, name: &str) -> Result<usize> {
        self.nodes.iter().position(|n| n == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].0
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].1, self.edges[e].2)
    }

    /// A directed cycle as its node sequence, closing back on the first node.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 unvisited, 1 on the stack, 2 done
        let mut state = vec![0u8; self.nodes.len()];
        let mut stack = Vec::new();
        for start in 0..self.nodes.len() {
            if state[start] == 0 {
                if let Some(c) = self.cycle_from(start, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn cycle_from(&self, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &e in &self.out[v] {
            let w = self.edges[e].2;
            if state[w] == 1 {
                let at = stack.iter().position(|&u| u == w).expect("on stack");
                let mut cycle = stack[at..].to_vec();
                cycle.push(w);
                return Some(cycle);
            }
            if state[w] == 0 {
                if let Some(c) = self.cycle_from(w, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }

    /// Every path from `x` to `y`, in depth-first order; the empty path when
    /// `x = y`.
    pub fn paths(&self, x: usize, y: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(x, y, &mut current, &mut out);
        out
    }

    fn extend(&self, at: usize, y: usize, current: &mut Path, out: &mut Vec<Path>) {
        if at == y {
            out.push(current.clone());
        }
        for &e in &self.out[at] {
            current.push(e);
            self.extend(self.edges[e].2, y, current, out);
            current.pop();
        }
    }

    pub fn path_name(&self, at: usize, p: &[usize]) -> String {
        if p.is_empty() {
            identity_name(&self.nodes[at])
        } else {
            p.iter().map(|&e| self.edges[e].0.as_str()).collect::<Vec<_>>().join(";")
        }
    }

    /// The free category: arrows are paths, composed by concatenation.
    pub fn free_category(&self) -> FiniteCategory {
        let n = self.nodes.len();
        let mut morphisms = Vec::new();
        let mut paths = Vec::new();
        let mut index: HashMap<(usize, Path), usize> = HashMap::new();
        let mut identities = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                for p in self.paths(x, y) {
                    if p.is_empty() {
                        identities[x] = morphisms.len();
                    }
                    index.insert((x, p.clone()), morphisms.len());
                    morphisms.push(Morphism { name: self.path_name(x, &p), src: x, tgt: y });
                    paths.push((x, p));
                }
            }
        }
        FiniteCategory::from_parts(self.nodes.clone(), morphisms, identities, |g, f| {
            let (x, pf) = &paths[f];
            let mut joined = pf.clone();
            joined.extend_from_slice(&paths[g].1);
            index[&(*x, joined)]
        })
        .expect("free category on an acyclic graph")
    }

    /// `π0 X[x,y]`: vertices are splittings `⟨α: x → z, β: z → y⟩`, with an
    /// edge `⟨α, aβ'⟩ → ⟨aα, β'⟩` over each edge `a`. Returns, per component,
    /// the composite path; asserts that this is a bijection onto the paths.
    pub fn interval_components(&self, x: usize, y: usize) -> Result<Vec<Path>> {
        let mut vertices: Vec<(Path, Path)> = Vec::new();
        let mut index: HashMap<(Path, Path), usize> = HashMap::new();
        for z in 0..self.nodes.len() {
            for alpha in self.paths(x, z) {
                for beta in self.paths(z, y) {
                    index.insert((alpha.clone(), beta.clone()), vertices.len());
                    vertices.push((alpha.clone(), beta));
                }
            }
        }
        let mut uf = UnionFind::new(vertices.len());
        for (i, (alpha, beta)) in vertices.iter().enumerate() {
            if let Some((&a, rest)) = beta.split_first() {
                let mut longer = alpha.clone();
                longer.push(a);
                let j = index[&(longer, rest.to_vec())];
                uf.union(i, j);
            }
        }
        let quotient = crate::components::FinSetQuotient::from_union_find(&mut uf);
        let composites: Vec<Path> = quotient
            .representatives
            .iter()
            .map(|&r| {
                let (alpha, beta) = &vertices[r];
                let mut p = alpha.clone();
                p.extend_from_slice(beta);
                p
            })
            .collect();
        for (i, (alpha, beta)) in vertices.iter().enumerate() {
            let mut p = alpha.clone();
            p.extend_from_slice(beta);
            if composites[quotient.class_of[i]] != p {
                return Err(Error::Postcondition("a component of X[x,y] mixes two paths".into()));
            }
        }
        let mut sorted = composites.clone();
        sorted.sort();
        let mut paths = self.paths(x, y);
        paths.sort();
        if sorted != paths {
            return Err(Error::Postcondition("components of X[x,y] are not the paths x → y".into()));
        }
        Ok(composites)
    }

    /// `X̄(x,y)` read off the free category.
    pub fn underlying_hom(&self, free: &FiniteCategory, x: Obj, y: Obj) -> Vec<String> {
        free.hom(x, y).map(|m| free.morphism_name(m).to_string()).collect()
    }
}
