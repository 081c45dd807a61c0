//! JSON file grammars for categories, functors, set-valued functors, posets,
//! monotone maps, finite-set maps and graphs.
//!
//! Identities are implicit everywhere: writers omit them, readers accept
//! them when they agree with the identity laws. Writers emit keys in sorted
//! order and lists in index order, so output is deterministic. Every writer's
//! output is accepted by the matching reader.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::category::{validate_category, FiniteCategory};
use crate::error::{Error, Result, ValidationReport, Violation};
use crate::factorization::{Copresheaf, Presheaf};
use crate::functor::FunctorData;
use crate::instances::{Edge, FinMap, Graph, MonotoneMap, PosetObject};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `g ∘ f = result`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

/// A category: every composite of two non-identity morphisms is listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub compose: Vec<CompositeEntry>,
}

/// A category given inline or as a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(CategoryFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub dom: CategoryRef,
    pub cod: CategoryRef,
    pub obj_map: BTreeMap<String, String>,
    #[serde(default)]
    pub mor_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    /// `X^op → FinSet`; `α: x → y` maps the fiber over `y` to the fiber over `x`.
    #[default]
    Contravariant,
    /// `X → FinSet`; `α: x → y` maps the fiber over `x` to the fiber over `y`.
    Covariant,
}

/// A set-valued functor; `action[α]` lists `[element, image]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    pub base: CategoryRef,
    #[serde(default)]
    pub variance: Variance,
    pub fiber: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<[String; 2]>>,
}

/// A poset; `leq` lists generating pairs `[a, b]` meaning `a ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Path(String),
    Inline(PosetFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonotoneFile {
    pub dom: PosetRef,
    pub cod: PosetRef,
    pub map: BTreeMap<String, String>,
}

/// A function `{0..dom} → {0..cod}` as its list of values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinMapFile {
    pub dom: usize,
    pub cod: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

/// Parses JSON, reporting line and column on failure.
pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: cannot read: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Precondition(format!("`{}` is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

fn report(v: Violation) -> Error {
    ValidationReport { violations: vec![v] }.into()
}

pub fn category_from_file(file: &CategoryFile) -> Result<FiniteCategory> {
    let morphisms: Vec<_> = file.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect();
    let compose: Vec<_> = file.compose.iter().map(|c| (c.g.clone(), c.f.clone(), c.result.clone())).collect();
    Ok(validate_category(&file.objects, &morphisms, &compose)?)
}

pub fn category_to_file(x: &FiniteCategory) -> CategoryFile {
    let morphisms = x
        .proper_morphisms()
        .map(|m| MorphismEntry {
            id: x.morphism_name(m).to_string(),
            src: x.object_name(x.src(m)).to_string(),
            tgt: x.object_name(x.tgt(m)).to_string(),
        })
        .collect();
    let compose = x
        .proper_composites()
        .into_iter()
        .map(|(g, f, r)| CompositeEntry {
            g: x.morphism_name(g).to_string(),
            f: x.morphism_name(f).to_string(),
            result: x.morphism_name(r).to_string(),
        })
        .collect();
    CategoryFile { objects: x.object_names().to_vec(), morphisms, compose }
}

/// Resolves references relative to the directory of the referring file.
#[derive(Debug, Clone)]
pub struct Loader {
    pub dir: PathBuf,
}

impl Loader {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Loader { dir: dir.into() }
    }

    /// The loader for references inside the file at `path`.
    pub fn for_file(path: &Path) -> Self {
        Loader::new(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn category(&self, r: &CategoryRef) -> Result<Arc<FiniteCategory>> {
        match r {
            CategoryRef::Inline(file) => Ok(Arc::new(category_from_file(file)?)),
            CategoryRef::Path(p) => load_category(&self.dir.join(p)),
        }
    }

    pub fn functor(&self, file: &FunctorFile) -> Result<FunctorData> {
        let dom = self.category(&file.dom)?;
        let cod = self.category(&file.cod)?;
        functor_from_maps(dom, cod, &file.obj_map, &file.mor_map)
    }

    pub fn poset(&self, r: &PosetRef) -> Result<Arc<PosetObject>> {
        match r {
            PosetRef::Inline(file) => Ok(Arc::new(poset_from_file(file)?)),
            PosetRef::Path(p) => load_poset(&self.dir.join(p)),
        }
    }

    pub fn monotone(&self, file: &MonotoneFile) -> Result<MonotoneMap> {
        let dom = self.poset(&file.dom)?;
        let cod = self.poset(&file.cod)?;
        let mut map = Vec::with_capacity(dom.len());
        for a in dom.elements() {
            let b = file.map.get(a).ok_or_else(|| report(Violation::UnmappedObject(a.clone())))?;
            map.push(element_index(&cod, b)?);
        }
        for a in file.map.keys() {
            element_index(&dom, a)?;
        }
        MonotoneMap::new(dom, cod, map)
    }

    /// A contravariant file as a presheaf.
    pub fn presheaf(&self, file: &PresheafFile) -> Result<Presheaf> {
        if file.variance != Variance::Contravariant {
            return Err(Error::Precondition("expected a contravariant set-valued functor".into()));
        }
        let base = self.category(&file.base)?;
        let (fibers, action) = set_valued_tables(&base, file, false)?;
        Ok(Presheaf::new(base, fibers, action)?)
    }

    /// A covariant file as a copresheaf.
    pub fn copresheaf(&self, file: &PresheafFile) -> Result<Copresheaf> {
        if file.variance != Variance::Covariant {
            return Err(Error::Precondition("expected a covariant set-valued functor".into()));
        }
        let base = self.category(&file.base)?;
        let (fibers, action) = set_valued_tables(&base, file, true)?;
        Ok(Copresheaf::new(base, fibers, action)?)
    }
}

pub fn load_category(path: &Path) -> Result<Arc<FiniteCategory>> {
    let file: CategoryFile = read_json(path)?;
    Ok(Arc::new(category_from_file(&file)?))
}

pub fn load_functor(path: &Path) -> Result<FunctorData> {
    let file: FunctorFile = read_json(path)?;
    Loader::for_file(path).functor(&file)
}

pub fn load_poset(path: &Path) -> Result<Arc<PosetObject>> {
    let file: PosetFile = read_json(path)?;
    Ok(Arc::new(poset_from_file(&file)?))
}

pub fn load_monotone(path: &Path) -> Result<MonotoneMap> {
    let file: MonotoneFile = read_json(path)?;
    Loader::for_file(path).monotone(&file)
}

pub fn load_presheaf(path: &Path) -> Result<Presheaf> {
    let file: PresheafFile = read_json(path)?;
    Loader::for_file(path).presheaf(&file)
}

pub fn load_copresheaf(path: &Path) -> Result<Copresheaf> {
    let file: PresheafFile = read_json(path)?;
    Loader::for_file(path).copresheaf(&file)
}

pub fn load_finmap(path: &Path) -> Result<FinMap> {
    let file: FinMapFile = read_json(path)?;
    FinMap::new(file.dom, file.cod, file.map)
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file: GraphFile = read_json(path)?;
    Graph::new(file.nodes, &file.edges)
}

/// Builds a functor from name maps; identity images are implied by the
/// object map and may be omitted.
pub fn functor_from_maps(
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
    obj_map: &BTreeMap<String, String>,
    mor_map: &BTreeMap<String, String>,
) -> Result<FunctorData> {
    let mut violations = Vec::new();
    for name in obj_map.keys() {
        if dom.object_index(name).is_none() {
            violations.push(Violation::UnknownObject { context: "obj_map key".into(), name: name.clone() });
        }
    }
    for name in mor_map.keys() {
        if dom.morphism_index(name).is_none() {
            violations.push(Violation::UnknownMorphism { context: "mor_map key".into(), name: name.clone() });
        }
    }
    let mut objs = Vec::with_capacity(dom.num_objects());
    for o in dom.objects() {
        let name = dom.object_name(o);
        match obj_map.get(name) {
            None => violations.push(Violation::UnmappedObject(name.to_string())),
            Some(t) => match cod.object_index(t) {
                Some(i) => objs.push(i),
                None => violations.push(Violation::UnknownObject { context: format!("image of `{name}`"), name: t.clone() }),
            },
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations }.into());
    }
    let mut mors = Vec::with_capacity(dom.num_morphisms());
    for m in dom.morphisms() {
        let name = dom.morphism_name(m);
        match mor_map.get(name) {
            Some(t) => match cod.morphism_index(t) {
                Some(i) => mors.push(i),
                None => {
                    violations.push(Violation::UnknownMorphism { context: format!("image of `{name}`"), name: t.clone() });
                    mors.push(0);
                }
            },
            None if dom.is_identity(m) => mors.push(cod.identity(objs[dom.src(m)])),
            None => {
                violations.push(Violation::UnmappedMorphism(name.to_string()));
                mors.push(0);
            }
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations }.into());
    }
    Ok(FunctorData::new(dom, cod, objs, mors)?)
}

/// Categories are embedded so the file stands alone.
pub fn functor_to_file(f: &FunctorData) -> FunctorFile {
    let (dom, cod) = (f.dom(), f.cod());
    let obj_map = dom.objects().map(|o| (dom.object_name(o).to_string(), cod.object_name(f.obj(o)).to_string())).collect();
    let mor_map = dom
        .proper_morphisms()
        .map(|m| (dom.morphism_name(m).to_string(), cod.morphism_name(f.mor(m)).to_string()))
        .collect();
    FunctorFile {
        dom: CategoryRef::Inline(category_to_file(dom)),
        cod: CategoryRef::Inline(category_to_file(cod)),
        obj_map,
        mor_map,
    }
}

type Tables = (Vec<Vec<String>>, Vec<Vec<usize>>);

fn set_valued_tables(base: &FiniteCategory, file: &PresheafFile, covariant: bool) -> Result<Tables> {
    let mut violations = Vec::new();
    for name in file.fiber.keys() {
        if base.object_index(name).is_none() {
            violations.push(Violation::UnknownObject { context: "fiber key".into(), name: name.clone() });
        }
    }
    for name in file.action.keys() {
        if base.morphism_index(name).is_none() {
            violations.push(Violation::UnknownMorphism { context: "action key".into(), name: name.clone() });
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations }.into());
    }
    let fibers: Vec<Vec<String>> =
        base.objects().map(|o| file.fiber.get(base.object_name(o)).cloned().unwrap_or_default()).collect();
    let mut action = Vec::with_capacity(base.num_morphisms());
    for m in base.morphisms() {
        let name = base.morphism_name(m);
        let (from, to) = if covariant { (base.src(m), base.tgt(m)) } else { (base.tgt(m), base.src(m)) };
        let Some(pairs) = file.action.get(name) else {
            if base.is_identity(m) {
                action.push((0..fibers[from].len()).collect());
                continue;
            }
            if fibers[from].is_empty() {
                action.push(Vec::new());
                continue;
            }
            return Err(Error::Precondition(format!("no action given for `{name}`")));
        };
        let mut row = vec![None; fibers[from].len()];
        for [s, t] in pairs {
            let at = |fib: &[String], l: &String| {
                fib.iter().position(|e| e == l).ok_or_else(|| {
                    Error::Precondition(format!("action of `{name}` mentions `{l}`, which is not in the expected fiber"))
                })
            };
            let (i, j) = (at(&fibers[from], s)?, at(&fibers[to], t)?);
            if row[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::Precondition(format!("action of `{name}` sends `{s}` twice")));
            }
        }
        let row: Option<Vec<usize>> = row.into_iter().collect();
        action.push(row.ok_or_else(|| Error::Precondition(format!("action of `{name}` is not total")))?);
    }
    Ok((fibers, action))
}

fn set_valued_file(
    base: &FiniteCategory,
    fibers: &[Vec<String>],
    action: &[Vec<usize>],
    variance: Variance,
) -> PresheafFile {
    let fiber = base.objects().map(|o| (base.object_name(o).to_string(), fibers[o].clone())).collect();
    let action = base
        .proper_morphisms()
        .map(|m| {
            let (from, to) = match variance {
                Variance::Covariant => (base.src(m), base.tgt(m)),
                Variance::Contravariant => (base.tgt(m), base.src(m)),
            };
            let pairs = action[m].iter().enumerate().map(|(i, &j)| [fibers[from][i].clone(), fibers[to][j].clone()]).collect();
            (base.morphism_name(m).to_string(), pairs)
        })
        .collect();
    PresheafFile { base: CategoryRef::Inline(category_to_file(base)), variance, fiber, action }
}

pub fn presheaf_to_file(p: &Presheaf) -> PresheafFile {
    set_valued_file(p.base(), p.fibers(), p.actions(), Variance::Contravariant)
}

pub fn copresheaf_to_file(p: &Copresheaf) -> PresheafFile {
    set_valued_file(p.base(), p.fibers(), p.actions(), Variance::Covariant)
}

fn element_index(x: &PosetObject, name: &str) -> Result<usize> {
    x.elements().iter().position(|e| e == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
}

pub fn poset_from_file(file: &PosetFile) -> Result<PosetObject> {
    let mut pairs = Vec::with_capacity(file.leq.len());
    for [a, b] in &file.leq {
        let find = |n: &String| {
            file.elements.iter().position(|e| e == n).ok_or_else(|| {
                report(Violation::UnknownObject { context: format!("leq pair [{a}, {b}]"), name: n.clone() })
            })
        };
        pairs.push((find(a)?, find(b)?));
    }
    PosetObject::new(file.elements.clone(), &pairs)
}

/// Writes the strict part of the order.
pub fn poset_to_file(x: &PosetObject) -> PosetFile {
    let e = x.elements();
    PosetFile { elements: e.to_vec(), leq: x.strict_pairs().into_iter().map(|(a, b)| [e[a].clone(), e[b].clone()]).collect() }
}

pub fn monotone_to_file(f: &MonotoneMap) -> MonotoneFile {
    let (d, c) = (f.dom.elements(), f.cod.elements());
    MonotoneFile {
        dom: PosetRef::Inline(poset_to_file(&f.dom)),
        cod: PosetRef::Inline(poset_to_file(&f.cod)),
        map: f.map.iter().enumerate().map(|(a, &b)| (d[a].clone(), c[b].clone())).collect(),
    }
}

pub fn finmap_to_file(f: &FinMap) -> FinMapFile {
    FinMapFile { dom: f.dom, cod: f.cod, map: f.map.clone() }
}

pub fn graph_to_file(g: &Graph) -> GraphFile {
    let edges = (0..g.num_edges())
        .map(|e| {
            let (s, t) = g.edge_ends(e);
            Edge { id: g.edge_name(e).to_string(), src: g.nodes()[s].clone(), tgt: g.nodes()[t].clone() }
        })
        .collect();
    GraphFile { nodes: g.nodes().to_vec(), edges }
}
