//! The data one law is evaluated on, and its standalone serialized form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use balanced_core::instances::{MonotoneMap, PosetObject};
use balanced_core::io::{
    category_from_file, category_to_file, functor_to_file, monotone_to_file, poset_from_file, poset_to_file,
    CategoryFile, FunctorFile, Loader, MonotoneFile, PosetFile,
};
use balanced_core::{FiniteCategory, FunctorData, Result};

/// An instance category with the maps a law needs, grouped by role. Checks
/// are pure functions of a subject, so a subject reproduces its verdict.
#[derive(Debug, Clone)]
pub struct Subject {
    pub category: Arc<FiniteCategory>,
    pub groups: Vec<Vec<FunctorData>>,
    pub poset: Option<Arc<PosetObject>>,
    pub monotone: Vec<MonotoneMap>,
}

impl Subject {
    pub fn bare(category: Arc<FiniteCategory>, poset: Option<Arc<PosetObject>>) -> Self {
        Subject { category, groups: Vec::new(), poset, monotone: Vec::new() }
    }

    pub fn group(&self, i: usize) -> &[FunctorData] {
        self.groups.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn to_file(&self) -> SubjectFile {
        SubjectFile {
            category: category_to_file(&self.category),
            groups: self.groups.iter().map(|g| g.iter().map(functor_to_file).collect()).collect(),
            poset: self.poset.as_deref().map(poset_to_file),
            monotone: self.monotone.iter().map(monotone_to_file).collect(),
        }
    }

    pub fn from_file(file: &SubjectFile) -> Result<Self> {
        let loader = Loader::new(".");
        let groups = file
            .groups
            .iter()
            .map(|g| g.iter().map(|f| loader.functor(f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Subject {
            category: Arc::new(category_from_file(&file.category)?),
            groups,
            poset: file.poset.as_ref().map(poset_from_file).transpose()?.map(Arc::new),
            monotone: file.monotone.iter().map(|m| loader.monotone(m)).collect::<Result<Vec<_>>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubjectFile {
    pub category: CategoryFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<Vec<FunctorFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monotone: Vec<MonotoneFile>,
}
