//! Generator configuration.

use serde::{Deserialize, Serialize};

use balanced_core::{Error, Result};

/// The associativity-safe families instances are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RandomPoset,
    DagFreeCategory,
    CyclicGroupCategory,
    Product,
    Coproduct,
    IntervalPower,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::RandomPoset,
        Family::DagFreeCategory,
        Family::CyclicGroupCategory,
        Family::Product,
        Family::Coproduct,
        Family::IntervalPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomPoset => "random-poset",
            Family::DagFreeCategory => "dag-free-category",
            Family::CyclicGroupCategory => "cyclic-group-category",
            Family::Product => "product",
            Family::Coproduct => "coproduct",
            Family::IntervalPower => "interval-power",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Precondition(format!("unknown family `{name}`")))
    }
}

/// `per_family` instances are generated from each listed family, in the
/// listed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub families: Vec<Family>,
    pub per_family: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { seed: 0, max_objects: 5, max_morphisms: 30, families: Family::ALL.to_vec(), per_family: 4 }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig { seed, ..GeneratorConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_objects == 0 || self.max_morphisms == 0 {
            return Err(Error::Precondition("bounds must be positive".into()));
        }
        if self.max_morphisms < self.max_objects {
            return Err(Error::Precondition("max_morphisms must be at least max_objects".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Precondition("at least one family is required".into()));
        }
        if self.per_family == 0 {
            return Err(Error::Precondition("per_family must be positive".into()));
        }
        Ok(())
    }
}
