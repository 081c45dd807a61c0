//! Commands that every backend answers through its factorization systems.

use std::path::Path;

use serde_json::{json, Value};

use balanced_core::instances::{
    fincat_bfc, finset_epimono_bfc, make_codiscrete_bfc, make_discrete_bfc, pos_bfc, BfcInstance, FinCat, FinSet,
    LexBackend, Pos,
};
use balanced_core::io::{
    category_to_file, finmap_to_file, functor_to_file, load_category, load_finmap, load_functor, load_monotone,
    load_poset, monotone_to_file, poset_to_file, read_json,
};
use balanced_core::{Error, Result};

use crate::output::{Bundle, Sink};
use crate::{Exit, InstanceKind, Predicate, System};

/// File forms of a backend's objects and maps.
pub trait Files: LexBackend + Sized {
    fn object_value(o: &Self::Object) -> Value;
    fn map_value(f: &Self::Map) -> Value;
    fn load_object(path: &Path) -> Result<Self::Object>;
    fn load_map(path: &Path) -> Result<Self::Map>;
}

impl Files for FinCat {
    fn object_value(o: &Self::Object) -> Value {
        json!(category_to_file(o))
    }
    fn map_value(f: &Self::Map) -> Value {
        json!(functor_to_file(f))
    }
    fn load_object(path: &Path) -> Result<Self::Object> {
        load_category(path)
    }
    fn load_map(path: &Path) -> Result<Self::Map> {
        load_functor(path)
    }
}

impl Files for Pos {
    fn object_value(o: &Self::Object) -> Value {
        json!(poset_to_file(o))
    }
    fn map_value(f: &Self::Map) -> Value {
        json!(monotone_to_file(f))
    }
    fn load_object(path: &Path) -> Result<Self::Object> {
        load_poset(path)
    }
    fn load_map(path: &Path) -> Result<Self::Map> {
        load_monotone(path)
    }
}

impl Files for FinSet {
    fn object_value(o: &Self::Object) -> Value {
        json!(o)
    }
    fn map_value(f: &Self::Map) -> Value {
        json!(finmap_to_file(f))
    }
    /// A finite set is written as its size.
    fn load_object(path: &Path) -> Result<Self::Object> {
        read_json(path)
    }
    fn load_map(path: &Path) -> Result<Self::Map> {
        load_finmap(path)
    }
}

/// Runs `run` with the instance named by the selector. Graphs have no
/// factorization systems.
pub fn with_instance<T>(
    kind: InstanceKind,
    run: impl FnOnce(&dyn GenericOps) -> Result<T>,
) -> Result<T> {
    match kind {
        InstanceKind::Fincat => run(&fincat_bfc()),
        InstanceKind::Pos => run(&pos_bfc()),
        InstanceKind::Finset => run(&finset_epimono_bfc()),
        InstanceKind::Discrete => run(&make_discrete_bfc(FinCat)),
        InstanceKind::Codiscrete => run(&make_codiscrete_bfc(FinCat)),
        InstanceKind::Graph => Err(crate::unsupported("this command", kind)),
    }
}

/// Backend-erased operations.
pub trait GenericOps {
    fn factorize(&self, file: &Path, system: System, sink: &Sink) -> Result<Exit>;
    fn pullback(&self, f: &Path, g: &Path, sink: &Sink) -> Result<Exit>;
    fn pi0(&self, object: &Path, sink: &Sink) -> Result<Exit>;
    fn check(&self, predicate: Predicate, file: &Path, sink: &Sink) -> Result<Exit>;
}

impl<B: Files> GenericOps for BfcInstance<B> {
    fn factorize(&self, file: &Path, system: System, sink: &Sink) -> Result<Exit> {
        let f = B::load_map(file)?;
        let (e, m) = match system {
            System::Left => (self.factorize_left)(&f)?,
            System::Right => (self.factorize_right)(&f)?,
        };
        let mid = self.backend.cod(&e);
        sink.emit_bundle(Bundle::new().with("mid", B::object_value(&mid)).with("e", B::map_value(&e)).with("m", B::map_value(&m)))?;
        Ok(Exit::Success)
    }

    fn pullback(&self, f: &Path, g: &Path, sink: &Sink) -> Result<Exit> {
        let (f, g) = (B::load_map(f)?, B::load_map(g)?);
        let (apex, left, right) = self.backend.pullback(&f, &g)?;
        sink.emit_bundle(
            Bundle::new()
                .with("apex", B::object_value(&apex))
                .with("left", B::map_value(&left))
                .with("right", B::map_value(&right)),
        )?;
        Ok(Exit::Success)
    }

    fn pi0(&self, object: &Path, sink: &Sink) -> Result<Exit> {
        let x = B::load_object(object)?;
        let (set, reflection) = BfcInstance::pi0(self, &x)?;
        sink.emit_bundle(Bundle::new().with("components", B::object_value(&set)).with("reflection", B::map_value(&reflection)))?;
        Ok(Exit::Success)
    }

    fn check(&self, predicate: Predicate, file: &Path, sink: &Sink) -> Result<Exit> {
        let f = B::load_map(file)?;
        let class = match predicate {
            Predicate::Final => &self.in_e,
            Predicate::Df => &self.in_m,
            Predicate::Initial => &self.in_e_dual,
            Predicate::Dof => &self.in_m_dual,
            other => {
                return Err(Error::Precondition(format!(
                    "check {} is not available for the {} instance",
                    other.name(),
                    self.name
                )))
            }
        };
        let holds = class(&f);
        sink.emit(&json!({ "instance": self.name, "predicate": predicate.name(), "holds": holds }))?;
        Ok(Exit::from_bool(holds))
    }
}
