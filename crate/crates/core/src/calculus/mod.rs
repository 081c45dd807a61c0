//! Internal hom-sets, enriched composition, underlying categories, cones,
//! adjunctions, density, tensors and complements.

pub mod adjoint;
pub mod cones;
pub mod density;
pub mod hom;
pub mod shape;
pub mod tensor;
pub mod underlying;

pub use adjoint::{adjunctible_failure, is_adjunctible_at, right_adjoint_underlying, universal_arrow, Adjunction, UniversalArrow};
pub use cones::{cones_under, image_cone, is_absolute, is_colimiting, is_cone, preserves_colimits_check, restrict_cone, ColimitWitness, Cone};
pub use density::{alpha_pullback, comparison, is_adequate_at, is_dense, is_fully_faithful_at, AlphaPullback, Comparison, DensityWitness};
pub use hom::{
    arrow_bijection_violations, arrow_interval, cylinder_violations, enriched_structure, hom_interval, hom_set, ArrowInterval,
    EnrichedStructure, HomElement, HomInterval, HomSet,
};
pub use shape::{homotopic, is_codiscrete, is_groupoidal};
pub use tensor::{
    complement, complement_adjunction, complement_transpose, module_action, module_morphism, tensor, tensor_map,
    ComplementWitness, ModuleAction, Tensor,
};
pub use underlying::{
    arrow_map, arrow_map_between, coarrow_object_map, comparison_with_base, duality_isomorphism, hom_action,
    underlying_category, underlying_functor, unique_lift, yoneda_extension, Underlying,
};
