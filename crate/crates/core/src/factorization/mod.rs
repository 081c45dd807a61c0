//! Orthogonality and the comprehensive factorization systems on finite
//! categories.

mod factorize;
mod predicates;
mod presheaf;

pub use factorize::{
    check_postconditions, factorize, factorize_left, factorize_right, factorizations_isomorphic, reflect_df,
    reflect_dof, FactorizationResult, System,
};
pub use predicates::{
    coslice_components, is_discrete_fibration, is_discrete_opfibration, is_final, is_initial, is_initial_object,
    is_orthogonal, is_terminal_object, slice_components, Check, CommaComponents, ComponentWitness, LiftWitness,
    SquareWitness,
};
pub use presheaf::{Copresheaf, Presheaf};
