//! Filtrations, the inverse system of complement components, and end-count
//! estimates.

pub mod filtration;
pub mod system;

pub use filtration::{
    ball_filtration, check_well_filtered, regularize, trapped_components, Filtration,
    FiltrationKind, WellFiltered,
};
pub use system::{
    component_system, ends_estimate, estimate_over, group_ends, pair_ends, pair_ends_on,
    ComponentSystem, EndsEstimate, LevelComponents, Params,
};
