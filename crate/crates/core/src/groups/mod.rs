//! Group families, words and subgroup oracles.

pub mod folding;
pub mod lattice;
pub mod model;
pub mod subgroup;
pub mod word;

pub use model::GroupModel;
pub use subgroup::{is_member, subgroup_index, CosetKey, IndexClass, Subgroup, SubgroupSpec};
pub use word::{free_reduce, Alphabet, Letter, Word};
