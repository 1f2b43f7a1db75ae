//! Ends of finitely generated groups and filtered ends of group pairs,
//! estimated on finite balls of Cayley and Schreier coset graphs.

pub mod ends;
pub mod error;
pub mod graph;
pub mod groups;
pub mod report;

pub use error::{Error, Result};
