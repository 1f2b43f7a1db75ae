//! Ball truncations of Cayley and Schreier graphs, covering projections and
//! CW calculus on subgraphs.

pub mod ball;
pub mod cw;
pub mod dot;
pub mod projection;

pub use ball::{cayley_ball, schreier_ball, Ball, BallKind, Edge, DEFAULT_BUDGET};
pub use cw::{bridge_edges, components, cw_complement, cw_neighborhood, Component, Subgraph};
pub use dot::to_dot;
pub use projection::{preimage, project, Projection};
