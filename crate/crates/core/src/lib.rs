//! Exact enumeration of perfect matchings of plane bipartite graphs.
//!
//! The crate has three layers. At the bottom, [`ring`] provides exact
//! scalars (big integers, big rationals, dense polynomials in `q`) and
//! [`graph`] the plane bipartite graph model with declared faces. On top of
//! those, [`oracle`] enumerates perfect matchings by brute force and exposes
//! the superposition mechanics (overlaying two matchings and re-partitioning
//! the union). [`regions`] builds the parametric graph families (Aztec
//! diamonds and rectangles, weighted hexagons, semihexagons, grids), and
//! [`condense`] turns the bilinear matching identities into verifiers and
//! recurrence solvers whose every division is checked exact. [`formulas`]
//! holds the closed forms the solvers are tested against.

pub mod condense;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod regions;
pub mod ring;

pub use graph::{AnchorQuad, GraphError, Pattern, PlaneBipartiteGraph, VertexId};
pub use ring::{RingElem, RingError};
