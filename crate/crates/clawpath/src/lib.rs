//! Induced-path detection problems on claw-free graphs.
//!
//! The library solves Ordered-k-in-a-Path on claw-free graphs through a
//! solution-preserving reduction pipeline (branching to simple instances,
//! cleaning, quasi-line reduction, homogeneous clique/pair elimination, then
//! structured leaf solvers for interval graphs and line graphs), and derives
//! solvers for k-in-a-Path, k-Induced-Disjoint-Paths and k-Induced-Cycle from
//! it. Exact exponential-time oracles certify every reduction step and final
//! answer at desk scale.

pub mod bits;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod pipeline;
pub mod rational;
pub mod recognizers;
pub mod reductions;
pub mod solvers;

pub use graph::{Graph, Instance, PathCertificate, Variant, VertexId};
pub use oracles::{OracleBudget, Outcome};

