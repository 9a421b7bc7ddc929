//! Leaf solvers of the pipeline: linear interval solving, the circular cut,
//! strip-composition-to-line-graph conversion, and line-graph solving via
//! vertex-disjoint paths in the root multigraph.

mod disjoint;
mod line_graph;
mod linear;
mod strips;

pub use disjoint::solve_disjoint_paths_root;
pub use line_graph::{solve_line_graph, solve_line_graph_metered, solve_on_root};
pub use linear::{circular_to_linear, mirror_circular, solve_lin_or_cut, solve_linear_interval, CircularCut};
pub use strips::{strips_to_line_graph, StripLineGraph};

use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A multigraph whose line graph is isomorphic to an associated `Graph`,
/// together with the edge ↔ line-vertex bijection. Parallel edges are
/// distinct entries with their own identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootMultigraph {
    pub vertex_count: usize,
    /// Edge id -> endpoints (root-vertex indices, a <= b, a != b).
    pub edges: Vec<(usize, usize)>,
    /// Edge id -> the line-graph vertex this edge corresponds to.
    pub line_vertices: Vec<VertexId>,
}

impl RootMultigraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Root vertices adjacent to `v` (ignoring edge multiplicity), ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Line-graph vertex of an edge id.
    pub fn line_vertex(&self, edge: usize) -> VertexId {
        self.line_vertices[edge]
    }

    /// Edge id carrying a given line-graph vertex.
    pub fn edge_of_line_vertex(&self, v: VertexId) -> Option<usize> {
        self.line_vertices.iter().position(|&u| u == v)
    }

    /// The line graph on fresh ids 0..edge_count: vertices are edge ids,
    /// adjacent iff the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let m = self.edges.len();
        let mut ledges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    ledges.push((i as u32, j as u32));
                }
            }
        }
        Graph::build(m, &ledges).unwrap()
    }

    /// Exact round-trip check: under the stored bijection, the line graph of
    /// this root equals `g`.
    pub fn realizes_line_graph(&self, g: &Graph) -> bool {
        let mut mapped: Vec<VertexId> = self.line_vertices.clone();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped.len() != self.line_vertices.len() {
            return false;
        }
        let gverts: Vec<VertexId> = g.vertices().collect();
        if mapped != gverts {
            return false;
        }
        let m = self.edges.len();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                let share = a == c || a == d || b == c || b == d;
                if share != g.has_edge(self.line_vertices[i], self.line_vertices[j]) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph is not a line graph")]
    NotLineGraph,
    #[error("representation does not realize the input graph")]
    BadRepresentation,
    #[error("terminals must be independent and ordered along the line, got {0}")]
    BadTerminals(String),
    #[error("search budget exhausted")]
    Exhausted,
}
