//! Solution-preserving transformations: branching to simple instances,
//! cleaning, C5-apex removal, homogeneous clique contraction, homogeneous
//! pair reduction, and the problem-variant reductions (cycle and disjoint
//! paths down to the ordered problem).

mod lemmas;
mod simple;
mod variants;

pub use lemmas::{
    clean, contract_homogeneous_cliques, reduce_homogeneous_pair, remove_c5_apexes, PairCase,
    PairReduction,
};
pub use simple::{make_simple_instances, SimpleBranch, SimpleBranching};
pub use variants::{
    cycle_to_disjoint_paths, disjoint_paths_to_ordered, split_ordered_certificate, CycleReduction,
    DisjointToOrdered, GapChoice,
};

use crate::bits::BitSet;
use crate::graph::{Graph, Instance, PathCertificate, Variant, VertexId};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("search budget exhausted")]
    Exhausted,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failure: {0}")]
    Invariant(String),
    #[error(transparent)]
    Oracle(#[from] crate::oracles::OracleError),
}

impl From<crate::oracles::Exhausted> for ReduceError {
    fn from(_: crate::oracles::Exhausted) -> Self {
        ReduceError::Exhausted
    }
}

/// What one reduction step did: which vertices went away, the terminal list
/// afterwards, and how to lift a certificate back over the step.
#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub removed: Vec<VertexId>,
    pub terminals_after: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub patch: Option<CertPatch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    SimpleGuess,
    ConsumePrefix,
    ConsumeSuffix,
    Clean,
    C5Apex,
    HomogeneousClique,
    HomogeneousPair(PairCase),
}

/// Certificate patches are applied innermost-first when lifting a reduced
/// certificate back to the origin instance.
#[derive(Debug, Clone, Serialize)]
pub enum CertPatch {
    PrependPath(Vec<VertexId>),
    AppendPath(Vec<VertexId>),
}

/// An auditable log of reduction steps rooted at an origin instance.
/// Replaying the steps reproduces the reduced instance; certificates on the
/// reduced instance lift to origin certificates.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub origin: Instance,
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn new(origin: Instance) -> Self {
        ReductionTrace {
            origin,
            steps: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        kind: StepKind,
        removed: Vec<VertexId>,
        terminals_after: Vec<VertexId>,
        patch: Option<CertPatch>,
    ) {
        self.steps.push(Step {
            kind,
            removed,
            terminals_after,
            patch,
        });
    }

    /// Terminal list after the last step (origin's if no steps).
    pub fn current_terminals(&self) -> &[VertexId] {
        self.steps
            .last()
            .map(|s| s.terminals_after.as_slice())
            .unwrap_or(&self.origin.terminals)
    }

    /// Re-apply all removals to the origin graph.
    pub fn replay(&self) -> Instance {
        let mut g = self.origin.graph.clone();
        for step in &self.steps {
            let drop: BitSet = step.removed.iter().map(|v| v.index()).collect();
            g = g.remove_vertices(&drop);
        }
        Instance {
            graph: g,
            terminals: self.current_terminals().to_vec(),
            variant: self.origin.variant,
        }
    }

    /// Lift a certificate on the reduced instance back to the origin by
    /// applying the recorded patches in reverse step order.
    pub fn lift(&self, cert: &PathCertificate) -> PathCertificate {
        let mut vertices = cert.vertices.clone();
        for step in self.steps.iter().rev() {
            match &step.patch {
                None => {}
                Some(CertPatch::PrependPath(prefix)) => {
                    let mut v = prefix.clone();
                    v.extend(vertices);
                    vertices = v;
                }
                Some(CertPatch::AppendPath(suffix)) => {
                    vertices.extend(suffix.iter().copied());
                }
            }
        }
        PathCertificate::new(vertices)
    }

    /// Append the steps of a trace whose origin is this trace's current
    /// reduced instance.
    pub fn chain(&mut self, later: &ReductionTrace) {
        debug_assert!(later.origin.graph.same_structure(&self.replay().graph));
        self.steps.extend(later.steps.iter().cloned());
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "origin": serde_json::from_str::<serde_json::Value>(
                &crate::io::format_instance_json(&self.origin)
            ).unwrap(),
            "steps": serde_json::to_value(&self.steps).unwrap(),
        })
    }
}

/// The three simplicity conditions: end terminals of degree one, interior
/// terminals of degree two with non-adjacent neighbors, pairwise terminal
/// distance at least four, connected.
pub fn is_simple(inst: &Instance) -> bool {
    let g = &inst.graph;
    let ts = &inst.terminals;
    if ts.len() < 2 {
        return false;
    }
    let k = ts.len();
    for (i, &t) in ts.iter().enumerate() {
        if i == 0 || i == k - 1 {
            if g.degree(t) != 1 {
                return false;
            }
        } else {
            if g.degree(t) != 2 {
                return false;
            }
            let nbrs: Vec<VertexId> = g.neighbors(t).collect();
            if g.has_edge(nbrs[0], nbrs[1]) {
                return false;
            }
        }
    }
    for (i, &a) in ts.iter().enumerate() {
        for &b in &ts[i + 1..] {
            match g.distance(a, b) {
                Ok(Some(d)) if d >= 4 => {}
                _ => return false,
            }
        }
    }
    g.is_connected()
}

/// Convenience for building ordered-path instances inside the pipeline.
#[cfg(test)]
pub(crate) fn ordered_instance(graph: Graph, terminals: Vec<VertexId>) -> Instance {
    Instance {
        graph,
        terminals,
        variant: Variant::OrderedPath,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn trace_replay_and_lift() {
        let origin = ordered_instance(Graph::path(6), vec![v(0), v(5)]);
        let mut trace = ReductionTrace::new(origin);
        trace.push(
            StepKind::ConsumePrefix,
            vec![v(0)],
            vec![v(1), v(5)],
            Some(CertPatch::PrependPath(vec![v(0)])),
        );
        let reduced = trace.replay();
        assert_eq!(reduced.graph.vertex_count(), 5);
        assert!(!reduced.graph.has_vertex(v(0)));
        let cert = PathCertificate::new(vec![v(1), v(2), v(3), v(4), v(5)]);
        let lifted = trace.lift(&cert);
        assert_eq!(lifted.vertices[0], v(0));
        assert!(trace.origin.graph.is_induced_path(&lifted));
    }

    #[test]
    fn simplicity_check() {
        // P9 with end terminals is simple.
        let inst = ordered_instance(Graph::path(9), vec![v(0), v(8)]);
        assert!(is_simple(&inst));
        // Interior terminal of degree 2 with non-adjacent neighbors, far
        // enough from the ends.
        let inst = ordered_instance(Graph::path(9), vec![v(0), v(4), v(8)]);
        assert!(is_simple(&inst));
        // Too close.
        let inst = ordered_instance(Graph::path(9), vec![v(0), v(2), v(8)]);
        assert!(!is_simple(&inst));
        // Disconnected.
        let g = Graph::build(10, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let inst = ordered_instance(g, vec![v(0), v(4)]);
        assert!(!is_simple(&inst));
    }
}
