//! Immutable simple undirected graphs with stable vertex identity.
//!
//! Vertices keep their ids across deletions; contraction mints a fresh id
//! whose label records the merge history. Every reduction in this crate
//! returns a new graph value, so branches of the pipeline never alias
//! mutable state.

use crate::bits::BitSet;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// Stable identifier of a vertex. Ids survive vertex deletions; only
/// contraction and explicit vertex addition mint new ones.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Provenance of a vertex: the original input ids it descends from.
/// A plain input vertex carries a single id; a contraction carries the
/// sorted union of the histories of its two endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub Vec<u32>);

impl Label {
    fn merged(a: &Label, b: &Label) -> Label {
        let mut v: Vec<u32> = a.0.iter().chain(b.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Label(v)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {0} out of range (n = {1})")]
    EndpointOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexId),
    #[error("({0:?}, {1:?}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
}

/// An immutable simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    slots: usize,
    present: BitSet,
    adj: Vec<BitSet>,
    labels: Vec<Label>,
}

/// Graphs compare by their present vertices, adjacency, and labels; the size
/// of the id space they were built in is irrelevant.
impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.present == other.present
            && self
                .present
                .iter()
                .all(|v| self.adj[v] == other.adj[v] && self.labels[v] == other.labels[v])
    }
}

impl Eq for Graph {}

impl Graph {
    /// Build a graph on vertices `0..n` from an edge list. Duplicate edges
    /// collapse; out-of-range endpoints and loops are rejected.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut g = Graph {
            slots: n,
            present: (0..n).collect(),
            adj: vec![BitSet::with_capacity(n); n],
            labels: (0..n as u32).map(|i| Label(vec![i])).collect(),
        };
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u as usize].insert(v as usize);
            g.adj[v as usize].insert(u as usize);
        }
        Ok(g)
    }

    /// Path on n vertices 0-1-…-(n-1).
    pub fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Graph::build(n, &edges).unwrap()
    }

    /// Cycle on n ≥ 3 vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        edges.push((n as u32 - 1, 0));
        Graph::build(n, &edges).unwrap()
    }

    /// Complete graph on n vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.len()
    }

    pub fn edge_count(&self) -> usize {
        self.present
            .iter()
            .map(|u| self.adj[u].len())
            .sum::<usize>()
            / 2
    }

    /// Number of id slots ever allocated; valid ids are below this.
    pub fn slot_count(&self) -> usize {
        self.slots
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.present.contains(v.index())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.has_vertex(u) && self.adj[u.index()].contains(v.index())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.present.iter().map(|i| VertexId(i as u32))
    }

    pub fn vertex_set(&self) -> &BitSet {
        &self.present
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.index()].iter().map(|i| VertexId(i as u32))
    }

    pub fn neighbor_set(&self, v: VertexId) -> &BitSet {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v.index()]
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Subgraph induced by `keep` ⊆ V: exactly the edges with both ends in
    /// `keep`; ids and labels preserved.
    pub fn induced_subgraph(&self, keep: &BitSet) -> Result<Graph, GraphError> {
        if let Some(bad) = keep.iter().find(|&i| !self.present.contains(i)) {
            return Err(GraphError::UnknownVertex(VertexId(bad as u32)));
        }
        let mut g = self.clone();
        g.present = keep.clone();
        for i in 0..g.slots {
            if keep.contains(i) {
                g.adj[i].intersect_with(keep);
            } else {
                g.adj[i].clear();
            }
        }
        Ok(g)
    }

    /// Graph minus a set of vertices.
    pub fn remove_vertices(&self, drop: &BitSet) -> Graph {
        let keep = self.present.difference(drop);
        self.induced_subgraph(&keep).unwrap()
    }

    pub fn remove_vertex(&self, v: VertexId) -> Graph {
        self.remove_vertices(&std::iter::once(v.index()).collect())
    }

    /// New graph with edge (u, v) added.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u.0));
        }
        let mut g = self.clone();
        g.adj[u.index()].insert(v.index());
        g.adj[v.index()].insert(u.index());
        Ok(g)
    }

    /// Add a fresh vertex adjacent to `nbrs`, returning its new id.
    pub fn add_vertex(&self, nbrs: &BitSet, label: Label) -> (Graph, VertexId) {
        let mut g = self.clone();
        let id = g.slots;
        g.slots += 1;
        g.present.insert(id);
        g.adj.push(nbrs.intersection(&g.present));
        g.labels.push(label);
        for i in nbrs.iter() {
            if g.present.contains(i) && i != id {
                g.adj[i].insert(id);
            }
        }
        (g, VertexId(id as u32))
    }

    /// Contract edge (u, v): both endpoints are replaced by one fresh vertex
    /// adjacent to N(u) ∪ N(v); the new label records the merged history.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexId), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut nbrs = self.adj[u.index()].union(&self.adj[v.index()]);
        nbrs.remove(u.index());
        nbrs.remove(v.index());
        let label = Label::merged(self.label(u), self.label(v));
        let (g, id) = self.add_vertex(&nbrs, label);
        let mut drop = BitSet::default();
        drop.insert(u.index());
        drop.insert(v.index());
        Ok((g.remove_vertices(&drop), id))
    }

    /// Identify two (not necessarily adjacent) vertices: both are replaced by
    /// one fresh vertex adjacent to N(u) ∪ N(v).
    pub fn identify(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexId), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut nbrs = self.adj[u.index()].union(&self.adj[v.index()]);
        nbrs.remove(u.index());
        nbrs.remove(v.index());
        let label = Label::merged(self.label(u), self.label(v));
        let (g, id) = self.add_vertex(&nbrs, label);
        let mut drop = BitSet::default();
        drop.insert(u.index());
        drop.insert(v.index());
        Ok((g.remove_vertices(&drop), id))
    }

    /// Hop distance between u and v; `None` when they are disconnected.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Option<u32>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut dist = vec![u32::MAX; self.slots];
        dist[u.index()] = 0;
        let mut queue = VecDeque::from([u.index()]);
        while let Some(x) = queue.pop_front() {
            if x == v.index() {
                return Ok(Some(dist[x]));
            }
            for y in self.adj[x].iter() {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Lexicographically smallest shortest path from u to v, if any.
    pub fn shortest_path(&self, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
        if !self.has_vertex(u) || !self.has_vertex(v) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.slots];
        let mut seen = BitSet::with_capacity(self.slots);
        seen.insert(u.index());
        let mut queue = VecDeque::from([u.index()]);
        while let Some(x) = queue.pop_front() {
            if x == v.index() {
                let mut path = vec![x];
                let mut cur = x;
                while cur != u.index() {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path.into_iter().map(|i| VertexId(i as u32)).collect());
            }
            for y in self.adj[x].iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Vertex sets of the connected components, each sorted by id.
    pub fn components(&self) -> Vec<BitSet> {
        let mut seen = BitSet::with_capacity(self.slots);
        let mut out = Vec::new();
        for start in self.present.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BitSet::with_capacity(self.slots);
            let mut queue = VecDeque::from([start]);
            comp.insert(start);
            seen.insert(start);
            while let Some(x) = queue.pop_front() {
                for y in self.adj[x].iter() {
                    if !seen.contains(y) {
                        seen.insert(y);
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Complement on the same vertex set (used by antihole search).
    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for i in 0..g.slots {
            if self.present.contains(i) {
                let mut row = self.present.clone();
                row.difference_with(&self.adj[i]);
                row.remove(i);
                g.adj[i] = row;
            }
        }
        g
    }

    /// Same vertices and edges, ignoring provenance labels.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.present == other.present
            && self.present.iter().all(|v| self.adj[v] == other.adj[v])
    }

    /// Checks the simple-graph representation invariants; used by tests and
    /// debug assertions after graph surgery.
    pub fn check_invariants(&self) -> bool {
        for i in 0..self.slots {
            if !self.present.contains(i) {
                if !self.adj[i].is_empty() {
                    return false;
                }
                continue;
            }
            if self.adj[i].contains(i) || !self.adj[i].is_subset(&self.present) {
                return false;
            }
            for j in self.adj[i].iter() {
                if !self.adj[j].contains(i) {
                    return false;
                }
            }
        }
        true
    }

    /// Why a vertex sequence fails to be an induced path, if it does.
    pub fn check_induced_path(&self, seq: &[VertexId]) -> Result<(), PathDefect> {
        if seq.is_empty() {
            return Err(PathDefect::Empty);
        }
        for (i, &v) in seq.iter().enumerate() {
            if !self.has_vertex(v) {
                return Err(PathDefect::UnknownVertex(v));
            }
            if seq[..i].contains(&v) {
                return Err(PathDefect::RepeatedVertex(v));
            }
        }
        for i in 1..seq.len() {
            if !self.has_edge(seq[i - 1], seq[i]) {
                return Err(PathDefect::MissingEdge(seq[i - 1], seq[i]));
            }
        }
        for i in 0..seq.len() {
            for j in i + 2..seq.len() {
                if self.has_edge(seq[i], seq[j]) {
                    return Err(PathDefect::Chord(seq[i], seq[j]));
                }
            }
        }
        Ok(())
    }

    /// True iff the certificate's sequence is an induced path of this graph.
    pub fn is_induced_path(&self, cert: &PathCertificate) -> bool {
        self.check_induced_path(&cert.vertices).is_ok()
    }

    /// True iff the paths are pairwise vertex-disjoint and non-adjacent.
    /// Each path is expected to be individually valid.
    pub fn are_mutually_induced(&self, paths: &[PathCertificate]) -> bool {
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                for &u in &paths[i].vertices {
                    for &v in &paths[j].vertices {
                        if u == v || self.has_edge(u, v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// True iff the sequence is an induced cycle (length ≥ 3) of this graph.
    pub fn is_induced_cycle(&self, seq: &[VertexId]) -> bool {
        if seq.len() < 3 {
            return false;
        }
        let mut sorted: Vec<_> = seq.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seq.len() {
            return false;
        }
        if seq.iter().any(|&v| !self.has_vertex(v)) {
            return false;
        }
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                let consecutive = j == i + 1 || (i == 0 && j == seq.len() - 1);
                if self.has_edge(seq[i], seq[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.vertex_count(),
            self.edge_count(),
            self.edges()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathDefect {
    Empty,
    UnknownVertex(VertexId),
    RepeatedVertex(VertexId),
    MissingEdge(VertexId, VertexId),
    Chord(VertexId, VertexId),
}

/// An ordered vertex sequence claimed to be an induced path.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCertificate {
    pub vertices: Vec<VertexId>,
    /// Whether the sequence direction is significant (ordered-path variants).
    pub oriented: bool,
}

impl PathCertificate {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        PathCertificate {
            vertices,
            oriented: true,
        }
    }
}

impl fmt::Debug for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path{:?}", self.vertices)
    }
}

/// Which induced-structure problem an instance poses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Induced path visiting the terminals in the given order.
    #[serde(rename = "ordered-path")]
    OrderedPath,
    /// Induced path visiting the terminals in some order.
    #[serde(rename = "path")]
    Path,
    /// Mutually induced paths joining consecutive terminal pairs.
    #[serde(rename = "disjoint-paths")]
    DisjointPaths,
    /// Induced cycle through all terminals.
    #[serde(rename = "cycle")]
    Cycle,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("terminal {0:?} is not a vertex of the graph")]
    UnknownTerminal(VertexId),
    #[error("terminal {0:?} repeated")]
    RepeatedTerminal(VertexId),
    #[error("disjoint-paths instances need an even number of terminals, got {0}")]
    OddPairList(usize),
}

/// A graph plus an ordered terminal list and problem-variant tag.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: Vec<VertexId>,
    pub variant: Variant,
}

impl Instance {
    pub fn new(
        graph: Graph,
        terminals: Vec<VertexId>,
        variant: Variant,
    ) -> Result<Instance, InstanceError> {
        for (i, &t) in terminals.iter().enumerate() {
            if !graph.has_vertex(t) {
                return Err(InstanceError::UnknownTerminal(t));
            }
            if terminals[..i].contains(&t) {
                return Err(InstanceError::RepeatedTerminal(t));
            }
        }
        if variant == Variant::DisjointPaths && terminals.len() % 2 != 0 {
            return Err(InstanceError::OddPairList(terminals.len()));
        }
        Ok(Instance {
            graph,
            terminals,
            variant,
        })
    }

    /// Terminal list read as (s_i, t_i) pairs; only meaningful for the
    /// disjoint-paths variant.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.terminals
            .chunks(2)
            .map(|c| (c[0], c[1]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn build_p3_and_single_vertex() {
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(v(0), v(1)));
        assert!(!g.has_edge(v(0), v(2)));

        let one = Graph::build(1, &[]).unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.edge_count(), 0);
    }

    #[test]
    fn build_collapses_duplicate_edges() {
        let g = Graph::build(4, &[(0, 1), (0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Graph::build(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange(2, 2))
        );
        assert_eq!(Graph::build(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn induced_subgraph_examples() {
        // C5, keep 3 consecutive vertices -> P3
        let c5 = Graph::cycle(5);
        let keep: BitSet = [0usize, 1, 2].into_iter().collect();
        let sub = c5.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);

        // K4, keep 3 vertices -> K3
        let k4 = Graph::complete(4);
        let keep: BitSet = [0usize, 2, 3].into_iter().collect();
        let sub = k4.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.edge_count(), 3);

        // identity: induced_subgraph(g, V(g)) = g
        let g = Graph::build(5, &[(0, 3), (1, 2), (2, 4)]).unwrap();
        assert_eq!(g.induced_subgraph(g.vertex_set()).unwrap(), g);

        let err = c5.induced_subgraph(&[0usize, 9].into_iter().collect());
        assert_eq!(err, Err(GraphError::UnknownVertex(v(9))));
    }

    #[test]
    fn distance_examples() {
        let p4 = Graph::path(4);
        assert_eq!(p4.distance(v(0), v(3)).unwrap(), Some(3));
        assert_eq!(p4.distance(v(2), v(2)).unwrap(), Some(0));

        let two = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(v(0), v(3)).unwrap(), None);
        assert!(two.distance(v(0), VertexId(7)).is_err());
    }

    #[test]
    fn contract_examples() {
        // P3 -> P2
        let (g, _) = Graph::path(3).contract_edge(v(0), v(1)).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.check_invariants());

        // K3 -> K2
        let (g, w) = Graph::complete(3).contract_edge(v(0), v(1)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.label(w).0, vec![0, 1]);

        // C5 -> C4
        let (g, _) = Graph::cycle(5).contract_edge(v(0), v(1)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert!(g.check_invariants());

        assert!(Graph::path(3).contract_edge(v(0), v(2)).is_err());
    }

    #[test]
    fn vertex_ids_stable_across_deletion() {
        let g = Graph::path(5).remove_vertex(v(2));
        assert!(g.has_vertex(v(4)));
        assert!(!g.has_vertex(v(2)));
        assert_eq!(g.label(v(4)).0, vec![4]);
    }

    #[test]
    fn induced_path_examples() {
        let p4 = Graph::path(4);
        assert!(p4.is_induced_path(&PathCertificate::new(vec![v(0), v(1), v(2), v(3)])));

        let c4 = Graph::cycle(4);
        assert!(!c4.is_induced_path(&PathCertificate::new(vec![v(0), v(1), v(2), v(3)])));

        let k3 = Graph::complete(3);
        assert!(!k3.is_induced_path(&PathCertificate::new(vec![v(0), v(1), v(2)])));

        assert_eq!(
            p4.check_induced_path(&[v(0), v(0)]),
            Err(PathDefect::RepeatedVertex(v(0)))
        );
        assert_eq!(p4.check_induced_path(&[]), Err(PathDefect::Empty));
    }

    #[test]
    fn mutually_induced_examples() {
        let c6 = Graph::cycle(6);
        let p = |vs: &[u32]| PathCertificate::new(vs.iter().map(|&i| v(i)).collect());
        assert!(c6.are_mutually_induced(&[p(&[0, 1]), p(&[3, 4])]));
        assert!(!c6.are_mutually_induced(&[p(&[0, 1]), p(&[2, 3])]));
        assert!(c6.are_mutually_induced(&[p(&[0, 1])]));
    }

    #[test]
    fn induced_cycle_check() {
        let c5 = Graph::cycle(5);
        assert!(c5.is_induced_cycle(&[v(0), v(1), v(2), v(3), v(4)]));
        assert!(!c5.is_induced_cycle(&[v(0), v(1), v(2)]));
        let k4 = Graph::complete(4);
        assert!(k4.is_induced_cycle(&[v(0), v(1), v(2)]));
        assert!(!k4.is_induced_cycle(&[v(0), v(1), v(2), v(3)]));
    }

    #[test]
    fn instance_validation() {
        let g = Graph::path(4);
        assert!(Instance::new(g.clone(), vec![v(0), v(3)], Variant::OrderedPath).is_ok());
        assert_eq!(
            Instance::new(g.clone(), vec![v(0), v(0)], Variant::Path).unwrap_err(),
            InstanceError::RepeatedTerminal(v(0))
        );
        assert_eq!(
            Instance::new(g, vec![v(0), v(1), v(2)], Variant::DisjointPaths).unwrap_err(),
            InstanceError::OddPairList(3)
        );
    }
}
