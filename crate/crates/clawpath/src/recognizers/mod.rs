//! Structural recognizers: claws, odd antiholes in neighborhoods, homogeneous
//! cliques and pairs, simplicial vertices, interval representations, strip
//! decompositions, and line-graph roots.

mod interval;
mod line_root;
mod strips;

pub use interval::{
    linear_representation_from_ordering, recognize_circular_interval,
    recognize_linear_interval, umbrella_ordering, Flavor, IntervalRepresentation,
};
pub use line_root::{line_graph, line_graph_root};
pub(crate) use line_root::krausz_partition;
pub use strips::{compose_strips, decompose_strips, Strip, StripComposition};

use crate::bits::BitSet;
use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("input graph is not claw-free (claw at center {center:?})", center = .0.center)]
    NotClawFree(Claw),
    #[error("circular-ordering search refused: {0} vertices exceeds the exhaustive bound")]
    CircularSearchTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// An induced K_{1,3} witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claw {
    pub center: VertexId,
    pub leaves: [VertexId; 3],
}

/// Find an induced claw, or `None` iff the graph is claw-free.
pub fn find_claw(g: &Graph) -> Option<Claw> {
    for center in g.vertices() {
        let nbrs: Vec<VertexId> = g.neighbors(center).collect();
        if nbrs.len() < 3 {
            continue;
        }
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                if g.has_edge(nbrs[i], nbrs[j]) {
                    continue;
                }
                for k in j + 1..nbrs.len() {
                    if !g.has_edge(nbrs[i], nbrs[k]) && !g.has_edge(nbrs[j], nbrs[k]) {
                        return Some(Claw {
                            center,
                            leaves: [nbrs[i], nbrs[j], nbrs[k]],
                        });
                    }
                }
            }
        }
    }
    None
}

/// A vertex whose neighborhood induces a clique, or `None`.
pub fn find_simplicial_vertex(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| {
        let nbrs: Vec<VertexId> = g.neighbors(v).collect();
        nbrs.iter()
            .enumerate()
            .all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Exhaustive search for an induced cycle with an odd number of vertices and
/// at least `min_len` vertices. Feasible because it only runs on small graphs
/// (neighborhood complements, debug assertions at desk scale).
pub fn find_odd_hole(g: &Graph, min_len: usize) -> Option<Vec<VertexId>> {
    debug_assert!(min_len >= 4);
    let verts: Vec<usize> = g.vertex_set().iter().collect();
    for &start in &verts {
        let mut path = vec![start];
        let mut on_path: BitSet = std::iter::once(start).collect();
        if let Some(cycle) = hole_dfs(g, start, &mut path, &mut on_path, min_len) {
            return Some(cycle.into_iter().map(|i| VertexId(i as u32)).collect());
        }
    }
    None
}

fn hole_dfs(
    g: &Graph,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut BitSet,
    min_len: usize,
) -> Option<Vec<usize>> {
    let tail = *path.last().unwrap();
    for w in g.neighbor_set(VertexId(tail as u32)).iter() {
        // Canonical form: the start is the minimum vertex of the cycle.
        if w <= start || on_path.contains(w) {
            continue;
        }
        // w must be non-adjacent to all interior path vertices; adjacency to
        // the start is only allowed when it closes the cycle.
        let mut chord = false;
        let mut closes = false;
        for &p in path.iter() {
            if p == tail {
                continue;
            }
            if g.has_edge(VertexId(w as u32), VertexId(p as u32)) {
                if p == start {
                    closes = true;
                } else {
                    chord = true;
                    break;
                }
            }
        }
        if chord {
            continue;
        }
        if closes {
            let len = path.len() + 1;
            if len >= min_len && len % 2 == 1 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            // A longer cycle through w would keep the chord to the start.
            continue;
        }
        path.push(w);
        on_path.insert(w);
        let hit = hole_dfs(g, start, path, on_path, min_len);
        path.pop();
        on_path.remove(w);
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// A subset of N(u) inducing an odd antihole (complement is an odd hole of
/// length ≥ 5), or `None`. Searches for odd holes in the complement of the
/// neighborhood.
pub fn find_odd_antihole_in_neighborhood(g: &Graph, u: VertexId) -> Option<Vec<VertexId>> {
    let nbrs = g.neighbor_set(u).clone();
    if nbrs.len() < 5 {
        return None;
    }
    let h = g.induced_subgraph(&nbrs).unwrap().complement();
    find_odd_hole(&h, 5)
}

/// True iff no vertex has an odd antihole in its neighborhood. Only defined
/// for claw-free inputs; anything else is reported as an error.
pub fn is_quasi_line(g: &Graph) -> Result<bool, RecognizeError> {
    if let Some(claw) = find_claw(g) {
        return Err(RecognizeError::NotClawFree(claw));
    }
    Ok(g.vertices()
        .all(|u| find_odd_antihole_in_neighborhood(g, u).is_none()))
}

/// Two disjoint cliques, at least one nontrivial, with every outside vertex
/// uniform toward each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousPairWitness {
    pub clique_a: Vec<VertexId>,
    pub clique_b: Vec<VertexId>,
}

impl HomogeneousPairWitness {
    /// Direct check of the definition.
    pub fn validate(&self, g: &Graph) -> bool {
        let a: BitSet = self.clique_a.iter().map(|v| v.index()).collect();
        let b: BitSet = self.clique_b.iter().map(|v| v.index()).collect();
        if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) {
            return false;
        }
        if a.len() < 2 && b.len() < 2 {
            return false;
        }
        if !a.is_subset(g.vertex_set()) || !b.is_subset(g.vertex_set()) {
            return false;
        }
        for set in [&a, &b] {
            let members: Vec<usize> = set.iter().collect();
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    if !g.has_edge(VertexId(x as u32), VertexId(y as u32)) {
                        return false;
                    }
                }
            }
        }
        for v in g.vertices() {
            if a.contains(v.index()) || b.contains(v.index()) {
                continue;
            }
            for set in [&a, &b] {
                let hits = g.neighbor_set(v).intersection_len(set);
                if hits != 0 && hits != set.len() {
                    return false;
                }
            }
        }
        true
    }
}

fn splits(g: &Graph, v: usize, set: &BitSet) -> bool {
    let hits = g.neighbor_set(VertexId(v as u32)).intersection_len(set);
    hits != 0 && hits != set.len()
}

fn adjacent_to_all(g: &Graph, v: usize, set: &BitSet) -> bool {
    g.neighbor_set(VertexId(v as u32)).intersection_len(set) == set.len()
}

/// Grow a seeded pair by forced repair: a vertex that splits one side cannot
/// extend that side's clique, so it is forced into the other. Returns the
/// fixpoint or `None` when a forced placement breaks a clique.
fn grow_pair(g: &Graph, seed_a: &[usize], seed_b: &[usize]) -> Option<(BitSet, BitSet)> {
    let mut a: BitSet = seed_a.iter().copied().collect();
    let mut b: BitSet = seed_b.iter().copied().collect();
    let cap = g.vertex_count() * g.vertex_count() + 1;
    for _ in 0..cap {
        let mut changed = false;
        for v in g.vertex_set().iter() {
            if a.contains(v) || b.contains(v) {
                continue;
            }
            let splits_a = splits(g, v, &a);
            let splits_b = splits(g, v, &b);
            match (splits_a, splits_b) {
                (false, false) => continue,
                (true, true) => return None,
                (true, false) => {
                    if !adjacent_to_all(g, v, &b) {
                        return None;
                    }
                    b.insert(v);
                }
                (false, true) => {
                    if !adjacent_to_all(g, v, &a) {
                        return None;
                    }
                    a.insert(v);
                }
            }
            changed = true;
            break;
        }
        if !changed {
            return Some((a, b));
        }
    }
    None
}

fn to_sorted_ids(set: &BitSet) -> Vec<VertexId> {
    set.iter().map(|i| VertexId(i as u32)).collect()
}

/// Find a homogeneous pair of cliques with neither side equal to any excluded
/// set. Seeds every adjacent pair plus a third vertex for the nontrivial side
/// and grows by uniformity-violation repair.
pub fn find_homogeneous_pair(
    g: &Graph,
    excluded: &[Vec<VertexId>],
) -> Option<HomogeneousPairWitness> {
    let excluded_sets: Vec<BitSet> = excluded
        .iter()
        .map(|set| set.iter().map(|v| v.index()).collect())
        .collect();
    let verts: Vec<usize> = g.vertex_set().iter().collect();
    let try_seed = |seed_big: [usize; 2], single: usize, big_is_a: bool| {
        let (seed_a, seed_b): (&[usize], &[usize]) = if big_is_a {
            (&seed_big, std::slice::from_ref(&single))
        } else {
            (std::slice::from_ref(&single), &seed_big)
        };
        let (a, b) = grow_pair(g, seed_a, seed_b)?;
        if excluded_sets.iter().any(|e| *e == a || *e == b) {
            return None;
        }
        let witness = HomogeneousPairWitness {
            clique_a: to_sorted_ids(&a),
            clique_b: to_sorted_ids(&b),
        };
        witness.validate(g).then_some(witness)
    };
    for (i, &x) in verts.iter().enumerate() {
        for &y in &verts[i + 1..] {
            if !g.has_edge(VertexId(x as u32), VertexId(y as u32)) {
                continue;
            }
            for &z in &verts {
                if z == x || z == y {
                    continue;
                }
                if let Some(w) = try_seed([x, y], z, true) {
                    return Some(w);
                }
                if let Some(w) = try_seed([x, y], z, false) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Check whether `clique` (already a clique) is homogeneous: every outside
/// vertex adjacent to all of it or none of it.
fn clique_is_homogeneous(g: &Graph, clique: &BitSet) -> bool {
    g.vertex_set()
        .iter()
        .filter(|&v| !clique.contains(v))
        .all(|v| !splits(g, v, clique))
}

/// Find a nontrivial homogeneous clique. Every 2-subset of a homogeneous
/// clique is itself homogeneous, so checking edges and growing maximally is
/// complete.
pub fn find_homogeneous_clique(g: &Graph) -> Option<Vec<VertexId>> {
    for (u, v) in g.edges() {
        let mut a: BitSet = [u.index(), v.index()].into_iter().collect();
        if !clique_is_homogeneous(g, &a) {
            continue;
        }
        loop {
            let grown = g.vertex_set().iter().find(|&w| {
                !a.contains(w) && adjacent_to_all(g, w, &a) && {
                    let mut bigger = a.clone();
                    bigger.insert(w);
                    clique_is_homogeneous(g, &bigger)
                }
            });
            match grown {
                Some(w) => a.insert(w),
                None => break,
            }
        }
        return Some(to_sorted_ids(&a));
    }
    None
}

/// The Petersen graph, a handy claw witness factory for tests.
#[cfg(test)]
pub(crate) fn petersen() -> Graph {
    Graph::build(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .unwrap()
}
