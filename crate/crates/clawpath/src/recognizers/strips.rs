//! Strip compositions: composing linear interval strips over a base of
//! disjoint cliques, and best-effort decomposition by interval 2-join
//! discovery.
//!
//! `compose_strips` follows the three composition rules literally on an
//! evolving graph. `decompose_strips` searches for a partition of the vertex
//! set into strip interiors whose boundary cliques assemble into hub cliques,
//! and only returns a composition whose re-composition reproduces the input
//! exactly; when discovery fails the caller is expected to fall back to the
//! oracle rather than treat the graph as a non-composition.

use super::interval::{representation_from_ordering, umbrella_ordering, IntervalRepresentation};
use super::{find_homogeneous_pair, find_simplicial_vertex, is_quasi_line, RecognizeError};
use crate::bits::BitSet;
use crate::graph::{Graph, Label, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One linear interval strip: a proper interval graph with designated
/// simplicial end vertices sitting at the extremes of its representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Strip {
    /// Strip graph including both end vertices.
    pub edges: Vec<(u32, u32)>,
    pub vertices: Vec<u32>,
    pub end_a: VertexId,
    pub end_b: VertexId,
    pub rep: IntervalRepresentation,
}

impl Strip {
    pub fn graph(&self) -> Graph {
        let max = self.vertices.iter().copied().max().unwrap_or(0) as usize;
        let g = Graph::build(max + 1, &self.edges).unwrap();
        let keep: BitSet = self.vertices.iter().map(|&v| v as usize).collect();
        g.induced_subgraph(&keep).unwrap()
    }
}

/// A base of disjoint cliques over attachment slots plus the ordered strips.
/// Slot 2i is a_i, slot 2i+1 is b_i.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripComposition {
    /// Each inner list is one base clique of slot indices; together they
    /// partition 0..2 * strips.len().
    pub base_cliques: Vec<Vec<usize>>,
    pub strips: Vec<Strip>,
}

impl StripComposition {
    fn validate(&self) -> Result<(), RecognizeError> {
        let want: BTreeSet<usize> = (0..2 * self.strips.len()).collect();
        let mut got = BTreeSet::new();
        for clique in &self.base_cliques {
            for &slot in clique {
                if !got.insert(slot) {
                    return Err(RecognizeError::Precondition(format!(
                        "slot {slot} appears in two base cliques"
                    )));
                }
            }
        }
        if got != want {
            return Err(RecognizeError::Precondition(
                "base cliques do not partition the attachment slots".into(),
            ));
        }
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for strip in &self.strips {
            let g = strip.graph();
            for &v in &strip.vertices {
                if !seen.insert(v) {
                    return Err(RecognizeError::Precondition(format!(
                        "strip vertex {v} reused across strips"
                    )));
                }
            }
            if !strip.rep.realizes(&g) {
                return Err(RecognizeError::Precondition(
                    "strip representation does not realize the strip".into(),
                ));
            }
            // Ends are the extreme points and therefore simplicial.
            let pa = strip.rep.position(strip.end_a);
            let pb = strip.rep.position(strip.end_b);
            let (Some(pa), Some(pb)) = (pa, pb) else {
                return Err(RecognizeError::Precondition("strip end not in strip".into()));
            };
            for &(v, p) in &strip.rep.positions {
                if v != strip.end_a && v != strip.end_b && !(pa < p && p < pb) {
                    return Err(RecognizeError::Precondition(
                        "strip ends are not extremal in the representation".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Apply the composition rules in strip order: take the disjoint union with
/// the next strip, join the neighborhoods of each base slot with the
/// neighborhood of the matching strip end, then delete the four vertices.
pub fn compose_strips(comp: &StripComposition) -> Result<Graph, RecognizeError> {
    comp.validate()?;
    let max_strip_id = comp
        .strips
        .iter()
        .flat_map(|s| s.vertices.iter().copied())
        .max()
        .map(|m| m as usize + 1)
        .unwrap_or(0);
    let slot_base = max_strip_id;
    let slot_id = |slot: usize| slot_base + slot;

    let total = slot_base + 2 * comp.strips.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); total];
    let mut alive: BitSet = BitSet::with_capacity(total);
    let add_edge = |adj: &mut Vec<BTreeSet<usize>>, x: usize, y: usize| {
        if x != y {
            adj[x].insert(y);
            adj[y].insert(x);
        }
    };

    // S_0: disjoint cliques on the slots.
    for clique in &comp.base_cliques {
        for &s in clique {
            alive.insert(slot_id(s));
        }
        for (i, &s) in clique.iter().enumerate() {
            for &t in &clique[i + 1..] {
                add_edge(&mut adj, slot_id(s), slot_id(t));
            }
        }
    }

    for (i, strip) in comp.strips.iter().enumerate() {
        // Disjoint union with the strip.
        for &v in &strip.vertices {
            alive.insert(v as usize);
        }
        for &(u, v) in &strip.edges {
            add_edge(&mut adj, u as usize, v as usize);
        }
        for (slot, end) in [
            (slot_id(2 * i), strip.end_a),
            (slot_id(2 * i + 1), strip.end_b),
        ] {
            let left: Vec<usize> = adj[slot].iter().copied().collect();
            let right: Vec<usize> = adj[end.index()].iter().copied().collect();
            for &x in &left {
                for &y in &right {
                    if alive.contains(x) && alive.contains(y) {
                        add_edge(&mut adj, x, y);
                    }
                }
            }
        }
        for gone in [
            slot_id(2 * i),
            slot_id(2 * i + 1),
            strip.end_a.index(),
            strip.end_b.index(),
        ] {
            alive.remove(gone);
            let nbrs: Vec<usize> = adj[gone].iter().copied().collect();
            for x in nbrs {
                adj[x].remove(&gone);
            }
            adj[gone].clear();
        }
    }

    let mut edges = Vec::new();
    for x in alive.iter() {
        for &y in &adj[x] {
            if x < y {
                edges.push((x as u32, y as u32));
            }
        }
    }
    let g = Graph::build(total.max(1), &edges)
        .map_err(|e| RecognizeError::Precondition(format!("composition broke: {e}")))?;
    Ok(g.induced_subgraph(&alive).unwrap())
}

struct CandidateStrip {
    interior: BitSet,
    left: BitSet,
    right: BitSet,
    hub_left: BitSet,
    hub_right: BitSet,
    order: Vec<VertexId>,
}

fn is_clique(g: &Graph, set: &BitSet) -> bool {
    let members: Vec<usize> = set.iter().collect();
    members.iter().enumerate().all(|(i, &x)| {
        members[i + 1..]
            .iter()
            .all(|&y| g.has_edge(VertexId(x as u32), VertexId(y as u32)))
    })
}

/// Attempt to see `interior` as a strip: boundary vertices must split into
/// two cliques with uniform outside attachments, and the interior with two
/// pendant ends must admit an umbrella ordering anchored at the ends.
fn candidate_strips_for(g: &Graph, interior: &BitSet) -> Vec<CandidateStrip> {
    let mut boundary_groups: Vec<(BitSet, BitSet)> = Vec::new(); // (members, outside nbhd)
    for w in interior.iter() {
        let outside = g
            .neighbor_set(VertexId(w as u32))
            .difference(interior);
        if outside.is_empty() {
            continue;
        }
        match boundary_groups.iter_mut().find(|(_, o)| *o == outside) {
            Some((members, _)) => members.insert(w),
            None => boundary_groups.push((std::iter::once(w).collect(), outside)),
        }
    }
    let splits: Vec<(BitSet, BitSet, BitSet, BitSet)> = match boundary_groups.len() {
        2 => {
            let (la, ba) = boundary_groups[0].clone();
            let (lb, bb) = boundary_groups[1].clone();
            vec![(la, ba, lb, bb)]
        }
        1 if interior.len() == 1 => {
            // Singleton strip: both ends sit on the same vertex; its outside
            // neighborhood must split into the two hubs' remainders.
            let (w, outside) = boundary_groups.into_iter().next().unwrap();
            split_into_two_cliques(g, &outside)
                .into_iter()
                .map(|(b1, b2)| (w.clone(), b1, w.clone(), b2))
                .collect()
        }
        _ => Vec::new(),
    };
    let mut out = Vec::new();
    for (left, hub_l, right, hub_r) in splits {
        if left.is_empty() || right.is_empty() {
            continue;
        }
        if interior.len() > 1 && !left.is_disjoint(&right) {
            continue;
        }
        for set in [&left, &right, &hub_l, &hub_r] {
            if !is_clique(g, set) {
                continue;
            }
        }
        if ![&left, &right, &hub_l, &hub_r].iter().all(|s| is_clique(g, s)) {
            continue;
        }
        // Interior plus pendant ends must be a linear interval strip with the
        // ends extremal.
        let sub = g.induced_subgraph(interior).unwrap();
        let (with_a, a) = sub.add_vertex(&left, Label(vec![]));
        let (strip_graph, b) = with_a.add_vertex(&right, Label(vec![]));
        if let Some(order) = umbrella_ordering(&strip_graph, Some(a), Some(b)) {
            out.push(CandidateStrip {
                interior: interior.clone(),
                left,
                right,
                hub_left: hub_l,
                hub_right: hub_r,
                order: order[1..order.len() - 1].to_vec(),
            });
        }
    }
    out
}

/// All ways to split `set` into two cliques (unordered covers, returned as
/// ordered pairs deterministically). The complement restricted to `set` must
/// be bipartite; each of its components flips independently.
fn split_into_two_cliques(g: &Graph, set: &BitSet) -> Vec<(BitSet, BitSet)> {
    let members: Vec<usize> = set.iter().collect();
    if members.is_empty() {
        return Vec::new();
    }
    // 2-color the complement of g[set].
    let mut color = vec![u8::MAX; members.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..members.len() {
        if color[start] != u8::MAX {
            continue;
        }
        let mut comp = vec![start];
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..members.len() {
                if y == x || g.has_edge(VertexId(members[x] as u32), VertexId(members[y] as u32)) {
                    continue;
                }
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    comp.push(y);
                    stack.push(y);
                } else if color[y] == color[x] {
                    return Vec::new(); // complement odd cycle: not two cliques
                }
            }
        }
        comps.push(comp);
    }
    let mut out = Vec::new();
    let k = comps.len().min(12);
    for mask in 0..(1u32 << k) {
        let mut one = BitSet::default();
        let mut two = BitSet::default();
        for (ci, comp) in comps.iter().enumerate() {
            let flip = ci < k && (mask >> ci) & 1 == 1;
            for &x in comp {
                let side = (color[x] == 1) ^ flip;
                if side {
                    two.insert(members[x]);
                } else {
                    one.insert(members[x]);
                }
            }
        }
        if !one.is_empty() && !two.is_empty() && is_clique(g, &one) && is_clique(g, &two) {
            out.push((one, two));
        }
    }
    out
}

const DECOMPOSE_MAX_VERTICES: usize = 18;

/// Best-effort discovery of a strip composition equal to `g`. Preconditions
/// (quasi-line, no homogeneous pair, no simplicial vertex) are checked and
/// violations reported distinctly. `None` means discovery failed, not that no
/// composition exists.
pub fn decompose_strips(g: &Graph) -> Result<Option<StripComposition>, RecognizeError> {
    if !is_quasi_line(g)? {
        return Err(RecognizeError::Precondition(
            "decompose_strips needs a quasi-line graph".into(),
        ));
    }
    if find_homogeneous_pair(g, &[]).is_some() {
        return Err(RecognizeError::Precondition(
            "decompose_strips needs a graph with no homogeneous pair of cliques".into(),
        ));
    }
    if let Some(v) = find_simplicial_vertex(g) {
        return Err(RecognizeError::Precondition(format!(
            "decompose_strips needs a graph with no simplicial vertex, {v:?} is simplicial"
        )));
    }
    let n = g.vertex_count();
    if n == 0 || n > DECOMPOSE_MAX_VERTICES {
        return Ok(None);
    }
    let verts: Vec<usize> = g.vertex_set().iter().collect();
    // Enumerate candidate strips over all proper subsets.
    let mut candidates: Vec<CandidateStrip> = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let interior: BitSet = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        candidates.extend(candidate_strips_for(g, &interior));
    }
    // Search for a partition of V into candidate interiors.
    fn cover(
        g: &Graph,
        candidates: &[CandidateStrip],
        remaining: &BitSet,
        chosen: &mut Vec<usize>,
        out: &mut Option<Vec<usize>>,
    ) {
        if out.is_some() {
            return;
        }
        let Some(lowest) = remaining.first() else {
            if hubs_consistent(g, candidates, chosen) {
                *out = Some(chosen.clone());
            }
            return;
        };
        for (ci, cand) in candidates.iter().enumerate() {
            if !cand.interior.contains(lowest) || !cand.interior.is_subset(remaining) {
                continue;
            }
            chosen.push(ci);
            let rest = remaining.difference(&cand.interior);
            cover(g, candidates, &rest, chosen, out);
            chosen.pop();
            if out.is_some() {
                return;
            }
        }
    }
    let mut chosen = Vec::new();
    let mut found = None;
    cover(g, &candidates, g.vertex_set(), &mut chosen, &mut found);
    let Some(picks) = found else {
        return Ok(None);
    };
    let comp = build_composition(g, &candidates, &picks);
    match compose_strips(&comp) {
        Ok(recomposed) if recomposed.same_structure(g) => Ok(Some(comp)),
        _ => Ok(None),
    }
}

/// Each strip end determines its hub as end-clique ∪ outside attachment; the
/// hubs must be cliques exactly partitioned by the end cliques mapped to
/// them.
fn hubs_consistent(g: &Graph, candidates: &[CandidateStrip], chosen: &[usize]) -> bool {
    let mut hubs: Vec<(BitSet, usize)> = Vec::new(); // (hub set, member count)
    for &ci in chosen {
        let cand = &candidates[ci];
        for (end, hub_rest) in [(&cand.left, &cand.hub_left), (&cand.right, &cand.hub_right)] {
            let hub = end.union(hub_rest);
            if !is_clique(g, &hub) {
                return false;
            }
            match hubs.iter_mut().find(|(h, _)| *h == hub) {
                Some((_, count)) => *count += end.len(),
                None => hubs.push((hub, end.len())),
            }
        }
    }
    hubs.iter().all(|(hub, covered)| hub.len() == *covered)
}

fn build_composition(g: &Graph, candidates: &[CandidateStrip], picks: &[usize]) -> StripComposition {
    let fresh_base = g.slot_count() as u32;
    let mut strips = Vec::new();
    let mut hub_slots: Vec<(BitSet, Vec<usize>)> = Vec::new();
    for (i, &ci) in picks.iter().enumerate() {
        let cand = &candidates[ci];
        let end_a = VertexId(fresh_base + 2 * i as u32);
        let end_b = VertexId(fresh_base + 2 * i as u32 + 1);
        let mut vertices: Vec<u32> = cand.interior.iter().map(|x| x as u32).collect();
        vertices.push(end_a.0);
        vertices.push(end_b.0);
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let members: Vec<usize> = cand.interior.iter().collect();
        for (ii, &x) in members.iter().enumerate() {
            for &y in &members[ii + 1..] {
                if g.has_edge(VertexId(x as u32), VertexId(y as u32)) {
                    edges.push((x as u32, y as u32));
                }
            }
        }
        for x in cand.left.iter() {
            edges.push((end_a.0, x as u32));
        }
        for x in cand.right.iter() {
            edges.push((end_b.0, x as u32));
        }
        // Anchored ordering: end_a, interior order, end_b.
        let mut order: Vec<usize> = vec![end_a.index()];
        order.extend(cand.order.iter().map(|v| v.index()));
        order.push(end_b.index());
        let max = vertices.iter().copied().max().unwrap() as usize;
        let strip_graph = {
            let gg = Graph::build(max + 1, &edges).unwrap();
            let keep: BitSet = vertices.iter().map(|&v| v as usize).collect();
            gg.induced_subgraph(&keep).unwrap()
        };
        let rep = representation_from_ordering(&strip_graph, &order);
        strips.push(Strip {
            edges,
            vertices,
            end_a,
            end_b,
            rep,
        });
        for (slot, end, hub_rest) in [
            (2 * i, &cand.left, &cand.hub_left),
            (2 * i + 1, &cand.right, &cand.hub_right),
        ] {
            let hub = end.union(hub_rest);
            match hub_slots.iter_mut().find(|(h, _)| *h == hub) {
                Some((_, slots)) => slots.push(slot),
                None => hub_slots.push((hub, vec![slot])),
            }
        }
    }
    StripComposition {
        base_cliques: hub_slots.into_iter().map(|(_, slots)| slots).collect(),
        strips,
    }
}
