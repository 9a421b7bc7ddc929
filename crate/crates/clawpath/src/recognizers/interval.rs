//! Linear (proper) and circular interval recognition.
//!
//! Linear recognition runs multi-sweep lexicographic BFS and accepts iff the
//! final sweep is an umbrella ordering (every closed neighborhood occupies
//! consecutive positions). Circular recognition first tries the linear route,
//! then falls back to an exhaustive circular-ordering search for small
//! graphs. Every returned representation is re-expanded and checked against
//! the input before it leaves this module.

use super::RecognizeError;
use crate::bits::BitSet;
use crate::graph::{Graph, VertexId};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "circular")]
    Circular,
}

/// Points plus closed intervals; two vertices are adjacent in the represented
/// graph iff they belong to a common interval. Circular flavors wrap modulo
/// `circumference`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRepresentation {
    pub flavor: Flavor,
    /// Vertex -> point, all points distinct.
    pub positions: Vec<(VertexId, Rat)>,
    /// Closed intervals. On the circle an interval runs clockwise from start
    /// to end.
    pub intervals: Vec<(Rat, Rat)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circumference: Option<Rat>,
}

impl IntervalRepresentation {
    pub fn position(&self, v: VertexId) -> Option<Rat> {
        self.positions.iter().find(|(u, _)| *u == v).map(|&(_, p)| p)
    }

    fn contains(&self, interval: (Rat, Rat), p: Rat) -> bool {
        match self.flavor {
            Flavor::Linear => interval.0 <= p && p <= interval.1,
            Flavor::Circular => {
                let c = self.circumference.expect("circular without circumference");
                let norm = |mut d: Rat| {
                    while d < Rat::int(0) {
                        d = d + c;
                    }
                    while d >= c {
                        d = d - c;
                    }
                    d
                };
                norm(p - interval.0) <= norm(interval.1 - interval.0)
            }
        }
    }

    /// True iff two points share some interval.
    pub fn points_adjacent(&self, p: Rat, q: Rat) -> bool {
        self.intervals
            .iter()
            .any(|&iv| self.contains(iv, p) && self.contains(iv, q))
    }

    /// Re-derive adjacency from the representation and compare with `g`.
    pub fn realizes(&self, g: &Graph) -> bool {
        let verts: Vec<VertexId> = self.positions.iter().map(|&(v, _)| v).collect();
        let gset: Vec<VertexId> = g.vertices().collect();
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        if sorted != gset {
            return false;
        }
        // Positions must be pairwise distinct.
        let mut points: Vec<Rat> = self.positions.iter().map(|&(_, p)| p).collect();
        points.sort_unstable();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                let pu = self.position(u).unwrap();
                let pv = self.position(v).unwrap();
                if self.points_adjacent(pu, pv) != g.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Lexicographic BFS restricted to `comp`, starting at `start`. Ties are
/// broken toward the vertex appearing latest in `prev` when given (the "+"
/// rule), else toward the smallest id.
fn lexbfs(g: &Graph, comp: &BitSet, start: usize, prev: Option<&[usize]>) -> Vec<usize> {
    let slots = g.slot_count();
    let mut prev_pos = vec![0usize; slots];
    if let Some(order) = prev {
        for (i, &v) in order.iter().enumerate() {
            prev_pos[v] = i;
        }
    }
    let n = comp.len();
    let mut label: Vec<Vec<u32>> = vec![Vec::new(); slots];
    let mut visited = BitSet::with_capacity(slots);
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let pick = if step == 0 {
            start
        } else {
            comp.iter()
                .filter(|&v| !visited.contains(v))
                .max_by(|&a, &b| {
                    label[a]
                        .cmp(&label[b])
                        .then(prev_pos[a].cmp(&prev_pos[b]))
                        .then(b.cmp(&a))
                })
                .unwrap()
        };
        visited.insert(pick);
        order.push(pick);
        let stamp = (n - step) as u32;
        for w in g.neighbor_set(VertexId(pick as u32)).iter() {
            if comp.contains(w) && !visited.contains(w) {
                label[w].push(stamp);
            }
        }
    }
    order
}

/// True iff every closed neighborhood occupies consecutive positions.
fn is_umbrella_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![usize::MAX; g.slot_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&u| {
        let mut lo = pos[u];
        let mut hi = pos[u];
        for w in g.neighbor_set(VertexId(u as u32)).iter() {
            lo = lo.min(pos[w]);
            hi = hi.max(pos[w]);
        }
        hi - lo == g.degree(VertexId(u as u32))
    })
}

/// Proper-interval ordering of the whole graph via three LexBFS sweeps per
/// component, or `None` iff the graph is not a linear interval graph.
fn proper_interval_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut order = Vec::new();
    for comp in g.components() {
        let first = comp.first().unwrap();
        let s1 = lexbfs(g, &comp, first, None);
        let s2 = lexbfs(g, &comp, *s1.last().unwrap(), Some(&s1));
        let s3 = lexbfs(g, &comp, *s2.last().unwrap(), Some(&s2));
        if !is_umbrella_ordering(g, &s3) {
            return None;
        }
        order.extend(s3);
    }
    if is_umbrella_ordering(g, &order) {
        Some(order)
    } else {
        None
    }
}

/// Build the canonical representation from an umbrella ordering: integer
/// positions in order, one interval per vertex reaching its rightmost closed
/// neighbor.
pub(crate) fn representation_from_ordering(g: &Graph, order: &[usize]) -> IntervalRepresentation {
    let mut pos = vec![usize::MAX; g.slot_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let positions: Vec<(VertexId, Rat)> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (VertexId(v as u32), Rat::int(i as i64)))
        .collect();
    let intervals: Vec<(Rat, Rat)> = order
        .iter()
        .map(|&u| {
            let right = g
                .neighbor_set(VertexId(u as u32))
                .iter()
                .map(|w| pos[w])
                .max()
                .unwrap_or(pos[u])
                .max(pos[u]);
            (Rat::int(pos[u] as i64), Rat::int(right as i64))
        })
        .collect();
    IntervalRepresentation {
        flavor: Flavor::Linear,
        positions,
        intervals,
        circumference: None,
    }
}

/// Canonical linear representation derived from a caller-supplied umbrella
/// ordering, verified against the graph. Intended for building fixtures.
pub fn linear_representation_from_ordering(
    g: &Graph,
    order: &[VertexId],
) -> Option<IntervalRepresentation> {
    let raw: Vec<usize> = order.iter().map(|v| v.index()).collect();
    if !is_umbrella_ordering(g, &raw) {
        return None;
    }
    let rep = representation_from_ordering(g, &raw);
    rep.realizes(g).then_some(rep)
}

/// A linear representation, or `None` iff g is not a linear interval
/// (= proper interval) graph. The returned representation is verified by
/// re-deriving adjacency.
pub fn recognize_linear_interval(g: &Graph) -> Option<IntervalRepresentation> {
    if g.vertex_count() == 0 {
        return Some(IntervalRepresentation {
            flavor: Flavor::Linear,
            positions: Vec::new(),
            intervals: Vec::new(),
            circumference: None,
        });
    }
    let order = proper_interval_ordering(g)?;
    let rep = representation_from_ordering(g, &order);
    debug_assert!(rep.realizes(g));
    rep.realizes(g).then_some(rep)
}

/// Backtracking search for an umbrella ordering with optional anchored first
/// and last vertices. Used by strip decomposition, where the strip ends must
/// sit at the extremes. Exact, intended for small graphs.
pub fn umbrella_ordering(
    g: &Graph,
    first: Option<VertexId>,
    last: Option<VertexId>,
) -> Option<Vec<VertexId>> {
    let verts: Vec<usize> = g.vertex_set().iter().collect();
    let n = verts.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = BitSet::with_capacity(g.slot_count());
    fn rec(
        g: &Graph,
        verts: &[usize],
        order: &mut Vec<usize>,
        placed: &mut BitSet,
        first: Option<usize>,
        last: Option<usize>,
    ) -> bool {
        let n = verts.len();
        let i = order.len();
        if i == n {
            return true;
        }
        for &w in verts {
            if placed.contains(w) {
                continue;
            }
            if i == 0 {
                if let Some(f) = first {
                    if w != f {
                        continue;
                    }
                }
            }
            if let Some(l) = last {
                if w == l && i != n - 1 {
                    continue;
                }
                if w != l && i == n - 1 {
                    continue;
                }
            }
            // Placed neighbors of w must form a contiguous suffix of the
            // current order.
            let wid = VertexId(w as u32);
            let mut suffix_ok = true;
            let mut in_suffix = true;
            for &p in order.iter().rev() {
                let adj = g.has_edge(wid, VertexId(p as u32));
                if adj {
                    if !in_suffix {
                        suffix_ok = false;
                        break;
                    }
                } else {
                    in_suffix = false;
                    // p is skipped: its neighborhood must be fully placed,
                    // or some later vertex would break its window.
                    if g.neighbor_set(VertexId(p as u32))
                        .iter()
                        .any(|q| !placed.contains(q))
                    {
                        suffix_ok = false;
                        break;
                    }
                }
            }
            if !suffix_ok {
                continue;
            }
            order.push(w);
            placed.insert(w);
            if rec(g, verts, order, placed, first, last) {
                return true;
            }
            order.pop();
            placed.remove(w);
        }
        false
    }
    if rec(
        g,
        &verts,
        &mut order,
        &mut placed,
        first.map(|v| v.index()),
        last.map(|v| v.index()),
    ) && is_umbrella_ordering(g, &order)
    {
        Some(order.into_iter().map(|i| VertexId(i as u32)).collect())
    } else {
        None
    }
}

const CIRCULAR_SEARCH_MAX: usize = 12;

/// Closed neighborhood of each vertex as a position bitmask helper for the
/// circular search.
struct CircularSearch<'a> {
    g: &'a Graph,
    verts: Vec<usize>,
    order: Vec<usize>,
    placed: BitSet,
}

impl<'a> CircularSearch<'a> {
    /// Check that each placed vertex's closed neighborhood restricted to the
    /// already placed arc is consistent with ending up circularly
    /// consecutive: one run, or two runs touching both boundary positions
    /// (which can still join through the unplaced arc).
    fn consistent(&self) -> bool {
        let i = self.order.len();
        for &u in self.order.iter() {
            let uid = VertexId(u as u32);
            let in_closed = |p: usize| p == u || self.g.has_edge(uid, VertexId(p as u32));
            let mask: Vec<bool> = self.order.iter().map(|&p| in_closed(p)).collect();
            let mut runs = Vec::new();
            let mut j = 0;
            while j < i {
                if mask[j] {
                    let s = j;
                    while j < i && mask[j] {
                        j += 1;
                    }
                    runs.push((s, j - 1));
                } else {
                    j += 1;
                }
            }
            match runs.len() {
                0 | 1 => {}
                2 => {
                    if !(runs[0].0 == 0 && runs[1].1 == i - 1) {
                        return false;
                    }
                    continue;
                }
                _ => return false,
            }
            if let [run] = runs[..] {
                // A run pinned strictly inside the placed arc can never grow:
                // the vertex must have no unplaced neighbors.
                if run.0 > 0 && run.1 < i - 1 {
                    let unplaced_nbr = self
                        .g
                        .neighbor_set(uid)
                        .iter()
                        .any(|w| !self.placed.contains(w));
                    if unplaced_nbr {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self) -> Option<Vec<usize>> {
        let n = self.verts.len();
        if self.order.len() == n {
            return circular_arcs_from_ordering(self.g, &self.order)
                .map(|_| self.order.clone());
        }
        let candidates: Vec<usize> = self
            .verts
            .iter()
            .copied()
            .filter(|&w| !self.placed.contains(w))
            .collect();
        for w in candidates {
            self.order.push(w);
            self.placed.insert(w);
            if self.consistent() {
                if let Some(hit) = self.search() {
                    return Some(hit);
                }
            }
            self.order.pop();
            self.placed.remove(w);
        }
        None
    }
}

/// Given a circular order of all vertices, try to realize the graph by arcs:
/// each vertex's arc runs clockwise to the end of its closed-neighborhood
/// run; a universal vertex gets a nearly full circle. Returns the verified
/// representation or `None`.
fn circular_arcs_from_ordering(g: &Graph, order: &[usize]) -> Option<IntervalRepresentation> {
    let n = order.len();
    let c = Rat::int(n as i64);
    let mut pos_of = vec![usize::MAX; g.slot_count()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v] = i;
    }
    let positions: Vec<(VertexId, Rat)> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (VertexId(v as u32), Rat::int(i as i64)))
        .collect();
    let mut intervals = Vec::with_capacity(n);
    for &u in order {
        let uid = VertexId(u as u32);
        let start = pos_of[u];
        if g.degree(uid) == g.vertex_count() - 1 {
            // Universal vertex: cover every point without closing the circle.
            intervals.push((
                Rat::int(start as i64),
                Rat::int(start as i64) - Rat::new(1, 2),
            ));
            continue;
        }
        // Walk clockwise while still inside the closed neighborhood.
        let mut end = start;
        for step in 1..n {
            let p = order[(start + step) % n];
            if g.has_edge(uid, VertexId(p as u32)) {
                end = (start + step) % n;
            } else {
                break;
            }
        }
        intervals.push((Rat::int(start as i64), Rat::int(end as i64)));
    }
    let rep = IntervalRepresentation {
        flavor: Flavor::Circular,
        positions,
        intervals,
        circumference: Some(c),
    };
    rep.realizes(g).then_some(rep)
}

/// A circular representation, or `None` when g is provably not a circular
/// interval graph. Linear graphs are wrapped onto a circle with a spare arc.
/// Graphs beyond the exhaustive bound that are not linear are refused with a
/// distinct error rather than misreported as absent.
pub fn recognize_circular_interval(
    g: &Graph,
) -> Result<Option<IntervalRepresentation>, RecognizeError> {
    if let Some(linear) = recognize_linear_interval(g) {
        let n = g.vertex_count().max(1);
        // Same points and intervals on a circle twice as long: nothing wraps,
        // and the spare half-circle is an explicit gap.
        let rep = IntervalRepresentation {
            flavor: Flavor::Circular,
            positions: linear.positions,
            intervals: linear.intervals,
            circumference: Some(Rat::int(2 * n as i64)),
        };
        debug_assert!(rep.realizes(g));
        return Ok(Some(rep));
    }
    let n = g.vertex_count();
    if n > CIRCULAR_SEARCH_MAX {
        return Err(RecognizeError::CircularSearchTooLarge(n));
    }
    // Circular interval graphs with more than one component are linear; the
    // linear route above already failed.
    if !g.is_connected() {
        return Ok(None);
    }
    let verts: Vec<usize> = g.vertex_set().iter().collect();
    let mut search = CircularSearch {
        g,
        verts: verts.clone(),
        order: vec![verts[0]],
        placed: std::iter::once(verts[0]).collect(),
    };
    match search.search() {
        Some(order) => Ok(circular_arcs_from_ordering(g, &order)),
        None => Ok(None),
    }
}
