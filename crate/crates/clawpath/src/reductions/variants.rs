//! Problem-variant reductions: induced cycle to disjoint paths, and disjoint
//! paths to the ordered path problem.

use super::ReduceError;
use crate::bits::BitSet;
use crate::graph::{Graph, Instance, PathCertificate, Variant, VertexId};
use crate::recognizers::find_claw;

/// How one cyclic gap between consecutive terminals is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapChoice {
    /// The terminals are adjacent and the edge itself is on the cycle.
    Edge,
    /// A path through chosen neighbors: `after` follows the left terminal,
    /// `before` precedes the right one. They may coincide (a single interior
    /// vertex), in which case the gap is recorded in `fixed_singletons`.
    Route { after: VertexId, before: VertexId },
}

/// One derived disjoint-paths instance for the induced-cycle problem, plus
/// everything needed to reassemble the cycle from its solution.
#[derive(Debug, Clone)]
pub struct CycleReduction {
    pub instance: Instance,
    /// Cyclic terminal order; gap i runs from order[i] to order[(i+1) % k].
    pub order: Vec<VertexId>,
    pub gaps: Vec<GapChoice>,
    /// (gap index, vertex) for gaps whose route is a single fixed vertex.
    pub fixed_singletons: Vec<(usize, VertexId)>,
}

impl CycleReduction {
    /// Splice the disjoint-path solutions and the fixed pieces back into the
    /// claimed cycle, in cyclic vertex order.
    pub fn assemble(&self, paths: &[PathCertificate]) -> Vec<VertexId> {
        let mut cycle = Vec::new();
        let mut next_path = 0;
        for (i, gap) in self.gaps.iter().enumerate() {
            cycle.push(self.order[i]);
            match gap {
                GapChoice::Edge => {}
                GapChoice::Route { after, before } => {
                    if let Some(&(_, v)) = self.fixed_singletons.iter().find(|&&(gi, _)| gi == i) {
                        cycle.push(v);
                    } else {
                        let path = &paths[next_path];
                        next_path += 1;
                        debug_assert_eq!(path.vertices.first(), Some(after));
                        debug_assert_eq!(path.vertices.last(), Some(before));
                        cycle.extend(path.vertices.iter().copied());
                    }
                }
            }
        }
        cycle
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// For every cyclic order of the terminals and every choice of distinct
/// route neighbors, emit a disjoint-paths instance whose solutions assemble
/// into induced cycles. A terminal of degree < 2 yields the empty list
/// (immediate no).
pub fn cycle_to_disjoint_paths(inst: &Instance) -> Result<Vec<CycleReduction>, ReduceError> {
    if inst.variant != Variant::Cycle {
        return Err(ReduceError::Precondition("expected a cycle instance".into()));
    }
    let g = &inst.graph;
    let ts = &inst.terminals;
    let k = ts.len();
    if k < 2 {
        return Err(ReduceError::Precondition(
            "cycle reduction needs at least two terminals".into(),
        ));
    }
    if ts.iter().any(|&t| g.degree(t) < 2) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let rest: Vec<VertexId> = ts[1..].to_vec();
    for tail in permutations(&rest) {
        let mut order = vec![ts[0]];
        order.extend(tail);
        // Non-consecutive terminals on an induced cycle are non-adjacent.
        let mut order_ok = true;
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if !consecutive && g.has_edge(order[i], order[j]) {
                    order_ok = false;
                }
            }
        }
        if !order_ok {
            continue;
        }
        // Gap patterns: adjacent consecutive terminals use their edge; for
        // k = 2 the two arcs between the same pair take the edge on exactly
        // one side.
        let gap_patterns: Vec<Vec<Option<GapChoice>>> = if k == 2 {
            if g.has_edge(order[0], order[1]) {
                vec![
                    vec![Some(GapChoice::Edge), None],
                    vec![None, Some(GapChoice::Edge)],
                ]
            } else {
                vec![vec![None, None]]
            }
        } else {
            vec![(0..k)
                .map(|i| {
                    let (a, b) = (order[i], order[(i + 1) % k]);
                    g.has_edge(a, b).then_some(GapChoice::Edge)
                })
                .collect()]
        };
        for pattern in gap_patterns {
            // Candidate route neighbors per open gap, pruned hard: a route
            // neighbor of t may touch no other terminal (that would be a
            // chord), except its own gap partner when it is the single
            // interior vertex.
            let mut slot_candidates: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
            let mut open_gaps = Vec::new();
            for (i, slot) in pattern.iter().enumerate() {
                if slot.is_some() {
                    continue;
                }
                let (left, right) = (order[i], order[(i + 1) % k]);
                let candidate = |v: VertexId, own: VertexId, partner: VertexId| -> bool {
                    if ts.contains(&v) {
                        return false;
                    }
                    ts.iter().all(|&t| {
                        t == own || !g.has_edge(v, t) || (t == partner && g.has_edge(v, partner))
                    })
                };
                let mut pairs = Vec::new();
                for a in g.neighbors(left) {
                    if !candidate(a, left, right) {
                        continue;
                    }
                    let a_sees_right = g.has_edge(a, right);
                    for b in g.neighbors(right) {
                        if !candidate(b, right, left) {
                            continue;
                        }
                        if a == b {
                            pairs.push((a, b));
                            continue;
                        }
                        // A longer route: neither end may touch the far
                        // terminal.
                        if a_sees_right || g.has_edge(b, left) {
                            continue;
                        }
                        pairs.push((a, b));
                    }
                }
                slot_candidates.push(pairs);
                open_gaps.push(i);
            }
            // Cartesian product over the open gaps.
            let mut pick = vec![0usize; open_gaps.len()];
            'product: loop {
                let mut gaps: Vec<GapChoice> = pattern
                    .iter()
                    .map(|slot| slot.unwrap_or(GapChoice::Edge))
                    .collect();
                let mut chosen: Vec<VertexId> = Vec::new();
                let mut valid = true;
                for (slot, &gi) in open_gaps.iter().enumerate() {
                    if slot_candidates[slot].is_empty() {
                        valid = false;
                        break;
                    }
                    let (a, b) = slot_candidates[slot][pick[slot]];
                    gaps[gi] = GapChoice::Route { after: a, before: b };
                    for v in if a == b { vec![a] } else { vec![a, b] } {
                        if chosen.contains(&v) {
                            valid = false;
                            break;
                        }
                        chosen.push(v);
                    }
                    if !valid {
                        break;
                    }
                }
                if valid {
                    if let Some(red) = build_cycle_reduction(g, ts, &order, &gaps) {
                        out.push(red);
                    }
                }
                // Advance the product counter.
                let mut pos = 0;
                loop {
                    if pos == pick.len() {
                        break 'product;
                    }
                    pick[pos] += 1;
                    if pick[pos] < slot_candidates[pos].len() {
                        break;
                    }
                    pick[pos] = 0;
                    pos += 1;
                }
                if pick.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn build_cycle_reduction(
    g: &Graph,
    terminals: &[VertexId],
    order: &[VertexId],
    gaps: &[GapChoice],
) -> Option<CycleReduction> {
    // Remove the terminals and every unchosen terminal neighbor.
    let mut drop = BitSet::with_capacity(g.slot_count());
    for &t in terminals {
        drop.insert(t.index());
    }
    let keep_roles: Vec<VertexId> = gaps
        .iter()
        .flat_map(|gap| match gap {
            GapChoice::Edge => vec![],
            GapChoice::Route { after, before } => vec![*after, *before],
        })
        .collect();
    for &t in terminals {
        for w in g.neighbors(t) {
            if !keep_roles.contains(&w) && !terminals.contains(&w) {
                drop.insert(w.index());
            }
        }
    }
    let mut reduced = g.remove_vertices(&drop);
    // Singleton routes are fixed outright: the vertex joins the cycle, so
    // nothing else may neighbor it.
    let mut fixed_singletons = Vec::new();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for (i, gap) in gaps.iter().enumerate() {
        if let GapChoice::Route { after, before } = gap {
            if !reduced.has_vertex(*after) || !reduced.has_vertex(*before) {
                return None;
            }
            if after == before {
                fixed_singletons.push((i, *after));
            } else {
                pairs.push((*after, *before));
            }
        }
    }
    // Fixed single-vertex routes leave the instance: the vertex is on the
    // cycle, so its whole closed neighborhood is off limits to the remaining
    // paths; assembly re-inserts it from `fixed_singletons`.
    for &(_, v) in &fixed_singletons {
        if !reduced.has_vertex(v) {
            return None;
        }
        let nbrs: BitSet = reduced.neighbor_set(v).clone();
        if pairs
            .iter()
            .any(|&(a, b)| nbrs.contains(a.index()) || nbrs.contains(b.index()))
        {
            return None;
        }
        let mut zap = nbrs;
        zap.insert(v.index());
        reduced = reduced.remove_vertices(&zap);
    }
    let flat: Vec<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    for &v in &flat {
        if !reduced.has_vertex(v) {
            return None;
        }
    }
    let instance = Instance::new(reduced, flat, Variant::DisjointPaths).ok()?;
    Some(CycleReduction {
        instance,
        order: order.to_vec(),
        gaps: gaps.to_vec(),
        fixed_singletons,
    })
}

/// Result of the disjoint-paths-to-ordered transformation.
#[derive(Debug, Clone)]
pub struct DisjointToOrdered {
    pub instance: Instance,
    /// Fresh merged vertices t_2..t_k in order.
    pub merged: Vec<VertexId>,
    /// The original pairs, for splitting certificates back.
    pub pairs: Vec<(VertexId, VertexId)>,
}

/// Complete every terminal's neighborhood to a clique, then identify t_i
/// with s_{i+1}, producing an Ordered-(k+1)-in-a-Path instance. Returns
/// `None` when terminals of different pairs are adjacent, which already
/// forces the answer no.
pub fn disjoint_paths_to_ordered(inst: &Instance) -> Result<Option<DisjointToOrdered>, ReduceError> {
    if inst.variant != Variant::DisjointPaths {
        return Err(ReduceError::Precondition(
            "expected a disjoint-paths instance".into(),
        ));
    }
    let pairs = inst.pairs();
    if pairs.is_empty() {
        return Err(ReduceError::Precondition("no terminal pairs".into()));
    }
    let g = &inst.graph;
    let all: Vec<VertexId> = inst.terminals.clone();
    for (i, &(s1, t1)) in pairs.iter().enumerate() {
        for &(s2, t2) in &pairs[i + 1..] {
            for a in [s1, t1] {
                for b in [s2, t2] {
                    if g.has_edge(a, b) {
                        return Ok(None);
                    }
                }
            }
        }
    }
    // Make every terminal simplicial by completing its neighborhood.
    let mut cur = g.clone();
    for &x in &all {
        let nbrs: Vec<VertexId> = cur.neighbors(x).collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                if !cur.has_edge(u, v) {
                    cur = cur.with_edge(u, v).unwrap();
                }
            }
        }
        if let Some(claw) = find_claw(&cur) {
            return Err(ReduceError::Invariant(format!(
                "neighborhood completion created a claw at {:?}; input violated preconditions",
                claw.center
            )));
        }
    }
    // Identify t_i with s_{i+1}.
    let mut merged = Vec::new();
    for i in 0..pairs.len() - 1 {
        let (_, t_i) = pairs[i];
        let (s_next, _) = pairs[i + 1];
        let (next, m) = cur.identify(t_i, s_next).map_err(|e| {
            ReduceError::Invariant(format!("identification failed: {e}"))
        })?;
        cur = next;
        merged.push(m);
    }
    if let Some(claw) = find_claw(&cur) {
        return Err(ReduceError::Invariant(format!(
            "identification created a claw at {:?}",
            claw.center
        )));
    }
    let mut terminals = vec![pairs[0].0];
    terminals.extend(merged.iter().copied());
    terminals.push(pairs[pairs.len() - 1].1);
    let instance = Instance::new(cur, terminals, Variant::OrderedPath)
        .map_err(|e| ReduceError::Invariant(e.to_string()))?;
    Ok(Some(DisjointToOrdered {
        instance,
        merged,
        pairs,
    }))
}

/// Split an ordered certificate of the transformed instance back into the k
/// mutually induced paths on the original graph, cutting at the merged
/// terminals. Returns `None` when the split does not verify (the caller
/// falls back to the exact oracle).
pub fn split_ordered_certificate(
    origin: &Graph,
    d2o: &DisjointToOrdered,
    cert: &PathCertificate,
) -> Option<Vec<PathCertificate>> {
    let k = d2o.pairs.len();
    let mut cut_positions = Vec::with_capacity(k + 1);
    cut_positions.push(0usize);
    for m in &d2o.merged {
        cut_positions.push(cert.vertices.iter().position(|v| v == m)?);
    }
    cut_positions.push(cert.vertices.len() - 1);
    let mut paths = Vec::with_capacity(k);
    for i in 0..k {
        let (s_i, t_i) = d2o.pairs[i];
        let lo = cut_positions[i];
        let hi = cut_positions[i + 1];
        if lo >= hi && !(lo == hi && k == 1) {
            return None;
        }
        let mut vertices = Vec::new();
        vertices.push(s_i);
        for &v in &cert.vertices[lo + 1..hi] {
            vertices.push(v);
        }
        if t_i != *vertices.last().unwrap() {
            vertices.push(t_i);
        }
        let path = PathCertificate::new(vertices);
        if origin.check_induced_path(&path.vertices).is_err() {
            return None;
        }
        if path.vertices.first() != Some(&s_i) || path.vertices.last() != Some(&t_i) {
            return None;
        }
        paths.push(path);
    }
    origin.are_mutually_induced(&paths).then_some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_disjoint_paths, oracle_ordered_path, OracleBudget};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn instance(g: Graph, ts: Vec<VertexId>, variant: Variant) -> Instance {
        Instance::new(g, ts, variant).unwrap()
    }

    #[test]
    fn c6_cycle_reduction_is_solvable() {
        let c6 = Graph::cycle(6);
        let inst = instance(c6.clone(), vec![v(0), v(3)], Variant::Cycle);
        let reductions = cycle_to_disjoint_paths(&inst).unwrap();
        assert!(!reductions.is_empty());
        let mut any_yes = false;
        for red in &reductions {
            let pairs = red.instance.pairs();
            let out =
                oracle_disjoint_paths(&red.instance.graph, &pairs, &OracleBudget::default())
                    .unwrap();
            if let Some(paths) = out.found() {
                let cycle = red.assemble(&paths);
                assert!(c6.is_induced_cycle(&cycle), "assembled {cycle:?}");
                any_yes = true;
            }
        }
        assert!(any_yes, "C6 contains an induced cycle through v0 and v3");
    }

    #[test]
    fn k4_three_terminals_cycle() {
        // The triangle on three terminals of K4 is an induced cycle of K4.
        let k4 = Graph::complete(4);
        let inst = instance(k4.clone(), vec![v(0), v(1), v(2)], Variant::Cycle);
        let reductions = cycle_to_disjoint_paths(&inst).unwrap();
        let mut any_yes = false;
        for red in &reductions {
            let pairs = red.instance.pairs();
            let out =
                oracle_disjoint_paths(&red.instance.graph, &pairs, &OracleBudget::default())
                    .unwrap();
            if let Some(paths) = out.found() {
                let cycle = red.assemble(&paths);
                if k4.is_induced_cycle(&cycle) {
                    any_yes = true;
                }
            }
        }
        assert!(any_yes, "the terminal triangle is an induced cycle");
    }

    #[test]
    fn triangle_cycle() {
        let c3 = Graph::cycle(3);
        let inst = instance(c3.clone(), vec![v(0), v(1), v(2)], Variant::Cycle);
        let reductions = cycle_to_disjoint_paths(&inst).unwrap();
        let mut any_yes = false;
        for red in &reductions {
            let pairs = red.instance.pairs();
            let out =
                oracle_disjoint_paths(&red.instance.graph, &pairs, &OracleBudget::default())
                    .unwrap();
            if let Some(paths) = out.found() {
                let cycle = red.assemble(&paths);
                if c3.is_induced_cycle(&cycle) {
                    any_yes = true;
                }
            }
        }
        assert!(any_yes);
    }

    #[test]
    fn degree_one_terminal_is_immediate_no() {
        let p4 = Graph::path(4);
        let inst = instance(p4, vec![v(0), v(2)], Variant::Cycle);
        assert!(cycle_to_disjoint_paths(&inst).unwrap().is_empty());
    }

    #[test]
    fn disjoint_to_ordered_on_c6() {
        let c6 = Graph::cycle(6);
        let inst = instance(
            c6.clone(),
            vec![v(0), v(1), v(3), v(4)],
            Variant::DisjointPaths,
        );
        let d2o = disjoint_paths_to_ordered(&inst).unwrap().unwrap();
        assert_eq!(d2o.instance.terminals.len(), 3);
        let want = oracle_disjoint_paths(&c6, &inst.pairs(), &OracleBudget::default()).unwrap();
        let got = oracle_ordered_path(
            &d2o.instance.graph,
            &d2o.instance.terminals,
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(want.is_found(), got.is_found());
        // Certificate splits back into mutually induced paths.
        let cert = got.found().unwrap();
        let paths = split_ordered_certificate(&c6, &d2o, &cert).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(c6.are_mutually_induced(&paths));
    }

    #[test]
    fn adjacent_cross_pair_terminals_answer_no() {
        // C4 with crossing pairs: s_1 = v0 adjacent to s_2 = v1.
        let c4 = Graph::cycle(4);
        let inst = instance(c4, vec![v(0), v(2), v(1), v(3)], Variant::DisjointPaths);
        assert!(disjoint_paths_to_ordered(&inst).unwrap().is_none());
    }

    #[test]
    fn single_pair_reduces_to_two_terminal_ordered() {
        let p4 = Graph::path(4);
        let inst = instance(p4.clone(), vec![v(0), v(3)], Variant::DisjointPaths);
        let d2o = disjoint_paths_to_ordered(&inst).unwrap().unwrap();
        assert_eq!(d2o.instance.terminals, vec![v(0), v(3)]);
        let got = oracle_ordered_path(
            &d2o.instance.graph,
            &d2o.instance.terminals,
            &OracleBudget::default(),
        )
        .unwrap();
        assert!(got.is_found());
    }
}
