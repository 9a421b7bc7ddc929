//! Branching an ordered instance into simple instances.
//!
//! Solutions with at most 13 edges are found outright by a bounded search;
//! on graphs with at most 14 vertices that search is exhaustive and settles
//! the instance. For larger graphs, every terminal gap is guessed either as
//! a complete short segment (≤ 13 edges) or as two six-vertex arms hanging
//! off its endpoints. The union of the guessed pieces must induce disjoint
//! paths; all other neighbors of terminals and guessed interior vertices are
//! deleted. Guessed subpaths carrying several terminals are handled by
//! re-placing the outer two at safe distances (interior runs) or by
//! consuming the decided prefix/suffix and re-entering the pipeline with
//! fewer terminals.

use super::{is_simple, CertPatch, ReduceError, ReductionTrace, StepKind};
use crate::bits::BitSet;
use crate::graph::{Graph, Instance, PathCertificate, Variant, VertexId};
use crate::oracles::{oracle_ordered_path_bounded, BudgetMeter, Outcome};
use std::collections::HashSet;

/// Solutions with at most this many edges are handled by direct search, and
/// guessed segments never exceed it.
pub const SHORT_EDGE_BOUND: usize = 13;
/// Vertices guessed on each side of a terminal in the long-gap case.
pub const ARM_LENGTH: usize = 6;

#[derive(Debug, Clone)]
pub struct SimpleBranch {
    pub instance: Instance,
    pub trace: ReductionTrace,
    /// Consumed-prefix/suffix branches have fewer terminals and re-enter the
    /// pipeline from the start instead of continuing to Step 2.
    pub needs_resimplify: bool,
}

#[derive(Debug)]
pub struct SimpleBranching {
    /// A directly discovered solution (short search or a fully guessed
    /// combination), already verified against the input.
    pub short_solution: Option<PathCertificate>,
    /// True when the short search was exhaustive for this graph size, in
    /// which case `short_solution == None` proves absence and `branches` is
    /// empty.
    pub short_exhaustive: bool,
    pub branches: Vec<SimpleBranch>,
}

/// Enumerate induced paths from `start`: to `goal` with 1..=max_edges edges
/// when given, or of exactly `max_edges` edges otherwise. Vertices in
/// `forbidden` never appear except as the designated endpoints.
fn enumerate_induced_paths(
    g: &Graph,
    start: VertexId,
    goal: Option<VertexId>,
    max_edges: usize,
    forbidden: &[VertexId],
    meter: &BudgetMeter,
) -> Result<Vec<Vec<VertexId>>, ReduceError> {
    struct Dfs<'a> {
        g: &'a Graph,
        goal: Option<VertexId>,
        max_edges: usize,
        forbidden: &'a [VertexId],
        meter: &'a BudgetMeter,
        path: Vec<VertexId>,
        on_path: BitSet,
        sealed: BitSet,
        out: Vec<Vec<VertexId>>,
    }
    impl<'a> Dfs<'a> {
        fn rec(&mut self) -> Result<(), ReduceError> {
            self.meter.charge(1)?;
            let edges = self.path.len() - 1;
            match self.goal {
                Some(t) if *self.path.last().unwrap() == t => {
                    if edges >= 1 {
                        self.out.push(self.path.clone());
                    }
                    return Ok(()); // a path never continues past its goal
                }
                None if edges == self.max_edges => {
                    self.out.push(self.path.clone());
                    return Ok(());
                }
                _ => {}
            }
            if edges == self.max_edges {
                return Ok(());
            }
            let tail = *self.path.last().unwrap();
            let candidates: Vec<VertexId> = self
                .g
                .neighbors(tail)
                .filter(|w| !self.on_path.contains(w.index()) && !self.sealed.contains(w.index()))
                .collect();
            for w in candidates {
                let is_goal = self.goal == Some(w);
                if !is_goal && self.forbidden.contains(&w) {
                    continue;
                }
                let sealed_backup = self.sealed.clone();
                self.sealed.union_with(self.g.neighbor_set(tail));
                self.path.push(w);
                self.on_path.insert(w.index());
                self.rec()?;
                self.path.pop();
                self.on_path.remove(w.index());
                self.sealed = sealed_backup;
            }
            Ok(())
        }
    }
    let mut dfs = Dfs {
        g,
        goal,
        max_edges,
        forbidden,
        meter,
        path: vec![start],
        on_path: std::iter::once(start.index()).collect(),
        sealed: BitSet::with_capacity(g.slot_count()),
        out: Vec::new(),
    };
    dfs.rec()?;
    Ok(dfs.out)
}

#[derive(Debug, Clone)]
enum GapOption {
    /// The whole segment between two consecutive terminals.
    Segment(Vec<VertexId>),
    /// Six vertices after the left terminal and six before the right one.
    Arms(Vec<VertexId>, Vec<VertexId>),
}

enum ComboResult {
    Discard,
    Solution(PathCertificate),
    Branch(SimpleBranch),
}

struct Builder<'a> {
    inst: &'a Instance,
    terminals: &'a [VertexId],
    seen: HashSet<(Vec<u32>, Vec<u32>, bool)>,
}

impl<'a> Builder<'a> {
    /// Assemble one per-gap choice combination into a branch, a direct
    /// solution, or nothing.
    fn process(&mut self, choices: &[GapOption]) -> ComboResult {
        let g = &self.inst.graph;
        let k = self.terminals.len();
        let mut pieces: Vec<Vec<VertexId>> = Vec::new();
        for choice in choices {
            match choice {
                GapOption::Segment(seg) => pieces.push(seg.clone()),
                GapOption::Arms(right, left) => {
                    pieces.push(right.clone());
                    pieces.push(left.clone());
                }
            }
        }
        let mut union = BitSet::with_capacity(g.slot_count());
        for piece in &pieces {
            for v in piece {
                union.insert(v.index());
            }
        }
        let sub = g.induced_subgraph(&union).unwrap();
        // The guessed union must be a disjoint union of paths.
        if sub.vertices().any(|v| sub.degree(v) > 2) {
            return ComboResult::Discard;
        }
        let comps = sub.components();
        let mut comp_orders: Vec<Vec<VertexId>> = Vec::new();
        for comp in &comps {
            let cnt = comp.len();
            let edge_cnt: usize = comp
                .iter()
                .map(|v| sub.degree(VertexId(v as u32)))
                .sum::<usize>()
                / 2;
            if edge_cnt != cnt - 1 {
                return ComboResult::Discard; // a cycle cannot sit on a path
            }
            let start = comp
                .iter()
                .map(|v| VertexId(v as u32))
                .find(|&v| sub.degree(v) <= 1)
                .unwrap();
            let mut order = vec![start];
            let mut prev = None;
            loop {
                let cur = *order.last().unwrap();
                let next = sub.neighbors(cur).find(|&w| Some(w) != prev);
                match next {
                    Some(w) => {
                        prev = Some(cur);
                        order.push(w);
                    }
                    None => break,
                }
            }
            comp_orders.push(order);
        }
        // Terminal runs: on each component the terminals must form one
        // consecutive block of the global order, oriented consistently.
        struct Run {
            comp: usize,
            first: usize,
            last: usize,
        }
        let mut runs: Vec<Run> = Vec::new();
        for (ci, order) in comp_orders.iter_mut().enumerate() {
            let mut hits: Vec<(usize, usize)> = order
                .iter()
                .enumerate()
                .filter_map(|(pos, v)| {
                    self.terminals
                        .iter()
                        .position(|t| t == v)
                        .map(|ti| (pos, ti))
                })
                .collect();
            if hits.is_empty() {
                continue;
            }
            let increasing = hits.windows(2).all(|w| w[0].1 < w[1].1);
            let decreasing = hits.windows(2).all(|w| w[0].1 > w[1].1);
            if !increasing && !decreasing {
                return ComboResult::Discard;
            }
            if decreasing && hits.len() > 1 {
                order.reverse();
                let n = order.len();
                for h in &mut hits {
                    h.0 = n - 1 - h.0;
                }
                hits.reverse();
            }
            let indices: Vec<usize> = hits.iter().map(|h| h.1).collect();
            if indices.windows(2).any(|w| w[1] != w[0] + 1) {
                return ComboResult::Discard;
            }
            runs.push(Run {
                comp: ci,
                first: indices[0],
                last: *indices.last().unwrap(),
            });
        }
        runs.sort_by_key(|r| r.first);
        let covers: Vec<usize> = runs.iter().flat_map(|r| r.first..=r.last).collect();
        if covers != (0..k).collect::<Vec<_>>() {
            return ComboResult::Discard;
        }
        // A component carrying every terminal is itself a candidate
        // solution.
        if runs.len() == 1 && runs[0].first == 0 && runs[0].last == k - 1 {
            let order = &comp_orders[runs[0].comp];
            let cert = PathCertificate::new(order.clone());
            if g.is_induced_path(&cert)
                && order.first() == Some(&self.terminals[0])
                && order.last() == Some(&self.terminals[k - 1])
            {
                return ComboResult::Solution(cert);
            }
            return ComboResult::Discard;
        }
        // Strip non-guessed neighbors of terminals and guessed interior
        // vertices.
        let mut drop = BitSet::with_capacity(g.slot_count());
        for order in &comp_orders {
            for (pos, &v) in order.iter().enumerate() {
                let interior = pos != 0 && pos != order.len() - 1;
                if interior || self.terminals.contains(&v) {
                    for w in g.neighbors(v) {
                        if !union.contains(w.index()) {
                            drop.insert(w.index());
                        }
                    }
                }
            }
        }
        let stripped = g.remove_vertices(&drop);
        let mut removed: Vec<VertexId> = drop.iter().map(|i| VertexId(i as u32)).collect();
        // Keep only the component holding all the terminals.
        let home = stripped
            .components()
            .into_iter()
            .find(|c| self.terminals.iter().all(|t| c.contains(t.index())));
        let Some(home) = home else {
            return ComboResult::Discard;
        };
        for v in stripped.vertices() {
            if !home.contains(v.index()) {
                removed.push(v);
            }
        }
        let cur = stripped.induced_subgraph(&home).unwrap();

        // Rewrite the terminal list run by run; consumption of the prefix or
        // suffix is deferred until the list is final.
        let mut new_terminals: Vec<VertexId> = Vec::new();
        let mut consume_prefix: Option<Vec<VertexId>> = None;
        let mut consume_suffix: Option<Vec<VertexId>> = None;
        for run in &runs {
            let order = &comp_orders[run.comp];
            let span = run.last - run.first;
            if span == 0 {
                new_terminals.push(self.terminals[run.first]);
                continue;
            }
            if run.first == 0 {
                // Prefix run: everything up to its last terminal is decided.
                let t_last = self.terminals[run.last];
                let cut = order.iter().position(|&v| v == t_last).unwrap();
                consume_prefix = Some(order[..=cut].to_vec());
                new_terminals.push(t_last);
                continue;
            }
            if run.last == k - 1 {
                let t_first = self.terminals[run.first];
                let cut = order.iter().position(|&v| v == t_first).unwrap();
                consume_suffix = Some(order[cut..].to_vec());
                new_terminals.push(t_first);
                continue;
            }
            // Interior run: re-place the outer terminals four vertices away
            // from the open component ends and at least four apart.
            let len = order.len();
            if len < 13 {
                return ComboResult::Discard;
            }
            new_terminals.push(order[4]);
            new_terminals.push(order[len - 5]);
        }

        let mut trace = ReductionTrace::new(self.inst.clone());
        trace.push(
            StepKind::SimpleGuess,
            removed,
            new_terminals.clone(),
            None,
        );
        let mut cur = cur;
        let mut needs_resimplify = false;
        if let Some(sigma) = consume_prefix {
            let (g2, removed2, kept) = consume(&cur, &sigma);
            debug_assert_eq!(kept, *sigma.last().unwrap());
            let prefix: Vec<VertexId> = sigma[..sigma.len() - 1].to_vec();
            cur = g2;
            trace.push(
                StepKind::ConsumePrefix,
                removed2,
                new_terminals.clone(),
                Some(CertPatch::PrependPath(prefix)),
            );
            needs_resimplify = true;
        }
        if let Some(sigma) = consume_suffix {
            let reversed: Vec<VertexId> = sigma.iter().rev().copied().collect();
            let (g2, removed2, kept) = consume(&cur, &reversed);
            debug_assert_eq!(kept, sigma[0]);
            let suffix: Vec<VertexId> = sigma[1..].to_vec();
            cur = g2;
            trace.push(
                StepKind::ConsumeSuffix,
                removed2,
                new_terminals.clone(),
                Some(CertPatch::AppendPath(suffix)),
            );
            needs_resimplify = true;
        }
        if new_terminals.len() < 2 {
            return ComboResult::Discard;
        }
        let Ok(instance) = Instance::new(cur, new_terminals, Variant::OrderedPath) else {
            return ComboResult::Discard;
        };
        if !needs_resimplify && !is_simple(&instance) {
            return ComboResult::Discard;
        }
        let key = (
            {
                let mut vs: Vec<u32> = instance.graph.vertices().map(|v| v.0).collect();
                vs.sort_unstable();
                vs
            },
            instance.terminals.iter().map(|t| t.0).collect(),
            needs_resimplify,
        );
        if !self.seen.insert(key) {
            return ComboResult::Discard;
        }
        ComboResult::Branch(SimpleBranch {
            instance,
            trace,
            needs_resimplify,
        })
    }
}

/// Delete a decided path prefix except its final vertex, together with all
/// neighbors of the deleted vertices outside the path: the remaining
/// instance is exactly what any solution extending the prefix may still use.
fn consume(g: &Graph, sigma: &[VertexId]) -> (Graph, Vec<VertexId>, VertexId) {
    let kept = *sigma.last().unwrap();
    let mut drop = BitSet::with_capacity(g.slot_count());
    for &v in &sigma[..sigma.len() - 1] {
        drop.insert(v.index());
        for w in g.neighbors(v) {
            if !sigma.contains(&w) {
                drop.insert(w.index());
            }
        }
    }
    drop.remove(kept.index());
    let removed: Vec<VertexId> = drop.iter().map(|i| VertexId(i as u32)).collect();
    (g.remove_vertices(&drop), removed, kept)
}

/// Lemma-style branching: a set of instances such that the input has a
/// solution iff the short search finds one or some branch does.
pub fn make_simple_instances(
    inst: &Instance,
    meter: &BudgetMeter,
) -> Result<SimpleBranching, ReduceError> {
    if inst.variant != Variant::OrderedPath {
        return Err(ReduceError::Precondition(
            "make_simple_instances needs an ordered-path instance".into(),
        ));
    }
    let k = inst.terminals.len();
    if k < 2 {
        return Err(ReduceError::Precondition("need at least two terminals".into()));
    }
    let g = &inst.graph;
    let n = g.vertex_count();
    let cap = SHORT_EDGE_BOUND.min(n.saturating_sub(1));
    let short_solution = match oracle_ordered_path_bounded(g, &inst.terminals, cap, meter)
        .map_err(ReduceError::Oracle)?
    {
        Outcome::Found(cert) => {
            debug_assert!(g.is_induced_path(&cert));
            Some(cert)
        }
        Outcome::Absent => None,
        Outcome::Exhausted => return Err(ReduceError::Exhausted),
    };
    // Any induced path here has at most n - 1 <= SHORT_EDGE_BOUND edges, so
    // the bounded search was exhaustive.
    if n <= SHORT_EDGE_BOUND + 1 {
        return Ok(SimpleBranching {
            short_solution,
            short_exhaustive: true,
            branches: Vec::new(),
        });
    }

    // Per-gap options: complete short segments, or 6+6 arms for long gaps.
    let mut gap_options: Vec<Vec<GapOption>> = Vec::new();
    for gap in 0..k - 1 {
        let (ti, tj) = (inst.terminals[gap], inst.terminals[gap + 1]);
        let mut options = Vec::new();
        for seg in enumerate_induced_paths(
            g,
            ti,
            Some(tj),
            SHORT_EDGE_BOUND,
            &inst.terminals,
            meter,
        )? {
            options.push(GapOption::Segment(seg));
        }
        let rights = enumerate_induced_paths(g, ti, None, ARM_LENGTH, &inst.terminals, meter)?;
        let lefts = enumerate_induced_paths(g, tj, None, ARM_LENGTH, &inst.terminals, meter)?;
        for right in &rights {
            for left in &lefts {
                let mut left_path: Vec<VertexId> = left.clone();
                left_path.reverse();
                options.push(GapOption::Arms(right.clone(), left_path));
            }
        }
        gap_options.push(options);
    }

    let mut builder = Builder {
        inst,
        terminals: &inst.terminals,
        seen: HashSet::new(),
    };
    let mut branches = Vec::new();
    let mut found = short_solution;
    let mut choices: Vec<GapOption> = Vec::new();
    fn combos(
        builder: &mut Builder,
        gap_options: &[Vec<GapOption>],
        choices: &mut Vec<GapOption>,
        branches: &mut Vec<SimpleBranch>,
        found: &mut Option<PathCertificate>,
        meter: &BudgetMeter,
    ) -> Result<(), ReduceError> {
        if choices.len() == gap_options.len() {
            meter.charge(1)?;
            match builder.process(choices) {
                ComboResult::Discard => {}
                ComboResult::Solution(cert) => {
                    if found.is_none() {
                        *found = Some(cert);
                    }
                }
                ComboResult::Branch(b) => branches.push(b),
            }
            return Ok(());
        }
        for option in &gap_options[choices.len()] {
            choices.push(option.clone());
            combos(builder, gap_options, choices, branches, found, meter)?;
            choices.pop();
        }
        Ok(())
    }
    combos(
        &mut builder,
        &gap_options,
        &mut choices,
        &mut branches,
        &mut found,
        meter,
    )?;
    Ok(SimpleBranching {
        short_solution: found,
        short_exhaustive: false,
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_ordered_path, OracleBudget};
    use crate::reductions::ordered_instance;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn meter() -> BudgetMeter {
        OracleBudget::default().start()
    }

    #[test]
    fn p15_end_terminals_single_branch() {
        let inst = ordered_instance(Graph::path(15), vec![v(0), v(14)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        assert!(out.short_solution.is_none());
        assert!(!out.short_exhaustive);
        assert_eq!(out.branches.len(), 1, "exactly one surviving instance");
        let b = &out.branches[0];
        assert!(!b.needs_resimplify);
        assert_eq!(b.instance.graph, inst.graph);
        assert!(is_simple(&b.instance));
        // Replay agrees with the branch instance.
        assert!(b.trace.replay().graph.same_structure(&b.instance.graph));
    }

    #[test]
    fn small_graphs_are_settled_by_the_short_branch() {
        // K4 with two adjacent terminals: the edge is the solution.
        let inst = ordered_instance(Graph::complete(4), vec![v(0), v(1)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        assert!(out.short_exhaustive);
        let cert = out.short_solution.unwrap();
        assert_eq!(cert.vertices, vec![v(0), v(1)]);

        // Two components holding one terminal each: provably no.
        let g = Graph::build(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let inst = ordered_instance(g, vec![v(0), v(5)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        assert!(out.short_exhaustive);
        assert!(out.short_solution.is_none());
        assert!(out.branches.is_empty());
    }

    #[test]
    fn close_terminals_consume_a_prefix() {
        // P20 with terminals v0, v2, v19: the first gap is short, so the
        // prefix up to v2 is consumed and the remainder re-simplifies.
        let inst = ordered_instance(Graph::path(20), vec![v(0), v(2), v(19)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        assert!(out.short_solution.is_none());
        assert!(!out.branches.is_empty());
        assert!(out.branches.iter().any(|b| b.needs_resimplify
            && b.instance.terminals.first() == Some(&v(2))));
        // Consumption branch: lifting a solution of the branch recovers an
        // origin solution.
        let b = out
            .branches
            .iter()
            .find(|b| b.needs_resimplify)
            .unwrap();
        let sol = oracle_ordered_path(
            &b.instance.graph,
            &b.instance.terminals,
            &OracleBudget::default(),
        )
        .unwrap()
        .found()
        .unwrap();
        let lifted = b.trace.lift(&sol);
        assert!(inst.graph.is_induced_path(&lifted));
        assert_eq!(lifted.vertices.first(), Some(&v(0)));
        assert_eq!(lifted.vertices.last(), Some(&v(19)));
    }

    #[test]
    fn interior_run_is_replaced() {
        // P36 with terminals v0, v15, v17, v35: the interior gap is short
        // (2 edges) so t_2, t_3 land on one guessed subpath and get
        // re-placed; the long outer gaps keep their arms separate, so the
        // emitted instance stays simple.
        let inst = ordered_instance(Graph::path(36), vec![v(0), v(15), v(17), v(35)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        assert!(!out.branches.is_empty());
        let simple_branches: Vec<_> =
            out.branches.iter().filter(|b| !b.needs_resimplify).collect();
        assert!(!simple_branches.is_empty());
        for b in &simple_branches {
            assert!(is_simple(&b.instance));
            // Branch solutions lift to origin solutions.
            let sol = oracle_ordered_path(
                &b.instance.graph,
                &b.instance.terminals,
                &OracleBudget::default(),
            )
            .unwrap();
            if let Some(cert) = sol.found() {
                let lifted = b.trace.lift(&cert);
                assert!(inst.graph.is_induced_path(&lifted));
            }
        }
    }

    #[test]
    fn branching_is_complete_on_long_paths() {
        // For a path with spread terminals the only solution is the path
        // itself; some branch must find it.
        let inst = ordered_instance(Graph::path(24), vec![v(0), v(11), v(23)]);
        let out = make_simple_instances(&inst, &meter()).unwrap();
        let hit = out.short_solution.is_some()
            || out.branches.iter().any(|b| {
                oracle_ordered_path(
                    &b.instance.graph,
                    &b.instance.terminals,
                    &OracleBudget::default(),
                )
                .unwrap()
                .is_found()
            });
        assert!(hit, "some branch must preserve the solution");
    }
}
