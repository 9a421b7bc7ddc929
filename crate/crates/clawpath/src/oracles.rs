//! Exact exponential-time baselines: induced-path search, mutually-induced
//! disjoint-path search, and the irrelevant-vertex test. These are the ground
//! truth every reduction and solver is cross-checked against, and they stand
//! in for the imported black boxes (3-in-a-Tree, k-Disjoint-Paths) behind the
//! same interfaces.
//!
//! Exploration visits neighbors in ascending id order, so identical inputs
//! always yield identical certificates.

use crate::bits::BitSet;
use crate::graph::{Graph, PathCertificate, VertexId};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Search limits. Exceeding them yields `Outcome::Exhausted`, never a wrong
/// answer.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_nodes: 10_000_000,
            time_limit: None,
        }
    }
}

impl OracleBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        OracleBudget {
            max_nodes,
            time_limit: None,
        }
    }

    /// Fresh meter for one logical run. The pipeline shares a single meter
    /// across all oracle calls of a solve so the run-wide limit holds.
    pub fn start(&self) -> BudgetMeter {
        BudgetMeter {
            max_nodes: self.max_nodes,
            used: AtomicU64::new(0),
            deadline: self.time_limit.map(|d| Instant::now() + d),
        }
    }
}

/// Shared, thread-safe consumption counter for a budget.
pub struct BudgetMeter {
    max_nodes: u64,
    used: AtomicU64,
    deadline: Option<Instant>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("oracle budget exhausted")]
pub struct Exhausted;

impl BudgetMeter {
    pub fn charge(&self, nodes: u64) -> Result<(), Exhausted> {
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if used > self.max_nodes {
            return Err(Exhausted);
        }
        // Checking the clock on every node would dominate the search.
        if used % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

/// Result of an exact search: a witness, definitive absence, or a budget
/// overrun. Exhaustion is never conflated with "no".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Absent,
    Exhausted,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Yes/no query that may run out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Exhausted,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("terminals must be distinct, {0:?} repeats")]
    RepeatedTerminal(VertexId),
    #[error("terminal {0:?} is not a vertex of the graph")]
    UnknownTerminal(VertexId),
    #[error("no terminals given")]
    NoTerminals,
}

fn check_terminals(g: &Graph, terminals: &[VertexId]) -> Result<(), OracleError> {
    if terminals.is_empty() {
        return Err(OracleError::NoTerminals);
    }
    for (i, &t) in terminals.iter().enumerate() {
        if !g.has_vertex(t) {
            return Err(OracleError::UnknownTerminal(t));
        }
        if terminals[..i].contains(&t) {
            return Err(OracleError::RepeatedTerminal(t));
        }
    }
    Ok(())
}

struct PathSearch<'a> {
    g: &'a Graph,
    terminals: &'a [VertexId],
    max_edges: Option<usize>,
    meter: &'a BudgetMeter,
    path: Vec<usize>,
    on_path: BitSet,
    /// Vertices adjacent to some non-tail path vertex; no extension may ever
    /// use them again.
    sealed: BitSet,
}

impl<'a> PathSearch<'a> {
    /// Remaining terminals must stay reachable from the tail through vertices
    /// that are still eligible; otherwise this branch is dead.
    fn frontier_reaches_terminals(&self, next_terminal: usize) -> bool {
        let tail = *self.path.last().unwrap();
        let mut region = self.g.vertex_set().clone();
        region.difference_with(&self.sealed);
        region.difference_with(&self.on_path);
        region.insert(tail);
        let mut seen = BitSet::with_capacity(self.g.slot_count());
        seen.insert(tail);
        let mut stack = vec![tail];
        while let Some(x) = stack.pop() {
            for y in self.g.neighbor_set(VertexId(x as u32)).iter() {
                if region.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        self.terminals[next_terminal..]
            .iter()
            .all(|t| seen.contains(t.index()))
    }

    fn dfs(&mut self, next_terminal: usize) -> Result<Option<Vec<usize>>, Exhausted> {
        self.meter.charge(1)?;
        if next_terminal == self.terminals.len() {
            return Ok(Some(self.path.clone()));
        }
        if let Some(max) = self.max_edges {
            if self.path.len() > max {
                return Ok(None);
            }
        }
        if !self.frontier_reaches_terminals(next_terminal) {
            return Ok(None);
        }
        let tail = *self.path.last().unwrap();
        let candidates: Vec<usize> = self
            .g
            .neighbor_set(VertexId(tail as u32))
            .iter()
            .filter(|&w| !self.on_path.contains(w) && !self.sealed.contains(w))
            .collect();
        for w in candidates {
            let wid = VertexId(w as u32);
            let is_terminal = self.terminals.contains(&wid);
            let next = if is_terminal {
                if wid != self.terminals[next_terminal] {
                    continue;
                }
                next_terminal + 1
            } else {
                next_terminal
            };
            // The old tail becomes interior: its neighborhood is now off
            // limits for later extensions.
            let sealed_backup = self.sealed.clone();
            self.sealed.union_with(self.g.neighbor_set(VertexId(tail as u32)));
            self.path.push(w);
            self.on_path.insert(w);
            let hit = self.dfs(next)?;
            self.path.pop();
            self.on_path.remove(w);
            self.sealed = sealed_backup;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
}

fn ordered_path_search(
    g: &Graph,
    terminals: &[VertexId],
    max_edges: Option<usize>,
    meter: &BudgetMeter,
) -> Outcome<PathCertificate> {
    let start = terminals[0];
    let mut search = PathSearch {
        g,
        terminals,
        max_edges,
        meter,
        path: vec![start.index()],
        on_path: std::iter::once(start.index()).collect(),
        sealed: BitSet::with_capacity(g.slot_count()),
    };
    match search.dfs(1) {
        Err(Exhausted) => Outcome::Exhausted,
        Ok(None) => Outcome::Absent,
        Ok(Some(path)) => Outcome::Found(PathCertificate::new(
            path.into_iter().map(|i| VertexId(i as u32)).collect(),
        )),
    }
}

/// Exact search for an induced path visiting `terminals` in the given order,
/// starting at the first and ending at the last.
pub fn oracle_ordered_path(
    g: &Graph,
    terminals: &[VertexId],
    budget: &OracleBudget,
) -> Result<Outcome<PathCertificate>, OracleError> {
    let meter = budget.start();
    oracle_ordered_path_metered(g, terminals, &meter)
}

pub fn oracle_ordered_path_metered(
    g: &Graph,
    terminals: &[VertexId],
    meter: &BudgetMeter,
) -> Result<Outcome<PathCertificate>, OracleError> {
    check_terminals(g, terminals)?;
    Ok(ordered_path_search(g, terminals, None, meter))
}

/// As `oracle_ordered_path`, but only solutions with at most `max_edges`
/// edges are found. Used by the short-solution branch of Step 1.
pub fn oracle_ordered_path_bounded(
    g: &Graph,
    terminals: &[VertexId],
    max_edges: usize,
    meter: &BudgetMeter,
) -> Result<Outcome<PathCertificate>, OracleError> {
    check_terminals(g, terminals)?;
    Ok(ordered_path_search(g, terminals, Some(max_edges), meter))
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

/// Unordered variant: k! rounds of the ordered search, one per terminal
/// permutation, in lexicographic order.
pub fn oracle_k_in_a_path(
    g: &Graph,
    terminals: &[VertexId],
    budget: &OracleBudget,
) -> Result<Outcome<PathCertificate>, OracleError> {
    check_terminals(g, terminals)?;
    let meter = budget.start();
    let mut sorted = terminals.to_vec();
    sorted.sort_unstable();
    let mut exhausted = false;
    for perm in permutations(&sorted) {
        match ordered_path_search(g, &perm, None, &meter) {
            Outcome::Found(cert) => return Ok(Outcome::Found(cert)),
            Outcome::Absent => {}
            Outcome::Exhausted => exhausted = true,
        }
    }
    Ok(if exhausted {
        Outcome::Exhausted
    } else {
        Outcome::Absent
    })
}

struct DisjointSearch<'a> {
    g: &'a Graph,
    pairs: &'a [(VertexId, VertexId)],
    meter: &'a BudgetMeter,
    /// Vertices of finished paths plus the current partial path.
    used: BitSet,
    /// Vertices adjacent to finished paths or to non-tail current vertices.
    sealed: BitSet,
    paths: Vec<Vec<usize>>,
}

impl<'a> DisjointSearch<'a> {
    fn future_terminal_conflict(&self, w: usize, pair_index: usize) -> bool {
        let wid = VertexId(w as u32);
        self.pairs[pair_index + 1..].iter().any(|&(s, t)| {
            s == wid || t == wid || self.g.has_edge(s, wid) || self.g.has_edge(t, wid)
        })
    }

    fn target_reachable(&self, tail: usize, target: usize) -> bool {
        let mut region = self.g.vertex_set().clone();
        region.difference_with(&self.sealed);
        region.difference_with(&self.used);
        region.insert(tail);
        if !region.contains(target) && tail != target {
            return false;
        }
        let mut seen: BitSet = std::iter::once(tail).collect();
        let mut stack = vec![tail];
        while let Some(x) = stack.pop() {
            if x == target {
                return true;
            }
            for y in self.g.neighbor_set(VertexId(x as u32)).iter() {
                if region.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        false
    }

    fn start_pair(&mut self, pair_index: usize) -> Result<bool, Exhausted> {
        if pair_index == self.pairs.len() {
            return Ok(true);
        }
        self.meter.charge(1)?;
        let (s, _) = self.pairs[pair_index];
        if self.used.contains(s.index())
            || self.sealed.contains(s.index())
            || self.future_terminal_conflict(s.index(), pair_index)
        {
            return Ok(false);
        }
        self.paths.push(vec![s.index()]);
        self.used.insert(s.index());
        let ok = self.extend_pair(pair_index)?;
        if !ok {
            self.paths.pop();
            self.used.remove(s.index());
        }
        Ok(ok)
    }

    fn finish_pair(&mut self, pair_index: usize) -> Result<bool, Exhausted> {
        // Seal the completed path and everything adjacent to it, then move on.
        let sealed_backup = self.sealed.clone();
        let path = self.paths[pair_index].clone();
        for &x in &path {
            self.sealed.insert(x);
            self.sealed.union_with(self.g.neighbor_set(VertexId(x as u32)));
        }
        let ok = self.start_pair(pair_index + 1)?;
        if !ok {
            self.sealed = sealed_backup;
        }
        Ok(ok)
    }

    fn extend_pair(&mut self, pair_index: usize) -> Result<bool, Exhausted> {
        self.meter.charge(1)?;
        let (_, t) = self.pairs[pair_index];
        let tail = *self.paths[pair_index].last().unwrap();
        if tail == t.index() {
            return self.finish_pair(pair_index);
        }
        if !self.target_reachable(tail, t.index()) {
            return Ok(false);
        }
        let candidates: Vec<usize> = self
            .g
            .neighbor_set(VertexId(tail as u32))
            .iter()
            .filter(|&w| !self.used.contains(w) && !self.sealed.contains(w))
            .collect();
        for w in candidates {
            if self.future_terminal_conflict(w, pair_index) {
                continue;
            }
            let sealed_backup = self.sealed.clone();
            self.sealed.union_with(self.g.neighbor_set(VertexId(tail as u32)));
            self.paths[pair_index].push(w);
            self.used.insert(w);
            let ok = self.extend_pair(pair_index)?;
            if ok {
                return Ok(true);
            }
            self.paths[pair_index].pop();
            self.used.remove(w);
            self.sealed = sealed_backup;
        }
        Ok(false)
    }
}

/// Exact search for mutually induced paths joining each (s_i, t_i).
/// Pairs with s_i = t_i are allowed and solved by the single-vertex path.
pub fn oracle_disjoint_paths(
    g: &Graph,
    pairs: &[(VertexId, VertexId)],
    budget: &OracleBudget,
) -> Result<Outcome<Vec<PathCertificate>>, OracleError> {
    let meter = budget.start();
    oracle_disjoint_paths_metered(g, pairs, &meter)
}

pub fn oracle_disjoint_paths_metered(
    g: &Graph,
    pairs: &[(VertexId, VertexId)],
    meter: &BudgetMeter,
) -> Result<Outcome<Vec<PathCertificate>>, OracleError> {
    let mut seen: Vec<VertexId> = Vec::new();
    for &(s, t) in pairs {
        for v in [s, t] {
            if !g.has_vertex(v) {
                return Err(OracleError::UnknownTerminal(v));
            }
        }
        // Within-pair equality is a degenerate single-vertex path; across
        // pairs all terminals must be distinct.
        for v in if s == t { vec![s] } else { vec![s, t] } {
            if seen.contains(&v) {
                return Err(OracleError::RepeatedTerminal(v));
            }
            seen.push(v);
        }
    }
    if pairs.is_empty() {
        return Ok(Outcome::Found(Vec::new()));
    }
    let mut search = DisjointSearch {
        g,
        pairs,
        meter,
        used: BitSet::with_capacity(g.slot_count()),
        sealed: BitSet::with_capacity(g.slot_count()),
        paths: Vec::new(),
    };
    match search.start_pair(0) {
        Err(Exhausted) => Ok(Outcome::Exhausted),
        Ok(false) => Ok(Outcome::Absent),
        Ok(true) => Ok(Outcome::Found(
            search
                .paths
                .into_iter()
                .map(|p| {
                    PathCertificate::new(p.into_iter().map(|i| VertexId(i as u32)).collect())
                })
                .collect(),
        )),
    }
}

/// True iff no induced s–t path of g contains v. Realized as an ordered-path
/// query on (s, v, t): an induced s–t path through v visits them in exactly
/// that order.
pub fn is_irrelevant(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    v: VertexId,
    budget: &OracleBudget,
) -> Result<Decision, OracleError> {
    let meter = budget.start();
    is_irrelevant_metered(g, s, t, v, &meter)
}

pub fn is_irrelevant_metered(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    v: VertexId,
    meter: &BudgetMeter,
) -> Result<Decision, OracleError> {
    match oracle_ordered_path_metered(g, &[s, v, t], meter)? {
        Outcome::Found(_) => Ok(Decision::No),
        Outcome::Absent => Ok(Decision::Yes),
        Outcome::Exhausted => Ok(Decision::Exhausted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn ordered_path_examples() {
        // P5, terminals (v0, v2, v4) -> the path itself
        let p5 = Graph::path(5);
        let out = oracle_ordered_path(&p5, &[v(0), v(2), v(4)], &budget()).unwrap();
        assert_eq!(
            out.found().unwrap().vertices,
            vec![v(0), v(1), v(2), v(3), v(4)]
        );

        // K4, any 3 terminals -> no
        let k4 = Graph::complete(4);
        let out = oracle_ordered_path(&k4, &[v(0), v(1), v(2)], &budget()).unwrap();
        assert_eq!(out, Outcome::Absent);

        // C6, terminals (v0, v3) -> yes
        let c6 = Graph::cycle(6);
        let out = oracle_ordered_path(&c6, &[v(0), v(3)], &budget()).unwrap();
        let cert = out.found().unwrap();
        assert!(c6.is_induced_path(&cert));
        assert_eq!(cert.vertices.first(), Some(&v(0)));
        assert_eq!(cert.vertices.last(), Some(&v(3)));
    }

    #[test]
    fn ordered_path_rejects_bad_terminals() {
        let g = Graph::path(3);
        assert!(oracle_ordered_path(&g, &[v(0), v(0)], &budget()).is_err());
        assert!(oracle_ordered_path(&g, &[v(0), v(9)], &budget()).is_err());
        assert!(oracle_ordered_path(&g, &[], &budget()).is_err());
    }

    #[test]
    fn two_terminal_yes_iff_connected() {
        let g = Graph::build(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(oracle_ordered_path(&g, &[v(0), v(2)], &budget())
            .unwrap()
            .is_found());
        assert_eq!(
            oracle_ordered_path(&g, &[v(0), v(4)], &budget()).unwrap(),
            Outcome::Absent
        );
    }

    #[test]
    fn k_in_a_path_examples() {
        let c6 = Graph::cycle(6);
        assert!(oracle_k_in_a_path(&c6, &[v(3), v(0)], &budget())
            .unwrap()
            .is_found());

        // K_{1,3}: center 0, leaves 1, 2, 3 -> no path through the 3 leaves
        let claw = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            oracle_k_in_a_path(&claw, &[v(1), v(2), v(3)], &budget()).unwrap(),
            Outcome::Absent
        );

        // Star subdivided once per leg: still no induced path through 3 leaves.
        let spider = Graph::build(
            7,
            &[(0, 1), (1, 4), (0, 2), (2, 5), (0, 3), (3, 6)],
        )
        .unwrap();
        assert_eq!(
            oracle_k_in_a_path(&spider, &[v(4), v(5), v(6)], &budget()).unwrap(),
            Outcome::Absent
        );
    }

    #[test]
    fn disjoint_paths_examples() {
        let c6 = Graph::cycle(6);
        let out = oracle_disjoint_paths(&c6, &[(v(0), v(1)), (v(3), v(4))], &budget()).unwrap();
        let paths = out.found().unwrap();
        assert!(c6.are_mutually_induced(&paths));

        let c4 = Graph::cycle(4);
        assert_eq!(
            oracle_disjoint_paths(&c4, &[(v(0), v(2)), (v(1), v(3))], &budget()).unwrap(),
            Outcome::Absent
        );

        let two_p2 = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(
            oracle_disjoint_paths(&two_p2, &[(v(0), v(1)), (v(2), v(3))], &budget())
                .unwrap()
                .is_found()
        );
    }

    #[test]
    fn disjoint_paths_singleton_pairs() {
        // Two far-apart singleton targets on a path.
        let p5 = Graph::path(5);
        let out = oracle_disjoint_paths(&p5, &[(v(0), v(0)), (v(3), v(3))], &budget()).unwrap();
        let paths = out.found().unwrap();
        assert_eq!(paths[0].vertices, vec![v(0)]);
        assert_eq!(paths[1].vertices, vec![v(3)]);

        // Adjacent singletons are not mutually induced.
        assert_eq!(
            oracle_disjoint_paths(&p5, &[(v(0), v(0)), (v(1), v(1))], &budget()).unwrap(),
            Outcome::Absent
        );
    }

    #[test]
    fn irrelevant_vertex_examples() {
        let p4 = Graph::path(4);
        assert_eq!(
            is_irrelevant(&p4, v(0), v(3), v(1), &budget()).unwrap(),
            Decision::No
        );

        // P4 plus pendant on interior vertex: the pendant is irrelevant.
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(
            is_irrelevant(&g, v(0), v(3), v(4), &budget()).unwrap(),
            Decision::Yes
        );

        // C5 with adjacent s, t: the far side is closed off by the st edge.
        let c5 = Graph::cycle(5);
        for x in [2, 3, 4] {
            assert_eq!(
                is_irrelevant(&c5, v(0), v(1), v(x), &budget()).unwrap(),
                Decision::Yes,
                "vertex {x}"
            );
        }
    }

    #[test]
    fn exhaustion_is_reported() {
        let g = Graph::complete(9);
        let out = oracle_ordered_path(&g, &[v(0), v(8)], &OracleBudget::nodes(1)).unwrap();
        assert_eq!(out, Outcome::Exhausted);
    }

    #[test]
    fn determinism() {
        let g = Graph::cycle(8);
        let a = oracle_ordered_path(&g, &[v(0), v(4)], &budget()).unwrap();
        let b = oracle_ordered_path(&g, &[v(0), v(4)], &budget()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monotone_under_induced_subgraphs() {
        let g = Graph::cycle(7);
        let keep = [0usize, 1, 2, 3, 4].into_iter().collect();
        let sub = g.induced_subgraph(&keep).unwrap();
        let sub_out = oracle_ordered_path(&sub, &[v(0), v(4)], &budget()).unwrap();
        let cert = sub_out.found().unwrap();
        // The same certificate stays valid in the larger graph.
        assert!(g.is_induced_path(&cert));
        assert!(oracle_ordered_path(&g, &[v(0), v(4)], &budget())
            .unwrap()
            .is_found());
    }
}
