//! Ordered-k-in-a-Path on line graphs.
//!
//! An induced path in L(H) corresponds to a path in H read edge by edge, so
//! visiting terminal vertices of L in order means traversing their root
//! edges in order. For each of the ≤ 2^k ways to orient the terminal edges,
//! the stretches between consecutive terminal edges become a vertex-disjoint
//! paths instance on the root, solved exactly.

use super::disjoint::solve_disjoint_paths_root_metered;
use super::{RootMultigraph, SolveError};
use crate::graph::{Graph, PathCertificate, VertexId};
use crate::oracles::{BudgetMeter, OracleBudget, Outcome};
use crate::recognizers::line_graph_root;

fn edges_share(h: &RootMultigraph, i: usize, j: usize) -> bool {
    let (a, b) = h.edges[i];
    let (c, d) = h.edges[j];
    a == c || a == d || b == c || b == d
}

/// Pick the root edge to realize a segment step between two root vertices,
/// preferring non-terminal parallel edges.
fn step_edge(h: &RootMultigraph, x: usize, y: usize, terminal_edges: &[usize]) -> Option<usize> {
    let mut best = None;
    for (id, &(a, b)) in h.edges.iter().enumerate() {
        if (a, b) == (x.min(y), x.max(y)) {
            if !terminal_edges.contains(&id) {
                return Some(id);
            }
            best.get_or_insert(id);
        }
    }
    best
}

fn verify_edge_sequence(h: &RootMultigraph, seq: &[usize], terminal_edges: &[usize]) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != seq.len() {
        return false;
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let share = edges_share(h, seq[i], seq[j]);
            if share != (j == i + 1) {
                return false;
            }
        }
    }
    // Terminal edges appear exactly in order.
    let hits: Vec<usize> = seq
        .iter()
        .filter(|e| terminal_edges.contains(e))
        .copied()
        .collect();
    hits == terminal_edges
}

/// Solve the ordered problem directly on a root multigraph whose line graph
/// carries the terminals.
pub fn solve_on_root(
    h: &RootMultigraph,
    terminals: &[VertexId],
    meter: &BudgetMeter,
) -> Result<Outcome<PathCertificate>, SolveError> {
    let terminal_edges: Vec<usize> = terminals
        .iter()
        .map(|&t| h.edge_of_line_vertex(t).ok_or(SolveError::NotLineGraph))
        .collect::<Result<_, _>>()?;
    let k = terminal_edges.len();
    if k == 0 {
        return Err(SolveError::BadTerminals("no terminals".into()));
    }
    if k == 1 {
        return Ok(Outcome::Found(PathCertificate::new(vec![terminals[0]])));
    }
    // Non-consecutive terminal edges sharing a root vertex force a chord.
    for i in 0..k {
        for j in i + 2..k {
            if edges_share(h, terminal_edges[i], terminal_edges[j]) {
                return Ok(Outcome::Absent);
            }
        }
    }
    if k == 2 && edges_share(h, terminal_edges[0], terminal_edges[1]) {
        return Ok(Outcome::Found(PathCertificate::new(vec![
            terminals[0],
            terminals[1],
        ])));
    }
    let mut exhausted = false;
    'orientations: for mask in 0u32..(1 << k) {
        // Orientation: bit i set = traverse edge i from .1 to .0.
        let mut tails = Vec::with_capacity(k);
        let mut heads = Vec::with_capacity(k);
        for (i, &e) in terminal_edges.iter().enumerate() {
            let (a, b) = h.edges[e];
            if (mask >> i) & 1 == 0 {
                tails.push(a);
                heads.push(b);
            } else {
                tails.push(b);
                heads.push(a);
            }
        }
        // All endpoint slots distinct except head_i = tail_{i+1}.
        let mut slots: Vec<(usize, usize)> = Vec::new(); // (vertex, code)
        for i in 0..k {
            slots.push((tails[i], 2 * i));
            slots.push((heads[i], 2 * i + 1));
        }
        for a in 0..slots.len() {
            for b in a + 1..slots.len() {
                if slots[a].0 != slots[b].0 {
                    continue;
                }
                let (ca, cb) = (slots[a].1, slots[b].1);
                let merge_ok =
                    ca % 2 == 1 && cb % 2 == 0 && cb / 2 == ca / 2 + 1 && slots[a].0 == slots[b].0;
                if !merge_ok {
                    continue 'orientations;
                }
            }
        }
        // Segments live in the root minus the free outer endpoints.
        let banned = [tails[0], heads[k - 1]];
        let pruned = RootMultigraph {
            vertex_count: h.vertex_count,
            edges: h
                .edges
                .iter()
                .filter(|&&(a, b)| !banned.contains(&a) && !banned.contains(&b))
                .copied()
                .collect(),
            line_vertices: Vec::new(),
        };
        let pairs: Vec<(usize, usize)> = (0..k - 1).map(|i| (heads[i], tails[i + 1])).collect();
        match solve_disjoint_paths_root_metered(&pruned, &pairs, meter) {
            Outcome::Exhausted => {
                exhausted = true;
                continue;
            }
            Outcome::Absent => continue,
            Outcome::Found(segments) => {
                let mut seq = vec![terminal_edges[0]];
                for (i, seg) in segments.iter().enumerate() {
                    for step in seg.windows(2) {
                        match step_edge(h, step[0], step[1], &terminal_edges) {
                            Some(e) => seq.push(e),
                            None => continue 'orientations,
                        }
                    }
                    seq.push(terminal_edges[i + 1]);
                }
                if !verify_edge_sequence(h, &seq, &terminal_edges) {
                    continue;
                }
                let cert = PathCertificate::new(
                    seq.into_iter().map(|e| h.line_vertex(e)).collect(),
                );
                return Ok(Outcome::Found(cert));
            }
        }
    }
    Ok(if exhausted {
        Outcome::Exhausted
    } else {
        Outcome::Absent
    })
}

/// Solve Ordered-k-in-a-Path on a line graph by rooting it and translating
/// to vertex-disjoint paths in the root.
pub fn solve_line_graph(
    g: &Graph,
    terminals: &[VertexId],
    budget: &OracleBudget,
) -> Result<Outcome<PathCertificate>, SolveError> {
    let meter = budget.start();
    solve_line_graph_metered(g, terminals, &meter)
}

pub fn solve_line_graph_metered(
    g: &Graph,
    terminals: &[VertexId],
    meter: &BudgetMeter,
) -> Result<Outcome<PathCertificate>, SolveError> {
    let root = line_graph_root(g).ok_or(SolveError::NotLineGraph)?;
    let out = solve_on_root(&root, terminals, meter)?;
    if let Outcome::Found(cert) = &out {
        assert!(
            g.is_induced_path(cert),
            "line graph solver produced a non-induced path"
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_ordered_path, OracleBudget};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn p5_as_line_graph_of_p6() {
        let p5 = Graph::path(5);
        let out = solve_line_graph(&p5, &[v(0), v(4)], &budget()).unwrap();
        let cert = out.found().unwrap();
        assert_eq!(cert.vertices.len(), 5);
    }

    #[test]
    fn c6_opposite_terminals() {
        let c6 = Graph::cycle(6);
        let out = solve_line_graph(&c6, &[v(0), v(3)], &budget()).unwrap();
        assert!(out.is_found());
    }

    #[test]
    fn l_k4_examples() {
        // L(K4): vertices = 6 edges of K4.
        let k4 = Graph::complete(4);
        let root = line_graph_root(&k4);
        assert!(root.is_some());
        let out = solve_line_graph(&k4, &[v(0), v(1), v(2)], &budget()).unwrap();
        let oracle = oracle_ordered_path(&k4, &[v(0), v(1), v(2)], &budget()).unwrap();
        assert_eq!(out.is_found(), oracle.is_found());
    }

    #[test]
    fn not_line_graph_is_an_error() {
        let claw = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(
            solve_line_graph(&claw, &[v(1), v(2)], &budget()),
            Err(SolveError::NotLineGraph)
        ));
    }

    #[test]
    fn adjacent_terminals() {
        let c6 = Graph::cycle(6);
        let out = solve_line_graph(&c6, &[v(0), v(1)], &budget()).unwrap();
        let cert = out.found().unwrap();
        assert_eq!(cert.vertices, vec![v(0), v(1)]);
    }

    #[test]
    fn oracle_equivalence_sweep_small_line_graphs() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 120 {
            let n = rng.gen_range(3..7);
            let mut hedges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.55) {
                        hedges.push((a, b));
                    }
                }
            }
            if hedges.len() < 3 || hedges.len() > 12 {
                continue;
            }
            let h = RootMultigraph {
                vertex_count: n,
                edges: hedges,
                line_vertices: Vec::new(),
            };
            let l = h.line_graph();
            let verts: Vec<VertexId> = l.vertices().collect();
            let k = rng.gen_range(2..=3.min(verts.len()));
            let terminals: Vec<VertexId> =
                verts.choose_multiple(&mut rng, k).copied().collect();
            let got = solve_line_graph(&l, &terminals, &budget()).unwrap();
            let want = oracle_ordered_path(&l, &terminals, &budget()).unwrap();
            assert_eq!(
                got.is_found(),
                want.is_found(),
                "L-graph {l:?} terminals {terminals:?}"
            );
            checked += 1;
        }
    }
}
