//! The per-lemma reductions: cleaning, C5-apex removal, homogeneous clique
//! contraction, and the homogeneous pair case analysis.

use super::{CertPatch, ReduceError};
use crate::bits::BitSet;
use crate::graph::{Graph, VertexId};
#[cfg(test)]
use crate::graph::PathCertificate;
use crate::oracles::{is_irrelevant_metered, BudgetMeter, Decision};
use crate::recognizers::{
    find_claw, find_homogeneous_clique, find_odd_hole, HomogeneousPairWitness,
};
use serde::Serialize;

/// Repeatedly delete vertices that lie on no induced s–t path until none
/// remain. s and t are never deleted. Returns the cleaned graph and the
/// removal list, or `Err(Exhausted)` if the irrelevance oracle ran out of
/// budget.
pub fn clean(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    meter: &BudgetMeter,
) -> Result<(Graph, Vec<VertexId>), ReduceError> {
    let claw_free_input = find_claw(g).is_none();
    let mut cur = g.clone();
    let mut removed = Vec::new();
    'outer: loop {
        let verts: Vec<VertexId> = cur.vertices().collect();
        for v in verts {
            if v == s || v == t {
                continue;
            }
            match is_irrelevant_metered(&cur, s, t, v, meter)? {
                Decision::Yes => {
                    cur = cur.remove_vertex(v);
                    removed.push(v);
                    continue 'outer;
                }
                Decision::No => {}
                Decision::Exhausted => return Err(ReduceError::Exhausted),
            }
        }
        break;
    }
    // After cleaning a claw-free graph no odd antihole of length >= 7
    // survives; checked at desk scale in debug builds.
    #[cfg(debug_assertions)]
    {
        if claw_free_input && cur.vertex_count() <= 14 {
            debug_assert!(
                find_odd_hole(&cur.complement(), 7).is_none(),
                "cleaned graph contains an odd antihole of length >= 7"
            );
        }
    }
    #[cfg(not(debug_assertions))]
    let _ = claw_free_input;
    Ok((cur, removed))
}

/// An induced C5 inside g[N(u)], if any.
fn c5_in_neighborhood(g: &Graph, u: VertexId) -> Option<Vec<VertexId>> {
    if g.degree(u) < 5 {
        return None;
    }
    let nbrs = g.neighbor_set(u).clone();
    let h = g.induced_subgraph(&nbrs).unwrap();
    // Exactly length five: an odd-hole search bounded from below by 5 could
    // return a longer hole, so look for 5-cycles directly.
    let members: Vec<usize> = nbrs.iter().collect();
    let mut pick = [0usize; 5];
    fn rec(
        h: &Graph,
        members: &[usize],
        pick: &mut [usize; 5],
        depth: usize,
        start: usize,
    ) -> Option<Vec<VertexId>> {
        if depth == 5 {
            let set: BitSet = pick.iter().copied().collect();
            let sub = h.induced_subgraph(&set).unwrap();
            let five_cycle = sub.edge_count() == 5
                && sub.vertices().all(|x| sub.degree(x) == 2)
                && sub.is_connected();
            return five_cycle.then(|| set.iter().map(|i| VertexId(i as u32)).collect());
        }
        for i in start..members.len() {
            pick[depth] = members[i];
            if let Some(hit) = rec(h, members, pick, depth + 1, i + 1) {
                return Some(hit);
            }
        }
        None
    }
    rec(&h, &members, &mut pick, 0, 0)
}

/// While some vertex has an induced C5 in its neighborhood, delete it. In a
/// simple instance no terminal can qualify (their degrees are at most two).
pub fn remove_c5_apexes(g: &Graph, terminals: &[VertexId]) -> (Graph, Vec<VertexId>) {
    let mut cur = g.clone();
    let mut removed = Vec::new();
    'outer: loop {
        let verts: Vec<VertexId> = cur.vertices().collect();
        for u in verts {
            if c5_in_neighborhood(&cur, u).is_some() {
                debug_assert!(
                    !terminals.contains(&u),
                    "a terminal has a C5 neighborhood; the instance was not simple"
                );
                let was_connected = cur.is_connected();
                cur = cur.remove_vertex(u);
                removed.push(u);
                // Claw-freeness means we never removed a cut-vertex.
                debug_assert!(!was_connected || cur.is_connected());
                continue 'outer;
            }
        }
        break;
    }
    (cur, removed)
}

/// Repeatedly find a homogeneous clique and keep exactly one of its
/// vertices. Terminals never lie in a homogeneous clique of a simple
/// quasi-line graph; encountering one is reported as an upstream failure.
pub fn contract_homogeneous_cliques(
    g: &Graph,
    terminals: &[VertexId],
) -> Result<(Graph, Vec<VertexId>), ReduceError> {
    let mut cur = g.clone();
    let mut removed = Vec::new();
    while let Some(clique) = find_homogeneous_clique(&cur) {
        if let Some(&t) = clique.iter().find(|t| terminals.contains(t)) {
            return Err(ReduceError::Precondition(format!(
                "terminal {t:?} inside homogeneous clique; simplicity was broken upstream"
            )));
        }
        let keep = clique[0];
        let drop: BitSet = clique
            .iter()
            .filter(|&&v| v != keep)
            .map(|v| v.index())
            .collect();
        removed.extend(clique.iter().copied().filter(|&v| v != keep));
        cur = cur.remove_vertices(&drop);
    }
    Ok((cur, removed))
}

/// Which branch of the homogeneous-pair case analysis applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairCase {
    /// (a) an end terminal alone in its clique: the other clique shrinks to
    /// the terminal's neighbor.
    EndSingleton,
    /// (b) an end terminal with its unique neighbor: the terminal is deleted
    /// and renamed to the neighbor.
    EndPair,
    /// (c) an interior terminal alone in its clique.
    InteriorSingleton,
    /// (d) an interior terminal with one companion vertex.
    InteriorPair,
    /// (e) no terminal involved: one crossing edge survives.
    NoTerminal,
}

#[derive(Debug, Clone)]
pub struct PairReduction {
    pub graph: Graph,
    pub removed: Vec<VertexId>,
    /// old terminal -> replacement (case b only).
    pub renames: Vec<(VertexId, VertexId)>,
    pub case: PairCase,
    pub patch: Option<CertPatch>,
}

/// Reduce a homogeneous pair by vertex deletion only, following the case
/// analysis on where terminals sit inside the pair.
pub fn reduce_homogeneous_pair(
    g: &Graph,
    witness: &HomogeneousPairWitness,
    terminals: &[VertexId],
) -> Result<PairReduction, ReduceError> {
    if !witness.validate(g) {
        return Err(ReduceError::Precondition(
            "homogeneous pair witness fails its invariants".into(),
        ));
    }
    let in_a: Vec<VertexId> = witness
        .clique_a
        .iter()
        .copied()
        .filter(|t| terminals.contains(t))
        .collect();
    let in_b: Vec<VertexId> = witness
        .clique_b
        .iter()
        .copied()
        .filter(|t| terminals.contains(t))
        .collect();
    if in_a.len() + in_b.len() > 1 {
        return Err(ReduceError::Invariant(
            "more than one terminal inside a homogeneous pair; distance condition violated".into(),
        ));
    }
    // Normalize so any terminal sits in clique A.
    let (a, b) = if in_b.is_empty() {
        (witness.clique_a.clone(), witness.clique_b.clone())
    } else {
        (witness.clique_b.clone(), witness.clique_a.clone())
    };
    let terminal = in_a.into_iter().chain(in_b).next();
    let b_set: BitSet = b.iter().map(|v| v.index()).collect();
    let keep_only = |g: &Graph, set: &[VertexId], keep: VertexId| -> (Graph, Vec<VertexId>) {
        let drop: Vec<VertexId> = set.iter().copied().filter(|&v| v != keep).collect();
        let bits: BitSet = drop.iter().map(|v| v.index()).collect();
        (g.remove_vertices(&bits), drop)
    };

    let Some(t) = terminal else {
        // Case (e): keep one crossing edge a'b', delete the rest of A u B.
        let mut cross = None;
        'search: for &x in &a {
            for &y in &b {
                if g.has_edge(x, y) {
                    cross = Some((x, y));
                    break 'search;
                }
            }
        }
        let Some((keep_a, keep_b)) = cross else {
            return Err(ReduceError::Precondition(
                "pair cliques are non-adjacent; a homogeneous clique should have been reduced first"
                    .into(),
            ));
        };
        let drop: Vec<VertexId> = a
            .iter()
            .chain(b.iter())
            .copied()
            .filter(|&v| v != keep_a && v != keep_b)
            .collect();
        let bits: BitSet = drop.iter().map(|v| v.index()).collect();
        return Ok(PairReduction {
            graph: g.remove_vertices(&bits),
            removed: drop,
            renames: Vec::new(),
            case: PairCase::NoTerminal,
            patch: None,
        });
    };

    let k = terminals.len();
    let t_index = terminals.iter().position(|&x| x == t).unwrap();
    let is_end = t_index == 0 || t_index == k - 1;
    if a.len() > 2 {
        return Err(ReduceError::Invariant(format!(
            "terminal {t:?} in a homogeneous clique of size {}, impossible in a simple instance",
            a.len()
        )));
    }

    if is_end {
        if a.len() == 1 {
            // Case (a): the end terminal's unique neighbor is in B; the rest
            // of B is never used.
            let nbr = g
                .neighbors(t)
                .next()
                .ok_or_else(|| ReduceError::Invariant(format!("{t:?} has no neighbor")))?;
            if g.degree(t) != 1 || !b_set.contains(nbr.index()) {
                return Err(ReduceError::Invariant(format!(
                    "end terminal {t:?} is not degree-one into the partner clique"
                )));
            }
            let (graph, removed) = keep_only(g, &b, nbr);
            Ok(PairReduction {
                graph,
                removed,
                renames: Vec::new(),
                case: PairCase::EndSingleton,
                patch: None,
            })
        } else {
            // Case (b): A = {t, t'}; delete t, promote t' to the terminal
            // list, keep one neighbor of t' in B.
            let t_prime = a.iter().copied().find(|&v| v != t).unwrap();
            let u = g
                .neighbors(t_prime)
                .find(|v| b_set.contains(v.index()))
                .ok_or_else(|| {
                    ReduceError::Invariant("companion vertex has no neighbor in B".into())
                })?;
            let (graph, mut removed) = keep_only(g, &b, u);
            let graph = graph.remove_vertex(t);
            removed.push(t);
            let patch = if t_index == 0 {
                CertPatch::PrependPath(vec![t])
            } else {
                CertPatch::AppendPath(vec![t])
            };
            Ok(PairReduction {
                graph,
                removed,
                renames: vec![(t, t_prime)],
                case: PairCase::EndPair,
                patch: Some(patch),
            })
        }
    } else if a.len() == 1 {
        // Case (c): the unique B-neighbor of the interior terminal survives.
        let u = g
            .neighbors(t)
            .find(|v| b_set.contains(v.index()))
            .ok_or_else(|| ReduceError::Invariant("interior terminal misses B".into()))?;
        let (graph, removed) = keep_only(g, &b, u);
        Ok(PairReduction {
            graph,
            removed,
            renames: Vec::new(),
            case: PairCase::InteriorSingleton,
            patch: None,
        })
    } else {
        // Case (d): A = {t, t'}; the other neighbor of t must be in B.
        let t_prime = a.iter().copied().find(|&v| v != t).unwrap();
        let u = g
            .neighbors(t)
            .find(|&v| v != t_prime)
            .ok_or_else(|| ReduceError::Invariant("interior terminal of degree one".into()))?;
        if !b_set.contains(u.index()) {
            return Err(ReduceError::Invariant(
                "interior terminal's other neighbor is outside B".into(),
            ));
        }
        let (graph, mut removed) = keep_only(g, &b, u);
        let graph = graph.remove_vertex(t_prime);
        removed.push(t_prime);
        Ok(PairReduction {
            graph,
            removed,
            renames: Vec::new(),
            case: PairCase::InteriorPair,
            patch: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_ordered_path, OracleBudget};
    use crate::recognizers::find_homogeneous_pair;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn budget_meter() -> crate::oracles::BudgetMeter {
        OracleBudget::default().start()
    }

    #[test]
    fn clean_examples() {
        // P4 with end terminals: unchanged.
        let p4 = Graph::path(4);
        let (cleaned, removed) = clean(&p4, v(0), v(3), &budget_meter()).unwrap();
        assert!(removed.is_empty());
        assert_eq!(cleaned, p4);

        // Pendant on an interior vertex goes away.
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let (cleaned, removed) = clean(&g, v(0), v(3), &budget_meter()).unwrap();
        assert_eq!(removed, vec![v(4)]);
        assert_eq!(cleaned.vertex_count(), 4);

        // C5 with adjacent s, t reduces to the edge st.
        let c5 = Graph::cycle(5);
        let (cleaned, removed) = clean(&c5, v(0), v(1), &budget_meter()).unwrap();
        assert_eq!(cleaned.vertex_count(), 2);
        assert_eq!(removed.len(), 3);
        assert!(cleaned.has_edge(v(0), v(1)));
    }

    #[test]
    fn c5_apex_examples() {
        // W5: hub removed, C5 remains.
        let w5 = Graph::build(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 0),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
            ],
        )
        .unwrap();
        let (g, removed) = remove_c5_apexes(&w5, &[]);
        assert_eq!(removed, vec![v(5)]);
        assert_eq!(g, Graph::cycle(5));

        // A line graph is quasi-line already: unchanged.
        let c6 = Graph::cycle(6);
        let (g, removed) = remove_c5_apexes(&c6, &[]);
        assert!(removed.is_empty());
        assert_eq!(g, c6);
    }

    #[test]
    fn c5_apexes_icosahedron() {
        // Every vertex of the icosahedron has a C5 neighborhood; deletion
        // continues until no C5-in-neighborhood remains, verified directly.
        let edges: Vec<(u32, u32)> = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (1, 6),
            (1, 7),
            (2, 7),
            (2, 8),
            (3, 8),
            (3, 9),
            (4, 9),
            (4, 10),
            (5, 10),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 10),
            (10, 6),
            (6, 11),
            (7, 11),
            (8, 11),
            (9, 11),
            (10, 11),
        ];
        let ico = Graph::build(12, &edges).unwrap();
        assert!(ico.vertices().all(|u| ico.degree(u) == 5));
        assert!(c5_in_neighborhood(&ico, v(0)).is_some());
        let (g, _) = remove_c5_apexes(&ico, &[]);
        for u in g.vertices() {
            assert!(c5_in_neighborhood(&g, u).is_none());
        }
    }

    #[test]
    fn homogeneous_clique_contraction() {
        // Diamond appended to a long path: {x, y} collapses to one vertex,
        // and oracle answers agree before and after.
        // Path 0-1-2-3, then diamond on {3,4,5,6}: 4,5 adjacent to 3 and 6
        // and each other.
        let g = Graph::build(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (3, 5),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let terminals = [v(0), v(7)];
        let (reduced, removed) = contract_homogeneous_cliques(&g, &terminals).unwrap();
        assert!(!removed.is_empty());
        assert!(find_homogeneous_clique(&reduced).is_none());
        let before = oracle_ordered_path(&g, &terminals, &OracleBudget::default()).unwrap();
        let after = oracle_ordered_path(&reduced, &terminals, &OracleBudget::default()).unwrap();
        assert_eq!(before.is_found(), after.is_found());

        // C5 has no homogeneous clique: unchanged.
        let c5 = Graph::cycle(5);
        let (same, removed) = contract_homogeneous_cliques(&c5, &[]).unwrap();
        assert!(removed.is_empty());
        assert_eq!(same, c5);
    }

    #[test]
    fn homogeneous_pair_case_e() {
        // Two 2-cliques forming a homogeneous pair spliced into a long path:
        // 0-1-2-{3,4}-{5,6}-7-8-9 where {3,4} and {5,6} are cliques joined
        // completely.
        let g = Graph::build(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (2, 4),
                (3, 4),
                (5, 6),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        let terminals = [v(0), v(9)];
        let w = HomogeneousPairWitness {
            clique_a: vec![v(3), v(4)],
            clique_b: vec![v(5), v(6)],
        };
        assert!(w.validate(&g));
        let red = reduce_homogeneous_pair(&g, &w, &terminals).unwrap();
        assert_eq!(red.case, PairCase::NoTerminal);
        // A single crossing edge survives out of the pair.
        let survivors: Vec<VertexId> = [v(3), v(4), v(5), v(6)]
            .into_iter()
            .filter(|x| red.graph.has_vertex(*x))
            .collect();
        assert_eq!(survivors.len(), 2);
        let before = oracle_ordered_path(&g, &terminals, &OracleBudget::default()).unwrap();
        let after =
            oracle_ordered_path(&red.graph, &terminals, &OracleBudget::default()).unwrap();
        assert_eq!(before.is_found(), after.is_found());
    }

    #[test]
    fn homogeneous_pair_case_a() {
        // t_1 = 0 degree one into B = {1, 2, 3} (a triangle), B joined to a
        // tail so the pair ({0}, B) is homogeneous.
        // t_1 has degree one into the triangle B = {1,2,3}; vertex 4 sees
        // all of B and none of A, so ({0}, {1,2,3}) is a homogeneous pair.
        let g = Graph::build(
            8,
            &[
                (0, 1),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 4),
                (1, 4),
                (4, 5),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let w = HomogeneousPairWitness {
            clique_a: vec![v(0)],
            clique_b: vec![v(1), v(2), v(3)],
        };
        assert!(w.validate(&g));
        let terminals = [v(0), v(7)];
        let red = reduce_homogeneous_pair(&g, &w, &terminals).unwrap();
        assert_eq!(red.case, PairCase::EndSingleton);
        // B shrinks to t_1's neighbor.
        assert!(red.graph.has_vertex(v(1)));
        assert!(!red.graph.has_vertex(v(2)));
        assert!(!red.graph.has_vertex(v(3)));
        let before = oracle_ordered_path(&g, &terminals, &OracleBudget::default()).unwrap();
        let after =
            oracle_ordered_path(&red.graph, &terminals, &OracleBudget::default()).unwrap();
        assert_eq!(before.is_found(), after.is_found());
    }

    #[test]
    fn homogeneous_pair_case_b() {
        // A = {t_1, t_1'}: P7-like path 0-1-2-3-4-5-6 where ({0,1},{2}) is a
        // homogeneous pair.
        let g = Graph::path(7);
        let w = HomogeneousPairWitness {
            clique_a: vec![v(0), v(1)],
            clique_b: vec![v(2)],
        };
        assert!(w.validate(&g));
        let terminals = [v(0), v(6)];
        let red = reduce_homogeneous_pair(&g, &w, &terminals).unwrap();
        assert_eq!(red.case, PairCase::EndPair);
        assert_eq!(red.renames, vec![(v(0), v(1))]);
        assert!(!red.graph.has_vertex(v(0)));
        // Lifting: a reduced certificate starting at 1 extends by 0.
        let cert = PathCertificate::new(vec![v(1), v(2), v(3), v(4), v(5), v(6)]);
        assert!(red.graph.is_induced_path(&cert));
        match red.patch {
            Some(CertPatch::PrependPath(ref p)) => assert_eq!(p, &vec![v(0)]),
            ref other => panic!("expected prepend patch, got {other:?}"),
        }
    }
}
