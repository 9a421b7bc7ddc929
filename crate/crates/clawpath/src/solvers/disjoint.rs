//! Exact vertex-disjoint paths in the root multigraph. This replaces the
//! imported polynomial disjoint-paths machinery with a backtracking search
//! that is correct for all inputs; no polynomial bound is claimed.

use super::RootMultigraph;
use crate::bits::BitSet;
use crate::oracles::{BudgetMeter, Exhausted, OracleBudget, Outcome};

struct Search<'a> {
    adj: Vec<Vec<usize>>,
    pairs: &'a [(usize, usize)],
    meter: &'a BudgetMeter,
    used: BitSet,
    paths: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn reachable(&self, from: usize, to: usize) -> bool {
        if from == to {
            return true;
        }
        let mut seen: BitSet = std::iter::once(from).collect();
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if y == to {
                    return true;
                }
                if !self.used.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        false
    }

    fn start_pair(&mut self, i: usize) -> Result<bool, Exhausted> {
        if i == self.pairs.len() {
            return Ok(true);
        }
        self.meter.charge(1)?;
        let (s, t) = self.pairs[i];
        if self.used.contains(s) || (s != t && self.used.contains(t)) {
            return Ok(false);
        }
        self.paths.push(vec![s]);
        self.used.insert(s);
        let ok = self.extend(i)?;
        if !ok {
            self.paths.pop();
            self.used.remove(s);
        }
        Ok(ok)
    }

    fn extend(&mut self, i: usize) -> Result<bool, Exhausted> {
        self.meter.charge(1)?;
        let (_, t) = self.pairs[i];
        let tail = *self.paths[i].last().unwrap();
        if tail == t {
            let ok = self.start_pair(i + 1)?;
            return Ok(ok);
        }
        // Remaining endpoints of later pairs must stay available.
        if self.pairs[i + 1..]
            .iter()
            .any(|&(s2, t2)| self.used.contains(s2) || self.used.contains(t2))
        {
            return Ok(false);
        }
        if !self.reachable(tail, t) {
            return Ok(false);
        }
        let nbrs = self.adj[tail].clone();
        for w in nbrs {
            if self.used.contains(w) {
                continue;
            }
            self.paths[i].push(w);
            self.used.insert(w);
            if self.extend(i)? {
                return Ok(true);
            }
            self.paths[i].pop();
            self.used.remove(w);
        }
        Ok(false)
    }
}

/// Vertex-disjoint paths P_i joining each pair in the root multigraph, with
/// s = t pairs solved by single-vertex paths. Returns the paths as
/// root-vertex sequences, definitive absence, or budget exhaustion.
pub fn solve_disjoint_paths_root(
    h: &RootMultigraph,
    pairs: &[(usize, usize)],
    budget: &OracleBudget,
) -> Outcome<Vec<Vec<usize>>> {
    let meter = budget.start();
    solve_disjoint_paths_root_metered(h, pairs, &meter)
}

pub fn solve_disjoint_paths_root_metered(
    h: &RootMultigraph,
    pairs: &[(usize, usize)],
    meter: &BudgetMeter,
) -> Outcome<Vec<Vec<usize>>> {
    if pairs.is_empty() {
        return Outcome::Found(Vec::new());
    }
    let adj: Vec<Vec<usize>> = (0..h.vertex_count).map(|v| h.neighbors(v)).collect();
    let mut search = Search {
        adj,
        pairs,
        meter,
        used: BitSet::with_capacity(h.vertex_count),
        paths: Vec::new(),
    };
    match search.start_pair(0) {
        Err(Exhausted) => Outcome::Exhausted,
        Ok(false) => Outcome::Absent,
        Ok(true) => Outcome::Found(search.paths),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn multigraph(n: usize, edges: &[(usize, usize)]) -> RootMultigraph {
        RootMultigraph {
            vertex_count: n,
            edges: edges.to_vec(),
            line_vertices: (0..edges.len() as u32).map(VertexId).collect(),
        }
    }

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn grid_corner_pairs() {
        // 3x3 grid, vertices r*3+c.
        let mut edges = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let x = r * 3 + c;
                if c + 1 < 3 {
                    edges.push((x, x + 1));
                }
                if r + 1 < 3 {
                    edges.push((x, x + 3));
                }
            }
        }
        let h = multigraph(9, &edges);
        // Expected answers frozen from the exhaustive check below.
        for pairs in [[(0usize, 8usize), (2, 6)], [(0, 2), (6, 8)], [(0, 6), (2, 8)]] {
            let want = brute_force_two_pairs(&h, &pairs);
            let got = solve_disjoint_paths_root(&h, &pairs, &budget());
            assert_eq!(got.is_found(), want, "pairs {pairs:?}");
            if let Outcome::Found(paths) = got {
                let mut all: Vec<usize> = paths.iter().flatten().copied().collect();
                all.sort_unstable();
                all.dedup();
                assert_eq!(
                    all.len(),
                    paths.iter().map(Vec::len).sum::<usize>(),
                    "paths must be vertex-disjoint"
                );
            }
        }
        // Interleaved diagonal pairs must cross in the plane: no.
        assert!(!brute_force_two_pairs(&h, &[(0, 8), (2, 6)]));
        // Same-side pairs route along opposite rows: yes.
        assert!(brute_force_two_pairs(&h, &[(0, 2), (6, 8)]));
    }

    #[test]
    fn k4_minus_matching_crossing_pairs() {
        // C4: pairs across the diagonals cannot be disjoint.
        let h = multigraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            solve_disjoint_paths_root(&h, &[(0, 2), (1, 3)], &budget()),
            Outcome::Absent
        );
        // With both diagonals present they can.
        let h = multigraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        assert!(matches!(
            solve_disjoint_paths_root(&h, &[(0, 2), (1, 3)], &budget()),
            Outcome::Found(_)
        ));
    }

    #[test]
    fn single_pair_connected() {
        let h = multigraph(3, &[(0, 1), (1, 2)]);
        let out = solve_disjoint_paths_root(&h, &[(0, 2)], &budget());
        assert_eq!(out, Outcome::Found(vec![vec![0, 1, 2]]));
    }

    #[test]
    fn singleton_pair() {
        let h = multigraph(3, &[(0, 1), (1, 2)]);
        let out = solve_disjoint_paths_root(&h, &[(1, 1), (0, 0)], &budget());
        assert_eq!(out, Outcome::Found(vec![vec![1], vec![0]]));
    }

    #[test]
    fn parallel_edges_do_not_confuse_reachability() {
        let h = multigraph(2, &[(0, 1), (0, 1)]);
        assert!(matches!(
            solve_disjoint_paths_root(&h, &[(0, 1)], &budget()),
            Outcome::Found(_)
        ));
    }

    #[test]
    fn exhaustive_cross_check_tiny() {
        // All multigraphs on 4 vertices with up to 5 edges, one or two pairs:
        // compare against brute-force path enumeration.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = 4;
            let m = rng.gen_range(0..=5);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let a = rng.gen_range(0..n);
                    let mut b = rng.gen_range(0..n);
                    while b == a {
                        b = rng.gen_range(0..n);
                    }
                    (a.min(b), a.max(b))
                })
                .collect();
            let h = multigraph(n, &edges);
            let pairs = [(0usize, 1usize), (2, 3)];
            let got = solve_disjoint_paths_root(&h, &pairs, &budget());
            let want = brute_force_two_pairs(&h, &pairs);
            assert_eq!(got.is_found(), want, "edges {edges:?}");
        }
    }

    fn brute_force_two_pairs(h: &RootMultigraph, pairs: &[(usize, usize); 2]) -> bool {
        let paths0 = enumerate_paths(h, pairs[0].0, pairs[0].1);
        let paths1 = enumerate_paths(h, pairs[1].0, pairs[1].1);
        for p0 in &paths0 {
            for p1 in &paths1 {
                if p0.iter().all(|x| !p1.contains(x)) {
                    return true;
                }
            }
        }
        false
    }

    fn enumerate_paths(h: &RootMultigraph, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![s];
        fn rec(h: &RootMultigraph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let tail = *path.last().unwrap();
            if tail == t {
                out.push(path.clone());
                return;
            }
            for w in h.neighbors(tail) {
                if !path.contains(&w) {
                    path.push(w);
                    rec(h, t, path, out);
                    path.pop();
                }
            }
        }
        rec(h, t, &mut path, &mut out);
        out
    }
}
