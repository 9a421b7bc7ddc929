//! Line-graph root reconstruction via Krausz clique partitions.
//!
//! A graph is the line graph of a simple graph iff its edge set partitions
//! into cliques with every vertex in at most two of them. The search below
//! processes edges in lexicographic order and, at each first uncovered edge,
//! branches over extending an existing cell or opening a new one; preferring
//! extension makes the Whitney-ambiguous K3 resolve to the star root.

use crate::graph::{Graph, VertexId};
use crate::solvers::RootMultigraph;
use std::collections::HashMap;

struct KrauszSearch<'a> {
    g: &'a Graph,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), usize>,
    covered: Vec<bool>,
    cells: Vec<Vec<VertexId>>,
    cell_count: Vec<u8>,
}

impl<'a> KrauszSearch<'a> {
    fn edge_id(&self, u: VertexId, v: VertexId) -> usize {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index[&key]
    }

    fn extend_cell(&mut self, cell: usize, v: VertexId) -> Option<Vec<usize>> {
        if self.cell_count[v.index()] >= 2 || self.cells[cell].contains(&v) {
            return None;
        }
        let mut newly = Vec::new();
        for &w in &self.cells[cell] {
            if !self.g.has_edge(w, v) {
                return None;
            }
            let id = self.edge_id(w, v);
            if self.covered[id] {
                return None;
            }
            newly.push(id);
        }
        for &id in &newly {
            self.covered[id] = true;
        }
        self.cells[cell].push(v);
        self.cell_count[v.index()] += 1;
        Some(newly)
    }

    fn retract_cell(&mut self, cell: usize, v: VertexId, newly: Vec<usize>) {
        for id in newly {
            self.covered[id] = false;
        }
        self.cells[cell].pop();
        self.cell_count[v.index()] -= 1;
    }

    fn search(&mut self) -> bool {
        let next = match self.covered.iter().position(|&c| !c) {
            None => return true,
            Some(i) => i,
        };
        let (u, v) = self.edges[next];
        for side in 0..2 {
            let (x, y) = if side == 0 { (u, v) } else { (v, u) };
            for cell in 0..self.cells.len() {
                if !self.cells[cell].contains(&x) {
                    continue;
                }
                if let Some(newly) = self.extend_cell(cell, y) {
                    if self.search() {
                        return true;
                    }
                    self.retract_cell(cell, y, newly);
                }
            }
        }
        if self.cell_count[u.index()] < 2 && self.cell_count[v.index()] < 2 {
            self.cells.push(vec![u, v]);
            self.cell_count[u.index()] += 1;
            self.cell_count[v.index()] += 1;
            self.covered[next] = true;
            if self.search() {
                return true;
            }
            self.covered[next] = false;
            self.cell_count[u.index()] -= 1;
            self.cell_count[v.index()] -= 1;
            self.cells.pop();
        }
        false
    }
}

/// Complete Krausz-partition search, optionally pre-seeded with cells that
/// must appear in the partition (each a clique; their internal edges are
/// marked covered up front). Returns the cell list on success.
pub(crate) fn krausz_partition(
    g: &Graph,
    seed_cells: &[Vec<VertexId>],
) -> Option<Vec<Vec<VertexId>>> {
    let edges = g.edges();
    let edge_index: HashMap<(VertexId, VertexId), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| ((u, v), i))
        .collect();
    let mut search = KrauszSearch {
        g,
        covered: vec![false; edges.len()],
        edges,
        edge_index,
        cells: Vec::new(),
        cell_count: vec![0; g.slot_count()],
    };
    for seed in seed_cells {
        for (i, &u) in seed.iter().enumerate() {
            if search.cell_count[u.index()] >= 2 {
                return None;
            }
            for &v in &seed[i + 1..] {
                if !g.has_edge(u, v) {
                    return None;
                }
                let id = search.edge_id(u, v);
                if search.covered[id] {
                    return None;
                }
                search.covered[id] = true;
            }
        }
        for &u in seed {
            search.cell_count[u.index()] += 1;
        }
        search.cells.push(seed.clone());
    }
    search.search().then_some(search.cells)
}

/// Build a root from a Krausz partition: one root vertex per cell plus a
/// pendant vertex for every missing cell slot.
pub(crate) fn root_from_cells(g: &Graph, cells: &[Vec<VertexId>]) -> RootMultigraph {
    let mut next_root = cells.len();
    let mut root_edges = Vec::new();
    let mut line_vertices = Vec::new();
    for v in g.vertices() {
        let mut slots: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&v))
            .map(|(i, _)| i)
            .collect();
        while slots.len() < 2 {
            slots.push(next_root);
            next_root += 1;
        }
        let (a, b) = (slots[0].min(slots[1]), slots[0].max(slots[1]));
        root_edges.push((a, b));
        line_vertices.push(v);
    }
    RootMultigraph {
        vertex_count: next_root,
        edges: root_edges,
        line_vertices,
    }
}

/// A root multigraph H with L(H) isomorphic to g under the returned
/// bijection, or `None` iff g is not the line graph of a simple graph.
/// Whitney ambiguity (K3) resolves deterministically to the star root.
pub fn line_graph_root(g: &Graph) -> Option<RootMultigraph> {
    let cells = krausz_partition(g, &[])?;
    let root = root_from_cells(g, &cells);
    debug_assert!(root.realizes_line_graph(g));
    Some(root)
}

/// The line graph of an arbitrary multigraph, on fresh ids 0..edge_count.
pub fn line_graph(h: &RootMultigraph) -> Graph {
    h.line_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn p3_roots_to_p4() {
        let p3 = Graph::path(3);
        let root = line_graph_root(&p3).unwrap();
        assert!(root.realizes_line_graph(&p3));
        // Root of P3 is P4: 4 vertices, 3 edges, max degree 2.
        assert_eq!(root.vertex_count, 4);
        assert_eq!(root.edge_count(), 3);
        let degrees: Vec<usize> = (0..root.vertex_count)
            .map(|x| root.edges.iter().filter(|&&(a, b)| a == x || b == x).count())
            .collect();
        assert_eq!(*degrees.iter().max().unwrap(), 2);
    }

    #[test]
    fn k3_roots_to_star_canonically() {
        let k3 = Graph::complete(3);
        let root = line_graph_root(&k3).unwrap();
        assert!(root.realizes_line_graph(&k3));
        // One degree-3 root vertex = the star, not the triangle.
        let degrees: Vec<usize> = (0..root.vertex_count)
            .map(|x| root.edges.iter().filter(|&&(a, b)| a == x || b == x).count())
            .collect();
        assert!(degrees.contains(&3));
    }

    #[test]
    fn c5_roots_to_c5() {
        let c5 = Graph::cycle(5);
        let root = line_graph_root(&c5).unwrap();
        assert!(root.realizes_line_graph(&c5));
        assert_eq!(root.vertex_count, 5);
        assert_eq!(root.edge_count(), 5);
    }

    #[test]
    fn claw_is_not_a_line_graph() {
        let claw = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(line_graph_root(&claw).is_none());
    }

    #[test]
    fn k4_roots_to_star() {
        // K4 = L(K_{1,4}).
        let k4 = Graph::complete(4);
        let root = line_graph_root(&k4).unwrap();
        assert!(root.realizes_line_graph(&k4));
    }

    #[test]
    fn wheel5_is_not_a_line_graph() {
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
        assert!(line_graph_root(&w5).is_none());
    }

    #[test]
    fn isolated_vertices_and_components() {
        let g = Graph::build(4, &[(1, 2)]).unwrap();
        let root = line_graph_root(&g).unwrap();
        assert!(root.realizes_line_graph(&g));
    }

    #[test]
    fn roundtrip_on_random_line_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..7);
            let mut edges = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            let h = RootMultigraph {
                vertex_count: n,
                edges: edges.iter().map(|&(a, b)| (a as usize, b as usize)).collect(),
                line_vertices: (0..edges.len() as u32).map(VertexId).collect(),
            };
            let l = h.line_graph();
            let root = line_graph_root(&l).expect("line graph must have a root");
            assert!(root.realizes_line_graph(&l));
        }
    }
}
