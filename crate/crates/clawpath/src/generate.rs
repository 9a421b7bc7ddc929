//! Seeded random generators for claw-free test instances: line graphs of
//! random graphs, random proper interval graphs, random strip compositions,
//! and claw-destroyed random graphs. Used by the fuzz command and the
//! acceptance suite.

use crate::bits::BitSet;
use crate::graph::{Graph, Instance, Variant, VertexId};
use crate::recognizers::{
    compose_strips, find_claw, linear_representation_from_ordering, Strip, StripComposition,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// The three structured claw-free families the pipeline's leaf solvers are
/// built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    LineGraph,
    ProperInterval,
    StripComposition,
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::build(n, &edges).unwrap()
}

/// Line graph of a random simple graph, retried until its size lands in
/// [3, max_vertices].
pub fn random_line_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=7);
        let p = rng.gen_range(0.3..0.8);
        let h = random_graph(rng, n, p);
        let edges = h.edges();
        if edges.len() < 3 || edges.len() > max_vertices {
            continue;
        }
        let mut ledges = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    ledges.push((i as u32, j as u32));
                }
            }
        }
        return Graph::build(edges.len(), &ledges).unwrap();
    }
}

/// Random proper interval graph from a monotone rightmost-neighbor vector:
/// i ~ j (i < j) iff j <= r_i, with r non-decreasing.
pub fn random_proper_interval<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut edges = Vec::new();
    let mut r = 0usize;
    for i in 0..n {
        r = r.max(i);
        let stretch = rng.gen_range(0..=3);
        r = (r + stretch).min(n - 1);
        for j in i + 1..=r {
            edges.push((i as u32, j as u32));
        }
    }
    Graph::build(n, &edges).unwrap()
}

fn path_strip_ids(base: u32, interior: usize) -> Strip {
    let vertices: Vec<u32> = (base..base + interior as u32 + 2).collect();
    let edges: Vec<(u32, u32)> = vertices.windows(2).map(|w| (w[0], w[1])).collect();
    let max = *vertices.last().unwrap() as usize;
    let g = {
        let gg = Graph::build(max + 1, &edges).unwrap();
        let keep: BitSet = vertices.iter().map(|&v| v as usize).collect();
        gg.induced_subgraph(&keep).unwrap()
    };
    let order: Vec<VertexId> = vertices.iter().map(|&v| VertexId(v)).collect();
    Strip {
        edges,
        vertices: vertices.clone(),
        end_a: VertexId(base),
        end_b: VertexId(*vertices.last().unwrap()),
        rep: linear_representation_from_ordering(&g, &order).unwrap(),
    }
}

/// Random proper-interval strip on the given id range: a staircase interior
/// with pendant ends on its extremes.
fn random_strip<R: Rng>(rng: &mut R, base: u32, interior: usize) -> Strip {
    if interior == 0 || rng.gen_bool(0.4) {
        return path_strip_ids(base, interior.max(1));
    }
    let int_ids: Vec<u32> = (base + 1..base + 1 + interior as u32).collect();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut r = 0usize;
    for i in 0..interior {
        r = r.max(i);
        r = (r + rng.gen_range(1..=2)).min(interior - 1);
        for j in i + 1..=r {
            edges.push((int_ids[i], int_ids[j]));
        }
    }
    let a = base;
    let b = base + interior as u32 + 1;
    edges.push((a, int_ids[0]));
    edges.push((int_ids[interior - 1], b));
    let mut vertices = vec![a];
    vertices.extend(&int_ids);
    vertices.push(b);
    let max = b as usize;
    let g = {
        let gg = Graph::build(max + 1, &edges).unwrap();
        let keep: BitSet = vertices.iter().map(|&v| v as usize).collect();
        gg.induced_subgraph(&keep).unwrap()
    };
    let order: Vec<VertexId> = vertices.iter().map(|&v| VertexId(v)).collect();
    match linear_representation_from_ordering(&g, &order) {
        Some(rep) => Strip {
            edges,
            vertices,
            end_a: VertexId(a),
            end_b: VertexId(b),
            rep,
        },
        None => path_strip_ids(base, interior),
    }
}

/// A random composition of 2–3 linear interval strips over random hubs,
/// returned with the composed (quasi-line, hence claw-free) graph.
pub fn random_strip_composition<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
) -> (StripComposition, Graph) {
    loop {
        let strips_n = rng.gen_range(2..=3);
        let mut strips = Vec::new();
        let mut base = 0u32;
        let mut total = 0usize;
        for _ in 0..strips_n {
            let interior = rng.gen_range(1..=4);
            total += interior;
            strips.push(random_strip(rng, base, interior));
            base += interior as u32 + 2 + 3;
        }
        if total > max_vertices || total < 3 {
            continue;
        }
        let hubs_n = rng.gen_range(2..=3.min(strips_n + 1));
        let mut cliques: Vec<Vec<usize>> = vec![Vec::new(); hubs_n];
        for slot in 0..2 * strips_n {
            cliques[rng.gen_range(0..hubs_n)].push(slot);
        }
        cliques.retain(|c| !c.is_empty());
        let comp = StripComposition {
            base_cliques: cliques,
            strips,
        };
        let Ok(g) = compose_strips(&comp) else { continue };
        if g.vertex_count() < 3 || g.vertex_count() > max_vertices {
            continue;
        }
        debug_assert!(find_claw(&g).is_none(), "composition produced a claw");
        return (comp, g);
    }
}

/// Destroy claws in a random graph by joining two leaves of each claw found;
/// edge additions terminate the loop.
pub fn random_claw_free<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    while let Some(claw) = find_claw(&g) {
        g = g.with_edge(claw.leaves[0], claw.leaves[1]).unwrap();
    }
    g
}

/// A random claw-free graph drawn from one of the structured families or the
/// claw-destroyed pool.
pub fn random_claw_free_mixed<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    match rng.gen_range(0..4) {
        0 => random_line_graph(rng, max_vertices),
        1 => {
            let n = rng.gen_range(4..=max_vertices);
            random_proper_interval(rng, n)
        }
        2 => random_strip_composition(rng, max_vertices).1,
        _ => {
            let n = rng.gen_range(4..=max_vertices);
            let p = rng.gen_range(0.2..0.5);
            random_claw_free(rng, n, p)
        }
    }
}

pub fn family_graph<R: Rng>(rng: &mut R, family: Family, max_vertices: usize) -> Graph {
    match family {
        Family::LineGraph => random_line_graph(rng, max_vertices),
        Family::ProperInterval => {
            let n = rng.gen_range(4..=max_vertices);
            random_proper_interval(rng, n)
        }
        Family::StripComposition => random_strip_composition(rng, max_vertices).1,
    }
}

/// Pick k distinct terminals; when `independent` is set they are pairwise
/// non-adjacent (None if impossible within a few retries).
pub fn place_terminals<R: Rng>(
    rng: &mut R,
    g: &Graph,
    k: usize,
    independent: bool,
) -> Option<Vec<VertexId>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    if verts.len() < k {
        return None;
    }
    'attempt: for _ in 0..200 {
        let picked: Vec<VertexId> = verts.choose_multiple(rng, k).copied().collect();
        if independent {
            for (i, &a) in picked.iter().enumerate() {
                for &b in &picked[i + 1..] {
                    if g.has_edge(a, b) {
                        continue 'attempt;
                    }
                }
            }
        }
        return Some(picked);
    }
    None
}

/// A random instance of the requested variant over a mixed claw-free graph.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    variant: Variant,
    max_vertices: usize,
    max_k: usize,
) -> Option<Instance> {
    let g = random_claw_free_mixed(rng, max_vertices);
    let k = match variant {
        Variant::DisjointPaths => 2 * rng.gen_range(1..=max_k.max(2) / 2),
        _ => rng.gen_range(2..=max_k.max(2)),
    };
    let terminals = place_terminals(rng, &g, k, false)?;
    Instance::new(g, terminals, variant).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizers::{is_quasi_line, recognize_linear_interval};
    use rand::SeedableRng;

    #[test]
    fn generated_families_are_claw_free() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            for family in [
                Family::LineGraph,
                Family::ProperInterval,
                Family::StripComposition,
            ] {
                let g = family_graph(&mut rng, family, 14);
                assert!(find_claw(&g).is_none(), "{family:?} produced a claw");
            }
            let g = random_claw_free(&mut rng, 10, 0.3);
            assert!(find_claw(&g).is_none());
        }
    }

    #[test]
    fn proper_interval_family_recognizes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let n = rng.gen_range(4..=14);
            let g = random_proper_interval(&mut rng, n);
            assert!(recognize_linear_interval(&g).is_some());
        }
    }

    #[test]
    fn line_graph_family_is_quasi_line() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_line_graph(&mut rng, 14);
            assert!(is_quasi_line(&g).unwrap());
        }
    }
}
