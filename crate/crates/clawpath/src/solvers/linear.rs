//! Ordered-k-in-a-Path on linear interval graphs, and the circular-to-linear
//! cut.
//!
//! On a line, any induced path has monotone positions, so a solution from
//! t_1 to t_k lives between them and visits the terminals in position order.
//! Per terminal gap, all neighbors of the left terminal except the rightmost
//! and all neighbors of the right terminal except the leftmost are deleted;
//! the segment shortest paths are then induced and combine into a solution
//! unless some interior terminal's kept neighbors are adjacent.

use super::SolveError;
use crate::bits::BitSet;
use crate::graph::{Graph, PathCertificate, VertexId};
use crate::rational::Rat;
use crate::recognizers::{recognize_linear_interval, Flavor, IntervalRepresentation};
use std::collections::VecDeque;

/// Distinct positions are required by the algorithm; ties in an externally
/// supplied representation are broken by an index-scaled epsilon and the
/// result re-validated.
fn distinct_positions(
    g: &Graph,
    rep: &IntervalRepresentation,
) -> Result<IntervalRepresentation, SolveError> {
    let mut points: Vec<Rat> = rep.positions.iter().map(|&(_, p)| p).collect();
    points.sort_unstable();
    if points.windows(2).all(|w| w[0] < w[1]) {
        return Ok(rep.clone());
    }
    let mut min_gap: Option<Rat> = None;
    for w in points.windows(2) {
        let d = w[1] - w[0];
        if d > Rat::int(0) && min_gap.map_or(true, |m| d < m) {
            min_gap = Some(d);
        }
    }
    let gap = min_gap.unwrap_or(Rat::int(1));
    let n = rep.positions.len() as i64;
    let eps = gap * Rat::new(1, 2 * (n + 1));
    let mut perturbed = rep.clone();
    for (i, entry) in perturbed.positions.iter_mut().enumerate() {
        entry.1 = entry.1 + eps * Rat::int(i as i64);
    }
    if perturbed.realizes(g) {
        Ok(perturbed)
    } else {
        Err(SolveError::BadRepresentation)
    }
}

/// BFS shortest path from `from` to `to` inside `allowed`, preferring
/// leftmost (smallest-position) predecessors among equals.
fn leftmost_shortest_path(
    g: &Graph,
    allowed: &BitSet,
    rank: &[usize],
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.slot_count()];
    let mut dist = vec![u32::MAX; g.slot_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        let mut nbrs: Vec<usize> = g
            .neighbor_set(VertexId(x as u32))
            .iter()
            .filter(|&y| allowed.contains(y))
            .collect();
        nbrs.sort_by_key(|&y| rank[y]);
        for y in nbrs {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if dist[to] == u32::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Solve Ordered-k-in-a-Path given a verified linear representation.
/// Terminals must form an independent set.
pub fn solve_linear_interval(
    g: &Graph,
    rep: &IntervalRepresentation,
    terminals: &[VertexId],
) -> Result<Option<PathCertificate>, SolveError> {
    if rep.flavor != Flavor::Linear || !rep.realizes(g) {
        return Err(SolveError::BadRepresentation);
    }
    let rep = distinct_positions(g, rep)?;
    if terminals.is_empty() {
        return Err(SolveError::BadTerminals("no terminals".into()));
    }
    if terminals.len() == 1 {
        return Ok(Some(PathCertificate::new(vec![terminals[0]])));
    }
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            if a == b || g.has_edge(a, b) {
                return Err(SolveError::BadTerminals(format!(
                    "{a:?} and {b:?} are not independent"
                )));
            }
        }
    }

    // Vertices in position order; rank = index on the line.
    let mut order: Vec<(Rat, usize)> = rep
        .positions
        .iter()
        .map(|&(v, p)| (p, v.index()))
        .collect();
    order.sort_unstable();
    let terminal_pos = |t: VertexId| rep.position(t).expect("terminal not in representation");

    // Orient so t_1 comes before t_k; an induced path's positions are
    // monotone, so a solution forces the terminal positions to be monotone.
    let mut terms: Vec<VertexId> = terminals.to_vec();
    let flip = terminal_pos(terms[0]) > terminal_pos(*terms.last().unwrap());
    if flip {
        terms.reverse();
    }
    let positions: Vec<Rat> = terms.iter().map(|&t| terminal_pos(t)).collect();
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(None);
    }

    let mut rank = vec![usize::MAX; g.slot_count()];
    for (i, &(_, v)) in order.iter().enumerate() {
        rank[v] = i;
    }

    // Trim to [t_1, t_k] and delete the doomed terminal neighbors per gap.
    let lo = positions[0];
    let hi = *positions.last().unwrap();
    let mut allowed: BitSet = rep
        .positions
        .iter()
        .filter(|&&(_, p)| lo <= p && p <= hi)
        .map(|&(v, _)| v.index())
        .collect();
    for gap in 0..terms.len() - 1 {
        let (ti, tj) = (terms[gap], terms[gap + 1]);
        let (pi, pj) = (positions[gap], positions[gap + 1]);
        let in_window =
            |v: VertexId| rep.position(v).map(|p| pi <= p && p <= pj).unwrap_or(false);
        // Neighbors of t_i inside the window, keep only the rightmost.
        let right_nbrs: Vec<VertexId> = {
            let mut ns: Vec<VertexId> = g
                .neighbors(ti)
                .filter(|&v| in_window(v) && allowed.contains(v.index()))
                .collect();
            ns.sort_by_key(|&v| rank[v.index()]);
            ns
        };
        for &v in right_nbrs.iter().rev().skip(1) {
            allowed.remove(v.index());
        }
        // Neighbors of t_{i+1} inside the window, keep only the leftmost.
        let left_nbrs: Vec<VertexId> = {
            let mut ns: Vec<VertexId> = g
                .neighbors(tj)
                .filter(|&v| in_window(v) && allowed.contains(v.index()))
                .collect();
            ns.sort_by_key(|&v| rank[v.index()]);
            ns
        };
        for &v in left_nbrs.iter().skip(1) {
            allowed.remove(v.index());
        }
    }

    // An interior terminal whose kept neighbors are adjacent cannot be an
    // inner vertex of any induced path.
    for i in 1..terms.len() - 1 {
        let t = terms[i];
        let kept: Vec<VertexId> = g
            .neighbors(t)
            .filter(|&v| allowed.contains(v.index()))
            .collect();
        let left = kept.iter().copied().min_by_key(|&v| rank[v.index()]);
        let right = kept.iter().copied().max_by_key(|&v| rank[v.index()]);
        if let (Some(l), Some(r)) = (left, right) {
            if l != r && g.has_edge(l, r) {
                return Ok(None);
            }
        }
    }

    // Segment shortest paths, leftmost-first among equals.
    let mut full: Vec<usize> = vec![terms[0].index()];
    for gap in 0..terms.len() - 1 {
        let (pi, pj) = (positions[gap], positions[gap + 1]);
        let window: BitSet = rep
            .positions
            .iter()
            .filter(|&&(_, p)| pi <= p && p <= pj)
            .map(|&(v, _)| v.index())
            .filter(|&v| allowed.contains(v))
            .collect();
        let seg = match leftmost_shortest_path(
            g,
            &window,
            &rank,
            terms[gap].index(),
            terms[gap + 1].index(),
        ) {
            Some(seg) => seg,
            None => return Ok(None),
        };
        full.extend(&seg[1..]);
    }
    let mut cert_vertices: Vec<VertexId> = full.into_iter().map(|i| VertexId(i as u32)).collect();
    if flip {
        cert_vertices.reverse();
    }
    let cert = PathCertificate::new(cert_vertices);
    // The combined segments are induced by construction; anything else is a
    // bug, not a "no".
    assert!(
        g.is_induced_path(&cert),
        "linear interval solver produced a non-induced path"
    );
    Ok(Some(cert))
}

/// Mirror a circular representation (reverse the circle's orientation).
pub fn mirror_circular(rep: &IntervalRepresentation) -> IntervalRepresentation {
    let c = rep.circumference.expect("mirror needs a circular representation");
    let norm = |mut p: Rat| {
        while p < Rat::int(0) {
            p = p + c;
        }
        while p >= c {
            p = p - c;
        }
        p
    };
    IntervalRepresentation {
        flavor: rep.flavor,
        positions: rep
            .positions
            .iter()
            .map(|&(v, p)| (v, norm(c - p)))
            .collect(),
        intervals: rep
            .intervals
            .iter()
            .map(|&(a, b)| (norm(c - b), norm(c - a)))
            .collect(),
        circumference: rep.circumference,
    }
}

/// Outcome of the circular cut for one orientation.
#[derive(Debug)]
pub enum CircularCut {
    /// The terminals do not appear in clockwise order: no solution exists in
    /// this orientation (the caller tries the mirror).
    WrongOrder,
    /// The trimmed graph failed linear recognition; dispatch cannot proceed
    /// and the caller should fall back.
    NotLinear,
    /// The trimmed graph with a fresh, verified linear representation.
    Cut(Graph, IntervalRepresentation),
}

/// Step 5a: on a circle, a solution's vertices respect the circular order,
/// so all points on the arc from t_k clockwise back to t_1 (the arc free of
/// interior terminals) can be deleted.
pub fn circular_to_linear(
    g: &Graph,
    rep: &IntervalRepresentation,
    terminals: &[VertexId],
) -> Result<CircularCut, SolveError> {
    if rep.flavor != Flavor::Circular || !rep.realizes(g) {
        return Err(SolveError::BadRepresentation);
    }
    let c = rep.circumference.expect("circular representation");
    if terminals.len() < 2 {
        return Err(SolveError::BadTerminals("need at least two terminals".into()));
    }
    let pos = |t: VertexId| {
        rep.position(t)
            .ok_or_else(|| SolveError::BadTerminals(format!("{t:?} not in representation")))
    };
    let start = pos(terminals[0])?;
    let norm = |mut p: Rat| {
        while p < Rat::int(0) {
            p = p + c;
        }
        while p >= c {
            p = p - c;
        }
        p
    };
    // Clockwise offsets from t_1 must be strictly increasing.
    let offsets: Vec<Rat> = terminals
        .iter()
        .map(|&t| pos(t).map(|p| norm(p - start)))
        .collect::<Result<_, _>>()?;
    if offsets.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(CircularCut::WrongOrder);
    }
    let last = *offsets.last().unwrap();
    // Keep exactly the arc [t_1 .. t_k]; everything strictly beyond t_k is
    // the terminal-free arc and gets deleted.
    let keep: BitSet = rep
        .positions
        .iter()
        .filter(|&&(_, p)| norm(p - start) <= last)
        .map(|&(v, _)| v.index())
        .collect();
    let trimmed = g.induced_subgraph(&keep).unwrap();
    match recognize_linear_interval(&trimmed) {
        Some(linear) => Ok(CircularCut::Cut(trimmed, linear)),
        None => Ok(CircularCut::NotLinear),
    }
}

/// Run the circular cut for one orientation and solve the linear residue.
/// `Ok(None)` is a definitive no for this orientation; a failed cut is an
/// error so the caller can fall back instead of misreporting.
pub fn solve_lin_or_cut(
    g: &Graph,
    rep: &IntervalRepresentation,
    terminals: &[VertexId],
) -> Result<Option<PathCertificate>, SolveError> {
    match circular_to_linear(g, rep, terminals)? {
        CircularCut::WrongOrder => Ok(None),
        CircularCut::NotLinear => Err(SolveError::BadRepresentation),
        CircularCut::Cut(trimmed, linear) => solve_linear_interval(&trimmed, &linear, terminals),
    }
}
