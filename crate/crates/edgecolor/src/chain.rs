//! Chain calculus: chains, path chains, fans, the shift/augment operations,
//! bicolored path traversal, and the hopeful/successful predicates.
//!
//! A chain is a sequence of distinct edges in which consecutive edges share
//! exactly one vertex. Shifting moves every edge's color one position toward
//! the chain start and vacates the last edge; augmenting a happy chain then
//! colors the vacated edge, growing the colored set by exactly the chain's
//! first edge.

use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use std::collections::{HashMap, HashSet};

/// Sequence of distinct edges, consecutive pairs sharing exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<usize>,
}

impl Chain {
    pub fn new(edges: Vec<usize>) -> Self {
        Chain { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.edges[0]
    }

    pub fn end(&self) -> usize {
        *self.edges.last().unwrap()
    }

    pub fn reversed(&self) -> Chain {
        let mut edges = self.edges.clone();
        edges.reverse();
        Chain { edges }
    }
}

/// Checks the chain structure: distinct edges, and each consecutive pair
/// shares exactly one vertex.
pub fn chain_valid(g: &Multigraph, edges: &[usize]) -> Result<()> {
    let mut seen = HashSet::with_capacity(edges.len());
    for &e in edges {
        if !seen.insert(e) {
            return Err(Error::NotShiftable(format!("repeated edge {e}")));
        }
    }
    for w in edges.windows(2) {
        let (a, b) = g.endpoints(w[0]);
        let (c, d) = g.endpoints(w[1]);
        let shared = [a, b]
            .iter()
            .filter(|&&v| v == c || v == d)
            .count();
        if shared != 1 {
            return Err(Error::NotShiftable(format!(
                "edges {} and {} share {} vertices",
                w[0], w[1], shared
            )));
        }
    }
    Ok(())
}

/// A chain whose edges after the first form a simple path. `verts` lists the
/// path vertices: `verts[0]` is the designated start vertex (an endpoint of
/// the first edge), `verts[i]` the vertex shared by edges `i-1` and `i`, and
/// the last entry the end vertex. The start vertex may coincide with a later
/// path vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathChain {
    pub edges: Vec<usize>,
    pub verts: Vec<usize>,
}

impl PathChain {
    pub fn single(g: &Multigraph, e: usize, v_start: usize) -> Self {
        let other = g.other_endpoint(e, v_start);
        PathChain {
            edges: vec![e],
            verts: vec![v_start, other],
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.edges[0]
    }

    pub fn end(&self) -> usize {
        *self.edges.last().unwrap()
    }

    pub fn v_start(&self) -> usize {
        self.verts[0]
    }

    pub fn v_end(&self) -> usize {
        *self.verts.last().unwrap()
    }

    /// Internal edges: all but the first and last.
    pub fn internal_edges(&self) -> &[usize] {
        if self.edges.len() <= 2 {
            &[]
        } else {
            &self.edges[1..self.edges.len() - 1]
        }
    }

    /// First `k` edges, keeping the vertex trace consistent.
    pub fn prefix(&self, k: usize) -> PathChain {
        assert!(k >= 1 && k <= self.edges.len());
        PathChain {
            edges: self.edges[..k].to_vec(),
            verts: self.verts[..k + 1].to_vec(),
        }
    }
}

/// A chain whose edges all contain a common pivot vertex. Non-pivot
/// endpoints need not be distinct (parallel edges revisit them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub edges: Vec<usize>,
    pub pivot: usize,
}

impl Fan {
    pub fn new(edges: Vec<usize>, pivot: usize) -> Self {
        Fan { edges, pivot }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.edges[0]
    }

    pub fn end(&self) -> usize {
        *self.edges.last().unwrap()
    }

    pub fn v_start(&self, g: &Multigraph) -> usize {
        g.other_endpoint(self.edges[0], self.pivot)
    }

    pub fn v_end(&self, g: &Multigraph) -> usize {
        g.other_endpoint(*self.edges.last().unwrap(), self.pivot)
    }

    /// All fan vertices: the pivot plus every non-pivot endpoint.
    pub fn vertices(&self, g: &Multigraph) -> Vec<usize> {
        let mut vs = vec![self.pivot];
        for &e in &self.edges {
            vs.push(g.other_endpoint(e, self.pivot));
        }
        vs
    }

    pub fn prefix(&self, j: usize) -> Fan {
        assert!(j >= 1 && j <= self.edges.len());
        Fan {
            edges: self.edges[..j].to_vec(),
            pivot: self.pivot,
        }
    }
}

/// The colors each chain edge would carry after shifting: edge `i` takes the
/// color of edge `i+1`, and the last edge goes blank.
fn shifted_colors(phi: &PartialColoring, edges: &[usize]) -> Vec<Option<Color>> {
    let mut out = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        if i + 1 < edges.len() {
            out.push(phi.get(edges[i + 1]));
        } else {
            out.push(None);
        }
    }
    out
}

/// True iff the chain starts blank and shifting it yields a proper coloring.
/// Properness is verified virtually, only along the touched vertices.
pub fn is_shiftable(g: &Multigraph, phi: &PartialColoring, edges: &[usize]) -> bool {
    check_shiftable(g, phi, edges).is_ok()
}

fn check_shiftable(g: &Multigraph, phi: &PartialColoring, edges: &[usize]) -> Result<()> {
    if edges.is_empty() {
        return Err(Error::NotShiftable("empty chain".into()));
    }
    chain_valid(g, edges)?;
    if let Some(c) = phi.get(edges[0]) {
        return Err(Error::NotShiftable(format!(
            "chain starts at colored edge {} (color {c})",
            edges[0]
        )));
    }
    let new_colors: HashMap<usize, Option<Color>> = edges
        .iter()
        .copied()
        .zip(shifted_colors(phi, edges))
        .collect();
    let mut touched: Vec<usize> = edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let mut seen: HashSet<Color> = HashSet::new();
    for v in touched {
        seen.clear();
        for &h in g.incident(v) {
            let color = match new_colors.get(&h) {
                Some(&c) => c,
                None => phi.get(h),
            };
            if let Some(c) = color {
                if !seen.insert(c) {
                    return Err(Error::NotShiftable(format!(
                        "color {c} repeated at vertex {v} after shift"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Shifts the coloring along the chain. Fails (leaving the coloring
/// untouched) when the chain is not shiftable.
///
/// Applied in two phases (vacate everything, then write the shifted colors)
/// because a chain may revisit a vertex, in which case an interleaved
/// vacate/assign order can trip over a color that is about to move.
pub fn shift(g: &Multigraph, phi: &mut PartialColoring, edges: &[usize]) -> Result<()> {
    check_shiftable(g, phi, edges)?;
    let new_colors = shifted_colors(phi, edges);
    for &e in edges.iter().skip(1) {
        if !phi.is_blank(e) {
            phi.unassign(g, e)?;
        }
    }
    for (&e, c) in edges.iter().zip(new_colors) {
        if let Some(c) = c {
            phi.assign(g, e, c).map_err(|err| {
                Error::internal(format!("shift write failed after validation: {err}"))
            })?;
        }
    }
    Ok(())
}

/// Undoes `shift(g, phi, edges)` by shifting along the reversed chain.
pub fn shift_back(g: &Multigraph, phi: &mut PartialColoring, edges: &[usize]) -> Result<()> {
    let rev: Vec<usize> = edges.iter().rev().copied().collect();
    shift(g, phi, &rev)
}

/// Shifts the chain and colors its vacated end edge with the smallest valid
/// color. Restores the coloring and fails when the chain is not happy.
pub fn augment(g: &Multigraph, phi: &mut PartialColoring, edges: &[usize]) -> Result<Color> {
    augment_from(g, phi, edges, None)
}

/// As [`augment`], but the end edge must take one of the two given colors
/// (smallest valid of the pair). Batch augmentation of same-pair chains
/// relies on the final color staying inside the pair: that is what keeps the
/// missing sets of every vertex outside the chain's fan and path end
/// unchanged.
pub fn augment_within(
    g: &Multigraph,
    phi: &mut PartialColoring,
    edges: &[usize],
    pair: (Color, Color),
) -> Result<Color> {
    augment_from(g, phi, edges, Some(pair))
}

fn augment_from(
    g: &Multigraph,
    phi: &mut PartialColoring,
    edges: &[usize],
    pair: Option<(Color, Color)>,
) -> Result<Color> {
    shift(g, phi, edges)?;
    let end = *edges.last().unwrap();
    let (u, v) = g.endpoints(end);
    let choice = match pair {
        None => phi.min_common_missing(u, v),
        Some((a, b)) => {
            let (lo, hi) = (a.min(b), a.max(b));
            [lo, hi]
                .into_iter()
                .find(|&c| phi.is_missing(u, c) && phi.is_missing(v, c))
        }
    };
    match choice {
        Some(c) => {
            phi.assign(g, end, c)?;
            Ok(c)
        }
        None => {
            shift_back(g, phi, edges)?;
            Err(Error::NotHappy)
        }
    }
}

/// Degree of `v` in the spanning subgraph of edges colored `a` or `b`.
pub fn ab_degree(phi: &PartialColoring, v: usize, a: Color, b: Color) -> usize {
    let mut d = 0;
    if phi.edge_at(v, a).is_some() {
        d += 1;
    }
    if b != a && phi.edge_at(v, b).is_some() {
        d += 1;
    }
    d
}

/// An uncolored edge is hopeful for a color pair when both endpoints have
/// two-color degree below 2.
pub fn edge_hopeful(g: &Multigraph, phi: &PartialColoring, e: usize, a: Color, b: Color) -> bool {
    let (x, y) = g.endpoints(e);
    ab_degree(phi, x, a, b) < 2 && ab_degree(phi, y, a, b) < 2
}

/// Whether `y` is reachable from `x` in the two-color subgraph, decided by
/// walking the component from `x`. Components mutate under every shift, so a
/// walk beats maintaining union-find here.
pub fn related(
    g: &Multigraph,
    phi: &PartialColoring,
    x: usize,
    y: usize,
    a: Color,
    b: Color,
) -> bool {
    if x == y {
        return true;
    }
    // Walk both directions out of x. Terminates on the component end or on
    // looping back to x (two-color components are paths or cycles).
    for (i, start_color) in [a, b].into_iter().enumerate() {
        if i == 1 && b == a {
            break;
        }
        let Some(first) = phi.edge_at(x, start_color) else {
            continue;
        };
        let mut prev = first;
        let mut cur = g.other_endpoint(first, x);
        let mut steps = 0usize;
        loop {
            if cur == y {
                return true;
            }
            if cur == x {
                break; // cycle closed
            }
            steps += 1;
            if steps > g.m() + 1 {
                break; // defensive; cannot happen on proper colorings
            }
            let next = [a, b]
                .into_iter()
                .filter_map(|c| phi.edge_at(cur, c))
                .find(|&h| h != prev);
            match next {
                Some(h) => {
                    cur = g.other_endpoint(h, cur);
                    prev = h;
                }
                None => break,
            }
        }
    }
    false
}

/// Hopeful, and additionally the endpoints lie in different two-color
/// components.
pub fn edge_successful(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    a: Color,
    b: Color,
) -> bool {
    let (x, y) = g.endpoints(e);
    edge_hopeful(g, phi, e, a, b) && !related(g, phi, x, y, a, b)
}

/// The bicolored path chain out of `e`: starts with `e` itself, then follows
/// the alternating `a`/`b` path leaving the endpoint opposite `v_start`,
/// with the first path edge colored `a`.
///
/// `cap` bounds the total edge count (including `e`); the second return
/// value reports whether the walk was cut short by the cap while a
/// continuation existed. Truncation is built into the traversal so capped
/// callers never materialize the full path.
pub fn bicolored_path(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    v_start: usize,
    a: Color,
    b: Color,
    cap: usize,
) -> (PathChain, bool) {
    assert!(cap >= 1);
    debug_assert!(phi.is_blank(e));
    let mut path = PathChain::single(g, e, v_start);
    if a == b {
        // A single-color "pair" only ever denotes the trivial path.
        return (path, false);
    }
    let mut cur = path.v_end();
    let mut expected = a;
    let mut prev = e;
    loop {
        let next = phi.edge_at(cur, expected).filter(|&h| h != prev);
        let Some(h) = next else {
            return (path, false);
        };
        if path.len() == cap {
            return (path, true);
        }
        cur = g.other_endpoint(h, cur);
        path.edges.push(h);
        path.verts.push(cur);
        prev = h;
        expected = if expected == a { b } else { a };
        if path.len() > g.m() + 1 {
            unreachable!("bicolored walk exceeded edge count");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    /// The seven-edge mixed fan/path chain from the shift illustration:
    /// colors (blank, a, b, c, d, e, f) become (a, b, c, d, e, f, blank).
    #[test]
    fn shift_moves_colors_toward_start() {
        // vertices a..h = 0..8
        let g = parse_graph("8 7\n1 0\n0 2\n0 3\n3 4\n4 5\n5 6\n5 7\n").unwrap();
        let mut phi = PartialColoring::with_assignments(
            &g,
            6,
            &[(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5)],
        )
        .unwrap();
        let chain: Vec<usize> = (0..7).collect();
        assert!(is_shiftable(&g, &phi, &chain));
        shift(&g, &mut phi, &chain).unwrap();
        assert_eq!(
            (0..7).map(|e| phi.get(e)).collect::<Vec<_>>(),
            vec![Some(0), Some(1), Some(2), Some(3), Some(4), Some(5), None]
        );
        assert!(phi.is_proper(&g));
    }

    #[test]
    fn shift_of_single_blank_edge_is_identity() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let mut phi = PartialColoring::blank(&g, 1);
        let before = phi.get(0);
        shift(&g, &mut phi, &[0]).unwrap();
        assert_eq!(phi.get(0), before);
    }

    #[test]
    fn shift_then_reverse_restores() {
        let g = parse_graph("8 7\n1 0\n0 2\n0 3\n3 4\n4 5\n5 6\n5 7\n").unwrap();
        let phi0 = PartialColoring::with_assignments(
            &g,
            6,
            &[(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5)],
        )
        .unwrap();
        let mut phi = phi0.clone();
        let chain: Vec<usize> = (0..7).collect();
        shift(&g, &mut phi, &chain).unwrap();
        shift_back(&g, &mut phi, &chain).unwrap();
        for e in 0..7 {
            assert_eq!(phi.get(e), phi0.get(e));
        }
    }

    #[test]
    fn shift_rejects_colored_start_and_invalid_chains() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        let mut phi = PartialColoring::with_assignments(&g, 3, &[(0, 0)]).unwrap();
        assert!(!is_shiftable(&g, &phi, &[0, 1]));
        assert!(shift(&g, &mut phi, &[0, 1]).is_err());
        assert_eq!(phi.get(0), Some(0)); // untouched on failure
        // Non-adjacent consecutive edges are not a chain.
        let g2 = parse_graph("4 2\n0 1\n2 3\n").unwrap();
        let phi2 = PartialColoring::blank(&g2, 2);
        assert!(!is_shiftable(&g2, &phi2, &[0, 1]));
        // Parallel copies share two vertices: not a chain either.
        let g3 = parse_graph("2 2\n0 1\n0 1\n").unwrap();
        let phi3 = PartialColoring::with_assignments(&g3, 3, &[(1, 0)]).unwrap();
        assert!(!is_shiftable(&g3, &phi3, &[0, 1]));
    }

    /// A path chain whose start vertex coincides with a later path vertex;
    /// the interleaved vacate/assign order would fail here.
    #[test]
    fn shift_handles_start_vertex_revisit() {
        // x0 = vertex 0; chain e0=(0,1) blank, e1=(1,2) a, e2=(2,3) b, e3=(3,0) a
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        let mut phi =
            PartialColoring::with_assignments(&g, 3, &[(1, 0), (2, 1), (3, 0)]).unwrap();
        let chain = [0, 1, 2, 3];
        assert!(is_shiftable(&g, &phi, &chain));
        shift(&g, &mut phi, &chain).unwrap();
        assert_eq!(phi.get(0), Some(0));
        assert_eq!(phi.get(1), Some(1));
        assert_eq!(phi.get(2), Some(0));
        assert_eq!(phi.get(3), None);
        assert!(phi.is_proper(&g));
    }

    #[test]
    fn augment_one_edge_chain() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let mut phi = PartialColoring::blank(&g, 3);
        let c = augment(&g, &mut phi, &[0]).unwrap();
        assert_eq!(c, 0);
        assert_eq!(phi.domain_size(), 1);
    }

    #[test]
    fn augment_fails_and_restores_on_unhappy_chain() {
        // Path a-x-y-b with both side edges colored; e=(x,y) has no common
        // missing color at r=2.
        let g = parse_graph("4 3\n1 2\n0 1\n2 3\n").unwrap();
        let mut phi = PartialColoring::with_assignments(&g, 2, &[(1, 0), (2, 1)]).unwrap();
        let snapshot = phi.clone();
        assert!(matches!(augment(&g, &mut phi, &[0]), Err(Error::NotHappy)));
        for e in 0..3 {
            assert_eq!(phi.get(e), snapshot.get(e));
        }
    }

    #[test]
    fn augment_within_respects_pair() {
        // e=(x,y) blank; x also misses 0 but the pair is (1,2); path x-y
        // plus an alternating tail from y.
        let g = parse_graph("4 3\n0 1\n1 2\n2 3\n").unwrap();
        let mut phi = PartialColoring::with_assignments(&g, 4, &[(1, 1), (2, 2)]).unwrap();
        let c = augment_within(&g, &mut phi, &[0, 1, 2], (1, 2)).unwrap();
        assert!(c == 1 || c == 2);
        assert!(phi.is_proper(&g));
        assert!(phi.is_complete());
    }

    #[test]
    fn bicolored_path_stops_at_maximality() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        // No alpha edge at the far endpoint: path is just (e).
        let phi = PartialColoring::with_assignments(&g, 3, &[(1, 1)]).unwrap();
        let (p, truncated) = bicolored_path(&g, &phi, 0, 0, 0, 2, 10);
        assert_eq!(p.edges, vec![0]);
        assert!(!truncated);
    }

    /// The two directed traversals out of an uncolored edge extend to
    /// opposite sides of the two-color component.
    #[test]
    fn bicolored_path_directions() {
        // b2-a2-x-e-y-a1-b1: e=(x,y) uncolored, alternating on both sides.
        // vertices: b2=0 a2=1 x=2 y=3 a1=4 b1=5
        let g = parse_graph("6 5\n2 3\n3 4\n4 5\n2 1\n1 0\n").unwrap();
        let phi = PartialColoring::with_assignments(
            &g,
            3,
            &[(1, 0), (2, 1), (3, 1), (4, 0)],
        )
        .unwrap();
        // alpha=0, beta=1; alpha-first leaves from y (vertex 3).
        let (p_ab, _) = bicolored_path(&g, &phi, 0, 2, 0, 1, 100);
        assert_eq!(p_ab.edges, vec![0, 1, 2]);
        assert_eq!(p_ab.v_end(), 5);
        // beta-first leaves from x (vertex 2).
        let (p_ba, _) = bicolored_path(&g, &phi, 0, 3, 1, 0, 100);
        assert_eq!(p_ba.edges, vec![0, 3, 4]);
        assert_eq!(p_ba.v_end(), 0);
    }

    #[test]
    fn bicolored_path_cap_truncates_exactly() {
        // A long alternating path: e then 8 colored edges.
        let mut edges = vec![(0usize, 1usize)];
        for i in 1..9 {
            edges.push((i, i + 1));
        }
        let g = Multigraph::new(10, edges).unwrap();
        let pairs: Vec<(usize, Color)> =
            (1..9).map(|e| (e, if e % 2 == 1 { 0 } else { 1 })).collect();
        let phi = PartialColoring::with_assignments(&g, 3, &pairs).unwrap();
        let (p, truncated) = bicolored_path(&g, &phi, 0, 0, 0, 1, 6);
        assert_eq!(p.len(), 6);
        assert!(truncated);
        let (full, truncated) = bicolored_path(&g, &phi, 0, 0, 0, 1, 100);
        assert_eq!(full.len(), 9);
        assert!(!truncated);
        assert_eq!(full.prefix(6), p);
    }

    #[test]
    fn hopeful_and_successful_predicates() {
        // Everything is successful on the blank coloring.
        let g = parse_graph("4 3\n0 1\n1 2\n2 3\n").unwrap();
        let phi = PartialColoring::blank(&g, 3);
        for e in 0..3 {
            assert!(edge_successful(&g, &phi, e, 0, 1));
        }
    }

    /// Odd-cycle configuration: the alternating path from one endpoint wraps
    /// around to the other, so the edge is hopeful but not successful.
    /// Breaking the cycle restores success.
    #[test]
    fn successful_detects_related_endpoints() {
        // 7-cycle: x=0, y=1, then 2..6; e=(0,1) uncolored, rest alternate.
        let g = parse_graph("7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n").unwrap();
        let phi = PartialColoring::with_assignments(
            &g,
            3,
            &[(1, 0), (2, 1), (3, 0), (4, 1), (5, 0), (6, 1)],
        )
        .unwrap();
        assert!(edge_hopeful(&g, &phi, 0, 0, 1));
        assert!(!edge_successful(&g, &phi, 0, 0, 1));

        // Same shape, but the last edge leads to a fresh vertex 7.
        let g2 = parse_graph("8 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n").unwrap();
        let phi2 = PartialColoring::with_assignments(
            &g2,
            3,
            &[(1, 0), (2, 1), (3, 0), (4, 1), (5, 0), (6, 1)],
        )
        .unwrap();
        assert!(edge_successful(&g2, &phi2, 0, 0, 1));
    }

    #[test]
    fn related_walk_handles_two_cycles() {
        // Two parallel edges colored a and b form a 2-cycle component.
        let g = parse_graph("3 3\n0 1\n0 1\n1 2\n").unwrap();
        let phi = PartialColoring::with_assignments(&g, 3, &[(0, 0), (1, 1)]).unwrap();
        assert!(related(&g, &phi, 0, 1, 0, 1));
        assert!(!related(&g, &phi, 0, 2, 0, 1));
    }
}
