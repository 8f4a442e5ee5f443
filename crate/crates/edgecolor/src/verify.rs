//! Independent verification: properness reports, exact chromatic index for
//! tiny multigraphs by backtracking, multi-step chain validation, and the
//! tiny-graph enumerator. Everything here recomputes from scratch and never
//! trusts a solver's internal indexes.

use crate::builders::ChainStep;
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::multistep::MultiStepChain;

/// Edge count limit for exhaustive backtracking.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 12;

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub proper: bool,
    pub colors_used: usize,
    /// Largest color index in use, if any edge is colored.
    pub max_color: Option<Color>,
    pub bound: usize,
    pub uncolored: usize,
    /// Conflicting pairs: `(edge, edge, color)`.
    pub violations: Vec<(usize, usize, Color)>,
}

impl VerificationReport {
    /// Complete, proper, and within the bound (every color index below it).
    pub fn accepted(&self) -> bool {
        self.proper
            && self.uncolored == 0
            && self.colors_used <= self.bound
            && self.max_color.map(|c| c < self.bound).unwrap_or(true)
    }
}

/// Full rescan of a raw assignment vector against a target bound. Works on
/// arbitrary (possibly improper) assignments, which the guarded coloring
/// type refuses to represent.
pub fn verify_assignment(
    g: &Multigraph,
    assignment: &[Option<Color>],
    bound: usize,
) -> VerificationReport {
    assert_eq!(assignment.len(), g.m());
    let mut violations = Vec::new();
    let mut uncolored = 0usize;
    let mut used = std::collections::BTreeSet::new();
    for &c in assignment {
        match c {
            Some(c) => {
                used.insert(c);
            }
            None => uncolored += 1,
        }
    }
    for v in 0..g.n() {
        let mut by_color: std::collections::HashMap<Color, usize> =
            std::collections::HashMap::new();
        for &e in g.incident(v) {
            if let Some(c) = assignment[e] {
                if let Some(&f) = by_color.get(&c) {
                    violations.push((f.min(e), f.max(e), c));
                } else {
                    by_color.insert(c, e);
                }
            }
        }
    }
    violations.sort_unstable();
    violations.dedup();
    VerificationReport {
        proper: violations.is_empty(),
        colors_used: used.len(),
        max_color: used.iter().next_back().copied(),
        bound,
        uncolored,
        violations,
    }
}

/// Full rescan of a coloring against a target bound, independent of the
/// occupancy index.
pub fn verify(g: &Multigraph, phi: &PartialColoring, bound: usize) -> VerificationReport {
    let assignment: Vec<Option<Color>> = (0..g.m()).map(|e| phi.get(e)).collect();
    verify_assignment(g, &assignment, bound)
}

/// Exhaustive backtracking: finds a proper coloring with at most `r` colors,
/// or proves none exists. Edges are tried in descending endpoint-degree-sum
/// order, and the first edge is pinned to color 0 with each later edge
/// capped at one more than the colors used so far (color symmetry breaking).
pub fn backtrack_coloring(g: &Multigraph, r: usize) -> Option<PartialColoring> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.endpoints(e);
        std::cmp::Reverse(g.degree(u) + g.degree(v))
    });
    let mut phi = PartialColoring::blank(g, r.max(1));
    if g.m() == 0 {
        return Some(phi);
    }
    if r == 0 {
        return None;
    }
    fn go(
        g: &Multigraph,
        order: &[usize],
        idx: usize,
        max_used: usize,
        phi: &mut PartialColoring,
        r: usize,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let e = order[idx];
        let cap = (max_used + 1).min(r - 1);
        for c in 0..=cap {
            if phi.assign(g, e, c).is_ok() {
                if go(g, order, idx + 1, max_used.max(c), phi, r) {
                    return true;
                }
                phi.unassign(g, e).unwrap();
            }
        }
        false
    }
    if go(g, &order, 0, 0, &mut phi, r) {
        Some(phi)
    } else {
        None
    }
}

/// Exact chromatic index of a tiny multigraph.
pub fn brute_force_chromatic_index(g: &Multigraph) -> Result<usize> {
    if g.m() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: g.m(),
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    if g.m() == 0 {
        return Ok(0);
    }
    let mut r = g.max_degree(); // chromatic index is at least the degree
    loop {
        if backtrack_coloring(g, r).is_some() {
            return Ok(r);
        }
        r += 1;
    }
}

/// Enumerates every loopless multigraph with `n` vertices (for each
/// `2 ≤ n ≤ max_n`) and at most `max_m` edges, as raw edge multisets over
/// the vertex pairs (no isomorphism reduction).
pub fn enumerate_tiny_multigraphs(
    max_n: usize,
    max_m: usize,
    mut f: impl FnMut(&Multigraph),
) {
    for n in 2..=max_n {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        let mut counts = vec![0usize; pairs.len()];
        enumerate_counts(&pairs, &mut counts, 0, max_m, n, &mut f);
    }
}

fn enumerate_counts(
    pairs: &[(usize, usize)],
    counts: &mut [usize],
    idx: usize,
    remaining: usize,
    n: usize,
    f: &mut impl FnMut(&Multigraph),
) {
    if idx == pairs.len() {
        let mut edges = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                edges.push(pairs[i]);
            }
        }
        let g = Multigraph::new(n, edges).expect("enumerated graphs are valid");
        f(&g);
        return;
    }
    for c in 0..=remaining {
        counts[idx] = c;
        enumerate_counts(pairs, counts, idx + 1, remaining - c, n, f);
    }
    counts[idx] = 0;
}

/// Validates a multi-step chain against the coloring it was built for:
/// steps glue end-to-end, fans pivot correctly, paths alternate in the
/// progressively shifted coloring with the step's pair, earlier steps'
/// internal path edges and fan vertices are avoided (non-intersection), and
/// the full chain is happy. Returns the first violation as an error string.
pub fn validate_multistep_chain(
    g: &Multigraph,
    phi: &PartialColoring,
    chain: &MultiStepChain,
) -> std::result::Result<(), String> {
    if chain.steps.is_empty() {
        return Err("empty chain".into());
    }
    let mut work = phi.clone();
    let mut prev_end: Option<(usize, usize)> = None;
    let mut flagged_vertices: Vec<std::collections::HashSet<usize>> = Vec::new();
    let mut flagged_edges: Vec<std::collections::HashSet<usize>> = Vec::new();
    for (i, step) in chain.steps.iter().enumerate() {
        // Step gluing.
        if let Some((edge, vertex)) = prev_end {
            if step.fan.start() != edge {
                return Err(format!("step {i} does not start at the previous end edge"));
            }
            if step.fan.v_start(g) != vertex {
                return Err(format!("step {i} does not start at the previous end vertex"));
            }
        }
        // Fan structure.
        for &h in &step.fan.edges {
            if !g.is_endpoint(h, step.fan.pivot) {
                return Err(format!("step {i}: fan edge {h} misses the pivot"));
            }
        }
        // Path structure: starts at the fan end with the pivot as its start
        // vertex, interior vertices distinct.
        if step.path.start() != step.fan.end() || step.path.v_start() != step.fan.pivot {
            return Err(format!("step {i}: path does not continue the fan"));
        }
        let interior = &step.path.verts[1..];
        let mut seen = std::collections::HashSet::new();
        for &v in interior {
            if !seen.insert(v) {
                return Err(format!("step {i}: repeated path vertex {v}"));
            }
        }
        // Non-intersection against every earlier step.
        for (j, (fv, fe)) in flagged_vertices.iter().zip(&flagged_edges).enumerate() {
            for &h in &step.chain_edges() {
                if fe.contains(&h) {
                    return Err(format!(
                        "step {i} reuses an internal path edge {h} of step {j}"
                    ));
                }
            }
            for &h in &step.chain_edges() {
                let (u, v) = g.endpoints(h);
                if fv.contains(&u) || fv.contains(&v) {
                    return Err(format!(
                        "step {i} touches a fan vertex of step {j} via edge {h}"
                    ));
                }
            }
        }
        // The whole step must be shiftable in the current working coloring,
        // and its path must alternate the step pair there.
        let edges = step.chain_edges();
        if !crate::chain::is_shiftable(g, &work, &edges) {
            return Err(format!("step {i} is not shiftable in its coloring"));
        }
        let mut prev_color: Option<Color> = None;
        for &h in step.path.edges.iter().skip(1) {
            let Some(c) = work.get(h) else {
                return Err(format!("step {i}: path edge {h} is blank"));
            };
            if c != step.alpha && c != step.beta {
                return Err(format!("step {i}: path edge {h} carries foreign color {c}"));
            }
            if prev_color == Some(c) {
                return Err(format!("step {i}: path colors fail to alternate at {h}"));
            }
            prev_color = Some(c);
        }
        flagged_vertices.push(step.fan.vertices(g).into_iter().collect());
        flagged_edges.push(step.path.internal_edges().iter().copied().collect());
        crate::chain::shift(g, &mut work, &edges)
            .map_err(|e| format!("step {i} shift failed: {e}"))?;
        prev_end = Some((step.path.end(), step.path.v_end()));
    }
    // After shifting everything, the end edge must be happy.
    let end = chain.steps.last().unwrap().path.end();
    match work.happy_color(g, end) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err("end edge has no valid color after shifting".into()),
        Err(e) => Err(format!("end edge not blank after shifting: {e}")),
    }
}

/// Classification of a first-fan output per its output contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanCase {
    /// The pair is missing at the pivot and the fan is happy.
    Happy,
    /// Length-2 fan, successful for the returned pair.
    FanSuccessful,
    /// The start edge itself is successful for the returned pair.
    EdgeSuccessful,
    /// Early-exit of the follow-up constructor: pair kept, fan hopeful.
    HopefulKeptPair,
}

/// Classifies a first-fan output, checking exactly one case applies (in
/// priority order) and the common structural facts.
pub fn classify_first_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    out: &crate::fans::FanResult,
) -> std::result::Result<FanCase, String> {
    check_fan_shape(g, phi, e, x, out.fan.clone(), &[out.alpha, out.beta])?;
    if phi.is_missing(x, out.beta) {
        if !fan_is_happy(g, phi, &out.fan) {
            return Err("pivot misses beta but the fan is not happy".into());
        }
        return Ok(FanCase::Happy);
    }
    if out.fan.len() == 2 && fan_successful(g, phi, &out.fan, out.alpha, out.beta) {
        return Ok(FanCase::FanSuccessful);
    }
    if crate::chain::edge_successful(g, phi, e, out.alpha, out.beta) {
        return Ok(FanCase::EdgeSuccessful);
    }
    Err("output fits no case of the first-fan contract".into())
}

/// Classifies a follow-up fan output against the previous pair.
pub fn classify_next_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    prev: (Color, Color),
    out: &crate::fans::FanResult,
) -> std::result::Result<FanCase, String> {
    let (alpha, beta) = prev;
    check_fan_shape(g, phi, e, x, out.fan.clone(), &[alpha, beta, out.alpha, out.beta])?;
    if phi.is_missing(x, out.beta) {
        if !fan_is_happy(g, phi, &out.fan) {
            return Err("pivot misses the color but the fan is not happy".into());
        }
        return Ok(FanCase::Happy);
    }
    if (out.alpha, out.beta) == (alpha, beta) {
        if out.fan.len() != 2 {
            return Err("kept-pair exit must have a length-2 fan".into());
        }
        if !fan_hopeful(g, phi, &out.fan, alpha, beta) {
            return Err("kept-pair fan is not hopeful".into());
        }
        return Ok(FanCase::HopefulKeptPair);
    }
    if [alpha, beta].contains(&out.alpha) || [alpha, beta].contains(&out.beta) {
        return Err("new pair is neither kept nor disjoint from the old".into());
    }
    if out.fan.len() == 2 && fan_successful(g, phi, &out.fan, out.alpha, out.beta) {
        return Ok(FanCase::FanSuccessful);
    }
    if crate::chain::edge_successful(g, phi, e, out.alpha, out.beta) {
        return Ok(FanCase::EdgeSuccessful);
    }
    Err("output fits no case of the next-fan contract".into())
}

fn check_fan_shape(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    fan: crate::chain::Fan,
    forbidden: &[Color],
) -> std::result::Result<(), String> {
    if fan.start() != e || fan.pivot != x {
        return Err("fan does not start at the input".into());
    }
    if fan.len() > 2 {
        return Err("fan longer than 2".into());
    }
    for &h in &fan.edges {
        if let Some(c) = phi.get(h) {
            if forbidden.contains(&c) {
                return Err(format!("fan edge {h} carries pair color {c}"));
            }
        }
    }
    if !crate::chain::is_shiftable(g, phi, &fan.edges) {
        return Err("fan is not shiftable".into());
    }
    Ok(())
}

fn fan_is_happy(g: &Multigraph, phi: &PartialColoring, fan: &crate::chain::Fan) -> bool {
    let mut work = phi.clone();
    if crate::chain::shift(g, &mut work, &fan.edges).is_err() {
        return false;
    }
    matches!(work.happy_color(g, fan.end()), Ok(Some(_)))
}

fn fan_hopeful(
    g: &Multigraph,
    phi: &PartialColoring,
    fan: &crate::chain::Fan,
    a: Color,
    b: Color,
) -> bool {
    crate::chain::ab_degree(phi, fan.pivot, a, b) < 2
        && crate::chain::ab_degree(phi, fan.v_end(g), a, b) < 2
}

fn fan_successful(
    g: &Multigraph,
    phi: &PartialColoring,
    fan: &crate::chain::Fan,
    a: Color,
    b: Color,
) -> bool {
    if !fan_hopeful(g, phi, fan, a, b) {
        return false;
    }
    let mut work = phi.clone();
    if crate::chain::shift(g, &mut work, &fan.edges).is_err() {
        return false;
    }
    !crate::chain::related(g, &work, fan.pivot, fan.v_end(g), a, b)
}

/// Checks the dispatch guarantee of the arbitrary-length fan constructor:
/// on a non-happy output, the fan or its truncation is successful for
/// `alpha = min M(x)` paired with the returned color.
pub fn check_vizing_dispatch(
    g: &Multigraph,
    phi: &PartialColoring,
    x: usize,
    out: &crate::vizing::VizingFanResult,
) -> std::result::Result<(), String> {
    if phi.is_missing(x, out.color) {
        if !fan_is_happy(g, phi, &out.fan) {
            return Err("pivot misses the color but the fan is not happy".into());
        }
        return Ok(());
    }
    let alpha = phi
        .first_missing(x)
        .ok_or_else(|| "no missing color at pivot".to_string())?;
    let full = vizing_fan_successful(g, phi, &out.fan, alpha, out.color);
    let trunc = vizing_fan_successful(g, phi, &out.fan.prefix(out.j), alpha, out.color);
    if full || trunc {
        Ok(())
    } else {
        Err("neither the fan nor its truncation is successful".into())
    }
}

fn vizing_fan_successful(
    g: &Multigraph,
    phi: &PartialColoring,
    fan: &crate::chain::Fan,
    a: Color,
    b: Color,
) -> bool {
    fan_successful(g, phi, fan, a, b)
}

/// Structural check used in tests: a returned chain step is a fan plus a
/// path glued at the fan end.
pub fn check_step_shape(g: &Multigraph, step: &ChainStep) -> std::result::Result<(), String> {
    if step.path.start() != step.fan.end() {
        return Err("path does not start at the fan end".into());
    }
    if step.path.v_start() != step.fan.pivot {
        return Err("path start vertex is not the pivot".into());
    }
    crate::chain::chain_valid(g, &step.chain_edges()).map_err(|e| e.to_string())
}
