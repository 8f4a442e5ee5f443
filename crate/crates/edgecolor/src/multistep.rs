//! Multi-step chain search and the randomized sequential solver.
//!
//! The search grows a stack of fan-plus-path steps. Each iteration truncates
//! the candidate path at a uniformly random length in `[ℓ, 2ℓ-1]`, shifts
//! the coloring along it, and builds the next candidate from the vacated
//! edge. If the new candidate touches a previous step's fan vertices or
//! internal path edges, the stack unwinds to the first touched step
//! (a backward iteration) and that step's full-length path is restored as
//! the candidate; otherwise the step is kept (a forward iteration). The
//! search succeeds as soon as a candidate's path stops short of `2ℓ` edges,
//! at which point the whole stack plus candidate is one happy chain.
//!
//! Every iteration appends `+1` or `-r` to an execution record; the sum of
//! the record always equals the stack height. A budget-limited search that
//! runs out restores the coloring exactly and hands back the record.

use crate::builders::{first_chain, next_chain, ChainStep};
use crate::chain::{shift, shift_back};
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rng::Rng;
use crate::stats::{ChainSearchRecord, SolveRun, STATS_VERSION};

#[derive(Clone, Debug)]
pub struct MultiStepParams {
    /// Path cap parameter; paths are walked to at most `2·ell` edges.
    /// Must be at least 3 so every kept path carries both its colors.
    pub ell: usize,
    /// Completed-iteration budget; `None` runs to success.
    pub budget: Option<usize>,
}

impl MultiStepParams {
    /// Practical default: `ell = max(16, 4Δ²)`. Correctness only needs
    /// `ell ≥ 3`; larger values just make backward iterations rarer.
    pub fn for_graph(g: &Multigraph) -> Self {
        let d = g.max_degree();
        MultiStepParams {
            ell: (4 * d * d).max(16),
            budget: None,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }
}

/// A happy multi-step chain: stacked steps plus the final candidate step
/// (always the last element).
#[derive(Clone, Debug)]
pub struct MultiStepChain {
    pub steps: Vec<ChainStep>,
}

impl MultiStepChain {
    /// Flattens to one edge chain. Consecutive steps share their boundary
    /// edge, so each segment after the first drops its first edge.
    pub fn edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            let seg = step.chain_edges();
            if i == 0 {
                out.extend_from_slice(&seg);
            } else {
                debug_assert_eq!(*out.last().unwrap(), seg[0]);
                out.extend_from_slice(&seg[1..]);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.edges().len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end_edge(&self) -> usize {
        self.steps.last().unwrap().path.end()
    }

    pub fn end_vertex(&self) -> usize {
        self.steps.last().unwrap().path.v_end()
    }
}

/// What a backward iteration tripped over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Vertex(usize),
    Edge(usize),
}

#[derive(Clone, Debug)]
pub struct BackwardEvent {
    /// Step index the intersection belongs to (the unwind target).
    pub target_step: usize,
    /// Stack height before the unwind.
    pub from_steps: usize,
    pub locus: Locus,
}

#[derive(Clone, Debug)]
pub struct ExecutionRecord {
    /// `+1` per forward iteration, `-r` per r-backward iteration.
    pub deltas: Vec<i64>,
    pub terminus_edge: usize,
    pub terminus_vertex: usize,
    pub success: bool,
    pub backward_events: Vec<BackwardEvent>,
}

impl ExecutionRecord {
    pub fn iterations(&self) -> usize {
        self.deltas.len()
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Success(MultiStepChain),
    Exhausted,
}

/// Reusable visited tables; one per solver thread.
pub struct Workspace {
    vertex_step: crate::epoch::EpochMap,
    edge_step: crate::epoch::EpochMap,
}

impl Workspace {
    pub fn for_graph(g: &Multigraph) -> Self {
        Workspace {
            vertex_step: crate::epoch::EpochMap::new(g.n()),
            edge_step: crate::epoch::EpochMap::new(g.m()),
        }
    }
}

struct StackEntry {
    step: ChainStep,
    /// The full 2ℓ-edge path the step's truncated path was cut from;
    /// restored as the candidate path when the stack unwinds to this step.
    full_path: crate::chain::PathChain,
}

/// Scans the candidate chain in order (per edge: near endpoint, far
/// endpoint, then the edge itself) for the first element owned by a stacked
/// step. Fan vertices and internal path edges are the flagged elements.
fn first_intersection(
    g: &Multigraph,
    step: &ChainStep,
    ws: &Workspace,
) -> Option<(usize, Locus)> {
    let vertex_hit = |v: usize| ws.vertex_step.get(v).map(|o| (o, Locus::Vertex(v)));
    let edge_hit = |h: usize| ws.edge_step.get(h).map(|o| (o, Locus::Edge(h)));
    // Fan edges: start-vertex side first, then the pivot side.
    for (i, &h) in step.fan.edges.iter().enumerate() {
        let y = g.other_endpoint(h, step.fan.pivot);
        let order = if i == 0 {
            [y, step.fan.pivot]
        } else {
            [step.fan.pivot, y]
        };
        for v in order {
            if let Some(hit) = vertex_hit(v) {
                return Some(hit);
            }
        }
        if let Some(hit) = edge_hit(h) {
            return Some(hit);
        }
    }
    // Path edges after the shared first one, walking forward.
    for (i, &h) in step.path.edges.iter().enumerate().skip(1) {
        for v in [step.path.verts[i], step.path.verts[i + 1]] {
            if let Some(hit) = vertex_hit(v) {
                return Some(hit);
            }
        }
        if let Some(hit) = edge_hit(h) {
            return Some(hit);
        }
    }
    None
}

/// Derives the oriented path pair for a truncated path:
/// `beta` is the color of the last edge, `alpha` the other one. Requires at
/// least two colored path edges, which `ell >= 3` guarantees.
fn truncated_pair(phi: &PartialColoring, path: &crate::chain::PathChain) -> Result<(Color, Color)> {
    let last = phi
        .get(path.end())
        .ok_or_else(|| Error::internal("truncated path ends on a blank edge"))?;
    let c1 = phi
        .get(path.edges[1])
        .ok_or_else(|| Error::internal("interior path edge is blank"))?;
    let c2 = phi
        .get(path.edges[2])
        .ok_or_else(|| Error::internal("interior path edge is blank"))?;
    let other = if c1 == last { c2 } else { c1 };
    Ok((other, last))
}

/// Searches for a happy multi-step chain starting at uncolored `e` with
/// pivot `x`. On success the coloring is restored and the returned chain is
/// happy for it; on budget exhaustion the coloring is restored and only the
/// record comes back. The never-reached failure branch of the iteration
/// (a short candidate path looping back onto its own fan) is surfaced as an
/// internal-invariant error with full diagnostics.
pub fn multi_step_chain(
    g: &Multigraph,
    phi: &mut PartialColoring,
    e: usize,
    x: usize,
    params: &MultiStepParams,
    rng: &mut Rng,
    ws: &mut Workspace,
) -> Result<(SearchOutcome, ExecutionRecord)> {
    assert!(params.ell >= 3, "path cap parameter must be at least 3");
    let ell = params.ell;
    let cap = 2 * ell;
    ws.vertex_step.clear();
    ws.edge_step.clear();
    let mut stack: Vec<StackEntry> = Vec::new();
    let mut deltas: Vec<i64> = Vec::new();
    let mut backward_events: Vec<BackwardEvent> = Vec::new();
    let mut candidate = first_chain(g, phi, e, x, ell)?;

    let unwind_all = |g: &Multigraph, phi: &mut PartialColoring, stack: &[StackEntry]| -> Result<()> {
        if stack.is_empty() {
            return Ok(());
        }
        let mut edges: Vec<usize> = Vec::new();
        for (i, entry) in stack.iter().enumerate() {
            let seg = entry.step.chain_edges();
            if i == 0 {
                edges.extend_from_slice(&seg);
            } else {
                edges.extend_from_slice(&seg[1..]);
            }
        }
        shift_back(g, phi, &edges)
    };

    loop {
        if candidate.path.len() < cap {
            // Success: the stack plus candidate is one happy chain.
            let mut steps: Vec<ChainStep> =
                stack.iter().map(|s| s.step.clone()).collect();
            unwind_all(g, phi, &stack)?;
            steps.push(candidate);
            let chain = MultiStepChain { steps };
            let record = ExecutionRecord {
                deltas,
                terminus_edge: chain.end_edge(),
                terminus_vertex: chain.end_vertex(),
                success: true,
                backward_events,
            };
            if crate::debug_invariants_enabled() {
                phi.check_consistency(g)?;
            }
            return Ok((SearchOutcome::Success(chain), record));
        }
        if let Some(budget) = params.budget {
            if deltas.len() >= budget {
                let (terminus_edge, terminus_vertex) = match stack.last() {
                    Some(entry) => (entry.step.path.end(), entry.step.path.v_end()),
                    None => (e, g.other_endpoint(e, x)),
                };
                unwind_all(g, phi, &stack)?;
                let record = ExecutionRecord {
                    deltas,
                    terminus_edge,
                    terminus_vertex,
                    success: false,
                    backward_events,
                };
                if crate::debug_invariants_enabled() {
                    phi.check_consistency(g)?;
                }
                return Ok((SearchOutcome::Exhausted, record));
            }
        }

        // One iteration: truncate, shift, mark, extend.
        let keep = rng.range_inclusive(ell, 2 * ell - 1);
        let full_path = candidate.path.clone();
        let trunc = full_path.prefix(keep);
        let (alpha, beta) = truncated_pair(phi, &trunc)?;
        let step = ChainStep {
            fan: candidate.fan,
            path: trunc,
            alpha,
            beta,
        };
        let step_edges = step.chain_edges();
        shift(g, phi, &step_edges)?;
        let k_pre = stack.len();
        for v in step.fan.vertices(g) {
            ws.vertex_step.set(v, k_pre);
        }
        for &h in step.path.internal_edges() {
            ws.edge_step.set(h, k_pre);
        }
        stack.push(StackEntry { step, full_path });

        let top = stack.last().unwrap();
        let e_next = top.step.path.end();
        let w = top.step.path.v_end();
        let u = g.other_endpoint(e_next, w);
        let next = next_chain(g, phi, e_next, u, alpha, beta, ell)?;

        match first_intersection(g, &next, ws) {
            Some((target, locus)) => {
                // Backward iteration: unwind steps target..=k_pre.
                deltas.push(target as i64 - k_pre as i64);
                backward_events.push(BackwardEvent {
                    target_step: target,
                    from_steps: k_pre,
                    locus,
                });
                let mut tail_edges: Vec<usize> = Vec::new();
                for (i, entry) in stack.iter().enumerate().skip(target) {
                    let seg = entry.step.chain_edges();
                    if i == target {
                        tail_edges.extend_from_slice(&seg);
                    } else {
                        tail_edges.extend_from_slice(&seg[1..]);
                    }
                }
                shift_back(g, phi, &tail_edges)?;
                for entry in &stack[target..] {
                    for v in entry.step.fan.vertices(g) {
                        ws.vertex_step.remove(v);
                    }
                    for &h in entry.step.path.internal_edges() {
                        ws.edge_step.remove(h);
                    }
                }
                let restored = stack.drain(target..).next().unwrap();
                candidate = ChainStep {
                    fan: restored.step.fan,
                    path: restored.full_path,
                    alpha: restored.step.alpha,
                    beta: restored.step.beta,
                };
            }
            None if next.path.len() >= 2
                && next.path.len() < cap
                && next.path.v_end() == next.fan.pivot =>
            {
                // Unreachable by the structural guarantees of the step
                // constructors; reaching it means a bug, so dump state.
                return Err(Error::internal(format!(
                    "short candidate loops to its own pivot: edge {e}, pivot {x}, \
                     stack {}, candidate fan {:?}, path {:?}",
                    stack.len(),
                    next.fan.edges,
                    next.path.edges
                )));
            }
            None => {
                deltas.push(1);
                candidate = next;
            }
        }

        if crate::debug_invariants_enabled() {
            check_iteration_invariants(g, phi, &stack, &candidate, cap)?;
        }
    }
}

/// Full per-iteration invariant rescan, enabled by the debug-invariants
/// mode: coloring consistency, stack and candidate gluing, pairwise
/// non-intersection (earlier internal path edges and fan vertices untouched
/// by later steps), and the candidate's happy-or-hopeful guarantee are all
/// recomputed from scratch.
fn check_iteration_invariants(
    g: &Multigraph,
    phi: &PartialColoring,
    stack: &[StackEntry],
    candidate: &ChainStep,
    cap: usize,
) -> Result<()> {
    phi.check_consistency(g)?;
    for w in stack.windows(2) {
        let prev = &w[0].step;
        let next = &w[1].step;
        if next.fan.start() != prev.path.end() || next.fan.v_start(g) != prev.path.v_end() {
            return Err(Error::internal("stack steps do not glue"));
        }
    }
    if let Some(last) = stack.last() {
        if candidate.fan.start() != last.step.path.end()
            || candidate.fan.v_start(g) != last.step.path.v_end()
        {
            return Err(Error::internal("candidate does not glue to the stack"));
        }
    }
    if candidate.path.len() > cap {
        return Err(Error::internal("candidate path exceeds the cap"));
    }
    // Non-intersection over all step pairs, candidate included as last.
    let mut all: Vec<&ChainStep> = stack.iter().map(|s| &s.step).collect();
    all.push(candidate);
    for i in 0..all.len() {
        let guard_edges: std::collections::HashSet<usize> =
            all[i].path.internal_edges().iter().copied().collect();
        let guard_verts: std::collections::HashSet<usize> =
            all[i].fan.vertices(g).into_iter().collect();
        for later in &all[i + 1..] {
            for h in later.chain_edges() {
                if guard_edges.contains(&h) {
                    return Err(Error::internal("later step reuses an internal path edge"));
                }
                let (a, b) = g.endpoints(h);
                if guard_verts.contains(&a) || guard_verts.contains(&b) {
                    return Err(Error::internal("later step touches an earlier fan vertex"));
                }
            }
        }
    }
    // The candidate fan is happy or hopeful for its pair; disappointed
    // candidates must sit exactly at the cap.
    let mut probe = phi.clone();
    shift(g, &mut probe, &candidate.fan.edges)?;
    let end = candidate.fan.end();
    let (eu, ev) = g.endpoints(end);
    let happy = probe.min_common_missing(eu, ev).is_some();
    if !happy {
        let hopeful = crate::chain::ab_degree(phi, candidate.fan.pivot, candidate.alpha, candidate.beta) < 2
            && crate::chain::ab_degree(phi, candidate.fan.v_end(g), candidate.alpha, candidate.beta) < 2;
        if !hopeful {
            return Err(Error::internal("candidate fan is neither happy nor hopeful"));
        }
        let related = crate::chain::related(
            g,
            &probe,
            candidate.fan.pivot,
            candidate.fan.v_end(g),
            candidate.alpha,
            candidate.beta,
        );
        if related && candidate.path.len() != cap {
            return Err(Error::internal("disappointed candidate without a full path"));
        }
    }
    Ok(())
}

/// Randomized sequential coloring: repeatedly pick an uncolored edge and a
/// pivot uniformly at random, search a happy chain (unbounded budget), and
/// augment it.
pub fn color_sequential_random(
    g: &Multigraph,
    params: &MultiStepParams,
    seed: u64,
) -> Result<(PartialColoring, SequentialRun)> {
    let r = g.shannon_colors();
    let mut phi = PartialColoring::blank(g, r);
    if g.max_degree() < 2 {
        for e in 0..g.m() {
            phi.assign(g, e, 0)?;
        }
        return Ok((
            phi,
            SequentialRun {
                calls: Vec::new(),
                total_loop_entries: g.m() as u64,
                total_chain_edges: g.m() as u64,
            },
        ));
    }
    let params = MultiStepParams {
        ell: params.ell,
        budget: None,
    };
    let mut ws = Workspace::for_graph(g);
    let mut uncolored: Vec<usize> = (0..g.m()).collect();
    let mut calls = Vec::with_capacity(g.m());
    let mut total_loop_entries = 0u64;
    let mut total_chain_edges = 0u64;
    let mut pick_rng = Rng::keyed(seed, &[crate::rng::streams::SEQ_EDGE_PICK]);
    let mut attempt = 0u64;
    while !uncolored.is_empty() {
        attempt += 1;
        let idx = pick_rng.below(uncolored.len());
        let e = uncolored.swap_remove(idx);
        let (u, v) = g.endpoints(e);
        let x = if pick_rng.below(2) == 0 { u } else { v };
        let mut rng = Rng::keyed(seed, &[crate::rng::streams::MSSA, e as u64, attempt]);
        let (outcome, record) =
            multi_step_chain(g, &mut phi, e, x, &params, &mut rng, &mut ws)?;
        let chain = match outcome {
            SearchOutcome::Success(chain) => chain,
            SearchOutcome::Exhausted => {
                return Err(Error::internal("unbounded search reported exhaustion"))
            }
        };
        let edges = chain.edges();
        crate::chain::augment(g, &mut phi, &edges)?;
        total_loop_entries += record.iterations() as u64 + 1;
        total_chain_edges += edges.len() as u64;
        calls.push(ChainSearchRecord {
            v: STATS_VERSION,
            edge: e,
            pivot: x,
            d: record.deltas.clone(),
            iterations: record.iterations(),
            chain_length: edges.len(),
            outcome: "success",
        });
    }
    Ok((
        phi,
        SequentialRun {
            calls,
            total_loop_entries,
            total_chain_edges,
        },
    ))
}

pub struct SequentialRun {
    pub calls: Vec<ChainSearchRecord>,
    /// Loop entries summed over all searches (iterations plus the entry
    /// that returned success); the `T = Σ Tᵢ` of the linearity criterion.
    pub total_loop_entries: u64,
    pub total_chain_edges: u64,
}

impl SequentialRun {
    pub fn to_solve_run(&self) -> SolveRun {
        SolveRun {
            iterations: self.total_loop_entries,
            chain_edges: self.total_chain_edges,
        }
    }
}
