//! Round-synchronous distributed coloring simulation.
//!
//! Each stage runs the multi-step chain search for every uncolored edge
//! against the same frozen base coloring with a fixed iteration budget,
//! keeps the edges whose search finished, builds the conflict graph whose
//! edges join chains sharing a vertex, draws a random independent set in
//! it, and augments exactly those chains (pairwise vertex-disjoint by
//! independence, so any augmentation order gives the same coloring).
//!
//! Parallelism is logical: per-edge searches restore the coloring exactly
//! on both exit paths, so running them in any order (or concurrently over
//! private overlays) observes identical state. Determinism comes from
//! per-edge streams keyed on `(seed, stage, edge)`. Round cost is charged
//! declaratively as `ROUND_COST_FACTOR · ℓ · t` per stage since all stage
//! computations are distance-bounded by `O(ℓ·t)`.

use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::multistep::{
    multi_step_chain, MultiStepChain, MultiStepParams, SearchOutcome, Workspace,
};
use crate::rng::{streams, Rng};
use crate::stats::{StageRecord, STATS_VERSION};
use std::collections::{HashMap, HashSet};

/// Simulated rounds charged per stage, as a multiple of `ℓ · t`: one `ℓ·t`
/// slice each for chain construction, conflict-graph/independent-set
/// exchange, and augmentation.
pub const ROUND_COST_FACTOR: u64 = 3;

#[derive(Clone, Debug)]
pub struct DistParams {
    pub ell: usize,
    /// Per-stage iteration budget `t`.
    pub budget: usize,
    pub seed: u64,
    /// Abort after this many consecutive stages that color nothing.
    pub starvation_limit: usize,
}

impl DistParams {
    pub fn for_graph(g: &Multigraph, seed: u64) -> Self {
        let d = g.max_degree();
        DistParams {
            ell: (4 * d * d).max(16),
            budget: default_budget(g.n()),
            seed,
            starvation_limit: 50,
        }
    }
}

/// Default per-stage budget: `⌈4·log₂ n⌉`, at least 1.
pub fn default_budget(n: usize) -> usize {
    let lg = (n.max(2) as f64).log2();
    (4.0 * lg).ceil() as usize
}

/// Simple graph on surviving edge ids; vertices are positions into `ids`.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    pub ids: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
    pub edge_count: usize,
}

impl ConflictGraph {
    pub fn from_edges(ids: Vec<usize>, pairs: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); ids.len()];
        for &(a, b) in pairs {
            adj[a].push(b);
            adj[b].push(a);
        }
        ConflictGraph {
            ids,
            adj,
            edge_count: pairs.len(),
        }
    }

    /// Conflict graph of the given chains: `ef` is an edge iff the chains
    /// of `e` and `f` share a vertex. Built via an inverted vertex index.
    pub fn from_chains(g: &Multigraph, chains: &[(usize, MultiStepChain)]) -> Self {
        let ids: Vec<usize> = chains.iter().map(|&(e, _)| e).collect();
        let mut owners: HashMap<usize, Vec<usize>> = HashMap::new();
        for (pos, (_, chain)) in chains.iter().enumerate() {
            for v in chain_vertices(g, chain) {
                owners.entry(v).or_default().push(pos);
            }
        }
        let mut pairs: HashSet<(usize, usize)> = HashSet::new();
        for list in owners.values() {
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let (a, b) = (list[i].min(list[j]), list[i].max(list[j]));
                    pairs.insert((a, b));
                }
            }
        }
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        Self::from_edges(ids, &pairs)
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.ids.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.ids.len() as f64
        }
    }
}

/// Vertex set of a multi-step chain (all endpoints of all its edges).
pub fn chain_vertices(g: &Multigraph, chain: &MultiStepChain) -> Vec<usize> {
    let mut vs: Vec<usize> = chain
        .edges()
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Pure core of the random independent set: position `v` is selected iff
/// its draw strictly exceeds every neighbor's draw.
pub fn independent_set_from_draws(gamma: &ConflictGraph, draws: &[f64]) -> Vec<usize> {
    assert_eq!(draws.len(), gamma.n());
    (0..gamma.n())
        .filter(|&v| gamma.adj[v].iter().all(|&u| draws[v] > draws[u]))
        .map(|v| gamma.ids[v])
        .collect()
}

/// Draws i.i.d. uniform values per vertex and keeps the strict local
/// maxima. The expected size is the sum over vertices of
/// `1 / (deg(v) + 1)`, which equals `|V| / (d̄ + 1)` on regular graphs.
pub fn random_independent_set(gamma: &ConflictGraph, rng: &mut Rng) -> Vec<usize> {
    let draws: Vec<f64> = (0..gamma.n()).map(|_| rng.f64()).collect();
    independent_set_from_draws(gamma, &draws)
}

pub struct StageOutput {
    /// Edges whose search finished within the budget.
    pub survivors: Vec<usize>,
    pub chains: Vec<(usize, MultiStepChain)>,
    pub gamma: ConflictGraph,
    /// The selected independent set (edge ids, ascending).
    pub selected: Vec<usize>,
    pub rounds_charged: u64,
}

/// One stage: budgeted searches for every uncolored edge against the frozen
/// base coloring (restored exactly after each search, so no run observes
/// another's shifts), then conflict graph and independent set. The caller
/// augments the selected chains.
pub fn stage(
    g: &Multigraph,
    phi: &mut PartialColoring,
    uncolored: &[usize],
    stage_idx: usize,
    params: &DistParams,
    ws: &mut Workspace,
) -> Result<StageOutput> {
    let search_params = MultiStepParams {
        ell: params.ell,
        budget: Some(params.budget),
    };
    let mut chains = Vec::new();
    for &e in uncolored {
        let mut rng = Rng::keyed(
            params.seed,
            &[streams::STAGE_MSSA, stage_idx as u64, e as u64],
        );
        let (u, v) = g.endpoints(e);
        let x = if rng.below(2) == 0 { u } else { v };
        let (outcome, _) = multi_step_chain(g, phi, e, x, &search_params, &mut rng, ws)?;
        if let SearchOutcome::Success(chain) = outcome {
            chains.push((e, chain));
        }
    }
    let survivors: Vec<usize> = chains.iter().map(|&(e, _)| e).collect();
    let gamma = ConflictGraph::from_chains(g, &chains);
    let draws: Vec<f64> = gamma
        .ids
        .iter()
        .map(|&e| {
            Rng::keyed(params.seed, &[streams::STAGE_DRAW, stage_idx as u64, e as u64]).f64()
        })
        .collect();
    let mut selected = independent_set_from_draws(&gamma, &draws);
    selected.sort_unstable();
    let rounds_charged = ROUND_COST_FACTOR * params.ell as u64 * params.budget as u64;
    Ok(StageOutput {
        survivors,
        chains,
        gamma,
        selected,
        rounds_charged,
    })
}

pub struct DistributedRun {
    pub stages: Vec<StageRecord>,
    pub stage_count: usize,
    pub rounds_total: u64,
}

/// Stage loop: repeat until every edge is colored. Within a stage the
/// selected chains are pairwise vertex-disjoint, so they are augmented in
/// ascending edge order (any order gives the same coloring).
pub fn color_distributed(
    g: &Multigraph,
    params: &DistParams,
) -> Result<(PartialColoring, DistributedRun)> {
    // Matchings run the ordinary stage machinery: every edge is happy, so
    // all of them survive the first stage and the conflict graph is empty.
    let r = g.shannon_colors();
    let mut phi = PartialColoring::blank(g, r);
    let mut ws = Workspace::for_graph(g);
    let mut stages = Vec::new();
    let mut rounds_total = 0u64;
    let mut starving = 0usize;
    let mut stage_idx = 0usize;
    while !phi.is_complete() {
        let uncolored = phi.uncolored_edges();
        let out = stage(g, &mut phi, &uncolored, stage_idx, params, &mut ws)?;
        let mut colored = 0usize;
        let lookup: HashMap<usize, &MultiStepChain> =
            out.chains.iter().map(|(e, c)| (*e, c)).collect();
        for &e in &out.selected {
            let chain = lookup[&e];
            crate::chain::augment(g, &mut phi, &chain.edges())?;
            colored += 1;
        }
        rounds_total += out.rounds_charged;
        stages.push(StageRecord {
            v: STATS_VERSION,
            stage: stage_idx,
            uncolored: uncolored.len(),
            survivors: out.survivors.len(),
            conflict_edges: out.gamma.edge_count,
            mean_deg: out.gamma.mean_degree(),
            independent: out.selected.len(),
            colored,
            rounds_charged: out.rounds_charged,
        });
        stage_idx += 1;
        if colored == 0 {
            starving += 1;
            if starving >= params.starvation_limit {
                return Err(Error::Starvation(starving));
            }
        } else {
            starving = 0;
        }
        if crate::debug_invariants_enabled() {
            phi.check_consistency(g)?;
        }
    }
    Ok((
        phi,
        DistributedRun {
            stage_count: stage_idx,
            stages,
            rounds_total,
        },
    ))
}
