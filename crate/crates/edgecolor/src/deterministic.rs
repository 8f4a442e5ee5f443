//! Deterministic sequential coloring by batched disjoint-chain augmentation.
//!
//! Each round partitions the uncolored edges by the color pair their
//! first-fan construction selects, takes the largest bucket, builds every
//! chain in it against the round's starting coloring, and augments the
//! subfamily kept disjoint by the visited filter. Two chains sharing no fan
//! vertex and no path end vertex stay happy under each other's
//! augmentation, so the batch needs no recomputation; each batch colors at
//! least a `1/(20Δ²)` fraction of its bucket, which the solver asserts on
//! every invocation.

use crate::builders::{shannon_chain, ChainStep};
use crate::chain::augment_within;
use crate::coloring::PartialColoring;
use crate::epoch::EpochMap;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::stats::{BatchRecord, STATS_VERSION};
use std::collections::BTreeMap;

/// Partition of the uncolored edges by the (unordered) color pair produced
/// by the first-fan construction with the smaller endpoint as pivot. Happy
/// outcomes land in diagonal buckets.
pub fn gamma_partition(
    g: &Multigraph,
    phi: &PartialColoring,
    uncolored: &[usize],
) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let mut buckets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &e in uncolored {
        let out = crate::fans::first_shannon_fan(g, phi, e, g.min_endpoint(e))?;
        let key = (out.alpha.min(out.beta), out.alpha.max(out.beta));
        buckets.entry(key).or_default().push(e);
    }
    Ok(buckets)
}

/// The lower bound asserted on each batch: at least `|S| / (20Δ²)` chains
/// augmented (as reals, i.e. `augmented · 20Δ² ≥ |S|`).
fn progress_holds(augmented: usize, bucket: usize, delta: usize) -> bool {
    augmented * 20 * delta * delta >= bucket
}

pub struct BatchOutcome {
    pub chains_computed: usize,
    pub chains_augmented: usize,
}

/// Augments a disjoint subfamily of the chains rooted at `bucket` (one
/// Gamma bucket, processed in increasing edge id). All chains are computed
/// up front against the incoming coloring; the visited filter keeps the
/// augmented subfamily disjoint on fan vertices and path ends, which for
/// same-pair chains forces edge-disjointness and keeps every kept chain
/// happy under the others' augmentations.
pub fn augment_chain_set(
    g: &Multigraph,
    phi: &mut PartialColoring,
    bucket: &[usize],
) -> Result<BatchOutcome> {
    let mut visited = EpochMap::new(g.n());
    augment_chain_set_with(g, phi, bucket, &mut visited)
}

pub(crate) fn augment_chain_set_with(
    g: &Multigraph,
    phi: &mut PartialColoring,
    bucket: &[usize],
    visited: &mut EpochMap,
) -> Result<BatchOutcome> {
    let mut order: Vec<usize> = bucket.to_vec();
    order.sort_unstable();
    let mut chains: Vec<ChainStep> = Vec::with_capacity(order.len());
    for &e in &order {
        chains.push(shannon_chain(g, phi, e, g.min_endpoint(e))?);
    }
    visited.clear();
    let mut augmented = 0usize;
    for step in &chains {
        let mut guard: Vec<usize> = step.fan.vertices(g);
        guard.push(step.path.v_end());
        if guard.iter().any(|&v| visited.get(v).is_some()) {
            continue;
        }
        augment_within(
            g,
            phi,
            &step.chain_edges(),
            (step.alpha, step.beta),
        )?;
        for v in guard {
            visited.set(v, 1);
        }
        augmented += 1;
    }
    let delta = g.max_degree().max(1);
    if !progress_holds(augmented, order.len(), delta) {
        return Err(Error::internal(format!(
            "batch progress bound violated: {augmented} of {} with delta {delta}",
            order.len()
        )));
    }
    if crate::debug_invariants_enabled() {
        phi.check_consistency(g)?;
    }
    Ok(BatchOutcome {
        chains_computed: chains.len(),
        chains_augmented: augmented,
    })
}

pub struct DeterministicRun {
    pub iterations: usize,
    pub batches: Vec<BatchRecord>,
}

/// Full deterministic coloring within `⌊3Δ/2⌋` colors.
pub fn color_deterministic(g: &Multigraph) -> Result<(PartialColoring, DeterministicRun)> {
    let delta = g.max_degree();
    if delta < 2 {
        // A matching (or empty graph): a single color suffices.
        let r = g.shannon_colors();
        let mut phi = PartialColoring::blank(g, r);
        for e in 0..g.m() {
            phi.assign(g, e, 0)?;
        }
        return Ok((
            phi,
            DeterministicRun {
                iterations: if g.m() > 0 { 1 } else { 0 },
                batches: Vec::new(),
            },
        ));
    }
    let r = g.shannon_colors();
    let mut phi = PartialColoring::blank(g, r);
    let mut visited = EpochMap::new(g.n());
    let mut batches = Vec::new();
    let mut iterations = 0usize;
    while !phi.is_complete() {
        iterations += 1;
        let uncolored = phi.uncolored_edges();
        let buckets = gamma_partition(g, &phi, &uncolored)?;
        // Largest bucket, ties broken by the smallest pair (BTreeMap order).
        let (&pair, _) = buckets
            .iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
            .ok_or_else(|| Error::internal("no buckets over a nonempty uncolored set"))?;
        let chosen = buckets[&pair].clone();
        // the largest bucket covers at least its average share
        debug_assert!(chosen.len() * 9 * delta * delta >= 4 * uncolored.len());
        let outcome = augment_chain_set_with(g, &mut phi, &chosen, &mut visited)?;
        batches.push(BatchRecord {
            v: STATS_VERSION,
            batch: iterations,
            uncolored: uncolored.len(),
            bucket_sizes: buckets
                .iter()
                .map(|(&(a, b), v)| (a, b, v.len()))
                .collect(),
            pair,
            chains_computed: outcome.chains_computed,
            chains_augmented: outcome.chains_augmented,
            progress: outcome.chains_augmented,
            dom: phi.domain_size(),
        });
    }
    Ok((phi, DeterministicRun { iterations, batches }))
}
