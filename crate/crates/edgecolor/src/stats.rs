//! Stats records emitted by the solvers, serialized by the CLI as JSON
//! lines. Every record carries a schema version field `v`. None of these
//! include wall-clock times: color runs must be byte-identical for a fixed
//! seed, and timing belongs to the bench harness.

use serde::Serialize;

pub const STATS_VERSION: u32 = 1;

/// One batch of the deterministic solver.
#[derive(Clone, Debug, Serialize)]
pub struct BatchRecord {
    pub v: u32,
    pub batch: usize,
    pub uncolored: usize,
    /// Bucket sizes as `[alpha, beta, size]` triples, pair-sorted.
    pub bucket_sizes: Vec<(usize, usize, usize)>,
    pub pair: (usize, usize),
    pub chains_computed: usize,
    pub chains_augmented: usize,
    pub progress: usize,
    pub dom: usize,
}

/// One multi-step chain search, in the record-dump schema.
#[derive(Clone, Debug, Serialize)]
pub struct ChainSearchRecord {
    pub v: u32,
    pub edge: usize,
    pub pivot: usize,
    pub d: Vec<i64>,
    pub iterations: usize,
    pub chain_length: usize,
    pub outcome: &'static str,
}

/// One stage of the distributed simulation.
#[derive(Clone, Debug, Serialize)]
pub struct StageRecord {
    pub v: u32,
    pub stage: usize,
    pub uncolored: usize,
    pub survivors: usize,
    pub conflict_edges: usize,
    pub mean_deg: f64,
    pub independent: usize,
    pub colored: usize,
    pub rounds_charged: u64,
}

/// Aggregate counters for the plain sequential solvers.
#[derive(Clone, Debug, Serialize)]
pub struct SolveRun {
    pub iterations: u64,
    pub chain_edges: u64,
}
