//! Edge coloring for loopless multigraphs within the classical palette
//! bounds `⌊3Δ/2⌋` (degree) and `Δ + μ` (degree plus multiplicity).
//!
//! Four solvers share the chain machinery:
//! - [`deterministic::color_deterministic`]: batched disjoint-chain
//!   augmentation, fully deterministic.
//! - [`multistep::color_sequential_random`]: randomized sequential coloring
//!   via multi-step chain search.
//! - [`localsim::color_distributed`]: round-synchronous stage simulation
//!   with conflict graphs and random independent sets.
//! - [`vizing::color_vizing`]: sequential `Δ + μ` coloring via
//!   arbitrary-length fans.
//!
//! [`verify`] holds the independent oracles (rescan verification, exact
//! chromatic index for tiny graphs, chain validation) used by the test
//! suites and the CLI.

pub mod builders;
pub mod chain;
pub mod coloring;
mod epoch;
pub mod deterministic;
pub mod error;
pub mod fans;
pub mod graph;
pub mod localsim;
pub mod multistep;
pub mod rng;
pub mod stats;
pub mod testgen;
pub mod verify;
pub mod vizing;

pub use coloring::PartialColoring;
pub use error::{Error, Result};
pub use graph::Multigraph;

use std::sync::OnceLock;

/// Whether full per-iteration invariant rescans are enabled (the
/// `SHANNON_DEBUG_INVARIANTS=1` environment variable). Read once.
pub fn debug_invariants_enabled() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| {
        std::env::var("SHANNON_DEBUG_INVARIANTS")
            .map(|v| v == "1")
            .unwrap_or(false)
    })
}
