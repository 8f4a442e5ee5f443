//! Fan constructors and the sequential solver for the `Δ + μ` palette.
//!
//! Unlike the two-edge fans of the `⌊3Δ/2⌋` machinery, these fans grow until
//! either the tip color is missing at the pivot (happy) or the wanted edge
//! is already on the fan (the wrap case, which yields the truncation index
//! `j`). Per-neighbor candidate sets are materialized lazily as sorted color
//! lists on first touch, so a call costs `O(Δ)` per touched neighbor and
//! `O(Δ²)` overall.

use crate::builders::vizing_chain;
use crate::chain::{augment, Fan};
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::stats::SolveRun;
use std::collections::HashMap;

/// A fan plus a color and truncation index such that the color is missing at
/// both the fan's end vertex and the end vertex of its first `j` edges.
#[derive(Clone, Debug)]
pub struct VizingFanResult {
    pub fan: Fan,
    pub color: Color,
    pub j: usize,
}

/// Sorted candidate color lists per neighbor, built on first touch.
struct CandidateSets<'a> {
    phi: &'a PartialColoring,
    sets: HashMap<usize, Vec<Color>>,
}

impl<'a> CandidateSets<'a> {
    fn new(phi: &'a PartialColoring) -> Self {
        CandidateSets {
            phi,
            sets: HashMap::new(),
        }
    }

    fn touch(&mut self, z: usize) -> &mut Vec<Color> {
        self.sets.entry(z).or_insert_with(|| self.phi.missing_set(z))
    }

    fn pop_min(&mut self, z: usize) -> Option<Color> {
        let set = self.touch(z);
        if set.is_empty() {
            None
        } else {
            Some(set.remove(0))
        }
    }

    fn remove(&mut self, z: usize, c: Color) {
        let set = self.touch(z);
        if let Ok(pos) = set.binary_search(&c) {
            set.remove(pos);
        }
    }
}

fn build_nbr_index(
    g: &Multigraph,
    phi: &PartialColoring,
    x: usize,
    r: usize,
) -> Vec<Option<usize>> {
    let mut nbr = vec![None; r];
    for &f in g.incident(x) {
        if let Some(c) = phi.get(f) {
            nbr[c] = Some(f);
        }
    }
    nbr
}

/// Grows a fan out of uncolored `e` around pivot `x`.
///
/// Either the returned color is missing at `x` and the fan is happy, or for
/// the truncated fan `F' = F|j` and any color missing at `x`, the full fan
/// or `F'` is successful for that color paired with the returned one.
pub fn first_vizing_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
) -> Result<VizingFanResult> {
    vizing_fan_loop(g, phi, e, x, None)
}

/// Variant taking the previous step's `beta` (missing at the non-pivot
/// endpoint of `e`): `beta` is removed from that endpoint's candidate set up
/// front, and the loop exits early when it resurfaces, which keeps the fan
/// clear of both old pair colors.
pub fn next_vizing_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    beta: Color,
) -> Result<VizingFanResult> {
    let y = g.other_endpoint(e, x);
    if !phi.is_missing(y, beta) {
        return Err(Error::Precondition(format!(
            "beta = {beta} must be missing at {y}"
        )));
    }
    if phi.missing_set(x).iter().all(|c| phi.is_missing(y, *c)) {
        return Err(Error::Precondition(format!(
            "need a color missing at {x} but not at {y}"
        )));
    }
    vizing_fan_loop(g, phi, e, x, Some(beta))
}

fn vizing_fan_loop(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    early_beta: Option<Color>,
) -> Result<VizingFanResult> {
    debug_assert!(phi.is_blank(e));
    let r = phi.colors();
    let y = g.other_endpoint(e, x);
    let nbr = build_nbr_index(g, phi, x, r);
    let mut candidates = CandidateSets::new(phi);
    if let Some(beta) = early_beta {
        candidates.remove(y, beta);
    }
    let mut index: HashMap<usize, usize> = HashMap::new();
    index.insert(e, 0);
    let mut fan = Fan::new(vec![e], x);
    let mut tip = y;
    let mut k = 0usize;
    while k < g.degree(x) {
        let eta = candidates
            .pop_min(tip)
            .ok_or_else(|| Error::internal("candidate set ran empty"))?;
        if phi.is_missing(x, eta) {
            return Ok(VizingFanResult {
                fan,
                color: eta,
                j: k + 1,
            });
        }
        if early_beta == Some(eta) {
            return Ok(VizingFanResult {
                fan,
                color: eta,
                j: k + 1,
            });
        }
        k += 1;
        let next = nbr[eta]
            .ok_or_else(|| Error::internal("color not missing at pivot must appear there"))?;
        if let Some(&j) = index.get(&next) {
            return Ok(VizingFanResult {
                fan,
                color: eta,
                j,
            });
        }
        index.insert(next, k);
        tip = g.other_endpoint(next, x);
        fan.edges.push(next);
    }
    Err(Error::internal("vizing fan loop exhausted the pivot degree"))
}

/// Sequential `Δ + μ` coloring: one happy chain per edge, in edge-id order
/// with the smaller endpoint as pivot.
pub fn color_vizing(g: &Multigraph) -> Result<(PartialColoring, SolveRun)> {
    let r = g.vizing_colors();
    let mut phi = PartialColoring::blank(g, r);
    let mut chain_edges_total = 0u64;
    for e in 0..g.m() {
        let step = vizing_chain(g, &mut phi, e, g.min_endpoint(e))?;
        let edges = step.chain_edges();
        chain_edges_total += edges.len() as u64;
        augment(g, &mut phi, &edges)?;
        if crate::debug_invariants_enabled() {
            phi.check_consistency(g)?;
        }
    }
    Ok((
        phi,
        SolveRun {
            iterations: g.m() as u64,
            chain_edges: chain_edges_total,
        },
    ))
}
