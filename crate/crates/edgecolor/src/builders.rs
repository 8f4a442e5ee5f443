//! Assembling fans and bicolored paths into augmenting chains.
//!
//! `shannon_chain` composes a fan with a full (untruncated) alternating path
//! and is guaranteed happy; it backs the deterministic solver. `first_chain`
//! and `next_chain` are its capped variants for the multi-step search: paths
//! are computed to at most `2ℓ` edges and the result is only guaranteed
//! happy when the path came up short of the cap. `vizing_chain` is the
//! single-step analogue for the `Δ + μ` palette.
//!
//! All builders take the coloring mutably (they shift the fan to walk the
//! path in the shifted coloring) but always restore it before returning.

use crate::chain::{bicolored_path, shift, shift_back, Fan, PathChain};
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::fans::{first_shannon_fan, next_shannon_fan, FanResult};
use crate::graph::Multigraph;
use crate::vizing::first_vizing_fan;

/// One fan-plus-path step. The path starts at the fan's end edge and its
/// designated start vertex is the fan's pivot, so gluing `fan` and
/// `path[1..]` yields a chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub fan: Fan,
    pub path: PathChain,
    pub alpha: Color,
    pub beta: Color,
}

impl ChainStep {
    /// The step as a flat edge chain (fan edges, then path edges after the
    /// shared first one).
    pub fn chain_edges(&self) -> Vec<usize> {
        let mut edges = self.fan.edges.clone();
        edges.extend_from_slice(&self.path.edges[1..]);
        edges
    }

    pub fn len(&self) -> usize {
        self.fan.len() + self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn happy_fan(g: &Multigraph, fan: Fan, alpha: Color, beta: Color) -> ChainStep {
        let path = PathChain::single(g, fan.end(), fan.pivot);
        ChainStep {
            fan,
            path,
            alpha,
            beta,
        }
    }
}

fn debug_check_restored(phi: &PartialColoring, g: &Multigraph, tag: &str) {
    if crate::debug_invariants_enabled() {
        phi.check_consistency(g)
            .unwrap_or_else(|e| panic!("coloring corrupt after {tag}: {e}"));
    }
}

/// Constructs a happy augmenting chain for uncolored `e` with pivot `x`
/// under the `⌊3Δ/2⌋` palette: the fan alone when it is happy, else the fan
/// plus the full alternating path from its end, falling back to the path out
/// of `e` itself when the fan's path loops back to the pivot.
pub fn shannon_chain(
    g: &Multigraph,
    phi: &mut PartialColoring,
    e: usize,
    x: usize,
) -> Result<ChainStep> {
    let FanResult { fan, alpha, beta } = first_shannon_fan(g, phi, e, x)?;
    if phi.is_missing(x, beta) {
        return Ok(ChainStep::happy_fan(g, fan, alpha, beta));
    }
    shift(g, phi, &fan.edges)?;
    let (path, _) = bicolored_path(g, phi, fan.end(), fan.pivot, alpha, beta, usize::MAX);
    shift_back(g, phi, &fan.edges)?;
    debug_check_restored(phi, g, "shannon_chain");
    if path.v_end() != x {
        Ok(ChainStep {
            fan,
            path,
            alpha,
            beta,
        })
    } else {
        // The fan is disappointed; e itself is successful for this pair.
        let (path, _) = bicolored_path(g, phi, e, x, alpha, beta, usize::MAX);
        Ok(ChainStep {
            fan: Fan::new(vec![e], x),
            path,
            alpha,
            beta,
        })
    }
}

/// Capped variant of [`shannon_chain`]: paths are walked to at most
/// `2·ell` edges. The result is happy whenever its path is shorter than the
/// cap; at exactly the cap the fan is merely hopeful and the caller is
/// expected to keep extending.
pub fn first_chain(
    g: &Multigraph,
    phi: &mut PartialColoring,
    e: usize,
    x: usize,
    ell: usize,
) -> Result<ChainStep> {
    debug_assert!(ell >= 3);
    let cap = 2 * ell;
    let FanResult { fan, alpha, beta } = first_shannon_fan(g, phi, e, x)?;
    if phi.is_missing(x, beta) {
        return Ok(ChainStep::happy_fan(g, fan, alpha, beta));
    }
    shift(g, phi, &fan.edges)?;
    let (path, truncated) = bicolored_path(g, phi, fan.end(), fan.pivot, alpha, beta, cap);
    shift_back(g, phi, &fan.edges)?;
    debug_check_restored(phi, g, "first_chain");
    if truncated || path.v_end() != x {
        Ok(ChainStep {
            fan,
            path,
            alpha,
            beta,
        })
    } else {
        let (path, _) = bicolored_path(g, phi, e, x, alpha, beta, cap);
        Ok(ChainStep {
            fan: Fan::new(vec![e], x),
            path,
            alpha,
            beta,
        })
    }
}

/// Follow-up step constructor: given the previous step's pair
/// `(alpha, beta)` (with `alpha` missing at the pivot `x` and `beta` missing
/// at the other endpoint of `e`), builds the next fan-plus-path. In the
/// early-exit branch (`delta == beta`) the path keeps the old pair and no
/// success test is attempted.
pub fn next_chain(
    g: &Multigraph,
    phi: &mut PartialColoring,
    e: usize,
    x: usize,
    alpha: Color,
    beta: Color,
    ell: usize,
) -> Result<ChainStep> {
    debug_assert!(ell >= 3);
    let cap = 2 * ell;
    let FanResult {
        fan,
        alpha: gamma,
        beta: delta,
    } = next_shannon_fan(g, phi, e, x, alpha, beta)?;
    if phi.is_missing(x, delta) {
        return Ok(ChainStep::happy_fan(g, fan, gamma, delta));
    }
    if delta == beta {
        shift(g, phi, &fan.edges)?;
        let (path, _) = bicolored_path(g, phi, fan.end(), fan.pivot, alpha, beta, cap);
        shift_back(g, phi, &fan.edges)?;
        debug_check_restored(phi, g, "next_chain");
        return Ok(ChainStep {
            fan,
            path,
            alpha,
            beta,
        });
    }
    shift(g, phi, &fan.edges)?;
    let (path, truncated) = bicolored_path(g, phi, fan.end(), fan.pivot, gamma, delta, cap);
    shift_back(g, phi, &fan.edges)?;
    debug_check_restored(phi, g, "next_chain");
    if truncated || path.v_end() != x {
        Ok(ChainStep {
            fan,
            path,
            alpha: gamma,
            beta: delta,
        })
    } else {
        let (path, _) = bicolored_path(g, phi, e, x, gamma, delta, cap);
        Ok(ChainStep {
            fan: Fan::new(vec![e], x),
            path,
            alpha: gamma,
            beta: delta,
        })
    }
}

/// Constructs a happy augmenting chain for the `Δ + μ` palette: a fan from
/// the first-fan constructor, then the alternating path from whichever of
/// the fan or its truncation is successful. The color for the path's far
/// end of the pair is `alpha = min M(x)`; success of the full fan is tested
/// first and the truncated fan is used only on failure, which minimizes
/// shifts.
pub fn vizing_chain(
    g: &Multigraph,
    phi: &mut PartialColoring,
    e: usize,
    x: usize,
) -> Result<ChainStep> {
    let out = first_vizing_fan(g, phi, e, x)?;
    let beta = out.color;
    if phi.is_missing(x, beta) {
        return Ok(ChainStep::happy_fan(g, out.fan, beta, beta));
    }
    let alpha = phi
        .first_missing(x)
        .ok_or_else(|| Error::internal("no missing color at pivot"))?;
    for (attempt, fan) in [out.fan.clone(), out.fan.prefix(out.j)].into_iter().enumerate() {
        shift(g, phi, &fan.edges)?;
        let successful = !crate::chain::related(g, phi, x, fan.v_end(g), alpha, beta);
        if successful {
            let (path, _) =
                bicolored_path(g, phi, fan.end(), fan.pivot, alpha, beta, usize::MAX);
            shift_back(g, phi, &fan.edges)?;
            debug_check_restored(phi, g, "vizing_chain");
            return Ok(ChainStep {
                fan,
                path,
                alpha,
                beta,
            });
        }
        shift_back(g, phi, &fan.edges)?;
        if attempt == 1 {
            break;
        }
    }
    Err(Error::internal(
        "neither the fan nor its truncation is successful",
    ))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::chain::{augment, is_shiftable};
    use crate::graph::{parse_graph, random_multigraph, shannon_extremal};

    #[test]
    fn blank_coloring_chain_is_single_edge() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let mut phi = PartialColoring::blank(&g, 3);
        let step = shannon_chain(&g, &mut phi, 0, 0).unwrap();
        assert_eq!(step.chain_edges(), vec![0]);
        let c = augment(&g, &mut phi, &step.chain_edges()).unwrap();
        assert_eq!(c, 0);
    }

    /// The fan's path loops back to the pivot, so the chain falls back to
    /// the path out of `e` itself.
    #[test]
    fn chain_falls_back_to_start_edge_path() {
        let (g, phi) = crate::fans::tests::disappointed_fan_instance();
        let mut phi = phi;
        let step = shannon_chain(&g, &mut phi, 0, 0).unwrap();
        assert_eq!(step.fan.edges, vec![0]);
        assert!(step.path.len() > 1);
        // Happy: augmenting colors e and leaves a proper coloring.
        let before = phi.domain_size();
        augment(&g, &mut phi, &step.chain_edges()).unwrap();
        assert_eq!(phi.domain_size(), before + 1);
        assert!(phi.is_proper(&g));
        assert!(!phi.is_blank(0));
    }

    #[test]
    fn greedy_precolored_fat_triangle_completes() {
        let g = shannon_extremal(4).unwrap();
        let r = g.shannon_colors();
        assert_eq!(r, 6);
        let mut phi = PartialColoring::blank(&g, r);
        // Greedily color all but one edge.
        for e in 0..g.m() - 1 {
            let c = phi.happy_color(&g, e).unwrap().unwrap();
            phi.assign(&g, e, c).unwrap();
        }
        let e = g.m() - 1;
        let step = shannon_chain(&g, &mut phi, e, g.min_endpoint(e)).unwrap();
        augment(&g, &mut phi, &step.chain_edges()).unwrap();
        assert!(phi.is_complete());
        assert!(phi.is_proper(&g));
    }

    #[test]
    fn shannon_chains_are_always_happy_on_random_instances() {
        for seed in 0..60 {
            let g = random_multigraph(16, 4, 2, 800 + seed).unwrap();
            if g.max_degree() < 2 {
                continue;
            }
            let r = g.shannon_colors();
            let mut phi = PartialColoring::blank(&g, r);
            let mut order = phi.uncolored_edges();
            // Color in a scrambled deterministic order to hit varied states.
            let split = seed as usize % order.len().max(1);
            order.rotate_left(split);
            for e in order {
                let x = g.min_endpoint(e);
                let step = shannon_chain(&g, &mut phi, e, x).unwrap();
                assert!(is_shiftable(&g, &phi, &step.chain_edges()));
                let before = phi.domain_size();
                augment(&g, &mut phi, &step.chain_edges()).unwrap();
                assert_eq!(phi.domain_size(), before + 1);
            }
            assert!(phi.is_complete());
            assert!(phi.is_proper(&g));
            phi.check_consistency(&g).unwrap();
        }
    }

    #[test]
    fn first_chain_truncates_at_cap() {
        // Long alternating component: the capped path has exactly 2*ell
        // edges and the fan is hopeful rather than successful.
        let ell = 3;
        let (g, phi) = long_component_instance(20);
        let mut phi = phi;
        let step = first_chain(&g, &mut phi, 0, 0, ell).unwrap();
        assert_eq!(step.path.len(), 2 * ell);
        assert!(crate::chain::edge_hopeful(&g, &phi, 0, step.alpha, step.beta));
    }

    #[test]
    fn first_chain_short_component_is_happy() {
        let ell = 8;
        let (g, phi) = long_component_instance(6);
        let mut phi = phi;
        let step = first_chain(&g, &mut phi, 0, 0, ell).unwrap();
        assert!(step.path.len() < 2 * ell);
        augment(&g, &mut phi, &step.chain_edges()).unwrap();
        assert!(phi.is_proper(&g));
    }

    use crate::testgen::long_component as long_component_instance;

    #[test]
    fn next_chain_beta_branch_keeps_pair_and_caps() {
        let ell = 3;
        let (g, phi) = crate::fans::tests::disappointed_fan_instance();
        let mut phi = phi;
        let step = next_chain(&g, &mut phi, 0, 0, 1, 3, ell).unwrap();
        assert_eq!((step.alpha, step.beta), (1, 3));
        assert!(step.path.len() <= 2 * ell);
    }

    #[test]
    fn vizing_chain_on_blank_and_parallel_pair() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let mut phi = PartialColoring::blank(&g, g.vizing_colors());
        let step = vizing_chain(&g, &mut phi, 0, 0).unwrap();
        assert_eq!(step.chain_edges(), vec![0]);

        // Two parallel edges, one colored: palette Δ+μ = 4.
        let g = parse_graph("2 2\n0 1\n0 1\n").unwrap();
        assert_eq!(g.vizing_colors(), 4);
        let mut phi = PartialColoring::blank(&g, 4);
        phi.assign(&g, 0, 0).unwrap();
        let step = vizing_chain(&g, &mut phi, 1, 0).unwrap();
        augment(&g, &mut phi, &step.chain_edges()).unwrap();
        assert!(phi.is_complete());
        assert!(phi.is_proper(&g));
    }

    #[test]
    fn vizing_chains_complete_random_multigraphs() {
        for seed in 0..40 {
            let g = random_multigraph(14, 6, 3, 4100 + seed).unwrap();
            let r = g.vizing_colors();
            let mut phi = PartialColoring::blank(&g, r);
            for e in 0..g.m() {
                let step = vizing_chain(&g, &mut phi, e, g.min_endpoint(e)).unwrap();
                let before = phi.domain_size();
                augment(&g, &mut phi, &step.chain_edges()).unwrap();
                assert_eq!(phi.domain_size(), before + 1);
            }
            assert!(phi.is_complete());
            assert!(phi.is_proper(&g));
        }
    }
}
