//! Length-at-most-2 fan constructors for the `⌊3Δ/2⌋` palette.
//!
//! Both constructors return a fan starting at the uncolored edge together
//! with a color pair. The first variant picks the pair from scratch; the
//! "next" variant gets the previous step's pair and guarantees the new pair
//! is either equal to it (the early-exit branch) or disjoint from it. All
//! min-selections resolve to the smallest color index, and each constructor
//! costs `O(Δ)` coloring probes.

use crate::chain::Fan;
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// A fan of length 1 or 2 plus its color pair. When the fan is happy the two
/// colors are equal and both missing at the pivot.
#[derive(Clone, Debug)]
pub struct FanResult {
    pub fan: Fan,
    pub alpha: Color,
    pub beta: Color,
}

/// Builds the first fan out of uncolored `e` with pivot `x`.
///
/// Postcondition (with `y` the non-pivot endpoint of `e` and `z` the fan
/// end): exactly one of
///  - `beta` missing at the pivot and the fan happy,
///  - fan length 2 and the fan `(alpha, beta)`-successful,
///  - `e` itself `(alpha, beta)`-successful.
pub fn first_shannon_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
) -> Result<FanResult> {
    debug_assert!(phi.is_blank(e));
    let y = g.other_endpoint(e, x);
    if let Some(beta) = phi.min_common_missing(x, y) {
        return Ok(FanResult {
            fan: Fan::new(vec![e], x),
            alpha: beta,
            beta,
        });
    }
    let eta = phi
        .first_missing(y)
        .ok_or_else(|| Error::internal("no missing color at an endpoint of a blank edge"))?;
    let f = phi
        .edge_at(x, eta)
        .ok_or_else(|| Error::internal("color missing at y must appear at x"))?;
    let z = g.other_endpoint(f, x);
    if let Some(beta) = phi.min_common_missing(x, z) {
        return Ok(FanResult {
            fan: Fan::new(vec![e, f], x),
            alpha: beta,
            beta,
        });
    }
    // The three missing sets cannot be pairwise disjoint: they are too large
    // for the palette. A miss here means the coloring state is corrupt.
    let beta = phi
        .min_common_missing(y, z)
        .ok_or_else(|| Error::internal("missing sets at y and z are disjoint"))?;
    let alpha = phi
        .first_missing(x)
        .ok_or_else(|| Error::internal("no missing color at pivot"))?;
    Ok(FanResult {
        fan: Fan::new(vec![e, f], x),
        alpha,
        beta,
    })
}

/// Builds the follow-up fan out of uncolored `e` with pivot `x`, where
/// `alpha` is missing at `x` but not at the other endpoint `y`, and `beta`
/// is missing at `y` (the pair of the chain step that led here).
///
/// Postcondition: exactly one of
///  - the returned pair is `(delta, delta)` with `delta` missing at the
///    pivot and the fan happy,
///  - fan length 2, `delta == beta`, returned pair `(alpha, beta)`, fan
///    `(alpha, beta)`-hopeful,
///  - `delta != beta`, pair disjoint from `{alpha, beta}`, and the fan or
///    `e` is `(gamma, delta)`-successful.
pub fn next_shannon_fan(
    g: &Multigraph,
    phi: &PartialColoring,
    e: usize,
    x: usize,
    alpha: Color,
    beta: Color,
) -> Result<FanResult> {
    debug_assert!(phi.is_blank(e));
    let y = g.other_endpoint(e, x);
    if !phi.is_missing(x, alpha) || phi.is_missing(y, alpha) {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} must be missing at pivot {x} and present at {y}"
        )));
    }
    if !phi.is_missing(y, beta) {
        return Err(Error::Precondition(format!(
            "beta = {beta} must be missing at {y}"
        )));
    }
    if let Some(delta) = phi.min_common_missing(x, y) {
        return Ok(FanResult {
            fan: Fan::new(vec![e], x),
            alpha: delta,
            beta: delta,
        });
    }
    let eta = phi
        .min_missing_excluding(y, beta)
        .ok_or_else(|| Error::internal("singleton missing set at y with degree at least 2"))?;
    let f = phi
        .edge_at(x, eta)
        .ok_or_else(|| Error::internal("color missing at y must appear at x"))?;
    let z = g.other_endpoint(f, x);
    if let Some(delta) = phi.min_common_missing(x, z) {
        return Ok(FanResult {
            fan: Fan::new(vec![e, f], x),
            alpha: delta,
            beta: delta,
        });
    }
    let delta = phi
        .min_common_missing(y, z)
        .ok_or_else(|| Error::internal("missing sets at y and z are disjoint"))?;
    if delta == beta {
        return Ok(FanResult {
            fan: Fan::new(vec![e, f], x),
            alpha,
            beta,
        });
    }
    let gamma = phi
        .min_missing_excluding(x, alpha)
        .ok_or_else(|| Error::internal("singleton missing set at pivot with degree at least 2"))?;
    Ok(FanResult {
        fan: Fan::new(vec![e, f], x),
        alpha: gamma,
        beta: delta,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coloring::PartialColoring;
    use crate::graph::parse_graph;

    #[test]
    fn blank_coloring_gives_happy_single_edge() {
        let g = parse_graph("2 1\n0 1\n").unwrap();
        let phi = PartialColoring::blank(&g, 3);
        let out = first_shannon_fan(&g, &phi, 0, 0).unwrap();
        assert_eq!(out.fan.edges, vec![0]);
        assert_eq!((out.alpha, out.beta), (0, 0));
    }

    /// Happy fan of length 2: the pivot and the fan end share a missing
    /// color even though the edge endpoints do not.
    #[test]
    fn length_two_happy_fan() {
        // x=0, y=1, z=2, then leaves. Delta=3, r=4.
        // x carries {0 (to z), 3}; y carries {1, 2}; z carries {0} only.
        let g = parse_graph("7 5\n0 1\n0 2\n0 3\n1 4\n1 5\n").unwrap();
        let phi = PartialColoring::with_assignments(
            &g,
            4,
            &[(1, 0), (2, 3), (3, 1), (4, 2)],
        )
        .unwrap();
        assert_eq!(phi.missing_set(0), vec![1, 2]);
        assert_eq!(phi.missing_set(1), vec![0, 3]);
        assert_eq!(phi.missing_set(2), vec![1, 2, 3]);
        let out = first_shannon_fan(&g, &phi, 0, 0).unwrap();
        // eta = min M(y) = 0, f = the 0-edge at x = edge 1, z = 2.
        // M(x) ∩ M(z) = {1,2}: happy with beta = 1.
        assert_eq!(out.fan.edges, vec![0, 1]);
        assert_eq!((out.alpha, out.beta), (1, 1));
        assert!(phi.is_missing(0, out.beta));
    }

    /// Disappointed fan whose start edge is successful: the alternating path
    /// from the fan end loops back to the pivot, while the path from the
    /// start edge leads elsewhere.
    #[test]
    fn disappointed_fan_successful_edge() {
        let (g, phi) = disappointed_fan_instance();
        let out = first_shannon_fan(&g, &phi, 0, 0).unwrap();
        assert_eq!(out.fan.edges, vec![0, 1]);
        assert_eq!((out.alpha, out.beta), (1, 3));
        // Fan is hopeful but its pivot/end are related after shifting.
        let mut psi = phi.clone();
        crate::chain::shift(&g, &mut psi, &out.fan.edges).unwrap();
        assert!(crate::chain::related(&g, &psi, 0, 2, out.alpha, out.beta));
        // The start edge itself is successful under the original coloring.
        assert!(crate::chain::edge_successful(&g, &phi, 0, out.alpha, out.beta));
    }

    /// x=0 y=1 z=2 d=3 g=4 h=5 w=6. Edge 0 = (x,y) blank.
    /// M(x)={1,2}, M(y)={0,3}, M(z)={3}; alpha=1, beta=3; the (1,3)-path
    /// from z runs z-d-x.
    pub(crate) fn disappointed_fan_instance() -> (crate::graph::Multigraph, PartialColoring) {
        let g = parse_graph("7 7\n0 1\n0 2\n0 3\n1 4\n1 5\n2 3\n2 6\n").unwrap();
        let phi = PartialColoring::with_assignments(
            &g,
            4,
            &[(1, 0), (2, 3), (3, 1), (4, 2), (5, 1), (6, 2)],
        )
        .unwrap();
        assert_eq!(phi.missing_set(0), vec![1, 2]);
        assert_eq!(phi.missing_set(1), vec![0, 3]);
        assert_eq!(phi.missing_set(2), vec![3]);
        (g, phi)
    }

    #[test]
    fn next_fan_happy_branch() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let phi = PartialColoring::with_assignments(&g, 3, &[(1, 0)]).unwrap();
        // M(0) = {0,1,2}, M(1) = {1,2}; alpha must be missing at x=0 only.
        let out = next_shannon_fan(&g, &phi, 0, 0, 0, 1).unwrap();
        assert_eq!(out.fan.edges, vec![0]);
        assert_eq!((out.alpha, out.beta), (1, 1)); // min common missing
    }

    #[test]
    fn next_fan_rejects_bad_pair() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let phi = PartialColoring::with_assignments(&g, 3, &[(1, 0)]).unwrap();
        // alpha = 1 is missing at both endpoints: invalid.
        assert!(matches!(
            next_shannon_fan(&g, &phi, 0, 0, 1, 2),
            Err(Error::Precondition(_))
        ));
        // beta = 0 is present at y: invalid.
        assert!(matches!(
            next_shannon_fan(&g, &phi, 0, 0, 0, 0),
            Err(Error::Precondition(_))
        ));
    }

    /// Early-exit branch: the common missing color of y and z equals beta,
    /// so the previous pair is kept and the fan is (alpha,beta)-hopeful.
    #[test]
    fn next_fan_beta_branch() {
        // On the disappointed-fan instance, min M(y) ∩ M(z) = 3 = beta.
        let (g, phi) = disappointed_fan_instance();
        let out = next_shannon_fan(&g, &phi, 0, 0, 1, 3).unwrap();
        assert_eq!(out.fan.edges, vec![0, 1]);
        assert_eq!((out.alpha, out.beta), (1, 3));
        assert!(crate::chain::edge_hopeful(&g, &phi, 0, 1, 3));
    }

    /// Generic branch: the new pair is disjoint from the old one.
    #[test]
    fn next_fan_disjoint_pair_branch() {
        // x=0 y=1 z=2, r=5. M(x)={1,2}, M(y)={0,3,4}, M(z)={4}.
        // With (alpha, beta) = (1, 3): eta = 0, f = (x,z), and
        // delta = min M(y) ∩ M(z) = 4 != beta, gamma = min M(x)\{1} = 2.
        let g =
            parse_graph("10 9\n0 1\n0 2\n0 3\n0 4\n1 5\n1 6\n2 7\n2 8\n2 9\n").unwrap();
        let phi = PartialColoring::with_assignments(
            &g,
            5,
            &[
                (1, 0),
                (2, 3),
                (3, 4),
                (4, 1),
                (5, 2),
                (6, 1),
                (7, 2),
                (8, 3),
            ],
        )
        .unwrap();
        assert_eq!(phi.missing_set(0), vec![1, 2]);
        assert_eq!(phi.missing_set(1), vec![0, 3, 4]);
        assert_eq!(phi.missing_set(2), vec![4]);
        let out = next_shannon_fan(&g, &phi, 0, 0, 1, 3).unwrap();
        assert_eq!(out.fan.edges, vec![0, 1]);
        assert_eq!((out.alpha, out.beta), (2, 4));
        // Pair disjointness from the previous step's pair.
        assert!(![1, 3].contains(&out.alpha) && ![1, 3].contains(&out.beta));
    }

    #[test]
    fn fan_constructors_cost_linear_probes() {
        let (g, phi) = disappointed_fan_instance();
        let delta = g.max_degree();
        phi.reset_probe_count();
        first_shannon_fan(&g, &phi, 0, 0).unwrap();
        assert!(phi.probe_count() <= 32 * delta as u64 + 64);
        phi.reset_probe_count();
        let _ = next_shannon_fan(&g, &phi, 0, 0, 1, 3).unwrap();
        assert!(phi.probe_count() <= 32 * delta as u64 + 64);
    }
}
