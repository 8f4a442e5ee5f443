//! Constructed instances that force the chain search off its happy path.
//!
//! Random multigraphs with random proper partial colorings almost never
//! produce disappointed fans or capped paths: the vast majority of blank
//! edges are immediately happy, so searches finish without a single
//! iteration. The generators here build partial colorings whose missing
//! sets are adversarially partitioned, giving long alternating components,
//! forced truncations, and backward iterations. The test suites lean on
//! them wherever the interesting branches need reliable coverage.

use crate::coloring::PartialColoring;
use crate::graph::Multigraph;

/// A disappointed two-edge fan whose alternating continuation is a path of
/// `tail` colored edges running away from the pivot. With cap parameter 3
/// the search truncates once and then succeeds.
///
/// Degree 3, palette 4. `M(x) = {1,2}`, `M(y) = {0,3}`, `M(z) = {3}`; the
/// fan pair comes out `(1,3)` and the path runs from `z` down the tail.
pub fn long_component(tail: usize) -> (Multigraph, PartialColoring) {
    assert!(tail >= 1);
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6)];
    let mut pairs = vec![(1, 0), (2, 3), (3, 1), (4, 2), (5, 2)];
    let mut prev = 2;
    for i in 0..tail {
        let v = 7 + i;
        edges.push((prev, v));
        pairs.push((6 + i, if i % 2 == 0 { 1 } else { 3 }));
        prev = v;
    }
    let g = Multigraph::new(7 + tail, edges).unwrap();
    let phi = PartialColoring::with_assignments(&g, 4, &pairs).unwrap();
    debug_assert_eq!(phi.missing_set(0), vec![1, 2]);
    debug_assert_eq!(phi.missing_set(1), vec![0, 3]);
    debug_assert_eq!(phi.missing_set(2), vec![3]);
    (g, phi)
}

/// An instance whose search (cap parameter 3) performs 0-backward
/// iterations before succeeding.
///
/// The tail of [`long_component`] gets a pendant at every interior vertex,
/// colored 0/2 by parity, so whichever truncation point the random length
/// picks, the vacated edge is never happy. The pendants at the first two
/// interior vertices end in saturated "wall" vertices wired back toward the
/// start edge's endpoints: the follow-up chain from those junctions walks
/// straight into a fan vertex of the current step, forcing a 0-backward
/// iteration. The third junction's pendant is bare, so that draw escapes
/// forward and the search terminates.
///
/// Uncolored start edge is edge 0 with pivot vertex 0.
pub fn zigzag_backtracker(tail: usize) -> (Multigraph, PartialColoring) {
    assert!(tail >= 6, "need a tail past the cap");
    // Base: x=0, y=1, z=2, a=3, b=4, c=5, s=6.
    let mut edges = vec![
        (0, 1), // 0: e, blank
        (0, 2), // 1: f, c0
        (0, 3), // 2: (x,a) c3
        (1, 4), // 3: (y,b) c1
        (1, 5), // 4: (y,c) c2
        (2, 6), // 5: (z,s) c2
    ];
    let mut pairs = vec![(1, 0), (2, 3), (3, 1), (4, 2), (5, 2)];
    let mut next_vertex = 7;
    let mut fresh = || {
        let v = next_vertex;
        next_vertex += 1;
        v
    };
    // Tail t_i = (v_i, v_{i+1}), color 1/3 alternating, v_0 = z.
    let mut tail_verts = vec![2usize];
    let mut prev = 2;
    for i in 0..tail {
        let v = fresh();
        let id = edges.len();
        edges.push((prev, v));
        pairs.push((id, if i % 2 == 0 { 1 } else { 3 }));
        tail_verts.push(v);
        prev = v;
    }
    // Pendants at interior tail vertices, color 0 (odd index) / 2 (even).
    for (i, &v) in tail_verts.iter().enumerate().take(tail).skip(1) {
        let p = fresh();
        let id = edges.len();
        edges.push((v, p));
        pairs.push((id, if i % 2 == 1 { 0 } else { 2 }));
        if i == 1 {
            // Wall: colors {0,1,2}, its 1-edge relayed into (x,a)'s far end.
            let id = edges.len();
            edges.push((p, 3));
            pairs.push((id, 1));
            let q = fresh();
            let id = edges.len();
            edges.push((p, q));
            pairs.push((id, 2));
        } else if i == 2 {
            // Wall: colors {0,2,3}, its 3-edge relayed into (y,b)'s far end.
            let id = edges.len();
            edges.push((p, 4));
            pairs.push((id, 3));
            let q = fresh();
            let id = edges.len();
            edges.push((p, q));
            pairs.push((id, 0));
        }
    }
    let g = Multigraph::new(next_vertex, edges).unwrap();
    assert_eq!(g.max_degree(), 3);
    let phi = PartialColoring::with_assignments(&g, 4, &pairs).unwrap();
    (g, phi)
}
