//! Loopless multigraph with stable integer edge identifiers.
//!
//! Vertices are `0..n`, edges are `0..m` in input order, and parallel edges
//! are first-class: `multiplicity(u, v)` may exceed 1. The structure is
//! immutable after construction; all coloring state lives in
//! [`crate::coloring::PartialColoring`], which lets solvers share a graph
//! freely across readers.

use crate::error::{Error, Result};
use crate::rng::{streams, Rng};
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct Multigraph {
    n: usize,
    endpoints: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    max_degree: usize,
    max_multiplicity: usize,
}

impl Multigraph {
    /// Builds a multigraph from endpoint pairs. Rejects loops and
    /// out-of-range vertices.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge {id} endpoint out of range: ({u}, {v}) with n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!(
                    "edge {id} is a loop at vertex {u}"
                )));
            }
            incident[u].push(id);
            incident[v].push(id);
        }
        let max_degree = incident.iter().map(Vec::len).max().unwrap_or(0);
        let max_multiplicity = max_multiplicity_of(n, &edges);
        Ok(Multigraph {
            n,
            endpoints: edges,
            incident,
            max_degree,
            max_multiplicity,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    /// The endpoint of `e` distinct from `v`.
    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (u, w) = self.endpoints[e];
        debug_assert!(v == u || v == w);
        if v == u {
            w
        } else {
            u
        }
    }

    pub fn is_endpoint(&self, e: usize, v: usize) -> bool {
        let (u, w) = self.endpoints[e];
        v == u || v == w
    }

    /// Smaller endpoint; the canonical pivot for deterministic runs.
    pub fn min_endpoint(&self, e: usize) -> usize {
        let (u, w) = self.endpoints[e];
        u.min(w)
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn max_multiplicity(&self) -> usize {
        self.max_multiplicity
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incident[u]
            .iter()
            .filter(|&&e| self.other_endpoint(e, u) == v)
            .count()
    }

    /// `⌊3Δ/2⌋`, the palette size guaranteed by the degree bound.
    pub fn shannon_colors(&self) -> usize {
        3 * self.max_degree / 2
    }

    /// `Δ + μ`, the palette size guaranteed by the degree-plus-multiplicity
    /// bound.
    pub fn vizing_colors(&self) -> usize {
        self.max_degree + self.max_multiplicity
    }

    /// Whether `e` and `f` share an endpoint.
    pub fn adjacent_edges(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.endpoints[e];
        self.is_endpoint(f, a) || self.is_endpoint(f, b)
    }

    /// Serializes to the graph file format: a `n m` header followed by one
    /// `u v` line per edge in id order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for &(u, v) in &self.endpoints {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn max_multiplicity_of(n: usize, edges: &[(usize, usize)]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let mut pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    pairs.sort_unstable();
    let _ = n;
    let mut best = 1;
    let mut run = 1;
    for w in pairs.windows(2) {
        if w[0] == w[1] {
            run += 1;
            best = best.max(run);
        } else {
            run = 1;
        }
    }
    best
}

/// Parses the graph file format: optional `#` comment lines, a `n m` header,
/// then exactly `m` lines `u v`. Repeated lines encode parallel edges, and
/// the edge id is the data-line index.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse_field = |field: Option<&str>, lineno: usize| -> Result<usize> {
            field
                .ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    msg: "expected two integers".into(),
                })?
                .parse()
                .map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: "expected two integers".into(),
                })
        };
        let a = parse_field(it.next(), lineno)?;
        let b = parse_field(it.next(), lineno)?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "trailing fields".into(),
            });
        }
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("more than {m} edge lines"),
                    });
                }
                if a >= n || b >= n {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("vertex index out of range: {a} {b} with n = {n}"),
                    });
                }
                if a == b {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("loop edge at vertex {a}"),
                    });
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("edge count mismatch: header says {m}, found {}", edges.len()),
        });
    }
    Multigraph::new(n, edges)
}

/// Random loopless multigraph with `deg(v) ≤ max_deg` and pairwise
/// multiplicity at most `max_mult`, deterministic in `seed`.
///
/// Insertion candidates violating a cap are rejected; the target density of
/// about `n·Δ/2` edges is approached, not guaranteed. With `max_mult > 1` a
/// fraction of candidates duplicate an existing edge so that parallel edges
/// actually show up at realistic sizes.
pub fn random_multigraph(n: usize, max_deg: usize, max_mult: usize, seed: u64) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 vertices for any edge, got n = {n}"
        )));
    }
    if max_deg < 1 {
        return Err(Error::InvalidParams("max degree must be at least 1".into()));
    }
    if max_mult < 1 || max_mult > max_deg {
        return Err(Error::InvalidParams(format!(
            "multiplicity cap must satisfy 1 <= mu <= delta, got mu = {max_mult}, delta = {max_deg}"
        )));
    }
    let mut rng = Rng::keyed(seed, &[streams::GENERATOR, n as u64, max_deg as u64, max_mult as u64]);
    let target = n * max_deg / 2;
    let mut degree = vec![0usize; n];
    let mut mult: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut attempts = 0usize;
    let attempt_budget = 40 * target + 100;
    while edges.len() < target && attempts < attempt_budget {
        attempts += 1;
        let (u, v) = if max_mult > 1 && !edges.is_empty() && rng.below(10) < 3 {
            *rng.pick(&edges)
        } else {
            let u = rng.below(n);
            let v = rng.below(n);
            (u, v)
        };
        if u == v {
            continue;
        }
        if degree[u] >= max_deg || degree[v] >= max_deg {
            continue;
        }
        let key = (u.min(v), u.max(v));
        let entry = mult.entry(key).or_insert(0);
        if *entry >= max_mult {
            continue;
        }
        *entry += 1;
        degree[u] += 1;
        degree[v] += 1;
        edges.push((u, v));
    }
    Multigraph::new(n, edges)
}

/// The extremal "fat triangle": 3 vertices, each pair joined by `delta / 2`
/// parallel edges. Every pair of edges is adjacent, so its chromatic index
/// is exactly `3·delta/2`, which makes it the tightness witness for the
/// degree bound.
pub fn shannon_extremal(delta: usize) -> Result<Multigraph> {
    if delta < 2 || !delta.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "fat triangle needs an even degree of at least 2, got {delta}"
        )));
    }
    let half = delta / 2;
    let mut edges = Vec::with_capacity(3 * half);
    for &(u, v) in &[(0, 1), (0, 2), (1, 2)] {
        for _ in 0..half {
            edges.push((u, v));
        }
    }
    Multigraph::new(3, edges)
}
