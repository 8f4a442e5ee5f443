//! Partial edge-coloring state.
//!
//! A [`PartialColoring`] keeps a per-edge assignment plus a per-vertex
//! occupancy index (`vertex × color → edge`) so "which edge at `x` carries
//! `c`" is a constant-time probe and missing sets enumerate in `O(r)`.
//! Missing sets are derived on demand from the occupancy index rather than
//! stored, so there is one mutable index to keep consistent, not two.
//!
//! Properness is enforced at every `assign`; `is_proper` additionally offers
//! a full rescan that does not trust the occupancy index.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use std::cell::Cell;
use std::fmt::Write as _;

pub type Color = usize;

#[derive(Clone, Debug)]
pub struct PartialColoring {
    r: usize,
    assigned: Vec<Option<Color>>,
    /// Flattened `n × r`: `occupancy[v * r + c]` is the edge at `v` colored `c`.
    occupancy: Vec<Option<usize>>,
    blank_count: usize,
    probes: Cell<u64>,
}

impl PartialColoring {
    /// The all-blank coloring with `r` available colors.
    pub fn blank(g: &Multigraph, r: usize) -> Self {
        PartialColoring {
            r,
            assigned: vec![None; g.m()],
            occupancy: vec![None; g.n() * r],
            blank_count: g.m(),
            probes: Cell::new(0),
        }
    }

    /// Builds a coloring from explicit `(edge, color)` pairs, validating
    /// properness along the way.
    pub fn with_assignments(
        g: &Multigraph,
        r: usize,
        pairs: &[(usize, Color)],
    ) -> Result<Self> {
        let mut phi = Self::blank(g, r);
        for &(e, c) in pairs {
            phi.assign(g, e, c)?;
        }
        Ok(phi)
    }

    pub fn colors(&self) -> usize {
        self.r
    }

    pub fn get(&self, e: usize) -> Option<Color> {
        self.assigned[e]
    }

    pub fn is_blank(&self, e: usize) -> bool {
        self.assigned[e].is_none()
    }

    pub fn domain_size(&self) -> usize {
        self.assigned.len() - self.blank_count
    }

    pub fn uncolored_count(&self) -> usize {
        self.blank_count
    }

    pub fn is_complete(&self) -> bool {
        self.blank_count == 0
    }

    pub fn uncolored_edges(&self) -> Vec<usize> {
        (0..self.assigned.len())
            .filter(|&e| self.assigned[e].is_none())
            .collect()
    }

    /// The edge at `v` colored `c`, if any. One occupancy probe.
    pub fn edge_at(&self, v: usize, c: Color) -> Option<usize> {
        self.probes.set(self.probes.get() + 1);
        self.occupancy[v * self.r + c]
    }

    pub fn is_missing(&self, v: usize, c: Color) -> bool {
        self.edge_at(v, c).is_none()
    }

    /// `[r]` minus the colors on edges incident to `v`.
    pub fn missing_set(&self, v: usize) -> Vec<Color> {
        self.probes.set(self.probes.get() + self.r as u64);
        let row = &self.occupancy[v * self.r..(v + 1) * self.r];
        (0..self.r).filter(|&c| row[c].is_none()).collect()
    }

    pub fn first_missing(&self, v: usize) -> Option<Color> {
        self.probes.set(self.probes.get() + self.r as u64);
        let row = &self.occupancy[v * self.r..(v + 1) * self.r];
        (0..self.r).find(|&c| row[c].is_none())
    }

    /// Smallest color missing at both `u` and `v`.
    pub fn min_common_missing(&self, u: usize, v: usize) -> Option<Color> {
        self.probes.set(self.probes.get() + 2 * self.r as u64);
        let ru = &self.occupancy[u * self.r..(u + 1) * self.r];
        let rv = &self.occupancy[v * self.r..(v + 1) * self.r];
        (0..self.r).find(|&c| ru[c].is_none() && rv[c].is_none())
    }

    /// Smallest color missing at `v` and different from `excl`.
    pub fn min_missing_excluding(&self, v: usize, excl: Color) -> Option<Color> {
        self.probes.set(self.probes.get() + self.r as u64);
        let row = &self.occupancy[v * self.r..(v + 1) * self.r];
        (0..self.r).find(|&c| c != excl && row[c].is_none())
    }

    /// For an uncolored edge, the smallest color missing at both endpoints,
    /// or `None` when the endpoints' missing sets are disjoint.
    pub fn happy_color(&self, g: &Multigraph, e: usize) -> Result<Option<Color>> {
        if let Some(c) = self.assigned[e] {
            return Err(Error::AlreadyColored { edge: e, color: c });
        }
        let (u, v) = g.endpoints(e);
        Ok(self.min_common_missing(u, v))
    }

    pub fn assign(&mut self, g: &Multigraph, e: usize, c: Color) -> Result<()> {
        if c >= self.r {
            return Err(Error::ColorOutOfRange { color: c, r: self.r });
        }
        if let Some(old) = self.assigned[e] {
            return Err(Error::AlreadyColored { edge: e, color: old });
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if let Some(f) = self.occupancy[w * self.r + c] {
                return Err(Error::ColorConflict {
                    vertex: w,
                    color: c,
                    occupant: f,
                });
            }
        }
        self.assigned[e] = Some(c);
        self.occupancy[u * self.r + c] = Some(e);
        self.occupancy[v * self.r + c] = Some(e);
        self.blank_count -= 1;
        Ok(())
    }

    pub fn unassign(&mut self, g: &Multigraph, e: usize) -> Result<Color> {
        let c = self.assigned[e].ok_or(Error::NotColored { edge: e })?;
        let (u, v) = g.endpoints(e);
        self.assigned[e] = None;
        self.occupancy[u * self.r + c] = None;
        self.occupancy[v * self.r + c] = None;
        self.blank_count += 1;
        Ok(c)
    }

    /// Properness by full rescan of the assignment, independent of the
    /// occupancy index.
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        let mut seen: Vec<Option<usize>> = vec![None; self.r];
        for v in 0..g.n() {
            seen.iter_mut().for_each(|s| *s = None);
            for &e in g.incident(v) {
                if let Some(c) = self.assigned[e] {
                    if seen[c].is_some() {
                        return false;
                    }
                    seen[c] = Some(e);
                }
            }
        }
        true
    }

    /// Rebuilds the occupancy index from the assignment and compares; used by
    /// the debug-invariants mode and the consistency tests.
    pub fn check_consistency(&self, g: &Multigraph) -> Result<()> {
        if !self.is_proper(g) {
            return Err(Error::internal("assignment is not proper"));
        }
        let mut rebuilt = vec![None; g.n() * self.r];
        let mut blanks = 0;
        for e in 0..g.m() {
            match self.assigned[e] {
                Some(c) => {
                    let (u, v) = g.endpoints(e);
                    rebuilt[u * self.r + c] = Some(e);
                    rebuilt[v * self.r + c] = Some(e);
                }
                None => blanks += 1,
            }
        }
        if rebuilt != self.occupancy {
            return Err(Error::internal("occupancy index disagrees with assignment"));
        }
        if blanks != self.blank_count {
            return Err(Error::internal("blank count disagrees with assignment"));
        }
        Ok(())
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut used = vec![false; self.r];
        for c in self.assigned.iter().flatten() {
            used[*c] = true;
        }
        used.iter().filter(|&&u| u).count()
    }

    pub fn probe_count(&self) -> u64 {
        self.probes.get()
    }

    pub fn reset_probe_count(&self) {
        self.probes.set(0);
    }
}

/// Coloring output file: one line `edge_id u v color` per edge (`-1` for
/// blank), then a trailing `# colors_used K` line.
pub fn write_coloring(g: &Multigraph, phi: &PartialColoring) -> String {
    let mut out = String::new();
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        let c = phi.get(e).map(|c| c as i64).unwrap_or(-1);
        let _ = writeln!(out, "{e} {u} {v} {c}");
    }
    let _ = writeln!(out, "# colors_used {}", phi.colors_used());
    out
}

/// Reads a coloring file back against its graph. The palette size is taken
/// as `bound` (colors must be below it); properness is validated.
pub fn parse_coloring(g: &Multigraph, text: &str, bound: usize) -> Result<PartialColoring> {
    let raw = read_coloring_raw(g, text)?;
    let pairs: Vec<(usize, Color)> = raw
        .iter()
        .enumerate()
        .filter_map(|(e, c)| c.map(|c| (e, c)))
        .collect();
    PartialColoring::with_assignments(g, bound, &pairs)
}

/// Parses a coloring file into a raw per-edge assignment, validating the
/// format (edge ids, endpoints, one line per edge) but not properness. The
/// verification oracle consumes this, so corrupt colorings can be reported
/// on rather than rejected at parse time.
pub fn read_coloring_raw(g: &Multigraph, text: &str) -> Result<Vec<Option<Color>>> {
    let mut out: Vec<Option<Color>> = vec![None; g.m()];
    let mut seen = vec![false; g.m()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "expected `edge_id u v color`".into(),
            });
        }
        let parse = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("bad integer `{s}`"),
            })
        };
        let e = parse(fields[0])? as usize;
        let u = parse(fields[1])? as usize;
        let v = parse(fields[2])? as usize;
        let c = parse(fields[3])?;
        if e >= g.m() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("edge id {e} out of range"),
            });
        }
        let (gu, gv) = g.endpoints(e);
        if (u, v) != (gu, gv) && (v, u) != (gu, gv) {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("edge {e} endpoints disagree with graph"),
            });
        }
        if seen[e] {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("duplicate line for edge {e}"),
            });
        }
        seen[e] = true;
        if c >= 0 {
            out[e] = Some(c as usize);
        }
    }
    Ok(out)
}
