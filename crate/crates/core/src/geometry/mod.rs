//! Axis-aligned segments, the arrangement they induce, and cover checks.
//!
//! Two independent constructions of the arrangement live here: a half-edge
//! face walk ([`build_arrangement`]) and a coordinate-compressed flood fill
//! ([`gridfill_oracle`]). Both emit cells in the same canonical order, so
//! their outputs can be compared directly.
//!
//! A segment *defines* a cell when the segment and the cell boundary share a
//! piece of positive length. Touching the boundary with an endpoint only does
//! not count.

mod dcel;
mod grid;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dcel::{build_arrangement, GraphCounts};
pub use grid::gridfill_oracle;

/// Stable identifier of an input segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SegmentId(pub u32);

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for SegmentId {
    fn from(v: u32) -> Self {
        SegmentId(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("instance contains no segments")]
    EmptyInput,
    #[error("segment id {0} appears more than once")]
    DuplicateId(SegmentId),
    #[error("collinear segments {0} and {1} overlap")]
    OverlappingCollinear(SegmentId, SegmentId),
    #[error("segment {0} is not axis-aligned")]
    NotAxisAligned(SegmentId),
    #[error("segment {0} has zero length")]
    Degenerate(SegmentId),
    #[error("unknown segment id {0}")]
    UnknownSegmentId(SegmentId),
}

/// A closed axis-aligned segment with integer coordinates.
///
/// `fixed` is the y coordinate of a horizontal segment or the x coordinate
/// of a vertical one; `lo..=hi` is its span along the other axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub id: SegmentId,
    pub axis: Axis,
    pub fixed: i64,
    pub lo: i64,
    pub hi: i64,
}

impl Segment {
    pub fn new(id: SegmentId, axis: Axis, fixed: i64, lo: i64, hi: i64) -> Result<Self, GeometryError> {
        if lo >= hi {
            return Err(GeometryError::Degenerate(id));
        }
        Ok(Segment { id, axis, fixed, lo, hi })
    }

    /// Horizontal segment at height `y`; the span endpoints may come in any order.
    ///
    /// Panics if `x1 == x2`.
    pub fn horizontal(id: u32, y: i64, x1: i64, x2: i64) -> Self {
        assert_ne!(x1, x2, "degenerate horizontal segment {id}");
        Segment { id: SegmentId(id), axis: Axis::Horizontal, fixed: y, lo: x1.min(x2), hi: x1.max(x2) }
    }

    /// Vertical segment at `x`; panics if `y1 == y2`.
    pub fn vertical(id: u32, x: i64, y1: i64, y2: i64) -> Self {
        assert_ne!(y1, y2, "degenerate vertical segment {id}");
        Segment { id: SegmentId(id), axis: Axis::Vertical, fixed: x, lo: y1.min(y2), hi: y1.max(y2) }
    }

    pub fn from_endpoints(id: SegmentId, x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Self, GeometryError> {
        match (x1 == x2, y1 == y2) {
            (true, true) => Err(GeometryError::Degenerate(id)),
            (false, false) => Err(GeometryError::NotAxisAligned(id)),
            (true, false) => Segment::new(id, Axis::Vertical, x1, y1.min(y2), y1.max(y2)),
            (false, true) => Segment::new(id, Axis::Horizontal, y1, x1.min(x2), x1.max(x2)),
        }
    }

    /// Endpoints as `(x1, y1, x2, y2)` with the lower endpoint first.
    pub fn endpoints(&self) -> (i64, i64, i64, i64) {
        match self.axis {
            Axis::Horizontal => (self.lo, self.fixed, self.hi, self.fixed),
            Axis::Vertical => (self.fixed, self.lo, self.fixed, self.hi),
        }
    }

    pub fn contains_point(&self, x: i64, y: i64) -> bool {
        let (along, across) = match self.axis {
            Axis::Horizontal => (x, y),
            Axis::Vertical => (y, x),
        };
        across == self.fixed && self.lo <= along && along <= self.hi
    }

    /// True when the two closed segments share at least one point.
    pub fn intersects(&self, other: &Segment) -> bool {
        if self.axis == other.axis {
            self.fixed == other.fixed && self.lo <= other.hi && other.lo <= self.hi
        } else {
            self.lo <= other.fixed && other.fixed <= self.hi && other.lo <= self.fixed && self.fixed <= other.hi
        }
    }
}

/// Exact rational `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn integer(v: i64) -> Self {
        Rational { num: v as i128, den: 1 }
    }

    pub fn midpoint(a: i64, b: i64) -> Self {
        Rational { num: a as i128 + b as i128, den: 2 }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point strictly inside a cell. Ordered by x, then y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub x: Rational,
    pub y: Rational,
}

/// Closed axis-aligned box `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub bounded: bool,
    pub defining: BTreeSet<SegmentId>,
    pub rectangular: bool,
    pub witness: Witness,
    /// Bounding box of the closure; `None` for the unbounded cell.
    pub bounds: Option<Bounds>,
}

/// Which cells a cover has to hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Rect,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Rect => "rect",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Mode::All),
            "rect" => Ok(Mode::Rect),
            other => Err(format!("unknown mode '{other}' (expected 'all' or 'rect')")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The cells induced by a validated segment set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    /// Sorted by id.
    pub segments: Vec<Segment>,
    /// Bounded cells by witness, the unbounded cell last.
    pub cells: Vec<Cell>,
}

impl Arrangement {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn segment_ids(&self) -> impl Iterator<Item = SegmentId> + '_ {
        self.segments.iter().map(|s| s.id)
    }

    pub fn segment(&self, id: SegmentId) -> Option<&Segment> {
        self.segments.binary_search_by_key(&id, |s| s.id).ok().map(|i| &self.segments[i])
    }

    pub fn unbounded_cell(&self) -> &Cell {
        self.cells.last().expect("an arrangement always has an unbounded cell")
    }

    pub fn rectangular_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.rectangular)
    }

    /// Cells a cover must hit under `mode`.
    pub fn required_cells(&self, mode: Mode) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| mode == Mode::All || c.rectangular)
    }
}

/// Checks ids, degeneracy and collinear overlap; returns the segments sorted by id.
pub fn validate_segments(segments: &[Segment]) -> Result<Vec<Segment>, GeometryError> {
    if segments.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let mut sorted = segments.to_vec();
    sorted.sort_by_key(|s| s.id);
    for w in sorted.windows(2) {
        if w[0].id == w[1].id {
            return Err(GeometryError::DuplicateId(w[0].id));
        }
    }
    if let Some(s) = sorted.iter().find(|s| s.lo >= s.hi) {
        return Err(GeometryError::Degenerate(s.id));
    }

    let mut lines: BTreeMap<(bool, i64), Vec<&Segment>> = BTreeMap::new();
    for s in &sorted {
        lines.entry((s.axis == Axis::Horizontal, s.fixed)).or_default().push(s);
    }
    for group in lines.values_mut() {
        group.sort_by_key(|s| (s.lo, s.id));
        let mut reach = group[0];
        for s in &group[1..] {
            if s.lo < reach.hi {
                let (a, b) = if reach.id < s.id { (reach.id, s.id) } else { (s.id, reach.id) };
                return Err(GeometryError::OverlappingCollinear(a, b));
            }
            if s.hi > reach.hi {
                reach = s;
            }
        }
    }
    Ok(sorted)
}

/// Sorted distinct x and y coordinates of all segment endpoints.
pub(crate) fn coordinate_axes(segments: &[Segment]) -> (Vec<i64>, Vec<i64>) {
    let mut xs = Vec::with_capacity(segments.len() * 2);
    let mut ys = Vec::with_capacity(segments.len() * 2);
    for s in segments {
        let (x1, y1, x2, y2) = s.endpoints();
        xs.extend([x1, x2]);
        ys.extend([y1, y2]);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    (xs, ys)
}

/// Witness used for the unbounded cell: below and left of everything.
pub(crate) fn unbounded_witness(xs: &[i64], ys: &[i64]) -> Witness {
    Witness { x: Rational::integer(xs[0] - 1), y: Rational::integer(ys[0] - 1) }
}

/// Sorts cells into canonical order and renumbers them.
pub(crate) fn canonicalize(mut cells: Vec<Cell>) -> Vec<Cell> {
    cells.sort_by(|a, b| (!a.bounded, a.witness).cmp(&(!b.bounded, b.witness)));
    for (i, c) in cells.iter_mut().enumerate() {
        c.id = i;
    }
    cells
}

/// True iff every required cell has a defining segment in `chosen`.
pub fn is_cover(arr: &Arrangement, chosen: &BTreeSet<SegmentId>, mode: Mode) -> Result<bool, GeometryError> {
    if let Some(&bad) = chosen.iter().find(|&&id| arr.segment(id).is_none()) {
        return Err(GeometryError::UnknownSegmentId(bad));
    }
    Ok(arr.required_cells(mode).all(|c| !c.defining.is_disjoint(chosen)))
}

/// Vertex, edge and face counts of the planar graph behind an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerCheck {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

impl EulerCheck {
    /// `V - E + F = 1 + C` holds for every planar graph with `C` components.
    pub fn holds(&self) -> bool {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 == 1 + self.components as i64
    }
}

pub fn euler_check(arr: &Arrangement) -> EulerCheck {
    let g = GraphCounts::of(&arr.segments);
    EulerCheck { vertices: g.vertices, edges: g.edges, faces: arr.cell_count(), components: g.components }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn box4() -> Vec<Segment> {
        vec![
            Segment::horizontal(0, 0, 0, 4),
            Segment::vertical(1, 4, 0, 4),
            Segment::horizontal(2, 4, 0, 4),
            Segment::vertical(3, 0, 0, 4),
        ]
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(validate_segments(&[]), Err(GeometryError::EmptyInput));
        let mut dup = box4();
        dup.push(Segment::horizontal(1, 9, 0, 1));
        assert_eq!(validate_segments(&dup), Err(GeometryError::DuplicateId(SegmentId(1))));
        let mut overlap = box4();
        overlap.push(Segment::horizontal(7, 0, 3, 6));
        assert_eq!(
            validate_segments(&overlap),
            Err(GeometryError::OverlappingCollinear(SegmentId(0), SegmentId(7)))
        );
        assert_eq!(
            Segment::from_endpoints(SegmentId(5), 0, 0, 1, 1),
            Err(GeometryError::NotAxisAligned(SegmentId(5)))
        );
        assert_eq!(
            Segment::from_endpoints(SegmentId(5), 2, 2, 2, 2),
            Err(GeometryError::Degenerate(SegmentId(5)))
        );
    }

    #[test]
    fn collinear_touching_is_allowed() {
        let segs = vec![Segment::horizontal(0, 0, 0, 2), Segment::horizontal(1, 0, 2, 5)];
        assert!(validate_segments(&segs).is_ok());
    }

    #[test]
    fn overlap_hidden_behind_long_segment() {
        // 1 is contained in 0, 2 starts after 1 ends but inside 0.
        let segs = vec![
            Segment::vertical(0, 0, 0, 10),
            Segment::vertical(1, 0, 1, 2),
            Segment::vertical(2, 0, 5, 12),
        ];
        assert_eq!(
            validate_segments(&segs),
            Err(GeometryError::OverlappingCollinear(SegmentId(0), SegmentId(1)))
        );
    }

    #[test]
    fn rational_order() {
        assert!(Rational::midpoint(1, 2) < Rational::integer(2));
        assert_eq!(Rational { num: 3, den: 2 }.cmp(&Rational { num: 6, den: 4 }), Ordering::Equal);
    }

    #[test]
    fn cover_rejects_unknown_ids() {
        let arr = build_arrangement(&box4()).unwrap();
        let chosen: BTreeSet<_> = [SegmentId(42)].into();
        assert_eq!(is_cover(&arr, &chosen, Mode::All), Err(GeometryError::UnknownSegmentId(SegmentId(42))));
    }
}
