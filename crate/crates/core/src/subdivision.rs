//! Minimum cover of a rectangular subdivision given as a split tree.
//!
//! Every node of the tree owns a rectangle whose four sides each lie on a
//! single segment: an outer edge or the splitting segment of an ancestor.
//! For each of the 16 subsets of sides assumed selected, the table stores
//! the least number of segments strictly inside the rectangle needed to cover
//! all of its cells. A leaf is covered exactly when some side is selected. An
//! internal node fixes three sides of each child from its own choice, so only
//! the splitting segment is free and both options are tried.
//!
//! Sides shared with the parent are paid for once, at the root, where the
//! outer face is also covered by requiring a non-empty side set.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::{Axis, Bounds, Segment, SegmentId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("rectangle [{0}, {1}] x [{2}, {3}] has zero area")]
    DegenerateRectangle(i64, i64, i64, i64),
    #[error("split at {coord} is not strictly inside ({lo}, {hi})")]
    SplitOutOfRange { coord: i64, lo: i64, hi: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf,
    /// A horizontal split cuts at `y = coord` (`low` below, `high` above);
    /// a vertical split cuts at `x = coord` (`low` left, `high` right).
    Split { axis: Axis, coord: i64, low: Box<Node>, high: Box<Node> },
}

impl Node {
    pub fn split(axis: Axis, coord: i64, low: Node, high: Node) -> Node {
        Node::Split { axis, coord, low: Box::new(low), high: Box::new(high) }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Split { low, high, .. } => 1 + low.node_count() + high.node_count(),
        }
    }

    pub fn split_count(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Split { low, high, .. } => 1 + low.split_count() + high.split_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivTree {
    pub rect: Bounds,
    pub root: Node,
}

fn halves(rect: Bounds, axis: Axis, coord: i64) -> (Bounds, Bounds) {
    match axis {
        Axis::Horizontal => (Bounds { y1: coord, ..rect }, Bounds { y0: coord, ..rect }),
        Axis::Vertical => (Bounds { x1: coord, ..rect }, Bounds { x0: coord, ..rect }),
    }
}

pub fn validate_tree(t: &SubdivTree) -> Result<(), TreeError> {
    let r = t.rect;
    if r.x0 >= r.x1 || r.y0 >= r.y1 {
        return Err(TreeError::DegenerateRectangle(r.x0, r.x1, r.y0, r.y1));
    }
    let mut stack = vec![(&t.root, r)];
    while let Some((node, rect)) = stack.pop() {
        if let Node::Split { axis, coord, low, high } = node {
            let (lo, hi) = match axis {
                Axis::Horizontal => (rect.y0, rect.y1),
                Axis::Vertical => (rect.x0, rect.x1),
            };
            if !(lo < *coord && *coord < hi) {
                return Err(TreeError::SplitOutOfRange { coord: *coord, lo, hi });
            }
            let (a, b) = halves(rect, *axis, *coord);
            stack.push((high, b));
            stack.push((low, a));
        }
    }
    Ok(())
}

/// Subset of the four sides of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideSet(pub u8);

impl SideSet {
    pub const BOTTOM: u8 = 1;
    pub const RIGHT: u8 = 2;
    pub const TOP: u8 = 4;
    pub const LEFT: u8 = 8;
    pub const EMPTY: SideSet = SideSet(0);

    pub fn all() -> impl Iterator<Item = SideSet> {
        (0..16).map(SideSet)
    }

    pub fn has(self, side: u8) -> bool {
        self.0 & side != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SideSet) -> bool {
        self.0 & !other.0 == 0
    }

    fn keep(self, sides: u8) -> SideSet {
        SideSet(self.0 & sides)
    }

    fn with(self, side: u8, on: bool) -> SideSet {
        if on {
            SideSet(self.0 | side)
        } else {
            self
        }
    }
}

/// Side sets handed to the low and high child for a parent side set and a
/// choice for the splitting segment.
fn child_sides(axis: Axis, parent: SideSet, split_in: bool) -> (SideSet, SideSet) {
    use SideSet as S;
    match axis {
        Axis::Vertical => (
            parent.keep(S::BOTTOM | S::TOP | S::LEFT).with(S::RIGHT, split_in),
            parent.keep(S::BOTTOM | S::TOP | S::RIGHT).with(S::LEFT, split_in),
        ),
        Axis::Horizontal => (
            parent.keep(S::BOTTOM | S::LEFT | S::RIGHT).with(S::TOP, split_in),
            parent.keep(S::TOP | S::LEFT | S::RIGHT).with(S::BOTTOM, split_in),
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpEntry {
    /// Interior segments needed; `None` when no selection works.
    pub cost: Option<u32>,
    pub split_in: bool,
}

/// Per-node tables, indexed by pre-order position, then by `SideSet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    pub entries: Vec<[DpEntry; 16]>,
    pub evaluations: usize,
}

struct Flat {
    axis: Option<Axis>,
    low: usize,
    high: usize,
    segment: SegmentId,
}

/// Pre-order flattening; internal nodes get segment ids from 4 upward.
fn flatten(root: &Node) -> Vec<Flat> {
    let mut out = Vec::new();
    let mut next_id = 4;
    fn walk(node: &Node, out: &mut Vec<Flat>, next_id: &mut u32) -> usize {
        let me = out.len();
        match node {
            Node::Leaf => out.push(Flat { axis: None, low: 0, high: 0, segment: SegmentId(u32::MAX) }),
            Node::Split { axis, low, high, .. } => {
                out.push(Flat { axis: Some(*axis), low: 0, high: 0, segment: SegmentId(*next_id) });
                *next_id += 1;
                let l = walk(low, out, next_id);
                let h = walk(high, out, next_id);
                out[me].low = l;
                out[me].high = h;
            }
        }
        me
    }
    walk(root, &mut out, &mut next_id);
    out
}

fn add(a: Option<u32>, b: Option<u32>, extra: u32) -> Option<u32> {
    Some(a? + b? + extra)
}

/// Fills the table bottom-up. Ties between leaving the splitting segment out
/// or taking it go to taking it: its id precedes every id below it, so that
/// choice yields the lexicographically smaller set.
pub fn dp_table(t: &SubdivTree) -> DpTable {
    let flat = flatten(&t.root);
    let blank = DpEntry { cost: None, split_in: false };
    let mut entries = vec![[blank; 16]; flat.len()];
    let mut evaluations = 0;
    for v in (0..flat.len()).rev() {
        for s in SideSet::all() {
            evaluations += 1;
            entries[v][s.0 as usize] = match flat[v].axis {
                None => DpEntry { cost: (!s.is_empty()).then_some(0), split_in: false },
                Some(axis) => {
                    let option = |split_in: bool| {
                        let (a, b) = child_sides(axis, s, split_in);
                        add(
                            entries[flat[v].low][a.0 as usize].cost,
                            entries[flat[v].high][b.0 as usize].cost,
                            split_in as u32,
                        )
                    };
                    let (out, inside) = (option(false), option(true));
                    match (out, inside) {
                        (Some(o), Some(i)) if o < i => DpEntry { cost: Some(o), split_in: false },
                        (Some(o), None) => DpEntry { cost: Some(o), split_in: false },
                        (_, i) => DpEntry { cost: i, split_in: true },
                    }
                }
            };
        }
    }
    DpTable { entries, evaluations }
}

fn reconstruct(flat: &[Flat], table: &DpTable, root_sides: SideSet) -> BTreeSet<SegmentId> {
    let mut chosen: BTreeSet<SegmentId> =
        (0..4).filter(|b| root_sides.has(1 << b)).map(|b| SegmentId(b as u32)).collect();
    let mut stack = vec![(0usize, root_sides)];
    while let Some((v, s)) = stack.pop() {
        if let Some(axis) = flat[v].axis {
            let split_in = table.entries[v][s.0 as usize].split_in;
            if split_in {
                chosen.insert(flat[v].segment);
            }
            let (a, b) = child_sides(axis, s, split_in);
            stack.push((flat[v].low, a));
            stack.push((flat[v].high, b));
        }
    }
    chosen
}

/// Minimum cover of all cells including the outer face, with the table used.
pub fn dp_solve(t: &SubdivTree) -> Result<(BTreeSet<SegmentId>, DpTable), TreeError> {
    validate_tree(t)?;
    let flat = flatten(&t.root);
    let table = dp_table(t);
    let total = |s: SideSet| table.entries[0][s.0 as usize].cost.map(|c| c + s.len());
    let best = SideSet::all().filter(|s| !s.is_empty()).filter_map(total).min().expect("all four sides cover");
    let cover = SideSet::all()
        .filter(|s| !s.is_empty() && total(*s) == Some(best))
        .map(|s| reconstruct(&flat, &table, s))
        .min()
        .expect("at least one optimal side set");
    Ok((cover, table))
}

pub fn dp_cover(t: &SubdivTree) -> Result<BTreeSet<SegmentId>, TreeError> {
    dp_solve(t).map(|(cover, _)| cover)
}

/// Outer edges get ids 0..=3 (bottom, right, top, left), then one spanning
/// segment per split in pre-order.
pub fn tree_to_segments(t: &SubdivTree) -> Result<Vec<Segment>, TreeError> {
    validate_tree(t)?;
    let r = t.rect;
    let mut segs = vec![
        Segment::horizontal(0, r.y0, r.x0, r.x1),
        Segment::vertical(1, r.x1, r.y0, r.y1),
        Segment::horizontal(2, r.y1, r.x0, r.x1),
        Segment::vertical(3, r.x0, r.y0, r.y1),
    ];
    // Carrying segment index per side, in SideSet bit order.
    let mut stack = vec![(&t.root, r, [0usize, 1, 2, 3])];
    while let Some((node, rect, sides)) = stack.pop() {
        for (b, &carrier) in sides.iter().enumerate() {
            let s = &segs[carrier];
            let (lo, hi, fixed) = match b {
                0 => (rect.x0, rect.x1, rect.y0),
                1 => (rect.y0, rect.y1, rect.x1),
                2 => (rect.x0, rect.x1, rect.y1),
                _ => (rect.y0, rect.y1, rect.x0),
            };
            assert!(
                s.fixed == fixed && s.lo <= lo && hi <= s.hi,
                "side {b} of {rect:?} is not carried by segment {}",
                s.id
            );
        }
        if let Node::Split { axis, coord, low, high } = node {
            let id = segs.len() as u32;
            let (lo_rect, hi_rect) = halves(rect, *axis, *coord);
            let new = segs.len();
            let (low_sides, high_sides) = match axis {
                Axis::Horizontal => {
                    segs.push(Segment::horizontal(id, *coord, rect.x0, rect.x1));
                    ([sides[0], sides[1], new, sides[3]], [new, sides[1], sides[2], sides[3]])
                }
                Axis::Vertical => {
                    segs.push(Segment::vertical(id, *coord, rect.y0, rect.y1));
                    ([sides[0], new, sides[2], sides[3]], [sides[0], sides[1], sides[2], new])
                }
            };
            // Pre-order: the low subtree is numbered before the high one.
            stack.push((high, hi_rect, high_sides));
            stack.push((low, lo_rect, low_sides));
        }
    }
    Ok(segs)
}
