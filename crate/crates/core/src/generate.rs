//! Seeded random instances and split trees for tests and the `gen` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{validate_segments, Axis, Bounds, Segment};
use crate::subdivision::{Node, SubdivTree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_segments` segments with coordinates in `0..=coord_max`.
///
/// Half of the instances draw endpoints from a few shared values, which
/// produces many crossings and rectangular cells; the rest are unstructured.
/// Segments that would overlap a collinear one are redrawn.
pub fn random_instance(rng: &mut impl Rng, max_segments: usize, coord_max: i64) -> Vec<Segment> {
    assert!(max_segments >= 1 && coord_max >= 1);
    let target = rng.gen_range(1..=max_segments);
    let values: Vec<i64> = if rng.gen_bool(0.5) {
        let mut all: Vec<i64> = (0..=coord_max).collect();
        all.shuffle(rng);
        let mut v = all[..rng.gen_range(3..=6).min(all.len())].to_vec();
        v.sort_unstable();
        v
    } else {
        (0..=coord_max).collect()
    };
    let mut segs: Vec<Segment> = Vec::with_capacity(target);
    let mut attempts = 0;
    while segs.len() < target && attempts < 50 * max_segments {
        attempts += 1;
        let fixed = *values.choose(rng).unwrap();
        let a = *values.choose(rng).unwrap();
        let b = *values.choose(rng).unwrap();
        if a == b {
            continue;
        }
        let id = segs.len() as u32;
        let seg = if rng.gen_bool(0.5) {
            Segment::horizontal(id, fixed, a, b)
        } else {
            Segment::vertical(id, fixed, a, b)
        };
        segs.push(seg);
        if validate_segments(&segs).is_err() {
            segs.pop();
        }
    }
    if segs.is_empty() {
        segs.push(Segment::horizontal(0, 0, 0, coord_max));
    }
    segs
}

/// A split tree on `[0, side]^2` with at most `max_splits` internal nodes.
pub fn random_tree(rng: &mut impl Rng, max_splits: usize, side: i64) -> SubdivTree {
    let rect = Bounds { x0: 0, y0: 0, x1: side, y1: side };
    let budget = rng.gen_range(0..=max_splits);
    SubdivTree { rect, root: grow(rng, rect, budget) }
}

fn grow(rng: &mut impl Rng, r: Bounds, budget: usize) -> Node {
    let mut axes = Vec::new();
    if r.x1 - r.x0 >= 2 {
        axes.push(Axis::Vertical);
    }
    if r.y1 - r.y0 >= 2 {
        axes.push(Axis::Horizontal);
    }
    let Some(&axis) = axes.choose(rng) else { return Node::Leaf };
    if budget == 0 {
        return Node::Leaf;
    }
    let (lo, hi) = match axis {
        Axis::Vertical => (r.x0, r.x1),
        Axis::Horizontal => (r.y0, r.y1),
    };
    let coord = rng.gen_range(lo + 1..hi);
    let (a, b) = match axis {
        Axis::Vertical => (Bounds { x1: coord, ..r }, Bounds { x0: coord, ..r }),
        Axis::Horizontal => (Bounds { y1: coord, ..r }, Bounds { y0: coord, ..r }),
    };
    let left = rng.gen_range(0..budget);
    Node::split(axis, coord, grow(rng, a, left), grow(rng, b, budget - 1 - left))
}
