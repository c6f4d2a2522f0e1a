//! Bounded search tree for small hitting sets.

use super::{KernelResult, SegmentSet};
use crate::geometry::SegmentId;

/// Smallest hitting set of size at most `budget`, lexicographically least
/// among those of minimum size.
///
/// Branches on the elements of a smallest unhit set (so singletons are
/// forced), with iterative deepening on the budget. Every minimum hitting set
/// is reached by some branch, which makes the lexicographic choice exact.
pub fn min_hitting_set(family: &[SegmentSet], budget: usize) -> Option<SegmentSet> {
    let all: Vec<&SegmentSet> = family.iter().collect();
    let mut chosen = Vec::new();
    for depth in 0..=budget {
        let mut best = None;
        branch(&all, &mut chosen, depth, &mut best);
        if best.is_some() {
            return best;
        }
    }
    None
}

fn branch(unhit: &[&SegmentSet], chosen: &mut Vec<SegmentId>, left: usize, best: &mut Option<SegmentSet>) {
    let Some(pivot) = unhit.iter().min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b))) else {
        let found: SegmentSet = chosen.iter().copied().collect();
        if best.as_ref().map_or(true, |b| found < *b) {
            *best = Some(found);
        }
        return;
    };
    if left == 0 {
        return;
    }
    for &e in pivot.iter() {
        let rest: Vec<&SegmentSet> = unhit.iter().copied().filter(|s| !s.contains(&e)).collect();
        chosen.push(e);
        branch(&rest, chosen, left - 1, best);
        chosen.pop();
    }
}

/// Solves a kernel with its own budget; `None` when the kernel step already
/// ruled out a solution or no hitting set of size `k` exists.
pub fn solve_hitting(kr: &KernelResult) -> Option<SegmentSet> {
    let inst = kr.kernel()?;
    min_hitting_set(&inst.family, inst.k)
}
