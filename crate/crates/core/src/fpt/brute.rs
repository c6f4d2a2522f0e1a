//! Exhaustive minimum cover and the end-to-end cover pipeline.

use super::{extract_rect_instance, kernelize, min_hitting_set, solve_hitting, CoverError, SegmentSet};
use crate::geometry::{Arrangement, Mode};

/// Default limit on the segment count for exhaustive search.
pub const DEFAULT_GUARD: usize = 24;
/// Hard limit imposed by the 64-bit subset masks.
pub const MAX_GUARD: usize = 64;

/// Minimum cover by enumerating subsets by increasing size, lexicographic
/// within a size. Returns the first subset that covers.
pub fn brute_force_cover(arr: &Arrangement, mode: Mode, guard: usize) -> Result<SegmentSet, CoverError> {
    let n = arr.segments.len();
    let guard = guard.min(MAX_GUARD);
    if n > guard {
        return Err(CoverError::SizeGuardExceeded { segments: n, guard });
    }
    let masks: Vec<u64> = arr
        .required_cells(mode)
        .map(|c| {
            c.defining
                .iter()
                .map(|id| arr.segments.binary_search_by_key(id, |s| s.id).expect("defining id is a segment"))
                .fold(0u64, |m, i| m | 1 << i)
        })
        .collect();

    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let mask = pick.iter().fold(0u64, |m, &i| m | 1 << i);
            if masks.iter().all(|&c| c & mask != 0) {
                return Ok(pick.iter().map(|&i| arr.segments[i].id).collect());
            }
            // Advance to the next combination in lexicographic order.
            let Some(pos) = (0..size).rev().find(|&p| pick[p] < n - size + p) else { break };
            pick[pos] += 1;
            for q in pos + 1..size {
                pick[q] = pick[q - 1] + 1;
            }
        }
    }
    unreachable!("the full segment set covers every cell")
}

/// Where a bounded cover search gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedStage {
    Kernel,
    Search,
}

impl FailedStage {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailedStage::Kernel => "kernel",
            FailedStage::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    Found(SegmentSet),
    NoCover { stage: FailedStage },
}

/// Minimum cover under `mode`, or `None` when `k` is given and no cover of
/// size at most `k` exists.
///
/// Rectangular mode goes through the kernel; without `k` it tries
/// `k = 0, 1, 2, ...`. Mode `all` has no kernel: with `k` it runs the bounded
/// search over all cells, without `k` it falls back to exhaustive search
/// limited by `guard`.
pub fn min_cover(
    arr: &Arrangement,
    mode: Mode,
    k: Option<usize>,
    guard: usize,
) -> Result<Option<SegmentSet>, CoverError> {
    Ok(match min_cover_outcome(arr, mode, k, guard)? {
        CoverOutcome::Found(s) => Some(s),
        CoverOutcome::NoCover { .. } => None,
    })
}

pub fn min_cover_outcome(
    arr: &Arrangement,
    mode: Mode,
    k: Option<usize>,
    guard: usize,
) -> Result<CoverOutcome, CoverError> {
    match (mode, k) {
        (Mode::Rect, Some(k)) => Ok(rect_with_budget(arr, k)),
        (Mode::Rect, None) => Ok((0..=arr.segments.len())
            .find_map(|k| match rect_with_budget(arr, k) {
                CoverOutcome::Found(s) => Some(CoverOutcome::Found(s)),
                CoverOutcome::NoCover { .. } => None,
            })
            .expect("the full segment set is a cover")),
        (Mode::All, Some(k)) => {
            let family: Vec<SegmentSet> = arr.cells.iter().map(|c| c.defining.clone()).collect();
            Ok(match min_hitting_set(&family, k) {
                Some(s) => CoverOutcome::Found(s),
                None => CoverOutcome::NoCover { stage: FailedStage::Search },
            })
        }
        (Mode::All, None) => match brute_force_cover(arr, Mode::All, guard) {
            Ok(s) => Ok(CoverOutcome::Found(s)),
            Err(CoverError::SizeGuardExceeded { segments, guard }) => {
                Err(CoverError::BudgetRequired { segments, guard })
            }
            Err(e) => Err(e),
        },
    }
}

fn rect_with_budget(arr: &Arrangement, k: usize) -> CoverOutcome {
    let kr = kernelize(&extract_rect_instance(arr, k));
    if kr.kernel().is_none() {
        return CoverOutcome::NoCover { stage: FailedStage::Kernel };
    }
    match solve_hitting(&kr) {
        Some(s) => CoverOutcome::Found(s),
        None => CoverOutcome::NoCover { stage: FailedStage::Search },
    }
}
