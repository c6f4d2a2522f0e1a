//! Kernelization and exact solving of the rectangular-cell cover problem.
//!
//! Every rectangular cell is represented by the set of its four defining
//! segments, which turns cell covering into hitting set. Two counting passes
//! shrink the family while preserving every minimum hitting set of size at
//! most `k`:
//!
//! 1. a pair of segments shared by more than `2k` sets is replaced by the
//!    two-element set of that pair;
//! 2. a segment contained in more than `2k^2` of the resulting sets is
//!    replaced by its singleton.
//!
//! Any three segments lie together on at most two rectangular cells, so a
//! segment outside a collapsed pair can hit at most two of the pair's sets.
//! After both passes a single segment hits at most `2k^2` sets, hence a family
//! larger than `2k^3` has no hitting set of size `k`.

mod brute;
mod search;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Arrangement, GeometryError, SegmentId};

pub use brute::{brute_force_cover, min_cover, min_cover_outcome, CoverOutcome, FailedStage, DEFAULT_GUARD, MAX_GUARD};
pub use search::{min_hitting_set, solve_hitting};

pub type SegmentSet = BTreeSet<SegmentId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("{segments} segments exceed the brute-force guard of {guard}")]
    SizeGuardExceeded { segments: usize, guard: usize },
    #[error("{segments} segments exceed the brute-force guard of {guard}; pass a budget k")]
    BudgetRequired { segments: usize, guard: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A family of segment sets to be hit with at most `k` segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingInstance {
    pub universe: SegmentSet,
    pub family: Vec<SegmentSet>,
    pub k: usize,
}

/// One collapse performed by a reduction pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceEvent {
    Pair { segments: [SegmentId; 2], count: usize },
    Singleton { segment: SegmentId, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelOutcome {
    Kernel,
    Infeasible,
}

/// Number of family sets visited by each counting pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub pair_pass_visits: usize,
    pub singleton_pass_visits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub outcome: KernelOutcome,
    /// The fully reduced family; a kernel only when `outcome` is `Kernel`.
    pub instance: HittingInstance,
    pub trace: Vec<TraceEvent>,
    pub stats: KernelStats,
}

impl KernelResult {
    pub fn kernel(&self) -> Option<&HittingInstance> {
        match self.outcome {
            KernelOutcome::Kernel => Some(&self.instance),
            KernelOutcome::Infeasible => None,
        }
    }
}

/// One four-element set per rectangular cell; the universe is every segment.
pub fn extract_rect_instance(arr: &Arrangement, k: usize) -> HittingInstance {
    HittingInstance {
        universe: arr.segment_ids().collect(),
        family: arr.rectangular_cells().map(|c| c.defining.clone()).collect(),
        k,
    }
}

fn pair_threshold(k: usize) -> u128 {
    2 * k as u128
}

fn singleton_threshold(k: usize) -> u128 {
    2 * (k as u128).pow(2)
}

/// Largest family size compatible with a hitting set of size `k`.
pub fn kernel_bound(k: usize) -> u128 {
    2 * (k as u128).pow(3)
}

/// Replaces, per unordered pair, all sets containing it by the pair itself,
/// for every pair contained in more than `2k` sets. Counts come from a
/// single pass over the input family.
pub fn reduce_pairs(inst: &HittingInstance) -> HittingInstance {
    collapse_pairs(inst).0
}

fn collapse_pairs(inst: &HittingInstance) -> (HittingInstance, Vec<TraceEvent>, usize) {
    let mut holders: HashMap<(SegmentId, SegmentId), Vec<usize>> = HashMap::new();
    let mut visits = 0;
    for (i, set) in inst.family.iter().enumerate() {
        visits += 1;
        let members: Vec<SegmentId> = set.iter().copied().collect();
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                holders.entry((x, y)).or_default().push(i);
            }
        }
    }
    let mut heavy: Vec<((SegmentId, SegmentId), Vec<usize>)> =
        holders.into_iter().filter(|(_, sets)| sets.len() as u128 > pair_threshold(inst.k)).collect();
    heavy.sort_by_key(|(pair, _)| *pair);

    let mut removed = vec![false; inst.family.len()];
    let mut trace = Vec::with_capacity(heavy.len());
    for ((x, y), sets) in &heavy {
        sets.iter().for_each(|&i| removed[i] = true);
        trace.push(TraceEvent::Pair { segments: [*x, *y], count: sets.len() });
    }
    let family = rewrite(&inst.family, &removed, heavy.iter().map(|((x, y), _)| [*x, *y].into()));
    (HittingInstance { universe: inst.universe.clone(), family, k: inst.k }, trace, visits)
}

/// Replaces all sets containing a segment by its singleton, for every
/// segment contained in more than `2k^2` sets.
pub fn reduce_singletons(inst: &HittingInstance) -> HittingInstance {
    collapse_singletons(inst).0
}

fn collapse_singletons(inst: &HittingInstance) -> (HittingInstance, Vec<TraceEvent>, usize) {
    let mut holders: HashMap<SegmentId, Vec<usize>> = HashMap::new();
    let mut visits = 0;
    for (i, set) in inst.family.iter().enumerate() {
        visits += 1;
        for &x in set {
            holders.entry(x).or_default().push(i);
        }
    }
    let mut heavy: Vec<(SegmentId, Vec<usize>)> =
        holders.into_iter().filter(|(_, sets)| sets.len() as u128 > singleton_threshold(inst.k)).collect();
    heavy.sort_by_key(|(x, _)| *x);

    let mut removed = vec![false; inst.family.len()];
    let mut trace = Vec::with_capacity(heavy.len());
    for (x, sets) in &heavy {
        sets.iter().for_each(|&i| removed[i] = true);
        trace.push(TraceEvent::Singleton { segment: *x, count: sets.len() });
    }
    let family = rewrite(&inst.family, &removed, heavy.iter().map(|(x, _)| [*x].into()));
    (HittingInstance { universe: inst.universe.clone(), family, k: inst.k }, trace, visits)
}

fn rewrite(family: &[SegmentSet], removed: &[bool], added: impl Iterator<Item = SegmentSet>) -> Vec<SegmentSet> {
    family
        .iter()
        .zip(removed)
        .filter(|(_, &gone)| !gone)
        .map(|(s, _)| s.clone())
        .chain(added)
        .collect()
}

/// Pair pass, singleton pass, then the size test against `2k^3`.
pub fn kernelize(inst: &HittingInstance) -> KernelResult {
    let (first, mut trace, pair_pass_visits) = collapse_pairs(inst);
    let (instance, more, singleton_pass_visits) = collapse_singletons(&first);
    trace.extend(more);
    let outcome = if instance.family.len() as u128 > kernel_bound(inst.k) {
        KernelOutcome::Infeasible
    } else {
        KernelOutcome::Kernel
    };
    KernelResult { outcome, instance, trace, stats: KernelStats { pair_pass_visits, singleton_pass_visits } }
}
