use std::collections::BTreeSet;

use proptest::prelude::*;

use segcover::fpt::{
    brute_force_cover, extract_rect_instance, kernel_bound, kernelize, min_cover, reduce_pairs, reduce_singletons,
    solve_hitting, KernelOutcome, SegmentSet, DEFAULT_GUARD,
};
use segcover::generate::{random_instance, random_tree, rng};
use segcover::geometry::{build_arrangement, euler_check, gridfill_oracle, is_cover, Axis, Mode, Segment, SegmentId};
use segcover::io;
use segcover::reduction::{assignment_to_cover, compile, cover_to_assignment, Clause, CnfEmbedding, Side};
use segcover::subdivision::{dp_cover, dp_solve, tree_to_segments, SideSet};

fn instance(seed: u64) -> Vec<Segment> {
    random_instance(&mut rng(seed), 14, 16)
}

fn subsets(ids: &[SegmentId], max: usize) -> Vec<SegmentSet> {
    (0u32..1 << ids.len())
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..ids.len()).filter(|&i| m >> i & 1 == 1).map(|i| ids[i]).collect())
        .collect()
}

fn hits_all(family: &[SegmentSet], s: &SegmentSet) -> bool {
    family.iter().all(|f| !f.is_disjoint(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn face_walk_matches_flood_fill(seed in any::<u64>()) {
        let segs = instance(seed);
        prop_assert_eq!(build_arrangement(&segs).unwrap(), gridfill_oracle(&segs).unwrap());
    }

    #[test]
    fn cells_are_well_formed(seed in any::<u64>()) {
        let arr = build_arrangement(&instance(seed)).unwrap();
        prop_assert_eq!(arr.cells.iter().filter(|c| !c.bounded).count(), 1);
        prop_assert!(!arr.unbounded_cell().bounded);
        for c in arr.rectangular_cells() {
            prop_assert!(c.bounded);
            prop_assert_eq!(c.defining.len(), 4);
            let b = c.bounds.unwrap();
            let sides = c.defining.iter().map(|id| arr.segment(*id).unwrap());
            let (mut h, mut v) = (vec![], vec![]);
            for s in sides {
                match s.axis {
                    Axis::Horizontal => h.push(s.fixed),
                    Axis::Vertical => v.push(s.fixed),
                }
            }
            h.sort_unstable();
            v.sort_unstable();
            prop_assert_eq!(h, vec![b.y0, b.y1]);
            prop_assert_eq!(v, vec![b.x0, b.x1]);
        }
        prop_assert!(euler_check(&arr).holds());
    }

    #[test]
    fn covers_are_upward_closed(seed in any::<u64>(), extra in any::<u64>()) {
        let arr = build_arrangement(&instance(seed)).unwrap();
        for mode in [Mode::All, Mode::Rect] {
            let cover = brute_force_cover(&arr, mode, DEFAULT_GUARD).unwrap();
            prop_assert!(is_cover(&arr, &cover, mode).unwrap());
            let mut bigger = cover.clone();
            bigger.extend(arr.segment_ids().filter(|id| extra >> (id.0 % 64) & 1 == 1));
            prop_assert!(is_cover(&arr, &bigger, mode).unwrap());
        }
    }

    #[test]
    fn three_segments_bound_at_most_two_rectangles(seed in any::<u64>()) {
        let arr = build_arrangement(&instance(seed)).unwrap();
        let family = extract_rect_instance(&arr, 0).family;
        let ids: Vec<SegmentId> = arr.segment_ids().collect();
        for triple in subsets(&ids, 3).into_iter().filter(|s| s.len() == 3) {
            prop_assert!(family.iter().filter(|f| triple.is_subset(f)).count() <= 2);
        }
    }

    #[test]
    fn reductions_keep_small_hitting_sets(seed in any::<u64>(), k in 0usize..4) {
        let arr = build_arrangement(&instance(seed)).unwrap();
        let inst = extract_rect_instance(&arr, k);
        let ids: Vec<SegmentId> = arr.segment_ids().collect();
        let one = reduce_pairs(&inst);
        let two = reduce_singletons(&one);
        for s in subsets(&ids, k) {
            let before = hits_all(&inst.family, &s);
            prop_assert_eq!(before, hits_all(&one.family, &s));
            prop_assert_eq!(before, hits_all(&two.family, &s));
        }
    }

    #[test]
    fn kernel_answers_match_brute_force(seed in any::<u64>(), k in 0usize..5) {
        let arr = build_arrangement(&instance(seed)).unwrap();
        let kr = kernelize(&extract_rect_instance(&arr, k));
        if kr.outcome == KernelOutcome::Kernel {
            prop_assert!(kr.instance.family.len() as u128 <= kernel_bound(k));
        }
        let truth = brute_force_cover(&arr, Mode::Rect, DEFAULT_GUARD).unwrap();
        match solve_hitting(&kr) {
            Some(found) => {
                prop_assert_eq!(found.len(), truth.len());
                prop_assert!(is_cover(&arr, &found, Mode::Rect).unwrap());
            }
            None => prop_assert!(truth.len() > k),
        }
        let pipeline = min_cover(&arr, Mode::Rect, Some(k), DEFAULT_GUARD).unwrap();
        prop_assert_eq!(pipeline.map(|c| c.len()), (truth.len() <= k).then_some(truth.len()));
    }

    #[test]
    fn subdivision_dp_is_optimal(seed in any::<u64>()) {
        let t = random_tree(&mut rng(seed), 12, 32);
        let arr = build_arrangement(&tree_to_segments(&t).unwrap()).unwrap();
        let (cover, table) = dp_solve(&t).unwrap();
        prop_assert!(is_cover(&arr, &cover, Mode::All).unwrap());
        prop_assert_eq!(cover.len(), brute_force_cover(&arr, Mode::All, DEFAULT_GUARD).unwrap().len());
        prop_assert_eq!(table.evaluations, 16 * t.root.node_count());
        for node in &table.entries {
            for a in SideSet::all() {
                for b in SideSet::all().filter(|b| a.is_subset_of(*b)) {
                    let worse = node[a.0 as usize].cost.unwrap_or(u32::MAX);
                    prop_assert!(node[b.0 as usize].cost.unwrap_or(u32::MAX) <= worse);
                }
            }
        }
    }

    #[test]
    fn instance_json_round_trips(seed in any::<u64>()) {
        let segs = instance(seed);
        let text = io::instance_json(&segs).to_string();
        prop_assert_eq!(io::parse_instance(&text).unwrap(), segs);
    }

    #[test]
    fn assignments_round_trip(signs in prop::array::uniform3(any::<bool>()), below in any::<bool>(), bits in 0u8..8) {
        let literals = [1, 2, 3].map(|v| if signs[v as usize - 1] { v } else { -v });
        let side = if below { Side::Below } else { Side::Above };
        let phi = CnfEmbedding { n: 3, clauses: vec![Clause { literals, side }] };
        let a: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        for variant in [Mode::All, Mode::Rect] {
            let c = compile(&phi, variant).unwrap();
            let cover = assignment_to_cover(&c.layout, &a).unwrap();
            prop_assert_eq!(cover_to_assignment(&c.layout, &cover).unwrap(), a.clone());
        }
    }
}

#[test]
fn tree_fixtures_agree_with_brute_force() {
    for name in ["leaf_tree", "split_tree", "four_cells_tree"] {
        let text = std::fs::read_to_string(format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let t = io::parse_tree(&text).unwrap();
        let arr = build_arrangement(&tree_to_segments(&t).unwrap()).unwrap();
        let brute = brute_force_cover(&arr, Mode::All, DEFAULT_GUARD).unwrap();
        assert_eq!(dp_cover(&t).unwrap(), brute, "{name}");
    }
}

#[test]
fn tree_segments_give_expected_cells() {
    let text = r#"{"rect":[0,0,4,4],"root":{"axis":"v","coord":2,"low":"leaf","high":"leaf"}}"#;
    let segs = tree_to_segments(&io::parse_tree(text).unwrap()).unwrap();
    assert_eq!(segs.len(), 5);
    assert_eq!(gridfill_oracle(&segs).unwrap().cell_count(), 3);
    let four = std::fs::read_to_string(format!("{}/tests/fixtures/four_cells_tree.json", env!("CARGO_MANIFEST_DIR")))
        .unwrap();
    let segs = tree_to_segments(&io::parse_tree(&four).unwrap()).unwrap();
    assert_eq!(segs.len(), 7);
    assert_eq!(gridfill_oracle(&segs).unwrap().cell_count(), 5);
    let ids: BTreeSet<SegmentId> = [SegmentId(0)].into();
    assert!(!is_cover(&gridfill_oracle(&segs).unwrap(), &ids, Mode::All).unwrap());
}
