use std::collections::HashSet;

use centrality_core::graph::{canonical_code, enumerate_graphs, pair_count, Graph, LabeledGraphs};

// Unlabeled simple graphs on n nodes, n = 0..=8.
const CLASS_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

#[test]
fn class_counts_up_to_seven() {
    for (n, &want) in CLASS_COUNTS.iter().enumerate().take(8) {
        assert_eq!(enumerate_graphs(n, true).unwrap().count(), want, "n = {n}");
    }
}

#[test]
fn class_count_at_eight() {
    assert_eq!(enumerate_graphs(8, true).unwrap().count(), CLASS_COUNTS[8]);
}

#[test]
fn classes_are_distinct_and_cover_every_labeled_graph() {
    for n in 0..=6 {
        let classes: Vec<Graph> = enumerate_graphs(n, true).unwrap().collect();
        let codes: HashSet<u64> = classes.iter().map(canonical_code).collect();
        assert_eq!(codes.len(), classes.len(), "n = {n}");
        for g in LabeledGraphs::new(n).unwrap() {
            assert!(codes.contains(&canonical_code(&g)), "n = {n}, mask {}", g.bitmask());
        }
    }
}

#[test]
fn labeled_stream_is_every_bitmask_in_order() {
    for n in 0..=5 {
        let masks: Vec<u64> = enumerate_graphs(n, false).unwrap().map(|g| g.bitmask()).collect();
        assert_eq!(masks, (0..1u64 << pair_count(n)).collect::<Vec<_>>());
    }
}

#[test]
fn oversized_requests_are_refused() {
    assert!(enumerate_graphs(9, true).is_err());
    assert!(enumerate_graphs(8, false).is_err());
}
