mod common;

use std::collections::BTreeSet;

use common::to_matrix;
use satkit::constructions;
use satkit::saturation;
use satkit::search::{self, canonical_form, SearchMode, SearchOptions};
use satkit::PatternSpec;
use satkit_oracle::{self as oracle, Mode};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn oracle_mode(mode: SearchMode) -> Mode {
    match mode {
        SearchMode::OrderedSat => Mode::Ordered,
        _ => Mode::Unordered,
    }
}

/// Minimum and extremal classes straight from the full enumeration.
fn brute(s: usize, t: usize, n: usize, mode: SearchMode) -> (usize, BTreeSet<Vec<bool>>) {
    let om = oracle_mode(mode);
    let (min, graphs) = match mode {
        SearchMode::WeakSat => oracle::brute_min(n, |m| oracle::weakly_saturated_exhaustive(m, s, t, om)),
        _ => oracle::brute_min(n, |m| oracle::saturated(m, s, t, om)),
    }
    .expect("complete graph always qualifies");
    let swap = mode != SearchMode::OrderedSat || s == t;
    let classes = graphs.iter().map(|m| oracle::canonical_key(m, swap)).collect();
    (min, classes)
}

fn census_keys(r: &search::SearchResult) -> BTreeSet<Vec<bool>> {
    r.graphs()
        .iter()
        .map(|g| to_matrix(g).into_iter().flatten().collect())
        .collect()
}

#[test]
fn census_matches_full_enumeration_up_to_three() {
    let cases = [
        (1, 2, SearchMode::UnorderedSat),
        (2, 2, SearchMode::UnorderedSat),
        (1, 3, SearchMode::UnorderedSat),
        (2, 3, SearchMode::UnorderedSat),
        (3, 3, SearchMode::UnorderedSat),
        (1, 2, SearchMode::OrderedSat),
        (2, 1, SearchMode::OrderedSat),
        (2, 3, SearchMode::OrderedSat),
        (2, 2, SearchMode::OrderedSat),
        (1, 2, SearchMode::WeakSat),
        (2, 2, SearchMode::WeakSat),
        (2, 3, SearchMode::WeakSat),
    ];
    for n in 1..=3 {
        for &(s, t, mode) in &cases {
            let (min, classes) = brute(s, t, n, mode);
            let r = search::census_extremal(s, t, n, mode, &opts()).unwrap();
            assert!(r.complete);
            assert_eq!(r.min_edges, Some(min), "({s},{t},{n}) {mode:?}");
            assert_eq!(census_keys(&r), classes, "({s},{t},{n}) {mode:?}");
        }
    }
}

#[test]
fn four_by_four_minimum_matches_full_enumeration() {
    for (s, t) in [(1, 2), (1, 3), (2, 2)] {
        let (min, classes) = brute(s, t, 4, SearchMode::UnorderedSat);
        let r = search::census_extremal(s, t, 4, SearchMode::UnorderedSat, &opts()).unwrap();
        assert_eq!(r.min_edges, Some(min), "({s},{t})");
        assert_eq!(census_keys(&r), classes);
    }
}

#[test]
fn perfect_matching_is_the_only_sparsest_star_saturated_graph() {
    let r = search::census_extremal(1, 2, 3, SearchMode::UnorderedSat, &opts()).unwrap();
    assert_eq!(r.min_edges, Some(3));
    assert_eq!(r.extremal_graphs.len(), 1);
    let g = &r.graphs()[0];
    assert!(g.degrees(satkit::Side::Left).iter().all(|&d| d == 1));
    assert!(g.degrees(satkit::Side::Right).iter().all(|&d| d == 1));
}

#[test]
fn square_pattern_census_contains_the_ordered_construction() {
    let r = search::census_extremal(2, 2, 3, SearchMode::UnorderedSat, &opts()).unwrap();
    assert_eq!(r.min_edges, Some(5));
    let built = constructions::construct_ordered_extremal(2, 2, 3).unwrap();
    assert!(r.extremal_graphs.contains(&canonical_form(&built, true)));
    // A second class: one full row plus a partial matching on two columns.
    let other = satkit::BipartiteGraph::build(3, 3, &[(0, 2), (1, 1), (2, 0), (2, 1), (2, 2)]).unwrap();
    assert!(saturation::is_saturated(&other, &PatternSpec::unordered(2, 2).unwrap()));
    assert_ne!(canonical_form(&other, true), canonical_form(&built, true));
    assert_eq!(r.extremal_graphs.len(), 2);
}

#[test]
fn emitted_graphs_pass_the_predicates() {
    for (s, t, n) in [(1, 2, 4), (2, 2, 4), (1, 3, 4), (2, 3, 4)] {
        let p = PatternSpec::unordered(s, t).unwrap();
        let r = search::census_extremal(s, t, n, SearchMode::UnorderedSat, &opts()).unwrap();
        let m = r.min_edges.unwrap();
        let mut sorted = r.extremal_graphs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, r.extremal_graphs);
        for g in r.graphs() {
            assert_eq!(g.edge_count(), m);
            assert!(saturation::is_saturated(&g, &p));
            assert_eq!(canonical_form(&g, true), canonical_form(&g.transpose(), true));
        }
        for level in &r.levels[..r.levels.len() - 1] {
            assert_eq!(level.hits, 0);
            assert!(level.m < m);
        }
    }
}

#[test]
fn weak_never_exceeds_strong() {
    for (s, t, n) in [(1, 2, 3), (1, 2, 4), (2, 2, 3), (2, 2, 4), (1, 3, 4), (2, 3, 4)] {
        let sat = search::min_sat_edges(s, t, n, SearchMode::UnorderedSat, &opts()).unwrap();
        let weak = search::min_wsat_edges(s, t, n, &opts()).unwrap();
        assert!(weak.min_edges.unwrap() <= sat.min_edges.unwrap(), "({s},{t},{n})");
    }
}

#[test]
fn worker_count_and_split_depth_do_not_matter() {
    let base = search::census_extremal(2, 3, 4, SearchMode::UnorderedSat, &opts()).unwrap();
    for workers in [1, 2, 4] {
        for split_depth in [0, 1, 2, 3, 4] {
            let o = SearchOptions { workers, split_depth, ..opts() };
            let r = search::census_extremal(2, 3, 4, SearchMode::UnorderedSat, &o).unwrap();
            assert_eq!(r.extremal_graphs, base.extremal_graphs);
            assert_eq!(r.levels, base.levels, "workers {workers}, depth {split_depth}");
        }
    }
}

#[test]
fn non_census_keeps_smallest_class() {
    let all = search::census_extremal(2, 3, 4, SearchMode::UnorderedSat, &opts()).unwrap();
    let one = search::min_sat_edges(2, 3, 4, SearchMode::UnorderedSat, &opts()).unwrap();
    assert_eq!(one.extremal_graphs.len(), 1);
    assert_eq!(one.extremal_graphs[0], all.extremal_graphs[0]);
}

#[test]
fn time_budget_reports_partial_progress() {
    let o = SearchOptions { max_seconds: Some(0.0), ..opts() };
    let r = search::min_sat_edges(2, 4, 6, SearchMode::UnorderedSat, &o).unwrap();
    assert!(!r.complete);
    assert_eq!(r.min_edges, None);
    assert!(r.verified_lower_bound() >= r.lower_bound_used);
}
