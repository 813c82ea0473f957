//! Acceptance suite: one PASS/FAIL line per criterion, then a single assert.
//!
//! Run with `cargo test -p satkit-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use satkit::analysis;
use satkit::constructions;
use satkit::sampling;
use satkit::saturation;
use satkit::search::{self, SearchMode, SearchOptions};
use satkit::{BipartiteGraph, PatternSpec};
use satkit_oracle::{self as oracle, Matrix, Mode};
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn to_matrix(g: &BipartiteGraph) -> Matrix {
    (0..g.n_left()).map(|u| (0..g.n_right()).map(|v| g.has_edge(u, v)).collect()).collect()
}

fn from_matrix(m: &Matrix, n_right: usize) -> BipartiteGraph {
    BipartiteGraph::from_matrix(m, n_right).unwrap()
}

fn sat(s: usize, t: usize, n: usize) -> Option<usize> {
    search::min_sat_edges(s, t, n, SearchMode::UnorderedSat, &opts()).unwrap().min_edges
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let e = start.elapsed();
    (e <= limit, format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let got: Vec<_> = [3, 4].iter().map(|&n| (n, sat(2, 2, n))).collect();
    let ok = got.iter().all(|&(n, m)| m == Some(2 * n - 1));
    let (fast, time) = within(start, Duration::from_secs(10));
    outcome(ok && fast, format!("sat(2,2,n) for n=3,4: {got:?}, expected 2n-1; {time}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (s, t, n, want) in [(1, 2, 3, 3), (1, 2, 4, 4), (1, 2, 5, 5), (1, 3, 4, 7)] {
        let got = sat(s, t, n);
        ok &= got == Some(want);
        let mut line = format!("({s},{t},{n})={got:?}");
        if n <= 4 {
            let brute = oracle::brute_min(n, |m| oracle::saturated(m, s, t, Mode::Unordered)).map(|b| b.0);
            ok &= brute == got;
            line.push_str(&format!(" oracle={brute:?}"));
        }
        notes.push(line);
    }
    let (fast, time) = within(start, Duration::from_secs(120));
    outcome(ok && fast, format!("{}; {time}", notes.join(", ")))
}

fn census_23(n: usize) -> (search::SearchResult, Vec<BipartiteGraph>) {
    let r = search::census_extremal(2, 3, n, SearchMode::UnorderedSat, &opts()).unwrap();
    let g = r.graphs();
    (r, g)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let p = PatternSpec::unordered(2, 3).unwrap();
    let mut family_ok = true;
    for n in 4..=12 {
        for shift in 0..n {
            let g = constructions::construct_f_family(2, 3, n, shift).unwrap();
            family_ok &= g.edge_count() == 3 * n - 2 && saturation::is_saturated(&g, &p);
        }
    }
    let family_time = start.elapsed();
    let mut notes = vec![format!("F(2,3,n) n=4..12 saturated with 3n-2 edges: {family_ok} in {:.2}s", family_time.as_secs_f64())];
    let mut ok = family_ok && family_time <= Duration::from_secs(5);
    for n in [4, 5] {
        let (r, graphs) = census_23(n);
        let agree = r.min_edges == Some(3 * n - 2);
        let members = graphs.iter().filter(|g| constructions::classify_f_membership(g, 2, 3).member).count();
        notes.push(format!(
            "census n={n}: min_edges={:?} agree={agree} F-members {members}/{}",
            r.min_edges,
            graphs.len()
        ));
        for (g, c) in graphs.iter().zip(&r.extremal_graphs) {
            if !constructions::classify_f_membership(g, 2, 3).member {
                notes.push(format!("  non-member n={n}: {}", c.to_hex()));
            }
        }
        if n == 5 {
            ok &= agree && members == graphs.len() && r.complete;
        } else {
            ok &= r.complete;
        }
    }
    let (fast, time) = within(start, Duration::from_secs(15 * 60));
    notes.push(time);
    outcome(ok && fast, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let p = PatternSpec::unordered(2, 4).unwrap();
    let mut family_ok = true;
    for n in 8..=12 {
        let g = constructions::construct_ms(2, 4, n).unwrap();
        family_ok &= g.edge_count() == 4 * n - 4 && saturation::is_saturated(&g, &p);
    }
    let family_time = start.elapsed();
    let o = SearchOptions { max_seconds: Some(1800.0), ..opts() };
    let r = search::min_sat_edges(2, 4, 5, SearchMode::UnorderedSat, &o).unwrap();
    let agree = r.min_edges == Some(16);
    let ok = family_ok && family_time <= Duration::from_secs(10) && r.complete && agree;
    outcome(
        ok,
        format!(
            "MS(2,4,n) n=8..12 saturated with 4n-4 edges: {family_ok} in {:.2}s; sat(2,4,5)={:?} vs 16 agree={agree} complete={} in {:.2}s",
            family_time.as_secs_f64(),
            r.min_edges,
            r.complete,
            r.elapsed.as_secs_f64()
        ),
    )
}

fn implication_violations(g: &BipartiteGraph, p: &PatternSpec) -> usize {
    let sat = saturation::is_saturated(g, p);
    let strong = saturation::check_strongly_saturated(g, p);
    let weak = saturation::check_weakly_saturated(g, p).0;
    let mut bad = 0;
    bad += usize::from(sat && !strong);
    bad += usize::from(strong && !weak);
    bad += usize::from(sat && g.min_degree() + 1 < p.s());
    bad
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut violations = 0;
    let mut checked = 0;
    for (s, t) in [(1, 2), (2, 2)] {
        let p = PatternSpec::unordered(s, t).unwrap();
        for m in oracle::all_matrices(3, 3) {
            violations += implication_violations(&from_matrix(&m, 3), &p);
            checked += 1;
        }
    }
    let p = PatternSpec::unordered(2, 3).unwrap();
    let mut rng = sampling::rng(sampling::seed_from_env(5));
    for _ in 0..5000 {
        let density = rng.gen_range(0.2..0.8);
        violations += implication_violations(&sampling::random_graph(&mut rng, 5, 5, density), &p);
        checked += 1;
    }
    let (fast, time) = within(start, Duration::from_secs(300));
    outcome(violations == 0 && fast, format!("{checked} graphs, {violations} violations; {time}"))
}

fn containment_disagreements(g: &BipartiteGraph) -> usize {
    let m = to_matrix(g);
    let mut bad = 0;
    for s in 1..=4 {
        for t in 1..=4 {
            let mut cases = vec![(PatternSpec::ordered(s, t).unwrap(), Mode::Ordered)];
            if s <= t {
                cases.push((PatternSpec::unordered(s, t).unwrap(), Mode::Unordered));
            }
            for (p, mode) in cases {
                let found = g.contains_pattern(&p);
                bad += usize::from(found.is_some() != oracle::contains(&m, s, t, mode));
                bad += usize::from(found.is_some_and(|w| !w.is_valid_in(g, None)));
                for (u, v) in g.non_edges() {
                    let w = g.creates_copy(u, v, &p).unwrap();
                    bad += usize::from(w.is_some() != oracle::creates_through(&m, u, v, s, t, mode));
                    bad += usize::from(w.is_some_and(|w| {
                        !w.is_valid_in(g, Some((u, v))) || !w.left_set.contains(&u) || !w.right_set.contains(&v)
                    }));
                }
            }
        }
    }
    bad
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    let mut checked = 0;
    for nl in 1..=4 {
        for nr in 1..=4 {
            if nl * nr > 12 {
                continue;
            }
            for m in oracle::all_matrices(nl, nr) {
                bad += containment_disagreements(&from_matrix(&m, nr));
                checked += 1;
            }
        }
    }
    let mut rng = sampling::rng(sampling::seed_from_env(6));
    for _ in 0..10_000 {
        bad += containment_disagreements(&sampling::uniform_graph(&mut rng, 4, 4));
        checked += 1;
    }
    let (fast, time) = within(start, Duration::from_secs(600));
    outcome(bad == 0 && fast, format!("{checked} graphs (exhaustive to 3x4, 10000 4x4 samples), {bad} disagreements; {time}"))
}

fn criterion_7() -> Outcome {
    let (s, t) = (2, 3);
    let mut violations = Vec::new();
    let (mut cores, mut bounds, mut certificates) = (0, 0, 0);
    for n in [4, 5] {
        for g in census_23(n).1 {
            let delta = g.min_degree();
            for core in analysis::find_nice_cores(&g, s, t).unwrap() {
                let labels = analysis::partition_around_core(&g, &core, s, t).unwrap();
                let r = analysis::check_core_observations(&g, &labels, s, t).unwrap();
                cores += 1;
                if !(r.c_degree_holds && r.c2_complete_holds) {
                    violations.push(format!("observations n={n} core ({},{})", core.a0, core.a0_prime));
                }
                if delta + 1 >= t {
                    bounds += 1;
                    if !analysis::core_bound_certificate(&g, &core, s, t).unwrap().holds {
                        violations.push(format!("core bound n={n}"));
                    }
                }
            }
            if delta + 1 < t {
                let c = analysis::min_degree_certificate(&g, s, t).unwrap().expect("delta < t-1");
                certificates += 1;
                if !(c.neighborhood_conditions_hold && c.edge_count_at_least_bound && c.bound_at_least_final) {
                    violations.push(format!("min-degree chain n={n} u0={} on {:?}", c.u0, c.side));
                }
            }
        }
    }
    outcome(
        violations.is_empty() && cores + certificates > 0,
        format!("{cores} nice cores, {bounds} core bounds, {certificates} min-degree chains, violations {violations:?}"),
    )
}

fn criterion_8() -> Outcome {
    let cases = [
        (2, 2, 3),
        (2, 2, 4),
        (1, 2, 3),
        (1, 2, 4),
        (1, 2, 5),
        (1, 3, 4),
        (2, 3, 4),
        (2, 3, 5),
        (2, 4, 5),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (s, t, n) in cases {
        let strong = sat(s, t, n);
        let weak = search::min_wsat_edges(s, t, n, &opts()).unwrap().min_edges;
        let holds = matches!((weak, strong), (Some(w), Some(m)) if w <= m);
        ok &= holds;
        notes.push(format!("({s},{t},{n}) wsat={} sat={}", weak.unwrap_or(0), strong.unwrap_or(0)));
    }
    outcome(ok, notes.join(", "))
}

fn search_run(dir: &Path, workers: &str) -> (Value, Vec<(String, Vec<u8>)>) {
    let out = Command::new(env!("CARGO_BIN_EXE_satkit"))
        .args(["search", "--s", "2", "--t", "3", "--n", "4", "--json", "--workers", workers, "--census"])
        .arg(dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let mut report: Value = serde_json::from_slice(&out.stdout).unwrap();
    report["search"].as_object_mut().unwrap().remove("timing");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    (report, files)
}

fn criterion_9() -> Outcome {
    let tmp = TempDir::new().unwrap();
    let (r1, d1) = search_run(&tmp.path().join("w1"), "1");
    let (r4, d4) = search_run(&tmp.path().join("w4"), "4");
    let same_report = serde_json::to_string(&r1).unwrap() == serde_json::to_string(&r4).unwrap();
    let same_dir = d1 == d4;
    outcome(
        same_report && same_dir && !d1.is_empty(),
        format!("{} census files; reports identical: {same_report}; directories identical: {same_dir}", d1.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let o = run();
        println!("criterion {id}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
