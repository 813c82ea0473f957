mod common;

use proptest::prelude::*;
use satkit::bigraph::Side;
use satkit::constructions::{self, ConstructionError};
use satkit::saturation;
use satkit::{BipartiteGraph, PatternSpec};
use satkit_oracle::{self as oracle, Mode};

fn relabel(g: &BipartiteGraph, rot: usize) -> BipartiteGraph {
    let n = g.n_left();
    let edges: Vec<_> = g.edges().map(|(u, v)| ((u + rot) % n, (v + 3 * rot) % n)).collect();
    BipartiteGraph::build(n, g.n_right(), &edges).unwrap()
}

#[test]
fn f_family_grid() {
    for t in 2..=5 {
        for s in 1..=t {
            for n in (2 * (t - 1)).max(s).max(1)..=10 {
                for shift in [0, 1, 3] {
                    let g = constructions::construct_f_family(s, t, n, shift)
                        .unwrap_or_else(|e| panic!("({s},{t},{n}): {e}"));
                    let f = constructions::formula_table(s, t, n).unwrap();
                    assert_eq!(g.edge_count() as i64, f.f_family_count);
                    let p = PatternSpec::unordered(s, t).unwrap();
                    assert!(saturation::is_saturated(&g, &p));
                    let m = constructions::classify_f_membership(&g, s, t);
                    assert!(m.member, "({s},{t},{n}) shift {shift}");
                    assert!(constructions::classify_f_membership(&g.transpose(), s, t).member);
                    assert!(constructions::classify_f_membership(&relabel(&g, 2), s, t).member);
                }
            }
        }
    }
}

#[test]
fn f_family_matches_stated_count_exactly_when_s_is_t_minus_one() {
    for t in 2..=6 {
        for s in 1..=t {
            let f = constructions::formula_table(s, t, 12).unwrap();
            assert_eq!(f.f_family_discrepancy, s + 1 != t, "({s},{t})");
        }
    }
}

#[test]
fn ms_grid() {
    for t in 2..=6 {
        for s in 1..t {
            let need = (s - 1) + (t - s) / 2 + (t - s);
            for n in need.max(1)..=11 {
                let g = constructions::construct_ms(s, t, n)
                    .unwrap_or_else(|e| panic!("({s},{t},{n}): {e}"));
                let f = constructions::formula_table(s, t, n).unwrap();
                assert_eq!(g.edge_count() as i64, f.conjecture_value, "({s},{t},{n})");
                assert!(saturation::is_saturated(&g, &PatternSpec::unordered(s, t).unwrap()));
            }
            if need > 1 {
                assert!(matches!(
                    constructions::construct_ms(s, t, need - 1),
                    Err(ConstructionError::InvalidParameters(_))
                ));
            }
        }
    }
}

#[test]
fn ms_special_vertices_keep_their_degree() {
    // (2,4): one full vertex and one special vertex per side.
    let g = constructions::construct_ms(2, 4, 9).unwrap();
    assert_eq!(g.degree(Side::Left, 0), 9);
    assert_eq!(g.degree(Side::Left, 1), 2);
    for u in 2..9 {
        assert_eq!(g.degree(Side::Left, u), 3);
        assert_eq!(g.degree(Side::Right, u), 3);
    }
}

#[test]
fn ordered_extremal_is_minimum_at_three() {
    for (s, t) in [(1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 2)] {
        let g = constructions::construct_ordered_extremal(s, t, 3).unwrap();
        let (min, _) = oracle::brute_min(3, |m| oracle::saturated(m, s, t, Mode::Ordered)).unwrap();
        assert_eq!(g.edge_count(), min, "({s},{t})");
        assert_eq!(g.edge_count(), 9 - (4 - s) * (4 - t));
    }
}

#[test]
fn ordered_extremal_grid() {
    for s in 1..=4 {
        for t in 1..=4 {
            for n in s.max(t)..=8 {
                let g = constructions::construct_ordered_extremal(s, t, n).unwrap();
                let r = saturation::check_saturated(&g, &PatternSpec::ordered(s, t).unwrap());
                assert!(r.is_saturated);
                if s <= t {
                    let f = constructions::formula_table(s, t, n).unwrap();
                    assert_eq!(g.edge_count() as i64, f.ordered_value);
                }
            }
        }
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(constructions::formula_table(3, 2, 5).is_err());
    assert!(constructions::formula_table(0, 2, 5).is_err());
    assert!(constructions::construct_f_family(2, 4, 5, 0).is_err());
    assert!(constructions::construct_ms(3, 3, 10).is_err());
    assert!(constructions::construct_ordered_extremal(4, 2, 3).is_err());
}

#[test]
fn membership_rejects_non_members() {
    let g = constructions::construct_ms(2, 4, 10).unwrap();
    assert!(!constructions::classify_f_membership(&g, 2, 4).member);
    let k = BipartiteGraph::complete(4, 4);
    let m = constructions::classify_f_membership(&k, 2, 3);
    assert!(!m.member && m.offending_copy.is_some());
}

proptest! {
    #[test]
    fn formula_identities(s in 1usize..8, extra in 0usize..6, n in 1usize..60) {
        let t = s + extra;
        let f = constructions::formula_table(s, t, n).unwrap();
        let (si, ti, ni) = (s as i64, t as i64, n as i64);
        if s == t {
            prop_assert_eq!(f.ehm_ss_value, Some(f.conjecture_value));
            prop_assert_eq!(f.ehm_ss_value, Some(f.ordered_value));
        }
        if s + 1 == t {
            prop_assert_eq!(f.theorem12_value, Some(f.conjecture_value));
            prop_assert_eq!(f.theorem12_value, Some(f.f_family_count));
        }
        prop_assert!(f.gks_lower <= f.theorem13_lower);
        prop_assert!(f.conjecture_value <= f.ordered_value);
        prop_assert_eq!(f.conjecture_value, (si + ti - 2) * ni - (si + ti - 2).pow(2) / 4);
        prop_assert_eq!(f.ordered_value, ni * ni - (ni - si + 1) * (ni - ti + 1));
    }

    #[test]
    fn f_family_edge_count_for_any_shift(t in 2usize..6, s_off in 0usize..4, extra_n in 0usize..6, shift in 0usize..50) {
        let s = 1 + s_off % t;
        let n = 2 * (t - 1) + extra_n;
        let g = constructions::construct_f_family(s, t, n.max(s), shift).unwrap();
        let f = constructions::formula_table(s, t, n.max(s)).unwrap();
        prop_assert_eq!(g.edge_count() as i64, f.f_family_count);
    }
}
