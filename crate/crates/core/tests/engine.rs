use proptest::prelude::*;
use ptl_core::arith::{gcd, valuation};
use ptl_core::engine::{
    corollary_scan, gcd_pair, lte_v3_check, theorem_scan, trace_case, xmod9_filter, CaseLabel, RejectReason,
    ScanOptions,
};

#[test]
fn gcd_pair_table_exhaustive() {
    for x in -100_000i64..=100_000 {
        let pair = gcd_pair(x);
        assert!(matches!((pair.g_minus, pair.g_plus), (1, 1) | (1, 3) | (3, 1)), "x = {x}");
    }
}

#[test]
fn three_adic_identities() {
    for x in (-100_000i64..=100_000).filter(|x| x.rem_euclid(3) == 2 && *x != -1) {
        let xi = x as i128;
        assert_eq!(valuation(3, xi * xi - xi + 1).unwrap(), 1, "x = {x}");
        assert_eq!(valuation(3, xi.pow(3) + 1).unwrap(), valuation(3, xi + 1).unwrap() + 1, "x = {x}");
        assert!(lte_v3_check(x).unwrap().identity_holds);
    }
}

#[test]
fn scans_find_nothing_on_small_ranges() {
    let o = ScanOptions::default();
    assert!(theorem_scan(-20_000, 20_000, &o).unwrap().counterexamples.is_empty());
    let r = corollary_scan(1, 2_000, &o).unwrap();
    assert!(r.counterexamples.is_empty());
    assert_eq!(r.statistics.coprime_failures, 0);
}

#[test]
fn scan_statistics_add_up() {
    let r = theorem_scan(-5_000, 5_000, &ScanOptions::default()).unwrap();
    let s = &r.statistics;
    assert_eq!(s.values_scanned, 10_001);
    assert_eq!(s.total_rejections() + r.counterexamples.len() as u64, 10_001);
    assert_eq!(s.rejections[&RejectReason::Degenerate], 3);
    assert_eq!(s.by_side.values().sum::<u64>(), 10_001 - 3);
    assert_eq!(s.by_case.values().sum::<u64>(), 10_001 - 3);
}

#[test]
fn one_worker_matches_many() {
    let one = ScanOptions { jobs: 1, ..ScanOptions::default() };
    let many = ScanOptions { jobs: 8, block_size: 97, ..ScanOptions::default() };
    let a = theorem_scan(-40_000, 40_000, &one).unwrap();
    let b = theorem_scan(-40_000, 40_000, &many).unwrap();
    assert_eq!(a.counterexamples, b.counterexamples);
    assert_eq!(a.statistics, b.statistics);
    let a = corollary_scan(-3_000, 3_000, &one).unwrap();
    let b = corollary_scan(-3_000, 3_000, &many).unwrap();
    assert_eq!(a.statistics, b.statistics);
}

proptest! {
    #[test]
    fn gcd_pair_follows_residue(x in -1_000_000_000_000i64..1_000_000_000_000) {
        let pair = gcd_pair(x);
        let xi = x as i128;
        prop_assert_eq!(pair.g_minus as i128, gcd(xi - 1, 3));
        prop_assert_eq!(pair.g_plus as i128, gcd(xi + 1, 3));
        prop_assert!(!(pair.g_minus == 3 && pair.g_plus == 3));
    }

    #[test]
    fn lte_holds_far_out(k in -1_000_000_000_000i64..1_000_000_000_000) {
        let x = 3 * k + 2;
        prop_assume!(x != -1);
        prop_assert!(lte_v3_check(x).unwrap().identity_holds);
    }

    #[test]
    fn xmod9_matches_definition(x in any::<i64>()) {
        prop_assert_eq!(xmod9_filter(x), (x as i128 + 1) % 9 == 0);
    }

    #[test]
    fn traces_are_consistent(x in -1_000_000_000i64..1_000_000_000) {
        prop_assume!(x.abs() > 1);
        let t = trace_case(x).unwrap();
        prop_assert!(t.consistent);
        prop_assert!(!t.verdict.is_counterexample());
        let label = match x.rem_euclid(3) { 0 => CaseLabel::Case1, 2 => CaseLabel::Case2, _ => CaseLabel::Case3 };
        prop_assert_eq!(t.case_label, label);
    }

    #[test]
    fn case3_is_case2_at_minus_x(k in -100_000_000i64..100_000_000) {
        let x = 3 * k + 1;
        prop_assume!(x.abs() > 1);
        let t = trace_case(x).unwrap();
        let m = trace_case(-x).unwrap();
        prop_assert!(t.mirrored);
        prop_assert_eq!(t.branches, m.branches);
    }
}
