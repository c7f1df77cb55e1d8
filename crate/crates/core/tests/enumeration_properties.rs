mod common;

use std::collections::HashSet;

use common::{all_perms, catalan, naive_contains, naive_inversions, naive_triangle, patterns_upto};
use permpat::enumerate::*;
use permpat::Perm;

fn p(s: &str) -> Perm {
    s.parse().unwrap()
}

#[test]
fn pruned_search_matches_filtering_all_permutations() {
    for tau in patterns_upto(4) {
        let naive = naive_triangle(tau.values(), 8);
        let t = inversion_triangle(&tau, 8).unwrap();
        assert_eq!(t.rows(), &naive[..], "pattern {tau}");
    }
}

#[test]
fn stream_yields_each_avoider_once() {
    for tau in patterns_upto(4) {
        for n in 0..=7 {
            let got: Vec<Perm> = iterate_avoiders(&tau, n).collect();
            let unique: HashSet<&Perm> = got.iter().collect();
            assert_eq!(unique.len(), got.len());
            let want: HashSet<Vec<u8>> = all_perms(n)
                .into_iter()
                .filter(|v| !naive_contains(v, tau.values()))
                .collect();
            let got: HashSet<Vec<u8>> = got.iter().map(|q| q.values().to_vec()).collect();
            assert_eq!(got, want, "pattern {tau}, n = {n}");
        }
    }
}

#[test]
fn stream_and_counts_agree() {
    for tau in [p("1324"), p("2413"), p("1234"), p("4231")] {
        let t = inversion_triangle(&tau, 8).unwrap();
        for n in 1..=8 {
            let mut row = vec![0u128; n * (n - 1) / 2 + 1];
            for q in iterate_avoiders(&tau, n) {
                row[q.inversions() as usize] += 1;
            }
            assert_eq!(t.row(n), &row[..]);
        }
    }
}

#[test]
fn length_three_patterns_are_catalan() {
    for tau in ["123", "132", "213", "231", "312", "321"] {
        for n in 0..=10 {
            assert_eq!(count_avoiders(&p(tau), n).unwrap(), catalan(n as u128), "{tau} n={n}");
        }
    }
}

#[test]
fn row_shapes_and_sums() {
    let t = inversion_triangle(&p("1324"), 9).unwrap();
    for n in 1..=9 {
        assert_eq!(t.row(n).len(), n * (n - 1) / 2 + 1);
        assert_eq!(t.row_sum(n), count_avoiders(&p("1324"), n).unwrap());
        assert_eq!(t.get(n, n * (n - 1) / 2 + 1), 0);
    }
}

#[test]
fn bounded_by_mahonian_numbers() {
    for tau in patterns_upto(4) {
        let t = inversion_triangle(&tau, 8).unwrap();
        for n in 1..=8 {
            let m = mahonian_row(n).unwrap();
            for (k, &c) in t.row(n).iter().enumerate() {
                assert!(c <= m[k]);
            }
        }
    }
}

#[test]
fn deterministic_across_configurations() {
    let tau = p("1324");
    let reference = inversion_triangle_with(&tau, 9, &SearchConfig { split_depth: 4, jobs: Some(1) }).unwrap();
    for (split_depth, jobs) in [(2, Some(2)), (4, Some(4)), (6, Some(16)), (4, None)] {
        let t = inversion_triangle_with(&tau, 9, &SearchConfig { split_depth, jobs }).unwrap();
        assert_eq!(t, reference);
        assert_eq!(t.to_csv(), reference.to_csv());
    }
}

#[test]
fn increasing_patterns_vanish_past_erdos_szekeres_threshold() {
    for len in 2..=4usize {
        let tau = Perm::identity(len);
        let rows = truncated_triangle(&tau, 12, 4, &SearchConfig::default()).unwrap();
        for k in 0..=4usize {
            for n in ((len - 1) * (k + 1) + 1)..=12 {
                assert_eq!(rows[n - 1].get(k).copied().unwrap_or(0), 0, "len {len} n {n} k {k}");
            }
        }
    }
}

#[test]
fn truncated_triangle_matches_full() {
    let tau = p("2143");
    let full = inversion_triangle(&tau, 9).unwrap();
    let cut = truncated_triangle(&tau, 9, 5, &SearchConfig::default()).unwrap();
    for n in 1..=9 {
        let want: Vec<u128> = full.row(n).iter().take(6).copied().collect();
        assert_eq!(cut[n - 1], want);
    }
}

#[test]
fn mahonian_matches_brute_force() {
    for n in 0..=8usize {
        let mut row = vec![0u128; n * n.saturating_sub(1) / 2 + 1];
        for q in all_perms(n) {
            row[naive_inversions(&q)] += 1;
        }
        assert_eq!(mahonian_row(n).unwrap(), row);
    }
}

#[test]
fn fibonacci_counts_match_enumeration() {
    for n in 0..=10usize {
        let mut by_k = vec![0u128; n / 2 + 1];
        // Direct sums of 1s and 21s: choose the positions where a 21 starts.
        for mask in 0u32..(1 << n) {
            let starts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if starts.iter().any(|&i| i + 1 >= n || mask >> (i + 1) & 1 == 1) {
                continue;
            }
            by_k[starts.len()] += 1;
        }
        for (k, &c) in by_k.iter().enumerate() {
            assert_eq!(fibonacci_inv_count(n, k).unwrap(), c, "n={n} k={k}");
        }
    }
}

#[test]
fn monotone_report_lists_every_column_drop() {
    let t = inversion_triangle(&p("1234"), 7).unwrap();
    let r = monotone_violations(&t);
    assert!(!r.is_monotone());
    for v in &r.violations {
        assert!(v.count > v.next_count);
        assert_eq!(t.get(v.n, v.k), v.count);
        assert_eq!(t.get(v.n + 1, v.k), v.next_count);
    }
}
