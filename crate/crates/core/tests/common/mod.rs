//! Brute-force oracles. Nothing here calls into the search or decoding code
//! under test; everything is done by exhaustive enumeration.

#![allow(dead_code)]

use itertools::Itertools;
use permpat::Perm;

pub fn all_perms(n: usize) -> Vec<Vec<u8>> {
    (1..=n as u8).permutations(n).collect()
}

pub fn all_perm_values(n: usize) -> Vec<Perm> {
    all_perms(n).into_iter().map(|v| Perm::new(v).unwrap()).collect()
}

/// Every permutation of length `0..=n_max`.
pub fn perms_upto(n_max: usize) -> Vec<Perm> {
    (0..=n_max).flat_map(all_perm_values).collect()
}

fn order_isomorphic(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// Tries every position subset.
pub fn naive_contains(text: &[u8], pattern: &[u8]) -> bool {
    if pattern.len() > text.len() {
        return false;
    }
    (0..text.len()).combinations(pattern.len()).any(|idx| {
        let sub: Vec<u8> = idx.iter().map(|&i| text[i]).collect();
        order_isomorphic(&sub, pattern)
    })
}

/// Lexicographically least witness (1-based), by trying subsets in
/// lexicographic order.
pub fn naive_least_witness(text: &[u8], pattern: &[u8], forced_last: Option<usize>) -> Option<Vec<usize>> {
    if pattern.len() > text.len() {
        return None;
    }
    (0..text.len())
        .combinations(pattern.len())
        .filter(|idx| match forced_last {
            Some(l) => idx.last().map(|&x| x + 1) == Some(l),
            None => true,
        })
        .find(|idx| {
            let sub: Vec<u8> = idx.iter().map(|&i| text[i]).collect();
            order_isomorphic(&sub, pattern)
        })
        .map(|idx| idx.into_iter().map(|i| i + 1).collect())
}

pub fn naive_inversions(v: &[u8]) -> usize {
    (0..v.len())
        .tuple_combinations()
        .filter(|&(i, j)| v[i] > v[j])
        .count()
}

/// `[n][k]` counts of avoiders by filtering all of `S_n`.
pub fn naive_triangle(pattern: &[u8], n_max: usize) -> Vec<Vec<u128>> {
    (1..=n_max)
        .map(|n| {
            let mut row = vec![0u128; n * (n - 1) / 2 + 1];
            for p in all_perms(n) {
                if !naive_contains(&p, pattern) {
                    row[naive_inversions(&p)] += 1;
                }
            }
            row
        })
        .collect()
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u128) -> u128 {
    binomial(2 * n, n) / (n + 1)
}

/// Partitions of `k` with parts at most `max_part`, by recursion.
pub fn naive_partitions(k: u32, max_part: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(k)).rev() {
        for mut rest in naive_partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn patterns_upto(len: usize) -> Vec<Perm> {
    (1..=len).flat_map(all_perm_values).collect()
}
