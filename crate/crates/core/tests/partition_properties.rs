mod common;

use std::collections::HashSet;

use common::naive_partitions;
use permpat::enumerate::{inversion_triangle, iterate_avoiders, truncated_triangle, SearchConfig};
use permpat::partition::*;
use permpat::perm::{components, inversions, is_indecomposable};
use permpat::Perm;

fn p(s: &str) -> Perm {
    s.parse().unwrap()
}

#[test]
fn enumeration_matches_recursive_oracle() {
    for k in 0..=15u32 {
        let got: Vec<Vec<u32>> = enumerate_partitions(k).map(|l| l.parts().to_vec()).collect();
        assert_eq!(got, naive_partitions(k, k.max(1)), "k={k}");
        assert_eq!(got.len() as u128, partition_count(k as usize).unwrap());
    }
}

#[test]
fn q_counts_ordered_pairs() {
    for k in 0..=20usize {
        let pairs: u128 = (0..=k)
            .map(|i| naive_partitions(i as u32, i as u32).len() as u128 * naive_partitions((k - i) as u32, (k - i) as u32).len() as u128)
            .sum();
        assert_eq!(q_count(k).unwrap(), pairs);
    }
}

#[test]
fn large_partition_counts() {
    assert_eq!(partition_count(100).unwrap(), 190_569_292);
    assert_eq!(partition_count(200).unwrap(), 3_972_999_029_388);
    assert!(partition_count(PARTITION_LIMIT + 1).is_err());
}

#[test]
fn column_constants_for_132() {
    let t = inversion_triangle(&p("132"), 10).unwrap();
    for n in 1..=10 {
        for k in 0..n {
            assert_eq!(t.get(n, k), partition_count(k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn column_constants_for_1324() {
    let rows = truncated_triangle(&p("1324"), 12, 10, &SearchConfig::default()).unwrap();
    for n in 2..=12usize {
        for k in 0..n - 1 {
            assert_eq!(rows[n - 1][k], q_count(k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn partitions_give_distinct_indecomposables() {
    for k in 0..=12u32 {
        let mut seen = HashSet::new();
        for lambda in enumerate_partitions(k) {
            let sigma = indecomposable_from_partition(&lambda).unwrap();
            assert!(is_indecomposable(&sigma));
            assert_eq!(inversions(&sigma), k as u64);
            assert!(sigma.len() <= k as usize + 1);
            assert!(sigma.avoids(&p("132")));
            assert_eq!(partition_of_132_avoider(&sigma).unwrap(), lambda);
            assert!(seen.insert(sigma));
        }
    }
}

#[test]
fn bijection_132_round_trips() {
    for n in 1..=9 {
        for pi in iterate_avoiders(&p("132"), n) {
            let k = inversions(&pi) as usize;
            if k >= n {
                continue;
            }
            let lambda = partition_of_132_avoider(&pi).unwrap();
            assert_eq!(lambda.size() as usize, k);
            assert_eq!(perm_132_from_partition(&lambda, n).unwrap(), pi);
        }
        for k in 0..n as u32 {
            for lambda in enumerate_partitions(k) {
                let pi = perm_132_from_partition(&lambda, n).unwrap();
                assert_eq!(partition_of_132_avoider(&pi).unwrap(), lambda);
            }
        }
    }
}

#[test]
fn bijection_1324_round_trips() {
    for n in 2..=9 {
        let mut images = HashSet::new();
        for pi in iterate_avoiders(&p("1324"), n) {
            if inversions(&pi) + 1 >= n as u64 {
                assert!(bijection_1324_forward(&pi).is_err());
                continue;
            }
            let pair = bijection_1324_forward(&pi).unwrap();
            assert_eq!(pair.size(), inversions(&pi));
            assert_eq!(bijection_1324_inverse(&pair, n).unwrap(), pi);
            assert!(images.insert(pair.to_string()));
        }
        for k in 0..n - 1 {
            for i in 0..=k as u32 {
                for lambda in enumerate_partitions(i) {
                    for mu in enumerate_partitions(k as u32 - i) {
                        let pair = PartitionPair::new(lambda.clone(), mu);
                        let pi = bijection_1324_inverse(&pair, n).unwrap();
                        assert!(pi.avoids(&p("1324")));
                        assert!(components(&pi).len() >= 2);
                        assert_eq!(bijection_1324_forward(&pi).unwrap(), pair);
                    }
                }
            }
        }
    }
}

#[test]
fn bijection_errors() {
    assert!(matches!(
        bijection_1324_forward(&p("1324")),
        Err(permpat::Error::ContainsPattern { .. })
    ));
    let pair = PartitionPair::new("2".parse().unwrap(), "1".parse().unwrap());
    assert!(matches!(
        bijection_1324_inverse(&pair, 4),
        Err(permpat::Error::LengthTooSmall { .. })
    ));
    assert!(partition_of_132_avoider(&p("132")).is_err());
}
