//! Integer partitions and the two inversion-table bijections:
//!
//! * 132-avoiders of length `n` with `k < n` inversions ↔ partitions of `k`;
//! * 1324-avoiders of length `n` with `k < n − 1` inversions ↔ ordered pairs
//!   of partitions with total size `k`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    components, direct_sum_all, inversion_table, inversions, reverse_complement, InversionTable,
    Perm, MAX_LEN,
};

/// Largest `k` with `p(k)` held exactly in 128 bits (with margin).
pub const PARTITION_LIMIT: usize = 1200;

/// A weakly decreasing sequence of positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The partitioned integer.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `5+4+4+1+1`, or `0` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `5+4+4+1+1`, `5,4,4,1,1`, or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An element of `Q(k)`: an ordered pair of partitions with `|λ| + |μ| = k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PartitionPair {
    pub lambda: Partition,
    pub mu: Partition,
}

impl PartitionPair {
    pub fn new(lambda: Partition, mu: Partition) -> Self {
        PartitionPair { lambda, mu }
    }

    pub fn size(&self) -> u64 {
        self.lambda.size() + self.mu.size()
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.mu)
    }
}

fn partition_table() -> &'static [u128] {
    static TABLE: OnceLock<Vec<u128>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Euler's pentagonal recurrence:
        // p(i) = Σ_{j≥1} (−1)^{j+1} [p(i − j(3j−1)/2) + p(i − j(3j+1)/2)]
        let mut table: Vec<i128> = vec![0; PARTITION_LIMIT + 1];
        table[0] = 1;
        for i in 1..=PARTITION_LIMIT {
            let mut sum: i128 = 0;
            for j in 1.. {
                let g1 = j * (3 * j - 1) / 2;
                if g1 > i {
                    break;
                }
                let term = table[i - g1]
                    + if j * (3 * j + 1) / 2 <= i {
                        table[i - j * (3 * j + 1) / 2]
                    } else {
                        0
                    };
                if j % 2 == 1 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            table[i] = sum;
        }
        table.into_iter().map(|x| x as u128).collect()
    })
}

/// `p(k)`, exact for `k ≤ 1200`.
pub fn partition_count(k: usize) -> Result<u128> {
    partition_table()
        .get(k)
        .copied()
        .ok_or(Error::LimitExceeded {
            value: k as u64,
            limit: PARTITION_LIMIT as u64,
        })
}

/// `|Q(k)| = Σ_{i=0..k} p(i) p(k − i)`.
pub fn q_count(k: usize) -> Result<u128> {
    (0..=k).try_fold(0u128, |acc, i| {
        let term = partition_count(i)?
            .checked_mul(partition_count(k - i)?)
            .ok_or(Error::Overflow("pairs of partitions"))?;
        acc.checked_add(term).ok_or(Error::Overflow("pairs of partitions"))
    })
}

/// All partitions of `k` in reverse-lexicographic order, starting from `(k)`.
pub fn enumerate_partitions(k: u32) -> Partitions {
    Partitions {
        current: if k == 0 { Some(Vec::new()) } else { Some(vec![k]) },
    }
}

pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let out = self.current.take()?;
        // Successor: drop trailing 1s, decrement the last part x > 1, then
        // refill the freed amount with parts of size x − 1.
        let mut next = out.clone();
        let mut freed: u32 = 0;
        while next.last() == Some(&1) {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let x = *last;
            freed += 1;
            while freed > 0 {
                let part = x.min(freed);
                next.push(part);
                freed -= part;
            }
            self.current = Some(next);
        }
        Some(Partition(out))
    }
}

/// The unique indecomposable permutation represented by `λ`: decode `λ`
/// padded with zeros to length `|λ| + 1`, then keep the first component.
pub fn indecomposable_from_partition(lambda: &Partition) -> Result<Perm> {
    let k = lambda.size() as usize;
    if k + 1 > MAX_LEN {
        return Err(Error::TooLong(k + 1));
    }
    let mut entries = lambda.0.clone();
    entries.resize(k + 1, 0);
    let perm = InversionTable::new(entries)?.to_perm();
    Ok(components(&perm).into_iter().next().expect("nonempty"))
}

/// The partition read off the inversion table of a 132-avoider by dropping
/// trailing zeros.
pub fn partition_of_132_avoider(perm: &Perm) -> Result<Partition> {
    let table = inversion_table(perm);
    if !table.is_weakly_decreasing() {
        return Err(Error::ContainsPattern {
            perm: perm.to_string(),
            pattern: "132".into(),
        });
    }
    let mut parts = table.entries().to_vec();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Ok(Partition(parts))
}

/// `σ ⊕ 1 ⊕ … ⊕ 1` of length `n`, where `σ` is the indecomposable permutation
/// represented by `λ`.
pub fn perm_132_from_partition(lambda: &Partition, n: usize) -> Result<Perm> {
    let sigma = indecomposable_from_partition(lambda)?;
    if n < sigma.len() {
        return Err(Error::LengthTooSmall {
            n,
            min: sigma.len(),
        });
    }
    Ok(direct_sum_all(&[sigma.clone(), Perm::identity(n - sigma.len())]))
}

fn pattern_1324() -> Perm {
    Perm::new(vec![1, 3, 2, 4]).expect("valid")
}

/// Maps a 1324-avoider with `k < n − 1` inversions to `(λ, μ) ∈ Q(k)`: `λ`
/// represents the first component and `μ` the reverse-complement of the last.
pub fn bijection_1324_forward(perm: &Perm) -> Result<PartitionPair> {
    let pattern = pattern_1324();
    if perm.contains(&pattern) {
        return Err(Error::ContainsPattern {
            perm: perm.to_string(),
            pattern: pattern.to_string(),
        });
    }
    let n = perm.len() as u64;
    let k = inversions(perm);
    if n < 2 || k >= n - 1 {
        return Err(Error::TooManyInversions {
            perm: perm.to_string(),
            inversions: k,
            max: n.saturating_sub(2),
        });
    }
    let comps = components(perm);
    // At least two components, since k < n − 1.
    let first = &comps[0];
    let last = &comps[comps.len() - 1];
    Ok(PartitionPair {
        lambda: partition_of_132_avoider(first)?,
        mu: partition_of_132_avoider(&reverse_complement(last))?,
    })
}

/// Rebuilds `σ ⊕ 12…j ⊕ τ` of length `n` from `(λ, μ)`; requires
/// `n ≥ |λ| + |μ| + 2`.
pub fn bijection_1324_inverse(pair: &PartitionPair, n: usize) -> Result<Perm> {
    let min = pair.size() as usize + 2;
    if n < min {
        return Err(Error::LengthTooSmall { n, min });
    }
    let sigma = indecomposable_from_partition(&pair.lambda)?;
    let tau = reverse_complement(&indecomposable_from_partition(&pair.mu)?);
    let padding = Perm::identity(n - sigma.len() - tau.len());
    Ok(direct_sum_all(&[sigma, padding, tau]))
}
