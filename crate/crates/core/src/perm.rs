//! Permutations in one-line notation and the structural operations on them:
//! pattern extraction and containment, direct and skew sums, component
//! decomposition, inversion tables, layers and the core/padding split.
//!
//! Positions and values are 1-based throughout the public API, matching the
//! usual one-line notation `π = π₁π₂…πₙ`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest permutation the crate represents.
pub const MAX_LEN: usize = 64;

/// A permutation of `1..=n` in one-line notation. The empty permutation is a
/// valid value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Perm(Vec<u8>);

impl Perm {
    /// Validates that `values` is a rearrangement of `1..=values.len()`.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::TooLong(n));
        }
        let mut seen = [false; MAX_LEN + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidInput(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::DuplicateEntry(v as i64));
            }
            seen[v] = true;
        }
        Ok(Perm(values))
    }

    /// Callers guarantee `values` is a permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Perm::new(values.clone()).is_ok());
        Perm(values)
    }

    pub fn empty() -> Self {
        Perm(Vec::new())
    }

    /// `12…n`
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN, "identity of length {n} exceeds MAX_LEN");
        Perm((1..=n as u8).collect())
    }

    /// `n…21`
    pub fn decreasing(n: usize) -> Self {
        assert!(n <= MAX_LEN, "decreasing of length {n} exceeds MAX_LEN");
        Perm((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// The value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inversions(&self) -> u64 {
        inversions(self)
    }

    pub fn contains(&self, pattern: &Perm) -> bool {
        contains(self, pattern)
    }

    pub fn avoids(&self, pattern: &Perm) -> bool {
        !contains(self, pattern)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Accepts `"364251"` (lengths up to 9), `"3,6,4,2,5,1"`, or `"-"` for the
    /// empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Perm::empty());
        }
        if s.is_empty() {
            return Err(Error::InvalidInput(
                "empty permutation string; use \"-\" for the empty permutation".into(),
            ));
        }
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad entry {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            if s.chars().count() > 9 {
                return Err(Error::InvalidInput(format!(
                    "digit strings are limited to length 9; separate entries of {s:?} with commas"
                )));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidInput(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() > MAX_LEN {
            return Err(Error::TooLong(values.len()));
        }
        if let Some(&v) = values.iter().find(|&&v| v == 0 || v > values.len()) {
            return Err(Error::InvalidInput(format!(
                "value {v} is outside 1..={} in {s:?}",
                values.len()
            )));
        }
        Perm::new(values.into_iter().map(|v| v as u8).collect())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A strictly increasing set of 1-based positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut positions: Vec<usize>) -> Result<Self> {
        if positions.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, len: 0 });
        }
        let before = positions.len();
        positions.sort_unstable();
        positions.dedup();
        if positions.len() != before {
            return Err(Error::InvalidInput("index set has repeated positions".into()));
        }
        Ok(IndexSet(positions))
    }

    pub fn all(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&i) if i > n => Err(Error::IndexOutOfRange { index: i, len: n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// The permutation order-isomorphic to a sequence of distinct integers.
pub fn standardize(seq: &[i64]) -> Result<Perm> {
    if seq.len() > MAX_LEN {
        return Err(Error::TooLong(seq.len()));
    }
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    for w in order.windows(2) {
        if seq[w[0]] == seq[w[1]] {
            return Err(Error::DuplicateEntry(seq[w[0]]));
        }
    }
    let mut out = vec![0u8; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u8 + 1;
    }
    Ok(Perm(out))
}

/// Standardization of distinct bytes; used on subsequences of a permutation.
pub(crate) fn standardize_bytes(seq: &[u8]) -> Perm {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut out = vec![0u8; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u8 + 1;
    }
    Perm(out)
}

/// `π[I]`: the pattern formed by the entries of `π` at the positions `I`.
pub fn pattern_at(perm: &Perm, positions: &IndexSet) -> Result<Perm> {
    positions.check_bounds(perm.len())?;
    let sub: Vec<u8> = positions.0.iter().map(|&i| perm.0[i - 1]).collect();
    Ok(standardize_bytes(&sub))
}

/// Depth-first occurrence search.
///
/// Pattern entries are placed left to right, each restricted to the value
/// interval spanned by its nearest already-placed neighbours in value order.
/// In forced mode the last pattern entry is pinned before the search starts,
/// so its value bounds every other placement.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    pattern: Vec<u8>,
    forced_last: bool,
    lower: Vec<Option<usize>>,
    upper: Vec<Option<usize>>,
}

impl Matcher {
    pub(crate) fn new(pattern: &[u8], forced_last: bool) -> Self {
        let len = pattern.len();
        let free = if forced_last { len.saturating_sub(1) } else { len };
        let mut lower = Vec::with_capacity(free);
        let mut upper = Vec::with_capacity(free);
        for j in 0..free {
            let placed = (0..j).chain((forced_last && len > 0).then_some(len - 1));
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for i in placed {
                if pattern[i] < pattern[j] {
                    if lo.is_none_or(|l| pattern[l] < pattern[i]) {
                        lo = Some(i);
                    }
                } else if hi.is_none_or(|h| pattern[h] > pattern[i]) {
                    hi = Some(i);
                }
            }
            lower.push(lo);
            upper.push(hi);
        }
        Matcher {
            pattern: pattern.to_vec(),
            forced_last,
            lower,
            upper,
        }
    }

    pub(crate) fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// Searches `text` (distinct values, any range) for an occurrence. In
    /// forced mode the occurrence must end at 0-based position `text.len()-1`.
    /// On success the 0-based positions are left in `slots[..pattern_len]`.
    pub(crate) fn find(&self, text: &[u8], slots: &mut [usize]) -> bool {
        let len = self.pattern.len();
        if self.forced_last {
            if len == 0 || text.len() < len {
                return false;
            }
            let last = text.len() - 1;
            slots[len - 1] = last;
            self.place(text, slots, 0, 0, last)
        } else {
            if text.len() < len {
                return false;
            }
            self.place(text, slots, 0, 0, text.len())
        }
    }

    /// Convenience wrapper for the enumeration hot path.
    #[inline]
    pub(crate) fn occurs(&self, text: &[u8]) -> bool {
        let mut slots = [0usize; MAX_LEN];
        self.find(text, &mut slots)
    }

    fn place(&self, text: &[u8], slots: &mut [usize], j: usize, start: usize, end: usize) -> bool {
        let free = self.lower.len();
        if j == free {
            return true;
        }
        let remaining = free - j;
        if end < start + remaining {
            return false;
        }
        let lo = self.lower[j].map_or(0, |i| text[slots[i]] as u16 + 1);
        let hi = self.upper[j].map_or(u16::MAX, |i| text[slots[i]] as u16);
        for pos in start..=end - remaining {
            let v = text[pos] as u16;
            if v >= lo && v < hi {
                slots[j] = pos;
                if self.place(text, slots, j + 1, pos + 1, end) {
                    return true;
                }
            }
        }
        false
    }
}

/// Finds the lexicographically least `I` with `π[I] = σ`, optionally with the
/// largest position of `I` pinned to `forced_last`.
pub fn find_occurrence(perm: &Perm, pattern: &Perm, forced_last: Option<usize>) -> Option<IndexSet> {
    let mut slots = [0usize; MAX_LEN];
    let found = match forced_last {
        None => Matcher::new(&pattern.0, false).find(&perm.0, &mut slots),
        Some(last) => {
            if last == 0 || last > perm.len() {
                return None;
            }
            Matcher::new(&pattern.0, true).find(&perm.0[..last], &mut slots)
        }
    };
    found.then(|| IndexSet(slots[..pattern.len()].iter().map(|&p| p + 1).collect()))
}

pub fn contains(perm: &Perm, pattern: &Perm) -> bool {
    pattern.len() <= perm.len() && find_occurrence(perm, pattern, None).is_some()
}

pub fn avoids(perm: &Perm, pattern: &Perm) -> bool {
    !contains(perm, pattern)
}

/// `σ ⊕ τ`: τ placed above and to the right of σ.
pub fn direct_sum(left: &Perm, right: &Perm) -> Perm {
    let k = left.len() as u8;
    let mut v = left.0.clone();
    v.extend(right.0.iter().map(|&x| x + k));
    assert!(v.len() <= MAX_LEN, "direct sum exceeds MAX_LEN");
    Perm(v)
}

/// `σ ⊖ τ`: τ placed below and to the right of σ.
pub fn skew_sum(left: &Perm, right: &Perm) -> Perm {
    let l = right.len() as u8;
    let mut v: Vec<u8> = left.0.iter().map(|&x| x + l).collect();
    v.extend_from_slice(&right.0);
    assert!(v.len() <= MAX_LEN, "skew sum exceeds MAX_LEN");
    Perm(v)
}

/// Folds a sequence of permutations with `⊕`.
pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a Perm>) -> Perm {
    parts
        .into_iter()
        .fold(Perm::empty(), |acc, p| direct_sum(&acc, p))
}

/// Lengths of the components, left to right. A prefix of length `i` closes a
/// component exactly when its maximum equals `i`.
fn component_lengths(values: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut max = 0u8;
    let mut start = 0usize;
    for (i, &v) in values.iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            out.push(i + 1 - start);
            start = i + 1;
        }
    }
    out
}

/// The unique decomposition of `π` into indecomposable direct summands.
pub fn components(perm: &Perm) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for len in component_lengths(&perm.0) {
        let block = perm.0[offset..offset + len]
            .iter()
            .map(|&v| v - offset as u8)
            .collect();
        out.push(Perm(block));
        offset += len;
    }
    out
}

pub fn is_indecomposable(perm: &Perm) -> bool {
    component_lengths(&perm.0).len() == 1
}

pub fn inversions(perm: &Perm) -> u64 {
    let v = &perm.0;
    let mut count = 0u64;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// `b₁…bₙ` where `bᵢ` counts the entries right of position `i` that are
/// smaller than `πᵢ`. Always satisfies `0 ≤ bᵢ ≤ n − i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct InversionTable(Vec<u32>);

impl InversionTable {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        if n > MAX_LEN {
            return Err(Error::TooLong(n));
        }
        for (i, &b) in entries.iter().enumerate() {
            let bound = (n - 1 - i) as u32;
            if b > bound {
                return Err(Error::InvalidInversionTable {
                    position: i + 1,
                    value: b,
                    bound,
                });
            }
        }
        Ok(InversionTable(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&b| b as u64).sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_perm(&self) -> Perm {
        let mut remaining: Vec<u8> = (1..=self.0.len() as u8).collect();
        let values = self
            .0
            .iter()
            .map(|&b| remaining.remove(b as usize))
            .collect();
        Perm(values)
    }
}

impl fmt::Display for InversionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.0.iter().all(|&b| b < 10);
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 && !digits {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn inversion_table(perm: &Perm) -> InversionTable {
    let v = &perm.0;
    let entries = (0..v.len())
        .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count() as u32)
        .collect();
    InversionTable(entries)
}

/// Inverse of [`inversion_table`]; rejects entries with `bᵢ > n − i`.
pub fn perm_from_inversion_table(entries: &[u32]) -> Result<Perm> {
    Ok(InversionTable::new(entries.to_vec())?.to_perm())
}

/// `τ′ᵢ = n + 1 − τ_{n+1−i}`.
pub fn reverse_complement(perm: &Perm) -> Perm {
    let n = perm.len() as u8;
    Perm(perm.0.iter().rev().map(|&v| n + 1 - v).collect())
}

/// Sizes of the decreasing blocks of a layered permutation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct LayerComposition(Vec<usize>);

impl LayerComposition {
    pub fn new(layer_sizes: Vec<usize>) -> Result<Self> {
        if layer_sizes.contains(&0) {
            return Err(Error::InvalidInput("layer sizes must be positive".into()));
        }
        Ok(LayerComposition(layer_sizes))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Number of layers.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total length of the layered permutation.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_perm(&self) -> Perm {
        let layers: Vec<Perm> = self.0.iter().map(|&l| Perm::decreasing(l)).collect();
        direct_sum_all(&layers)
    }

    /// All `2^(ℓ−1)` compositions of `total` (none for `total == 0`).
    pub fn all_of(total: usize) -> Vec<LayerComposition> {
        if total == 0 {
            return Vec::new();
        }
        (0u64..1 << (total - 1))
            .map(|cuts| {
                let mut sizes = Vec::new();
                let mut run = 1;
                for bit in 0..total - 1 {
                    if cuts >> bit & 1 == 1 {
                        sizes.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                sizes.push(run);
                LayerComposition(sizes)
            })
            .collect()
    }
}

impl fmt::Display for LayerComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// A permutation is layered iff every component is decreasing; the
/// components are then its layers.
pub fn layers(perm: &Perm) -> Option<LayerComposition> {
    let mut sizes = Vec::new();
    let mut offset = 0usize;
    for len in component_lengths(&perm.0) {
        let block = &perm.0[offset..offset + len];
        if !block.windows(2).all(|w| w[0] > w[1]) {
            return None;
        }
        sizes.push(len);
        offset += len;
    }
    Some(LayerComposition(sizes))
}

pub fn is_layered(perm: &Perm) -> bool {
    layers(perm).is_some()
}

/// Direct sum of `1`s and `21`s.
pub fn is_fibonacci(perm: &Perm) -> bool {
    layers(perm).is_some_and(|c| c.0.iter().all(|&l| l <= 2))
}

/// `π = α₀ ⊕ β₁ ⊕ α₁ ⊕ … ⊕ βₘ ⊕ αₘ` with each `αᵢ` an identity (possibly
/// empty) and each `βᵢ` indecomposable of size at least two.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CorePadding {
    pub core: Vec<Perm>,
    pub profile: Vec<usize>,
}

impl CorePadding {
    pub fn to_perm(&self) -> Perm {
        let mut parts = Vec::with_capacity(2 * self.core.len() + 1);
        for (i, &pad) in self.profile.iter().enumerate() {
            parts.push(Perm::identity(pad));
            if let Some(beta) = self.core.get(i) {
                parts.push(beta.clone());
            }
        }
        direct_sum_all(&parts)
    }
}

pub fn core_padding(perm: &Perm) -> CorePadding {
    let mut core = Vec::new();
    let mut profile = vec![0usize];
    for comp in components(perm) {
        if comp.len() == 1 {
            *profile.last_mut().unwrap() += 1;
        } else {
            core.push(comp);
            profile.push(0);
        }
    }
    CorePadding { core, profile }
}
