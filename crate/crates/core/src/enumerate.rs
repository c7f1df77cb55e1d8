//! Generation and counting of pattern avoiders, refined by inversion number.
//!
//! Avoiders are grown one entry at a time: a standardized prefix of length
//! `m` is extended by appending a new relative value `v ∈ 1..=m+1` (entries
//! `≥ v` shift up by one). Order relations among the old entries are
//! unchanged, so a prefix containing the pattern can never be extended into
//! an avoider, and a new occurrence must end at the appended entry. Every
//! node of the search tree at depth `m` is itself an avoider of length `m`,
//! so one traversal to depth `n_max` fills every row of the triangle.
//!
//! Appending `v` adds exactly `m + 1 − v` inversions, which lets column
//! queries prune on the inversion budget.

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::binomial;
use crate::error::{Error, Result};
use crate::perm::{Matcher, Perm, MAX_LEN};

/// How the search tree is cut into independent tasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Depth at which subtrees become separate tasks.
    pub split_depth: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            split_depth: 4,
            jobs: None,
        }
    }
}

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
fn push_relative(buf: &mut [u8], len: usize, v: u8) {
    for x in &mut buf[..len] {
        if *x >= v {
            *x += 1;
        }
    }
    buf[len] = v;
}

#[inline]
fn pop_relative(buf: &mut [u8], len: usize) {
    let v = buf[len - 1];
    for x in &mut buf[..len - 1] {
        if *x > v {
            *x -= 1;
        }
    }
}

/// Count table indexed by `[n][k]`, with `k` capped at `max_inv`.
#[derive(Clone, Debug)]
struct Counts {
    rows: Vec<Vec<u128>>,
}

impl Counts {
    fn new(n_max: usize, max_inv: Option<usize>) -> Self {
        let rows = (0..=n_max)
            .map(|n| {
                let top = max_inv.map_or(pairs(n), |m| m.min(pairs(n)));
                vec![0u128; top + 1]
            })
            .collect();
        Counts { rows }
    }

    #[inline]
    fn bump(&mut self, n: usize, k: usize) -> Result<()> {
        let cell = &mut self.rows[n][k];
        *cell = cell
            .checked_add(1)
            .ok_or(Error::Overflow("avoider count"))?;
        Ok(())
    }

    fn absorb(mut self, other: Counts) -> Result<Counts> {
        for (row, orow) in self.rows.iter_mut().zip(other.rows) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a = a.checked_add(b).ok_or(Error::Overflow("avoider count"))?;
            }
        }
        Ok(self)
    }
}

struct Search<'a> {
    matcher: &'a Matcher,
    n_max: usize,
    max_inv: usize,
}

/// A search-tree node: a standardized avoider and its inversion count.
#[derive(Clone)]
struct Node {
    buf: [u8; MAX_LEN],
    len: usize,
    inv: usize,
}

impl Search<'_> {
    /// Visits the children of `node` down to `stop_depth`, recording every
    /// visited node in `counts`. Nodes reaching `stop_depth` are handed to
    /// `frontier` instead of being expanded further.
    fn descend(
        &self,
        node: &mut Node,
        stop_depth: usize,
        counts: &mut Counts,
        frontier: &mut Option<&mut Vec<Node>>,
    ) -> Result<()> {
        let m = node.len;
        if m == stop_depth {
            if let Some(f) = frontier {
                f.push(node.clone());
            }
            return Ok(());
        }
        let check = m + 1 >= self.matcher.pattern_len();
        for v in 1..=(m as u8 + 1) {
            let inv = node.inv + m + 1 - v as usize;
            if inv > self.max_inv {
                continue;
            }
            push_relative(&mut node.buf, m, v);
            if !(check && self.matcher.occurs(&node.buf[..m + 1])) {
                counts.bump(m + 1, inv)?;
                let saved = node.inv;
                node.len = m + 1;
                node.inv = inv;
                self.descend(node, stop_depth, counts, frontier)?;
                node.len = m;
                node.inv = saved;
            }
            pop_relative(&mut node.buf, m + 1);
        }
        Ok(())
    }
}

fn count_rows(
    pattern: &Perm,
    n_max: usize,
    max_inv: Option<usize>,
    config: &SearchConfig,
) -> Result<Counts> {
    if n_max > MAX_LEN {
        return Err(Error::TooLong(n_max));
    }
    let mut counts = Counts::new(n_max, max_inv);
    if pattern.is_empty() {
        // Everything contains the empty pattern.
        return Ok(counts);
    }
    let matcher = Matcher::new(pattern.values(), true);
    let search = Search {
        matcher: &matcher,
        n_max,
        max_inv: max_inv.unwrap_or(usize::MAX),
    };
    counts.bump(0, 0)?;

    let split = config.split_depth.min(n_max);
    let mut root = Node {
        buf: [0; MAX_LEN],
        len: 0,
        inv: 0,
    };
    let mut frontier = Vec::new();
    search.descend(&mut root, split, &mut counts, &mut Some(&mut frontier))?;
    if frontier.is_empty() || split == n_max {
        return Ok(counts);
    }

    let run = || -> Result<Counts> {
        frontier
            .par_iter()
            .map(|node| {
                let mut local = Counts::new(n_max, max_inv);
                let mut node = node.clone();
                search.descend(&mut node, search.n_max, &mut local, &mut None)?;
                Ok(local)
            })
            .try_reduce(|| Counts::new(n_max, max_inv), |a, b| a.absorb(b))
    };
    let deep = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    counts.absorb(deep)
}

/// Streams the avoiders of `pattern` of length `n` in the canonical order:
/// depth-first over appended relative values, smaller values first.
pub fn iterate_avoiders(pattern: &Perm, n: usize) -> Avoiders {
    assert!(n <= MAX_LEN, "length {n} exceeds MAX_LEN");
    Avoiders {
        matcher: (!pattern.is_empty()).then(|| Matcher::new(pattern.values(), true)),
        target: n,
        buf: Vec::with_capacity(n),
        next: vec![1; n + 1],
        done: pattern.is_empty(),
    }
}

pub struct Avoiders {
    matcher: Option<Matcher>,
    target: usize,
    buf: Vec<u8>,
    next: Vec<u8>,
    done: bool,
}

fn pop_back(buf: &mut Vec<u8>) {
    let len = buf.len();
    pop_relative(buf, len);
    buf.pop();
}

impl Iterator for Avoiders {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        if self.target == 0 {
            self.done = true;
            return Some(Perm::empty());
        }
        let matcher = self.matcher.as_ref()?;
        loop {
            let depth = self.buf.len();
            if depth == self.target {
                pop_back(&mut self.buf);
                continue;
            }
            let v = self.next[depth];
            if v as usize > depth + 1 {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                pop_back(&mut self.buf);
                continue;
            }
            self.next[depth] = v + 1;
            self.buf.push(0);
            push_relative(&mut self.buf, depth, v);
            if depth + 1 >= matcher.pattern_len() && matcher.occurs(&self.buf) {
                pop_back(&mut self.buf);
                continue;
            }
            if self.buf.len() == self.target {
                return Some(Perm::from_vec_unchecked(self.buf.clone()));
            }
            self.next[depth + 1] = 1;
        }
    }
}

/// `s_n(τ)`.
pub fn count_avoiders(pattern: &Perm, n: usize) -> Result<u128> {
    count_avoiders_with(pattern, n, &SearchConfig::default())
}

pub fn count_avoiders_with(pattern: &Perm, n: usize, config: &SearchConfig) -> Result<u128> {
    let counts = count_rows(pattern, n, None, config)?;
    counts.rows[n]
        .iter()
        .try_fold(0u128, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow("avoider count"))
}

/// Counts `s_{n,k}(τ)` for `1 ≤ n ≤ n_max` and every `k ≤ C(n,2)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvTriangle {
    pub pattern: Perm,
    /// `rows[n - 1][k] = s_{n,k}(τ)`.
    rows: Vec<Vec<u128>>,
}

impl InvTriangle {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// Row `n` (1-based), with `C(n,2) + 1` entries.
    pub fn row(&self, n: usize) -> &[u128] {
        &self.rows[n - 1]
    }

    pub fn rows(&self) -> &[Vec<u128>] {
        &self.rows
    }

    pub fn get(&self, n: usize, k: usize) -> u128 {
        self.rows
            .get(n.wrapping_sub(1))
            .and_then(|r| r.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn row_sum(&self, n: usize) -> u128 {
        self.row(n).iter().sum()
    }

    /// `n,k,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,count\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, k, c));
            }
        }
        out
    }
}

pub fn inversion_triangle(pattern: &Perm, n_max: usize) -> Result<InvTriangle> {
    inversion_triangle_with(pattern, n_max, &SearchConfig::default())
}

pub fn inversion_triangle_with(
    pattern: &Perm,
    n_max: usize,
    config: &SearchConfig,
) -> Result<InvTriangle> {
    let counts = count_rows(pattern, n_max, None, config)?;
    Ok(InvTriangle {
        pattern: pattern.clone(),
        rows: counts.rows.into_iter().skip(1).collect(),
    })
}

/// Rows `1..=n_max` of the triangle restricted to `k ≤ max_k`. Much cheaper
/// than the full triangle since subtrees past the budget are never visited.
pub fn truncated_triangle(
    pattern: &Perm,
    n_max: usize,
    max_k: usize,
    config: &SearchConfig,
) -> Result<Vec<Vec<u128>>> {
    let counts = count_rows(pattern, n_max, Some(max_k), config)?;
    Ok(counts.rows.into_iter().skip(1).collect())
}

/// `s_{n,k}(τ)` for `n = 1..=n_max` (entry `n − 1`).
pub fn column_values(pattern: &Perm, k: usize, n_max: usize) -> Result<Vec<u128>> {
    let rows = truncated_triangle(pattern, n_max, k, &SearchConfig::default())?;
    Ok(rows.iter().map(|r| r.get(k).copied().unwrap_or(0)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MonotoneViolation {
    pub n: usize,
    pub k: usize,
    pub count: u128,
    pub next_count: u128,
}

/// Column decreases `s_{n,k}(τ) > s_{n+1,k}(τ)` found up to `n_max`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonotoneReport {
    pub pattern: Perm,
    pub n_max: usize,
    pub violations: Vec<MonotoneViolation>,
}

impl MonotoneReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn monotone_violations(triangle: &InvTriangle) -> MonotoneReport {
    let mut violations = Vec::new();
    for n in 1..triangle.n_max() {
        for (k, &count) in triangle.row(n).iter().enumerate() {
            let next_count = triangle.get(n + 1, k);
            if count > next_count {
                violations.push(MonotoneViolation {
                    n,
                    k,
                    count,
                    next_count,
                });
            }
        }
    }
    MonotoneReport {
        pattern: triangle.pattern.clone(),
        n_max: triangle.n_max(),
        violations,
    }
}

pub fn check_inv_monotone(pattern: &Perm, n_max: usize) -> Result<MonotoneReport> {
    Ok(monotone_violations(&inversion_triangle(pattern, n_max)?))
}

/// Inversion distribution over all of `S_n`, by dynamic programming over
/// inversion-table digits `0 ≤ bᵢ ≤ n − i`.
pub fn mahonian_row(n: usize) -> Result<Vec<u128>> {
    let mut row = vec![1u128];
    for digits in 1..=n {
        let mut next = vec![0u128; row.len() + digits - 1];
        for (k, &c) in row.iter().enumerate() {
            for b in 0..digits {
                next[k + b] = next[k + b]
                    .checked_add(c)
                    .ok_or(Error::Overflow("mahonian number"))?;
            }
        }
        row = next;
    }
    Ok(row)
}

pub fn mahonian_count(n: usize, k: usize) -> Result<u128> {
    if k > pairs(n) {
        return Ok(0);
    }
    Ok(mahonian_row(n)?[k])
}

/// Number of direct sums of `1`s and `21`s of length `n` with `k` inversions.
pub fn fibonacci_inv_count(n: usize, k: usize) -> Result<u128> {
    if 2 * k > n {
        return Ok(0);
    }
    binomial((n - k) as u64, k as u64)
}
