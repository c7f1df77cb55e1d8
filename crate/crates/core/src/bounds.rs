//! Growth-rate bound calculators and the numeric partition inequalities.
//!
//! Large quantities are carried as natural logarithms; comparisons against
//! exact integer counts are made in log space with [`LOG_TOLERANCE`].

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{partition_count, q_count, PARTITION_LIMIT};
use crate::perm::LayerComposition;

/// Slack required on log-space strict inequalities.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// A non-negative bound with a human-readable trace of how it was obtained.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BoundValue {
    pub formula: &'static str,
    /// The bound itself; `+inf` once it leaves the `f64` range.
    pub value: f64,
    /// Natural logarithm of the bound (`-inf` for a zero bound).
    pub ln_value: f64,
    pub derivation: String,
}

impl BoundValue {
    fn from_value(formula: &'static str, value: f64, derivation: String) -> Self {
        BoundValue {
            formula,
            value,
            ln_value: value.ln(),
            derivation,
        }
    }

    fn from_ln(formula: &'static str, ln_value: f64, derivation: String) -> Self {
        BoundValue {
            formula,
            value: ln_value.exp(),
            ln_value,
            derivation,
        }
    }

    /// `value^(1/n)`, computed without leaving log space.
    pub fn nth_root(&self, n: u64) -> f64 {
        (self.ln_value / n as f64).exp()
    }
}

/// `ρ = e^{π√(2/3)}`, the base in `p(k) < ρ^√k`.
pub fn rho() -> f64 {
    ln_rho().exp()
}

pub fn ln_rho() -> f64 {
    PI * (2.0f64 / 3.0).sqrt()
}

/// `(√α + √β)²`: the growth-rate bound for merges of two classes.
pub fn sqrt_merge_combine(alpha: f64, beta: f64) -> f64 {
    alpha + beta + 2.0 * (alpha * beta).sqrt()
}

/// `ℓ₁ + ℓₘ − m + 1 + 2 Σ_{i=2..m−1} ℓᵢ`, the square root of the layered bound.
pub fn layered_bound_root(layers: &LayerComposition) -> Result<i64> {
    let l = layers.sizes();
    let m = l.len();
    if m == 0 {
        return Err(Error::InvalidInput("at least one layer is required".into()));
    }
    let inner: i64 = if m > 2 {
        l[1..m - 1].iter().map(|&x| x as i64).sum()
    } else {
        0
    };
    Ok(l[0] as i64 + l[m - 1] as i64 - m as i64 + 1 + 2 * inner)
}

pub fn layered_bound(layers: &LayerComposition) -> Result<BoundValue> {
    let root = layered_bound_root(layers)?;
    let mut derivation = format!(
        "layers {layers}: (l1 + lm - m + 1 + 2*sum(l2..l(m-1)))^2 = {root}^2 = {}",
        root * root
    );
    if layers.len() == 1 {
        let l1 = layers.sizes()[0] as i64;
        derivation.push_str(&format!(
            "; single layer read literally as (2*l1)^2, the sharper known value is (l1-1)^2 = {}",
            (l1 - 1) * (l1 - 1)
        ));
    }
    Ok(BoundValue::from_value(
        "layered",
        (root * root) as f64,
        derivation,
    ))
}

/// Square root of the layered bound by the inductive route:
/// `√α(ℓ₁…ℓₘ) ≤ √α(ℓ₁,ℓ₂) + √α(ℓ₂…ℓₘ)`, with `√α(ℓ₁,ℓ₂) = ℓ₁ + ℓ₂ − 1`
/// and `√α(ℓ₁) = 2ℓ₁`.
pub fn layered_bound_recursive_root(layers: &LayerComposition) -> Result<i64> {
    fn go(l: &[usize]) -> i64 {
        match l {
            [a] => 2 * *a as i64,
            [a, b] => *a as i64 + *b as i64 - 1,
            [a, b, ..] => (*a as i64 + *b as i64 - 1) + go(&l[1..]),
            [] => unreachable!(),
        }
    }
    if layers.is_empty() {
        return Err(Error::InvalidInput("at least one layer is required".into()));
    }
    Ok(go(layers.sizes()))
}

pub fn layered_bound_recursive(layers: &LayerComposition) -> Result<BoundValue> {
    let root = layered_bound_recursive_root(layers)?;
    let steps: Vec<String> = layers
        .sizes()
        .windows(2)
        .map(|w| format!("({}+{}-1)", w[0], w[1]))
        .collect();
    let derivation = if steps.is_empty() {
        format!("layers {layers}: (2*l1)^2 = {}", root * root)
    } else {
        format!(
            "layers {layers}: ({})^2 = {root}^2 = {}",
            steps.join(" + "),
            root * root
        )
    };
    Ok(BoundValue::from_value(
        "layered-recursive",
        (root * root) as f64,
        derivation,
    ))
}

/// Whether every layered pattern of length `total` has bound at most
/// `4·total²`.
pub fn layered_corollary_check(total: usize) -> Result<bool> {
    let limit = 4 * (total as i64) * (total as i64);
    for c in LayerComposition::all_of(total) {
        let r = layered_bound_root(&c)?;
        if r * r > limit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Natural log of an exact count.
pub fn ln_count(x: u128) -> f64 {
    (x as f64).ln()
}

/// `p(k) < ρ^√k`, compared as `ln p(k) < π√(2k/3)`.
pub fn partition_bound_holds(k: usize) -> Result<bool> {
    let lhs = ln_count(partition_count(k)?);
    let rhs = (k as f64).sqrt() * ln_rho();
    Ok(lhs + LOG_TOLERANCE < rhs)
}

/// `(k + 1) ρ^√(2k)`.
pub fn q_bound(k: usize) -> BoundValue {
    let ln = ((k + 1) as f64).ln() + (2.0 * k as f64).sqrt() * ln_rho();
    BoundValue::from_ln(
        "pairs-of-partitions",
        ln,
        format!("(k+1)*rho^sqrt(2k) with k = {k}"),
    )
}

/// `|Q(k)| < (k + 1) ρ^√(2k)` in log space.
pub fn q_bound_holds(k: usize) -> Result<bool> {
    Ok(ln_count(q_count(k)?) + LOG_TOLERANCE < q_bound(k).ln_value)
}

fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `Σ_{k=0..m} (k + 1) ρ^√(2k)` with `m = C(n,2)`, as a natural log.
pub fn conditional_1324_sum_ln(n: u64) -> f64 {
    let m = n * n.saturating_sub(1) / 2;
    (0..=m).fold(f64::NEG_INFINITY, |acc, k| ln_add(acc, q_bound(k as usize).ln_value))
}

/// `¼ (n² − n + 2)² ρ^{n√(1 − 1/n)}`, the bound on `s_n(1324)` implied by
/// monotone columns.
pub fn conditional_1324_bound(n: u64) -> Result<BoundValue> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let nf = n as f64;
    let ln = 2.0 * ((nf * nf - nf + 2.0) / 2.0).ln() + nf * (1.0 - 1.0 / nf).sqrt() * ln_rho();
    Ok(BoundValue::from_ln(
        "conditional-1324",
        ln,
        format!(
            "(m+1)^2 rho^sqrt(2m) = (n^2-n+2)^2/4 * rho^(n*sqrt(1-1/n)) with n = {n}, m = {}",
            n * (n - 1) / 2
        ),
    ))
}

/// `Σ_{k=0..m} p(k)` with `m = C(n,2)`: the sum of eventual column values
/// of the 132 triangle up to the largest possible inversion number.
pub fn s132_column_bound(n: u64) -> Result<u128> {
    let m = (n * n.saturating_sub(1) / 2) as usize;
    (0..=m).try_fold(0u128, |acc, k| {
        acc.checked_add(partition_count(k)?)
            .ok_or(Error::Overflow("132 column bound"))
    })
}

/// `(m + 1) p(m + 1)` with `m = C(n,2)`; exact while `m + 1 ≤ 1200`, then
/// through `p(k) < ρ^√k`.
pub fn s132_bound(n: u64) -> BoundValue {
    let m1 = n * n.saturating_sub(1) / 2 + 1;
    if m1 as usize <= PARTITION_LIMIT {
        let p = partition_count(m1 as usize).expect("within limit");
        let exact = (m1 as u128).checked_mul(p);
        if let Some(v) = exact {
            return BoundValue::from_value(
                "132-inversions",
                v as f64,
                format!("(m+1)*p(m+1) = {m1}*{p} = {v} with m = {}", m1 - 1),
            );
        }
    }
    BoundValue::from_ln(
        "132-inversions",
        (m1 as f64).ln() + (m1 as f64).sqrt() * ln_rho(),
        format!("(m+1)*rho^sqrt(m+1) with m = {}", m1 - 1),
    )
}
