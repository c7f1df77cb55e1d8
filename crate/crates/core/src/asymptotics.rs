//! Eventual polynomiality of the columns `n ↦ s_{n,k}(τ)`.
//!
//! A finite-difference detector fits exact rational polynomials to computed
//! columns, and the fits are compared with the degrees predicted from the
//! shape of `τ`: identity patterns have columns that vanish, Fibonacci
//! patterns with `r` inversions give degree `r − 1`, and every other pattern
//! gives degree `k` with leading coefficient `1/k!`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::enumerate::{column_values, mahonian_count};
use crate::error::{Error, Result};
use crate::partition::{partition_count, q_count};
use crate::perm::{is_fibonacci, Perm};

/// Stabilization window used when none is given.
pub const DEFAULT_WINDOW: usize = 3;

fn ratio_strings<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

/// An exact polynomial matching the tail of a sequence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PolyFit {
    pub degree: usize,
    /// Leading coefficient first.
    #[serde(serialize_with = "ratio_strings")]
    pub coefficients: Vec<BigRational>,
    /// Least `n₀` such that the polynomial matches every data point `n ≥ n₀`.
    pub stabilization_point: u64,
}

impl PolyFit {
    pub fn eval(&self, n: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.coefficients
            .iter()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn leading(&self) -> &BigRational {
        &self.coefficients[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for PolyFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match d - i {
                0 => format!("{c}"),
                1 => format!("({c})n"),
                e => format!("({c})n^{e}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn differences(seq: &[BigInt]) -> Vec<BigInt> {
    seq.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Ascending coefficients of `Σ_j Δʲ · C(x − x₀, j)`.
fn newton_to_monomial(forward_diffs: &[BigInt], x0: u64) -> Vec<BigRational> {
    let x0 = BigRational::from_integer(BigInt::from(x0));
    let mut result = vec![BigRational::zero(); forward_diffs.len()];
    // basis = C(x − x₀, j) as ascending coefficients.
    let mut basis = vec![BigRational::one()];
    for (j, d) in forward_diffs.iter().enumerate() {
        let dj = BigRational::from_integer(d.clone());
        for (i, b) in basis.iter().enumerate() {
            result[i] += &dj * b;
        }
        // basis ← basis · (x − x₀ − j) / (j + 1)
        let shift = &x0 + BigRational::from_integer(BigInt::from(j));
        let denom = BigRational::from_integer(BigInt::from(j + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &denom;
            next[i] -= b * &shift / &denom;
        }
        basis = next;
    }
    result
}

/// Finds the least `d` whose `d`-th differences are constant over the last
/// `window` values, and returns the degree-`d` polynomial through the tail.
/// `seq[i]` is the value at `n = first_n + i`.
pub fn poly_detect(seq: &[u128], first_n: u64, window: usize) -> Option<PolyFit> {
    assert!(window >= 2, "window must be at least 2");
    let values: Vec<BigInt> = seq.iter().map(|&x| BigInt::from(x)).collect();
    let mut diffs = values.clone();
    let mut table = vec![values.clone()];
    for degree in 0.. {
        if diffs.len() < window {
            return None;
        }
        let tail = &diffs[diffs.len() - window..];
        if tail.iter().all(|x| x == &tail[0]) {
            let start = values.len() - degree - 1;
            let forward: Vec<BigInt> = table
                .iter()
                .take(degree + 1)
                .map(|row| row[start].clone())
                .collect();
            let ascending = newton_to_monomial(&forward, first_n + start as u64);
            let mut fit = PolyFit {
                degree,
                coefficients: ascending.into_iter().rev().collect(),
                stabilization_point: 0,
            };
            let mut n0 = first_n + values.len() as u64;
            for (i, v) in values.iter().enumerate().rev() {
                let n = first_n + i as u64;
                if fit.eval(n) != BigRational::from_integer(v.clone()) {
                    break;
                }
                n0 = n;
            }
            fit.stabilization_point = n0;
            return Some(fit);
        }
        diffs = differences(&diffs);
        table.push(diffs.clone());
    }
    unreachable!()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternClass {
    IdentityPattern,
    Fibonacci,
    NonFibonacci,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    /// `s_{n,k}(τ) = 0` for every `n > threshold`.
    EventuallyZero { threshold: u64 },
    Degree {
        degree: usize,
        #[serde(serialize_with = "opt_ratio_string")]
        leading: Option<BigRational>,
    },
}

fn opt_ratio_string<S: Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProfileExpectation {
    pub class: PatternClass,
    pub expected: Expected,
}

pub fn classify(pattern: &Perm) -> PatternClass {
    if pattern.is_identity() {
        PatternClass::IdentityPattern
    } else if is_fibonacci(pattern) {
        PatternClass::Fibonacci
    } else {
        PatternClass::NonFibonacci
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Predicted large-`n` behaviour of column `k`.
pub fn expected_profile(pattern: &Perm, k: usize) -> Result<ProfileExpectation> {
    if pattern.is_empty() {
        return Err(Error::InvalidInput("the empty pattern has no avoiders".into()));
    }
    let class = classify(pattern);
    let expected = match class {
        PatternClass::IdentityPattern => Expected::EventuallyZero {
            threshold: (pattern.len() as u64 - 1) * (k as u64 + 1),
        },
        PatternClass::Fibonacci => {
            let r = pattern.inversions() as usize;
            if k < r {
                return Err(Error::OutOfHypothesis(format!(
                    "{pattern} has {r} inversions; column k = {k} is below it"
                )));
            }
            // Known eventual values: partitions for 132 and 213, pairs of
            // partitions for 1324.
            let known = match pattern.to_string().as_str() {
                "132" | "213" => Some(partition_count(k)?),
                "1324" => Some(q_count(k)?),
                _ => None,
            };
            Expected::Degree {
                degree: r - 1,
                leading: known.map(|v| BigRational::from_integer(BigInt::from(v))),
            }
        }
        PatternClass::NonFibonacci => Expected::Degree {
            degree: k,
            leading: Some(BigRational::new(BigInt::one(), factorial(k))),
        },
    };
    Ok(ProfileExpectation { class, expected })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// Not enough data to decide.
    Inconclusive,
    /// The pattern/column pair is outside the predicted regime.
    OutOfHypothesis,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProfileReport {
    pub pattern: Perm,
    pub k: usize,
    pub n_max: usize,
    /// `s_{n,k}(τ)` for `n = 1..=n_max`.
    pub data: Vec<u128>,
    pub fit: Option<PolyFit>,
    pub expectation: Option<ProfileExpectation>,
    pub verdict: Verdict,
}

pub fn verify_profile(pattern: &Perm, k: usize, n_max: usize, window: usize) -> Result<ProfileReport> {
    let data = column_values(pattern, k, n_max)?;
    let fit = poly_detect(&data, 1, window);
    let expectation = match expected_profile(pattern, k) {
        Ok(e) => Some(e),
        Err(Error::OutOfHypothesis(_)) => None,
        Err(e) => return Err(e),
    };
    let verdict = match (&expectation, &fit) {
        (None, _) => Verdict::OutOfHypothesis,
        (Some(_), None) => Verdict::Inconclusive,
        (Some(e), Some(fit)) => match &e.expected {
            Expected::EventuallyZero { threshold } => {
                let beyond = &data[(*threshold as usize).min(data.len())..];
                if beyond.is_empty() {
                    Verdict::Inconclusive
                } else if beyond.iter().all(|&c| c == 0) && fit.is_zero() {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                }
            }
            Expected::Degree { degree, leading } => {
                let leading_ok = leading.as_ref().is_none_or(|l| fit.leading() == l);
                if fit.degree == *degree && leading_ok {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                }
            }
        },
    };
    Ok(ProfileReport {
        pattern: pattern.clone(),
        k,
        n_max,
        data,
        fit,
        expectation,
        verdict,
    })
}

/// `s_{n,k}(τ) / s_{n,k}`: the fraction of length-`n` permutations with `k`
/// inversions that avoid `τ`.
pub fn dichotomy_ratio(pattern: &Perm, k: usize, n: usize) -> Result<BigRational> {
    let total = mahonian_count(n, k)?;
    if total == 0 {
        return Err(Error::InvalidInput(format!(
            "no permutation of length {n} has {k} inversions"
        )));
    }
    let avoiders = column_values(pattern, k, n)?[n - 1];
    Ok(BigRational::new(BigInt::from(avoiders), BigInt::from(total)))
}

/// The limit of [`dichotomy_ratio`] as `n → ∞`: 0 for Fibonacci patterns
/// (identities included) once `k` reaches their inversion number, else 1.
pub fn dichotomy_limit(pattern: &Perm, k: usize) -> u8 {
    if is_fibonacci(pattern) && k as u64 >= pattern.inversions() {
        0
    } else {
        1
    }
}
