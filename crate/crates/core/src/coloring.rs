//! Red/blue splitting of a permutation that avoids `σ ⊕ (τ ⊖ 1) ⊕ ρ` into a
//! red part avoiding `σ ⊕ (τ ⊖ 1)` and a blue part avoiding `(τ ⊖ 1) ⊕ ρ`,
//! plus the merge-count convolution that turns such a splitting into a
//! counting bound.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    contains, direct_sum, find_occurrence, pattern_at, skew_sum, IndexSet, Matcher, Perm,
};

/// The three (possibly empty) pieces of the composite pattern `σ ⊕ (τ ⊖ 1) ⊕ ρ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PatternTriple {
    pub sigma: Perm,
    pub tau: Perm,
    pub rho: Perm,
}

impl PatternTriple {
    pub fn new(sigma: Perm, tau: Perm, rho: Perm) -> Self {
        PatternTriple { sigma, tau, rho }
    }

    /// `τ ⊖ 1`
    pub fn pivot(&self) -> Perm {
        skew_sum(&self.tau, &Perm::identity(1))
    }

    /// `σ ⊕ (τ ⊖ 1)`, the pattern the red elements avoid.
    pub fn red_pattern(&self) -> Perm {
        direct_sum(&self.sigma, &self.pivot())
    }

    /// `(τ ⊖ 1) ⊕ ρ`, the pattern the blue elements avoid.
    pub fn blue_pattern(&self) -> Perm {
        direct_sum(&self.pivot(), &self.rho)
    }
}

impl fmt::Display for PatternTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sigma, self.tau, self.rho)
    }
}

pub fn composite_pattern(triple: &PatternTriple) -> Perm {
    direct_sum(&triple.red_pattern(), &triple.rho)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Color {
    Red,
    Blue,
}

/// A red/blue assignment to every position of a permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn red(&self) -> IndexSet {
        self.positions(Color::Red)
    }

    pub fn blue(&self) -> IndexSet {
        self.positions(Color::Blue)
    }

    fn positions(&self, color: Color) -> IndexSet {
        let pos = self
            .colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(i, _)| i + 1)
            .collect();
        IndexSet::new(pos).expect("positions are increasing")
    }

    /// Entries of `perm` in the red positions, unstandardized.
    pub fn red_values(&self, perm: &Perm) -> Vec<u8> {
        self.values(perm, Color::Red)
    }

    pub fn blue_values(&self, perm: &Perm) -> Vec<u8> {
        self.values(perm, Color::Blue)
    }

    fn values(&self, perm: &Perm, color: Color) -> Vec<u8> {
        perm.values()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == color)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// One `R`/`B` character per position.
impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            f.write_str(match c {
                Color::Red => "R",
                Color::Blue => "B",
            })?;
        }
        Ok(())
    }
}

/// Colors `π₁, π₂, …` in order. An entry turns blue if painting it red would
/// complete a red occurrence of `σ ⊕ (τ ⊖ 1)` (the entry being the rightmost
/// element of the occurrence), or if some earlier blue entry is smaller;
/// otherwise it is red.
///
/// When `σ` and `τ` are both empty the red pattern is `1`, so every entry,
/// including the first, turns blue.
pub fn red_blue_color(perm: &Perm, triple: &PatternTriple) -> Coloring {
    let red_pattern = triple.red_pattern();
    let matcher = Matcher::new(red_pattern.values(), true);
    let mut red: Vec<u8> = Vec::with_capacity(perm.len());
    let mut min_blue = u8::MAX;
    let mut colors = Vec::with_capacity(perm.len());
    for &v in perm.values() {
        red.push(v);
        let completes = matcher.occurs(&red);
        let blue = completes || min_blue < v;
        if blue {
            red.pop();
            min_blue = min_blue.min(v);
            colors.push(Color::Blue);
        } else {
            colors.push(Color::Red);
        }
    }
    Coloring { colors }
}

/// Outcome of checking the splitting claims on one permutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ColoringReport {
    pub perm: Perm,
    pub triple: PatternTriple,
    pub coloring: String,
    pub red: Perm,
    pub blue: Perm,
    pub avoids_composite: bool,
    /// Positions in `perm` of a red occurrence of `σ ⊕ (τ ⊖ 1)`.
    pub red_violation: Option<IndexSet>,
    /// Positions in `perm` of a blue occurrence of `(τ ⊖ 1) ⊕ ρ`, reported only
    /// when `perm` avoids the composite pattern.
    pub blue_violation: Option<IndexSet>,
}

impl ColoringReport {
    pub fn passed(&self) -> bool {
        self.red_violation.is_none() && self.blue_violation.is_none()
    }
}

pub fn check_coloring_lemma(perm: &Perm, triple: &PatternTriple) -> ColoringReport {
    let coloring = red_blue_color(perm, triple);
    let red_pos = coloring.red();
    let blue_pos = coloring.blue();
    let red = pattern_at(perm, &red_pos).expect("in range");
    let blue = pattern_at(perm, &blue_pos).expect("in range");

    let lift = |sub: &IndexSet, within: &IndexSet| {
        let pos = sub
            .positions()
            .iter()
            .map(|&i| within.positions()[i - 1])
            .collect();
        IndexSet::new(pos).expect("increasing")
    };

    let red_violation =
        find_occurrence(&red, &triple.red_pattern(), None).map(|occ| lift(&occ, &red_pos));
    let avoids_composite = !contains(perm, &composite_pattern(triple));
    let blue_violation = if avoids_composite {
        find_occurrence(&blue, &triple.blue_pattern(), None).map(|occ| lift(&occ, &blue_pos))
    } else {
        None
    };

    ColoringReport {
        perm: perm.clone(),
        triple: triple.clone(),
        coloring: coloring.to_string(),
        red,
        blue,
        avoids_composite,
        red_violation,
        blue_violation,
    }
}

/// Whether `I`, `J` split the positions of `π` with `π[I] = σ` and `π[J] = τ`.
pub fn merge_witness_check(
    perm: &Perm,
    first: &IndexSet,
    second: &IndexSet,
    sigma: &Perm,
    tau: &Perm,
) -> bool {
    let n = perm.len();
    if first.len() + second.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &i in first.positions().iter().chain(second.positions()) {
        if i > n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    pattern_at(perm, first).is_ok_and(|p| &p == sigma)
        && pattern_at(perm, second).is_ok_and(|p| &p == tau)
}

/// `C(n, k)` with overflow reported.
pub(crate) fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `Σ_{k=0..n} C(n,k)² · a_k · b_{n−k}`: the number of ways to merge a
/// member of one class with a member of another into a length-`n`
/// permutation, counted with multiplicity.
pub fn merge_convolution_bound(a: &[u128], b: &[u128], n: usize) -> Result<u128> {
    if a.len() <= n || b.len() <= n {
        return Err(Error::InvalidInput(format!(
            "count sequences must have at least {} terms",
            n + 1
        )));
    }
    let overflow = || Error::Overflow("merge convolution bound");
    let mut total: u128 = 0;
    for k in 0..=n {
        let c = binomial(n as u64, k as u64)?;
        let term = c
            .checked_mul(c)
            .and_then(|x| x.checked_mul(a[k]))
            .and_then(|x| x.checked_mul(b[n - k]))
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn triple(s: &str, t: &str, r: &str) -> PatternTriple {
        PatternTriple::new(p(s), p(t), p(r))
    }

    #[test]
    fn composite_examples() {
        assert_eq!(composite_pattern(&triple("1", "1", "1")), p("1324"));
        assert_eq!(composite_pattern(&triple("-", "-", "21")), p("132"));
        assert_eq!(composite_pattern(&triple("1", "21", "1")), p("14325"));
        assert_eq!(triple("1", "1", "1").red_pattern(), p("132"));
        assert_eq!(triple("1", "1", "1").blue_pattern(), p("213"));
    }

    #[test]
    fn coloring_of_364251() {
        let pi = p("364251");
        let c = red_blue_color(&pi, &triple("1", "1", "1"));
        assert_eq!(c.to_string(), "RRBRBR");
        assert_eq!(c.red().positions(), &[1, 2, 4, 6]);
        assert_eq!(c.blue().positions(), &[3, 5]);
        assert_eq!(c.red_values(&pi), vec![3, 6, 2, 1]);
        assert_eq!(c.blue_values(&pi), vec![4, 5]);
        let report = check_coloring_lemma(&pi, &triple("1", "1", "1"));
        assert_eq!(report.red, p("3421"));
        assert_eq!(report.blue, p("12"));
        assert!(report.avoids_composite);
        assert!(report.passed());
    }

    #[test]
    fn identity_is_all_red() {
        let c = red_blue_color(&Perm::identity(7), &triple("1", "1", "1"));
        assert_eq!(c.to_string(), "RRRRRRR");
    }

    #[test]
    fn empty_sigma_keeps_red_increasing() {
        let t = triple("-", "1", "1");
        assert_eq!(t.red_pattern(), p("21"));
        for s in ["4231", "2413", "3142", "54321"] {
            let report = check_coloring_lemma(&p(s), &t);
            assert!(report.red.is_identity(), "{s}: red {}", report.red);
            assert!(report.red_violation.is_none());
        }
    }

    #[test]
    fn degenerate_red_pattern_colors_everything_blue() {
        let c = red_blue_color(&p("213"), &triple("-", "-", "1"));
        assert_eq!(c.to_string(), "BBB");
    }

    #[test]
    fn red_violation_is_reported_for_nonavoider() {
        // 1324 contains the composite; the blue claim is not checked.
        let report = check_coloring_lemma(&p("1324"), &triple("1", "1", "1"));
        assert!(!report.avoids_composite);
        assert!(report.blue_violation.is_none());
    }

    #[test]
    fn merge_witness_examples() {
        let pi = p("3175624");
        let i = IndexSet::new(vec![1, 3, 4]).unwrap();
        let j = IndexSet::new(vec![2, 5, 6, 7]).unwrap();
        assert!(merge_witness_check(&pi, &i, &j, &p("132"), &p("1423")));
        assert!(merge_witness_check(&pi, &IndexSet::all(7), &IndexSet::default(), &pi, &Perm::empty()));
        let i = IndexSet::new(vec![1, 2, 3]).unwrap();
        let j = IndexSet::new(vec![4, 5, 6, 7]).unwrap();
        assert!(!merge_witness_check(&pi, &i, &j, &p("132"), &pattern_at(&pi, &j).unwrap()));
        // Overlapping sets are not a merge.
        let i = IndexSet::new(vec![1, 3, 4]).unwrap();
        let j = IndexSet::new(vec![1, 5, 6, 7]).unwrap();
        assert!(!merge_witness_check(&pi, &i, &j, &p("132"), &p("1423")));
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(merge_convolution_bound(&[3], &[7], 0).unwrap(), 21);
        let catalan = [1u128, 1, 2, 5, 14];
        assert_eq!(merge_convolution_bound(&catalan, &catalan, 3).unwrap(), 46);
        assert!(merge_convolution_bound(&catalan, &catalan, 5).is_err());
        let huge = [u128::MAX; 3];
        assert_eq!(
            merge_convolution_bound(&huge, &huge, 2),
            Err(Error::Overflow("merge convolution bound"))
        );
    }
}
