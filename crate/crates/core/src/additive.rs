//! Interval bases, representation counts, and diagonals of basis families.
//!
//! `B ⊆ [0, m]` is an interval basis of `[0, m]` when `[0, m] ⊆ B + B`.
//! `r(A, n)` counts ordered pairs `(x, y) ∈ A²` with `x + y = n`, and
//! `s(A)` is its maximum. Given bases `B_m` for a sample of `m`, a diagonal
//! `D ⊆ [0, N]` agrees on each prefix `[0, n]` with some `B_m`, `m >= n`;
//! such a `D` is again a basis of `[0, N]` and its representation counts are
//! bounded by those of the bases.
//!
//! [`build_diagonal`] finds `D` by a breadth-first search over prefix
//! patterns, keeping a pattern at depth `n` only while enough sample members
//! realize it (see [`Threshold`]). [`validate_diagonal`] re-checks a result
//! on an independent code path.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdditiveError {
    #[error("B_{m} is not an interval basis of [0, {m}]")]
    NotABasis { m: u64 },
    #[error("the basis family is empty")]
    EmptyFamily,
    #[error("no sample member has m >= {needed}; the largest is {largest}")]
    HorizonTooLarge { needed: u64, largest: u64 },
    #[error("construction failed at depth {depth}: no prefix pattern has enough witnesses")]
    TooThin { depth: u64 },
    #[error("malformed basis family document: {0}")]
    Format(String),
}

/// `B ⊆ [0, m]` and every `n ∈ [0, m]` is `x + y` with `x, y ∈ B`.
pub fn is_interval_basis(b: &[u64], m: u64) -> bool {
    if b.iter().any(|&x| x > m) {
        return false;
    }
    let mut reach = vec![false; m as usize + 1];
    for &x in b {
        for &y in b {
            if x + y <= m {
                reach[(x + y) as usize] = true;
            }
        }
    }
    reach.into_iter().all(|r| r)
}

/// Ordered representations `n = x + y`, `x, y ∈ a`.
pub fn rep_count(a: &[u64], n: u64) -> u64 {
    let set: BTreeSet<u64> = a.iter().copied().collect();
    set.iter().filter(|&&x| x <= n && set.contains(&(n - x))).count() as u64
}

/// `max_{n <= horizon} r(a, n)`.
pub fn s_max(a: &[u64], horizon: u64) -> u64 {
    (0..=horizon).map(|n| rep_count(a, n)).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepProfile {
    pub set: Vec<u64>,
    pub horizon: u64,
    /// `counts[n] = r(set, n)` for `n <= horizon`.
    pub counts: Vec<u64>,
    pub s: u64,
}

pub fn rep_profile(a: &[u64], horizon: u64) -> RepProfile {
    let mut set: Vec<u64> = a.to_vec();
    set.sort_unstable();
    set.dedup();
    let counts: Vec<u64> = (0..=horizon).map(|n| rep_count(&set, n)).collect();
    let s = counts.iter().copied().max().unwrap_or(0);
    RepProfile { set, horizon, counts, s }
}

/// Interval bases `B_m` for a finite sample of `m`, validated on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBasisFamily {
    bases: BTreeMap<u64, Vec<u64>>,
}

impl IntervalBasisFamily {
    pub fn new(bases: BTreeMap<u64, Vec<u64>>) -> Result<Self, AdditiveError> {
        if bases.is_empty() {
            return Err(AdditiveError::EmptyFamily);
        }
        let mut clean = BTreeMap::new();
        for (m, mut b) in bases {
            b.sort_unstable();
            b.dedup();
            if !is_interval_basis(&b, m) {
                return Err(AdditiveError::NotABasis { m });
            }
            clean.insert(m, b);
        }
        Ok(IntervalBasisFamily { bases: clean })
    }

    /// `B_m = [0, ⌈m/2⌉]` for each `m` in `sample`.
    pub fn half_intervals(sample: &[u64]) -> Result<Self, AdditiveError> {
        IntervalBasisFamily::new(sample.iter().map(|&m| (m, (0..=m.div_ceil(2)).collect())).collect())
    }

    pub fn sample(&self) -> impl Iterator<Item = u64> + '_ {
        self.bases.keys().copied()
    }

    pub fn basis(&self, m: u64) -> Option<&[u64]> {
        self.bases.get(&m).map(Vec::as_slice)
    }

    /// `max_m s(B_m)`, each taken over `[0, m]`.
    pub fn local_bound(&self) -> u64 {
        self.bases.iter().map(|(&m, b)| s_max(b, m)).max().unwrap_or(0)
    }

    pub fn from_json(text: &str) -> Result<Self, AdditiveError> {
        let doc: BasisFamilyDoc = serde_json::from_str(text).map_err(|e| AdditiveError::Format(e.to_string()))?;
        let mut bases = BTreeMap::new();
        for (key, b) in doc.bases {
            let m: u64 = key.parse().map_err(|_| AdditiveError::Format(format!("basis key `{key}` is not an integer")))?;
            bases.insert(m, b);
        }
        IntervalBasisFamily::new(bases)
    }
}

/// JSON shape: `{"bases": {"4": [0, 1, 2], "8": [0, 1, 2, 3, 4]}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BasisFamilyDoc {
    pub bases: BTreeMap<String, Vec<u64>>,
}

/// Survival rule for prefix patterns. At depth `n <= horizon / 2` a pattern
/// needs `early_witnesses` sample members `m >= early_factor * n` realizing
/// it; deeper, `late_witnesses` members with `m >= n`. Witness counts are
/// capped by the sample size, so a one-member sample can still succeed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub early_witnesses: usize,
    pub early_factor: u64,
    pub late_witnesses: usize,
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold { early_witnesses: 2, early_factor: 2, late_witnesses: 1 }
    }
}

/// A diagonal with its evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagonal {
    pub set: Vec<u64>,
    pub horizon: u64,
    /// `witnesses[n]`: every sample `m >= n` with `B_m ∩ [0, n] = D ∩ [0, n]`.
    pub witnesses: Vec<Vec<u64>>,
    /// Largest `N'` such that every `n <= N'` has a witness `m >= n`.
    pub covered: u64,
    /// `max_{n <= covered} r(D, n)`.
    pub s: u64,
    /// `max_m s(B_m)`.
    pub local_bound: u64,
}

fn prefix_mask(b: &[u64], n: u64) -> Vec<bool> {
    let mut v = vec![false; n as usize + 1];
    for &x in b.iter().filter(|&&x| x <= n) {
        v[x as usize] = true;
    }
    v
}

/// Breadth-first search over prefix patterns of `[0, horizon]`.
///
/// At each depth the surviving patterns are those realized by enough
/// sample members (per `threshold`) whose shorter prefix also survived.
/// Among survivors at full depth the pattern with the most witnesses wins,
/// ties going to the lexicographically least one (absent before present,
/// scanning from 0).
pub fn build_diagonal(
    fam: &IntervalBasisFamily,
    horizon: u64,
    threshold: Threshold,
) -> Result<Diagonal, AdditiveError> {
    let largest = fam.sample().max().ok_or(AdditiveError::EmptyFamily)?;
    if largest < horizon {
        return Err(AdditiveError::HorizonTooLarge { needed: horizon, largest });
    }
    let sample_size = fam.bases.len();
    let early = threshold.early_witnesses.min(sample_size).max(1);
    let late = threshold.late_witnesses.min(sample_size).max(1);

    // Patterns are identified by the sample members realizing them: two
    // members realize the same depth-n pattern iff their prefixes agree.
    let mut survivors: Vec<Vec<bool>> = Vec::new();
    let mut best: Vec<(Vec<bool>, usize)> = Vec::new();
    for n in 0..=horizon {
        let (need, min_m) = if 2 * n <= horizon { (early, threshold.early_factor * n) } else { (late, n) };
        let mut groups: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        for (&m, b) in &fam.bases {
            if m >= min_m && m >= n {
                *groups.entry(prefix_mask(b, n)).or_default() += 1;
            }
        }
        let next: Vec<(Vec<bool>, usize)> = groups
            .into_iter()
            .filter(|(p, count)| {
                *count >= need && (n == 0 || survivors.iter().any(|s| s[..] == p[..n as usize]))
            })
            .collect();
        if next.is_empty() {
            return Err(AdditiveError::TooThin { depth: n });
        }
        survivors = next.iter().map(|(p, _)| p.clone()).collect();
        best = next;
    }
    // BTreeMap order on Vec<bool> is lexicographic with false < true.
    let (pattern, _) = best
        .into_iter()
        .fold(None::<(Vec<bool>, usize)>, |acc, (p, c)| match acc {
            Some((q, d)) if d >= c => Some((q, d)),
            _ => Some((p, c)),
        })
        .expect("survivors are nonempty");
    let set: Vec<u64> = pattern.iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x as u64).collect();

    let witnesses: Vec<Vec<u64>> = (0..=horizon)
        .map(|n| {
            fam.bases
                .iter()
                .filter(|(&m, b)| m >= n && prefix_mask(b, n) == pattern[..=n as usize])
                .map(|(&m, _)| m)
                .collect()
        })
        .collect();
    let covered = witnesses.iter().take_while(|w| !w.is_empty()).count() as u64 - 1;
    Ok(Diagonal {
        s: s_max(&set, covered),
        set,
        horizon,
        witnesses,
        covered,
        local_bound: fam.local_bound(),
    })
}

/// Outcome of [`validate_diagonal`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalCheck {
    /// Every prefix `[0, n]`, `n <= horizon`, agrees with some `B_m`, `m >= n`.
    pub prefixes_witnessed: bool,
    /// The reported witness lists are exactly the agreeing members.
    pub witnesses_match: bool,
    /// Largest `N'` with `[0, N'] ⊆ D + D`.
    pub sums_cover_to: u64,
    pub covers_horizon: bool,
    /// `max_{n <= horizon} r(D, n)`.
    pub s: u64,
    pub local_bound: u64,
    pub bound_holds: bool,
    pub ok: bool,
}

/// Re-derives every claim about `d` from the family alone, using ordered
/// sets rather than the builder's bit patterns.
pub fn validate_diagonal(fam: &IntervalBasisFamily, d: &Diagonal) -> DiagonalCheck {
    let dset: BTreeSet<u64> = d.set.iter().copied().collect();
    let within = |s: &BTreeSet<u64>, n: u64| -> BTreeSet<u64> { s.range(..=n).copied().collect() };

    let mut prefixes_witnessed = dset.iter().all(|&x| x <= d.horizon);
    let mut witnesses_match = d.witnesses.len() as u64 == d.horizon + 1;
    for n in 0..=d.horizon {
        let agreeing: Vec<u64> = fam
            .bases
            .iter()
            .filter(|(&m, b)| m >= n && within(&b.iter().copied().collect(), n) == within(&dset, n))
            .map(|(&m, _)| m)
            .collect();
        prefixes_witnessed &= !agreeing.is_empty();
        witnesses_match &= d.witnesses.get(n as usize) == Some(&agreeing);
    }

    let sums: BTreeSet<u64> = dset.iter().flat_map(|&x| dset.iter().map(move |&y| x + y)).collect();
    let mut sums_cover_to = 0;
    while sums.contains(&sums_cover_to) {
        sums_cover_to += 1;
    }
    let sums_cover_to = sums_cover_to.saturating_sub(1);
    let covers_horizon = sums.contains(&0) && sums_cover_to >= d.horizon;

    let reps = |set: &BTreeSet<u64>, n: u64| set.iter().filter(|&&x| x <= n && set.contains(&(n - x))).count() as u64;
    let s = (0..=d.horizon).map(|n| reps(&dset, n)).max().unwrap_or(0);
    let local_bound = fam
        .bases
        .iter()
        .map(|(&m, b)| {
            let bset: BTreeSet<u64> = b.iter().copied().collect();
            (0..=m).map(|n| reps(&bset, n)).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let bound_holds = s <= local_bound;
    DiagonalCheck {
        prefixes_witnessed,
        witnesses_match,
        sums_cover_to,
        covers_horizon,
        s,
        local_bound,
        bound_holds,
        ok: prefixes_witnessed && witnesses_match && covers_horizon && bound_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_examples() {
        assert!(is_interval_basis(&[0, 1, 2], 4));
        assert!(!is_interval_basis(&[0, 1], 3));
        assert!(is_interval_basis(&(0..=7).collect::<Vec<_>>(), 7));
        assert!(!is_interval_basis(&[0, 1, 5], 4));
    }

    #[test]
    fn representation_counts() {
        assert_eq!(rep_count(&[0, 1], 1), 2);
        assert_eq!(rep_count(&[0, 1], 2), 1);
        assert_eq!(s_max(&[0, 1, 2], 4), 3);
        let p = rep_profile(&[2, 0, 1, 1], 4);
        assert_eq!(p.counts, vec![1, 2, 3, 2, 1]);
        assert_eq!(p.s, 3);
    }

    #[test]
    fn half_interval_sample() {
        let fam = IntervalBasisFamily::half_intervals(&[4, 8, 16, 32]).unwrap();
        let d = build_diagonal(&fam, 8, Threshold::default()).unwrap();
        assert_eq!(d.set, (0..=8).collect::<Vec<_>>());
        assert_eq!(d.covered, 8);
        assert!(validate_diagonal(&fam, &d).ok);
    }

    #[test]
    fn single_member_sample() {
        let b: Vec<u64> = vec![0, 1, 3, 4, 6, 7, 8, 9, 10];
        assert!(is_interval_basis(&b, 12));
        let fam = IntervalBasisFamily::new(BTreeMap::from([(12, b.clone())])).unwrap();
        let d = build_diagonal(&fam, 6, Threshold::default()).unwrap();
        assert_eq!(d.set, vec![0, 1, 3, 4, 6]);
        let check = validate_diagonal(&fam, &d);
        assert!(check.ok, "{check:?}");
    }

    #[test]
    fn branching_prefixes() {
        // Two shapes alternate along the sample; their prefixes split at 3.
        let a = |m: u64| -> Vec<u64> { (0..=m.div_ceil(2)).collect() };
        let b = |m: u64| -> Vec<u64> { (0..=m.div_ceil(2)).filter(|&x| x != 3).chain([m / 2 + 1]).collect() };
        let mut bases = BTreeMap::new();
        for (k, m) in [12u64, 16, 20, 24, 28].into_iter().enumerate() {
            let basis = if k % 2 == 0 { a(m) } else { b(m) };
            assert!(is_interval_basis(&basis, m), "m = {m}");
            bases.insert(m, basis);
        }
        let fam = IntervalBasisFamily::new(bases).unwrap();
        let d = build_diagonal(&fam, 10, Threshold::default()).unwrap();
        assert!(d.set.contains(&3), "the majority shape keeps 3: {:?}", d.set);
        let check = validate_diagonal(&fam, &d);
        assert!(check.ok, "{check:?}");
    }

    #[test]
    fn validator_catches_tampering() {
        let fam = IntervalBasisFamily::half_intervals(&[8, 16, 32]).unwrap();
        let mut d = build_diagonal(&fam, 8, Threshold::default()).unwrap();
        d.set.retain(|&x| x != 2);
        let check = validate_diagonal(&fam, &d);
        assert!(!check.prefixes_witnessed && !check.ok);
    }

    #[test]
    fn construction_errors() {
        let fam = IntervalBasisFamily::half_intervals(&[4, 8]).unwrap();
        assert_eq!(
            build_diagonal(&fam, 9, Threshold::default()),
            Err(AdditiveError::HorizonTooLarge { needed: 9, largest: 8 })
        );
        let strict = Threshold { early_witnesses: 3, early_factor: 4, late_witnesses: 1 };
        let fam = IntervalBasisFamily::half_intervals(&[4, 8, 16]).unwrap();
        assert_eq!(build_diagonal(&fam, 8, strict), Err(AdditiveError::TooThin { depth: 2 }));
        assert!(matches!(
            IntervalBasisFamily::new(BTreeMap::from([(5, vec![0, 1])])),
            Err(AdditiveError::NotABasis { m: 5 })
        ));
    }

    #[test]
    fn json_family() {
        let fam = IntervalBasisFamily::from_json(r#"{"bases": {"4": [0, 1, 2], "8": [0, 1, 2, 3, 4]}}"#).unwrap();
        assert_eq!(fam.sample().collect::<Vec<_>>(), vec![4, 8]);
        assert!(matches!(IntervalBasisFamily::from_json(r#"{"bases": {"x": [0]}}"#), Err(AdditiveError::Format(_))));
    }
}
