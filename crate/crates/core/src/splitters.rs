//! Deterministic set families standing in for random sampling.
//!
//! A splitter for `(n, k)` is a family of maps `[n] -> [k²]` such that every
//! `k`-subset is mapped injectively by some member. The construction here has
//! two levels:
//!
//! 1. `x ↦ x mod p` for the first `L` primes `p > k²`. A nonzero difference
//!    `d < n` has at most `t = ⌊log_{k²+1}(n-1)⌋` prime factors above `k²`,
//!    so the `C(k,2)` differences inside a `k`-subset rule out at most
//!    `C(k,2)·t` primes; `L = C(k,2)·t + 1` primes leave one injective map.
//! 2. `y ↦ ((a·y) mod p) mod k²` for multipliers `a = 1, 2, …`. For a fixed
//!    pair `y ≠ y'` a collision forces `(a·y mod p) − (a·y' mod p)` to be one
//!    of the `2⌊(p−1)/k²⌋` nonzero multiples of `k²` in `(−p, p)`, each of
//!    which pins down a single `a`. Hence `C(k,2)·2⌊(p−1)/k²⌋ + 1`
//!    multipliers (at most `p − 1`) include one that is injective on any `k`
//!    distinct residues.
//!
//! When `n ≤ k²` the identity already splits everything, and for `p ≤ k²`
//! the second level is skipped.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Constructions are verified exhaustively up to this universe size.
pub const VERIFY_LIMIT: usize = 16;

/// `x ↦ ((multiplier · (x mod modulus)) mod modulus) mod range`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SplitterFunction {
    pub modulus: u64,
    pub multiplier: u64,
    pub range: u64,
}

impl SplitterFunction {
    pub fn eval(&self, x: u64) -> u64 {
        let y = x % self.modulus;
        ((self.multiplier as u128 * y as u128) % self.modulus as u128) as u64 % self.range
    }

    pub fn is_injective_on(&self, s: &[u64]) -> bool {
        let mut seen = BTreeSet::new();
        s.iter().all(|&x| seen.insert(self.eval(x)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitterFamily {
    pub n: usize,
    pub k: usize,
    pub functions: Vec<SplitterFunction>,
    /// Level-one primes used (empty for the identity/constant cases).
    pub primes: Vec<u64>,
    /// `(C(k,2)·⌈log₂ n⌉ + 1) · max(p_max, 1)`, an upper bound on the number
    /// of functions before deduplication.
    pub size_bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SplitterDerived,
    Padded,
}

/// Family of subsets of `[n]`.
#[derive(Debug, Clone, Serialize)]
pub struct SetFamily {
    pub universe: usize,
    pub sets: Vec<VertexSet>,
    pub provenance: Vec<Provenance>,
    pub size_bound: usize,
}

impl SetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn push_unique(&mut self, seen: &mut BTreeSet<VertexSet>, set: VertexSet, tag: Provenance) {
        if !set.is_empty() && seen.insert(set.clone()) {
            self.sets.push(set);
            self.provenance.push(tag);
        }
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

fn pairs(k: usize) -> u64 {
    (k * (k - 1) / 2) as u64
}

fn is_prime(x: u64) -> bool {
    x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
}

fn primes_above(q: u64, count: usize) -> Vec<u64> {
    (q + 1..).filter(|&p| is_prime(p)).take(count).collect()
}

fn ceil_log2(x: usize) -> usize {
    crate::isolating::ceil_log2(x) as usize
}

/// Explicit bound on the function count of [`splitter_family`].
pub fn splitter_size_bound(n: usize, k: usize) -> usize {
    let (_, primes) = level_one(n, k);
    let p_max = primes.last().copied().unwrap_or(1) as usize;
    (pairs(k) as usize * ceil_log2(n).max(1) + 1) * p_max
}

fn level_one(n: usize, k: usize) -> (u64, Vec<u64>) {
    let q = (k * k) as u64;
    if k == 1 || n as u64 <= q {
        return (q, Vec::new());
    }
    let mut t = 0u64;
    let mut pow = q as u128 + 1;
    while pow <= (n as u128 - 1) {
        t += 1;
        pow *= q as u128 + 1;
    }
    (q, primes_above(q, (pairs(k) * t + 1) as usize))
}

pub fn splitter_family(n: usize, k: usize) -> Result<SplitterFamily> {
    check(n, k)?;
    let (q, primes) = level_one(n, k);
    let mut functions = Vec::new();
    if k == 1 {
        functions.push(SplitterFunction { modulus: 1, multiplier: 1, range: 1 });
    } else if primes.is_empty() {
        functions.push(SplitterFunction { modulus: n as u64, multiplier: 1, range: q });
    } else {
        for &p in &primes {
            let multipliers = if p <= q { 1 } else { (pairs(k) * 2 * ((p - 1) / q) + 1).min(p - 1) };
            functions.extend((1..=multipliers).map(|a| SplitterFunction { modulus: p, multiplier: a, range: q }));
        }
    }
    // drop functions that act identically on [n]
    let mut seen = BTreeSet::new();
    functions.retain(|f| seen.insert((0..n as u64).map(|x| f.eval(x)).collect::<Vec<_>>()));
    let family = SplitterFamily { n, k, functions, size_bound: splitter_size_bound(n, k), primes };
    if n <= VERIFY_LIMIT {
        if let Some(bad) = unsplit_subset(&family) {
            return Err(Error::ContractViolation(format!("splitter({n},{k}) misses {bad:?}")));
        }
    }
    Ok(family)
}

/// Every `k`-subset of `[n]` in lexicographic order, passed to `f` until it
/// returns false.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[u64]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let s: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
        if !f(&s) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First `k`-subset no function splits, if any.
pub fn unsplit_subset(family: &SplitterFamily) -> Option<Vec<u64>> {
    let mut bad = None;
    for_each_subset(family.n, family.k, |s| {
        if family.functions.iter().any(|f| f.is_injective_on(s)) {
            true
        } else {
            bad = Some(s.to_vec());
            false
        }
    });
    bad
}

/// First subset `S` with `1 ≤ |S| ≤ k` that no family member meets in
/// exactly one element, if any.
pub fn unisolated_subset(family: &SetFamily, k: usize) -> Option<Vec<u64>> {
    let n = family.universe;
    let mut bad = None;
    for size in 1..=k.min(n) {
        for_each_subset(n, size, |s| {
            let set = VertexSet::from_iter(n, s.iter().map(|&x| x as usize));
            if family.sets.iter().any(|f| f.intersection_len(&set) == 1) {
                true
            } else {
                bad = Some(s.to_vec());
                false
            }
        });
        if bad.is_some() {
            break;
        }
    }
    bad
}

/// Explicit bound on [`isolator_family`] size: `k²·splitter bound`.
pub fn isolator_size_bound(n: usize, k: usize) -> usize {
    k * k * splitter_size_bound(n, k)
}

/// Sets meeting every `S`, `1 ≤ |S| ≤ k`, in exactly one element for some
/// member: the preimage classes of a splitter for `k`. A function injective
/// on every `k`-set is injective on every smaller set too, so the class of
/// each element of `S` meets `S` once.
pub fn isolator_family(n: usize, k: usize) -> Result<SetFamily> {
    check(n, k)?;
    let mut family = SetFamily { universe: n, sets: Vec::new(), provenance: Vec::new(), size_bound: isolator_size_bound(n, k) };
    let mut seen = BTreeSet::new();
    for f in splitter_family(n, k)?.functions {
        let mut classes = vec![VertexSet::empty(n); f.range as usize];
        for x in 0..n {
            classes[f.eval(x as u64) as usize].insert(x);
        }
        for c in classes {
            family.push_unique(&mut seen, c, Provenance::SplitterDerived);
        }
    }
    if n <= VERIFY_LIMIT {
        if let Some(bad) = unisolated_subset(&family, k) {
            return Err(Error::ContractViolation(format!("isolator({n},{k}) misses {bad:?}")));
        }
    }
    Ok(family)
}

/// As [`isolator_family`] but with every set of size at least two: each
/// singleton `{x}` becomes the pairs `{x, y}` for the `k` smallest `y ≠ x`.
pub fn isolator_family_min2(n: usize, k: usize) -> Result<SetFamily> {
    if k >= n {
        return Err(Error::InvalidParameter(format!("need k < n, got n={n}, k={k}")));
    }
    let base = isolator_family(n, k)?;
    let mut family = SetFamily { universe: n, sets: Vec::new(), provenance: Vec::new(), size_bound: k * base.size_bound };
    let mut seen = BTreeSet::new();
    for set in base.sets {
        if set.len() >= 2 {
            family.push_unique(&mut seen, set, Provenance::SplitterDerived);
        } else if let Some(x) = set.first() {
            for y in (0..n).filter(|&y| y != x).take(k) {
                family.push_unique(&mut seen, VertexSet::from_iter(n, [x, y]), Provenance::Padded);
            }
        }
    }
    if n <= VERIFY_LIMIT {
        if let Some(bad) = unisolated_subset(&family, k) {
            return Err(Error::ContractViolation(format!("isolator-min2({n},{k}) misses {bad:?}")));
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_splitter() {
        let f = splitter_family(4, 1).unwrap();
        assert_eq!(f.functions.len(), 1);
        assert!((0..4).all(|x| f.functions[0].eval(x) == 0));
    }

    #[test]
    fn pairs_of_eight() {
        let f = splitter_family(8, 2).unwrap();
        let mut count = 0;
        for_each_subset(8, 2, |s| {
            assert!(f.functions.iter().any(|g| g.is_injective_on(s)));
            count += 1;
            true
        });
        assert_eq!(count, 28);
        assert!(f.functions.iter().all(|g| (0..8).all(|x| g.eval(x) < 4)));
    }

    #[test]
    fn triples_of_sixteen() {
        let f = splitter_family(16, 3).unwrap();
        let mut count = 0;
        for_each_subset(16, 3, |s| {
            assert!(f.functions.iter().any(|g| g.is_injective_on(s)));
            count += 1;
            true
        });
        assert_eq!(count, 560);
    }

    #[test]
    fn large_universe_splits_sampled_subsets() {
        // beyond the exhaustive range the counting argument applies; spot check
        let f = splitter_family(1000, 4).unwrap();
        assert!(f.functions.len() <= f.size_bound);
        for base in (0..990u64).step_by(37) {
            let s = [base, base + 16, base + 3 * 16, (base * 7 + 5) % 1000];
            let mut s = s.to_vec();
            s.sort();
            s.dedup();
            assert!(f.functions.iter().any(|g| g.is_injective_on(&s)), "{s:?}");
        }
        // residues congruent mod k² are the hard case for the second level
        let s = [0, 16, 32, 48];
        assert!(f.functions.iter().any(|g| g.is_injective_on(&s)));
    }

    #[test]
    fn isolator_examples() {
        let f = isolator_family(8, 2).unwrap();
        assert!(unisolated_subset(&f, 2).is_none());
        let covered = f.sets.iter().fold(VertexSet::empty(8), |acc, s| acc.union(s));
        assert_eq!(covered, VertexSet::full(8));
        assert!(unisolated_subset(&isolator_family(12, 3).unwrap(), 3).is_none());
    }

    #[test]
    fn min2_padding_is_canonical() {
        // n = 4, k = 2: the identity splitter yields singletons {x}
        let f = isolator_family_min2(4, 2).unwrap();
        let expect: Vec<VertexSet> = [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]]
            .into_iter()
            .map(|s| VertexSet::from_iter(4, s))
            .collect();
        assert_eq!(f.sets, expect);
        assert!(f.provenance.iter().all(|&p| p == Provenance::Padded));
    }

    #[test]
    fn min2_examples() {
        let f = isolator_family_min2(8, 2).unwrap();
        assert!(f.sets.iter().all(|s| s.len() >= 2));
        assert!(unisolated_subset(&f, 2).is_none());
        let base = isolator_family(10, 3).unwrap();
        let f = isolator_family_min2(10, 3).unwrap();
        assert!(unisolated_subset(&f, 3).is_none());
        assert!(f.len() <= 3 * base.len());
    }

    #[test]
    fn parameter_errors() {
        assert!(splitter_family(3, 4).is_err());
        assert!(splitter_family(3, 0).is_err());
        assert!(isolator_family_min2(4, 4).is_err());
    }

    #[test]
    fn deterministic() {
        let a = isolator_family_min2(40, 3).unwrap();
        let b = isolator_family_min2(40, 3).unwrap();
        assert_eq!(a.sets, b.sets);
    }
}
