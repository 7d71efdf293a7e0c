use std::fmt;

use serde::{Serialize, Serializer};

use super::VertexId;

/// Membership bitset over `0..n` with a cached cardinality.
///
/// Ordering compares the universe size first, then the words from the
/// highest vertex downwards, which makes `Ord` agree with comparing the
/// sets as binary numbers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)], len: 0 }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = VertexId>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            let m = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
            s.words[0] = m;
            s.len = m.count_ones() as usize;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True if the set is neither empty nor the whole universe.
    pub fn is_proper(&self) -> bool {
        self.len > 0 && self.len < self.n
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Inserts `v`; returns true if it was absent.
    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(v < self.n, "vertex {v} outside universe {}", self.n);
        let (w, b) = (v / 64, 1u64 << (v % 64));
        if self.words[w] & b == 0 {
            self.words[w] |= b;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, 1u64 << (v % 64));
        if self.words[w] & b != 0 {
            self.words[w] &= !b;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.n % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (self.n % 64)) - 1;
            }
        }
        VertexSet { n: self.n, words, len: self.n - self.len }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "universe mismatch");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { n: self.n, words, len }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the sorted list of member ids.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
