//! Bitset over dense vertex indices.
//!
//! Sets for graphs with at most 128 vertices live inline; larger universes
//! (blob graphs over big candidate pools) spill to the heap.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

type Words = SmallVec<[u64; 2]>;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A set of vertex indices.
///
/// Equality, hashing and ordering ignore trailing zero words, so sets
/// built against universes of different sizes still compare by content.
#[derive(Clone, Default)]
pub struct VertexSet {
    words: Words,
}

impl VertexSet {
    /// Empty set with room for vertices `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            words: smallvec::smallvec![0; words_for(n)],
        }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(n);
            *w = if hi - lo == 64 {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        s
    }

    pub fn from_iter_sized<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::new(n);
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        let w = v / 64;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        let w = v / 64;
        w < self.words.len() && self.words[w] & (1u64 << (v % 64)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest member.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    fn zip_with(&self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) -> VertexSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len).map(|i| op(self.word(i), other.word(i))).collect();
        VertexSet { words }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.word(i);
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Lexicographic order on the ascending member sequences:
    /// `{0, 3} < {1, 2}` and a proper prefix sorts first (`{0} < {0, 1}`).
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }

    fn trimmed(&self) -> &[u64] {
        let mut end = self.words.len();
        while end > 0 && self.words[end - 1] == 0 {
            end -= 1;
        }
        &self.words[..end]
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
