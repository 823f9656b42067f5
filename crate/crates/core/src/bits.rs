//! Word-level bitsets over dense vertex labels.

use std::fmt;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub(crate) fn clear_bit(words: &mut [u64], i: usize) {
    words[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Iterator over the set bits of a word slice, in increasing order.
#[derive(Clone)]
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

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

/// A set of vertices of a graph with a fixed order `n`.
///
/// All members are `< n`; operations that would violate this panic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    order: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(order: usize) -> Self {
        VertexSet {
            order,
            words: vec![0; words_for(order)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = VertexSet::new(order);
        for v in 0..order {
            set_bit(&mut s.words, v);
        }
        s
    }

    /// Builds a set from vertex labels. Panics if a label is `>= order`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(order: usize, vertices: I) -> Self {
        let mut s = VertexSet::new(order);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(order: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(order));
        VertexSet { order, words }
    }

    /// The graph order this set is tied to.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.order, "vertex {v} out of range for order {}", self.order);
        let had = test_bit(&self.words, v);
        set_bit(&mut self.words, v);
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.order {
            return false;
        }
        let had = test_bit(&self.words, v);
        clear_bit(&mut self.words, v);
        had
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.order && test_bit(&self.words, v)
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// Number of common members with a raw word row of the same width.
    pub(crate) fn intersection_len(&self, row: &[u64]) -> usize {
        and_popcount(&self.words, row)
    }

    pub(crate) fn intersects(&self, row: &[u64]) -> bool {
        self.words.iter().zip(row).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_across_words() {
        let s = VertexSet::from_vertices(200, [0, 63, 64, 130, 199]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 130, 199]);
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn insert_remove() {
        let mut s = VertexSet::new(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.contains(3));
        assert!(s.remove(3));
        assert!(s.is_empty());
        assert!(!s.contains(42));
    }

    #[test]
    #[should_panic]
    fn out_of_range_insert_panics() {
        VertexSet::new(4).insert(4);
    }
}
