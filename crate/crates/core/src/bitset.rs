//! Dynamic fixed-capacity bitsets backing adjacency rows and vertex sets.
//!
//! All graphs in this crate index vertices as `0..n` and store neighborhoods
//! as one [`Bitset`] per vertex, so set algebra (intersection, difference,
//! popcount) runs a word at a time.

/// A fixed-capacity set of indices in `[0, nbits)` backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    blocks: Vec<u64>,
    nbits: usize,
}

impl Bitset {
    /// Creates an empty set with capacity for indices `0..nbits`.
    pub fn new(nbits: usize) -> Self {
        Bitset {
            blocks: vec![0u64; nbits.div_ceil(64)],
            nbits,
        }
    }

    /// Creates a set containing every index in `0..nbits`.
    pub fn full(nbits: usize) -> Self {
        let mut s = Bitset::new(nbits);
        for (i, b) in s.blocks.iter_mut().enumerate() {
            let lo = i * 64;
            *b = if lo + 64 <= nbits {
                u64::MAX
            } else if lo < nbits {
                (1u64 << (nbits - lo)) - 1
            } else {
                0
            };
        }
        s
    }

    pub fn from_indices(nbits: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Bitset::new(nbits);
        for i in indices {
            s.insert(i);
        }
        s
    }

    #[inline(always)]
    pub fn capacity(&self) -> usize {
        self.nbits
    }

    #[inline(always)]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        (self.blocks[i >> 6] >> (i & 63)) & 1 != 0
    }

    #[inline(always)]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.blocks[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline(always)]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.blocks[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn clear(&mut self) {
        self.blocks.fill(0);
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Number of elements shared with `other`.
    #[inline]
    pub fn intersection_count(&self, other: &Bitset) -> usize {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &Bitset) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    /// Removes every index in `[0, v]`.
    pub fn remove_upto(&mut self, v: usize) {
        let word = v >> 6;
        for b in self.blocks.iter_mut().take(word) {
            *b = 0;
        }
        if word < self.blocks.len() {
            let keep_from = (v & 63) + 1;
            self.blocks[word] &= if keep_from >= 64 { 0 } else { u64::MAX << keep_from };
        }
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        for (i, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(i * 64 + b.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> BitIter<'_> {
        BitIter {
            blocks: &self.blocks,
            word_idx: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for Bitset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitIter<'a> {
    blocks: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.word_idx];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = Bitset::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert_eq!(s.count(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn full_has_exact_popcount() {
        for n in [0usize, 1, 63, 64, 65, 128, 200] {
            let s = Bitset::full(n);
            assert_eq!(s.count(), n);
            assert_eq!(s.iter().count(), n);
        }
    }

    #[test]
    fn set_algebra() {
        let a = Bitset::from_indices(100, [1, 5, 70, 99]);
        let b = Bitset::from_indices(100, [5, 70]);
        assert!(b.is_subset_of(&a));
        assert_eq!(a.intersection_count(&b), 2);
        let mut c = a.clone();
        c.subtract(&b);
        assert_eq!(c.to_vec(), vec![1, 99]);
        assert!(c.is_disjoint_from(&b));
    }

    #[test]
    fn remove_upto_clears_prefix() {
        let mut s = Bitset::full(200);
        s.remove_upto(63);
        assert_eq!(s.min(), Some(64));
        s.remove_upto(64);
        assert_eq!(s.min(), Some(65));
        assert_eq!(s.count(), 135);
        let mut t = Bitset::full(10);
        t.remove_upto(9);
        assert!(t.is_empty());
    }

    #[test]
    fn min_and_iter_order() {
        let s = Bitset::from_indices(300, [250, 3, 64]);
        assert_eq!(s.min(), Some(3));
        assert_eq!(s.to_vec(), vec![3, 64, 250]);
    }
}
