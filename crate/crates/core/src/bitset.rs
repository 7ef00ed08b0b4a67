//! Fixed-width bit vectors used both for subsets of a group and for
//! adjacency rows of graphs.
//!
//! Width is [`MAX_ORDER`] bits, two machine words. Every neighbourhood
//! operation in the solvers is a handful of word-parallel AND/OR ops.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub, SubAssign};

/// Largest supported group order / graph vertex count.
pub const MAX_ORDER: usize = 128;

const WORDS: usize = MAX_ORDER / 64;

/// A set of element (or vertex) indices below [`MAX_ORDER`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: [u64; WORDS],
}

impl ElementSet {
    pub const fn new() -> Self {
        ElementSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "set width {n} exceeds {MAX_ORDER}");
        let mut words = [0u64; WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        ElementSet { words }
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low 64 bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut words = [0u64; WORDS];
        words[0] = mask;
        ElementSet { words }
    }

    /// Low word; only meaningful when all members are below 64.
    pub fn low_mask(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_ORDER, "index {i} out of range");
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < MAX_ORDER, "index {i} out of range");
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_ORDER && self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }

    /// Cardinality.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Largest member.
    pub fn last(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate().rev() {
            if word != 0 {
                return Some(w * 64 + 63 - word.leading_zeros() as usize);
            }
        }
        None
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter {
        Iter { words: self.words, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ordering on sets by their ascending member lists, compared
    /// lexicographically. Sets of equal size compare by the lowest index in
    /// their symmetric difference: whichever contains it is smaller.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let diff = *self ^ *other;
        match diff.first() {
            None => Ordering::Equal,
            Some(d) => {
                // Up to `d` both lists agree. The one holding `d` has it next;
                // the other has either a larger element or has run out.
                let self_has = self.contains(d);
                let below = ElementSet::full(d);
                let prefix_len = (*self & below).len();
                let self_rest = self.len() - prefix_len;
                let other_rest = other.len() - prefix_len;
                if self_has {
                    if other_rest == 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                } else if self_rest == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = &mut self.words[self.word];
            if *w != 0 {
                let bit = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for ElementSet {
            type Output = ElementSet;
            #[inline]
            #[allow(clippy::assign_op_pattern)]
            fn $f(self, rhs: ElementSet) -> ElementSet {
                let mut words = self.words;
                for (a, b) in words.iter_mut().zip(rhs.words.iter()) {
                    *a = *a $op *b;
                }
                ElementSet { words }
            }
        }
        impl $atr for ElementSet {
            #[inline]
            fn $af(&mut self, rhs: ElementSet) {
                *self = $tr::$f(*self, rhs);
            }
        }
    };
}

binop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);
binop!(BitOr, bitor, BitOrAssign, bitor_assign, |);

impl BitXor for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn bitxor(self, rhs: ElementSet) -> ElementSet {
        let mut words = self.words;
        for (a, b) in words.iter_mut().zip(rhs.words.iter()) {
            *a ^= *b;
        }
        ElementSet { words }
    }
}

/// Set difference.
impl Sub for ElementSet {
    type Output = ElementSet;
    #[inline]
    fn sub(self, rhs: ElementSet) -> ElementSet {
        let mut words = self.words;
        for (a, b) in words.iter_mut().zip(rhs.words.iter()) {
            *a &= !*b;
        }
        ElementSet { words }
    }
}

impl SubAssign for ElementSet {
    #[inline]
    fn sub_assign(&mut self, rhs: ElementSet) {
        *self = *self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    #[test]
    fn full_and_len() {
        assert_eq!(ElementSet::full(0).len(), 0);
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(65).len(), 65);
        assert_eq!(ElementSet::full(128).len(), 128);
        assert_eq!(ElementSet::full(70).last(), Some(69));
    }

    #[test]
    fn iteration_crosses_word_boundary() {
        let s = ElementSet::from_indices([0, 63, 64, 127]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 127]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(127));
    }

    #[test]
    fn lex_order_examples() {
        let a = ElementSet::from_indices([0, 1]);
        let b = ElementSet::from_indices([0, 2]);
        let c = ElementSet::from_indices([1, 2]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&c), Ordering::Less);
        assert_eq!(c.lex_cmp(&a), Ordering::Greater);
        // a proper prefix sorts first
        let p = ElementSet::from_indices([0]);
        assert_eq!(p.lex_cmp(&a), Ordering::Less);
    }

    proptest! {
        #[test]
        fn lex_cmp_matches_vec_order(xs in proptest::collection::btree_set(0usize..128, 0..12),
                                     ys in proptest::collection::btree_set(0usize..128, 0..12)) {
            let a: ElementSet = xs.iter().copied().collect();
            let b: ElementSet = ys.iter().copied().collect();
            let va: Vec<usize> = xs.into_iter().collect();
            let vb: Vec<usize> = ys.into_iter().collect();
            prop_assert_eq!(a.lex_cmp(&b), va.cmp(&vb));
        }

        #[test]
        fn set_algebra(xs in proptest::collection::vec(0usize..128, 0..30),
                       ys in proptest::collection::vec(0usize..128, 0..30)) {
            let a: ElementSet = xs.iter().copied().collect();
            let b: ElementSet = ys.iter().copied().collect();
            prop_assert_eq!((a | b).len() + (a & b).len(), a.len() + b.len());
            prop_assert!((a - b).is_subset(&a));
            prop_assert!(!(a - b).intersects(&b));
        }
    }
}
