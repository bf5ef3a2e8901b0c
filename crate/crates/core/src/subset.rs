//! Point sets of a finite space, held in a single machine word.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// Maximum number of points a space (and therefore a subset) can hold.
pub const CAPACITY: usize = 64;

/// A set of point indices `0..64` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= CAPACITY, "subset capacity is {CAPACITY}");
        if n == CAPACITY {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        assert!(i < CAPACITY, "point index {i} out of range");
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        it.into_iter().fold(Subset::EMPTY, |s, i| s | Subset::singleton(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < CAPACITY && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        *self |= Subset::singleton(i);
    }

    pub fn remove(&mut self, i: usize) {
        if i < CAPACITY {
            self.0 &= !(1u64 << i);
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n) - self
    }

    /// Re-index through `map`: member `i` becomes `map[i]`.
    pub fn map_through(self, map: &[usize]) -> Subset {
        self.iter().fold(Subset::EMPTY, |s, i| s | Subset::singleton(map[i]))
    }

    /// Shift every member up by `k`.
    pub fn shifted(self, k: usize) -> Subset {
        if self.is_empty() {
            return self;
        }
        assert!(64 - self.0.leading_zeros() as usize + k <= CAPACITY, "shift overflows subset capacity");
        Subset(self.0 << k)
    }

    /// Members in `lo..lo+len`, shifted down to start at 0.
    pub fn window(self, lo: usize, len: usize) -> Subset {
        Subset((self.0 >> lo) & Subset::full(len).0)
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;
    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset::from_indices(it)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitOrAssign for Subset {
    fn bitor_assign(&mut self, rhs: Subset) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitAndAssign for Subset {
    fn bitand_assign(&mut self, rhs: Subset) {
        self.0 &= rhs.0;
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_singletons() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(3).len(), 3);
        assert_eq!(Subset::full(64).len(), 64);
        assert!(Subset::singleton(63).contains(63));
        assert_eq!(Subset::from_indices([0, 2, 5]).iter().collect::<Vec<_>>(), vec![0, 2, 5]);
    }

    #[test]
    fn window_and_shift_are_inverse() {
        let s = Subset::from_indices([1, 3]);
        assert_eq!(s.shifted(4).window(4, 4), s);
        assert_eq!(Subset::from_indices([0, 5, 6]).window(5, 2), Subset::from_indices([0, 1]));
    }

    proptest! {
        #[test]
        fn de_morgan(a in any::<u64>(), b in any::<u64>()) {
            let (a, b) = (Subset(a), Subset(b));
            prop_assert_eq!(!(a | b), !a & !b);
            prop_assert_eq!(a - b, a & !b);
            prop_assert!((a & b).is_subset(a));
            prop_assert_eq!(a.iter().count(), a.len());
        }
    }
}
