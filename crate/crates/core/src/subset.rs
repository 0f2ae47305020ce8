//! Ground sets and bitmask-encoded subsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set any representation accepts. Oracle-backed functions
/// can use the full range; table-backed ones stop at [`MAX_EXPLICIT_M`].
pub const MAX_M: usize = 64;

/// Largest ground set for which a full `2^m` value table is materialized.
pub const MAX_EXPLICIT_M: usize = 24;

/// The ground set `{0, .., m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    m: usize,
}

impl GroundSet {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::invalid(format!(
                "ground set size must be in 1..={MAX_M}, got {m}"
            )));
        }
        Ok(GroundSet { m })
    }

    /// Ground set whose size also admits an explicit value table.
    pub fn tabulable(m: usize) -> Result<Self> {
        let g = Self::new(m)?;
        crate::error::require_at_most("explicit value table", m, MAX_EXPLICIT_M)?;
        Ok(g)
    }

    #[inline]
    pub fn size(self) -> usize {
        self.m
    }

    #[inline]
    pub fn full(self) -> Subset {
        Subset::full(self.m)
    }

    /// Number of subsets, `2^m`. Only meaningful for tabulable sizes.
    #[inline]
    pub fn subset_count(self) -> usize {
        1usize << self.m
    }

    #[inline]
    pub fn contains(self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    pub fn check(self, s: Subset) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "mask {:#x} has bits outside the ground set of size {}",
                s.0, self.m
            )))
        }
    }

    /// All subsets in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        self.full().subsets()
    }
}

/// A subset of the ground set, bit `i` standing for element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn full(m: usize) -> Subset {
        if m >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << m) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(items: I) -> Subset {
        Subset(items.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in ascending mask order, `∅` first.
    pub fn subsets(self) -> Submasks {
        Submasks {
            of: self.0,
            next: Some(0),
        }
    }

    /// Subsets of `self` with exactly `k` elements, in lexicographic order of
    /// their element lists.
    pub fn subsets_of_size(self, k: usize) -> Combinations {
        Combinations::new(self.elements().collect(), k)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

#[derive(Debug, Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
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

impl ExactSizeIterator for Elements {}

/// Ascending enumeration of the submasks of a mask.
#[derive(Debug, Clone)]
pub struct Submasks {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;

    #[inline]
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.of {
            None
        } else {
            Some(cur.wrapping_sub(self.of) & self.of)
        };
        Some(Subset(cur))
    }
}

/// Fixed-size combinations drawn from a list of elements.
#[derive(Debug, Clone)]
pub struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(pool: Vec<usize>, k: usize) -> Self {
        let done = k > pool.len();
        Combinations {
            pool,
            idx: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset::from_elements(self.idx.iter().map(|&i| self.pool[i]));
        let n = self.pool.len();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient as `u128`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ground_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        assert!(GroundSet::tabulable(25).is_err());
        let g = GroundSet::new(4).unwrap();
        assert_eq!(g.full().len(), 4);
        assert!(g.check(Subset(0b10000)).is_err());
    }

    #[test]
    fn submasks_ascending() {
        let s = Subset(0b1011);
        let subs: Vec<u64> = s.subsets().map(|x| x.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn combinations_count() {
        let s = Subset::full(6);
        for k in 0..=7 {
            assert_eq!(s.subsets_of_size(k).count() as u128, binomial(6, k));
            assert!(s.subsets_of_size(k).all(|t| t.len() == k));
        }
        assert_eq!(binomial(48, 3), 17296);
    }

    #[test]
    fn display() {
        assert_eq!(Subset::from_elements([3, 0]).to_string(), "{0,3}");
    }

    proptest! {
        #[test]
        fn elements_roundtrip(bits in any::<u64>()) {
            let s = Subset(bits);
            prop_assert_eq!(Subset::from_elements(s.elements()), s);
            prop_assert_eq!(s.elements().count(), s.len());
        }
    }
}
