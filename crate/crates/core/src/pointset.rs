//! Fixed-width subsets of a small universe `0..n`.

use std::cmp::Ordering;
use std::fmt;

/// Largest universe a [`PointSet`] can index.
pub const MAX_POINTS: usize = 64;

/// A subset of `0..n` for `n <= 64`, stored as one machine word.
///
/// The universe size is not stored; callers keep it next to the set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole universe `0..n`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(p: usize) -> Self {
        debug_assert!(p < MAX_POINTS);
        PointSet(1u64 << p)
    }

    /// Builds a set from points; the caller guarantees every point is `< 64`.
    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points.into_iter().fold(PointSet::EMPTY, |acc, p| acc.with(p))
    }

    #[inline]
    pub fn with(self, p: usize) -> Self {
        PointSet(self.0 | (1u64 << p))
    }

    #[inline]
    pub fn contains(self, p: usize) -> bool {
        p < MAX_POINTS && self.0 & (1u64 << p) != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The canonical family order: by size, then lexicographically on the
    /// ascending list of elements.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the lowest differing element belongs to `self`
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Ascending iterator over the points of a [`PointSet`].
#[derive(Clone, Debug)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

impl serde::Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&p) = points.iter().find(|&&p| p >= MAX_POINTS) {
            return Err(serde::de::Error::custom(format!(
                "point {p} exceeds the supported universe"
            )));
        }
        Ok(PointSet::from_points(points))
    }
}

/// Sorts a family into canonical order and removes duplicates.
pub fn canonicalize_family(family: &mut Vec<PointSet>) {
    family.sort_by(PointSet::canonical_cmp);
    family.dedup();
}

/// Intersection of a family, or `full` when the family is empty.
pub fn intersect_all<'a, I: IntoIterator<Item = &'a PointSet>>(family: I, full: PointSet) -> PointSet {
    family.into_iter().fold(full, |acc, b| acc.intersection(*b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = PointSet::from_points([0, 2]);
        let b = PointSet::from_points([1, 2]);
        let c = PointSet::from_points([1]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&a), Ordering::Greater);
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
        assert_eq!(a.canonical_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn lex_order_matches_sorted_lists() {
        // exhaustive over subsets of a 6-point universe
        for x in 0u64..64 {
            for y in 0u64..64 {
                let (a, b) = (PointSet(x), PointSet(y));
                let expected = a.len().cmp(&b.len()).then(a.to_vec().cmp(&b.to_vec()));
                assert_eq!(a.canonical_cmp(&b), expected, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn full_and_iter() {
        assert_eq!(PointSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(PointSet::full(64).len(), 64);
        assert_eq!(PointSet::full(0), PointSet::EMPTY);
        assert_eq!(PointSet::from_points([5, 1]).first(), Some(1));
        assert_eq!(PointSet::from_points([5, 1]).last(), Some(5));
    }
}
