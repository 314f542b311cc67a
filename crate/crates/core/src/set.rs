//! Fixed-universe vertex sets and canonically ordered families of them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest vertex universe a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 128;

/// A set of vertices over a universe of at most [`MAX_VERTICES`] vertices,
/// stored as a single 128-bit word.
///
/// The derived ordering compares the underlying bit pattern as an unsigned
/// integer; [`Family`] uses it as its canonical member order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u128 << v)
    }

    /// Builds a set from 0-based vertex indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |acc, v| acc.with(v))
    }

    /// Vertices in `[lo, hi)`.
    pub fn range(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi && hi <= MAX_VERTICES);
        if lo == hi {
            return VertexSet::EMPTY;
        }
        let width = hi - lo;
        let mask = if width == 128 {
            u128::MAX
        } else {
            (1u128 << width) - 1
        };
        VertexSet(mask << lo)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u128 << v)
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u128 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Members as 1-based indices, the convention used in every report.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_one_based()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

// Reports carry sets as sorted arrays of 1-based vertex indices.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(d)?;
        let mut set = VertexSet::EMPTY;
        for id in ids {
            if id == 0 || id > MAX_VERTICES {
                return Err(serde::de::Error::custom(format!(
                    "vertex id {id} outside 1..={MAX_VERTICES}"
                )));
            }
            set = set.with(id - 1);
        }
        Ok(set)
    }
}

/// A duplicate-free collection of vertex sets in canonical (ascending bit
/// pattern) order, so two families are equal iff their member lists are.
///
/// Members usually share one size, but hereditary families such as all
/// independent sets of size at most `r` mix sizes, so uniformity is not
/// enforced here; see [`Family::uniform_size`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<VertexSet>", into = "Vec<VertexSet>")]
pub struct Family {
    members: Vec<VertexSet>,
}

impl Family {
    pub fn new() -> Self {
        Family::default()
    }

    pub fn from_sets<I: IntoIterator<Item = VertexSet>>(sets: I) -> Self {
        let mut members: Vec<VertexSet> = sets.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Family { members }
    }

    /// Wraps a vector that the caller guarantees is sorted and deduplicated.
    pub(crate) fn from_sorted_unchecked(members: Vec<VertexSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.members.iter()
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// Common member size, or `None` when the family is empty or mixed.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members
            .iter()
            .all(|m| m.len() == first)
            .then_some(first)
    }

    /// Members containing `v`.
    pub fn star(&self, v: usize) -> Family {
        Family::from_sorted_unchecked(
            self.members
                .iter()
                .copied()
                .filter(|m| m.contains(v))
                .collect(),
        )
    }

    pub fn filter<P: FnMut(&VertexSet) -> bool>(&self, mut pred: P) -> Family {
        Family::from_sorted_unchecked(self.members.iter().copied().filter(|m| pred(m)).collect())
    }

    pub fn into_vec(self) -> Vec<VertexSet> {
        self.members
    }
}

impl From<Vec<VertexSet>> for Family {
    fn from(v: Vec<VertexSet>) -> Self {
        Family::from_sets(v)
    }
}

impl From<Family> for Vec<VertexSet> {
    fn from(f: Family) -> Self {
        f.members
    }
}

impl FromIterator<VertexSet> for Family {
    fn from_iter<I: IntoIterator<Item = VertexSet>>(iter: I) -> Self {
        Family::from_sets(iter)
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a VertexSet;
    type IntoIter = std::slice::Iter<'a, VertexSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Every pair of members (each member with itself included) shares a vertex.
///
/// Counting a member against itself means a family holding the empty set is
/// never intersecting.
pub fn is_intersecting(f: &Family) -> bool {
    first_disjoint_pair(f).is_none()
}

/// First pair `(a, b)` with `a <= b` in canonical order whose intersection is
/// empty, or `None` when the family is intersecting.
pub fn first_disjoint_pair(f: &Family) -> Option<(VertexSet, VertexSet)> {
    let m = f.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i..] {
            if !a.intersects(b) {
                return Some((a, b));
            }
        }
    }
    None
}
