//! Subsets of a small labeled ground set, stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;

/// Largest node label a [`NodeSet`] can hold.
pub const MAX_LABEL: usize = 32;

/// A set of 1-indexed node labels. Label `i` lives in bit `i - 1`.
///
/// Ordering is by cardinality first, then lexicographic on the ascending
/// member lists, so that sorted collections list small sets first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn interval(m: usize) -> Self {
        assert!(m <= MAX_LABEL, "ground size {m} exceeds {MAX_LABEL}");
        if m == MAX_LABEL {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << m) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).map(NodeSet::singleton).fold(NodeSet::EMPTY, NodeSet::union)
    }

    pub fn singleton(label: usize) -> Self {
        assert!(
            (1..=MAX_LABEL).contains(&label),
            "node label {label} out of range 1..={MAX_LABEL}"
        );
        NodeSet(1u32 << (label - 1))
    }

    /// Builds a set from labels; panics on a label outside `1..=32`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        labels
            .into_iter()
            .map(NodeSet::singleton)
            .fold(NodeSet::EMPTY, NodeSet::union)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_LABEL).contains(&label) && self.0 & (1u32 << (label - 1)) != 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn insert(&mut self, label: usize) {
        *self = self.union(NodeSet::singleton(label));
    }

    pub fn remove(&mut self, label: usize) {
        *self = self.difference(NodeSet::singleton(label));
    }

    pub fn intersects(self, other: NodeSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        !self.intersects(other)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset(self, other: NodeSet) -> bool {
        other.is_subset(self)
    }

    /// Smallest label, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest label, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_LABEL - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set, in ascending bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

/// Iterator over the members of a [`NodeSet`].
#[derive(Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over the subsets of a mask (standard `(s - mask) & mask` walk).
#[derive(Clone)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        let current = self.next?;
        let following = current.wrapping_sub(self.mask) & self.mask;
        self.next = (following != 0).then_some(following);
        Some(NodeSet(current))
    }
}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_labels(iter)
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, label) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}
