use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::Elem;

/// A subset of an algebra's carrier.
///
/// Sets compare by their value as a binary number (element `i` is bit `i`),
/// which is the canonical order for every list of subsets this crate returns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(carrier: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(carrier),
        }
    }

    pub fn full(carrier: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(carrier);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(carrier: usize, elems: I) -> Self {
        let mut s = Self::empty(carrier);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Carrier size this set lives in.
    pub fn carrier(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.carrier()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e)
    }

    /// Returns true if `e` was not already present.
    pub fn insert(&mut self, e: Elem) -> bool {
        assert!(e < self.carrier(), "element {e} outside carrier");
        !self.bits.put(e)
    }

    pub fn remove(&mut self, e: Elem) {
        self.bits.set(e, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElementSet { bits }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.carrier().max(other.carrier());
        for i in (0..n).rev() {
            let a = i < self.carrier() && self.bits.contains(i);
            let b = i < other.carrier() && other.bits.contains(i);
            match (a, b) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
