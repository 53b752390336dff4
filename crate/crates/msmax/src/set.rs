//! Subsets of a fixed ground set `{1, ..., n}`.
//!
//! Sets are bit-vectors for `n <= 64` (the supported brute-force regime)
//! and sorted index lists above that, so very large ground sets remain
//! representable for sparse families even though they cannot be enumerated.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

const BITS_LIMIT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Bits(u64),
    Sparse(Vec<u32>), // strictly increasing members
}

/// A subset of `{1, ..., n}` together with its ground-set size.
#[derive(Debug, Clone, Eq)]
pub struct ObjectSet {
    n: u32,
    repr: Repr,
}

impl ObjectSet {
    pub fn empty(n: u32) -> Self {
        if n <= BITS_LIMIT {
            ObjectSet { n, repr: Repr::Bits(0) }
        } else {
            ObjectSet { n, repr: Repr::Sparse(Vec::new()) }
        }
    }

    pub fn full(n: u32) -> Self {
        if n <= BITS_LIMIT {
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            ObjectSet { n, repr: Repr::Bits(mask) }
        } else {
            ObjectSet { n, repr: Repr::Sparse((1..=n).collect()) }
        }
    }

    /// Builds a set from 1-based member indices; duplicates collapse.
    pub fn from_members<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Result<Self> {
        let mut set = ObjectSet::empty(n);
        for i in members {
            if i == 0 || i > n {
                return Err(Error::Argument(format!(
                    "object index {i} outside ground set 1..={n}"
                )));
            }
            set.insert(i);
        }
        Ok(set)
    }

    /// Bit-mask constructor for `n <= 64`; used by enumerators.
    pub fn from_mask(n: u32, mask: u64) -> Self {
        debug_assert!(n <= BITS_LIMIT);
        debug_assert!(n == 64 || mask < (1u64 << n));
        ObjectSet { n, repr: Repr::Bits(mask) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Bits(b) => b.count_ones() as usize,
            Repr::Sparse(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, i: u32) -> bool {
        if i == 0 || i > self.n {
            return false;
        }
        match &self.repr {
            Repr::Bits(b) => b & (1u64 << (i - 1)) != 0,
            Repr::Sparse(v) => v.binary_search(&i).is_ok(),
        }
    }

    pub fn insert(&mut self, i: u32) {
        debug_assert!(i >= 1 && i <= self.n);
        match &mut self.repr {
            Repr::Bits(b) => *b |= 1u64 << (i - 1),
            Repr::Sparse(v) => {
                if let Err(pos) = v.binary_search(&i) {
                    v.insert(pos, i);
                }
            }
        }
    }

    pub fn members(&self) -> Vec<u32> {
        match &self.repr {
            Repr::Bits(b) => (0..self.n).filter(|i| b & (1u64 << i) != 0).map(|i| i + 1).collect(),
            Repr::Sparse(v) => v.clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let bits = match &self.repr {
            Repr::Bits(b) => Some(*b),
            Repr::Sparse(_) => None,
        };
        let sparse: &[u32] = match &self.repr {
            Repr::Bits(_) => &[],
            Repr::Sparse(v) => v,
        };
        let n = self.n;
        (0..n)
            .filter(move |i| bits.map_or(false, |b| b & (1u64 << i) != 0))
            .map(|i| i + 1)
            .chain(sparse.iter().copied())
    }

    fn assert_same_ground(&self, other: &ObjectSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Argument(format!(
                "ground-set mismatch: n={} vs n={}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn intersection_len(&self, other: &ObjectSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => (a & b).count_ones() as usize,
            _ => self.iter().filter(|&i| other.contains(i)).count(),
        }
    }

    pub fn sym_diff_len(&self, other: &ObjectSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => (a ^ b).count_ones() as usize,
            _ => self.len() + other.len() - 2 * self.intersection_len(other),
        }
    }

    pub fn is_subset_of(&self, other: &ObjectSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => a & !b == 0,
            _ => self.iter().all(|i| other.contains(i)),
        }
    }

    pub fn intersection(&self, other: &ObjectSet) -> Result<ObjectSet> {
        self.assert_same_ground(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => ObjectSet { n: self.n, repr: Repr::Bits(a & b) },
            _ => {
                let mut out = ObjectSet::empty(self.n);
                for i in self.iter().filter(|&i| other.contains(i)) {
                    out.insert(i);
                }
                out
            }
        })
    }

    /// Keeps only members with index `<= keep_n` and shrinks the ground set
    /// to `keep_n`. Used to strip internal padding objects.
    pub fn truncate_ground(&self, keep_n: u32) -> ObjectSet {
        let mut out = ObjectSet::empty(keep_n);
        for i in self.iter().filter(|&i| i <= keep_n) {
            out.insert(i);
        }
        out
    }

    /// Total order used for canonical enumeration: compare the sets as
    /// binary masks (member i contributes 2^(i-1)). The empty set is first.
    pub fn colex_cmp(&self, other: &ObjectSet) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => a.cmp(b),
            _ => {
                let a = self.members();
                let b = other.members();
                // Compare from the largest member down.
                a.iter().rev().cmp(b.iter().rev())
            }
        }
    }

    /// Oracle tie-break order: larger cardinality first, then
    /// lexicographically smallest member list. `Less` means preferred.
    pub fn preference_cmp(&self, other: &ObjectSet) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.members().cmp(&other.members()))
    }
}

impl PartialEq for ObjectSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.colex_cmp(other) == Ordering::Equal
    }
}

impl Hash for ObjectSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for i in self.iter() {
            i.hash(state);
        }
    }
}

impl PartialOrd for ObjectSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ObjectSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.colex_cmp(other))
    }
}

impl fmt::Display for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
