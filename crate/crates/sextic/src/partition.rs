use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition of n stored in non-increasing order, e.g. (3,2,1).
/// Used both for mod-p degree patterns and permutation cycle types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u8>);

pub type DegreePattern = Partition;
pub type CycleType = Partition;

impl Partition {
    pub fn new(mut parts: Vec<u8>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn from_usizes(parts: impl IntoIterator<Item = usize>) -> Self {
        Self::new(parts.into_iter().map(|x| x as u8).collect())
    }

    pub fn parts(&self) -> &[u8] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Identity pattern 1^n.
    pub fn trivial(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// The type (2)^s padded with fixed points to n.
    pub fn involution(s: usize, n: usize) -> Self {
        let mut v = vec![2u8; s];
        v.extend(std::iter::repeat(1).take(n - 2 * s));
        Partition(v)
    }

    /// Parity of a permutation with this cycle type.
    pub fn is_even(&self) -> bool {
        self.0.iter().filter(|&&c| c % 2 == 0).count() % 2 == 0
    }

    /// Bitmask of the subset sums reachable by these parts (bit k set if k is a sum).
    pub fn subset_sums(&self) -> u64 {
        let mut m = 1u64;
        for &p in &self.0 {
            m |= m << p;
        }
        m
    }

    /// Parse "(3,2,1)" or "3,2,1".
    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Some(Partition(vec![]));
        }
        let v: Option<Vec<u8>> = t.split(',').map(|x| x.trim().parse().ok()).collect();
        v.map(Partition::new)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}
