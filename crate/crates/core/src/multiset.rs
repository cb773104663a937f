//! Lattice-point multisets with integer (possibly negative) multiplicities.

use std::collections::BTreeMap;

use crate::rational::Int;

/// Map from integer point to multiplicity; zero multiplicities are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeMultiset {
    counts: BTreeMap<Vec<Int>, i64>,
}

impl LatticeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points<I>(points: I) -> Self
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        let mut ms = Self::new();
        for p in points {
            ms.add(p, 1);
        }
        ms
    }

    /// Adds `mult` to the multiplicity of `point`, dropping the entry when it
    /// reaches zero.
    pub fn add(&mut self, point: Vec<Int>, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.counts.entry(point);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(mult);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = *o.get() + mult;
                if next == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn multiplicity(&self, point: &[Int]) -> i64 {
        self.counts.get(point).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct points with nonzero multiplicity.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Int>, i64)> {
        self.counts.iter().map(|(p, &m)| (p, m))
    }
}

/// Pointwise integer-linear combination of multisets; zero entries dropped.
pub fn multiset_combine(parts: &[(LatticeMultiset, i64)]) -> LatticeMultiset {
    let mut out = LatticeMultiset::new();
    for (ms, coeff) in parts {
        for (point, mult) in ms.iter() {
            out.add(point.clone(), mult * coeff);
        }
    }
    out
}
