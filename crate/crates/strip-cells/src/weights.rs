use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CellError;

pub type Label = u32;
pub type Weight = u64;

/// A disk label together with its diameter in strip-width units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightedLabel {
    pub label: Label,
    pub weight: Weight,
}

impl WeightedLabel {
    pub fn new(label: Label, weight: Weight) -> Self {
        WeightedLabel { label, weight }
    }
}

/// An ordered set of weighted labels.
///
/// The order is the total order used by the identity inclusion of a
/// permutohedron and by the canonical form of its blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSet {
    entries: Vec<WeightedLabel>,
}

impl WeightedSet {
    pub fn new(entries: Vec<WeightedLabel>) -> Result<Self, CellError> {
        for (i, e) in entries.iter().enumerate() {
            if e.label == 0 {
                return Err(CellError::ZeroLabel);
            }
            if e.weight == 0 {
                return Err(CellError::ZeroWeight(e.label));
            }
            if entries[..i].iter().any(|f| f.label == e.label) {
                return Err(CellError::DuplicateLabel(e.label));
            }
        }
        Ok(WeightedSet { entries })
    }

    /// Labels of weight one, in the given order.
    pub fn unit<I: IntoIterator<Item = Label>>(labels: I) -> Result<Self, CellError> {
        Self::new(labels.into_iter().map(|l| WeightedLabel::new(l, 1)).collect())
    }

    /// The labels `1..=n`, all of weight one.
    pub fn range(n: u32) -> Self {
        WeightedSet {
            entries: (1..=n).map(|l| WeightedLabel::new(l, 1)).collect(),
        }
    }

    pub fn entries(&self) -> &[WeightedLabel] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.entries.iter().map(|e| e.label)
    }

    pub fn weight(&self, label: Label) -> Option<Weight> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.weight)
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    pub fn contains(&self, label: Label) -> bool {
        self.position(label).is_some()
    }

    pub fn total_weight(&self) -> Weight {
        self.entries.iter().map(|e| e.weight).sum()
    }

    /// Same entries, sorted by ascending label.
    pub fn sorted(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort();
        WeightedSet { entries }
    }

    pub fn is_sorted(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].label < w[1].label)
    }

    /// `self` followed by `other`; fails on a shared label.
    pub fn disjoint_union(&self, other: &WeightedSet) -> Result<Self, CellError> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(entries)
    }

    pub fn without(&self, label: Label) -> Self {
        WeightedSet {
            entries: self.entries.iter().copied().filter(|e| e.label != label).collect(),
        }
    }

    pub fn push(&mut self, entry: WeightedLabel) -> Result<(), CellError> {
        if entry.weight == 0 {
            return Err(CellError::ZeroWeight(entry.label));
        }
        if entry.label == 0 {
            return Err(CellError::ZeroLabel);
        }
        if self.contains(entry.label) {
            return Err(CellError::DuplicateLabel(entry.label));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub(crate) fn weight_of(&self, label: Label) -> Result<Weight, CellError> {
        self.weight(label).ok_or(CellError::UnknownLabel(label))
    }
}

impl fmt::Display for WeightedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", e.label, e.weight)?;
        }
        Ok(())
    }
}

/// Parses `label:weight` entries separated by whitespace or commas; a bare
/// label has weight one.
impl FromStr for WeightedSet {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, CellError> {
        let mut entries = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (l, w) = match tok.split_once(':') {
                Some((l, w)) => (l, w),
                None => (tok, "1"),
            };
            let label = l.parse().map_err(|_| CellError::Parse(tok.to_string()))?;
            let weight = w.parse().map_err(|_| CellError::Parse(tok.to_string()))?;
            entries.push(WeightedLabel::new(label, weight));
        }
        Self::new(entries)
    }
}

/// Weighted sign of the rearrangement taking the sequence `from` to `to`.
///
/// Every pair of labels whose relative order changes contributes
/// `(-1)^(w_a w_b)`, so only pairs of odd-weight labels matter.
pub fn wsgn(from: &[Label], to: &[Label], set: &WeightedSet) -> Result<i8, CellError> {
    if from.len() != to.len() {
        return Err(CellError::NotARearrangement);
    }
    let mut odd_positions = Vec::with_capacity(from.len());
    for &l in from {
        let pos = to.iter().position(|&m| m == l).ok_or(CellError::NotARearrangement)?;
        if set.weight_of(l)? % 2 == 1 {
            odd_positions.push(pos);
        }
    }
    Ok(inversion_sign(&odd_positions))
}

/// `(-1)^(number of inversions)` of a sequence of distinct integers.
pub fn inversion_sign(seq: &[usize]) -> i8 {
    let mut parity = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                parity = !parity;
            }
        }
    }
    if parity {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> WeightedSet {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_signs() {
        let s = set("1:1 2:1 3:2 4:2");
        assert_eq!(wsgn(&[1, 2], &[2, 1], &s).unwrap(), -1);
        assert_eq!(wsgn(&[3, 4], &[4, 3], &s).unwrap(), 1);
        assert_eq!(wsgn(&[1, 3], &[3, 1], &s).unwrap(), 1);
        assert_eq!(wsgn(&[1, 2, 3], &[1, 2, 3], &s).unwrap(), 1);
    }

    #[test]
    fn parse_and_display() {
        let s = set("1:1, 2 5:3");
        assert_eq!(s.to_string(), "1:1 2:1 5:3");
        assert_eq!(s.total_weight(), 5);
        assert!("1 1".parse::<WeightedSet>().is_err());
        assert!("1:0".parse::<WeightedSet>().is_err());
        assert!("x".parse::<WeightedSet>().is_err());
    }

    #[test]
    fn not_a_rearrangement() {
        let s = WeightedSet::range(3);
        assert!(wsgn(&[1, 2], &[1, 3], &s).is_err());
    }
}
