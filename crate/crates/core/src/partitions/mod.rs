//! Partitions of `{1..n}`, optionally polarized, and the algebra built on
//! them: meeting graphs, orthogonality, duals and connective pairs.
//!
//! Classes and checked sets are stored as `u32` bitmasks (bit `i - 1` stands
//! for element `i`), so arities are limited to [`MAX_ARITY`].

mod connective;
mod enumerate;
mod graph;

pub use connective::{closure, dual, dual_capped, validate_connective, ConnectivePair, ValidationReport};
pub use enumerate::{all_partitions, all_polarized_partitions, bell_number, PolarizedPartitions, SetPartitions};
pub use graph::{
    is_orthogonal, meeting_graph, orthogonality, simulate_cut_merge, CutMergeOutcome, CutMergeReport, CutStep,
    GraphShape, MeetingEdge, MeetingGraph, OrthogonalityReport, Side,
};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Hard limit imposed by the bitmask representation.
pub const MAX_ARITY: usize = 32;

/// Default exhaustive-enumeration cap for unpolarized partitions.
pub const DEFAULT_UNPOLARIZED_CAP: usize = 9;

/// Default exhaustive-enumeration cap for polarized partitions.
pub const DEFAULT_POLARIZED_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("arity {0} exceeds the supported maximum of {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("arity {arity} exceeds the enumeration cap {cap}")]
    CapExceeded { arity: usize, cap: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("empty class")]
    EmptyClass,
    #[error("element {0} is outside 1..={1}")]
    OutOfRange(i64, usize),
    #[error("element {0} occurs in more than one class")]
    Overlap(usize),
    #[error("element {0} is not covered by any class")]
    Missing(usize),
}

/// Whether orthogonality is read classically or with polarities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One meeting-graph edge per element.
    #[default]
    Unpolarized,
    /// One edge per element checked on exactly one side; dual candidates
    /// range over intuitionistic polarized partitions.
    Polarized,
}

impl Mode {
    pub fn default_cap(self) -> usize {
        match self {
            Mode::Unpolarized => DEFAULT_UNPOLARIZED_CAP,
            Mode::Polarized => DEFAULT_POLARIZED_CAP,
        }
    }
}

pub(crate) fn bit(element: usize) -> u32 {
    1u32 << (element - 1)
}

pub(crate) fn full_mask(arity: usize) -> u32 {
    if arity == 32 {
        u32::MAX
    } else {
        (1u32 << arity) - 1
    }
}

pub(crate) fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
}

/// A partition of `{1..arity}` with an optional set of checked elements.
///
/// Classes are kept sorted by least element, which makes equality, hashing
/// and printing independent of construction order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    arity: usize,
    classes: Vec<u32>,
    checked: u32,
}

impl Partition {
    /// Unpolarized partition from explicit classes of 1-based elements.
    pub fn new(arity: usize, classes: &[Vec<usize>]) -> Result<Self, PartitionError> {
        Self::polarized(arity, classes, &[])
    }

    pub fn polarized(arity: usize, classes: &[Vec<usize>], checked: &[usize]) -> Result<Self, PartitionError> {
        check_arity(arity)?;
        let mut masks = Vec::with_capacity(classes.len());
        for class in classes {
            let mut mask = 0u32;
            for &e in class {
                if e == 0 || e > arity {
                    return Err(PartitionError::OutOfRange(e as i64, arity));
                }
                if mask & bit(e) != 0 {
                    return Err(PartitionError::Overlap(e));
                }
                mask |= bit(e);
            }
            masks.push(mask);
        }
        let mut checked_mask = 0u32;
        for &e in checked {
            if e == 0 || e > arity {
                return Err(PartitionError::OutOfRange(e as i64, arity));
            }
            checked_mask |= bit(e);
        }
        Self::from_masks(arity, masks, checked_mask)
    }

    /// Parses the signed shorthand: negative integers denote checked
    /// elements. The arity is the largest absolute value.
    pub fn from_signed(classes: &[Vec<i64>]) -> Result<Self, PartitionError> {
        let arity = classes.iter().flatten().map(|e| e.unsigned_abs() as usize).max().unwrap_or(0);
        Self::from_signed_with_arity(arity, classes)
    }

    pub fn from_signed_with_arity(arity: usize, classes: &[Vec<i64>]) -> Result<Self, PartitionError> {
        check_arity(arity)?;
        let mut plain = Vec::with_capacity(classes.len());
        let mut checked = Vec::new();
        for class in classes {
            let mut c = Vec::with_capacity(class.len());
            for &e in class {
                let abs = e.unsigned_abs() as usize;
                if e == 0 || abs > arity {
                    return Err(PartitionError::OutOfRange(e, arity));
                }
                if e < 0 {
                    checked.push(abs);
                }
                c.push(abs);
            }
            plain.push(c);
        }
        Self::polarized(arity, &plain, &checked)
    }

    /// Builds from raw class masks; validates disjointness and coverage.
    pub fn from_masks(arity: usize, mut classes: Vec<u32>, checked: u32) -> Result<Self, PartitionError> {
        check_arity(arity)?;
        let full = full_mask(arity);
        let mut seen = 0u32;
        for &c in &classes {
            if c == 0 {
                return Err(PartitionError::EmptyClass);
            }
            if c & !full != 0 {
                let e = elements(c & !full).next().unwrap_or(0);
                return Err(PartitionError::OutOfRange(e as i64, arity));
            }
            if seen & c != 0 {
                return Err(PartitionError::Overlap(elements(seen & c).next().unwrap_or(0)));
            }
            seen |= c;
        }
        if seen != full {
            return Err(PartitionError::Missing(elements(full & !seen).next().unwrap_or(0)));
        }
        if checked & !full != 0 {
            let e = elements(checked & !full).next().unwrap_or(0);
            return Err(PartitionError::OutOfRange(e as i64, arity));
        }
        classes.sort_by_key(|c| c.trailing_zeros());
        Ok(Partition { arity, classes, checked })
    }

    /// Restricted growth string: `labels[i]` is the class index of element `i + 1`.
    pub fn from_labels(labels: &[usize], checked: u32) -> Result<Self, PartitionError> {
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![0u32; count];
        for (i, &l) in labels.iter().enumerate() {
            classes[l] |= 1 << i;
        }
        classes.retain(|&c| c != 0);
        Self::from_masks(labels.len(), classes, checked)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn class_masks(&self) -> &[u32] {
        &self.classes
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|&c| elements(c).collect()).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn checked_mask(&self) -> u32 {
        self.checked
    }

    pub fn checked(&self) -> Vec<usize> {
        elements(self.checked).collect()
    }

    pub fn is_checked(&self, element: usize) -> bool {
        self.checked & bit(element) != 0
    }

    pub fn is_polarized(&self) -> bool {
        self.checked != 0
    }

    /// Index of the class containing `element`.
    pub fn class_of(&self, element: usize) -> usize {
        let b = bit(element);
        self.classes.iter().position(|&c| c & b != 0).expect("element within arity")
    }

    /// Every class holds at most one checked element.
    pub fn is_intuitionistic(&self) -> bool {
        self.classes.iter().all(|&c| (c & self.checked).count_ones() <= 1)
    }

    /// Same classes with the checked set replaced.
    pub fn with_checked(&self, checked: u32) -> Self {
        Partition { arity: self.arity, classes: self.classes.clone(), checked: checked & full_mask(self.arity) }
    }

    pub fn unpolarized(&self) -> Self {
        self.with_checked(0)
    }

    pub fn labels(&self) -> Vec<usize> {
        (1..=self.arity).map(|e| self.class_of(e)).collect()
    }

    /// Classes in signed shorthand (checked elements negative).
    pub fn to_signed(&self) -> Vec<Vec<i64>> {
        self.classes
            .iter()
            .map(|&c| elements(c).map(|e| if self.checked & bit(e) != 0 { -(e as i64) } else { e as i64 }).collect())
            .collect()
    }
}

fn check_arity(arity: usize) -> Result<(), PartitionError> {
    match arity {
        0 => Err(PartitionError::ZeroArity),
        a if a > MAX_ARITY => Err(PartitionError::ArityTooLarge(a)),
        _ => Ok(()),
    }
}

/// Partitions order by arity, then restricted growth string, then checked set.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity
            .cmp(&other.arity)
            .then_with(|| self.labels().cmp(&other.labels()))
            .then_with(|| self.checked.cmp(&other.checked))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, class) in self.to_signed().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, e) in class.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<i64>>::deserialize(d)?;
        Partition::from_signed(&raw).map_err(serde::de::Error::custom)
    }
}

/// A finite set of partitions sharing one arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSet {
    arity: usize,
    members: BTreeSet<Partition>,
}

impl PartitionSet {
    pub fn empty(arity: usize) -> Self {
        PartitionSet { arity, members: BTreeSet::new() }
    }

    pub fn from_partitions(arity: usize, parts: impl IntoIterator<Item = Partition>) -> Result<Self, PartitionError> {
        check_arity(arity)?;
        let mut set = Self::empty(arity);
        for p in parts {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Parses a list of signed-shorthand partitions; the arity is inferred
    /// from the largest element when not given.
    pub fn from_signed(arity: Option<usize>, parts: &[Vec<Vec<i64>>]) -> Result<Self, PartitionError> {
        let arity = match arity {
            Some(a) => a,
            None => parts
                .iter()
                .flatten()
                .flatten()
                .map(|e| e.unsigned_abs() as usize)
                .max()
                .ok_or(PartitionError::ZeroArity)?,
        };
        let parts = parts.iter().map(|p| Partition::from_signed_with_arity(arity, p)).collect::<Result<Vec<_>, _>>()?;
        Self::from_partitions(arity, parts)
    }

    pub fn insert(&mut self, p: Partition) -> Result<bool, PartitionError> {
        if p.arity != self.arity {
            return Err(PartitionError::ArityMismatch { left: self.arity, right: p.arity });
        }
        Ok(self.members.insert(p))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.members.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Partition> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &PartitionSet) -> bool {
        self.arity == other.arity && self.members.is_subset(&other.members)
    }

    pub fn first(&self) -> Option<&Partition> {
        self.members.iter().next()
    }

    pub fn to_signed(&self) -> Vec<Vec<Vec<i64>>> {
        self.members.iter().map(Partition::to_signed).collect()
    }
}

impl<'a> IntoIterator for &'a PartitionSet {
    type Item = &'a Partition;
    type IntoIter = std::collections::btree_set::Iter<'a, Partition>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, p) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for PartitionSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_construction_order() {
        let a = Partition::new(4, &[vec![3, 4], vec![2, 1]]).unwrap();
        let b = Partition::new(4, &[vec![1, 2], vec![4, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[[1,2],[3,4]]");
    }

    #[test]
    fn rejects_malformed_classes() {
        assert_eq!(Partition::new(2, &[vec![1], vec![1, 2]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::new(3, &[vec![1, 2]]), Err(PartitionError::Missing(3)));
        assert_eq!(Partition::new(2, &[vec![1], vec![], vec![2]]), Err(PartitionError::EmptyClass));
        assert!(matches!(Partition::new(2, &[vec![1, 3]]), Err(PartitionError::OutOfRange(3, 2))));
        assert_eq!(Partition::new(0, &[]), Err(PartitionError::ZeroArity));
    }

    #[test]
    fn signed_shorthand_round_trips() {
        let p = Partition::from_signed(&[vec![1, 2, -5], vec![3, 4, -6]]).unwrap();
        assert_eq!(p.arity(), 6);
        assert_eq!(p.checked(), vec![5, 6]);
        assert_eq!(p.to_string(), "[[1,2,-5],[3,4,-6]]");
        assert_eq!(Partition::from_signed(&p.to_signed()).unwrap(), p);
    }

    #[test]
    fn ordering_follows_growth_strings() {
        let a = Partition::new(3, &[vec![1, 3], vec![2]]).unwrap();
        let b = Partition::new(3, &[vec![1], vec![2, 3]]).unwrap();
        assert!(a < b);
        let set = PartitionSet::from_partitions(3, [b, a]).unwrap();
        assert_eq!(set.to_string(), "[[1,3],[2]] ; [[1],[2,3]]");
    }

    #[test]
    fn set_rejects_foreign_arity() {
        let mut s = PartitionSet::empty(2);
        let p = Partition::new(3, &[vec![1, 2, 3]]).unwrap();
        assert!(matches!(s.insert(p), Err(PartitionError::ArityMismatch { .. })));
    }

    #[test]
    fn intuitionistic_flag() {
        let ok = Partition::from_signed(&[vec![1, 2, 3, -4]]).unwrap();
        assert!(ok.is_intuitionistic());
        let bad = Partition::from_signed(&[vec![-1, -2]]).unwrap();
        assert!(!bad.is_intuitionistic());
    }
}
