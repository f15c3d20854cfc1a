use std::fmt;

use serde::Serialize;

use super::enumerate::{all_partitions, all_polarized_partitions};
use super::graph::orthogonal_unchecked;
use super::{Mode, Partition, PartitionError, PartitionSet};

/// `P^⊥` by exhaustive enumeration of candidates, using the default cap
/// for the mode.
pub fn dual(set: &PartitionSet, mode: Mode) -> Result<PartitionSet, PartitionError> {
    dual_capped(set, mode, mode.default_cap())
}

pub fn dual_capped(set: &PartitionSet, mode: Mode, cap: usize) -> Result<PartitionSet, PartitionError> {
    let n = set.arity();
    let keep = |q: &Partition| set.iter().all(|p| orthogonal_unchecked(p, q, mode));
    let members: Vec<Partition> = match mode {
        Mode::Unpolarized => all_partitions(n, cap)?.filter(keep).collect(),
        Mode::Polarized => all_polarized_partitions(n, true, cap)?.filter(keep).collect(),
    };
    PartitionSet::from_partitions(n, members)
}

/// The closed pair `(P^⊥⊥, P^⊥)` generated by `set`.
pub fn closure(set: &PartitionSet, mode: Mode) -> Result<ConnectivePair, PartitionError> {
    let right = dual(set, mode)?;
    let left = dual(&right, mode)?;
    Ok(ConnectivePair { arity: set.arity(), left, right, name: None })
}

/// A connective given by two partition sets that should be mutual duals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivePair {
    pub arity: usize,
    pub left: PartitionSet,
    pub right: PartitionSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ConnectivePair {
    pub fn new(left: PartitionSet, right: PartitionSet) -> Result<Self, PartitionError> {
        if left.arity() != right.arity() {
            return Err(PartitionError::ArityMismatch { left: left.arity(), right: right.arity() });
        }
        Ok(ConnectivePair { arity: left.arity(), left, right, name: None })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// The dual connective: sides swapped.
    pub fn swapped(&self) -> Self {
        ConnectivePair {
            arity: self.arity,
            left: self.right.clone(),
            right: self.left.clone(),
            name: self.name.as_ref().map(|n| format!("{n}*")),
        }
    }
}

/// Result of checking `dual(left) = right` and `dual(right) = left`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub mode: Mode,
    /// In `dual(left)` but absent from `right`.
    pub missing_from_right: Vec<Partition>,
    /// In `right` but not orthogonal to all of `left`.
    pub extra_in_right: Vec<Partition>,
    pub missing_from_left: Vec<Partition>,
    pub extra_in_left: Vec<Partition>,
    pub empty_side: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid connective");
        }
        write!(f, "invalid connective")?;
        if self.empty_side {
            write!(f, "\n  a side is empty")?;
        }
        let groups = [
            ("in dual(left) but missing from right", &self.missing_from_right),
            ("in right but not orthogonal to all of left", &self.extra_in_right),
            ("in dual(right) but missing from left", &self.missing_from_left),
            ("in left but not orthogonal to all of right", &self.extra_in_left),
        ];
        for (label, parts) in groups {
            if !parts.is_empty() {
                let list: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "\n  {label}: {}", list.join(" ; "))?;
            }
        }
        Ok(())
    }
}

pub fn validate_connective(c: &ConnectivePair, mode: Mode) -> Result<ValidationReport, PartitionError> {
    let dual_left = dual(&c.left, mode)?;
    let dual_right = dual(&c.right, mode)?;
    let diff = |a: &PartitionSet, b: &PartitionSet| -> Vec<Partition> {
        a.iter().filter(|p| !b.contains(p)).cloned().collect()
    };
    let missing_from_right = diff(&dual_left, &c.right);
    let extra_in_right = diff(&c.right, &dual_left);
    let missing_from_left = diff(&dual_right, &c.left);
    let extra_in_left = diff(&c.left, &dual_right);
    let empty_side = c.left.is_empty() || c.right.is_empty();
    let valid = !empty_side
        && missing_from_right.is_empty()
        && extra_in_right.is_empty()
        && missing_from_left.is_empty()
        && extra_in_left.is_empty();
    Ok(ValidationReport {
        valid,
        mode,
        missing_from_right,
        extra_in_right,
        missing_from_left,
        extra_in_left,
        empty_side,
    })
}
