//! Intuitionistic connectives: polarized partitions whose classes carry at
//! most one checked (succedent) element, the two-sided behavior of IMLL
//! formulas, and their decomposition.

mod behavior;
mod census;
mod decompose;

pub use behavior::{derive_imll, imll_behavior};
pub use census::{imll_census, ImllCensusEntry, ImllCensusReport, MAX_IMLL_CENSUS_ARITY};
pub use decompose::{decompose_imll, fragment_formulas, Construction, FragmentIndex};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formulas::FormulaError;
use crate::partitions::{
    bit, elements, full_mask, validate_connective, ConnectivePair, Mode, Partition, PartitionError, PartitionSet,
    ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImllError {
    #[error("premise {0} has more than one succedent formula")]
    MultipleSuccedents(usize),
    #[error("left-hand implication in {0} is not supported")]
    LeftLollipop(String),
    #[error("partition {0} has a class with two checked elements")]
    NotIntuitionistic(Partition),
    #[error("invalid intuitionistic connective: {0}")]
    Invalid(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// One premise `A_i, … ⊢ A_j` of a right rule, by argument index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PremiseSchema {
    pub antecedent: Vec<usize>,
    pub succedent: Vec<usize>,
}

impl fmt::Display for PremiseSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[usize]| v.iter().map(|i| format!("A{i}")).collect::<Vec<_>>().join(", ");
        match (self.antecedent.is_empty(), self.succedent.is_empty()) {
            (true, _) => write!(f, "|- {}", side(&self.succedent)),
            (false, true) => write!(f, "{} |-", side(&self.antecedent)),
            (false, false) => write!(f, "{} |- {}", side(&self.antecedent), side(&self.succedent)),
        }
    }
}

/// Premises become classes; succedent atoms become checked elements.
pub fn sequent_to_partition(arity: usize, premises: &[PremiseSchema]) -> Result<Partition, ImllError> {
    let mut classes = Vec::with_capacity(premises.len());
    let mut checked = 0u32;
    for (i, s) in premises.iter().enumerate() {
        if s.succedent.len() > 1 {
            return Err(ImllError::MultipleSuccedents(i + 1));
        }
        let mut class: Vec<i64> = s.antecedent.iter().map(|&a| a as i64).collect();
        for &c in &s.succedent {
            class.push(c as i64);
            if c >= 1 && c <= arity {
                checked |= bit(c);
            }
        }
        classes.push(class);
    }
    let p = Partition::from_signed_with_arity(arity, &classes)?;
    Ok(p.with_checked(checked))
}

pub fn partition_to_sequents(p: &Partition) -> Vec<PremiseSchema> {
    p.class_masks()
        .iter()
        .map(|&c| PremiseSchema {
            antecedent: elements(c & !p.checked_mask()).collect(),
            succedent: elements(c & p.checked_mask()).collect(),
        })
        .collect()
}

/// Every class of every member has exactly one checked element.
pub fn is_proper(set: &PartitionSet) -> bool {
    set.iter().all(|p| p.class_masks().iter().all(|&c| (c & p.checked_mask()).count_ones() == 1))
}

/// Validation of `(P_L, P_R)` stored as `(c.left, c.right)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImllValidation {
    pub valid: bool,
    pub non_intuitionistic: Vec<Partition>,
    /// Elements checked in some members of one side and unchecked in others.
    pub flipped: Vec<usize>,
    pub closure: ValidationReport,
}

impl fmt::Display for ImllValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid intuitionistic connective");
        }
        write!(f, "invalid intuitionistic connective")?;
        for p in &self.non_intuitionistic {
            write!(f, "\n  not intuitionistic: {p}")?;
        }
        if !self.flipped.is_empty() {
            let list: Vec<String> = self.flipped.iter().map(|e| e.to_string()).collect();
            write!(
                f,
                "\n  polarity flips for {}: the meeting graph with the opposite side cannot be a tree, so cut elimination fails",
                list.join(", ")
            )?;
        }
        if !self.closure.valid {
            write!(f, "\n  {}", self.closure.to_string().replace('\n', "\n  "))?;
        }
        Ok(())
    }
}

fn polarity_flips(set: &PartitionSet) -> u32 {
    let any = set.iter().fold(0, |m, p| m | p.checked_mask());
    let all = set.iter().fold(full_mask(set.arity()), |m, p| m & p.checked_mask());
    any & !all
}

pub fn validate_imll(c: &ConnectivePair) -> Result<ImllValidation, ImllError> {
    let non_intuitionistic: Vec<Partition> =
        c.left.iter().chain(&c.right).filter(|p| !p.is_intuitionistic()).cloned().collect();
    let flips = polarity_flips(&c.left) | polarity_flips(&c.right);
    let closure = validate_connective(c, Mode::Polarized)?;
    Ok(ImllValidation {
        valid: closure.valid && non_intuitionistic.is_empty() && flips == 0,
        non_intuitionistic,
        flipped: elements(flips).collect(),
        closure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::closure;

    fn schema(ante: &[usize], succ: &[usize]) -> PremiseSchema {
        PremiseSchema { antecedent: ante.to_vec(), succedent: succ.to_vec() }
    }

    #[test]
    fn sequent_translation() {
        let p = sequent_to_partition(6, &[schema(&[1, 2], &[5]), schema(&[3, 4], &[6])]).unwrap();
        assert_eq!(p.to_string(), "[[1,2,-5],[3,4,-6]]");
        assert_eq!(sequent_to_partition(1, &[schema(&[], &[1])]).unwrap().to_string(), "[[-1]]");
        assert_eq!(sequent_to_partition(1, &[schema(&[1], &[])]).unwrap().to_string(), "[[1]]");
        assert!(matches!(sequent_to_partition(2, &[schema(&[], &[1, 2])]), Err(ImllError::MultipleSuccedents(1))));
        let back = partition_to_sequents(&p);
        assert_eq!(back[0].to_string(), "A1, A2 |- A5");
        assert_eq!(sequent_to_partition(6, &back).unwrap(), p);
    }

    #[test]
    fn intuitionistic_flag() {
        assert!(Partition::from_signed(&[vec![1, 2, 3, -4]]).unwrap().is_intuitionistic());
        assert!(!Partition::from_signed(&[vec![-1, -2]]).unwrap().is_intuitionistic());
        assert!(Partition::from_signed(&[vec![1, 2]]).unwrap().is_intuitionistic());
    }

    #[test]
    fn polarity_flip_is_rejected() {
        let r1 = Partition::from_signed(&[vec![1, 2, -5], vec![3, 4, -6]]).unwrap();
        let r2 = Partition::from_signed(&[vec![6, 2, -5], vec![3, 4, -1]]).unwrap();
        let right = PartitionSet::from_partitions(6, [r1, r2]).unwrap();
        let c = ConnectivePair::new(PartitionSet::empty(6), right).unwrap();
        let v = validate_imll(&c).unwrap();
        assert!(!v.valid);
        assert_eq!(v.flipped, vec![1, 6]);
    }

    #[test]
    fn closed_pair_is_valid() {
        let r = Partition::from_signed(&[vec![1, -2]]).unwrap();
        let right = PartitionSet::from_partitions(2, [r]).unwrap();
        let c = closure(&right, Mode::Polarized).unwrap().swapped();
        assert!(validate_imll(&c).unwrap().valid);
    }
}
