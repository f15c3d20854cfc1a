//! Exponential connectives without dereliction or digging: backward search
//! over ?-weakening, ?-contraction and K, and a bounded check that an
//! MLL-non-decomposable connective stays non-decomposable with modalities.

mod candidates;
mod search;

pub use candidates::{emll_candidates, AUX_NAME};
pub use search::{emll_premise_sets, strip_whynot, ContextShape, Grouping, PremiseSets};

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{decompose_mll, DecompositionError, VerdictStatus};
use crate::formulas::{behavior_masks, AtomName, Formula, FormulaError};
use crate::partitions::{elements, ConnectivePair, PartitionError, PartitionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmllError {
    #[error("{0} contains ! and cannot be stripped")]
    BangNotStrippable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmllSearchBounds {
    pub max_size: usize,
    pub max_modal_depth: usize,
    /// ?-weakenings per branch.
    pub max_weakenings: usize,
    /// ?-contractions per branch.
    pub max_contractions: usize,
}

impl Default for EmllSearchBounds {
    fn default() -> Self {
        EmllSearchBounds { max_size: 11, max_modal_depth: 2, max_weakenings: 3, max_contractions: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditReason {
    /// A maximal modal subformula is a `!`: K needs a context of ?-formulas.
    KContextBlocked,
    /// The formula, or some ⊗-operand, has no argument atom outside
    /// modalities and weakens down to a premise with no principal formula.
    EmptyPremise,
    /// Every ?-form is removed by weakening; what is left is MLL.
    StripsToMll,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditTrace {
    pub formula: Formula,
    pub size: usize,
    pub reason: AuditReason,
    pub detail: String,
    /// Reachable groupings; `[]` marks a premise with no principal formula.
    pub groupings: Vec<String>,
    pub bound_hit: bool,
    /// Weakening bound used for a re-check after the first search hit its bound.
    pub rechecked_weakenings: Option<usize>,
    /// The search agrees with the reason.
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmllVerdict {
    pub connective: PartitionSet,
    pub bounds: EmllSearchBounds,
    pub candidates: usize,
    pub candidates_by_size: BTreeMap<usize, usize>,
    /// Candidates whose groupings equal the connective's partitions.
    pub counterexamples: Vec<Formula>,
    /// Candidates searched again with a larger weakening bound.
    pub rechecked: usize,
    /// Candidates whose search hit the weakening bound without ruling them out.
    pub inconclusive: Vec<Formula>,
    pub by_reason: BTreeMap<AuditReason, usize>,
    /// Candidates where the search disagrees with the audited reason.
    pub anomalies: Vec<AuditTrace>,
    pub samples: Vec<AuditTrace>,
    pub reading: &'static str,
}

impl EmllVerdict {
    pub fn no_counterexample(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn summary(&self) -> String {
        let reasons: Vec<String> = self.by_reason.iter().map(|(r, n)| format!("{r:?} {n}")).collect();
        let head = if self.no_counterexample() {
            "no EMLL decomposition within bounds".to_string()
        } else {
            let list: Vec<String> = self.counterexamples.iter().map(|f| f.to_string()).collect();
            format!("EMLL decomposition found: {}", list.join(", "))
        };
        format!(
            "{head}\n  candidates: {} (size <= {}, modal depth <= {}, weakenings <= {}, contractions <= {})\n  audit: {}\n  rechecked with more weakenings: {}\n  inconclusive: {}\n  anomalies: {}",
            self.candidates,
            self.bounds.max_size,
            self.bounds.max_modal_depth,
            self.bounds.max_weakenings,
            self.bounds.max_contractions,
            reasons.join(", "),
            self.rechecked,
            self.inconclusive.len(),
            self.anomalies.len()
        )
    }
}

const READING: &str = "A ?-form standing as a tensor operand (more generally, an operand with no argument atom \
outside modalities) is weakened away on its own branch and leaves a premise without principal formula. When no \
tensor operand is of that kind, every ?-form sits under par and is weakened away, so the formula behaves like its \
strip. A maximal ! can only be removed by K, which needs a context made of ?-formulas.";

fn classes_text(classes: &[u32]) -> String {
    let parts: Vec<String> = classes
        .iter()
        .map(|&c| {
            let xs: Vec<String> = elements(c).map(|e| e.to_string()).collect();
            format!("[{}]", xs.join(","))
        })
        .collect();
    format!("[{}]", parts.join(","))
}

fn maximal_modals(f: &Formula) -> Vec<&Formula> {
    if f.is_modal() {
        return vec![f];
    }
    f.children().into_iter().flat_map(maximal_modals).collect()
}

/// No argument atom outside modalities.
fn is_void(f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => !matches!(a.name, AtomName::Arg(_)),
        Formula::Bang(_) | Formula::WhyNot(_) => true,
        _ => f.children().into_iter().all(is_void),
    }
}

/// A void ⊗-operand outside modalities.
fn void_tensor_operand(f: &Formula) -> Option<&Formula> {
    if f.is_modal() {
        return None;
    }
    if let Formula::Tensor(cs) = f {
        if let Some(v) = cs.iter().find(|c| is_void(c)) {
            return Some(v);
        }
    }
    f.children().into_iter().find_map(void_tensor_operand)
}

fn audit(f: &Formula, sets: &PremiseSets, target: &BTreeSet<Vec<u32>>) -> Result<AuditTrace, EmllError> {
    let groupings: Vec<String> = sets.all_classes().iter().map(|c| classes_text(c)).collect();
    let all = sets.all_classes();
    let (reason, detail, confirmed) =
        if let Some(bang) = maximal_modals(f).into_iter().find(|m| matches!(m, Formula::Bang(_))) {
            let root_blocked = !matches!(f, Formula::Bang(_)) || sets.groupings.is_empty();
            (
                AuditReason::KContextBlocked,
                format!("{bang} can only be introduced by K, which fails wherever a premise context is present"),
                root_blocked && all != *target,
            )
        } else if is_void(f) || void_tensor_operand(f).is_some() {
            let operand = if is_void(f) { f } else { void_tensor_operand(f).unwrap() };
            (
                AuditReason::EmptyPremise,
                format!("{operand} weakens to a premise with no principal formula"),
                sets.groupings.iter().any(Grouping::has_empty_premise),
            )
        } else {
            let stripped = strip_whynot(f)?;
            let (text, expected) = match &stripped {
                Some(s) => (s.to_string(), behavior_masks(s)?),
                None => ("nothing".to_string(), BTreeSet::new()),
            };
            (
                AuditReason::StripsToMll,
                format!("strips to {text}, whose partitions differ from the connective's"),
                sets.unflagged_classes() == expected && expected != *target,
            )
        };
    Ok(AuditTrace {
        formula: f.clone(),
        size: f.size(),
        reason,
        detail,
        groupings,
        bound_hit: sets.bound_hit,
        rechecked_weakenings: None,
        confirmed,
    })
}

fn whynot_count(f: &Formula) -> usize {
    usize::from(matches!(f, Formula::WhyNot(_))) + f.children().into_iter().map(whynot_count).sum::<usize>()
}

/// Searches and audits `f`. When the weakening bound was hit, the search is
/// repeated with enough weakenings to remove every ?-subformula, including
/// contracted copies, so that bound can no longer cut it short.
fn audit_candidate(
    f: &Formula,
    bounds: &EmllSearchBounds,
    target: &BTreeSet<Vec<u32>>,
) -> Result<(PremiseSets, AuditTrace), EmllError> {
    let sets = emll_premise_sets(f, ContextShape::Arbitrary, bounds)?;
    let weakenings = whynot_count(f) * (1 + bounds.max_contractions);
    if !sets.bound_hit || weakenings <= bounds.max_weakenings {
        let trace = audit(f, &sets, target)?;
        return Ok((sets, trace));
    }
    let wider = EmllSearchBounds { max_weakenings: weakenings, ..*bounds };
    let sets = emll_premise_sets(f, ContextShape::Arbitrary, &wider)?;
    let mut trace = audit(f, &sets, target)?;
    trace.rechecked_weakenings = Some(weakenings);
    Ok((sets, trace))
}

const SAMPLES_PER_REASON: usize = 3;

/// Searches every modal candidate within `bounds` for one whose reachable
/// premise groupings are exactly `c.left`, and audits each failure.
/// Requires `c` to be MLL-non-decomposable.
pub fn emll_nondecomposability_check(c: &ConnectivePair, bounds: &EmllSearchBounds) -> Result<EmllVerdict, EmllError> {
    let mll = decompose_mll(c)?;
    if !matches!(mll.status, VerdictStatus::NonDecomposable { .. }) {
        return Err(EmllError::Precondition(format!("connective is not MLL-non-decomposable ({})", mll.summary())));
    }
    let target: BTreeSet<Vec<u32>> = c.left.iter().map(|p| p.class_masks().to_vec()).collect();
    let candidates = emll_candidates(c.arity, bounds.max_size, bounds.max_modal_depth);
    let results: Vec<(PremiseSets, AuditTrace)> =
        candidates.par_iter().map(|f| audit_candidate(f, bounds, &target)).collect::<Result<_, EmllError>>()?;

    let mut candidates_by_size = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut inconclusive = Vec::new();
    let mut rechecked = 0;
    let mut by_reason = BTreeMap::new();
    let mut anomalies = Vec::new();
    let mut samples = Vec::new();
    for (f, (sets, trace)) in candidates.iter().zip(results) {
        *candidates_by_size.entry(f.size()).or_insert(0) += 1;
        let flagged = sets.groupings.iter().any(Grouping::has_empty_premise);
        let all = sets.all_classes();
        if !flagged && all == target {
            if sets.bound_hit {
                inconclusive.push(f.clone());
            } else {
                counterexamples.push(f.clone());
            }
        } else if sets.bound_hit && !flagged && all.is_subset(&target) {
            inconclusive.push(f.clone());
        }
        rechecked += usize::from(trace.rechecked_weakenings.is_some());
        let seen = by_reason.entry(trace.reason).or_insert(0);
        *seen += 1;
        if *seen <= SAMPLES_PER_REASON {
            samples.push(trace.clone());
        }
        if !trace.confirmed {
            anomalies.push(trace);
        }
    }
    Ok(EmllVerdict {
        connective: c.left.clone(),
        bounds: *bounds,
        candidates: candidates.len(),
        candidates_by_size,
        counterexamples,
        rechecked,
        inconclusive,
        by_reason,
        anomalies,
        samples,
        reading: READING,
    })
}
