//! Deciding whether a connective is the behavior of a formula, and building
//! the derivations that witness it.

mod census;
mod proof;

pub use census::{census, CensusEntry, CensusMode, CensusReport, VerdictKind};
pub use proof::{derive_mll, Context, ContextSymbol, ProofTree, Rule, Sequent};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::formulas::{
    behavior, canonicalize, complement_atoms, enumerate_formulas, negate, normal_formula, Formula, FormulaError,
    Language, DEFAULT_ENUMERATION_CAP,
};
use crate::partitions::{validate_connective, ConnectivePair, Mode, Partition, PartitionError, PartitionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("connective has an empty side")]
    EmptySide,
    #[error("atom alphabets are not complementary: {0}")]
    AlphabetMismatch(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerdictStatus {
    Decomposable { witness: Formula, proofs: Vec<ProofTree> },
    NonDecomposable { examined: usize },
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionVerdict {
    pub system: Language,
    #[serde(flatten)]
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DecompositionVerdict {
    pub fn is_decomposable(&self) -> bool {
        matches!(self.status, VerdictStatus::Decomposable { .. })
    }

    pub fn is_non_decomposable(&self) -> bool {
        matches!(self.status, VerdictStatus::NonDecomposable { .. })
    }

    pub fn witness(&self) -> Option<&Formula> {
        match &self.status {
            VerdictStatus::Decomposable { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match &self.status {
            VerdictStatus::Decomposable { witness, .. } => {
                format!("{} decomposable: {witness}", self.system)
            }
            VerdictStatus::NonDecomposable { examined } => {
                format!("{} non-decomposable ({examined} formulas examined)", self.system)
            }
            VerdictStatus::Unknown { reason } => format!("{} unknown: {reason}", self.system),
        }
    }
}

/// Least-printed MLL formula for each behavior at one arity.
pub struct WitnessIndex {
    arity: usize,
    examined: usize,
    witnesses: HashMap<PartitionSet, Formula>,
}

impl WitnessIndex {
    pub fn new(arity: usize, cap: usize) -> Result<Self, DecompositionError> {
        let formulas = enumerate_formulas(arity, cap)?;
        let examined = formulas.len();
        let mut witnesses = HashMap::new();
        for f in formulas {
            let b = behavior(&f)?;
            witnesses.entry(b).or_insert(f);
        }
        Ok(WitnessIndex { arity, examined, witnesses })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of formulas enumerated.
    pub fn examined(&self) -> usize {
        self.examined
    }

    /// Number of distinct behaviors.
    pub fn behaviors(&self) -> usize {
        self.witnesses.len()
    }

    pub fn lookup(&self, left: &PartitionSet) -> Option<&Formula> {
        self.witnesses.get(left)
    }

    pub fn classify(&self, c: &ConnectivePair) -> DecompositionVerdict {
        let status = match self.lookup(&c.left) {
            Some(f) => {
                let proofs = c.left.iter().filter_map(|p| derive_mll(f, p)).collect();
                VerdictStatus::Decomposable { witness: f.clone(), proofs }
            }
            None => VerdictStatus::NonDecomposable { examined: self.examined },
        };
        DecompositionVerdict { system: Language::Mll, status, notes: Vec::new() }
    }
}

/// Searches every MLL formula over `a1..an` for one whose behavior is
/// `c.left`.
pub fn decompose_mll(c: &ConnectivePair) -> Result<DecompositionVerdict, DecompositionError> {
    decompose_mll_capped(c, DEFAULT_ENUMERATION_CAP)
}

pub fn decompose_mll_capped(c: &ConnectivePair, cap: usize) -> Result<DecompositionVerdict, DecompositionError> {
    let mut notes = Vec::new();
    if c.left.is_empty() || c.right.is_empty() {
        return Err(DecompositionError::EmptySide);
    }
    if c.arity > cap {
        return Ok(DecompositionVerdict {
            system: Language::Mll,
            status: VerdictStatus::Unknown { reason: format!("arity {} exceeds the enumeration cap {cap}", c.arity) },
            notes,
        });
    }
    let report = validate_connective(c, Mode::Unpolarized)?;
    if !report.valid {
        notes.push(format!("warning: {report}"));
    }
    let index = WitnessIndex::new(c.arity, cap)?;
    let mut verdict = index.classify(c);
    verdict.notes = notes;
    Ok(verdict)
}

/// An additive decomposition with one derivation per partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MallDecomposition {
    pub formula: Formula,
    pub proofs: Vec<ProofTree>,
}

/// `⊕` of the normal formulas of `c.left`, in partition order. Proof `j`
/// ends in `⊕_j` (omitted when there is a single partition) and its open
/// premises are the classes of the `j`-th partition.
pub fn decompose_mall(left: &PartitionSet) -> Result<MallDecomposition, DecompositionError> {
    if left.is_empty() {
        return Err(DecompositionError::EmptySide);
    }
    let normals: Vec<Formula> = left.iter().map(normal_formula).collect();
    let formula = if normals.len() == 1 { normals[0].clone() } else { Formula::Plus(normals.clone()) };
    let of = normals.len();
    let mut proofs = Vec::with_capacity(of);
    for (j, (p, normal)) in left.iter().zip(&normals).enumerate() {
        let inner = derive_mll(normal, p).expect("normal formula derives its own partition");
        if of == 1 {
            proofs.push(inner);
            continue;
        }
        let ctx = inner.conclusion.succedent_contexts.clone();
        let conclusion = Sequent::one_sided(vec![formula.clone()], ctx);
        proofs.push(ProofTree::step(conclusion, Rule::Plus { index: j + 1, of }, vec![inner]));
    }
    Ok(MallDecomposition { formula, proofs })
}

fn polarities(f: &Formula, out: &mut BTreeMap<usize, Vec<bool>>) {
    if let Formula::Atom(a) = f {
        if let crate::formulas::AtomName::Arg(i) = a.name {
            out.entry(i).or_default().push(a.negated);
        }
    }
    for c in f.children() {
        polarities(c, out);
    }
}

/// Whether `g` is the De Morgan dual of `f` up to associativity and
/// commutativity. The two must use the same argument atoms with opposite
/// polarity throughout.
pub fn check_demorgan_dual(f: &Formula, g: &Formula) -> Result<bool, DecompositionError> {
    let (mut pf, mut pg) = (BTreeMap::new(), BTreeMap::new());
    polarities(f, &mut pf);
    polarities(g, &mut pg);
    if pf.keys().ne(pg.keys()) {
        return Err(DecompositionError::AlphabetMismatch("different atoms".into()));
    }
    for (i, fs) in &pf {
        let gs = &pg[i];
        if fs.iter().any(|&x| x != fs[0]) || gs.iter().any(|&x| x != gs[0]) {
            return Err(DecompositionError::AlphabetMismatch(format!("a{i} occurs with both polarities")));
        }
        if gs[0] == fs[0] {
            return Err(DecompositionError::AlphabetMismatch(format!("a{i} has the same polarity on both sides")));
        }
    }
    Ok(canonicalize(&negate(f)) == canonicalize(g))
}

/// The MALL formulas for both sides of a connective: `α` for the left and
/// `β` (over negated atoms) for the right, plus whether they are De Morgan
/// duals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivePair {
    pub left: Formula,
    pub right: Formula,
    pub dual: bool,
}

pub fn additive_pair(c: &ConnectivePair) -> Result<AdditivePair, DecompositionError> {
    let left = decompose_mall(&c.left)?.formula;
    let right = complement_atoms(&decompose_mall(&c.right)?.formula);
    let dual = check_demorgan_dual(&left, &right)?;
    Ok(AdditivePair { left, right, dual })
}

fn collapsed_side(p: &Partition, formula: &Formula, symbol: ContextSymbol, negated: bool) -> ProofTree {
    let leaves = p
        .classes()
        .into_iter()
        .enumerate()
        .map(|(i, class)| {
            let atoms =
                class.into_iter().map(|e| if negated { Formula::neg_atom(e) } else { Formula::atom(e) }).collect();
            ProofTree::premise(Sequent::one_sided(atoms, vec![Context { symbol, index: i + 1 }]))
        })
        .collect::<Vec<_>>();
    let ctx = (1..=leaves.len()).map(|index| Context { symbol, index }).collect();
    ProofTree::step(Sequent::one_sided(vec![formula.clone()], ctx), Rule::Derived, leaves)
}

/// The cut between `⊢ Γ, α` (from the first partition of `c.left`) and
/// `⊢ Δ, β` (from the first partition of `c.right`) that cannot be reduced
/// because `α` and `β` are not De Morgan duals. Errors when they are.
pub fn stuck_cut(c: &ConnectivePair) -> Result<ProofTree, DecompositionError> {
    let pair = additive_pair(c)?;
    if pair.dual {
        return Err(DecompositionError::Unsupported(
            "the additive formulas are De Morgan duals; the cut reduces".into(),
        ));
    }
    let p = c.left.first().ok_or(DecompositionError::EmptySide)?;
    let q = c.right.first().ok_or(DecompositionError::EmptySide)?;
    let left = collapsed_side(p, &pair.left, ContextSymbol::Gamma, false);
    let right = collapsed_side(q, &pair.right, ContextSymbol::Delta, true);
    let mut ctx = left.conclusion.succedent_contexts.clone();
    ctx.extend(right.conclusion.succedent_contexts.iter().copied());
    let note = format!("stuck: {} and {} are not De Morgan duals", pair.left, pair.right);
    Ok(ProofTree::step(Sequent::one_sided(Vec::new(), ctx), Rule::Cut, vec![left, right]).annotated(note))
}
