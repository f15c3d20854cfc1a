use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{derive_imll, imll_behavior, is_proper, validate_imll, ImllError};
use crate::decomposition::{DecompositionVerdict, VerdictStatus};
use crate::formulas::{block_splits, canonicalize, cartesian, Formula, Language};
use crate::partitions::{elements, full_mask, ConnectivePair, Partition, PartitionSet};

/// How a witness was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// One partition: per class, positives tensored and implying the checked atom.
    Normal,
    /// All positives tensored, implying the tensor of all checked atoms.
    SingleImplication,
    /// Found by exhaustive search of the right-implication fragment.
    FragmentSearch,
}

fn tensor_of(mut atoms: Vec<Formula>) -> Formula {
    if atoms.len() == 1 {
        atoms.pop().unwrap()
    } else {
        Formula::Tensor(atoms)
    }
}

fn atoms_of(mask: u32) -> Vec<Formula> {
    elements(mask).map(Formula::atom).collect()
}

fn implication(positives: u32, consequent: Formula) -> Formula {
    if positives == 0 {
        consequent
    } else {
        Formula::lollipop(tensor_of(atoms_of(positives)), consequent)
    }
}

fn normal_witness(p: &Partition) -> Formula {
    let factors = p
        .class_masks()
        .iter()
        .map(|&c| implication(c & !p.checked_mask(), tensor_of(atoms_of(c & p.checked_mask()))))
        .collect();
    canonicalize(&tensor_of(factors))
}

fn single_implication(arity: usize, checked: u32) -> Formula {
    let positives = full_mask(arity) & !checked;
    canonicalize(&implication(positives, tensor_of(atoms_of(checked))))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Shape {
    Atom,
    Tensor,
    Lollipop,
}

fn shape(f: &Formula) -> Shape {
    match f {
        Formula::Tensor(_) => Shape::Tensor,
        Formula::Lollipop(..) => Shape::Lollipop,
        _ => Shape::Atom,
    }
}

/// Formulas `R ::= a | R ⊗ R | L ⊸ R` with `L` a tensor of positive atoms,
/// using the `positives` only on the left of an implication and the
/// `checked` atoms only as succedents. Canonical and sorted by text.
pub fn fragment_formulas(positives: u32, checked: u32) -> Vec<Formula> {
    let mut memo = HashMap::new();
    let set: BTreeSet<Formula> = fragment(positives, checked, &mut memo).into_iter().collect();
    let mut out: Vec<Formula> = set.into_iter().collect();
    out.sort_by_cached_key(|f| f.to_string());
    out
}

fn fragment(pos: u32, chk: u32, memo: &mut HashMap<(u32, u32), Vec<Formula>>) -> Vec<Formula> {
    if let Some(v) = memo.get(&(pos, chk)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if chk != 0 {
        if pos == 0 && chk.count_ones() == 1 {
            out.push(Formula::atom(chk.trailing_zeros() as usize + 1));
        }
        for blocks in block_splits(pos | chk) {
            if blocks.iter().any(|&b| b & chk == 0) {
                continue;
            }
            let choices: Vec<Vec<Formula>> = blocks
                .iter()
                .map(|&b| fragment(b & pos, b & chk, memo).into_iter().filter(|f| shape(f) != Shape::Tensor).collect())
                .collect();
            out.extend(cartesian(&choices).into_iter().map(|cs| canonicalize(&Formula::Tensor(cs))));
        }
        let mut sub = pos;
        while sub != 0 {
            for consequent in fragment(pos & !sub, chk, memo) {
                if shape(&consequent) != Shape::Lollipop {
                    out.push(implication(sub, consequent));
                }
            }
            sub = (sub - 1) & pos;
        }
    }
    memo.insert((pos, chk), out.clone());
    out
}

/// Least-printed fragment formula for each behavior with a fixed checked set.
pub struct FragmentIndex {
    examined: usize,
    witnesses: HashMap<PartitionSet, Formula>,
}

impl FragmentIndex {
    pub fn new(arity: usize, checked: u32) -> Result<Self, ImllError> {
        let formulas = fragment_formulas(full_mask(arity) & !checked, checked);
        let examined = formulas.len();
        let mut witnesses = HashMap::new();
        for f in formulas {
            witnesses.entry(imll_behavior(&f)?).or_insert(f);
        }
        Ok(FragmentIndex { examined, witnesses })
    }

    pub fn examined(&self) -> usize {
        self.examined
    }

    pub fn lookup(&self, right: &PartitionSet) -> Option<&Formula> {
        self.witnesses.get(right)
    }
}

pub(crate) type IndexCache = HashMap<u32, FragmentIndex>;

/// Witness for a proper right set, trying the direct constructions first.
pub(crate) fn find_witness(
    right: &PartitionSet,
    cache: &mut IndexCache,
) -> Result<Result<(Formula, Construction), usize>, ImllError> {
    let n = right.arity();
    let checked = right.first().map_or(0, Partition::checked_mask);
    if right.len() == 1 {
        let w = normal_witness(right.first().unwrap());
        if imll_behavior(&w)? == *right {
            return Ok(Ok((w, Construction::Normal)));
        }
    }
    let w = single_implication(n, checked);
    if imll_behavior(&w)? == *right {
        return Ok(Ok((w, Construction::SingleImplication)));
    }
    let index = match cache.entry(checked) {
        Entry::Occupied(e) => e.into_mut(),
        Entry::Vacant(e) => e.insert(FragmentIndex::new(n, checked)?),
    };
    Ok(match index.lookup(right) {
        Some(w) => Ok((w.clone(), Construction::FragmentSearch)),
        None => Err(index.examined()),
    })
}

pub(crate) fn decide(
    c: &ConnectivePair,
    cache: &mut IndexCache,
) -> Result<(DecompositionVerdict, Option<Construction>), ImllError> {
    let report = validate_imll(c)?;
    if !report.valid {
        return Err(ImllError::Invalid(report.to_string()));
    }
    let mut notes = Vec::new();
    if !is_proper(&c.right) {
        let status = VerdictStatus::Unknown {
            reason: "a right-rule premise has no succedent; no IMLL formula yields such a premise".into(),
        };
        return Ok((DecompositionVerdict { system: Language::Imll, status, notes }, None));
    }
    let (status, construction) = match find_witness(&c.right, cache)? {
        Ok((witness, how)) => {
            notes.push(format!("construction: {}", serde_json::to_value(how).unwrap().as_str().unwrap()));
            let proofs = c.right.iter().filter_map(|p| derive_imll(&witness, p)).collect();
            (VerdictStatus::Decomposable { witness, proofs }, Some(how))
        }
        Err(examined) => (VerdictStatus::NonDecomposable { examined }, None),
    };
    Ok((DecompositionVerdict { system: Language::Imll, status, notes }, construction))
}

/// Decomposes `(P_L, P_R) = (c.left, c.right)`; the witness `α` satisfies
/// `imll_behavior(α) = P_R`. Invalid connectives, including polarity flips,
/// are errors.
pub fn decompose_imll(c: &ConnectivePair) -> Result<DecompositionVerdict, ImllError> {
    Ok(decide(c, &mut HashMap::new())?.0)
}
