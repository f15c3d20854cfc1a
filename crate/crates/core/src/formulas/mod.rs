//! Formula syntax shared by the MLL, MALL, IMLL and EMLL fragments.
//!
//! One AST covers every fragment; [`Language`] says which constructors a
//! given fragment admits. Tensor, par, plus and with are n-ary; the parser
//! keeps the nesting the text spells out and [`canonicalize`] flattens it.

mod behavior;
mod enumerate;
mod parse;
mod print;

pub use behavior::{behavior, behavior_masks, normal_formula};
pub(crate) use enumerate::{block_splits, cartesian};
pub use enumerate::{enumerate_formulas, DEFAULT_ENUMERATION_CAP};
pub use parse::parse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::PartitionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Mll,
    Mall,
    Imll,
    Emll,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Mll => "MLL",
            Language::Mall => "MALL",
            Language::Imll => "IMLL",
            Language::Emll => "EMLL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("atom a{0} occurs more than once")]
    RepeatedAtom(usize),
    #[error("atom a{0} is missing (atoms must be a1..a{1})")]
    MissingAtom(usize, usize),
    #[error("{construct} is not part of {language}")]
    NotInLanguage { construct: &'static str, language: Language },
    #[error("additive children use different atom sets")]
    AdditiveAlphabet,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AtomName {
    /// Argument position `a<i>` of a connective, 1-based.
    Arg(usize),
    /// Auxiliary propositional variable, only meaningful under modalities.
    Aux(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub name: AtomName,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Tensor(Vec<Formula>),
    Par(Vec<Formula>),
    Plus(Vec<Formula>),
    With(Vec<Formula>),
    Lollipop(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    WhyNot(Box<Formula>),
}

impl Formula {
    pub fn atom(i: usize) -> Self {
        Formula::Atom(Atom { name: AtomName::Arg(i), negated: false })
    }

    pub fn neg_atom(i: usize) -> Self {
        Formula::Atom(Atom { name: AtomName::Arg(i), negated: true })
    }

    pub fn aux(name: &str) -> Self {
        Formula::Atom(Atom { name: AtomName::Aux(name.to_string()), negated: false })
    }

    pub fn tensor(children: Vec<Formula>) -> Self {
        Formula::Tensor(children)
    }

    pub fn par(children: Vec<Formula>) -> Self {
        Formula::Par(children)
    }

    pub fn lollipop(a: Formula, b: Formula) -> Self {
        Formula::Lollipop(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Self {
        Formula::Bang(Box::new(a))
    }

    pub fn why_not(a: Formula) -> Self {
        Formula::WhyNot(Box::new(a))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn is_modal(&self) -> bool {
        matches!(self, Formula::Bang(_) | Formula::WhyNot(_))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => Vec::new(),
            Formula::Tensor(c) | Formula::Par(c) | Formula::Plus(c) | Formula::With(c) => c.iter().collect(),
            Formula::Lollipop(a, b) => vec![a, b],
            Formula::Bang(a) | Formula::WhyNot(a) => vec![a],
        }
    }

    /// Argument atom indices in left-to-right order, with repetitions.
    pub fn arg_atoms(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_args(&mut out);
        out
    }

    fn collect_args(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Atom(Atom { name: AtomName::Arg(i), .. }) => out.push(*i),
            Formula::Atom(_) => {}
            _ => self.children().into_iter().for_each(|c| c.collect_args(out)),
        }
    }

    /// Bitmask of argument atoms (bit `i - 1` for `a<i>`).
    pub fn arg_mask(&self) -> u32 {
        self.arg_atoms().into_iter().fold(0, |m, i| m | 1 << (i - 1))
    }

    pub fn min_arg(&self) -> Option<usize> {
        self.arg_atoms().into_iter().min()
    }

    pub fn has_aux(&self) -> bool {
        match self {
            Formula::Atom(a) => matches!(a.name, AtomName::Aux(_)),
            _ => self.children().into_iter().any(Formula::has_aux),
        }
    }

    /// Node count of the binary presentation: an n-ary node counts `n - 1`.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Tensor(c) | Formula::Par(c) | Formula::Plus(c) | Formula::With(c) => {
                c.iter().map(Formula::size).sum::<usize>() + c.len().saturating_sub(1)
            }
            Formula::Lollipop(a, b) => a.size() + b.size() + 1,
            Formula::Bang(a) | Formula::WhyNot(a) => a.size() + 1,
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Bang(a) | Formula::WhyNot(a) => 1 + a.modal_depth(),
            _ => self.children().into_iter().map(Formula::modal_depth).max().unwrap_or(0),
        }
    }

    pub fn modal_count(&self) -> usize {
        let own = usize::from(self.is_modal());
        own + self.children().into_iter().map(Formula::modal_count).sum::<usize>()
    }

    /// Checks that every constructor belongs to `language`.
    pub fn check_language(&self, language: Language) -> Result<(), FormulaError> {
        self.check_language_at(language, true)
    }

    fn check_language_at(&self, language: Language, top: bool) -> Result<(), FormulaError> {
        let reject = |construct| Err(FormulaError::NotInLanguage { construct, language });
        match self {
            Formula::Atom(a) => {
                if matches!(a.name, AtomName::Aux(_)) && language != Language::Emll {
                    return reject("auxiliary atom");
                }
                if a.negated && language == Language::Imll {
                    return reject("negation");
                }
            }
            Formula::Tensor(_) => {}
            Formula::Par(_) if language == Language::Imll => return reject("par"),
            Formula::Par(_) => {}
            Formula::Plus(_) | Formula::With(_) => {
                if language != Language::Mall {
                    return reject("additive");
                }
                if !top {
                    return reject("nested additive");
                }
            }
            Formula::Lollipop(..) if language != Language::Imll => return reject("lollipop"),
            Formula::Lollipop(..) => {}
            Formula::Bang(_) | Formula::WhyNot(_) if language != Language::Emll => return reject("modality"),
            Formula::Bang(_) | Formula::WhyNot(_) => {}
        }
        for c in self.children() {
            c.check_language_at(language, false)?;
        }
        Ok(())
    }

    /// Argument atoms occur exactly once each and form `1..=n`. Returns `n`.
    /// Under a top-level additive each child must satisfy this over the
    /// same atoms.
    pub fn check_linear(&self) -> Result<usize, FormulaError> {
        match self {
            Formula::Plus(children) | Formula::With(children) => {
                let mut arity = None;
                for c in children {
                    let n = c.check_linear()?;
                    if arity.is_some_and(|a| a != n) {
                        return Err(FormulaError::AdditiveAlphabet);
                    }
                    arity = Some(n);
                }
                Ok(arity.unwrap_or(0))
            }
            _ => linear_atoms(&self.arg_atoms()),
        }
    }
}

fn linear_atoms(atoms: &[usize]) -> Result<usize, FormulaError> {
    let n = atoms.iter().copied().max().unwrap_or(0);
    let mut seen = vec![false; n + 1];
    for &i in atoms {
        if seen[i] {
            return Err(FormulaError::RepeatedAtom(i));
        }
        seen[i] = true;
    }
    if let Some(missing) = (1..=n).find(|&i| !seen[i]) {
        return Err(FormulaError::MissingAtom(missing, n));
    }
    Ok(n)
}

/// Flattens nested occurrences of the same associative connective,
/// collapses unary nodes and sorts commutative children by least argument
/// atom (then structurally). Idempotent.
pub fn canonicalize(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Tensor(c) => rebuild(c, Formula::Tensor, |g| match g {
            Formula::Tensor(inner) => Some(inner),
            _ => None,
        }),
        Formula::Par(c) => rebuild(c, Formula::Par, |g| match g {
            Formula::Par(inner) => Some(inner),
            _ => None,
        }),
        Formula::Plus(c) => rebuild(c, Formula::Plus, |g| match g {
            Formula::Plus(inner) => Some(inner),
            _ => None,
        }),
        Formula::With(c) => rebuild(c, Formula::With, |g| match g {
            Formula::With(inner) => Some(inner),
            _ => None,
        }),
        Formula::Lollipop(a, b) => Formula::lollipop(canonicalize(a), canonicalize(b)),
        Formula::Bang(a) => Formula::bang(canonicalize(a)),
        Formula::WhyNot(a) => Formula::why_not(canonicalize(a)),
    }
}

fn rebuild(
    children: &[Formula],
    make: fn(Vec<Formula>) -> Formula,
    same: fn(Formula) -> Option<Vec<Formula>>,
) -> Formula {
    let mut flat = Vec::with_capacity(children.len());
    for c in children {
        let c = canonicalize(c);
        // Canonical children are already flat, so one level suffices.
        match same(c.clone()) {
            Some(inner) => flat.extend(inner),
            None => flat.push(c),
        }
    }
    sort_children(&mut flat);
    if flat.len() == 1 {
        flat.pop().unwrap()
    } else {
        make(flat)
    }
}

pub(crate) fn sort_children(children: &mut [Formula]) {
    children.sort_by_cached_key(|c| (c.min_arg().unwrap_or(usize::MAX), c.clone()));
}

/// De Morgan negation pushed to the atoms. Plus and with swap; a lollipop
/// `A -o B` negates to `A * ~B`.
pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(Atom { name: a.name.clone(), negated: !a.negated }),
        Formula::Tensor(c) => Formula::Par(c.iter().map(negate).collect()),
        Formula::Par(c) => Formula::Tensor(c.iter().map(negate).collect()),
        Formula::Plus(c) => Formula::With(c.iter().map(negate).collect()),
        Formula::With(c) => Formula::Plus(c.iter().map(negate).collect()),
        Formula::Lollipop(a, b) => Formula::Tensor(vec![(**a).clone(), negate(b)]),
        Formula::Bang(a) => Formula::why_not(negate(a)),
        Formula::WhyNot(a) => Formula::bang(negate(a)),
    }
}

/// Flips the negation mark of every argument atom, leaving connectives as
/// they are: `a_i` becomes `~a_i`.
pub fn complement_atoms(f: &Formula) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(Atom { name: a.name.clone(), negated: !a.negated }),
        Formula::Tensor(c) => Formula::Tensor(c.iter().map(complement_atoms).collect()),
        Formula::Par(c) => Formula::Par(c.iter().map(complement_atoms).collect()),
        Formula::Plus(c) => Formula::Plus(c.iter().map(complement_atoms).collect()),
        Formula::With(c) => Formula::With(c.iter().map(complement_atoms).collect()),
        Formula::Lollipop(a, b) => Formula::lollipop(complement_atoms(a), complement_atoms(b)),
        Formula::Bang(a) => Formula::bang(complement_atoms(a)),
        Formula::WhyNot(a) => Formula::why_not(complement_atoms(a)),
    }
}

/// Removes every negation mark on atoms.
pub fn strip_negations(f: &Formula) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(Atom { name: a.name.clone(), negated: false }),
        Formula::Tensor(c) => Formula::Tensor(c.iter().map(strip_negations).collect()),
        Formula::Par(c) => Formula::Par(c.iter().map(strip_negations).collect()),
        Formula::Plus(c) => Formula::Plus(c.iter().map(strip_negations).collect()),
        Formula::With(c) => Formula::With(c.iter().map(strip_negations).collect()),
        Formula::Lollipop(a, b) => Formula::lollipop(strip_negations(a), strip_negations(b)),
        Formula::Bang(a) => Formula::bang(strip_negations(a)),
        Formula::WhyNot(a) => Formula::why_not(strip_negations(a)),
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
