use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{EmllError, EmllSearchBounds};
use crate::formulas::{canonicalize, AtomName, Formula, Language};

/// What the conclusion's context is known to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContextShape {
    /// Opaque and arbitrary: each premise carries its own context.
    Arbitrary,
    /// Known to be empty.
    Empty,
}

/// One way of reducing `⊢ Γ, α` bottom-up to open premises.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Grouping {
    /// Argument-atom masks of the open premises, sorted; `0` is a premise
    /// with no principal formula.
    pub classes: Vec<u32>,
    /// Some step used ?-weakening, ?-contraction or K.
    pub modal: bool,
}

impl Grouping {
    pub fn has_empty_premise(&self) -> bool {
        self.classes.contains(&0)
    }

    pub fn covered(&self) -> u32 {
        self.classes.iter().fold(0, |m, c| m | c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PremiseSets {
    pub groupings: BTreeSet<Grouping>,
    /// Some branch needed a ?-weakening beyond the bound.
    pub bound_hit: bool,
}

impl PremiseSets {
    /// Class lists of groupings without an empty premise.
    pub fn unflagged_classes(&self) -> BTreeSet<Vec<u32>> {
        self.groupings.iter().filter(|g| !g.has_empty_premise()).map(|g| g.classes.clone()).collect()
    }

    pub fn all_classes(&self) -> BTreeSet<Vec<u32>> {
        self.groupings.iter().map(|g| g.classes.clone()).collect()
    }
}

type Outcomes = (BTreeSet<Grouping>, bool);

struct Search {
    arbitrary: bool,
    memo: HashMap<(Vec<Formula>, bool, usize, usize), Outcomes>,
}

fn is_arg_atom(f: &Formula) -> bool {
    matches!(f, Formula::Atom(a) if matches!(a.name, AtomName::Arg(_)))
}

fn is_axiom(fs: &[Formula]) -> bool {
    match fs {
        [Formula::Atom(x), Formula::Atom(y)] => {
            matches!(x.name, AtomName::Aux(_)) && x.name == y.name && x.negated != y.negated
        }
        _ => false,
    }
}

fn without(fs: &[Formula], i: usize) -> Vec<Formula> {
    fs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.clone()).collect()
}

fn modal_outcomes(mut found: Outcomes) -> Outcomes {
    found.0 = found.0.into_iter().map(|g| Grouping { modal: true, ..g }).collect();
    found
}

fn absorb(groupings: &mut BTreeSet<Grouping>, bound_hit: &mut bool, found: Outcomes) {
    groupings.extend(found.0);
    *bound_hit |= found.1;
}

impl Search {
    /// Outcomes for `⊢ [ctx], fs`; `ctx` says whether an opaque context is present.
    fn sequent(&mut self, mut fs: Vec<Formula>, ctx: bool, weakenings: usize, contractions: usize) -> Outcomes {
        // Par is invertible.
        while let Some(i) = fs.iter().position(|f| matches!(f, Formula::Par(_))) {
            let Formula::Par(cs) = fs.remove(i) else { unreachable!() };
            fs.extend(cs);
        }
        fs.sort();
        let key = (fs, ctx, weakenings, contractions);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (fs, ..) = &key;
        let mut groupings = BTreeSet::new();
        let mut bound_hit = false;

        if fs.iter().all(is_arg_atom) && (ctx || !self.arbitrary) {
            let mask = fs.iter().fold(0, |m, f| m | f.arg_mask());
            groupings.insert(Grouping { classes: vec![mask], modal: false });
        }
        if !ctx && is_axiom(fs) {
            groupings.insert(Grouping { classes: Vec::new(), modal: false });
        }

        for (i, f) in fs.iter().enumerate() {
            match f {
                Formula::Tensor(cs) => {
                    let head = cs[0].clone();
                    let tail = if cs.len() == 2 { cs[1].clone() } else { Formula::Tensor(cs[1..].to_vec()) };
                    let rest = without(fs, i);
                    let splits: &[(bool, bool)] =
                        if ctx { &[(true, true), (true, false), (false, true)] } else { &[(false, false)] };
                    for split in 0u32..(1 << rest.len()) {
                        let (mut l, mut r) = (vec![head.clone()], vec![tail.clone()]);
                        for (k, g) in rest.iter().enumerate() {
                            if split >> k & 1 == 1 {
                                l.push(g.clone())
                            } else {
                                r.push(g.clone())
                            }
                        }
                        for &(lc, rc) in splits {
                            let left = self.sequent(l.clone(), lc, weakenings, contractions);
                            if left.0.is_empty() {
                                bound_hit |= left.1;
                                continue;
                            }
                            let right = self.sequent(r.clone(), rc, weakenings, contractions);
                            let mut combined = BTreeSet::new();
                            for a in &left.0 {
                                for b in &right.0 {
                                    let mut classes: Vec<u32> = a.classes.iter().chain(&b.classes).copied().collect();
                                    classes.sort_unstable();
                                    combined.insert(Grouping { classes, modal: a.modal || b.modal });
                                }
                            }
                            groupings.extend(combined);
                            bound_hit |= left.1 || right.1;
                        }
                    }
                }
                Formula::WhyNot(_) => {
                    if weakenings > 0 {
                        let found = self.sequent(without(fs, i), ctx, weakenings - 1, contractions);
                        absorb(&mut groupings, &mut bound_hit, modal_outcomes(found));
                    } else {
                        bound_hit = true;
                    }
                    if contractions > 0 {
                        let mut dup = fs.clone();
                        dup.push(f.clone());
                        let found = self.sequent(dup, ctx, weakenings, contractions - 1);
                        absorb(&mut groupings, &mut bound_hit, modal_outcomes(found));
                    }
                }
                Formula::Bang(body) => {
                    let others = without(fs, i);
                    let promotable = !(ctx && self.arbitrary) && others.iter().all(|g| matches!(g, Formula::WhyNot(_)));
                    if promotable {
                        let mut premise: Vec<Formula> = others
                            .into_iter()
                            .map(|g| match g {
                                Formula::WhyNot(inner) => *inner,
                                _ => unreachable!(),
                            })
                            .collect();
                        premise.push((**body).clone());
                        let found = self.sequent(premise, false, weakenings, contractions);
                        absorb(&mut groupings, &mut bound_hit, modal_outcomes(found));
                    }
                }
                _ => {}
            }
        }
        let out = (groupings, bound_hit);
        self.memo.insert(key, out.clone());
        out
    }
}

/// Every premise grouping reachable from `⊢ Γ, α` bottom-up with ⊗, ⅋,
/// ?-weakening, ?-contraction and K, plus closing aux axioms `⊢ p, ~p`.
///
/// With an arbitrary context, a branch either carries part of it or none.
/// Open premises need one; K and axioms need none.
pub fn emll_premise_sets(
    f: &Formula,
    shape: ContextShape,
    bounds: &EmllSearchBounds,
) -> Result<PremiseSets, EmllError> {
    f.check_language(Language::Emll)?;
    let mut search = Search { arbitrary: shape == ContextShape::Arbitrary, memo: HashMap::new() };
    let ctx = shape == ContextShape::Arbitrary;
    let (groupings, bound_hit) = search.sequent(vec![f.clone()], ctx, bounds.max_weakenings, bounds.max_contractions);
    Ok(PremiseSets { groupings, bound_hit })
}

/// Deletes every `?`-subformula and collapses the connectives left with a
/// single operand. `None` when nothing remains.
pub fn strip_whynot(f: &Formula) -> Result<Option<Formula>, EmllError> {
    fn go(f: &Formula) -> Result<Option<Formula>, EmllError> {
        Ok(match f {
            Formula::WhyNot(_) => None,
            Formula::Bang(_) => return Err(EmllError::BangNotStrippable(f.to_string())),
            Formula::Tensor(cs) | Formula::Par(cs) => {
                let mut kept = Vec::new();
                for c in cs {
                    if let Some(k) = go(c)? {
                        kept.push(k);
                    }
                }
                match kept.len() {
                    0 => None,
                    1 => kept.pop(),
                    _ if matches!(f, Formula::Tensor(_)) => Some(Formula::Tensor(kept)),
                    _ => Some(Formula::Par(kept)),
                }
            }
            other => Some(other.clone()),
        })
    }
    Ok(go(f)?.map(|g| canonicalize(&g)))
}
