use std::collections::{BTreeSet, HashMap};

use super::ImllError;
use crate::decomposition::{Context, ProofTree, Rule, Sequent};
use crate::formulas::{Formula, Language};
use crate::partitions::{bit, Partition, PartitionSet};

/// One premise `atoms ⊢ a_s`: antecedent mask and the succedent bit.
type Premise = (u32, u32);
type Grouping = Vec<Premise>;

fn grouping_to_partition(n: usize, g: &Grouping) -> Result<Partition, ImllError> {
    let classes = g.iter().map(|&(a, s)| a | s).collect();
    let checked = g.iter().fold(0, |m, &(_, s)| m | s);
    Ok(Partition::from_masks(n, classes, checked)?)
}

struct Search {
    memo: HashMap<(u32, Formula), BTreeSet<Grouping>>,
}

impl Search {
    /// Groupings for `atoms ⊢ succ` once the antecedent is all atoms.
    fn atomic(&mut self, atoms: u32, succ: &Formula) -> Result<BTreeSet<Grouping>, ImllError> {
        if let Some(hit) = self.memo.get(&(atoms, succ.clone())) {
            return Ok(hit.clone());
        }
        let out = match succ {
            Formula::Atom(_) => BTreeSet::from([vec![(atoms, succ.arg_mask())]]),
            Formula::Lollipop(a, b) => {
                let extra = antecedent_mask(a)?;
                self.atomic(atoms | extra, b)?
            }
            Formula::Tensor(children) => {
                let items: Vec<u32> = crate::partitions::elements(atoms).map(bit).collect();
                let k = children.len();
                let mut out = BTreeSet::new();
                let mut assign = vec![0usize; items.len()];
                loop {
                    let mut parts = vec![0u32; k];
                    for (i, &c) in assign.iter().enumerate() {
                        parts[c] |= items[i];
                    }
                    let mut acc: BTreeSet<Grouping> = BTreeSet::from([Vec::new()]);
                    for (c, part) in children.iter().zip(&parts) {
                        let sub = self.atomic(*part, c)?;
                        acc = acc
                            .iter()
                            .flat_map(|a| {
                                sub.iter().map(move |b| {
                                    let mut g: Grouping = a.iter().chain(b).copied().collect();
                                    g.sort_unstable();
                                    g
                                })
                            })
                            .collect();
                    }
                    out.extend(acc);
                    if !next_assignment(&mut assign, k) {
                        break;
                    }
                }
                out
            }
            other => {
                return Err(ImllError::Formula(crate::formulas::FormulaError::NotInLanguage {
                    construct: construct_name(other),
                    language: Language::Imll,
                }))
            }
        };
        self.memo.insert((atoms, succ.clone()), out.clone());
        Ok(out)
    }
}

fn construct_name(f: &Formula) -> &'static str {
    match f {
        Formula::Par(_) => "par",
        Formula::Plus(_) => "plus",
        Formula::With(_) => "with",
        Formula::Bang(_) | Formula::WhyNot(_) => "modality",
        _ => "construct",
    }
}

/// Atoms of a left-side formula; only tensors of atoms decompose on the left.
fn antecedent_mask(f: &Formula) -> Result<u32, ImllError> {
    match f {
        Formula::Atom(_) => Ok(f.arg_mask()),
        Formula::Tensor(cs) => cs.iter().try_fold(0, |m, c| Ok(m | antecedent_mask(c)?)),
        _ => Err(ImllError::LeftLollipop(f.to_string())),
    }
}

fn next_assignment(assign: &mut [usize], k: usize) -> bool {
    for slot in assign.iter_mut() {
        *slot += 1;
        if *slot < k {
            return true;
        }
        *slot = 0;
    }
    false
}

fn check_imll(f: &Formula) -> Result<usize, ImllError> {
    f.check_language(Language::Imll)?;
    Ok(f.check_linear()?)
}

/// Premise groupings of `⊢ α` under ⊗-left, ⊗-right and ⊸-right, as
/// polarized partitions: each premise is one class and its succedent atom
/// is checked.
pub fn imll_behavior(f: &Formula) -> Result<PartitionSet, ImllError> {
    let n = check_imll(f)?;
    let mut search = Search { memo: HashMap::new() };
    let groupings = search.atomic(0, f)?;
    let parts = groupings.iter().map(|g| grouping_to_partition(n, g)).collect::<Result<Vec<_>, _>>()?;
    Ok(PartitionSet::from_partitions(n, parts)?)
}

/// A two-sided derivation of `⊢ α` whose open premises are the classes of
/// `target`, each `antecedent, Γ_i ⊢ checked`.
pub fn derive_imll(f: &Formula, target: &Partition) -> Option<ProofTree> {
    prove(Vec::new(), f.clone(), target)
}

fn fits(mask: u32, target: &Partition) -> bool {
    target.class_masks().iter().all(|&c| c & mask == 0 || c & mask == c)
}

fn contexts(trees: &[&ProofTree]) -> Vec<Context> {
    let mut ctx: Vec<Context> = trees.iter().flat_map(|t| t.conclusion.antecedent_contexts.iter().copied()).collect();
    ctx.sort();
    ctx
}

fn prove(antecedent: Vec<Formula>, succ: Formula, target: &Partition) -> Option<ProofTree> {
    let mask = antecedent.iter().fold(succ.arg_mask(), |m, f| m | f.arg_mask());
    if !fits(mask, target) {
        return None;
    }
    if let Some(i) = antecedent.iter().position(|f| matches!(f, Formula::Tensor(_))) {
        let Formula::Tensor(cs) = &antecedent[i] else { unreachable!() };
        let mut premise = antecedent.clone();
        premise.splice(i..=i, cs.iter().cloned());
        let sub = prove(premise, succ.clone(), target)?;
        let ctx = sub.conclusion.antecedent_contexts.clone();
        return Some(ProofTree::step(Sequent::two_sided(antecedent, ctx, vec![succ]), Rule::TensorLeft, vec![sub]));
    }
    match &succ {
        Formula::Lollipop(a, b) => {
            let mut premise = antecedent.clone();
            premise.push((**a).clone());
            let sub = prove(premise, (**b).clone(), target)?;
            let ctx = sub.conclusion.antecedent_contexts.clone();
            Some(ProofTree::step(Sequent::two_sided(antecedent, ctx, vec![succ]), Rule::LollipopRight, vec![sub]))
        }
        Formula::Atom(_) => {
            if !antecedent.iter().all(Formula::is_atom) {
                return None;
            }
            let class = target.class_masks().iter().position(|&c| c == mask)?;
            if target.checked_mask() & mask != succ.arg_mask() {
                return None;
            }
            Some(ProofTree::premise(Sequent::two_sided(antecedent, vec![Context::gamma(class + 1)], vec![succ])))
        }
        Formula::Tensor(cs) => {
            let head = cs[0].clone();
            let tail = if cs.len() == 2 { cs[1].clone() } else { Formula::Tensor(cs[1..].to_vec()) };
            for split in 0u32..(1 << antecedent.len()) {
                let (mut l, mut r) = (Vec::new(), Vec::new());
                for (k, f) in antecedent.iter().enumerate() {
                    if split >> k & 1 == 1 {
                        l.push(f.clone())
                    } else {
                        r.push(f.clone())
                    }
                }
                let Some(lt) = prove(l, head.clone(), target) else { continue };
                let Some(rt) = prove(r, tail.clone(), target) else { continue };
                let ctx = contexts(&[&lt, &rt]);
                let conclusion = Sequent::two_sided(antecedent.clone(), ctx, vec![succ.clone()]);
                return Some(ProofTree::step(conclusion, Rule::TensorRight, vec![lt, rt]));
            }
            None
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse;

    fn beh(s: &str) -> String {
        imll_behavior(&parse(s, Language::Imll).unwrap()).unwrap().to_string()
    }

    #[test]
    fn behavior_examples() {
        assert_eq!(beh("a1 -o a2"), "[[1,-2]]");
        assert_eq!(beh("(a1*a2) -o a3"), "[[1,2,-3]]");
        assert_eq!(beh("(a1 -o a3)*(a2 -o a4)"), "[[1,-3],[2,-4]]");
        assert_eq!(beh("a1*a2"), "[[-1],[-2]]");
        assert_eq!(beh("a1 -o (a2*a3)"), "[[1,-2],[-3]] ; [[1,-3],[-2]]");
    }

    #[test]
    fn left_lollipop_is_rejected() {
        let f = parse("(a1 -o a2) -o a3", Language::Imll).unwrap();
        assert!(matches!(imll_behavior(&f), Err(ImllError::LeftLollipop(_))));
    }

    #[test]
    fn derivation_matches_target() {
        let f = parse("((a1*a2) -o a5)*((a3*a4) -o a6)", Language::Imll).unwrap();
        let p = Partition::from_signed(&[vec![1, 2, -5], vec![3, 4, -6]]).unwrap();
        let t = derive_imll(&f, &p).unwrap();
        assert!(t.is_well_formed());
        assert_eq!(t.premise_partition(6).unwrap().unpolarized(), p.unpolarized());
        assert_eq!(t.leaves()[0].to_text(), "a1, a2, G1 |- a5");
    }
}
