use std::collections::{BTreeSet, HashMap};

use super::{Formula, FormulaError, Language};
use crate::partitions::{Partition, PartitionSet};

/// A partition as a sorted list of disjoint class masks.
pub(crate) type Classes = Vec<u32>;

/// Partition-set semantics of an MLL formula over its own atoms, as class
/// masks: the premise groupings reachable by decomposing `⊢ Γ, α` bottom-up
/// with ⊗ and ⅋. Atoms need not be contiguous.
pub fn behavior_masks(f: &Formula) -> Result<BTreeSet<Classes>, FormulaError> {
    f.check_language(Language::Mll)?;
    Ok(masks(f))
}

fn masks(f: &Formula) -> BTreeSet<Classes> {
    let mut memo = HashMap::new();
    sequent(vec![f.clone()], &mut memo)
}

/// Groupings of `⊢ fs` with one context per premise. Par is invertible and
/// applied eagerly; every tensor is tried as the lowest rule.
fn sequent(mut fs: Vec<Formula>, memo: &mut HashMap<Vec<Formula>, BTreeSet<Classes>>) -> BTreeSet<Classes> {
    while let Some(i) = fs.iter().position(|g| matches!(g, Formula::Par(_))) {
        let Formula::Par(cs) = fs.remove(i) else { unreachable!() };
        fs.extend(cs);
    }
    fs.sort();
    if let Some(hit) = memo.get(&fs) {
        return hit.clone();
    }
    let mut out = BTreeSet::new();
    if fs.iter().all(Formula::is_atom) {
        out.insert(vec![fs.iter().fold(0, |m, g| m | g.arg_mask())]);
    }
    for (i, g) in fs.iter().enumerate() {
        let Formula::Tensor(cs) = g else { continue };
        let head = cs[0].clone();
        let tail = if cs.len() == 2 { cs[1].clone() } else { Formula::Tensor(cs[1..].to_vec()) };
        let rest: Vec<&Formula> = fs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h).collect();
        for split in 0u32..(1 << rest.len()) {
            let (mut l, mut r) = (vec![head.clone()], vec![tail.clone()]);
            for (k, h) in rest.iter().enumerate() {
                if split >> k & 1 == 1 {
                    l.push((*h).clone())
                } else {
                    r.push((*h).clone())
                }
            }
            let left = sequent(l, memo);
            if left.is_empty() {
                continue;
            }
            let right = sequent(r, memo);
            for p in &left {
                for q in &right {
                    let mut classes: Classes = p.iter().chain(q).copied().collect();
                    classes.sort_unstable();
                    out.insert(classes);
                }
            }
        }
    }
    memo.insert(fs, out.clone());
    out
}

/// `P_α` for a linear MLL formula over `a1..an`.
pub fn behavior(f: &Formula) -> Result<PartitionSet, FormulaError> {
    f.check_language(Language::Mll)?;
    let n = f.check_linear()?;
    let parts =
        masks(f).into_iter().map(|classes| Partition::from_masks(n, classes, 0)).collect::<Result<Vec<_>, _>>()?;
    Ok(PartitionSet::from_partitions(n, parts)?)
}

/// The tensor of pars realizing exactly `{p}`; singleton classes become
/// bare atoms.
pub fn normal_formula(p: &Partition) -> Formula {
    let mut factors: Vec<Formula> = p
        .classes()
        .into_iter()
        .map(|class| {
            let mut atoms: Vec<Formula> = class.into_iter().map(Formula::atom).collect();
            if atoms.len() == 1 {
                atoms.pop().unwrap()
            } else {
                Formula::Par(atoms)
            }
        })
        .collect();
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Formula::Tensor(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse;

    fn beh(s: &str) -> String {
        behavior(&parse(s, Language::Mll).unwrap()).unwrap().to_string()
    }

    #[test]
    fn behavior_examples() {
        assert_eq!(beh("(a1|a2)*(a3|a4)"), "[[1,2],[3,4]]");
        assert_eq!(beh("a1*a2"), "[[1],[2]]");
        assert_eq!(beh("(a1*a2)|a3"), "[[1,3],[2]] ; [[1],[2,3]]");
        assert_eq!(beh("a1"), "[[1]]");
        assert_eq!(beh("a1|a2|(a3*a4)"), "[[1,2,3],[4]] ; [[1,2,4],[3]] ; [[1,3],[2,4]] ; [[1,4],[2,3]]");
    }

    #[test]
    fn behavior_ignores_atom_negation() {
        assert_eq!(beh("(~a1*~a2)|a3"), beh("(a1*a2)|a3"));
    }

    #[test]
    fn normal_formula_examples() {
        let p = Partition::new(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(normal_formula(&p).to_string(), "(a1|a2)*(a3|a4)");
        let p = Partition::new(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(normal_formula(&p).to_string(), "a1*a2*a3");
        let p = Partition::new(4, &[vec![1, 4], vec![2], vec![3]]).unwrap();
        assert_eq!(normal_formula(&p).to_string(), "(a1|a4)*a2*a3");
        let p = Partition::new(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(normal_formula(&p).to_string(), "a1|a2|a3");
    }

    #[test]
    fn non_mll_is_rejected() {
        let f = parse("a1 + a1", Language::Mall).unwrap();
        assert!(behavior(&f).is_err());
    }
}
