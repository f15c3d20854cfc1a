use std::collections::HashMap;

use super::{Formula, FormulaError};
use crate::partitions::{bit, elements, PartitionError};

pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Top {
    Tensor,
    Par,
}

/// Every linear MLL formula over `a1..an`, once per class of the
/// commutativity/associativity equivalence, in canonical form and sorted
/// by printed text.
pub fn enumerate_formulas(n: usize, cap: usize) -> Result<Vec<Formula>, FormulaError> {
    if n == 0 {
        return Err(PartitionError::ZeroArity.into());
    }
    if n > cap {
        return Err(PartitionError::CapExceeded { arity: n, cap }.into());
    }
    let mut memo = HashMap::new();
    let all = (1u32 << n) - 1;
    let mut out = formulas_over(all, None, &mut memo);
    out.sort_by_cached_key(|f| f.to_string());
    Ok(out)
}

/// Canonical formulas over exactly the atoms in `set` whose top connective
/// is not `exclude`.
fn formulas_over(set: u32, exclude: Option<Top>, memo: &mut HashMap<(u32, Option<Top>), Vec<Formula>>) -> Vec<Formula> {
    if let Some(v) = memo.get(&(set, exclude)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if set.count_ones() == 1 {
        out.push(Formula::atom(set.trailing_zeros() as usize + 1));
    } else {
        for top in [Top::Tensor, Top::Par] {
            if exclude == Some(top) {
                continue;
            }
            for blocks in block_splits(set) {
                let choices: Vec<Vec<Formula>> = blocks.iter().map(|&b| formulas_over(b, Some(top), memo)).collect();
                for children in cartesian(&choices) {
                    out.push(match top {
                        Top::Tensor => Formula::Tensor(children),
                        Top::Par => Formula::Par(children),
                    });
                }
            }
        }
    }
    memo.insert((set, exclude), out.clone());
    out
}

/// Set partitions of `set` into at least two blocks, blocks ordered by
/// least element.
pub(crate) fn block_splits(set: u32) -> Vec<Vec<u32>> {
    let items: Vec<usize> = elements(set).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<u32> = Vec::new();
    fn rec(items: &[usize], i: usize, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == items.len() {
            if blocks.len() >= 2 {
                out.push(blocks.clone());
            }
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= bit(items[i]);
            rec(items, i + 1, blocks, out);
            blocks[k] &= !bit(items[i]);
        }
        blocks.push(bit(items[i]));
        rec(items, i + 1, blocks, out);
        blocks.pop();
    }
    rec(&items, 0, &mut blocks, &mut out);
    out
}

pub(crate) fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::canonicalize;

    #[test]
    fn small_counts() {
        let one = enumerate_formulas(1, 6).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_string(), "a1");
        let two: Vec<String> = enumerate_formulas(2, 6).unwrap().iter().map(|f| f.to_string()).collect();
        assert_eq!(two, ["a1*a2", "a1|a2"]);
    }

    #[test]
    fn output_is_canonical() {
        for f in enumerate_formulas(4, 6).unwrap() {
            assert_eq!(canonicalize(&f), f);
        }
    }

    #[test]
    fn cap_exceeded() {
        assert!(enumerate_formulas(7, 6).is_err());
        assert!(enumerate_formulas(0, 6).is_err());
    }
}
