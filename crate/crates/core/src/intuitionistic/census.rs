use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::decompose::{find_witness, Construction};
use super::{is_proper, ImllError};
use crate::formulas::Formula;
use crate::partitions::{all_partitions, full_mask, is_orthogonal, Mode, Partition, PartitionError, PartitionSet};

pub const MAX_IMLL_CENSUS_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImllCensusEntry {
    pub left: PartitionSet,
    pub right: PartitionSet,
    /// Every right-rule premise has exactly one succedent.
    pub proper: bool,
    pub verdict: &'static str,
    pub witness: Option<Formula>,
    pub construction: Option<Construction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImllCensusReport {
    pub arity: usize,
    pub connectives: usize,
    pub proper: usize,
    pub decomposable: usize,
    pub non_decomposable: usize,
    /// Improper connectives: some premise has no succedent.
    pub outside_schema: usize,
    pub by_construction: Vec<(Construction, usize)>,
    pub entries: Vec<ImllCensusEntry>,
}

impl ImllCensusReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("arity,left,right,proper,verdict,witness,construction\n");
        for e in &self.entries {
            let quote = |s: String| format!("\"{}\"", s.replace('"', "\"\""));
            let construction = e
                .construction
                .map(|c| serde_json::to_value(c).unwrap().as_str().unwrap().to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.arity,
                quote(e.left.to_string()),
                quote(e.right.to_string()),
                e.proper,
                e.verdict,
                quote(e.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()),
                construction
            ));
        }
        out
    }
}

fn with_checked_intuitionistic(parts: &[Partition], checked: u32) -> Vec<Partition> {
    parts.iter().map(|p| p.with_checked(checked)).filter(Partition::is_intuitionistic).collect()
}

/// Closed right sets with checked set `s`, each with its dual.
fn closed_pairs(n: usize, parts: &[Partition], s: u32) -> Result<Vec<(PartitionSet, PartitionSet)>, ImllError> {
    let g = with_checked_intuitionistic(parts, s);
    let h = with_checked_intuitionistic(parts, full_mask(n) & !s);
    let mut orth = vec![0u64; g.len()];
    for (i, p) in g.iter().enumerate() {
        for (j, q) in h.iter().enumerate() {
            if is_orthogonal(p, q, Mode::Polarized)? {
                orth[i] |= 1 << j;
            }
        }
    }
    let mut seen: BTreeSet<(u64, u64)> = BTreeSet::new();
    for x in 1u64..(1 << g.len()) {
        let mut dual = u64::MAX;
        let mut rest = x;
        while rest != 0 {
            dual &= orth[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        if dual == 0 {
            continue;
        }
        let closed = (0..g.len()).filter(|&i| orth[i] & dual == dual).fold(0u64, |m, i| m | 1 << i);
        seen.insert((closed, dual));
    }
    let to_set = |mask: u64, from: &[Partition]| {
        PartitionSet::from_partitions(n, (0..from.len()).filter(|&i| mask >> i & 1 == 1).map(|i| from[i].clone()))
    };
    seen.into_iter()
        .map(|(r, l)| Ok((to_set(l, &h)?, to_set(r, &g)?)))
        .collect::<Result<Vec<_>, PartitionError>>()
        .map_err(ImllError::from)
}

/// Every valid intuitionistic connective of arity `n`, decomposed.
pub fn imll_census(n: usize) -> Result<ImllCensusReport, ImllError> {
    if n == 0 {
        return Err(PartitionError::ZeroArity.into());
    }
    if n > MAX_IMLL_CENSUS_ARITY {
        return Err(PartitionError::CapExceeded { arity: n, cap: MAX_IMLL_CENSUS_ARITY }.into());
    }
    let parts: Vec<Partition> = all_partitions(n, Mode::Unpolarized.default_cap())?.collect();
    let per_checked: Vec<Vec<ImllCensusEntry>> = (0u32..1 << n)
        .into_par_iter()
        .map(|s| {
            let mut cache = HashMap::new();
            let mut entries = Vec::new();
            for (left, right) in closed_pairs(n, &parts, s)? {
                let proper = is_proper(&right);
                let (verdict, witness, construction) = if !proper {
                    ("outside-schema", None, None)
                } else {
                    match find_witness(&right, &mut cache)? {
                        Ok((w, how)) => ("decomposable", Some(w), Some(how)),
                        Err(_) => ("non-decomposable", None, None),
                    }
                };
                entries.push(ImllCensusEntry { left, right, proper, verdict, witness, construction });
            }
            Ok(entries)
        })
        .collect::<Result<_, ImllError>>()?;
    let entries: Vec<ImllCensusEntry> = per_checked.into_iter().flatten().collect();
    let count = |v: &str| entries.iter().filter(|e| e.verdict == v).count();
    let by_construction = [Construction::Normal, Construction::SingleImplication, Construction::FragmentSearch]
        .into_iter()
        .map(|c| (c, entries.iter().filter(|e| e.construction == Some(c)).count()))
        .collect();
    Ok(ImllCensusReport {
        arity: n,
        connectives: entries.len(),
        proper: entries.iter().filter(|e| e.proper).count(),
        decomposable: count("decomposable"),
        non_decomposable: count("non-decomposable"),
        outside_schema: count("outside-schema"),
        by_construction,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses_have_no_non_decomposables() {
        for n in 1..=3 {
            let r = imll_census(n).unwrap();
            assert_eq!(r.non_decomposable, 0, "arity {n}");
            assert_eq!(r.decomposable, r.proper);
        }
    }

    #[test]
    fn cap() {
        assert!(imll_census(5).is_err());
    }
}
