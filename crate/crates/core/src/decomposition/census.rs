use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{DecompositionError, WitnessIndex};
use crate::formulas::{Formula, DEFAULT_ENUMERATION_CAP};
use crate::partitions::{all_partitions, is_orthogonal, Mode, Partition, PartitionSet};

/// Largest arity whose partitions fit a `u64` row of the orthogonality matrix.
const MAX_CENSUS_ARITY: usize = 5;
const MAX_EXHAUSTIVE_ARITY: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Closures of every subset of partitions.
    Exhaustive,
    /// Closures of every set of at most `max_generators` partitions.
    GeneratorBounded { max_generators: usize },
}

impl CensusMode {
    pub fn default_for(arity: usize) -> Self {
        if arity <= MAX_EXHAUSTIVE_ARITY {
            CensusMode::Exhaustive
        } else {
            CensusMode::GeneratorBounded { max_generators: 4 }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    Decomposable,
    NonDecomposable,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Decomposable => "decomposable",
            VerdictKind::NonDecomposable => "non-decomposable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub left: PartitionSet,
    pub right: PartitionSet,
    pub verdict: VerdictKind,
    pub witness: Option<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub arity: usize,
    pub mode: CensusMode,
    pub generating_sets: u64,
    pub connectives: usize,
    pub decomposable: usize,
    pub non_decomposable: usize,
    pub entries: Vec<CensusEntry>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl CensusReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("arity,left,right,verdict,witness\n");
        for e in &self.entries {
            let witness = e.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                self.arity,
                csv_field(&e.left.to_string()),
                csv_field(&e.right.to_string()),
                e.verdict.as_str(),
                csv_field(&witness)
            );
        }
        out
    }

    pub fn non_decomposable_entries(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(|e| e.verdict == VerdictKind::NonDecomposable)
    }
}

fn subsets_up_to(universe: usize, k: usize, mut visit: impl FnMut(u64)) {
    fn rec(start: usize, universe: usize, left: usize, acc: u64, visit: &mut dyn FnMut(u64)) {
        if acc != 0 {
            visit(acc);
        }
        if left == 0 {
            return;
        }
        for i in start..universe {
            rec(i + 1, universe, left - 1, acc | 1 << i, visit);
        }
    }
    rec(0, universe, k, 0, &mut visit);
}

/// Every valid unpolarized connective of arity `n` reachable in `mode`,
/// each classified as MLL-decomposable or not.
pub fn census(n: usize, mode: CensusMode) -> Result<CensusReport, DecompositionError> {
    if n > MAX_CENSUS_ARITY {
        return Err(DecompositionError::Unsupported(format!("census is limited to arity {MAX_CENSUS_ARITY}")));
    }
    if mode == CensusMode::Exhaustive && n > MAX_EXHAUSTIVE_ARITY {
        return Err(DecompositionError::Unsupported(format!(
            "exhaustive census is limited to arity {MAX_EXHAUSTIVE_ARITY}; use a generator bound"
        )));
    }
    let parts: Vec<Partition> = all_partitions(n, Mode::Unpolarized.default_cap())?.collect();
    let b = parts.len();
    let everything = if b == 64 { u64::MAX } else { (1u64 << b) - 1 };
    let mut orth = vec![0u64; b];
    for i in 0..b {
        for j in 0..b {
            if is_orthogonal(&parts[i], &parts[j], Mode::Unpolarized)? {
                orth[i] |= 1 << j;
            }
        }
    }
    let dual = |x: u64| -> u64 {
        let mut acc = everything;
        let mut rest = x;
        while rest != 0 {
            acc &= orth[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        acc
    };

    let mut closed: BTreeMap<u64, u64> = BTreeMap::new();
    let mut generating_sets = 0u64;
    let mut visit = |x: u64| {
        generating_sets += 1;
        let right = dual(x);
        let left = dual(right);
        if left != 0 && right != 0 {
            closed.entry(left).or_insert(right);
        }
    };
    match mode {
        CensusMode::Exhaustive => (1..=everything).for_each(&mut visit),
        CensusMode::GeneratorBounded { max_generators } => subsets_up_to(b, max_generators, &mut visit),
    }

    let to_set =
        |mask: u64| PartitionSet::from_partitions(n, (0..b).filter(|&i| mask >> i & 1 == 1).map(|i| parts[i].clone()));
    let index = WitnessIndex::new(n, DEFAULT_ENUMERATION_CAP)?;
    let mut entries = Vec::with_capacity(closed.len());
    for (l, r) in closed {
        let left = to_set(l)?;
        let right = to_set(r)?;
        let witness = index.lookup(&left).cloned();
        let verdict = if witness.is_some() { VerdictKind::Decomposable } else { VerdictKind::NonDecomposable };
        entries.push(CensusEntry { left, right, verdict, witness });
    }
    entries.sort_by(|a, b| (a.left.len(), &a.left).cmp(&(b.left.len(), &b.left)));
    let decomposable = entries.iter().filter(|e| e.verdict == VerdictKind::Decomposable).count();
    Ok(CensusReport {
        arity: n,
        mode,
        generating_sets,
        connectives: entries.len(),
        decomposable,
        non_decomposable: entries.len() - decomposable,
        entries,
    })
}
