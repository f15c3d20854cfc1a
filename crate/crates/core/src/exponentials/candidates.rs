use std::collections::{BTreeSet, HashMap};

use crate::formulas::{canonicalize, Atom, AtomName, Formula};
use crate::partitions::full_mask;

/// Name of the auxiliary variable used under modalities.
pub const AUX_NAME: &str = "p";

fn aux_atoms() -> [Formula; 2] {
    let name = AtomName::Aux(AUX_NAME.to_string());
    [Formula::Atom(Atom { name: name.clone(), negated: false }), Formula::Atom(Atom { name, negated: true })]
}

type Key = (u32, bool, usize, usize);

struct Generator {
    memo: HashMap<Key, Vec<Formula>>,
}

impl Generator {
    /// Canonical formulas of exactly `size` nodes whose argument atoms are
    /// exactly `args`, each once, with modal depth at most `depth`. Aux
    /// atoms appear only when `in_modal`.
    fn exact(&mut self, args: u32, in_modal: bool, size: usize, depth: usize) -> Vec<Formula> {
        let key = (args, in_modal, size, depth);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut found: BTreeSet<Formula> = BTreeSet::new();
        if size == 1 {
            if args.count_ones() == 1 {
                found.insert(Formula::atom(args.trailing_zeros() as usize + 1));
            } else if args == 0 && in_modal {
                found.extend(aux_atoms());
            }
        } else if size > 1 {
            if depth > 0 {
                for f in self.exact(args, true, size - 1, depth - 1) {
                    found.insert(Formula::bang(f.clone()));
                    found.insert(Formula::why_not(f));
                }
            }
            for left_size in 1..size - 1 {
                let right_size = size - 1 - left_size;
                let mut sub = args;
                loop {
                    let lefts = self.exact(sub, in_modal, left_size, depth);
                    if !lefts.is_empty() {
                        let rights = self.exact(args & !sub, in_modal, right_size, depth);
                        for a in &lefts {
                            for b in &rights {
                                let pair = vec![a.clone(), b.clone()];
                                found.insert(canonicalize(&Formula::Tensor(pair.clone())));
                                found.insert(canonicalize(&Formula::Par(pair)));
                            }
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & args;
                }
            }
        }
        let out: Vec<Formula> = found.into_iter().filter(|f| f.size() == size).collect();
        self.memo.insert(key, out.clone());
        out
    }
}

/// Every canonical EMLL formula over `a1..an` (each once) with at least one
/// modality, size at most `max_size` and modal depth at most `max_depth`,
/// ordered by size and then printed text.
pub fn emll_candidates(n: usize, max_size: usize, max_depth: usize) -> Vec<Formula> {
    let mut generator = Generator { memo: HashMap::new() };
    let mut out = Vec::new();
    for size in n..=max_size {
        let mut batch: Vec<Formula> =
            generator.exact(full_mask(n), false, size, max_depth).into_iter().filter(|f| f.modal_count() > 0).collect();
        batch.sort_by_cached_key(|f| f.to_string());
        out.extend(batch);
    }
    out
}
