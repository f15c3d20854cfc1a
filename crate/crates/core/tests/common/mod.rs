//! Test-side oracles and generators, written independently of the library
//! algorithms they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gmc::formulas::{AtomName, Formula};
use gmc::partitions::{closure, ConnectivePair, Mode, Partition, PartitionSet};
use proptest::prelude::*;

pub fn dr() -> ConnectivePair {
    let left = PartitionSet::from_partitions(
        4,
        [Partition::new(4, &[vec![1, 2], vec![3, 4]]).unwrap(), Partition::new(4, &[vec![1, 3], vec![2, 4]]).unwrap()],
    )
    .unwrap();
    closure(&left, Mode::Unpolarized).unwrap()
}

/// Bell numbers from the recurrence `B(n+1) = Σ C(n,k) B(k)`.
pub fn bell(n: usize) -> u64 {
    let mut b = vec![1u64];
    for m in 0..n {
        let mut next = 0u64;
        let mut c = 1u64;
        for (k, bk) in b.iter().enumerate() {
            next += c * bk;
            c = c * (m - k) as u64 / (k as u64 + 1);
        }
        b.push(next);
    }
    b[n]
}

/// Union-find tree test on the meeting graph built from class lists.
pub fn tree_oracle(p: &Partition, q: &Partition, polarized: bool) -> bool {
    let n = p.arity();
    let (pc, qc) = (p.classes(), q.classes());
    let vertices = pc.len() + qc.len();
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = 0;
    for e in 1..=n {
        let (cp, cq) = (p.is_checked(e), q.is_checked(e));
        if polarized && cp == cq {
            return false;
        }
        let a = pc.iter().position(|c| c.contains(&e)).unwrap();
        let b = pc.len() + qc.iter().position(|c| c.contains(&e)).unwrap();
        edges += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    edges + 1 == vertices
}

/// Arbitrary labelling of `n` elements; classes are its fibres.
pub fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels, 0).unwrap())
}

pub fn arb_polarized_partition(n: usize) -> impl Strategy<Value = Partition> {
    (arb_partition(n), 0u32..(1 << n)).prop_map(|(p, checked)| p.with_checked(checked))
}

fn build(atoms: &[Formula], choices: &[(bool, usize)], next: &mut usize) -> Formula {
    if atoms.len() == 1 {
        return atoms[0].clone();
    }
    let (tensor, cut) = choices[*next % choices.len()];
    *next += 1;
    let at = 1 + cut % (atoms.len() - 1);
    let l = build(&atoms[..at], choices, next);
    let r = build(&atoms[at..], choices, next);
    if tensor {
        Formula::Tensor(vec![l, r])
    } else {
        Formula::Par(vec![l, r])
    }
}

/// Binary MLL formula over `a1..an` in random order and random shape.
pub fn arb_mll(n: usize) -> impl Strategy<Value = Formula> {
    (
        Just((1..=n).map(Formula::atom).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec((any::<bool>(), any::<usize>()), n),
    )
        .prop_map(|(atoms, choices)| build(&atoms, &choices, &mut 0))
}

#[derive(Clone)]
enum Bin {
    Atom(u32),
    Tensor(Box<Bin>, Box<Bin>),
    Par(Box<Bin>, Box<Bin>),
}

fn binarize(f: &Formula) -> Bin {
    match f {
        Formula::Atom(a) => match a.name {
            AtomName::Arg(i) => Bin::Atom(1 << (i - 1)),
            AtomName::Aux(_) => panic!("aux atom"),
        },
        Formula::Tensor(cs) | Formula::Par(cs) => {
            let tensor = matches!(f, Formula::Tensor(_));
            let mut it = cs.iter().map(binarize);
            let first = it.next().unwrap();
            it.fold(first, |acc, c| {
                if tensor {
                    Bin::Tensor(Box::new(acc), Box::new(c))
                } else {
                    Bin::Par(Box::new(acc), Box::new(c))
                }
            })
        }
        _ => panic!("not MLL: {f}"),
    }
}

fn search(seq: &[Bin]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    if seq.iter().all(|b| matches!(b, Bin::Atom(_))) {
        let mask = seq.iter().fold(0, |m, b| if let Bin::Atom(x) = b { m | x } else { m });
        out.insert(vec![mask]);
        return out;
    }
    for i in 0..seq.len() {
        let rest: Vec<Bin> = seq.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
        match &seq[i] {
            Bin::Atom(_) => {}
            Bin::Par(a, b) => {
                let mut next = rest.clone();
                next.push((**a).clone());
                next.push((**b).clone());
                out.extend(search(&next));
            }
            Bin::Tensor(a, b) => {
                for split in 0u32..(1 << rest.len()) {
                    let mut l = vec![(**a).clone()];
                    let mut r = vec![(**b).clone()];
                    for (k, x) in rest.iter().enumerate() {
                        if split >> k & 1 == 1 {
                            l.push(x.clone());
                        } else {
                            r.push(x.clone());
                        }
                    }
                    let (ls, rs) = (search(&l), search(&r));
                    for x in &ls {
                        for y in &rs {
                            let mut classes: Vec<u32> = x.iter().chain(y).copied().collect();
                            classes.sort_unstable();
                            out.insert(classes);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Premise groupings of `⊢ f` by naive backward search: binary rules,
/// every rule in every order, no memo.
pub fn oracle_behavior(f: &Formula) -> BTreeSet<Vec<u32>> {
    search(&[binarize(f)])
}

/// Number of MLL formulas on `n` labelled atoms up to associativity and
/// commutativity: for `n ≥ 2` half are tensors, and a tensor is a set of at
/// least two non-tensor parts.
pub fn mll_formula_count(n: usize) -> u64 {
    let binom = |n: usize, k: usize| -> u64 { (0..k).fold(1u64, |c, i| c * (n - i) as u64 / (i as u64 + 1)) };
    // rooted[m]: formulas with a fixed root connective (atom for m = 1).
    // any[m]: sets of parts of total size m with at least one part.
    let mut rooted = vec![0u64; n + 1];
    let mut any = vec![0u64; n + 1];
    any[0] = 1;
    for m in 1..=n {
        let split: u64 = (1..m).map(|s| binom(m - 1, s - 1) * rooted[s] * any[m - s]).sum();
        rooted[m] = if m == 1 { 1 } else { split };
        any[m] = split + rooted[m];
    }
    if n == 1 {
        1
    } else {
        2 * rooted[n]
    }
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
}
