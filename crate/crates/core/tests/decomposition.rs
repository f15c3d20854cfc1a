mod common;

use common::dr;
use gmc::decomposition::{
    census, check_demorgan_dual, decompose_mall, decompose_mll, stuck_cut, CensusMode, Rule, VerdictStatus,
};
use gmc::formulas::{behavior, negate, Formula};
use gmc::partitions::{ConnectivePair, PartitionSet};

fn connectives(n: usize) -> Vec<ConnectivePair> {
    census(n, CensusMode::Exhaustive)
        .unwrap()
        .entries
        .into_iter()
        .map(|e| ConnectivePair::new(e.left, e.right).unwrap())
        .collect()
}

#[test]
fn census_sizes_and_dr() {
    for n in 1..=3 {
        assert_eq!(census(n, CensusMode::Exhaustive).unwrap().non_decomposable, 0);
    }
    let r = census(4, CensusMode::Exhaustive).unwrap();
    assert!(r.non_decomposable > 0);
    assert!(r.non_decomposable_entries().any(|e| e.left == dr().left));
}

#[test]
fn witnesses_realize_the_left_side_and_dualize() {
    for n in 1..=4 {
        for c in connectives(n) {
            let v = decompose_mll(&c).unwrap();
            let dual = decompose_mll(&c.swapped()).unwrap();
            assert_eq!(v.is_decomposable(), dual.is_decomposable(), "{}", c.left);
            if let VerdictStatus::Decomposable { witness, proofs } = &v.status {
                assert_eq!(behavior(witness).unwrap(), c.left);
                assert_eq!(proofs.len(), c.left.len());
                assert_eq!(behavior(&negate(witness)).unwrap(), c.right);
            }
        }
    }
}

#[test]
fn additive_decomposition_is_total_and_faithful() {
    for n in 1..=4 {
        for c in connectives(n) {
            let d = decompose_mall(&c.left).unwrap();
            assert_eq!(d.proofs.len(), c.left.len());
            for (p, t) in c.left.iter().zip(&d.proofs) {
                assert!(t.is_well_formed());
                assert_eq!(t.premise_partition(n).as_ref(), Some(p));
                assert_eq!(t.leaves().len(), p.num_classes());
                for leaf in t.leaves() {
                    assert_eq!(leaf.succedent_contexts.len(), 1);
                }
            }
        }
    }
}

#[test]
fn demorgan_on_dr_and_on_negations() {
    let dr = dr();
    let left = decompose_mall(&dr.left).unwrap().formula;
    let right = gmc::formulas::complement_atoms(&decompose_mall(&dr.right).unwrap().formula);
    assert!(!check_demorgan_dual(&left, &right).unwrap());
    for n in 1..=4 {
        for f in gmc::formulas::enumerate_formulas(n, 6).unwrap() {
            assert!(check_demorgan_dual(&f, &negate(&f)).unwrap(), "{f}");
        }
    }
}

#[test]
fn stuck_cut_joins_both_sides() {
    let t = stuck_cut(&dr()).unwrap();
    assert_eq!(t.rule, Rule::Cut);
    assert!(t.is_well_formed());
    assert!(t.conclusion.succedent.is_empty());
    assert!(t.annotation.as_deref().unwrap_or_default().contains("not De Morgan duals"));
    assert!(matches!(&t.premises[0].conclusion.succedent[0], Formula::Plus(_)));
    assert!(matches!(&t.premises[1].conclusion.succedent[0], Formula::Plus(_)));
}

#[test]
fn single_partition_needs_no_plus() {
    let one = PartitionSet::from_signed(None, &[vec![vec![1, 2], vec![3]]]).unwrap();
    let d = decompose_mall(&one).unwrap();
    assert_eq!(d.formula.to_string(), "(a1|a2)*a3");
    assert_eq!(d.proofs[0].rule, Rule::Tensor);
}
