use gmc::exponentials::{emll_candidates, emll_premise_sets, strip_whynot, ContextShape, EmllSearchBounds};
use gmc::formulas::{behavior_masks, enumerate_formulas, AtomName, Formula};

fn wide() -> EmllSearchBounds {
    EmllSearchBounds { max_weakenings: 12, ..Default::default() }
}

fn has_bang(f: &Formula) -> bool {
    matches!(f, Formula::Bang(_)) || f.children().into_iter().any(has_bang)
}

/// No argument atom outside modalities.
fn void(f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => matches!(a.name, AtomName::Aux(_)),
        Formula::Bang(_) | Formula::WhyNot(_) => true,
        _ => f.children().into_iter().all(void),
    }
}

fn void_tensor_operand(f: &Formula) -> bool {
    match f {
        Formula::Bang(_) | Formula::WhyNot(_) | Formula::Atom(_) => false,
        Formula::Tensor(cs) if cs.iter().any(void) => true,
        _ => f.children().into_iter().any(void_tensor_operand),
    }
}

#[test]
fn modal_free_formulas_are_conservative() {
    for n in 1..=4 {
        for f in enumerate_formulas(n, 6).unwrap() {
            let s = emll_premise_sets(&f, ContextShape::Arbitrary, &EmllSearchBounds::default()).unwrap();
            assert!(!s.bound_hit);
            assert!(s.groupings.iter().all(|g| !g.modal && !g.has_empty_premise()), "{f}");
            assert_eq!(s.all_classes(), behavior_masks(&f).unwrap(), "{f}");
        }
    }
}

#[test]
fn outer_bang_is_blocked_by_an_arbitrary_context() {
    let mut seen = 0;
    for f in emll_candidates(3, 8, 2).into_iter().filter(|f| matches!(f, Formula::Bang(_))) {
        seen += 1;
        let s = emll_premise_sets(&f, ContextShape::Arbitrary, &EmllSearchBounds::default()).unwrap();
        assert!(s.groupings.is_empty(), "{f}");
    }
    assert!(seen > 0);
}

#[test]
fn stripping_predicts_groupings_when_no_operand_is_void() {
    let mut seen = 0;
    for f in emll_candidates(3, 9, 2) {
        if has_bang(&f) || void(&f) || void_tensor_operand(&f) {
            continue;
        }
        seen += 1;
        let s = emll_premise_sets(&f, ContextShape::Arbitrary, &wide()).unwrap();
        assert!(!s.bound_hit, "{f}");
        let stripped = strip_whynot(&f).unwrap().expect("an argument atom survives");
        assert_eq!(s.unflagged_classes(), behavior_masks(&stripped).unwrap(), "{f} strips to {stripped}");
    }
    assert!(seen > 0);
}

#[test]
fn void_tensor_operand_forces_an_empty_premise() {
    let mut seen = 0;
    for f in emll_candidates(3, 9, 2) {
        if has_bang(&f) || !void_tensor_operand(&f) {
            continue;
        }
        seen += 1;
        let s = emll_premise_sets(&f, ContextShape::Arbitrary, &wide()).unwrap();
        assert!(s.groupings.iter().any(|g| g.has_empty_premise()), "{f}");
    }
    assert!(seen > 0);
}
