use std::fmt;

use serde::Serialize;

use crate::formulas::Formula;
use crate::partitions::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ContextSymbol {
    Gamma,
    Delta,
}

/// An opaque context placeholder `Γ_i` / `Δ_i`. Never instantiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Context {
    pub symbol: ContextSymbol,
    pub index: usize,
}

impl Context {
    pub fn gamma(index: usize) -> Self {
        Context { symbol: ContextSymbol::Gamma, index }
    }

    pub fn delta(index: usize) -> Self {
        Context { symbol: ContextSymbol::Delta, index }
    }

    fn text(&self) -> String {
        match self.symbol {
            ContextSymbol::Gamma => format!("G{}", self.index),
            ContextSymbol::Delta => format!("D{}", self.index),
        }
    }

    fn latex(&self) -> String {
        match self.symbol {
            ContextSymbol::Gamma => format!("\\Gamma_{{{}}}", self.index),
            ContextSymbol::Delta => format!("\\Delta_{{{}}}", self.index),
        }
    }
}

/// A sequent `Γ ⊢ Δ`; one-sided sequents have an empty antecedent.
/// Formulas are listed before contexts on each side.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub antecedent_contexts: Vec<Context>,
    pub succedent: Vec<Formula>,
    pub succedent_contexts: Vec<Context>,
}

impl Sequent {
    pub fn one_sided(formulas: Vec<Formula>, contexts: Vec<Context>) -> Self {
        Sequent { succedent: formulas, succedent_contexts: contexts, ..Default::default() }
    }

    pub fn two_sided(antecedent: Vec<Formula>, contexts: Vec<Context>, succedent: Vec<Formula>) -> Self {
        Sequent { antecedent, antecedent_contexts: contexts, succedent, succedent_contexts: Vec::new() }
    }

    fn side(formulas: &[Formula], contexts: &[Context], latex: bool) -> String {
        let mut items: Vec<String> =
            formulas.iter().map(|f| if latex { f.to_latex() } else { f.to_string() }).collect();
        items.extend(contexts.iter().map(|c| if latex { c.latex() } else { c.text() }));
        items.join(", ")
    }

    pub fn to_text(&self) -> String {
        let left = Self::side(&self.antecedent, &self.antecedent_contexts, false);
        let right = Self::side(&self.succedent, &self.succedent_contexts, false);
        match (left.is_empty(), right.is_empty()) {
            (true, true) => "|-".to_string(),
            (true, false) => format!("|- {right}"),
            (false, true) => format!("{left} |-"),
            (false, false) => format!("{left} |- {right}"),
        }
    }

    pub fn to_latex(&self) -> String {
        let left = Self::side(&self.antecedent, &self.antecedent_contexts, true);
        let right = Self::side(&self.succedent, &self.succedent_contexts, true);
        format!("{left} \\vdash {right}").trim().to_string()
    }

    /// Argument atoms of the principal formulas.
    pub fn arg_mask(&self) -> u32 {
        self.antecedent.iter().chain(&self.succedent).fold(0, |m, f| m | f.arg_mask())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Sequent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Open assumption: one premise of the connective's rule.
    Premise,
    Par,
    Tensor,
    Plus {
        index: usize,
        of: usize,
    },
    TensorLeft,
    TensorRight,
    LollipopRight,
    Weakening,
    Contraction,
    Promotion,
    Cut,
    /// Several steps collapsed into one, drawn with a double line.
    Derived,
}

impl Rule {
    /// Number of premises the rule takes; `None` when it varies.
    pub fn arity(self) -> Option<usize> {
        match self {
            Rule::Premise => Some(0),
            Rule::Tensor | Rule::TensorRight | Rule::Cut => Some(2),
            Rule::Derived => None,
            _ => Some(1),
        }
    }

    pub fn label(self) -> String {
        match self {
            Rule::Premise => String::new(),
            Rule::Par => "par".into(),
            Rule::Tensor => "tensor".into(),
            Rule::Plus { index, .. } => format!("plus{index}"),
            Rule::TensorLeft => "tensor-L".into(),
            Rule::TensorRight => "tensor-R".into(),
            Rule::LollipopRight => "lollipop-R".into(),
            Rule::Weakening => "?w".into(),
            Rule::Contraction => "?c".into(),
            Rule::Promotion => "K".into(),
            Rule::Cut => "cut".into(),
            Rule::Derived => String::new(),
        }
    }

    pub fn latex_label(self) -> String {
        match self {
            Rule::Premise | Rule::Derived => String::new(),
            Rule::Par => "$\\parr$".into(),
            Rule::Tensor => "$\\otimes$".into(),
            Rule::Plus { index, .. } => format!("$\\oplus_{{{index}}}$"),
            Rule::TensorLeft => "$\\otimes L$".into(),
            Rule::TensorRight => "$\\otimes R$".into(),
            Rule::LollipopRight => "$\\multimap R$".into(),
            Rule::Weakening => "$?w$".into(),
            Rule::Contraction => "$?c$".into(),
            Rule::Promotion => "$K$".into(),
            Rule::Cut => "Cut".into(),
        }
    }
}

/// A derivation with opaque contexts; leaves are open premises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

impl ProofTree {
    pub fn premise(conclusion: Sequent) -> Self {
        ProofTree { conclusion, rule: Rule::Premise, premises: Vec::new(), annotation: None }
    }

    pub fn step(conclusion: Sequent, rule: Rule, premises: Vec<ProofTree>) -> Self {
        ProofTree { conclusion, rule, premises, annotation: None }
    }

    pub fn annotated(mut self, note: impl Into<String>) -> Self {
        self.annotation = Some(note.into());
        self
    }

    /// Every node has as many premises as its rule takes.
    pub fn is_well_formed(&self) -> bool {
        self.rule.arity().is_none_or(|a| a == self.premises.len())
            && self.premises.iter().all(ProofTree::is_well_formed)
    }

    /// Open premises, left to right.
    pub fn leaves(&self) -> Vec<&Sequent> {
        if self.premises.is_empty() {
            return vec![&self.conclusion];
        }
        self.premises.iter().flat_map(ProofTree::leaves).collect()
    }

    /// Argument-atom masks of the open premises, sorted.
    pub fn premise_masks(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.leaves().into_iter().map(Sequent::arg_mask).collect();
        v.sort_unstable();
        v
    }

    /// The open premises read as a partition of `{1..n}`.
    pub fn premise_partition(&self, arity: usize) -> Option<Partition> {
        Partition::from_masks(arity, self.premise_masks(), 0).ok()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::depth).max().unwrap_or(0)
    }
}

fn contexts_of(trees: &[ProofTree]) -> Vec<Context> {
    let mut ctx: Vec<Context> = trees.iter().flat_map(|t| t.conclusion.succedent_contexts.iter().copied()).collect();
    ctx.sort();
    ctx
}

/// Bottom-up one-sided MLL derivation of `⊢ formulas, Γ…` whose open
/// premises are exactly the classes of `target` (premise for class `i`
/// carries context `Γ_{i+1}`). `None` when no such derivation exists.
pub fn derive_mll(formula: &Formula, target: &Partition) -> Option<ProofTree> {
    prove_one_sided(vec![formula.clone()], target)
}

fn is_union_of_classes(mask: u32, target: &Partition) -> bool {
    target.class_masks().iter().all(|&c| c & mask == 0 || c & mask == c)
}

fn prove_one_sided(formulas: Vec<Formula>, target: &Partition) -> Option<ProofTree> {
    let mask = formulas.iter().fold(0, |m, f| m | f.arg_mask());
    if !is_union_of_classes(mask, target) {
        return None;
    }
    // Par is invertible: apply it first.
    if let Some(i) = formulas.iter().position(|f| matches!(f, Formula::Par(_))) {
        let Formula::Par(children) = &formulas[i] else { unreachable!() };
        let mut premise = formulas.clone();
        premise.splice(i..=i, children.iter().cloned());
        let sub = prove_one_sided(premise, target)?;
        let conclusion = Sequent::one_sided(formulas, sub.conclusion.succedent_contexts.clone());
        return Some(ProofTree::step(conclusion, Rule::Par, vec![sub]));
    }
    let tensors: Vec<usize> =
        formulas.iter().enumerate().filter(|(_, f)| matches!(f, Formula::Tensor(_))).map(|(i, _)| i).collect();
    if tensors.is_empty() {
        if !formulas.iter().all(Formula::is_atom) {
            return None;
        }
        let class = target.class_masks().iter().position(|&c| c == mask)?;
        return Some(ProofTree::premise(Sequent::one_sided(formulas, vec![Context::gamma(class + 1)])));
    }
    for &i in &tensors {
        let Formula::Tensor(children) = &formulas[i] else { unreachable!() };
        let (head, rest) = (children[0].clone(), &children[1..]);
        let tail = if rest.len() == 1 { rest[0].clone() } else { Formula::Tensor(rest.to_vec()) };
        let others: Vec<Formula> =
            formulas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.clone()).collect();
        for split in 0u32..(1 << others.len()) {
            let mut left = vec![head.clone()];
            let mut right = vec![tail.clone()];
            for (k, f) in others.iter().enumerate() {
                if split >> k & 1 == 1 {
                    left.push(f.clone());
                } else {
                    right.push(f.clone());
                }
            }
            let Some(l) = prove_one_sided(left, target) else { continue };
            let Some(r) = prove_one_sided(right, target) else { continue };
            let ctx = contexts_of(&[l.clone(), r.clone()]);
            let conclusion = Sequent::one_sided(formulas.clone(), ctx);
            return Some(ProofTree::step(conclusion, Rule::Tensor, vec![l, r]));
        }
    }
    None
}
