use std::fmt::Write;

use crate::decomposition::{ProofTree, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProofFormat {
    Text,
    Latex,
}

pub fn render_proof(t: &ProofTree, format: ProofFormat) -> String {
    match format {
        ProofFormat::Text => render_text(t),
        ProofFormat::Latex => render_latex(t),
    }
}

const GAP: usize = 3;

/// A rendered subtree: lines top to bottom, all padded to `width`.
struct Block {
    lines: Vec<String>,
    width: usize,
    /// Columns spanned by the bottom sequent.
    base: (usize, usize),
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

fn indent(lines: &mut [String], by: usize) {
    for l in lines.iter_mut() {
        l.insert_str(0, &" ".repeat(by));
    }
}

fn beside(blocks: Vec<Block>) -> Block {
    let height = blocks.iter().map(|b| b.lines.len()).max().unwrap_or(0);
    let mut lines = vec![String::new(); height];
    let mut width = 0;
    let mut base = (usize::MAX, 0);
    for (i, b) in blocks.into_iter().enumerate() {
        if i > 0 {
            width += GAP;
            for l in lines.iter_mut() {
                l.push_str(&" ".repeat(GAP));
            }
        }
        let offset = height - b.lines.len();
        for (row, line) in lines.iter_mut().enumerate() {
            match row.checked_sub(offset) {
                Some(r) => line.push_str(&b.lines[r]),
                None => line.push_str(&" ".repeat(b.width)),
            }
        }
        base = (base.0.min(width + b.base.0), width + b.base.1);
        width += b.width;
    }
    Block { lines, width, base }
}

fn text_label(t: &ProofTree) -> String {
    let mut label = t.rule.label();
    if let Some(note) = &t.annotation {
        if !label.is_empty() {
            label.push_str("  ");
        }
        label.push_str(&format!("[{note}]"));
    }
    label
}

fn text_block(t: &ProofTree) -> Block {
    let conclusion = t.conclusion.to_text();
    let len = conclusion.chars().count();
    if t.premises.is_empty() {
        return Block { lines: vec![conclusion], width: len, base: (0, len) };
    }
    let mut above = beside(t.premises.iter().map(text_block).collect());
    let span = above.base.1 - above.base.0;
    let overhang = len.saturating_sub(span) / 2;
    // Shift the premises right when the conclusion overhangs on the left.
    let shift = overhang.saturating_sub(above.base.0);
    indent(&mut above.lines, shift);
    let bar_from = above.base.0 + shift - overhang;
    let bar_len = span.max(len);
    let conclusion_at = bar_from + (bar_len - len) / 2;
    let rule_char = if t.rule == Rule::Derived { "=" } else { "-" };
    let label = text_label(t);
    let mut bar = format!("{}{}", " ".repeat(bar_from), rule_char.repeat(bar_len));
    if !label.is_empty() {
        bar.push(' ');
        bar.push_str(&label);
    }
    let mut lines = above.lines;
    lines.push(bar);
    lines.push(format!("{}{conclusion}", " ".repeat(conclusion_at)));
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let lines = lines.iter().map(|l| pad(l, width)).collect();
    Block { lines, width, base: (conclusion_at, conclusion_at + len) }
}

/// Gentzen layout: premises above a rule line, conclusion below.
fn render_text(t: &ProofTree) -> String {
    let block = text_block(t);
    let mut out = String::new();
    for line in &block.lines {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const INFERENCES: [&str; 5] = ["UnaryInfC", "BinaryInfC", "TrinaryInfC", "QuaternaryInfC", "QuinaryInfC"];

fn latex_node(t: &ProofTree, out: &mut String) {
    let conclusion = t.conclusion.to_latex();
    if t.premises.is_empty() {
        let _ = writeln!(out, "\\AxiomC{{${conclusion}$}}");
        return;
    }
    // bussproofs stops at five premises; the rest are elided.
    let shown = t.premises.len().min(INFERENCES.len());
    for p in &t.premises[..shown - usize::from(t.premises.len() > shown)] {
        latex_node(p, out);
    }
    if t.premises.len() > shown {
        out.push_str("\\AxiomC{$\\cdots$}\n");
    }
    if let Some(note) = &t.annotation {
        let _ = writeln!(out, "% {note}");
    }
    let mut label = t.rule.latex_label();
    if t.annotation.is_some() {
        label.push_str(" (stuck)");
    }
    if !label.is_empty() {
        let _ = writeln!(out, "\\RightLabel{{\\scriptsize {label}}}");
    }
    if t.rule == Rule::Derived {
        out.push_str("\\doubleLine\n");
    }
    let _ = writeln!(out, "\\{}{{${conclusion}$}}", INFERENCES[shown - 1]);
}

/// bussproofs source.
fn render_latex(t: &ProofTree) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    latex_node(t, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose_mall, Sequent};
    use crate::formulas::Formula;
    use crate::partitions::{Partition, PartitionSet};

    fn dr_proofs() -> Vec<ProofTree> {
        let left = PartitionSet::from_partitions(
            4,
            [
                Partition::new(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
                Partition::new(4, &[vec![1, 3], vec![2, 4]]).unwrap(),
            ],
        )
        .unwrap();
        decompose_mall(&left).unwrap().proofs
    }

    #[test]
    fn leaf_is_one_line() {
        let t = ProofTree::premise(Sequent::one_sided(vec![Formula::atom(1)], Vec::new()));
        assert_eq!(render_proof(&t, ProofFormat::Text), "|- a1\n");
    }

    #[test]
    fn additive_step_is_last() {
        let text = render_proof(&dr_proofs()[0], ProofFormat::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0].trim(), "|- a1, a2, G1       |- a3, a4, G2");
        assert!(lines[5].ends_with("- plus1"));
        assert_eq!(lines[6].trim(), "|- ((a1|a2)*(a3|a4)) + ((a1|a3)*(a2|a4)), G1, G2");
        assert!(lines[3].ends_with("- tensor"));
    }

    #[test]
    fn latex_shape() {
        let tex = render_proof(&dr_proofs()[1], ProofFormat::Latex);
        assert_eq!(tex.matches("\\AxiomC").count(), 2);
        assert_eq!(tex.matches("\\UnaryInfC").count(), 3);
        assert_eq!(tex.matches("\\BinaryInfC").count(), 1);
        assert!(tex.contains("\\oplus_{2}"));
        assert_eq!(tex, render_proof(&dr_proofs()[1], ProofFormat::Latex));
    }
}
