use std::fmt;

use super::{Atom, AtomName, Formula};

fn is_binary(f: &Formula) -> bool {
    !matches!(f, Formula::Atom(_) | Formula::Bang(_) | Formula::WhyNot(_))
}

struct Symbols {
    tensor: &'static str,
    par: &'static str,
    plus: &'static str,
    with: &'static str,
    lollipop: &'static str,
    bang: &'static str,
    why_not: &'static str,
    neg: &'static str,
}

const ASCII: Symbols =
    Symbols { tensor: "*", par: "|", plus: " + ", with: " & ", lollipop: " -o ", bang: "!", why_not: "?", neg: "~" };

const LATEX: Symbols = Symbols {
    tensor: " \\otimes ",
    par: " \\parr ",
    plus: " \\oplus ",
    with: " \\with ",
    lollipop: " \\multimap ",
    bang: "!",
    why_not: "?",
    neg: "{\\sim}",
};

fn atom_text(a: &Atom, sym: &Symbols, latex: bool) -> String {
    let neg = if a.negated { sym.neg } else { "" };
    match (&a.name, latex) {
        (AtomName::Arg(i), false) => format!("{neg}a{i}"),
        (AtomName::Arg(i), true) => format!("{neg}A_{{{i}}}"),
        (AtomName::Aux(s), _) => format!("{neg}{s}"),
    }
}

fn write_formula(out: &mut String, f: &Formula, sym: &Symbols, latex: bool) {
    let child = |out: &mut String, c: &Formula, wrap: bool| {
        if wrap {
            out.push('(');
            write_formula(out, c, sym, latex);
            out.push(')');
        } else {
            write_formula(out, c, sym, latex);
        }
    };
    let join = |out: &mut String, cs: &[Formula], op: &str| {
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                out.push_str(op);
            }
            child(out, c, is_binary(c));
        }
    };
    match f {
        Formula::Atom(a) => out.push_str(&atom_text(a, sym, latex)),
        Formula::Tensor(cs) => join(out, cs, sym.tensor),
        Formula::Par(cs) => join(out, cs, sym.par),
        Formula::Plus(cs) => join(out, cs, sym.plus),
        Formula::With(cs) => join(out, cs, sym.with),
        Formula::Lollipop(a, b) => {
            child(out, a, is_binary(a));
            out.push_str(sym.lollipop);
            child(out, b, is_binary(b) && !matches!(**b, Formula::Lollipop(..)));
        }
        Formula::Bang(a) => {
            out.push_str(sym.bang);
            child(out, a, is_binary(a));
        }
        Formula::WhyNot(a) => {
            out.push_str(sym.why_not);
            child(out, a, is_binary(a));
        }
    }
}

impl Formula {
    /// LaTeX math-mode source (`\parr` and `\with` from cmll).
    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        write_formula(&mut s, self, &LATEX, true);
        s
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self, &ASCII, false);
        f.write_str(&s)
    }
}
