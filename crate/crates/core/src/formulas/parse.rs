//! ASCII formula grammar.
//!
//! ```text
//! formula := level EOF
//! level   := unary (op unary)*        -- a single operator kind per level
//! op      := '*' | '|' | '-o' | '+' | '&'
//! unary   := '!' unary | '?' unary | '~' atom | atom | '(' level ')'
//! atom    := 'a' digits | identifier
//! ```
//!
//! `*` and `|` build n-ary nodes, `-o` associates to the right, and `+`/`&`
//! are accepted only outside parentheses.

use super::{Atom, AtomName, Formula, FormulaError, Language};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Op(BinOp),
    Bang,
    WhyNot,
    Tilde,
    Ident(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Tensor,
    Par,
    Lollipop,
    Plus,
    With,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Tensor => "*",
            BinOp::Par => "|",
            BinOp::Lollipop => "-o",
            BinOp::Plus => "+",
            BinOp::With => "&",
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Token::Open,
            ')' => Token::Close,
            '*' => Token::Op(BinOp::Tensor),
            '|' => Token::Op(BinOp::Par),
            '+' => Token::Op(BinOp::Plus),
            '&' => Token::Op(BinOp::With),
            '!' => Token::Bang,
            '?' => Token::WhyNot,
            '~' => Token::Tilde,
            '-' if chars.get(i + 1) == Some(&'o') => {
                i += 1;
                Token::Op(BinOp::Lollipop)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        };
        out.push((start, token));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn level(&mut self, depth: usize) -> Result<Formula, FormulaError> {
        let mut operands = vec![self.unary(depth)?];
        let mut op: Option<BinOp> = None;
        while let Some(Token::Op(next)) = self.peek().cloned() {
            let at = self.offset();
            if let Some(prev) = op {
                if prev != next {
                    return Err(syntax(
                        at,
                        format!("mixed operators '{}' and '{}' need parentheses", prev.symbol(), next.symbol()),
                    ));
                }
            }
            if matches!(next, BinOp::Plus | BinOp::With) && depth > 0 {
                return Err(syntax(at, format!("'{}' is only allowed at the top level", next.symbol())));
            }
            op = Some(next);
            self.pos += 1;
            operands.push(self.unary(depth)?);
        }
        Ok(match op {
            None => operands.pop().unwrap(),
            Some(BinOp::Tensor) => Formula::Tensor(operands),
            Some(BinOp::Par) => Formula::Par(operands),
            Some(BinOp::Plus) => Formula::Plus(operands),
            Some(BinOp::With) => Formula::With(operands),
            Some(BinOp::Lollipop) => {
                let mut acc = operands.pop().unwrap();
                while let Some(prev) = operands.pop() {
                    acc = Formula::lollipop(prev, acc);
                }
                acc
            }
        })
    }

    fn unary(&mut self, depth: usize) -> Result<Formula, FormulaError> {
        let at = self.offset();
        let token = self.peek().cloned().ok_or_else(|| syntax(at, "unexpected end of input"))?;
        self.pos += 1;
        match token {
            Token::Bang => Ok(Formula::bang(self.unary(depth)?)),
            Token::WhyNot => Ok(Formula::why_not(self.unary(depth)?)),
            Token::Tilde => {
                let at = self.offset();
                match self.peek().cloned() {
                    Some(Token::Ident(name)) => {
                        self.pos += 1;
                        let mut atom = atom(&name, at)?;
                        atom.negated = true;
                        Ok(Formula::Atom(atom))
                    }
                    _ => Err(syntax(at, "'~' applies to atoms only")),
                }
            }
            Token::Ident(name) => Ok(Formula::Atom(atom(&name, at)?)),
            Token::Open => {
                let inner = self.level(depth + 1)?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.offset(), "expected ')'")),
                }
            }
            Token::Close => Err(syntax(at, "unexpected ')'")),
            Token::Op(op) => Err(syntax(at, format!("unexpected operator '{}'", op.symbol()))),
        }
    }
}

fn atom(name: &str, at: usize) -> Result<Atom, FormulaError> {
    let digits = name.strip_prefix('a').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
    let name = match digits {
        Some(d) => {
            let index: usize = d.parse().map_err(|_| syntax(at, "atom index too large"))?;
            if index == 0 {
                return Err(syntax(at, "atom indices start at 1"));
            }
            AtomName::Arg(index)
        }
        None => AtomName::Aux(name.to_string()),
    };
    Ok(Atom { name, negated: false })
}

/// Parses `text` and checks it against `language`: every constructor must
/// belong to the fragment and argument atoms must be exactly `a1..an`,
/// each once.
pub fn parse(text: &str, language: Language) -> Result<Formula, FormulaError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.chars().count() };
    let f = parser.level(0)?;
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.offset(), "unexpected trailing input"));
    }
    f.check_language(language)?;
    f.check_linear()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        let f = parse("(a1|a2)*(a3|a4)", Language::Mll).unwrap();
        assert_eq!(
            f,
            Formula::tensor(vec![
                Formula::par(vec![Formula::atom(1), Formula::atom(2)]),
                Formula::par(vec![Formula::atom(3), Formula::atom(4)]),
            ])
        );
        let g = parse("(a1*a2)|a3", Language::Mll).unwrap();
        assert_eq!(g, Formula::par(vec![Formula::tensor(vec![Formula::atom(1), Formula::atom(2)]), Formula::atom(3)]));
    }

    #[test]
    fn linearity_errors() {
        assert_eq!(parse("a1*a1", Language::Mll), Err(FormulaError::RepeatedAtom(1)));
        assert_eq!(parse("a1*a3", Language::Mll), Err(FormulaError::MissingAtom(2, 3)));
    }

    #[test]
    fn mixing_requires_parentheses() {
        let err = parse("a1*a2|a3", Language::Mll).unwrap_err();
        assert!(matches!(err, FormulaError::Syntax { position: 5, .. }), "{err}");
        assert!(parse("a1*a2 -o a3", Language::Imll).is_err());
        assert!(parse("(a1*a2) -o a3", Language::Imll).is_ok());
    }

    #[test]
    fn lollipop_is_right_associative() {
        let f = parse("a1 -o a2 -o a3", Language::Imll).unwrap();
        assert_eq!(f, Formula::lollipop(Formula::atom(1), Formula::lollipop(Formula::atom(2), Formula::atom(3))));
    }

    #[test]
    fn additives_only_at_top() {
        assert!(parse("(a1|a2) + (a1*a2)", Language::Mall).is_ok());
        assert!(parse("((a1|a2) + (a1*a2))", Language::Mall).is_err());
        assert_eq!(parse("(a1|a2) + (a1*a3)", Language::Mall), Err(FormulaError::MissingAtom(2, 3)));
        assert!(matches!(
            parse("a1 + a1", Language::Mll),
            Err(FormulaError::NotInLanguage { construct: "additive", .. })
        ));
    }

    #[test]
    fn language_gates() {
        assert!(parse("!a1", Language::Mll).is_err());
        assert!(parse("(a1|?p)*a2", Language::Emll).is_ok());
        assert!(parse("a1|a2", Language::Imll).is_err());
        assert!(parse("~a1 -o a2", Language::Imll).is_err());
        assert!(parse("~(a1*a2)", Language::Mll).is_err());
    }

    #[test]
    fn syntax_errors_report_positions() {
        assert!(matches!(parse("(a1*a2", Language::Mll), Err(FormulaError::Syntax { position: 6, .. })));
        assert!(matches!(parse("a1 $ a2", Language::Mll), Err(FormulaError::Syntax { position: 3, .. })));
        assert!(matches!(parse("a0", Language::Mll), Err(FormulaError::Syntax { .. })));
    }
}
