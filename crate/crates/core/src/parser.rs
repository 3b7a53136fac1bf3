//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Tokens: `top bot emp mbot /\ \/ -> * -* *- mnot mor rslash ; -; ;- <> []
//! ! exists forall |-> = + -` plus identifiers, integer constants, parens and
//! `.` after a quantified variable. Precedence, tightest first: unary
//! connectives; `*` and `;` (left-associative); `/\`; `\/` and `mor`;
//! implications (right-associative). Quantifiers scope as far right as
//! possible.

use crate::formula::{Formula, Sequent, Term};
use crate::logic::Logic;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Top,
    Bot,
    Emp,
    MBot,
    And,
    Or,
    Imp,
    Star,
    Wand,
    Dnaw,
    MNot,
    MOr,
    RSlash,
    Seq,
    RSeq,
    LSeq,
    Diamond,
    BoxM,
    Bang,
    Exists,
    Forall,
    PointsTo,
    Eq,
    Plus,
    Minus,
    LParen,
    RParen,
    Dot,
    Turnstile,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Int(n) => return write!(f, "integer `{n}`"),
            Tok::Top => "top",
            Tok::Bot => "bot",
            Tok::Emp => "emp",
            Tok::MBot => "mbot",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Imp => "->",
            Tok::Star => "*",
            Tok::Wand => "-*",
            Tok::Dnaw => "*-",
            Tok::MNot => "mnot",
            Tok::MOr => "mor",
            Tok::RSlash => "rslash",
            Tok::Seq => ";",
            Tok::RSeq => "-;",
            Tok::LSeq => ";-",
            Tok::Diamond => "<>",
            Tok::BoxM => "[]",
            Tok::Bang => "!",
            Tok::Exists => "exists",
            Tok::Forall => "forall",
            Tok::PointsTo => "|->",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Dot => ".",
            Tok::Turnstile => "|-",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: unexpected character `{ch}`")]
    BadChar { pos: usize, ch: char },
    #[error("syntax error at byte {pos}: unexpected end of input")]
    UnexpectedEof { pos: usize },
    #[error("syntax error at byte {pos}: unexpected {found}{expected}")]
    Unexpected { pos: usize, found: String, expected: String },
    #[error("{0}")]
    Signature(#[from] crate::formula::SignatureError),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(Tok, usize)>,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_cont(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Lexer<'a> {
    fn lex(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0, toks: Vec::new() };
        while lx.pos < lx.src.len() {
            let c = lx.src[lx.pos];
            let start = lx.pos;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    lx.pos += 1;
                }
                b'(' => lx.push(Tok::LParen, 1),
                b')' => lx.push(Tok::RParen, 1),
                b'.' => lx.push(Tok::Dot, 1),
                b'+' => lx.push(Tok::Plus, 1),
                b'=' => lx.push(Tok::Eq, 1),
                b'!' => lx.push(Tok::Bang, 1),
                b'/' if lx.peek(1) == Some(b'\\') => lx.push(Tok::And, 2),
                b'\\' if lx.peek(1) == Some(b'/') => lx.push(Tok::Or, 2),
                b'-' => match lx.peek(1) {
                    Some(b'>') => lx.push(Tok::Imp, 2),
                    Some(b'*') => lx.push(Tok::Wand, 2),
                    Some(b';') => lx.push(Tok::RSeq, 2),
                    _ => lx.push(Tok::Minus, 1),
                },
                b'*' => match lx.peek(1) {
                    Some(b'-') => lx.push(Tok::Dnaw, 2),
                    _ => lx.push(Tok::Star, 1),
                },
                b';' => match lx.peek(1) {
                    Some(b'-') => lx.push(Tok::LSeq, 2),
                    _ => lx.push(Tok::Seq, 1),
                },
                b'<' if lx.peek(1) == Some(b'>') => lx.push(Tok::Diamond, 2),
                b'[' if lx.peek(1) == Some(b']') => lx.push(Tok::BoxM, 2),
                b'|' => match (lx.peek(1), lx.peek(2)) {
                    (Some(b'-'), Some(b'>')) => lx.push(Tok::PointsTo, 3),
                    (Some(b'-'), _) => lx.push(Tok::Turnstile, 2),
                    _ => return Err(ParseError::BadChar { pos: start, ch: '|' }),
                },
                b'0'..=b'9' => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let n: i64 = src[lx.pos..end].parse().expect("digits");
                    lx.toks.push((Tok::Int(n), start));
                    lx.pos = end;
                }
                c if is_ident_start(c) => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && is_ident_cont(lx.src[end]) {
                        end += 1;
                    }
                    let word = &src[lx.pos..end];
                    let tok = match word {
                        "top" => Tok::Top,
                        "bot" => Tok::Bot,
                        "emp" => Tok::Emp,
                        "mbot" => Tok::MBot,
                        "mnot" => Tok::MNot,
                        "mor" => Tok::MOr,
                        "rslash" => Tok::RSlash,
                        "exists" => Tok::Exists,
                        "forall" => Tok::Forall,
                        _ => Tok::Ident(word.to_string()),
                    };
                    lx.toks.push((tok, start));
                    lx.pos = end;
                }
                other => {
                    return Err(ParseError::BadChar { pos: start, ch: other as char });
                }
            }
        }
        Ok(lx.toks)
    }

    fn peek(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn push(&mut self, t: Tok, len: usize) {
        self.toks.push((t, self.pos));
        self.pos += len;
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.idx += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::Unexpected {
                pos: self.pos(),
                found: t.to_string(),
                expected: format!(", expected {want}"),
            }),
            None => Err(ParseError::UnexpectedEof { pos: self.end }),
        }
    }

    // formula := quantified | implication
    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Exists) | Some(Tok::Forall) => {
                let forall = matches!(self.peek(), Some(Tok::Forall));
                self.idx += 1;
                let v = match self.bump() {
                    Some(Tok::Ident(v)) => v,
                    Some(t) => {
                        return Err(ParseError::Unexpected {
                            pos: self.pos(),
                            found: t.to_string(),
                            expected: ", expected a variable".into(),
                        })
                    }
                    None => return Err(ParseError::UnexpectedEof { pos: self.end }),
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if forall { Formula::forall(&v, body) } else { Formula::exists(&v, body) })
            }
            _ => self.implication(),
        }
    }

    // right-associative implication family
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        let op = match self.peek() {
            Some(Tok::Imp) => Formula::imp as fn(Formula, Formula) -> Formula,
            Some(Tok::Wand) => Formula::wand,
            Some(Tok::Dnaw) => Formula::dnaw,
            Some(Tok::RSeq) => Formula::rseq,
            Some(Tok::LSeq) => Formula::lseq,
            Some(Tok::RSlash) => Formula::rslash,
            _ => return Ok(lhs),
        };
        self.idx += 1;
        let rhs = self.formula_noquant()?;
        Ok(op(lhs, rhs))
    }

    // implication right operand: implications nest right, quantifiers allowed
    fn formula_noquant(&mut self) -> Result<Formula, ParseError> {
        self.formula()
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        loop {
            match self.peek() {
                Some(Tok::Or) => {
                    self.idx += 1;
                    let rhs = self.conjunction()?;
                    lhs = Formula::or(lhs, rhs);
                }
                Some(Tok::MOr) => {
                    self.idx += 1;
                    let rhs = self.conjunction()?;
                    lhs = Formula::mor(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.multiplicative()?;
        while matches!(self.peek(), Some(Tok::And)) {
            self.idx += 1;
            let rhs = self.multiplicative()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.idx += 1;
                    let rhs = self.unary()?;
                    lhs = Formula::star(lhs, rhs);
                }
                Some(Tok::Seq) => {
                    self.idx += 1;
                    let rhs = self.unary()?;
                    lhs = Formula::seq(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.idx += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::MNot) => {
                self.idx += 1;
                Ok(Formula::mneg(self.unary()?))
            }
            Some(Tok::Diamond) => {
                self.idx += 1;
                Ok(Formula::diamond(self.unary()?))
            }
            Some(Tok::BoxM) => {
                self.idx += 1;
                Ok(Formula::boxm(self.unary()?))
            }
            _ => self.atomic(),
        }
    }

    fn atomic(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Top) => {
                self.idx += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.idx += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Emp) => {
                self.idx += 1;
                Ok(Formula::MUnit)
            }
            Some(Tok::MBot) => {
                self.idx += 1;
                Ok(Formula::MBot)
            }
            Some(Tok::LParen) => {
                // could be a parenthesised formula or a parenthesised term
                // feeding `=` / `|->`; try term first when it pans out.
                if let Some(f) = self.try_term_atom()? {
                    return Ok(f);
                }
                self.expect(Tok::LParen)?;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                if let Some(f) = self.try_term_atom()? {
                    return Ok(f);
                }
                self.idx += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::Int(_)) => match self.try_term_atom()? {
                Some(f) => Ok(f),
                None => Err(ParseError::Unexpected {
                    pos,
                    found: "integer".into(),
                    expected: ", expected `=` or `|->` after a term".into(),
                }),
            },
            Some(t) => Err(ParseError::Unexpected {
                pos,
                found: t.to_string(),
                expected: ", expected a formula".into(),
            }),
            None => Err(ParseError::UnexpectedEof { pos: self.end }),
        }
    }

    /// Attempt to parse `term (= | |->) term` from the current position.
    /// Restores the position and returns `None` if the lookahead does not
    /// reach `=`/`|->`.
    fn try_term_atom(&mut self) -> Result<Option<Formula>, ParseError> {
        let save = self.idx;
        let lhs = match self.term() {
            Ok(t) => t,
            Err(_) => {
                self.idx = save;
                return Ok(None);
            }
        };
        match self.peek() {
            Some(Tok::Eq) => {
                self.idx += 1;
                let rhs = self.term()?;
                Ok(Some(Formula::Eq(lhs, rhs)))
            }
            Some(Tok::PointsTo) => {
                self.idx += 1;
                let rhs = self.term()?;
                Ok(Some(Formula::PointsTo(lhs, rhs)))
            }
            _ => {
                self.idx = save;
                Ok(None)
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.term_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    let rhs = self.term_atom()?;
                    lhs = Term::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    let rhs = self.term_atom()?;
                    lhs = Term::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term_atom(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(v)) => Ok(Term::Var(v)),
            Some(Tok::Int(n)) => Ok(Term::Const(n)),
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => Err(ParseError::Unexpected {
                pos,
                found: t.to_string(),
                expected: ", expected a term".into(),
            }),
            None => Err(ParseError::UnexpectedEof { pos: self.end }),
        }
    }
}

fn parse_raw(text: &str) -> Result<(Parser, Formula), ParseError> {
    let toks = Lexer::lex(text)?;
    let mut p = Parser { toks, idx: 0, end: text.len() };
    let f = p.formula()?;
    Ok((p, f))
}

/// Parse a formula without signature checking (pointer-fragment formulas,
/// schema text, and so on).
pub fn parse_formula_any(text: &str) -> Result<Formula, ParseError> {
    let (p, f) = parse_raw(text)?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Unexpected {
            pos: p.pos(),
            found: t.to_string(),
            expected: ", expected end of input".into(),
        });
    }
    Ok(f)
}

/// Parse a formula and signature-check it against `logic`.
pub fn parse_formula(text: &str, logic: &Logic) -> Result<Formula, ParseError> {
    let f = parse_formula_any(text)?;
    crate::formula::check_signature(&f, logic)?;
    Ok(f)
}

/// Parse a pointer-fragment formula (no propositional atoms, `|->`/`=`
/// and quantifiers allowed).
pub fn parse_pointer_formula(text: &str) -> Result<Formula, ParseError> {
    let f = parse_formula_any(text)?;
    crate::formula::check_pointer_signature(&f)?;
    Ok(f)
}

/// Parse `phi |- psi`.
pub fn parse_sequent(text: &str, logic: &Logic) -> Result<Sequent, ParseError> {
    let (mut p, ante) = parse_raw(text)?;
    p.expect(Tok::Turnstile)?;
    let cons = p.formula()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Unexpected {
            pos: p.pos(),
            found: t.to_string(),
            expected: ", expected end of input".into(),
        });
    }
    let s = Sequent::new(ante, cons);
    s.check_signature(logic)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{atom, print_formula};
    use crate::logic::{Logic, LogicName};

    #[test]
    fn grammar_forced_shapes() {
        let bbi = Logic::new(LogicName::Bbi);
        let f = parse_formula("(p * q) -* r", &bbi).unwrap();
        assert_eq!(f, Formula::wand(Formula::star(atom("p"), atom("q")), atom("r")));

        // dnaw is not in the BBI signature
        let err = parse_formula("p *- q", &bbi).unwrap_err();
        assert!(err.to_string().contains("*-"), "{err}");
        assert!(err.to_string().contains("BBI"), "{err}");

        let cbi = Logic::new(LogicName::Cbi);
        assert_eq!(parse_formula("mnot emp", &cbi).unwrap(), Formula::mneg(Formula::MUnit));
    }

    #[test]
    fn precedence_reading() {
        let bbi = Logic::new(LogicName::Bbi);
        // * binds tighter than /\ tighter than \/ tighter than ->
        let f = parse_formula("p * q /\\ r \\/ s -> t", &bbi).unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::or(Formula::and(Formula::star(atom("p"), atom("q")), atom("r")), atom("s")),
                atom("t")
            )
        );
        // implications right-associative
        let g = parse_formula("p -> q -> r", &bbi).unwrap();
        assert_eq!(g, Formula::imp(atom("p"), Formula::imp(atom("q"), atom("r"))));
        // * left-associative
        let h = parse_formula("p * q * r", &bbi).unwrap();
        assert_eq!(h, Formula::star(Formula::star(atom("p"), atom("q")), atom("r")));
    }

    #[test]
    fn pointer_fragment() {
        let f = parse_pointer_formula("exists v. v |-> 5 * x = v").unwrap();
        assert_eq!(
            f,
            Formula::exists(
                "v",
                Formula::star(
                    Formula::PointsTo(Term::var("v"), Term::Const(5)),
                    Formula::Eq(Term::var("x"), Term::var("v"))
                )
            )
        );
        assert!(parse_pointer_formula("p /\\ q").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let ckbi = Logic::new(LogicName::Ckbi);
        for text in [
            "p ; q ; r -; s",
            "(p -; q) ; r",
            "top ; (p * q)",
            "p ;- q",
        ] {
            let f = parse_formula(text, &ckbi).unwrap();
            let printed = print_formula(&f);
            let again = parse_formula(&printed, &ckbi).unwrap();
            assert_eq!(f, again, "round trip through `{printed}`");
        }
    }

    #[test]
    fn sequent_parsing() {
        let bbi = Logic::new(LogicName::Bbi);
        let s = parse_sequent("p |- p * p", &bbi).unwrap();
        assert_eq!(s.antecedent, atom("p"));
        assert_eq!(s.consequent, Formula::star(atom("p"), atom("p")));
    }
}
