//! Recursive-descent parser for the formula surface grammar.
//!
//! Grammar: quantifiers `exists x.` / `forall x.` (binding to the end of the
//! enclosing formula), connectives `!`, `&`, `|`, `->`, `<->` with precedence
//! `! > & > | > -> > <->` and right-associative arrows; atoms `R(t)`,
//! `t1 = t2`, `def(t)`; terms are variables, declared constants, `f(t)` and
//! `f^-1(t)`.  `#` starts a line comment.

use super::{Formula, LogicError, Term, Vocabulary};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Eq,
    And,
    Or,
    Not,
    Arrow,
    DArrow,
    Inverse,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, LogicError> {
        let mut out = Vec::new();
        loop {
            while let Some(c) = self.peek() {
                if c == b'#' {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                } else if c.is_ascii_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                out.push((Tok::Eof, line, col));
                return Ok(out);
            };
            let tok = match c {
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b'=' => {
                    self.bump();
                    Tok::Eq
                }
                b'&' => {
                    self.bump();
                    Tok::And
                }
                b'|' => {
                    self.bump();
                    Tok::Or
                }
                b'!' => {
                    self.bump();
                    Tok::Not
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(err(line, col, "expected `->`"));
                    }
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                        if self.peek() == Some(b'>') {
                            self.bump();
                            Tok::DArrow
                        } else {
                            return Err(err(line, col, "expected `<->`"));
                        }
                    } else {
                        return Err(err(line, col, "expected `<->`"));
                    }
                }
                b'^' => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                        if self.peek() == Some(b'1') {
                            self.bump();
                            Tok::Inverse
                        } else {
                            return Err(err(line, col, "expected `^-1`"));
                        }
                    } else {
                        return Err(err(line, col, "expected `^-1`"));
                    }
                }
                c if c == b'_' || c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while let Some(c) = self.peek() {
                        if c == b'_' || c.is_ascii_alphanumeric() {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                }
                c => {
                    return Err(err(line, col, &format!("unexpected character `{}`", c as char)));
                }
            };
            out.push((tok, line, col));
        }
    }
}

fn err(line: usize, col: usize, msg: &str) -> LogicError {
    LogicError::Syntax { line, col, msg: msg.to_string() }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vocab: &'a Vocabulary,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.pos];
        (l, c)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), LogicError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let (l, c) = self.here();
            Err(err(l, c, &format!("expected {what}")))
        }
    }

    // <-> level; also the entry point for quantifier bodies.
    fn formula(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.implies()?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, LogicError> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Formula::or(parts))
    }

    fn conj(&mut self) -> Result<Formula, LogicError> {
        let mut parts = vec![self.negation()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.negation()?);
        }
        Ok(Formula::and(parts))
    }

    fn negation(&mut self) -> Result<Formula, LogicError> {
        if *self.peek() == Tok::Not {
            self.bump();
            Ok(Formula::not(self.negation()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Ident(name) if name == "exists" || name == "forall" => {
                self.bump();
                let (l, c) = self.here();
                let Tok::Ident(var) = self.bump() else {
                    return Err(err(l, c, "expected a variable after quantifier"));
                };
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.formula()?;
                Ok(if name == "exists" {
                    Formula::exists(&var, body)
                } else {
                    Formula::forall(&var, body)
                })
            }
            Tok::Ident(name) if name == "def" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after `def`")?;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Defined(t))
            }
            Tok::Ident(name)
                if self.vocab.unary_index(&name).is_some()
                    && self.toks[self.pos + 1].0 == Tok::LParen =>
            {
                self.bump();
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Unary(name, t))
            }
            Tok::LParen => {
                // Try a parenthesized formula; fall back to a parenthesized
                // term on the left of `=`.
                let save = self.pos;
                self.bump();
                match self.formula() {
                    Ok(f) if *self.peek() == Tok::RParen => {
                        self.bump();
                        Ok(f)
                    }
                    _ => {
                        self.pos = save;
                        self.eq_atom()
                    }
                }
            }
            Tok::Ident(_) => self.eq_atom(),
            _ => Err(err(line, col, "expected a formula")),
        }
    }

    fn eq_atom(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.term()?;
        self.expect(Tok::Eq, "`=` after term")?;
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        let (line, col) = self.here();
        match self.bump() {
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::Inverse {
                    self.bump();
                    if self.vocab.pif_index(&name).is_none() {
                        return Err(LogicError::UnknownSymbol(name));
                    }
                    self.expect(Tok::LParen, "`(`")?;
                    let t = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Term::InvApp(name, Box::new(t)))
                } else if *self.peek() == Tok::LParen {
                    self.bump();
                    if self.vocab.pif_index(&name).is_none() {
                        return Err(LogicError::UnknownSymbol(name));
                    }
                    let t = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Term::App(name, Box::new(t)))
                } else if self.vocab.constant_index(&name).is_some() {
                    Ok(Term::Const(name))
                } else if self.vocab.unary_index(&name).is_some()
                    || self.vocab.pif_index(&name).is_some()
                {
                    // A relation or function symbol in term position.
                    Err(err(line, col, &format!("symbol `{name}` is not a term")))
                } else {
                    Ok(Term::Var(name))
                }
            }
            _ => Err(err(line, col, "expected a term")),
        }
    }
}

/// Parses a formula over the given vocabulary.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula, LogicError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0, vocab };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        let (l, c) = p.here();
        return Err(err(l, c, "trailing input after formula"));
    }
    Ok(f)
}
