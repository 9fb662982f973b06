//! First-order syntax and evaluation over vocabularies whose only binary
//! symbols are partial injective unary functions (PIFs).
//!
//! Atoms have strict definedness semantics: an atom containing an undefined
//! term is false, and negation is classical above atoms.  `t = t` is thus the
//! same as saying `t` is defined.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub mod closure;
mod compile;
mod parse;
mod print;

pub use compile::Evaluator;
pub(crate) use compile::{compile, CFormula, CTerm};
pub use parse::parse_formula;

/// Elements of a finite universe `{1..N}`.
pub type Element = usize;

/// A variable assignment for the free variables of a formula.
pub type Assignment = BTreeMap<String, Element>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is not a unary relation symbol")]
    NotUnary(String),
    #[error("free variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("duplicate symbol `{0}` in vocabulary")]
    DuplicateSymbol(String),
    #[error("{0}")]
    Invalid(String),
}

/// The symbols a structure interprets: unary relations, PIFs and constants.
///
/// Symbol order is significant; it fixes serialization and search order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    unary: Vec<String>,
    pifs: Vec<String>,
    constants: Vec<String>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(
        unary: Vec<S>,
        pifs: Vec<S>,
        constants: Vec<S>,
    ) -> Result<Self, LogicError> {
        let v = Vocabulary {
            unary: unary.into_iter().map(Into::into).collect(),
            pifs: pifs.into_iter().map(Into::into).collect(),
            constants: constants.into_iter().map(Into::into).collect(),
        };
        let mut seen = std::collections::BTreeSet::new();
        for name in v.all_symbols() {
            if !seen.insert(name.to_string()) {
                return Err(LogicError::DuplicateSymbol(name.to_string()));
            }
        }
        Ok(v)
    }

    pub fn empty() -> Self {
        Vocabulary { unary: vec![], pifs: vec![], constants: vec![] }
    }

    pub fn unary_symbols(&self) -> &[String] {
        &self.unary
    }

    pub fn pif_symbols(&self) -> &[String] {
        &self.pifs
    }

    pub fn constant_symbols(&self) -> &[String] {
        &self.constants
    }

    pub fn all_symbols(&self) -> impl Iterator<Item = &str> {
        self.unary
            .iter()
            .chain(self.pifs.iter())
            .chain(self.constants.iter())
            .map(String::as_str)
    }

    pub fn unary_index(&self, name: &str) -> Option<usize> {
        self.unary.iter().position(|s| s == name)
    }

    pub fn pif_index(&self, name: &str) -> Option<usize> {
        self.pifs.iter().position(|s| s == name)
    }

    pub fn constant_index(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|s| s == name)
    }

    /// Extends the vocabulary with further unary symbols.
    pub fn with_unary<S: Into<String>>(&self, extra: Vec<S>) -> Result<Self, LogicError> {
        let mut v = self.clone();
        v.unary.extend(extra.into_iter().map(Into::into));
        Self::new(v.unary, v.pifs, v.constants)
    }
}

/// Terms: variables, constants and (inverse) PIF applications.
///
/// Inverse application is first-class: every PIF is injective, so `f^-1` is
/// again a partial function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Box<Term>),
    InvApp(String, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(f: &str, t: Term) -> Term {
        Term::App(f.to_string(), Box::new(t))
    }

    pub fn inv(f: &str, t: Term) -> Term {
        Term::InvApp(f.to_string(), Box::new(t))
    }

    /// k-fold application of `f`, e.g. `x+k` as iterated successor.
    pub fn iterate(f: &str, t: Term, k: usize) -> Term {
        let mut out = t;
        for _ in 0..k {
            out = Term::app(f, out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Unary(String, Term),
    Eq(Term, Term),
    Defined(Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn unary(r: &str, t: Term) -> Formula {
        Formula::Unary(r.to_string(), t)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn defined(t: Term) -> Formula {
        Formula::Defined(t)
    }

    pub fn undefined(t: Term) -> Formula {
        Formula::not(Formula::Defined(t))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::And(fs),
        }
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(f))
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn go_term(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.iter().any(|b| b == x) && !out.iter().any(|b| b == x) {
                        out.push(x.clone());
                    }
                }
                Term::Const(_) => {}
                Term::App(_, s) | Term::InvApp(_, s) => go_term(s, bound, out),
            }
        }
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Unary(_, t) | Formula::Defined(t) => go_term(t, bound, out),
                Formula::Eq(a, b) => {
                    go_term(a, bound, out);
                    go_term(b, bound, out);
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        go(g, bound, out);
                    }
                }
                Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Exists(x, g) | Formula::Forall(x, g) => {
                    bound.push(x.clone());
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

/// The counting sentence true exactly on universes of size `n`.
pub fn exactly_n(n: usize) -> Result<Formula, LogicError> {
    if n == 0 {
        return Err(LogicError::Invalid(
            "exactly_n requires n >= 1; empty structures are not modeled".into(),
        ));
    }
    let vars: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let mut distinct = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            distinct.push(Formula::not(Formula::eq(
                Term::var(&vars[i]),
                Term::var(&vars[j]),
            )));
        }
    }
    let covered = Formula::forall(
        "y",
        Formula::or(
            vars.iter()
                .map(|v| Formula::eq(Term::var("y"), Term::var(v)))
                .collect(),
        ),
    );
    let mut body = distinct;
    body.push(covered);
    let mut phi = Formula::and(body);
    for v in vars.iter().rev() {
        phi = Formula::exists(v, phi);
    }
    Ok(phi)
}

/// Relativizes every quantifier in `phi` to the unary relation `r`.
pub fn relativize(phi: &Formula, r: &str, vocab: &Vocabulary) -> Result<Formula, LogicError> {
    if vocab.unary_index(r).is_none() {
        return Err(LogicError::NotUnary(r.to_string()));
    }
    fn go(f: &Formula, r: &str) -> Formula {
        match f {
            Formula::Unary(..) | Formula::Eq(..) | Formula::Defined(..) => f.clone(),
            Formula::Not(g) => Formula::not(go(g, r)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| go(g, r)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| go(g, r)).collect()),
            Formula::Implies(a, b) => Formula::implies(go(a, r), go(b, r)),
            Formula::Iff(a, b) => Formula::iff(go(a, r), go(b, r)),
            Formula::Exists(x, g) => Formula::exists(
                x,
                Formula::and(vec![Formula::unary(r, Term::var(x)), go(g, r)]),
            ),
            Formula::Forall(x, g) => Formula::forall(
                x,
                Formula::implies(Formula::unary(r, Term::var(x)), go(g, r)),
            ),
        }
    }
    Ok(go(phi, r))
}

/// Evaluates a formula on a structure under the strict-atom semantics.
///
/// Convenience wrapper; hot loops should build an [`Evaluator`] once.
pub fn evaluate(
    s: &crate::structure::FiniteStructure,
    phi: &Formula,
    asg: &Assignment,
) -> Result<bool, LogicError> {
    Evaluator::new(s.vocab(), phi, asg.keys().cloned().collect())?.eval(s, asg)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::fmt_formula(self, f, 0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::fmt_term(self, f)
    }
}
