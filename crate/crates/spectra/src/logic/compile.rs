//! Symbol- and variable-resolved formula form used by the evaluators.
//!
//! Variables become de Bruijn-style slots into an environment stack, symbol
//! names become vocabulary indices, and `->`/`<->` are lowered to `!`, `&`,
//! `|`.  Both the two-valued evaluator here and the three-valued evaluator in
//! the spectrum search work on this form.

use super::{Assignment, Element, Formula, LogicError, Term, Vocabulary};
use crate::structure::FiniteStructure;

#[derive(Debug, Clone)]
pub(crate) enum CTerm {
    Var(usize),
    Const(usize),
    App(usize, Box<CTerm>),
    Inv(usize, Box<CTerm>),
}

#[derive(Debug, Clone)]
pub(crate) enum CFormula {
    Unary(usize, CTerm),
    Eq(CTerm, CTerm),
    Defined(CTerm),
    Not(Box<CFormula>),
    And(Vec<CFormula>),
    Or(Vec<CFormula>),
    Exists(Box<CFormula>),
    Forall(Box<CFormula>),
}

pub(crate) fn compile(
    phi: &Formula,
    vocab: &Vocabulary,
    free: &[String],
) -> Result<CFormula, LogicError> {
    let mut scope: Vec<String> = free.to_vec();
    go(phi, vocab, &mut scope)
}

fn go(phi: &Formula, vocab: &Vocabulary, scope: &mut Vec<String>) -> Result<CFormula, LogicError> {
    Ok(match phi {
        Formula::Unary(r, t) => {
            let ri = vocab
                .unary_index(r)
                .ok_or_else(|| LogicError::UnknownSymbol(r.clone()))?;
            CFormula::Unary(ri, go_term(t, vocab, scope)?)
        }
        Formula::Eq(a, b) => {
            CFormula::Eq(go_term(a, vocab, scope)?, go_term(b, vocab, scope)?)
        }
        Formula::Defined(t) => CFormula::Defined(go_term(t, vocab, scope)?),
        Formula::Not(g) => CFormula::Not(Box::new(go(g, vocab, scope)?)),
        Formula::And(gs) => CFormula::And(
            gs.iter().map(|g| go(g, vocab, scope)).collect::<Result<_, _>>()?,
        ),
        Formula::Or(gs) => CFormula::Or(
            gs.iter().map(|g| go(g, vocab, scope)).collect::<Result<_, _>>()?,
        ),
        Formula::Implies(a, b) => CFormula::Or(vec![
            CFormula::Not(Box::new(go(a, vocab, scope)?)),
            go(b, vocab, scope)?,
        ]),
        Formula::Iff(a, b) => {
            let ca = go(a, vocab, scope)?;
            let cb = go(b, vocab, scope)?;
            CFormula::And(vec![
                CFormula::Or(vec![CFormula::Not(Box::new(ca.clone())), cb.clone()]),
                CFormula::Or(vec![CFormula::Not(Box::new(cb)), ca]),
            ])
        }
        Formula::Exists(x, g) => {
            scope.push(x.clone());
            let c = go(g, vocab, scope)?;
            scope.pop();
            CFormula::Exists(Box::new(c))
        }
        Formula::Forall(x, g) => {
            scope.push(x.clone());
            let c = go(g, vocab, scope)?;
            scope.pop();
            CFormula::Forall(Box::new(c))
        }
    })
}

fn go_term(t: &Term, vocab: &Vocabulary, scope: &[String]) -> Result<CTerm, LogicError> {
    Ok(match t {
        Term::Var(x) => {
            let slot = scope
                .iter()
                .rposition(|s| s == x)
                .ok_or_else(|| LogicError::UnboundVariable(x.clone()))?;
            CTerm::Var(slot)
        }
        Term::Const(c) => CTerm::Const(
            vocab
                .constant_index(c)
                .ok_or_else(|| LogicError::UnknownSymbol(c.clone()))?,
        ),
        Term::App(f, s) => CTerm::App(
            vocab
                .pif_index(f)
                .ok_or_else(|| LogicError::UnknownSymbol(f.clone()))?,
            Box::new(go_term(s, vocab, scope)?),
        ),
        Term::InvApp(f, s) => CTerm::Inv(
            vocab
                .pif_index(f)
                .ok_or_else(|| LogicError::UnknownSymbol(f.clone()))?,
            Box::new(go_term(s, vocab, scope)?),
        ),
    })
}

/// A formula compiled against a fixed vocabulary, ready for repeated
/// evaluation.  Evaluation is pure; a shared `Evaluator` may be used from
/// concurrent tasks.
#[derive(Debug, Clone)]
pub struct Evaluator {
    vocab: Vocabulary,
    free: Vec<String>,
    compiled: CFormula,
}

impl Evaluator {
    /// Compiles `phi` against `vocab`.  `free` lists the variables the
    /// assignment will bind; for closed formulas pass an empty list.
    pub fn new(vocab: &Vocabulary, phi: &Formula, free: Vec<String>) -> Result<Self, LogicError> {
        let compiled = compile(phi, vocab, &free)?;
        Ok(Evaluator { vocab: vocab.clone(), free, compiled })
    }

    pub fn eval(&self, s: &FiniteStructure, asg: &Assignment) -> Result<bool, LogicError> {
        if *s.vocab() != self.vocab {
            return Err(LogicError::Invalid(
                "structure vocabulary does not match the compiled formula".into(),
            ));
        }
        let mut env = Vec::with_capacity(self.free.len() + 8);
        for x in &self.free {
            let v = *asg
                .get(x)
                .ok_or_else(|| LogicError::UnboundVariable(x.clone()))?;
            if v < 1 || v > s.size() {
                return Err(LogicError::Invalid(format!(
                    "assignment binds `{x}` to {v}, outside the universe 1..={}",
                    s.size()
                )));
            }
            env.push(v);
        }
        Ok(eval_formula(&self.compiled, s, &mut env))
    }
}

fn eval_term(t: &CTerm, s: &FiniteStructure, env: &[Element]) -> Option<Element> {
    match t {
        CTerm::Var(i) => Some(env[*i]),
        CTerm::Const(c) => Some(s.constant_by_index(*c)),
        CTerm::App(f, inner) => s.pif_by_index(*f, eval_term(inner, s, env)?),
        CTerm::Inv(f, inner) => s.pif_inverse_by_index(*f, eval_term(inner, s, env)?),
    }
}

fn eval_formula(phi: &CFormula, s: &FiniteStructure, env: &mut Vec<Element>) -> bool {
    match phi {
        CFormula::Unary(r, t) => match eval_term(t, s, env) {
            Some(v) => s.unary_by_index(*r, v),
            None => false,
        },
        CFormula::Eq(a, b) => match (eval_term(a, s, env), eval_term(b, s, env)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
        CFormula::Defined(t) => eval_term(t, s, env).is_some(),
        CFormula::Not(g) => !eval_formula(g, s, env),
        CFormula::And(gs) => gs.iter().all(|g| eval_formula(g, s, env)),
        CFormula::Or(gs) => gs.iter().any(|g| eval_formula(g, s, env)),
        CFormula::Exists(g) => {
            env.push(1);
            let mut found = false;
            for v in 1..=s.size() {
                *env.last_mut().unwrap() = v;
                if eval_formula(g, s, env) {
                    found = true;
                    break;
                }
            }
            env.pop();
            found
        }
        CFormula::Forall(g) => {
            env.push(1);
            let mut holds = true;
            for v in 1..=s.size() {
                *env.last_mut().unwrap() = v;
                if !eval_formula(g, s, env) {
                    holds = false;
                    break;
                }
            }
            env.pop();
            holds
        }
    }
}
