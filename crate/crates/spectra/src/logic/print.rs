//! Printing in the surface grammar.  Printing then re-parsing is the
//! identity on the AST.

use std::fmt;

use super::{Formula, Term};

pub(super) fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(x) | Term::Const(x) => write!(f, "{x}"),
        Term::App(g, s) => {
            write!(f, "{g}(")?;
            fmt_term(s, f)?;
            write!(f, ")")
        }
        Term::InvApp(g, s) => {
            write!(f, "{g}^-1(")?;
            fmt_term(s, f)?;
            write!(f, ")")
        }
    }
}

// Precedence levels: <-> 0, -> 1, | 2, & 3, ! 4, atoms 5.
// Quantifiers bind to the end of the formula and print at level 0.
pub(super) fn fmt_formula(phi: &Formula, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
    let level = match phi {
        Formula::Iff(..) | Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(_) => 2,
        Formula::And(_) => 3,
        Formula::Not(_) => 4,
        _ => 5,
    };
    let wrap = prec > level;
    if wrap {
        write!(f, "(")?;
    }
    match phi {
        Formula::Unary(r, t) => {
            write!(f, "{r}(")?;
            fmt_term(t, f)?;
            write!(f, ")")?;
        }
        Formula::Eq(a, b) => {
            fmt_term(a, f)?;
            write!(f, " = ")?;
            fmt_term(b, f)?;
        }
        Formula::Defined(t) => {
            write!(f, "def(")?;
            fmt_term(t, f)?;
            write!(f, ")")?;
        }
        Formula::Not(g) => {
            write!(f, "!")?;
            fmt_formula(g, f, 4)?;
        }
        Formula::And(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    write!(f, " & ")?;
                }
                fmt_formula(g, f, 4)?;
            }
        }
        Formula::Or(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                fmt_formula(g, f, 3)?;
            }
        }
        Formula::Implies(a, b) => {
            fmt_formula(a, f, 2)?;
            write!(f, " -> ")?;
            fmt_formula(b, f, 1)?;
        }
        Formula::Iff(a, b) => {
            fmt_formula(a, f, 1)?;
            write!(f, " <-> ")?;
            fmt_formula(b, f, 0)?;
        }
        Formula::Exists(x, g) => {
            write!(f, "exists {x}. ")?;
            fmt_formula(g, f, 0)?;
        }
        Formula::Forall(x, g) => {
            write!(f, "forall {x}. ")?;
            fmt_formula(g, f, 0)?;
        }
    }
    if wrap {
        write!(f, ")")?;
    }
    Ok(())
}
