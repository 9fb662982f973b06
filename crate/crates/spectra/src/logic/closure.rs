//! Sentence transformers that shift or edit spectra.
//!
//! Union and removal of a single size go through the counting sentence
//! (`exactly_n`); the +1 shift goes through relativization; the -1 shift is
//! the element-deletion transform below, which rewrites a sentence so that
//! models one element smaller, expanded with companion relations recording
//! the deleted element's incidences, satisfy it.

use std::collections::BTreeSet;

use super::{Formula, LogicError, Term, Vocabulary};
use crate::structure::{FiniteStructure, StructureBuilder, StructureError};

/// Name of the companion relation holding `x` with `f(x) = deleted`.
pub fn to_deleted_symbol(f: &str) -> String {
    format!("Rto_{f}")
}

/// Name of the companion relation holding the value of `f(deleted)`.
pub fn from_deleted_symbol(f: &str) -> String {
    format!("Rfrom_{f}")
}

/// The vocabulary extended with both companion relations per PIF.
pub fn companion_vocabulary(vocab: &Vocabulary) -> Result<Vocabulary, LogicError> {
    let extra: Vec<String> = vocab
        .pif_symbols()
        .iter()
        .flat_map(|f| [to_deleted_symbol(f), from_deleted_symbol(f)])
        .collect();
    vocab.with_unary(extra)
}

/// Rewrites closed `phi` into `phi*` over the companion vocabulary such that
/// a structure `A` satisfies `phi` iff its companion after deleting any one
/// element satisfies `phi*`.  The spectrum of `phi*` is the spectrum of
/// `phi` shifted down by one.
///
/// Constants are rejected: the deleted element could be the value of a
/// constant, which the smaller structure could not interpret.
pub fn delete_element_transform(
    phi: &Formula,
    vocab: &Vocabulary,
) -> Result<(Formula, Vocabulary), LogicError> {
    if !vocab.constant_symbols().is_empty() {
        return Err(LogicError::Invalid(
            "delete_element_transform requires a constant-free vocabulary".into(),
        ));
    }
    if !phi.is_closed() {
        return Err(LogicError::Invalid(
            "delete_element_transform requires a closed sentence".into(),
        ));
    }
    let new_vocab = companion_vocabulary(vocab)?;

    let mut conjuncts = Vec::new();
    for f in vocab.pif_symbols() {
        let rto = to_deleted_symbol(f);
        let rfrom = from_deleted_symbol(f);
        for r in [&rto, &rfrom] {
            conjuncts.push(Formula::forall(
                "x",
                Formula::forall(
                    "y",
                    Formula::implies(
                        Formula::and(vec![
                            Formula::unary(r, Term::var("x")),
                            Formula::unary(r, Term::var("y")),
                        ]),
                        Formula::eq(Term::var("x"), Term::var("y")),
                    ),
                ),
            ));
        }
        // The deleted element is the image of x, so x has no image left.
        conjuncts.push(Formula::forall(
            "x",
            Formula::implies(
                Formula::unary(&rto, Term::var("x")),
                Formula::undefined(Term::app(f, Term::var("x"))),
            ),
        ));
        // The deleted element mapped onto x, so injectivity forbids another
        // preimage of x.
        conjuncts.push(Formula::forall(
            "x",
            Formula::implies(
                Formula::unary(&rfrom, Term::var("x")),
                Formula::undefined(Term::inv(f, Term::var("x"))),
            ),
        ));
    }

    // Guess the deleted element's unary memberships and, per PIF, whether it
    // was a fixpoint.  Each guess yields one disjunct.
    let u = vocab.unary_symbols().len();
    let p = vocab.pif_symbols().len();
    let mut disjuncts = Vec::new();
    for mask in 0u64..(1u64 << (u + p)) {
        let unary_guess: Vec<bool> = (0..u).map(|i| mask >> i & 1 == 1).collect();
        let loop_guess: Vec<bool> = (0..p).map(|i| mask >> (u + i) & 1 == 1).collect();
        let mut tr = Translator { vocab, unary_guess, loop_guess, fresh: 0 };
        let mut parts = Vec::new();
        for (i, f) in vocab.pif_symbols().iter().enumerate() {
            if tr.loop_guess[i] {
                // f(deleted) = deleted leaves both companions empty.
                for r in [to_deleted_symbol(f), from_deleted_symbol(f)] {
                    parts.push(Formula::forall(
                        "x",
                        Formula::not(Formula::unary(&r, Term::var("x"))),
                    ));
                }
            }
        }
        parts.push(tr.formula(phi, &BTreeSet::new()));
        disjuncts.push(and_s(parts));
    }
    conjuncts.push(or_s(disjuncts));
    Ok((and_s(conjuncts), new_vocab))
}

/// Deletes `deleted` from `s` and records its incidences in the companion
/// relations; the counterpart of [`delete_element_transform`] on structures.
pub fn structure_companion(
    s: &FiniteStructure,
    deleted: usize,
) -> Result<FiniteStructure, StructureError> {
    let n = s.size();
    if n == 1 {
        return Err(StructureError::EmptyUniverse);
    }
    if deleted < 1 || deleted > n {
        return Err(StructureError::OutOfRange(deleted, n));
    }
    let vocab = companion_vocabulary(s.vocab())
        .map_err(|e| StructureError::Parse { line: 0, msg: e.to_string() })?;
    let reindex = |e: usize| if e > deleted { e - 1 } else { e };
    let mut b = StructureBuilder::new(vocab, n - 1)?;
    for r in s.vocab().unary_symbols() {
        for e in 1..=n {
            if e != deleted && s.unary(r, e) == Some(true) {
                b.add_unary(r, reindex(e))?;
            }
        }
    }
    for f in s.vocab().pif_symbols() {
        for e in 1..=n {
            if e == deleted {
                continue;
            }
            match s.pif(f, e) {
                Some(v) if v == deleted => {
                    b.add_unary(&to_deleted_symbol(f), reindex(e))?;
                }
                Some(v) => b.set_pif(f, reindex(e), reindex(v))?,
                None => {}
            }
        }
        if let Some(v) = s.pif(f, deleted) {
            if v != deleted {
                b.add_unary(&from_deleted_symbol(f), reindex(v))?;
            }
        }
    }
    for c in s.vocab().constant_symbols() {
        let v = s.constant(c).expect("built structure interprets its constants");
        if v == deleted {
            return Err(StructureError::OutOfRange(v, n - 1));
        }
        b.set_constant(c, reindex(v))?;
    }
    b.build()
}

fn tru() -> Formula {
    Formula::And(vec![])
}

fn fls() -> Formula {
    Formula::Or(vec![])
}

fn is_true(f: &Formula) -> bool {
    matches!(f, Formula::And(v) if v.is_empty())
}

fn is_false(f: &Formula) -> bool {
    matches!(f, Formula::Or(v) if v.is_empty())
}

fn and_s(parts: Vec<Formula>) -> Formula {
    if parts.iter().any(is_false) {
        return fls();
    }
    let parts: Vec<Formula> = parts.into_iter().filter(|f| !is_true(f)).collect();
    match parts.len() {
        0 => tru(),
        1 => parts.into_iter().next().unwrap(),
        _ => Formula::And(parts),
    }
}

fn or_s(parts: Vec<Formula>) -> Formula {
    if parts.iter().any(is_true) {
        return tru();
    }
    let parts: Vec<Formula> = parts.into_iter().filter(|f| !is_false(f)).collect();
    match parts.len() {
        0 => fls(),
        1 => parts.into_iter().next().unwrap(),
        _ => Formula::Or(parts),
    }
}

struct Translator<'a> {
    vocab: &'a Vocabulary,
    unary_guess: Vec<bool>,
    loop_guess: Vec<bool>,
    fresh: usize,
}

impl Translator<'_> {
    fn fresh_var(&mut self) -> String {
        let v = format!("_w{}", self.fresh);
        self.fresh += 1;
        v
    }

    /// Whether the term denotes the deleted element, given which variables
    /// are currently bound to it.
    fn den_deleted(&mut self, t: &Term, d: &BTreeSet<String>) -> Formula {
        match t {
            Term::Var(x) => {
                if d.contains(x) {
                    tru()
                } else {
                    fls()
                }
            }
            Term::Const(_) => fls(),
            Term::App(f, s) => {
                let fi = self.vocab.pif_index(f).unwrap();
                let w = self.fresh_var();
                let via_real = Formula::exists(
                    &w,
                    and_s(vec![
                        self.den_real(s, &w, d),
                        Formula::unary(&to_deleted_symbol(f), Term::var(&w)),
                    ]),
                );
                let via_loop = if self.loop_guess[fi] {
                    self.den_deleted(s, d)
                } else {
                    fls()
                };
                or_s(vec![via_real, via_loop])
            }
            Term::InvApp(f, s) => {
                let fi = self.vocab.pif_index(f).unwrap();
                let w = self.fresh_var();
                let via_real = Formula::exists(
                    &w,
                    and_s(vec![
                        self.den_real(s, &w, d),
                        Formula::unary(&from_deleted_symbol(f), Term::var(&w)),
                    ]),
                );
                let via_loop = if self.loop_guess[fi] {
                    self.den_deleted(s, d)
                } else {
                    fls()
                };
                or_s(vec![via_real, via_loop])
            }
        }
    }

    /// Whether the term denotes the (surviving) element currently named by
    /// variable `z`.
    fn den_real(&mut self, t: &Term, z: &str, d: &BTreeSet<String>) -> Formula {
        match t {
            Term::Var(x) => {
                if d.contains(x) {
                    fls()
                } else {
                    Formula::eq(Term::var(z), Term::var(x))
                }
            }
            Term::Const(c) => Formula::eq(Term::var(z), Term::Const(c.clone())),
            Term::App(f, s) => {
                let w = self.fresh_var();
                let via_real = Formula::exists(
                    &w,
                    and_s(vec![
                        self.den_real(s, &w, d),
                        Formula::eq(Term::app(f, Term::var(&w)), Term::var(z)),
                    ]),
                );
                let via_deleted = and_s(vec![
                    self.den_deleted(s, d),
                    Formula::unary(&from_deleted_symbol(f), Term::var(z)),
                ]);
                or_s(vec![via_real, via_deleted])
            }
            Term::InvApp(f, s) => {
                let w = self.fresh_var();
                let via_real = Formula::exists(
                    &w,
                    and_s(vec![
                        self.den_real(s, &w, d),
                        Formula::eq(Term::inv(f, Term::var(&w)), Term::var(z)),
                    ]),
                );
                let via_deleted = and_s(vec![
                    self.den_deleted(s, d),
                    Formula::unary(&to_deleted_symbol(f), Term::var(z)),
                ]);
                or_s(vec![via_real, via_deleted])
            }
        }
    }

    fn formula(&mut self, phi: &Formula, d: &BTreeSet<String>) -> Formula {
        match phi {
            Formula::Unary(r, t) => {
                let ri = self.vocab.unary_index(r).unwrap();
                let z = self.fresh_var();
                let on_real = Formula::exists(
                    &z,
                    and_s(vec![
                        self.den_real(t, &z, d),
                        Formula::unary(r, Term::var(&z)),
                    ]),
                );
                let on_deleted = if self.unary_guess[ri] {
                    self.den_deleted(t, d)
                } else {
                    fls()
                };
                or_s(vec![on_real, on_deleted])
            }
            Formula::Eq(a, b) => {
                let z = self.fresh_var();
                let both_real = Formula::exists(
                    &z,
                    and_s(vec![self.den_real(a, &z, d), self.den_real(b, &z, d)]),
                );
                let both_deleted =
                    and_s(vec![self.den_deleted(a, d), self.den_deleted(b, d)]);
                or_s(vec![both_real, both_deleted])
            }
            Formula::Defined(t) => {
                let z = self.fresh_var();
                or_s(vec![
                    Formula::exists(&z, self.den_real(t, &z, d)),
                    self.den_deleted(t, d),
                ])
            }
            Formula::Not(g) => match self.formula(g, d) {
                g if is_true(&g) => fls(),
                g if is_false(&g) => tru(),
                g => Formula::not(g),
            },
            Formula::And(gs) => and_s(gs.iter().map(|g| self.formula(g, d)).collect()),
            Formula::Or(gs) => or_s(gs.iter().map(|g| self.formula(g, d)).collect()),
            Formula::Implies(a, b) => {
                or_s(vec![
                    match self.formula(a, d) {
                        g if is_true(&g) => fls(),
                        g if is_false(&g) => tru(),
                        g => Formula::not(g),
                    },
                    self.formula(b, d),
                ])
            }
            Formula::Iff(a, b) => {
                let ca = self.formula(a, d);
                let cb = self.formula(b, d);
                and_s(vec![
                    or_s(vec![
                        match ca.clone() {
                            g if is_true(&g) => fls(),
                            g if is_false(&g) => tru(),
                            g => Formula::not(g),
                        },
                        cb.clone(),
                    ]),
                    or_s(vec![
                        match cb {
                            g if is_true(&g) => fls(),
                            g if is_false(&g) => tru(),
                            g => Formula::not(g),
                        },
                        ca,
                    ]),
                ])
            }
            // The bound variable either names the deleted element or ranges
            // over the surviving ones.
            Formula::Exists(x, g) => {
                let mut with_x = d.clone();
                with_x.insert(x.clone());
                let mut without_x = d.clone();
                without_x.remove(x);
                or_s(vec![
                    self.formula(g, &with_x),
                    match self.formula(g, &without_x) {
                        g if is_true(&g) => tru(),
                        g if is_false(&g) => fls(),
                        g => Formula::exists(x, g),
                    },
                ])
            }
            Formula::Forall(x, g) => {
                let mut with_x = d.clone();
                with_x.insert(x.clone());
                let mut without_x = d.clone();
                without_x.remove(x);
                and_s(vec![
                    self.formula(g, &with_x),
                    match self.formula(g, &without_x) {
                        g if is_true(&g) => tru(),
                        g if is_false(&g) => fls(),
                        g => Formula::forall(x, g),
                    },
                ])
            }
        }
    }
}

/// Unary relation marking the retained elements in [`shift_up_transform`].
pub const KEEP: &str = "Rkeep";

/// `phi | eta_n`: the spectrum gains size `n`.
pub fn union_size(phi: &Formula, n: usize) -> Result<Formula, LogicError> {
    Ok(Formula::Or(vec![phi.clone(), super::exactly_n(n)?]))
}

/// `phi & !eta_n`: the spectrum loses size `n`.
pub fn minus_size(phi: &Formula, n: usize) -> Result<Formula, LogicError> {
    Ok(Formula::And(vec![phi.clone(), Formula::not(super::exactly_n(n)?)]))
}

/// Shifts the spectrum up by one: exactly one element is outside the marker
/// relation, that element is isolated, and `phi` holds relativized to the
/// marked part.  Isolation matters: without it a term could step outside the
/// marked part and make an atom of the relativized sentence true in a way
/// the smaller structure cannot replicate.
pub fn shift_up_transform(
    phi: &Formula,
    vocab: &Vocabulary,
) -> Result<(Formula, Vocabulary), LogicError> {
    if !vocab.constant_symbols().is_empty() {
        return Err(LogicError::Invalid(
            "shift_up_transform requires a constant-free vocabulary".into(),
        ));
    }
    if !phi.is_closed() {
        return Err(LogicError::Invalid("shift_up_transform requires a closed sentence".into()));
    }
    let new_vocab = vocab.with_unary(vec![KEEP.to_string()])?;
    // Without a marked element the relativized sentence holds vacuously,
    // which would admit size 1 regardless of the input spectrum.
    let mut conjuncts = vec![Formula::exists(
        "x",
        Formula::unary(KEEP, Term::var("x")),
    )];
    conjuncts.push(Formula::exists(
        "x",
        Formula::and(vec![
            Formula::not(Formula::unary(KEEP, Term::var("x"))),
            Formula::forall(
                "y",
                Formula::implies(
                    Formula::not(Formula::unary(KEEP, Term::var("y"))),
                    Formula::eq(Term::var("y"), Term::var("x")),
                ),
            ),
        ]),
    ));
    for f in vocab.pif_symbols() {
        conjuncts.push(Formula::forall(
            "x",
            Formula::implies(
                Formula::not(Formula::unary(KEEP, Term::var("x"))),
                Formula::and(vec![
                    Formula::undefined(Term::app(f, Term::var("x"))),
                    Formula::undefined(Term::inv(f, Term::var("x"))),
                ]),
            ),
        ));
    }
    conjuncts.push(super::relativize(phi, KEEP, &new_vocab)?);
    Ok((Formula::and(conjuncts), new_vocab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{brute_force_spectrum, for_each_structure};
    use crate::logic::{evaluate, parse_formula, Assignment};

    fn vocab() -> Vocabulary {
        Vocabulary::new(vec!["A".to_string()], vec!["f".to_string()], vec![]).unwrap()
    }

    #[test]
    fn delete_transform_agrees_with_the_companion_oracle() {
        let v = vocab();
        let sentences = [
            "exists x. f(x) = x",
            "forall x. A(x) -> def(f(x))",
            "exists x. A(x) & !def(f^-1(x))",
            "forall x. def(f(x))",
        ];
        for src in sentences {
            let phi = parse_formula(src, &v).unwrap();
            let (phi_star, star_vocab) = delete_element_transform(&phi, &v).unwrap();
            let asg = Assignment::new();
            // Forward: every model's companion satisfies the transform.
            // The converse fails pointwise (deleting an isolated element
            // and deleting a fixpoint leave the same companion), so the
            // reverse direction is checked at the spectrum level.
            for n in 2..=3 {
                for_each_structure(&v, n, |s| {
                    if evaluate(s, &phi, &asg).unwrap() {
                        for deleted in 1..=n {
                            let comp = structure_companion(s, deleted).unwrap();
                            assert!(
                                evaluate(&comp, &phi_star, &asg).unwrap(),
                                "{src} at n={n}, deleted={deleted}"
                            );
                        }
                    }
                    true
                });
            }
            let base = brute_force_spectrum(&phi, &v, 1, 4).unwrap();
            let shifted: std::collections::BTreeSet<usize> =
                base.iter().filter(|&&x| x > 1).map(|&x| x - 1).collect();
            assert_eq!(
                brute_force_spectrum(&phi_star, &star_vocab, 1, 3).unwrap(),
                shifted,
                "{src}"
            );
        }
    }

    #[test]
    fn transforms_shift_the_spectrum() {
        let v = vocab();
        // Toy sentence with spectrum {1, 3} on [1, 4]: either everything is
        // A and there are three elements, or a single non-A element.
        let phi = parse_formula(
            "(forall x. A(x)) & (exists x. exists y. exists z. \
             !(x = y) & !(x = z) & !(y = z) & forall w. w = x | w = y | w = z) \
             | (forall x. !A(x)) & (forall x. forall y. x = y)",
            &v,
        )
        .unwrap();
        let base = brute_force_spectrum(&phi, &v, 1, 4).unwrap();
        assert_eq!(base, [1, 3].into());

        let union = union_size(&phi, 2).unwrap();
        assert_eq!(brute_force_spectrum(&union, &v, 1, 4).unwrap(), [1, 2, 3].into());

        let minus = minus_size(&phi, 3).unwrap();
        assert_eq!(brute_force_spectrum(&minus, &v, 1, 4).unwrap(), [1].into());

        let (up, up_vocab) = shift_up_transform(&phi, &v).unwrap();
        assert_eq!(brute_force_spectrum(&up, &up_vocab, 1, 4).unwrap(), [2, 4].into());

        let (down, down_vocab) = delete_element_transform(&phi, &v).unwrap();
        assert_eq!(brute_force_spectrum(&down, &down_vocab, 1, 4).unwrap(), [2].into());
    }
}
