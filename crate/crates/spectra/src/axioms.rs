//! Programmatic builders for the axiom sentences of each structure family.
//!
//! The distinguished elements are definable rather than constants: the top
//! element is the unique one without a successor, the bottom element the
//! unique one without a predecessor.  All sentences are conjunctions of
//! named conjuncts in a fixed order, so mutation tests can report which
//! conjunct fails.

use crate::gens::{DBL, SUCC};
use crate::logic::{Formula, Term};
use crate::machine::{Dir, QueueMachine, TuringMachine};

/// Named conjuncts of a sentence, in a fixed order.
pub type Conjuncts = Vec<(&'static str, Formula)>;

/// Conjoins the named conjuncts into one sentence.
pub fn conjoin(cs: &Conjuncts) -> Formula {
    Formula::and(cs.iter().map(|(_, f)| f.clone()).collect())
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn succ(t: Term) -> Term {
    Term::app(SUCC, t)
}

fn pred(t: Term) -> Term {
    Term::inv(SUCC, t)
}

fn dbl(t: Term) -> Term {
    Term::app(DBL, t)
}

/// x has no successor (x is the top element if unique).
fn is_top(x: &str) -> Formula {
    Formula::undefined(succ(v(x)))
}

/// x has no predecessor (x is the bottom element if unique).
fn is_bottom(x: &str) -> Formula {
    Formula::undefined(pred(v(x)))
}

fn unique_such(marker: fn(&str) -> Formula) -> Formula {
    Formula::exists(
        "x",
        Formula::forall("y", Formula::iff(marker("y"), Formula::eq(v("x"), v("y")))),
    )
}

/// The spiral conditions over {successor, doubling}.
///
/// The parity cover is guarded by `def(x+1)`: under strict atom semantics
/// the unguarded form would fail at the top element whenever N is odd,
/// while the guard exempts only that element and leaves the cycle
/// elimination argument untouched.
///
/// The parity cover alone does not force successor cycles to alternate
/// between doubles and non-doubles: a cycle whose elements are all doubles
/// (for instance a 3-cycle with `d(a_i) = a_{2i}`, or a single element with
/// `s(a) = a` and `d(a) = a`) satisfies it together with every other
/// conjunct, and such junk components would ruin uniqueness.
/// `parity_exclusive` bans an element and its successor from both being
/// doubles. On a cycle the two conditions then force exact alternation, so
/// the length is even and the halves of the cycle elements are closed under
/// predecessor, forming a strictly shorter cycle; a minimal cycle therefore
/// cannot exist and the successor graph is a single chain.
/// `succ_no_fixpoint` is implied by the pair but refutes a bad successor
/// cell on its own, which the search exploits.
pub fn phi_m_conjuncts() -> Conjuncts {
    vec![
        ("succ_total_but_top", unique_such(is_top)),
        ("pred_total_but_bottom", unique_such(is_bottom)),
        (
            "succ_no_fixpoint",
            Formula::forall("x", Formula::not(Formula::eq(succ(v("x")), v("x")))),
        ),
        (
            "halving",
            Formula::forall(
                "x",
                Formula::implies(
                    Formula::and(vec![
                        Formula::defined(dbl(v("x"))),
                        Formula::defined(pred(v("x"))),
                    ]),
                    Formula::eq(succ(succ(dbl(pred(v("x"))))), dbl(v("x"))),
                ),
            ),
        ),
        (
            "double_one",
            Formula::forall(
                "x",
                Formula::implies(is_bottom("x"), Formula::eq(dbl(v("x")), succ(v("x")))),
            ),
        ),
        (
            "parity_exclusive",
            Formula::forall(
                "x",
                Formula::implies(
                    Formula::exists("y", Formula::eq(v("x"), dbl(v("y")))),
                    Formula::not(Formula::exists(
                        "y",
                        Formula::eq(succ(v("x")), dbl(v("y"))),
                    )),
                ),
            ),
        ),
        (
            "parity_cover",
            Formula::forall(
                "x",
                Formula::implies(
                    Formula::defined(succ(v("x"))),
                    Formula::exists(
                        "y",
                        Formula::or(vec![
                            Formula::eq(v("x"), dbl(v("y"))),
                            Formula::eq(succ(v("x")), dbl(v("y"))),
                        ]),
                    ),
                ),
            ),
        ),
    ]
}

pub fn phi_m() -> Formula {
    conjoin(&phi_m_conjuncts())
}

/// phi_M plus: P is the closure of the bottom element under doubling, and P
/// holds at the top element.
pub fn powers_conjuncts() -> Conjuncts {
    let mut cs = phi_m_conjuncts();
    cs.push((
        "powers_closure",
        Formula::forall(
            "x",
            Formula::iff(
                Formula::unary("P", v("x")),
                Formula::or(vec![
                    is_bottom("x"),
                    Formula::exists(
                        "y",
                        Formula::and(vec![
                            Formula::unary("P", v("y")),
                            Formula::eq(v("x"), dbl(v("y"))),
                        ]),
                    ),
                ]),
            ),
        ),
    ));
    cs.push((
        "powers_top",
        Formula::forall(
            "x",
            Formula::implies(is_top("x"), Formula::unary("P", v("x"))),
        ),
    ));
    cs
}

pub fn powers_axioms() -> Formula {
    conjoin(&powers_conjuncts())
}

/// A two-sided definedness pin for a recurrence step `lhs = rhs`: the step
/// holds with both sides defined as soon as either side is.
fn pinned_step(guard: Formula, lhs: Term, rhs: Term) -> (Formula, Formula) {
    let back = Formula::forall(
        "x",
        Formula::implies(
            Formula::and(vec![guard.clone(), Formula::defined(lhs.clone())]),
            Formula::eq(lhs.clone(), rhs.clone()),
        ),
    );
    let fwd = Formula::forall(
        "x",
        Formula::implies(
            Formula::and(vec![guard, Formula::defined(rhs.clone())]),
            Formula::eq(lhs, rhs),
        ),
    );
    (back, fwd)
}

/// phi_M plus the pinning of x+C and x*C plus the compositeness witness:
/// C is not 1 and the top element is y*C for some y distinct from 1.
pub fn composite_conjuncts() -> Conjuncts {
    let c = Term::Const("C".to_string());
    let mut cs = phi_m_conjuncts();
    cs.push((
        "addc_base",
        Formula::forall(
            "x",
            Formula::implies(
                is_bottom("x"),
                Formula::eq(Term::app("addC", v("x")), succ(c.clone())),
            ),
        ),
    ));
    let guard = Formula::defined(succ(v("x")));
    let (back, fwd) = pinned_step(
        guard.clone(),
        Term::app("addC", succ(v("x"))),
        succ(Term::app("addC", v("x"))),
    );
    cs.push(("addc_step_back", back));
    cs.push(("addc_step_fwd", fwd));
    cs.push((
        "mulc_base",
        Formula::forall(
            "x",
            Formula::implies(
                is_bottom("x"),
                Formula::eq(Term::app("mulC", v("x")), c.clone()),
            ),
        ),
    ));
    let (back, fwd) = pinned_step(
        guard,
        Term::app("mulC", succ(v("x"))),
        Term::app("addC", Term::app("mulC", v("x"))),
    );
    cs.push(("mulc_step_back", back));
    cs.push(("mulc_step_fwd", fwd));
    cs.push(("c_not_one", Formula::defined(pred(c))));
    cs.push((
        "composite_witness",
        Formula::exists(
            "y",
            Formula::and(vec![
                Formula::defined(pred(v("y"))),
                Formula::defined(Term::app("mulC", v("y"))),
                Formula::undefined(succ(Term::app("mulC", v("y")))),
            ]),
        ),
    ));
    cs
}

pub fn composite_axioms() -> Formula {
    conjoin(&composite_conjuncts())
}

/// The Fibonacci-stepped function F and the closure set Phi.  With the
/// planar variant the doubling PIF is absent and an F-analogue of the
/// parity cover fixes the structure instead of phi_M.
pub fn fib_conjuncts(planar_variant: bool) -> Conjuncts {
    let mut cs: Conjuncts = if planar_variant {
        vec![
            ("succ_total_but_top", unique_such(is_top)),
            ("pred_total_but_bottom", unique_such(is_bottom)),
            // Successor cycles are what phi_M's doubling function rules
            // out; without it the fix needs two pieces.  A junk cycle must
            // carry F as a bijection onto the union of cycles with every
            // step a double step, which pins each cycle length odd, and a
            // parity coloring that flips along the successor then refutes
            // the odd lengths.  Unary relations leave the Gaifman graph
            // untouched, so degree and planarity are unaffected.
            (
                "parity_flip",
                Formula::forall(
                    "x",
                    Formula::implies(
                        Formula::defined(succ(v("x"))),
                        Formula::iff(
                            Formula::unary("Odd", succ(v("x"))),
                            Formula::not(Formula::unary("Odd", v("x"))),
                        ),
                    ),
                ),
            ),
        ]
    } else {
        phi_m_conjuncts()
    };
    cs.push((
        "fib_base",
        Formula::forall(
            "x",
            Formula::implies(is_bottom("x"), Formula::eq(Term::app("F", v("x")), succ(v("x")))),
        ),
    ));
    // x is in the image of F exactly when F^-1(x) is defined.
    let hit = Formula::defined(Term::inv("F", v("x")));
    let miss = Formula::undefined(Term::inv("F", v("x")));
    let step = |extra: Formula, jump: Term| {
        pinned_step(
            Formula::and(vec![Formula::defined(succ(v("x"))), extra]),
            Term::app("F", succ(v("x"))),
            jump,
        )
    };
    let (back, fwd) = step(hit, succ(succ(Term::app("F", v("x")))));
    cs.push(("fib_step_hit_back", back));
    cs.push(("fib_step_hit_fwd", fwd));
    let (back, fwd) = step(miss, succ(Term::app("F", v("x"))));
    cs.push(("fib_step_miss_back", back));
    cs.push(("fib_step_miss_fwd", fwd));
    // The next three conjuncts are redundant consequences of the step
    // rules (F starts at 2 and grows by 1 or 2 per step, so F(x) > x and
    // F(x+1) is defined whenever F(x)+2 is), stated without consulting
    // F^-1, whose status the search can only settle once every F cell is
    // decided; without them the step axioms prune nothing while F is
    // being assigned.
    cs.push((
        "fib_step_window",
        Formula::forall(
            "x",
            Formula::implies(
                Formula::and(vec![
                    Formula::defined(succ(v("x"))),
                    Formula::defined(Term::app("F", succ(v("x")))),
                ]),
                Formula::or(vec![
                    Formula::eq(Term::app("F", succ(v("x"))), succ(Term::app("F", v("x")))),
                    Formula::eq(
                        Term::app("F", succ(v("x"))),
                        succ(succ(Term::app("F", v("x")))),
                    ),
                ]),
            ),
        ),
    ));
    cs.push((
        "fib_no_fixpoint",
        Formula::forall(
            "x",
            Formula::and(vec![
                Formula::not(Formula::eq(Term::app("F", v("x")), v("x"))),
                Formula::not(Formula::eq(Term::app("F", succ(v("x"))), v("x"))),
            ]),
        ),
    ));
    cs.push((
        "fib_dom_step",
        Formula::forall(
            "x",
            Formula::implies(
                Formula::and(vec![
                    Formula::defined(succ(v("x"))),
                    Formula::defined(Term::app("F", v("x"))),
                    Formula::defined(succ(succ(Term::app("F", v("x"))))),
                ]),
                Formula::defined(Term::app("F", succ(v("x")))),
            ),
        ),
    ));
    if planar_variant {
        cs.push((
            "fib_cover",
            Formula::forall(
                "x",
                Formula::implies(
                    Formula::defined(succ(v("x"))),
                    Formula::exists(
                        "y",
                        Formula::or(vec![
                            Formula::eq(v("x"), Term::app("F", v("y"))),
                            Formula::eq(succ(v("x")), Term::app("F", v("y"))),
                        ]),
                    ),
                ),
            ),
        ));
    }
    cs.push((
        "phi_closure",
        Formula::forall(
            "x",
            Formula::iff(
                Formula::unary("Phi", v("x")),
                Formula::or(vec![
                    is_bottom("x"),
                    Formula::exists(
                        "y",
                        Formula::and(vec![
                            Formula::eq(v("x"), Term::app("F", v("y"))),
                            Formula::unary("Phi", v("y")),
                        ]),
                    ),
                ]),
            ),
        ),
    ));
    cs.push((
        "phi_top",
        Formula::forall(
            "x",
            Formula::implies(is_top("x"), Formula::unary("Phi", v("x"))),
        ),
    ));
    cs
}

pub fn fib_axioms(planar_variant: bool) -> Formula {
    conjoin(&fib_conjuncts(planar_variant))
}

/// phi_M plus the binary-representation chain P: P maps the bottom element
/// to the top one, halves (with remainder) at each successor step while its
/// value has a predecessor, and is defined on a downward-closed prefix.
pub fn binary_conjuncts() -> Conjuncts {
    let p = |t: Term| Term::app("P", t);
    let mut cs = phi_m_conjuncts();
    cs.push((
        "binary_base",
        Formula::forall(
            "x",
            Formula::forall(
                "z",
                Formula::implies(
                    Formula::and(vec![is_bottom("x"), is_top("z")]),
                    Formula::eq(p(v("x")), v("z")),
                ),
            ),
        ),
    ));
    cs.push((
        "binary_halving",
        Formula::forall(
            "x",
            Formula::implies(
                Formula::defined(pred(p(v("x")))),
                Formula::or(vec![
                    Formula::eq(p(v("x")), dbl(p(succ(v("x"))))),
                    Formula::eq(p(v("x")), succ(dbl(p(succ(v("x")))))),
                ]),
            ),
        ),
    ));
    cs.push((
        "binary_prefix",
        Formula::forall(
            "x",
            Formula::implies(Formula::defined(p(succ(v("x")))), Formula::defined(p(v("x")))),
        ),
    ));
    cs
}

pub fn binary_axioms() -> Formula {
    conjoin(&binary_conjuncts())
}

fn exactly_one_of(fs: Vec<Formula>) -> Formula {
    Formula::or(
        (0..fs.len())
            .map(|i| {
                Formula::and(
                    fs.iter()
                        .enumerate()
                        .map(|(j, f)| if i == j { f.clone() } else { Formula::not(f.clone()) })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Axioms every run encoding satisfies: one conjunct per consistency
/// condition, each relativized to R so that padding elements are ignored.
///
/// `F` below abbreviates the capital link: the side link of an element, or
/// of the element one interval down when the direct link is absent.
pub fn tm_conjuncts(m: &TuringMachine) -> Conjuncts {
    let fu = |t: Term| Term::app("fu", t);
    let fd = |t: Term| Term::inv("fu", t);
    let side = |dir: &str, t: Term| Term::app(dir, t);
    // Capital link: F_dir(t) is defined / equals z.
    let cap_def = |dir: &str| {
        Formula::or(vec![
            Formula::defined(side(dir, v("e"))),
            Formula::defined(side(dir, fd(v("e")))),
        ])
    };
    let cap_eq = |dir: &str, z: &str| {
        Formula::or(vec![
            Formula::eq(side(dir, v("e")), v(z)),
            Formula::and(vec![
                Formula::not(Formula::defined(side(dir, v("e")))),
                Formula::eq(side(dir, fd(v("e"))), v(z)),
            ]),
        ])
    };
    let m_of = |t: Term| Formula::unary("M", t);
    let head_side = |away: &str, t: Term| {
        Formula::or(vec![Formula::unary("M", t.clone()), Formula::unary(away, t)])
    };
    let letters: Vec<Formula> = m
        .alphabet
        .iter()
        .map(|&c| Formula::unary(&crate::machine::letter_symbol(c), v("e")))
        .collect();
    let state = |q: &str, t: Term| Formula::unary(&format!("S_{q}"), t);
    let any_state = Formula::or(m.states.iter().map(|q| state(q, v("e"))).collect());
    let final_state =
        |t: Term| Formula::or(m.finals.iter().map(|q| state(q, t.clone())).collect());

    let mut cs: Conjuncts = vec![
        (
            "roles_partition",
            Formula::forall(
                "e",
                exactly_one_of(vec![
                    m_of(v("e")),
                    Formula::unary("Tl", v("e")),
                    Formula::unary("Tr", v("e")),
                ]),
            ),
        ),
        ("letters_partition", Formula::forall("e", exactly_one_of(letters))),
        (
            "states_on_heads",
            Formula::forall(
                "e",
                Formula::and(vec![
                    Formula::implies(
                        m_of(v("e")),
                        exactly_one_of(
                            m.states.iter().map(|q| state(q, v("e"))).collect(),
                        ),
                    ),
                    Formula::implies(Formula::not(m_of(v("e"))), Formula::not(any_state)),
                ]),
            ),
        ),
        (
            "left_blocked",
            Formula::forall(
                "e",
                Formula::implies(
                    Formula::unary("Tr", v("e")),
                    Formula::undefined(side("fl", v("e"))),
                ),
            ),
        ),
        (
            "right_blocked",
            Formula::forall(
                "e",
                Formula::implies(
                    Formula::unary("Tl", v("e")),
                    Formula::undefined(side("fr", v("e"))),
                ),
            ),
        ),
        (
            "left_total_but_l",
            Formula::exists(
                "x",
                Formula::forall(
                    "e",
                    Formula::iff(
                        Formula::and(vec![
                            Formula::not(Formula::unary("Tr", v("e"))),
                            Formula::not(cap_def("fl")),
                        ]),
                        Formula::eq(v("x"), v("e")),
                    ),
                ),
            ),
        ),
        (
            "right_total_but_r",
            Formula::exists(
                "x",
                Formula::forall(
                    "e",
                    Formula::iff(
                        Formula::and(vec![
                            Formula::not(Formula::unary("Tl", v("e"))),
                            Formula::not(cap_def("fr")),
                        ]),
                        Formula::eq(v("x"), v("e")),
                    ),
                ),
            ),
        ),
        (
            "content_persists",
            Formula::forall(
                "e",
                Formula::and(
                    m.alphabet
                        .iter()
                        .map(|&c| {
                            let l = crate::machine::letter_symbol(c);
                            Formula::implies(
                                Formula::and(vec![
                                    Formula::unary(&l, v("e")),
                                    Formula::not(m_of(v("e"))),
                                    Formula::defined(fu(v("e"))),
                                ]),
                                Formula::unary(&l, fu(v("e"))),
                            )
                        })
                        .collect(),
                ),
            ),
        ),
    ];

    for (label_h1, label_h2, label_h, away, dir) in [
        ("right_height_one", "right_height_two", "right_no_higher", "Tr", "fr"),
        ("left_height_one", "left_height_two", "left_no_higher", "Tl", "fl"),
    ] {
        cs.push((
            label_h1,
            Formula::forall(
                "e",
                Formula::implies(
                    Formula::and(vec![
                        head_side(away, v("e")),
                        Formula::unary(away, fu(v("e"))),
                        Formula::defined(side(dir, v("e"))),
                        Formula::defined(side(dir, fu(v("e")))),
                    ]),
                    Formula::eq(fu(side(dir, v("e"))), side(dir, fu(v("e")))),
                ),
            ),
        ));
        // Both height conditions apply only while the column stays on the
        // same side of the head; once the head passes through, the mirrored
        // conditions of the other side take over.
        cs.push((
            label_h2,
            Formula::forall(
                "e",
                Formula::implies(
                    Formula::and(vec![
                        head_side(away, v("e")),
                        head_side(away, fu(fu(v("e")))),
                        Formula::defined(side(dir, v("e"))),
                        Formula::undefined(side(dir, fu(v("e")))),
                    ]),
                    Formula::eq(fu(side(dir, v("e"))), side(dir, fu(fu(v("e"))))),
                ),
            ),
        ));
        cs.push((
            label_h,
            Formula::forall(
                "e",
                Formula::implies(
                    Formula::and(vec![
                        Formula::defined(fu(v("e"))),
                        Formula::unary(away, v("e")),
                    ]),
                    Formula::or(vec![
                        Formula::defined(side(dir, v("e"))),
                        Formula::defined(side(dir, fu(v("e")))),
                    ]),
                ),
            ),
        ));
    }

    cs.push((
        "time_zero_unique",
        Formula::exists(
            "x",
            Formula::forall(
                "e",
                Formula::iff(
                    Formula::and(vec![m_of(v("e")), Formula::undefined(fd(v("e")))]),
                    Formula::eq(v("x"), v("e")),
                ),
            ),
        ),
    ));
    cs.push((
        "time_zero_flat",
        Formula::forall(
            "e",
            Formula::implies(
                Formula::undefined(fd(v("e"))),
                Formula::and(vec![
                    Formula::undefined(fd(side("fr", v("e")))),
                    Formula::undefined(fd(side("fl", v("e")))),
                ]),
            ),
        ),
    ));
    cs.push((
        "end_unique_final",
        Formula::exists(
            "x",
            Formula::and(vec![
                m_of(v("x")),
                Formula::undefined(fu(v("x"))),
                final_state(v("x")),
                Formula::forall(
                    "e",
                    Formula::implies(
                        Formula::and(vec![m_of(v("e")), Formula::undefined(fu(v("e")))]),
                        Formula::eq(v("x"), v("e")),
                    ),
                ),
            ]),
        ),
    ));
    for (label, away, dir) in
        [("end_flat_left", "Tl", "fl"), ("end_flat_right", "Tr", "fr")]
    {
        cs.push((
            label,
            Formula::forall(
                "e",
                Formula::forall(
                    "z",
                    Formula::implies(
                        Formula::and(vec![
                            head_side(away, v("e")),
                            Formula::undefined(fu(v("e"))),
                            cap_eq(dir, "z"),
                        ]),
                        Formula::undefined(fu(v("z"))),
                    ),
                ),
            ),
        ));
    }

    // One step: the head reads its letter, rewrites the cell above, and the
    // next head element sits above the capital link in the move direction,
    // with its own side link pointing back above the old head.
    let mut step_cases = Vec::new();
    for ((q, c), outs) in &m.transitions {
        for (q2, c2, dir) in outs {
            let (fwd, back) = match dir {
                Dir::R => ("fr", "fl"),
                Dir::L => ("fl", "fr"),
            };
            step_cases.push(Formula::and(vec![
                state(q, v("e")),
                Formula::unary(&crate::machine::letter_symbol(*c), v("e")),
                Formula::unary(&crate::machine::letter_symbol(*c2), fu(v("e"))),
                Formula::exists(
                    "z",
                    Formula::and(vec![
                        cap_eq(fwd, "z"),
                        m_of(fu(v("z"))),
                        state(q2, fu(v("z"))),
                        Formula::eq(fu(v("e")), side(back, fu(v("z")))),
                    ]),
                ),
            ]));
        }
    }
    cs.push((
        "step",
        Formula::forall(
            "e",
            Formula::implies(
                Formula::and(vec![m_of(v("e")), Formula::not(final_state(v("e")))]),
                Formula::or(step_cases),
            ),
        ),
    ));

    let vocab = crate::machine::tm_vocabulary(m);
    let mut cs: Conjuncts = cs
        .into_iter()
        .map(|(name, f)| {
            (
                name,
                crate::logic::relativize(&f, "R", &vocab)
                    .expect("the machine vocabulary provides R"),
            )
        })
        .collect();

    // Everything above is relativized to R and says nothing about the
    // padding dummies.  This conjunct is deliberately absolute: the
    // universe splits into R and the D-marked dummies, and dummies carry
    // no other labels and no links, so flipping any single R or D mark is
    // observable.
    let mut dummy_clean = vec![
        Formula::not(m_of(v("e"))),
        Formula::not(Formula::unary("Tl", v("e"))),
        Formula::not(Formula::unary("Tr", v("e"))),
    ];
    for q in &m.states {
        dummy_clean.push(Formula::not(state(q, v("e"))));
    }
    for &c in &m.alphabet {
        dummy_clean.push(Formula::not(Formula::unary(
            &crate::machine::letter_symbol(c),
            v("e"),
        )));
    }
    for f in ["fu", "fl", "fr"] {
        dummy_clean.push(Formula::undefined(Term::app(f, v("e"))));
        dummy_clean.push(Formula::undefined(Term::inv(f, v("e"))));
    }
    cs.push((
        "universe_split",
        Formula::forall(
            "e",
            Formula::and(vec![
                Formula::iff(
                    Formula::unary("R", v("e")),
                    Formula::not(Formula::unary("D", v("e"))),
                ),
                Formula::implies(Formula::unary("D", v("e")), Formula::and(dummy_clean)),
            ]),
        ),
    ));
    cs
}

pub fn tm_axioms(m: &TuringMachine) -> Formula {
    conjoin(&tm_conjuncts(m))
}

/// Axioms for queue run encodings over the final tape, anchored at the
/// given initial word: the tape is a successor path carrying the initial
/// word at its bottom, `frw` pairs read with write positions step by step,
/// and exactly one position carries a final state and stops the pairing.
pub fn queue_conjuncts(m: &QueueMachine, initial: &str) -> Conjuncts {
    assert!(!initial.is_empty(), "queue runs start from a non-empty word");
    let frw = |t: Term| Term::app("frw", t);
    let state = |q: &str, t: Term| Formula::unary(&format!("S_{q}"), t);
    let word_at = |w: &str, base: Term| {
        Formula::and(
            w.chars()
                .enumerate()
                .map(|(i, c)| {
                    Formula::unary(
                        &crate::machine::letter_symbol(c),
                        Term::iterate(SUCC, base.clone(), i),
                    )
                })
                .collect(),
        )
    };
    let letters: Vec<Formula> = m
        .alphabet
        .iter()
        .map(|&c| Formula::unary(&crate::machine::letter_symbol(c), v("x")))
        .collect();
    let final_state = |t: Term| {
        Formula::or(m.finals.iter().map(|q| state(q, t.clone())).collect())
    };
    let nonfinal_state = |t: Term| {
        Formula::or(
            m.states
                .iter()
                .filter(|q| !m.finals.contains(*q))
                .map(|q| state(q, t.clone()))
                .collect(),
        )
    };

    let mut cs: Conjuncts = vec![
        ("succ_total_but_top", unique_such(is_top)),
        ("pred_total_but_bottom", unique_such(is_bottom)),
        ("letters_partition", Formula::forall("x", exactly_one_of(letters))),
        (
            "states_unique",
            Formula::forall(
                "x",
                Formula::and(
                    m.states
                        .iter()
                        .enumerate()
                        .flat_map(|(i, q)| {
                            m.states[i + 1..].iter().map(move |q2| {
                                Formula::not(Formula::and(vec![
                                    state(q, v("x")),
                                    state(q2, v("x")),
                                ]))
                            })
                        })
                        .collect(),
                ),
            ),
        ),
        (
            "initial_word",
            Formula::forall(
                "x",
                Formula::implies(is_bottom("x"), word_at(initial, v("x"))),
            ),
        ),
        (
            "initial_read",
            Formula::forall(
                "x",
                Formula::implies(
                    is_bottom("x"),
                    Formula::and(vec![
                        state(&m.initial, v("x")),
                        Formula::eq(frw(v("x")), Term::iterate(SUCC, v("x"), initial.len())),
                    ]),
                ),
            ),
        ),
        (
            "reads_have_state",
            Formula::forall(
                "x",
                Formula::implies(
                    Formula::defined(frw(v("x"))),
                    Formula::or(m.states.iter().map(|q| state(q, v("x"))).collect()),
                ),
            ),
        ),
        (
            "nonfinal_states_read",
            Formula::forall(
                "x",
                Formula::implies(nonfinal_state(v("x")), Formula::defined(frw(v("x")))),
            ),
        ),
        (
            "final_states_stop",
            Formula::forall(
                "x",
                Formula::implies(final_state(v("x")), Formula::undefined(frw(v("x")))),
            ),
        ),
        (
            "final_unique",
            Formula::exists(
                "x",
                Formula::forall(
                    "y",
                    Formula::iff(final_state(v("y")), Formula::eq(v("x"), v("y"))),
                ),
            ),
        ),
    ];

    // A read at x uses some transition: the read word sits at x, the written
    // word at frw(x), and either the pairing continues in lockstep or the
    // next state stops at the end of the tape.
    let mut cases = Vec::new();
    for tr in &m.transitions {
        let next_read = Term::iterate(SUCC, v("x"), tr.read.len());
        let next_write = Term::iterate(SUCC, frw(v("x")), tr.write.len());
        let last_written = Term::iterate(SUCC, frw(v("x")), tr.write.len() - 1);
        cases.push(Formula::and(vec![
            state(&tr.from, v("x")),
            word_at(&tr.read, v("x")),
            word_at(&tr.write, frw(v("x"))),
            Formula::or(vec![
                Formula::and(vec![
                    Formula::eq(frw(next_read.clone()), next_write),
                    state(&tr.to, next_read.clone()),
                ]),
                Formula::and(vec![
                    state(&tr.to, next_read.clone()),
                    Formula::undefined(frw(next_read)),
                    Formula::undefined(succ(last_written)),
                ]),
            ]),
        ]));
    }
    cs.push((
        "step",
        Formula::forall(
            "x",
            Formula::implies(Formula::defined(frw(v("x"))), Formula::or(cases)),
        ),
    ));
    cs
}

pub fn queue_axioms(m: &QueueMachine, initial: &str) -> Formula {
    conjoin(&queue_conjuncts(m, initial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;
    use crate::logic::{Assignment, Evaluator};
    use crate::structure::FiniteStructure;

    fn holds(phi: &Formula, s: &FiniteStructure) -> bool {
        Evaluator::new(s.vocab(), phi, vec![])
            .unwrap()
            .eval(s, &Assignment::new())
            .unwrap()
    }

    fn check_named(cs: &Conjuncts, s: &FiniteStructure) {
        for (name, f) in cs {
            assert!(holds(f, s), "conjunct `{name}` fails on size {}", s.size());
        }
    }

    #[test]
    fn generators_satisfy_their_axioms() {
        // The `*_top` conjuncts assert membership of N itself and hold only
        // at member sizes; everything else must hold at every size.
        let keep = |cs: Conjuncts, n: usize, member: bool| -> Conjuncts {
            let _ = n;
            cs.into_iter()
                .filter(|(name, _)| member || !name.ends_with("_top") || *name == "succ_total_but_top")
                .collect()
        };
        let is_pow2 = |n: usize| n.is_power_of_two();
        let is_fib = |n: usize| {
            let (mut a, mut b) = (1usize, 2usize);
            while b < n {
                (a, b) = (b, a + b);
            }
            b == n || n == 1
        };
        for n in 2..=32 {
            check_named(&phi_m_conjuncts(), &gens::spiral(n).unwrap());
            check_named(
                &keep(powers_conjuncts(), n, is_pow2(n)),
                &gens::powers_structure(n).unwrap(),
            );
            for planar in [true, false] {
                check_named(
                    &keep(fib_conjuncts(planar), n, is_fib(n)),
                    &gens::fibonacci_structure(n, planar).unwrap(),
                );
            }
            check_named(&binary_conjuncts(), &gens::binary_rep_structure(n).unwrap());
        }
    }

    #[test]
    fn multiplication_satisfies_pinning_conjuncts() {
        // The compositeness witness holds only when C properly divides N.
        for (n, c) in [(12, 3), (9, 3), (10, 2), (16, 4), (15, 5)] {
            let s = gens::multiplication_structure(n, c).unwrap();
            check_named(&composite_conjuncts(), &s);
        }
        let s = gens::multiplication_structure(7, 3).unwrap();
        let cs = composite_conjuncts();
        for (name, f) in &cs {
            let ok = holds(f, &s);
            if *name == "composite_witness" {
                assert!(!ok, "7 is prime; the witness conjunct must fail");
            } else {
                assert!(ok, "conjunct `{name}` fails on the N=7 expansion");
            }
        }
    }

    #[test]
    fn powers_top_detects_non_powers() {
        let s = gens::powers_structure(6).unwrap();
        let cs = powers_conjuncts();
        for (name, f) in &cs {
            let ok = holds(f, &s);
            if *name == "powers_top" {
                assert!(!ok, "6 is not a power of two");
            } else {
                assert!(ok, "conjunct `{name}` fails at N=6");
            }
        }
    }

    #[test]
    fn phi_top_detects_non_fibonacci() {
        for planar in [true, false] {
            let s = gens::fibonacci_structure(6, planar).unwrap();
            let cs = fib_conjuncts(planar);
            for (name, f) in &cs {
                let ok = holds(f, &s);
                if *name == "phi_top" {
                    assert!(!ok, "6 is not a Fibonacci number");
                } else {
                    assert!(ok, "conjunct `{name}` fails at N=6 (planar={planar})");
                }
            }
        }
    }
}
