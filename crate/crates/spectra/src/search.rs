//! Model search for spectrum membership at a fixed size, and the gadget
//! turning PIF structures into colored graphs of degree at most 3.
//!
//! The search assigns constants, then per element each PIF image and each
//! unary membership, in that interleaved order.  Branches are cut by a
//! three-valued evaluation of the sentence's conjuncts (false under every
//! completion prunes, true under every completion yields a witness after
//! filling the remaining cells minimally), by the least-number heuristic
//! (a fresh value may only be the smallest unused one), and in the planar
//! and degree-bounded modes by Gaifman-graph checks that are monotone in
//! the assignment.  Every witness is re-verified by the two-valued
//! evaluator and the mode predicate before being returned.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{Assignment, Element, Evaluator, Formula, LogicError, Vocabulary};
use crate::logic::{CFormula, CTerm};
use crate::planarity;
use crate::structure::{self, FiniteStructure, Graph, StructureBuilder, StructureError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("witness failed re-verification; search internals are inconsistent")]
    Internal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    All,
    Planar,
    DegreeAtMost(usize),
    PlanarAndDegree(usize),
}

impl SearchMode {
    pub fn degree_bound(&self) -> Option<usize> {
        match self {
            SearchMode::DegreeAtMost(d) | SearchMode::PlanarAndDegree(d) => Some(*d),
            _ => None,
        }
    }

    pub fn requires_planar(&self) -> bool {
        matches!(self, SearchMode::Planar | SearchMode::PlanarAndDegree(_))
    }

    /// Does the structure's Gaifman graph satisfy this mode?
    pub fn admits(&self, s: &FiniteStructure) -> bool {
        let g = structure::gaifman_graph(s);
        if let Some(d) = self.degree_bound() {
            if structure::max_degree(&g) > d {
                return false;
            }
        }
        !self.requires_planar() || planarity::is_planar(&g)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Assignments explored.
    pub nodes: u64,
    /// The node budget ran out before the size was settled.
    pub budget_exhausted: bool,
}

#[derive(Debug)]
pub enum Outcome {
    Witness(FiniteStructure),
    NoModel,
    /// Budget exhausted without a witness: membership unresolved.
    Unknown,
}

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PifCell {
    Unset,
    Undef,
    To(Element),
}

/// One assignable slot, in assignment order.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Constant(usize),
    Pif(usize, Element),
    Unary(usize, Element),
}

/// An undecided conjunct.  For a top-level `forall` at domain sizes up to
/// 128, `pending` holds the instances not yet proved: along a branch cells
/// only become more defined, so a true instance stays true and is never
/// re-evaluated.
#[derive(Clone)]
struct Entry {
    ci: usize,
    pending: Option<u128>,
}

struct Searcher<'a> {
    n: usize,
    vocab: &'a Vocabulary,
    slots: Vec<Slot>,
    conjuncts: Vec<CFormula>,
    // Per-conjunct mask of the symbols it mentions: pifs, then unaries,
    // then constants.  A cell assignment outside the mask cannot change
    // the conjunct's status, so its evaluation is skipped.
    symbols: Vec<u64>,
    mode: SearchMode,
    budget: u64,
    stats: SearchStats,
    // Partial interpretation.
    unary: Vec<Vec<Option<bool>>>,
    pif: Vec<Vec<PifCell>>,
    pif_inv: Vec<Vec<Option<Element>>>,
    consts: Vec<Option<Element>>,
    // Gaifman bookkeeping for the mode pruning.
    degree: Vec<usize>,
    edges: BTreeSet<(Element, Element)>,
    // Least-number heuristic: values above max_intro+1 are symmetric.
    max_intro: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tv {
    False,
    True,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tval {
    Val(Element),
    Undef,
    Unknown,
}

enum Control {
    Found(FiniteStructure),
    Pruned,
    Abort,
}

/// Non-increasing partitions of `n`, including the empty partition of 0.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in (1..=max.min(left)).rev() {
            cur.push(l);
            go(left - l, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn symbol_bit(i: usize) -> u64 {
    if i >= 64 {
        u64::MAX
    } else {
        1 << i
    }
}

fn term_symbols(t: &CTerm, p: usize, u: usize) -> u64 {
    match t {
        CTerm::Var(_) => 0,
        CTerm::Const(c) => symbol_bit(p + u + c),
        CTerm::App(f, inner) | CTerm::Inv(f, inner) => {
            symbol_bit(*f) | term_symbols(inner, p, u)
        }
    }
}

fn formula_symbols(phi: &CFormula, p: usize, u: usize) -> u64 {
    match phi {
        CFormula::Unary(r, t) => symbol_bit(p + r) | term_symbols(t, p, u),
        CFormula::Eq(a, b) => term_symbols(a, p, u) | term_symbols(b, p, u),
        CFormula::Defined(t) => term_symbols(t, p, u),
        CFormula::Not(g) | CFormula::Exists(g) | CFormula::Forall(g) => {
            formula_symbols(g, p, u)
        }
        CFormula::And(gs) | CFormula::Or(gs) => {
            gs.iter().map(|g| formula_symbols(g, p, u)).fold(0, |a, b| a | b)
        }
    }
}

impl<'a> Searcher<'a> {
    fn new(
        phi: &Formula,
        vocab: &'a Vocabulary,
        n: usize,
        mode: SearchMode,
        budget: u64,
    ) -> Result<Self, SearchError> {
        let compiled = crate::logic::compile(phi, vocab, &[])?;
        let conjuncts = match compiled {
            CFormula::And(cs) => cs,
            other => vec![other],
        };
        let p = vocab.pif_symbols().len();
        let u = vocab.unary_symbols().len();
        let c = vocab.constant_symbols().len();
        let mut slots = Vec::new();
        for i in 0..c {
            slots.push(Slot::Constant(i));
        }
        // Pif-major order: finish each function before starting the next.
        // Chained axioms (each function pinned pointwise by the previous
        // ones) then refute a bad cell as soon as it is set, where an
        // element-major order would leave them undetermined until the end.
        // The first pif is not assigned cell by cell at all: up to
        // relabeling it is a disjoint union of chains and cycles, so the
        // driver enumerates those shapes directly instead of the
        // exponentially many labelings of each one.
        for f in 1..p {
            for e in 1..=n {
                slots.push(Slot::Pif(f, e));
            }
        }
        for r in 0..u {
            for e in 1..=n {
                slots.push(Slot::Unary(r, e));
            }
        }
        let symbols = conjuncts.iter().map(|g| formula_symbols(g, p, u)).collect();
        Ok(Searcher {
            n,
            vocab,
            slots,
            conjuncts,
            symbols,
            mode,
            budget,
            stats: SearchStats::default(),
            unary: vec![vec![None; n]; u],
            pif: vec![vec![PifCell::Unset; n]; p],
            pif_inv: vec![vec![None; n]; p],
            consts: vec![None; c],
            degree: vec![0; n],
            edges: BTreeSet::new(),
            max_intro: 0,
        })
    }

    fn term(&self, t: &CTerm, env: &[Element]) -> Tval {
        match t {
            CTerm::Var(i) => Tval::Val(env[*i]),
            CTerm::Const(c) => match self.consts[*c] {
                Some(v) => Tval::Val(v),
                None => Tval::Unknown,
            },
            CTerm::App(f, inner) => match self.term(inner, env) {
                Tval::Val(v) => match self.pif[*f][v - 1] {
                    PifCell::To(w) => Tval::Val(w),
                    PifCell::Undef => Tval::Undef,
                    PifCell::Unset => Tval::Unknown,
                },
                other => other,
            },
            CTerm::Inv(f, inner) => match self.term(inner, env) {
                Tval::Val(v) => match self.pif_inv[*f][v - 1] {
                    Some(w) => Tval::Val(w),
                    // The preimage may still be assigned at an unset source.
                    None => {
                        if self.pif[*f].iter().all(|c| *c != PifCell::Unset) {
                            Tval::Undef
                        } else {
                            Tval::Unknown
                        }
                    }
                },
                other => other,
            },
        }
    }

    fn eval(&self, phi: &CFormula, env: &mut Vec<Element>) -> Tv {
        match phi {
            CFormula::Unary(r, t) => match self.term(t, env) {
                Tval::Val(v) => match self.unary[*r][v - 1] {
                    Some(true) => Tv::True,
                    Some(false) => Tv::False,
                    None => Tv::Unknown,
                },
                Tval::Undef => Tv::False,
                Tval::Unknown => Tv::Unknown,
            },
            CFormula::Eq(a, b) => match (self.term(a, env), self.term(b, env)) {
                (Tval::Undef, _) | (_, Tval::Undef) => Tv::False,
                (Tval::Val(x), Tval::Val(y)) => {
                    if x == y {
                        Tv::True
                    } else {
                        Tv::False
                    }
                }
                _ => Tv::Unknown,
            },
            CFormula::Defined(t) => match self.term(t, env) {
                Tval::Val(_) => Tv::True,
                Tval::Undef => Tv::False,
                Tval::Unknown => Tv::Unknown,
            },
            CFormula::Not(g) => match self.eval(g, env) {
                Tv::True => Tv::False,
                Tv::False => Tv::True,
                Tv::Unknown => Tv::Unknown,
            },
            CFormula::And(gs) => {
                let mut out = Tv::True;
                for g in gs {
                    match self.eval(g, env) {
                        Tv::False => return Tv::False,
                        Tv::Unknown => out = Tv::Unknown,
                        Tv::True => {}
                    }
                }
                out
            }
            CFormula::Or(gs) => {
                let mut out = Tv::False;
                for g in gs {
                    match self.eval(g, env) {
                        Tv::True => return Tv::True,
                        Tv::Unknown => out = Tv::Unknown,
                        Tv::False => {}
                    }
                }
                out
            }
            CFormula::Exists(g) => {
                let mut out = Tv::False;
                env.push(1);
                for v in 1..=self.n {
                    *env.last_mut().unwrap() = v;
                    match self.eval(g, env) {
                        Tv::True => {
                            out = Tv::True;
                            break;
                        }
                        Tv::Unknown => out = Tv::Unknown,
                        Tv::False => {}
                    }
                }
                env.pop();
                out
            }
            CFormula::Forall(g) => {
                let mut out = Tv::True;
                env.push(1);
                for v in 1..=self.n {
                    *env.last_mut().unwrap() = v;
                    match self.eval(g, env) {
                        Tv::False => {
                            out = Tv::False;
                            break;
                        }
                        Tv::Unknown => out = Tv::Unknown,
                        Tv::True => {}
                    }
                }
                env.pop();
                out
            }
        }
    }

    /// Adds the Gaifman edge for a new pif entry; None means the mode
    /// rejects it.  Returns whether an edge was actually added.
    fn push_edge(&mut self, a: Element, b: Element) -> Option<bool> {
        if a == b {
            return Some(false);
        }
        let key = (a.min(b), a.max(b));
        if self.edges.contains(&key) {
            return Some(false);
        }
        if let Some(d) = self.mode.degree_bound() {
            if self.degree[a - 1] + 1 > d || self.degree[b - 1] + 1 > d {
                return None;
            }
        }
        if self.mode.requires_planar() {
            if self.n >= 3 && self.edges.len() + 1 > 3 * self.n - 6 {
                return None;
            }
            let mut g = Graph::new(self.n);
            for &(u, v) in &self.edges {
                g.add_edge(u, v);
            }
            g.add_edge(a, b);
            if !planarity::is_planar(&g) {
                return None;
            }
        }
        self.edges.insert(key);
        self.degree[a - 1] += 1;
        self.degree[b - 1] += 1;
        Some(true)
    }

    fn pop_edge(&mut self, a: Element, b: Element) {
        self.edges.remove(&(a.min(b), a.max(b)));
        self.degree[a - 1] -= 1;
        self.degree[b - 1] -= 1;
    }

    /// Builds the structure named by the current assignment, with unset
    /// cells filled minimally (pif undefined, unary false).
    fn freeze(&self) -> Result<FiniteStructure, StructureError> {
        let mut b = StructureBuilder::new(self.vocab.clone(), self.n)?;
        for (f, name) in self.vocab.pif_symbols().iter().enumerate() {
            for a in 1..=self.n {
                if let PifCell::To(t) = self.pif[f][a - 1] {
                    b.set_pif(name, a, t)?;
                }
            }
        }
        for (r, name) in self.vocab.unary_symbols().iter().enumerate() {
            for e in 1..=self.n {
                if self.unary[r][e - 1] == Some(true) {
                    b.add_unary(name, e)?;
                }
            }
        }
        for (c, name) in self.vocab.constant_symbols().iter().enumerate() {
            b.set_constant(name, self.consts[c].expect("constants are assigned first"))?;
        }
        b.build()
    }

    /// Lays pif 0 out as consecutive chains then cycles of the given
    /// lengths, covering every element.  Returns the Gaifman edges that
    /// were added, or None (after undoing) when the mode rejects an edge.
    fn apply_shape(
        &mut self,
        chains: &[usize],
        cycles: &[usize],
    ) -> Option<Vec<(Element, Element)>> {
        let mut added = Vec::new();
        let mut next = 1usize;
        let mut arcs = Vec::new();
        for &l in chains {
            for i in 0..l - 1 {
                arcs.push((next + i, next + i + 1));
            }
            self.pif[0][next + l - 2] = PifCell::Undef;
            next += l;
        }
        for &l in cycles {
            for i in 0..l {
                arcs.push((next + i, next + (i + 1) % l));
            }
            next += l;
        }
        for &(a, t) in &arcs {
            match self.push_edge(a, t) {
                Some(true) => added.push((a, t)),
                Some(false) => {}
                None => {
                    for &(a, t) in &added {
                        self.pop_edge(a, t);
                    }
                    self.undo_shape_cells();
                    return None;
                }
            }
            self.pif[0][a - 1] = PifCell::To(t);
            self.pif_inv[0][t - 1] = Some(a);
        }
        Some(added)
    }

    fn undo_shape_cells(&mut self) {
        for c in self.pif[0].iter_mut() {
            *c = PifCell::Unset;
        }
        for c in self.pif_inv[0].iter_mut() {
            *c = None;
        }
    }

    fn undo_shape(&mut self, added: Vec<(Element, Element)>) {
        for &(a, t) in &added {
            self.pop_edge(a, t);
        }
        self.undo_shape_cells();
    }

    fn dfs(&mut self, idx: usize, active: &[Entry], changed: u64) -> Control {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.stats.budget_exhausted = true;
            return Control::Abort;
        }
        // Re-evaluate the still-undetermined conjuncts that mention the
        // symbol whose cell was just assigned.
        let mut env = Vec::new();
        let mut next_active = Vec::with_capacity(active.len());
        for entry in active {
            if self.symbols[entry.ci] & changed == 0 {
                next_active.push(entry.clone());
                continue;
            }
            match (&self.conjuncts[entry.ci], entry.pending) {
                (CFormula::Forall(body), Some(mask)) => {
                    let mut left = mask;
                    let mut bits = mask;
                    while bits != 0 {
                        let x = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        env.clear();
                        env.push(x + 1);
                        match self.eval(body, &mut env) {
                            Tv::False => return Control::Pruned,
                            Tv::True => left &= !(1u128 << x),
                            Tv::Unknown => {}
                        }
                    }
                    if left != 0 {
                        next_active.push(Entry { ci: entry.ci, pending: Some(left) });
                    }
                }
                _ => {
                    env.clear();
                    match self.eval(&self.conjuncts[entry.ci], &mut env) {
                        Tv::False => return Control::Pruned,
                        Tv::Unknown => next_active.push(entry.clone()),
                        Tv::True => {}
                    }
                }
            }
        }
        if next_active.is_empty() {
            // True under every completion: freeze minimally and verify.
            match self.freeze() {
                Ok(s) if self.mode.admits(&s) => return Control::Found(s),
                _ => return Control::Pruned,
            }
        }
        if idx == self.slots.len() {
            // Fully assigned yet still undetermined: impossible.
            return Control::Pruned;
        }
        let p = self.vocab.pif_symbols().len();
        let u = self.vocab.unary_symbols().len();
        match self.slots[idx] {
            Slot::Constant(c) => {
                let sym = symbol_bit(p + u + c);
                let cap = (self.max_intro + 1).min(self.n);
                for v in 1..=cap {
                    self.consts[c] = Some(v);
                    let saved = self.max_intro;
                    self.max_intro = self.max_intro.max(v);
                    match self.dfs(idx + 1, &next_active, sym) {
                        Control::Pruned => {}
                        out => return out,
                    }
                    self.max_intro = saved;
                }
                self.consts[c] = None;
                Control::Pruned
            }
            Slot::Pif(f, a) => {
                let sym = symbol_bit(f);
                let cap = (self.max_intro.max(a) + 1).min(self.n);
                for t in 1..=cap {
                    if self.pif_inv[f][t - 1].is_some() {
                        continue;
                    }
                    let Some(added) = self.push_edge(a, t) else { continue };
                    self.pif[f][a - 1] = PifCell::To(t);
                    self.pif_inv[f][t - 1] = Some(a);
                    let saved = self.max_intro;
                    self.max_intro = self.max_intro.max(t).max(a);
                    let out = self.dfs(idx + 1, &next_active, sym);
                    self.max_intro = saved;
                    self.pif[f][a - 1] = PifCell::Unset;
                    self.pif_inv[f][t - 1] = None;
                    if added {
                        self.pop_edge(a, t);
                    }
                    match out {
                        Control::Pruned => {}
                        other => return other,
                    }
                }
                self.pif[f][a - 1] = PifCell::Undef;
                let saved = self.max_intro;
                self.max_intro = self.max_intro.max(a);
                let out = self.dfs(idx + 1, &next_active, sym);
                self.max_intro = saved;
                self.pif[f][a - 1] = PifCell::Unset;
                out
            }
            Slot::Unary(r, e) => {
                let sym = symbol_bit(p + r);
                for v in [false, true] {
                    self.unary[r][e - 1] = Some(v);
                    match self.dfs(idx + 1, &next_active, sym) {
                        Control::Pruned => {}
                        out => return out,
                    }
                }
                self.unary[r][e - 1] = None;
                Control::Pruned
            }
        }
    }
}

/// Searches for a model of the closed sentence `phi` with exactly `n`
/// elements under `mode`.  Complete up to the node budget: `Unknown` is
/// returned only when the budget ran out, never as a silent negative.
pub fn model_exists(
    phi: &Formula,
    vocab: &Vocabulary,
    n: usize,
    mode: SearchMode,
    budget: u64,
) -> Result<(Outcome, SearchStats), SearchError> {
    if n == 0 {
        return Err(SearchError::Invalid("sizes start at 1".into()));
    }
    if !phi.is_closed() {
        return Err(SearchError::Invalid("spectrum queries need a closed sentence".into()));
    }
    let mut searcher = Searcher::new(phi, vocab, n, mode, budget)?;
    let active: Vec<Entry> = searcher
        .conjuncts
        .iter()
        .enumerate()
        .map(|(ci, g)| {
            let pending = match g {
                CFormula::Forall(_) if n <= 128 => Some(if n == 128 {
                    u128::MAX
                } else {
                    (1u128 << n) - 1
                }),
                _ => None,
            };
            Entry { ci, pending }
        })
        .collect();
    let control = if vocab.pif_symbols().is_empty() {
        searcher.dfs(0, &active, u64::MAX)
    } else {
        // The first pif, taken alone, is determined up to isomorphism by
        // its multiset of chain and cycle lengths; fixing a canonical
        // labeling per shape is a far stronger symmetry break than the
        // least-number rule applied cell by cell.
        let mut control = Control::Pruned;
        // Largest chain totals first: witnesses tend to live on few long
        // chains, while the all-cycle shapes only ever get refuted.
        'shapes: for k in (0..=n).rev() {
            for chains in partitions(k) {
                for cycles in partitions(n - k) {
                    let Some(added) = searcher.apply_shape(&chains, &cycles) else {
                        continue;
                    };
                    searcher.max_intro = n;
                    let r = searcher.dfs(0, &active, u64::MAX);
                    searcher.max_intro = 0;
                    searcher.undo_shape(added);
                    match r {
                        Control::Pruned => {}
                        other => {
                            control = other;
                            break 'shapes;
                        }
                    }
                }
            }
        }
        control
    };
    let out = match control {
        Control::Found(s) => {
            let ev = Evaluator::new(vocab, phi, vec![])?;
            if !ev.eval(&s, &Assignment::new())? || !mode.admits(&s) {
                return Err(SearchError::Internal);
            }
            Outcome::Witness(s)
        }
        Control::Pruned => Outcome::NoModel,
        Control::Abort => Outcome::Unknown,
    };
    Ok((out, searcher.stats))
}

#[derive(Debug)]
pub struct SpectrumResult {
    pub lo: usize,
    pub hi: usize,
    pub members: BTreeSet<usize>,
    pub unknown: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, FiniteStructure>,
    pub stats: BTreeMap<usize, SearchStats>,
}

/// Membership for every size in [lo, hi].
pub fn spectrum_range(
    phi: &Formula,
    vocab: &Vocabulary,
    lo: usize,
    hi: usize,
    mode: SearchMode,
    budget: u64,
) -> Result<SpectrumResult, SearchError> {
    if lo < 1 || lo > hi {
        return Err(SearchError::Invalid("need 1 <= lo <= hi".into()));
    }
    let mut out = SpectrumResult {
        lo,
        hi,
        members: BTreeSet::new(),
        unknown: BTreeSet::new(),
        witnesses: BTreeMap::new(),
        stats: BTreeMap::new(),
    };
    for n in lo..=hi {
        let (res, stats) = model_exists(phi, vocab, n, mode, budget)?;
        out.stats.insert(n, stats);
        match res {
            Outcome::Witness(s) => {
                out.members.insert(n);
                out.witnesses.insert(n, s);
            }
            Outcome::Unknown => {
                out.unknown.insert(n);
            }
            Outcome::NoModel => {}
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Degree-3 gadget
// ---------------------------------------------------------------------------

/// Slot kinds along a gadget path: the P-side carries outgoing arcs of each
/// PIF, the Q-side incoming ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SlotKind {
    P(usize),
    Q(usize),
}

fn marker(kind: SlotKind) -> String {
    match kind {
        SlotKind::P(i) => format!("P{}", i + 1),
        SlotKind::Q(i) => format!("Q{}", i + 1),
    }
}

fn carried(name: &str) -> String {
    format!("U_{name}")
}

/// Replaces every element of `s` by a 2d-vertex path gadget (d = number of
/// PIFs) and every pif arc by one cross edge, appends `l` isolated
/// vertices, and returns the result as a colored graph (edge matchings as
/// involution PIFs `e0..`, slot markers `P1..Pd`/`Q1..Qd`, original unary
/// relations carried on the P1 vertex).  With `planar_order` the slots
/// follow the rotation of a planar embedding, so planar inputs yield
/// planar outputs.
pub fn pif_to_degree3(
    s: &FiniteStructure,
    l: usize,
    planar_order: bool,
) -> Result<FiniteStructure, SearchError> {
    let d = s.vocab().pif_symbols().len();
    let n = s.size();
    if d == 0 {
        return Err(SearchError::Invalid("the gadget needs at least one pif".into()));
    }
    if !s.vocab().constant_symbols().is_empty() {
        return Err(SearchError::Invalid("constants are not carried by the gadget".into()));
    }
    for f in s.vocab().pif_symbols() {
        for (a, b) in s.pif_entries(f).unwrap() {
            if a == b {
                return Err(SearchError::Invalid(format!(
                    "pif `{f}` fixes {a}; fixpoints make the gadget ambiguous"
                )));
            }
        }
    }

    // Slot order per element.
    let default_order: Vec<SlotKind> =
        (0..d).map(SlotKind::P).chain((0..d).map(SlotKind::Q)).collect();
    let orders: Vec<Vec<SlotKind>> = if planar_order {
        let g = structure::gaifman_graph(s);
        let emb = planarity::planar_embedding(&g)
            .ok_or_else(|| SearchError::Invalid("planar_order requested on a non-planar structure".into()))?;
        (1..=n)
            .map(|a| {
                let mut order = Vec::new();
                for &b in emb.rotation(a) {
                    // Arcs of the Gaifman edge {a,b}, grouped per channel;
                    // the lower endpoint lists them ascending, the higher
                    // one descending, so parallel arcs nest without
                    // crossing.
                    let mut arcs = Vec::new();
                    for (i, f) in s.vocab().pif_symbols().iter().enumerate() {
                        if s.pif(f, a) == Some(b) {
                            arcs.push(SlotKind::P(i));
                        }
                        if s.pif(f, b) == Some(a) {
                            arcs.push(SlotKind::Q(i));
                        }
                    }
                    arcs.sort();
                    if a > b {
                        arcs.reverse();
                    }
                    order.extend(arcs);
                }
                for k in &default_order {
                    if !order.contains(k) {
                        order.push(*k);
                    }
                }
                order
            })
            .collect()
    } else {
        vec![default_order.clone(); n]
    };

    // Vertex ids: gadget a occupies (a-1)*2d+1 ..= a*2d in slot order.
    let size = 2 * d * n + l;
    let vertex = |a: Element, kind: SlotKind| -> usize {
        (a - 1) * 2 * d + orders[a - 1].iter().position(|k| *k == kind).unwrap() + 1
    };
    let mut g = Graph::new(size);
    for a in 1..=n {
        for w in 0..2 * d - 1 {
            g.add_edge((a - 1) * 2 * d + w + 1, (a - 1) * 2 * d + w + 2);
        }
    }
    for (i, f) in s.vocab().pif_symbols().iter().enumerate() {
        for (a, b) in s.pif_entries(f).unwrap() {
            g.add_edge(vertex(a, SlotKind::P(i)), vertex(b, SlotKind::Q(i)));
        }
    }

    let colors = structure::edge_coloring(&g, 6)
        .ok_or_else(|| SearchError::Invalid("edge coloring exceeded 6 colors".into()))?;
    let used = colors.iter().copied().max().map_or(0, |m| m + 1);
    let mut unary: Vec<String> = default_order.iter().map(|&k| marker(k)).collect();
    unary.extend(s.vocab().unary_symbols().iter().map(|u| carried(u)));
    let pif_names: Vec<String> = (0..used).map(|i| format!("e{i}")).collect();
    let vocab = Vocabulary::new(unary, pif_names, vec![]).unwrap();
    let mut b = StructureBuilder::new(vocab, size)?;
    for ((u, v), c) in g.edges().into_iter().zip(colors) {
        b.set_pif(&format!("e{c}"), u, v)?;
        b.set_pif(&format!("e{c}"), v, u)?;
    }
    for a in 1..=n {
        for &k in &orders[a - 1] {
            b.add_unary(&marker(k), vertex(a, k))?;
        }
        for u in s.vocab().unary_symbols() {
            if s.unary(u, a) == Some(true) {
                b.add_unary(&carried(u), vertex(a, SlotKind::P(0)))?;
            }
        }
    }
    Ok(b.build()?)
}

/// Inverts [`pif_to_degree3`]: reads the gadget blocks of `t` back into a
/// structure over `vocab` (the original vocabulary).
pub fn decode_degree3(
    t: &FiniteStructure,
    vocab: &Vocabulary,
) -> Result<FiniteStructure, SearchError> {
    let d = vocab.pif_symbols().len();
    if d == 0 || !vocab.constant_symbols().is_empty() {
        return Err(SearchError::Invalid("not a gadget vocabulary".into()));
    }
    // Marked vertices form the gadget blocks; trailing vertices are the
    // isolated padding.
    let mut marked = 0;
    for i in 0..d {
        for k in [SlotKind::P(i), SlotKind::Q(i)] {
            marked += t
                .unary_set(&marker(k))
                .ok_or_else(|| SearchError::Invalid(format!("missing marker {}", marker(k))))?
                .len();
        }
    }
    if marked % (2 * d) != 0 {
        return Err(SearchError::Invalid("marker count is not a whole number of blocks".into()));
    }
    let n = marked / (2 * d);
    let block_of = |v: usize| (v - 1) / (2 * d) + 1;
    let gaifman = structure::gaifman_graph(t);

    let mut b = StructureBuilder::new(vocab.clone(), n.max(1))?;
    for (i, f) in vocab.pif_symbols().iter().enumerate() {
        for p in t.unary_set(&marker(SlotKind::P(i))).unwrap() {
            let a = block_of(p);
            for &w in gaifman.neighbors(p) {
                if block_of(w) != a && t.unary(&marker(SlotKind::Q(i)), w) == Some(true) {
                    b.set_pif(f, a, block_of(w))?;
                }
            }
        }
    }
    for u in vocab.unary_symbols() {
        for v in t
            .unary_set(&carried(u))
            .ok_or_else(|| SearchError::Invalid(format!("missing carried relation U_{u}")))?
        {
            b.add_unary(u, block_of(v))?;
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;
    use crate::logic::parse_formula;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn vocab_afg() -> Vocabulary {
        Vocabulary::new(vec!["A"], vec!["f", "g"], vec![]).unwrap()
    }

    #[test]
    fn search_agrees_with_brute_force_on_small_sizes() {
        let vocab = vocab_afg();
        let sentences = [
            "forall x. def(f(x)) & f(f(x)) = x & !(f(x) = x)",
            "exists x. A(x) & !def(f(x)) & forall y. def(g(y))",
            "forall x. (A(x) -> def(f(x))) & (!A(x) -> !def(g(x)))",
            "exists x. !(x = x)",
            "forall x. g(x) = f(f(x)) & def(f(x))",
        ];
        for src in sentences {
            let phi = parse_formula(src, &vocab).unwrap();
            for n in 1..=3 {
                let expect = enumerate::brute_force_model_exists(&phi, &vocab, n).unwrap();
                let (out, stats) =
                    model_exists(&phi, &vocab, n, SearchMode::All, DEFAULT_BUDGET).unwrap();
                assert!(!stats.budget_exhausted);
                match out {
                    Outcome::Witness(_) => assert!(expect, "{src} at n={n}"),
                    Outcome::NoModel => assert!(!expect, "{src} at n={n}"),
                    Outcome::Unknown => panic!("unexpected unknown for {src} at n={n}"),
                }
            }
        }
    }

    #[test]
    fn modes_restrict_the_witnesses() {
        let vocab = Vocabulary::new(Vec::<&str>::new(), vec!["f"], vec![]).unwrap();
        let phi = parse_formula("forall x. def(f(x)) & f(f(x)) = x & !(f(x) = x)", &vocab).unwrap();
        let find = |mode| model_exists(&phi, &vocab, 2, mode, DEFAULT_BUDGET).unwrap().0;
        assert!(matches!(find(SearchMode::All), Outcome::Witness(_)));
        assert!(matches!(find(SearchMode::DegreeAtMost(1)), Outcome::Witness(_)));
        assert!(matches!(find(SearchMode::DegreeAtMost(0)), Outcome::NoModel));
        if let Outcome::Witness(s) =
            model_exists(&phi, &vocab, 2, SearchMode::PlanarAndDegree(1), DEFAULT_BUDGET)
                .unwrap()
                .0
        {
            assert!(SearchMode::PlanarAndDegree(1).admits(&s));
        } else {
            panic!("expected a planar degree-1 witness");
        }
    }

    #[test]
    fn planar_mode_excludes_a_forced_clique() {
        // Two total fixpoint-free pifs whose images and preimages are
        // pairwise distinct force the Gaifman graph of a 5-element model
        // to be the (non-planar) complete graph.
        let vocab = Vocabulary::new(Vec::<&str>::new(), vec!["f", "g"], vec![]).unwrap();
        let phi = parse_formula(
            "forall x. def(f(x)) & def(g(x)) \
             & !(f(x) = x) & !(g(x) = x) \
             & !(f(x) = g(x)) & !(f(x) = f^-1(x)) & !(g(x) = g^-1(x)) \
             & !(f^-1(x) = g(x)) & !(f(x) = g^-1(x)) & !(f^-1(x) = g^-1(x))",
            &vocab,
        )
        .unwrap();
        let (all, _) = model_exists(&phi, &vocab, 5, SearchMode::All, DEFAULT_BUDGET).unwrap();
        let Outcome::Witness(s) = all else { panic!("expected a clique witness") };
        assert_eq!(structure::max_degree(&structure::gaifman_graph(&s)), 4);
        let (planar, _) =
            model_exists(&phi, &vocab, 5, SearchMode::Planar, DEFAULT_BUDGET).unwrap();
        assert!(matches!(planar, Outcome::NoModel));
    }

    #[test]
    fn an_exhausted_budget_is_reported_as_unknown() {
        let vocab = vocab_afg();
        let phi = parse_formula("forall x. def(f(x)) & f(f(x)) = x & !(f(x) = x)", &vocab).unwrap();
        let (out, stats) = model_exists(&phi, &vocab, 4, SearchMode::All, 1).unwrap();
        assert!(matches!(out, Outcome::Unknown));
        assert!(stats.budget_exhausted);
    }

    fn random_structure(rng: &mut StdRng, n: usize) -> FiniteStructure {
        let vocab = vocab_afg();
        let mut b = StructureBuilder::new(vocab, n).unwrap();
        for f in ["f", "g"] {
            let mut used = vec![false; n];
            for a in 1..=n {
                if rng.gen_bool(0.7) {
                    let t = rng.gen_range(1..=n);
                    if t != a && !used[t - 1] {
                        b.set_pif(f, a, t).unwrap();
                        used[t - 1] = true;
                    }
                }
            }
        }
        for e in 1..=n {
            if rng.gen_bool(0.5) {
                b.add_unary("A", e).unwrap();
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn gadget_size_degree_and_round_trip() {
        let mut rng = StdRng::seed_from_u64(11);
        for trial in 0..40 {
            let n = rng.gen_range(2..=6);
            let l = [0, 3][trial % 2];
            let s = random_structure(&mut rng, n);
            let t = pif_to_degree3(&s, l, false).unwrap();
            assert_eq!(t.size(), 2 * 2 * n + l);
            assert!(structure::max_degree(&structure::gaifman_graph(&t)) <= 3);
            assert_eq!(decode_degree3(&t, s.vocab()).unwrap(), s);
        }
    }

    #[test]
    fn planar_inputs_stay_planar_through_the_gadget() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 25 {
            let n = rng.gen_range(3..=8);
            let s = random_structure(&mut rng, n);
            if !planarity::is_planar(&structure::gaifman_graph(&s)) {
                continue;
            }
            let t = pif_to_degree3(&s, 1, true).unwrap();
            assert!(planarity::is_planar(&structure::gaifman_graph(&t)));
            assert_eq!(decode_degree3(&t, s.vocab()).unwrap(), s);
            checked += 1;
        }
    }

    #[test]
    fn gadget_rejects_fixpoints_and_constants() {
        let vocab = Vocabulary::new(Vec::<&str>::new(), vec!["f"], vec![]).unwrap();
        let mut b = StructureBuilder::new(vocab, 2).unwrap();
        b.set_pif("f", 1, 1).unwrap();
        let s = b.build().unwrap();
        assert!(matches!(pif_to_degree3(&s, 0, false), Err(SearchError::Invalid(_))));

        let vocab = Vocabulary::new(Vec::<&str>::new(), vec!["f"], vec!["c"]).unwrap();
        let mut b = StructureBuilder::new(vocab, 2).unwrap();
        b.set_constant("c", 1).unwrap();
        let s = b.build().unwrap();
        assert!(matches!(pif_to_degree3(&s, 0, false), Err(SearchError::Invalid(_))));
    }
}
