//! Nondeterministic single-tape Turing machines and queue machines:
//! bounded accepting-run search, and the trace-to-structure encoders with
//! size accounting.
//!
//! The Turing encoder represents a run by elements standing for pairs
//! (tape cell, time interval): `fu` links consecutive intervals of one
//! cell, `fl`/`fr` link a cell to its left/right neighbor over a compatible
//! interval, `M`/`Tl`/`Tr` classify elements as head/left-of-head/right-of-
//! head, and `S_q`/`L_c` carry states and letters.  The queue encoder uses
//! the final tape as universe with a successor PIF and `frw` mapping each
//! read position to the simultaneous write position.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::logic::Vocabulary;
use crate::structure::{FiniteStructure, StructureBuilder, StructureError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("machine is malformed: {0}")]
    Invalid(String),
    #[error("padding {pad} is insufficient: the encoding would disturb the tape end at cell {cell}")]
    InsufficientPadding { pad: usize, cell: i64 },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub const BLANK: char = '_';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    L,
    R,
}

#[derive(Debug, Clone)]
pub struct TuringMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<char>,
    /// (state, read letter) -> choices of (next state, written letter, move).
    pub transitions: BTreeMap<(String, char), Vec<(String, char, Dir)>>,
    pub initial: String,
    pub finals: BTreeSet<String>,
}

impl TuringMachine {
    pub fn validate(&self) -> Result<(), MachineError> {
        if self.alphabet.is_empty() {
            return Err(MachineError::Invalid("empty alphabet".into()));
        }
        if !self.alphabet.contains(&BLANK) {
            return Err(MachineError::Invalid("alphabet must contain the blank `_`".into()));
        }
        if !self.states.contains(&self.initial) {
            return Err(MachineError::Invalid("initial state not listed".into()));
        }
        for ((q, c), outs) in &self.transitions {
            if self.finals.contains(q) {
                return Err(MachineError::Invalid(format!(
                    "final state `{q}` has outgoing transitions"
                )));
            }
            if !self.states.contains(q) || !self.alphabet.contains(c) {
                return Err(MachineError::Invalid(format!("unknown symbol in ({q}, {c})")));
            }
            for (q2, c2, _) in outs {
                if !self.states.contains(q2) || !self.alphabet.contains(c2) {
                    return Err(MachineError::Invalid(format!(
                        "unknown symbol in transition target ({q2}, {c2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One configuration: sparse tape (blank where absent), head cell, state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub tape: BTreeMap<i64, char>,
    pub head: i64,
    pub state: String,
}

impl Config {
    pub fn read(&self, cell: i64) -> char {
        self.tape.get(&cell).copied().unwrap_or(BLANK)
    }
}

/// An accepting run: configurations 0..=T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub configs: Vec<Config>,
}

impl Trace {
    /// Number of steps.
    pub fn time(&self) -> usize {
        self.configs.len() - 1
    }

    fn cell_range(&self) -> (i64, i64) {
        let mut lo = 0i64;
        let mut hi = 0i64;
        for c in &self.configs {
            lo = lo.min(c.head);
            hi = hi.max(c.head);
            for (&x, &l) in &c.tape {
                if l != BLANK {
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
            }
        }
        (lo, hi)
    }

    /// Cells ever visited or non-blank.
    pub fn space(&self) -> usize {
        let (lo, hi) = self.cell_range();
        (hi - lo + 1) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TmSearchResult {
    Accepting(Trace),
    /// No accepting run exists within the bounds and none was cut off.
    Rejecting,
    /// Some branch exceeded the time or space bound.
    BoundsExceeded,
}

/// Depth-first bounded search for an accepting run on `input` (written from
/// cell 0, head starting at cell 0).  Deterministic: transition choices are
/// explored in list order.
pub fn tm_search(
    m: &TuringMachine,
    input: &str,
    time_bound: usize,
    space_bound: usize,
) -> Result<TmSearchResult, MachineError> {
    m.validate()?;
    let mut tape = BTreeMap::new();
    for (i, c) in input.chars().enumerate() {
        if !m.alphabet.contains(&c) {
            return Err(MachineError::Invalid(format!("input letter `{c}` not in alphabet")));
        }
        tape.insert(i as i64, c);
    }
    let start = Config { tape, head: 0, state: m.initial.clone() };
    let mut truncated = false;
    let mut path = vec![start];
    if dfs(m, &mut path, time_bound, space_bound, &mut truncated) {
        return Ok(TmSearchResult::Accepting(Trace { configs: path }));
    }
    Ok(if truncated { TmSearchResult::BoundsExceeded } else { TmSearchResult::Rejecting })
}

fn space_of(path: &[Config]) -> usize {
    Trace { configs: path.to_vec() }.space()
}

fn dfs(
    m: &TuringMachine,
    path: &mut Vec<Config>,
    time_bound: usize,
    space_bound: usize,
    truncated: &mut bool,
) -> bool {
    let cur = path.last().unwrap().clone();
    if m.finals.contains(&cur.state) {
        return true;
    }
    if path.len() - 1 >= time_bound {
        *truncated = true;
        return false;
    }
    let Some(outs) = m.transitions.get(&(cur.state.clone(), cur.read(cur.head))) else {
        return false;
    };
    for (q2, c2, dir) in outs.clone() {
        let mut next = cur.clone();
        next.tape.insert(next.head, c2);
        next.head += match dir {
            Dir::L => -1,
            Dir::R => 1,
        };
        next.state = q2;
        path.push(next);
        if space_of(path) > space_bound {
            *truncated = true;
        } else if dfs(m, path, time_bound, space_bound, truncated) {
            return true;
        }
        path.pop();
    }
    false
}

/// Per-step accounting of the encoder.
#[derive(Debug, Clone, Copy)]
pub struct StepStats {
    /// Elements created while processing this step.
    pub new_elements: usize,
    /// Potential of the head element after the step.
    pub potential: usize,
}

/// The encoded structure plus the bookkeeping the size argument relies on.
#[derive(Debug)]
pub struct TmEncoding {
    pub structure: FiniteStructure,
    /// Elements inside R (excluding padding dummies).
    pub r_size: usize,
    /// Size of the initial layer (S + 2 pad).
    pub bottom_size: usize,
    /// Potential of the initial configuration.
    pub initial_potential: usize,
    /// One entry per computation step.
    pub steps: Vec<StepStats>,
    pub pad: usize,
}

pub fn default_pad(time: usize) -> usize {
    usize::max(1, ((time + 2) as f64).log2().ceil() as usize)
}

pub fn tm_vocabulary(m: &TuringMachine) -> Vocabulary {
    let mut unary = vec!["R".to_string(), "M".to_string(), "Tl".to_string(), "Tr".to_string()];
    for q in &m.states {
        unary.push(format!("S_{q}"));
    }
    for &c in &m.alphabet {
        unary.push(letter_symbol(c));
    }
    unary.push("D".to_string());
    Vocabulary::new(
        unary,
        vec!["fl".to_string(), "fr".to_string(), "fu".to_string()],
        vec![],
    )
    .unwrap()
}

pub fn letter_symbol(c: char) -> String {
    format!("L_{c}")
}

/// An element of the encoding: cell x over the time interval [y1, y2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Region {
    x: i64,
    y1: usize,
    y2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Head,
    Left,
    Right,
}

struct Layout {
    /// Creation times per cell, ascending, always starting with 0.
    creations: BTreeMap<i64, Vec<usize>>,
    per_step_new: Vec<usize>,
}

/// Runs the layer procedure: each step creates elements at the old and new
/// head cells, then closes the layer under the growth rule (extend while a
/// same-side neighbor over the current interval is missing).
fn build_layout(t: &Trace, pad: usize) -> Result<Layout, MachineError> {
    let (vlo, vhi) = t.cell_range();
    let lo = vlo - pad as i64;
    let hi = vhi + pad as i64;
    let mut creations: BTreeMap<i64, Vec<usize>> = (lo..=hi).map(|x| (x, vec![0])).collect();
    let mut per_step_new = Vec::new();

    for step in 1..=t.time() {
        let p_prev = t.configs[step - 1].head;
        let p_new = t.configs[step].head;
        let mut created: BTreeSet<i64> = BTreeSet::new();
        let mut queue: VecDeque<i64> = VecDeque::new();
        for x in [p_prev, p_new] {
            if created.insert(x) {
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            // c_prev: latest creation at x before this step.
            let c_prev = *creations[&x].last().unwrap();
            for (dir, cond) in [(1i64, x >= p_new), (-1i64, x <= p_new)] {
                if !cond {
                    continue;
                }
                let nb = x + dir;
                if created.contains(&nb) {
                    continue; // neighbor created this step: direct link exists
                }
                if nb < lo || nb > hi {
                    return Err(MachineError::InsufficientPadding { pad, cell: nb });
                }
                let nb_hist = &creations[&nb];
                // Fallback link goes through the previous interval at x: it
                // exists when the neighbor's interval starting at c_prev is
                // still current.
                let fallback = *nb_hist.last().unwrap() == c_prev;
                if !fallback {
                    if nb == lo || nb == hi {
                        // The end elements l and r must keep their full-run
                        // intervals.
                        return Err(MachineError::InsufficientPadding { pad, cell: nb });
                    }
                    created.insert(nb);
                    queue.push_back(nb);
                }
            }
        }
        for &x in &created {
            creations.get_mut(&x).unwrap().push(step);
        }
        per_step_new.push(created.len());
    }
    Ok(Layout { creations, per_step_new })
}

struct Encoder<'a> {
    trace: &'a Trace,
    layout: Layout,
    regions: Vec<Region>,
    index: BTreeMap<Region, usize>,
    end_time: usize,
}

impl<'a> Encoder<'a> {
    fn new(trace: &'a Trace, layout: Layout) -> Self {
        let end_time = trace.time() + 1;
        let mut regions = Vec::new();
        for (&x, hist) in &layout.creations {
            for (i, &y1) in hist.iter().enumerate() {
                let y2 = hist.get(i + 1).copied().unwrap_or(end_time);
                regions.push(Region { x, y1, y2 });
            }
        }
        let index = regions.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        Encoder { trace, layout, regions, index, end_time }
    }

    fn role(&self, r: Region) -> Role {
        let heads = || (r.y1..r.y2.min(self.end_time)).map(|t| self.trace.configs[t].head);
        if r.y2 == r.y1 + 1 && self.trace.configs[r.y1].head == r.x {
            Role::Head
        } else if heads().all(|p| p < r.x) {
            Role::Right
        } else {
            debug_assert!(heads().all(|p| p > r.x), "mixed-side region {r:?}");
            Role::Left
        }
    }

    /// The region at cell x whose interval starts at y1, if any.
    fn at(&self, x: i64, y1: usize) -> Option<Region> {
        let hist = self.layout.creations.get(&x)?;
        let i = hist.iter().position(|&c| c == y1)?;
        let y2 = hist.get(i + 1).copied().unwrap_or(self.end_time);
        Some(Region { x, y1, y2 })
    }

    fn up(&self, r: Region) -> Option<Region> {
        if r.y2 >= self.end_time {
            None
        } else {
            self.at(r.x, r.y2)
        }
    }

    /// fl/fr: the neighbor region starting at the same time whose interval
    /// extends at least as far; defined only on the matching side.
    fn side_link(&self, r: Region, dir: i64) -> Option<Region> {
        let role = self.role(r);
        let allowed = role == Role::Head || role == if dir > 0 { Role::Right } else { Role::Left };
        if !allowed {
            return None;
        }
        let nb = self.at(r.x + dir, r.y1)?;
        if nb.y2 >= r.y2 {
            Some(nb)
        } else {
            None
        }
    }

    /// F (capital): the side link, or the side link of the region below.
    fn cap_link(&self, r: Region, dir: i64) -> Option<Region> {
        if let Some(nb) = self.side_link(r, dir) {
            return Some(nb);
        }
        let below = self.at(r.x, *self.layout.creations[&r.x]
            .iter()
            .rev()
            .find(|&&c| c < r.y1)?)?;
        // The fallback must cover r's interval start; its own side link is
        // taken regardless of r's role restriction on the lower element.
        let nb = self.at(below.x + dir, below.y1)?;
        if nb.y2 >= below.y2 {
            Some(nb)
        } else {
            None
        }
    }

    /// Potential of the head element of configuration `t`: undefined side
    /// links along both capital-link chains.
    fn potential(&self, t: usize) -> usize {
        let head = self
            .at(self.trace.configs[t].head, self.head_start(t))
            .expect("head region exists");
        let mut total = 0;
        for dir in [1i64, -1] {
            let mut cur = head;
            loop {
                if self.side_link(cur, dir).is_none() {
                    total += 1;
                }
                match self.cap_link(cur, dir) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        total
    }

    fn head_start(&self, t: usize) -> usize {
        let x = self.trace.configs[t].head;
        *self.layout.creations[&x].iter().rev().find(|&&c| c <= t).unwrap()
    }
}

/// Encodes an accepting run.  With `exact_four`, isolated non-R dummy
/// elements (marked `D`) top the universe up to exactly
/// S + 4T + 2 pad elements.
pub fn encode_trace(
    m: &TuringMachine,
    t: &Trace,
    pad: usize,
    exact_four: bool,
) -> Result<TmEncoding, MachineError> {
    if pad == 0 {
        return Err(MachineError::Invalid("pad must be at least 1".into()));
    }
    let layout = build_layout(t, pad)?;
    let enc = Encoder::new(t, layout);
    let r_size = enc.regions.len();
    let s_plus = t.space() + 2 * pad;
    let budget = s_plus + 4 * t.time();
    let size = if exact_four {
        assert!(r_size <= budget, "amortized bound violated: {r_size} > {budget}");
        budget
    } else {
        r_size
    };

    let vocab = tm_vocabulary(m);
    let mut b = StructureBuilder::new(vocab, size)?;
    for (i, &r) in enc.regions.iter().enumerate() {
        let e = i + 1;
        b.add_unary("R", e)?;
        match enc.role(r) {
            Role::Head => {
                b.add_unary("M", e)?;
                b.add_unary(&format!("S_{}", t.configs[r.y1].state), e)?;
            }
            Role::Left => b.add_unary("Tl", e)?,
            Role::Right => b.add_unary("Tr", e)?,
        }
        b.add_unary(&letter_symbol(t.configs[r.y1].read(r.x)), e)?;
        if let Some(up) = enc.up(r) {
            b.set_pif("fu", e, enc.index[&up] + 1)?;
        }
        if let Some(nb) = enc.side_link(r, -1) {
            b.set_pif("fl", e, enc.index[&nb] + 1)?;
        }
        if let Some(nb) = enc.side_link(r, 1) {
            b.set_pif("fr", e, enc.index[&nb] + 1)?;
        }
    }
    for e in r_size + 1..=size {
        b.add_unary("D", e)?;
    }

    let steps = (1..=t.time())
        .map(|step| StepStats {
            new_elements: enc.layout.per_step_new[step - 1],
            potential: enc.potential(step),
        })
        .collect();
    Ok(TmEncoding {
        structure: b.build()?,
        r_size,
        bottom_size: s_plus,
        initial_potential: enc.potential(0),
        steps,
        pad,
    })
}

// ---------------------------------------------------------------------------
// Queue machines
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueTransition {
    pub from: String,
    pub read: String,
    pub to: String,
    pub write: String,
}

#[derive(Debug, Clone)]
pub struct QueueMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<char>,
    pub transitions: Vec<QueueTransition>,
    pub initial: String,
    pub finals: BTreeSet<String>,
}

impl QueueMachine {
    pub fn validate(&self) -> Result<(), MachineError> {
        for tr in &self.transitions {
            if tr.read.is_empty() || tr.write.is_empty() {
                return Err(MachineError::Invalid(
                    "queue transitions must read and write at least one letter".into(),
                ));
            }
            if self.finals.contains(&tr.from) {
                return Err(MachineError::Invalid(format!(
                    "final state `{}` has outgoing transitions",
                    tr.from
                )));
            }
            for w in [&tr.read, &tr.write] {
                for c in w.chars() {
                    if !self.alphabet.contains(&c) {
                        return Err(MachineError::Invalid(format!("letter `{c}` not in alphabet")));
                    }
                }
            }
        }
        if !self.states.contains(&self.initial) {
            return Err(MachineError::Invalid("initial state not listed".into()));
        }
        Ok(())
    }
}

/// One step of a queue run: 1-based read position, 1-based write position,
/// index of the transition used.
#[derive(Debug, Clone, Copy)]
pub struct QueueStep {
    pub read_pos: usize,
    pub write_pos: usize,
    pub transition: usize,
}

#[derive(Debug, Clone)]
pub struct QueueTrace {
    pub initial: String,
    pub final_tape: String,
    pub steps: Vec<QueueStep>,
    /// States before each step, then the final state.
    pub states: Vec<String>,
}

#[derive(Debug)]
pub struct QueueRunResult {
    /// Achievable final tape lengths within the cap.
    pub lengths: BTreeSet<usize>,
    /// One witness per achieved length (first found in search order).
    pub witnesses: BTreeMap<usize, QueueTrace>,
}

/// Exhaustive exploration of all runs whose tape stays within `max_len`.
/// Terminates because every step strictly lengthens the tape.
pub fn queue_run(
    m: &QueueMachine,
    initial: &str,
    max_len: usize,
) -> Result<QueueRunResult, MachineError> {
    m.validate()?;
    if initial.is_empty() || initial.len() > max_len {
        return Err(MachineError::Invalid(
            "initial word must be non-empty and within max_len".into(),
        ));
    }
    let mut result = QueueRunResult { lengths: BTreeSet::new(), witnesses: BTreeMap::new() };
    let mut steps: Vec<QueueStep> = Vec::new();
    let mut states: Vec<String> = vec![m.initial.clone()];
    let mut tape = initial.to_string();
    explore(m, &mut tape, 0, &mut steps, &mut states, max_len, initial, &mut result);
    Ok(result)
}

#[allow(clippy::too_many_arguments)]
fn explore(
    m: &QueueMachine,
    tape: &mut String,
    read: usize,
    steps: &mut Vec<QueueStep>,
    states: &mut Vec<String>,
    max_len: usize,
    initial: &str,
    result: &mut QueueRunResult,
) {
    let state = states.last().unwrap().clone();
    if m.finals.contains(&state) {
        let n = tape.len();
        result.lengths.insert(n);
        result.witnesses.entry(n).or_insert_with(|| QueueTrace {
            initial: initial.to_string(),
            final_tape: tape.clone(),
            steps: steps.clone(),
            states: states.clone(),
        });
        return;
    }
    for (i, tr) in m.transitions.iter().enumerate() {
        if tr.from != state {
            continue;
        }
        if read + tr.read.len() > tape.len() {
            continue;
        }
        if &tape[read..read + tr.read.len()] != tr.read {
            continue;
        }
        if tape.len() + tr.write.len() > max_len {
            continue;
        }
        steps.push(QueueStep { read_pos: read + 1, write_pos: tape.len() + 1, transition: i });
        states.push(tr.to.clone());
        tape.push_str(&tr.write);
        explore(m, tape, read + tr.read.len(), steps, states, max_len, initial, result);
        tape.truncate(tape.len() - tr.write.len());
        states.pop();
        steps.pop();
    }
}

pub fn queue_vocabulary(m: &QueueMachine) -> Vocabulary {
    let mut unary: Vec<String> = m.alphabet.iter().map(|&c| letter_symbol(c)).collect();
    for q in &m.states {
        unary.push(format!("S_{q}"));
    }
    Vocabulary::new(unary, vec![crate::gens::SUCC.to_string(), "frw".to_string()], vec![])
        .unwrap()
}

/// Universe = final tape positions; successor along the tape; `frw` maps
/// each read position to the simultaneous write position; letters
/// everywhere; states at read positions and the final stopping position.
pub fn encode_queue_trace(
    m: &QueueMachine,
    t: &QueueTrace,
) -> Result<FiniteStructure, MachineError> {
    let n = t.final_tape.len();
    let mut b = StructureBuilder::new(queue_vocabulary(m), n)?;
    for x in 1..n {
        b.set_pif(crate::gens::SUCC, x, x + 1)?;
    }
    for (x, c) in t.final_tape.chars().enumerate() {
        b.add_unary(&letter_symbol(c), x + 1)?;
    }
    let mut stop_pos = 1;
    for (i, step) in t.steps.iter().enumerate() {
        b.set_pif("frw", step.read_pos, step.write_pos)?;
        b.add_unary(&format!("S_{}", t.states[i]), step.read_pos)?;
        stop_pos = step.read_pos + m.transitions[step.transition].read.len();
    }
    if stop_pos > n {
        return Err(MachineError::Invalid(
            "run consumed the whole tape; the stopping position cannot be marked".into(),
        ));
    }
    b.add_unary(&format!("S_{}", t.states.last().unwrap()), stop_pos)?;
    Ok(b.build()?)
}

// ---------------------------------------------------------------------------
// Machine description files
// ---------------------------------------------------------------------------

fn split_header(line: &str, lineno: usize) -> Result<(&str, &str), MachineError> {
    line.split_once(':').ok_or_else(|| MachineError::Parse {
        line: lineno,
        msg: "expected `key: values`".into(),
    })
}

struct Header {
    states: Vec<String>,
    alphabet: Vec<char>,
    initial: String,
    finals: BTreeSet<String>,
    rest: Vec<(usize, String)>,
}

fn parse_header(text: &str) -> Result<Header, MachineError> {
    let mut h = Header {
        states: vec![],
        alphabet: vec![],
        initial: String::new(),
        finals: BTreeSet::new(),
        rest: vec![],
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        if let Some(key) = line.split(':').next() {
            match key.trim() {
                "states" | "alphabet" | "initial" | "final" => {
                    let (_, vals) = split_header(line, lineno)?;
                    let vals: Vec<&str> = vals.split_whitespace().collect();
                    match key.trim() {
                        "states" => h.states = vals.iter().map(|s| s.to_string()).collect(),
                        "alphabet" => {
                            for v in &vals {
                                let mut it = v.chars();
                                let c = it.next().ok_or_else(|| MachineError::Parse {
                                    line: lineno,
                                    msg: "empty alphabet entry".into(),
                                })?;
                                if it.next().is_some() {
                                    return Err(MachineError::Parse {
                                        line: lineno,
                                        msg: format!("letter `{v}` must be one character"),
                                    });
                                }
                                h.alphabet.push(c);
                            }
                        }
                        "initial" => {
                            h.initial = vals
                                .first()
                                .ok_or_else(|| MachineError::Parse {
                                    line: lineno,
                                    msg: "missing initial state".into(),
                                })?
                                .to_string()
                        }
                        "final" => h.finals = vals.iter().map(|s| s.to_string()).collect(),
                        _ => unreachable!(),
                    }
                    continue;
                }
                _ => {}
            }
        }
        h.rest.push((lineno, line.to_string()));
    }
    Ok(h)
}

/// Parses `q,a -> q',b,R` transition lines under the standard header.
pub fn parse_turing_machine(text: &str) -> Result<TuringMachine, MachineError> {
    let h = parse_header(text)?;
    let mut m = TuringMachine {
        states: h.states,
        alphabet: h.alphabet,
        transitions: BTreeMap::new(),
        initial: h.initial,
        finals: h.finals,
    };
    for (lineno, line) in h.rest {
        let err = |msg: &str| MachineError::Parse { line: lineno, msg: msg.to_string() };
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `->`"))?;
        let lhs: Vec<&str> = lhs.trim().split(',').map(str::trim).collect();
        let rhs: Vec<&str> = rhs.trim().split(',').map(str::trim).collect();
        if lhs.len() != 2 || rhs.len() != 3 {
            return Err(err("expected `q,a -> q',b,L|R`"));
        }
        let letter = |s: &str| -> Result<char, MachineError> {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(err("letters are single characters")),
            }
        };
        let dir = match rhs[2] {
            "L" => Dir::L,
            "R" => Dir::R,
            _ => return Err(err("direction must be L or R")),
        };
        m.transitions
            .entry((lhs[0].to_string(), letter(lhs[1])?))
            .or_default()
            .push((rhs[0].to_string(), letter(rhs[1])?, dir));
    }
    m.validate()?;
    Ok(m)
}

/// Parses `q,"w1" -> q',"w2"` transition lines under the standard header.
pub fn parse_queue_machine(text: &str) -> Result<QueueMachine, MachineError> {
    let h = parse_header(text)?;
    let mut m = QueueMachine {
        states: h.states,
        alphabet: h.alphabet,
        transitions: vec![],
        initial: h.initial,
        finals: h.finals,
    };
    for (lineno, line) in h.rest {
        let err = |msg: &str| MachineError::Parse { line: lineno, msg: msg.to_string() };
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `->`"))?;
        let quoted = |part: &str| -> Result<(String, String), MachineError> {
            let (state, word) = part.trim().split_once(',').ok_or_else(|| err("expected `q,\"w\"`"))?;
            let word = word.trim();
            if word.len() < 2 || !word.starts_with('"') || !word.ends_with('"') {
                return Err(err("words must be double-quoted"));
            }
            Ok((state.trim().to_string(), word[1..word.len() - 1].to_string()))
        };
        let (from, read) = quoted(lhs)?;
        let (to, write) = quoted(rhs)?;
        m.transitions.push(QueueTransition { from, read, to, write });
    }
    m.validate()?;
    Ok(m)
}

/// Three small machines with inputs, used as encoder fixtures: a one-way
/// scanner, a three-pass zigzag, and a nondeterministic guesser.
pub fn sample_machines() -> Vec<(&'static str, TuringMachine, &'static str)> {
    let scan = parse_turing_machine(
        "states: q0 qf\nalphabet: 1 _\ninitial: q0\nfinal: qf\n\
         q0,1 -> q0,1,R\nq0,_ -> qf,_,R\n",
    )
    .unwrap();
    let zigzag = parse_turing_machine(
        "states: q1 q2 q3 qf\nalphabet: a b _\ninitial: q1\nfinal: qf\n\
         q1,a -> q1,b,R\nq1,_ -> q2,_,L\n\
         q2,b -> q2,a,L\nq2,_ -> q3,_,R\n\
         q3,a -> q3,a,R\nq3,_ -> qf,_,L\n",
    )
    .unwrap();
    let guess = parse_turing_machine(
        "states: q0 qA qB qf\nalphabet: 0 1 _\ninitial: q0\nfinal: qf\n\
         q0,0 -> qA,0,R\nq0,0 -> qB,0,R\n\
         qA,1 -> qf,1,R\nqB,0 -> qf,0,R\n",
    )
    .unwrap();
    vec![("scan", scan, "111"), ("zigzag", zigzag, "aaaa"), ("guess", guess, "01")]
}

/// The four-transition queue machine whose achievable tape lengths are the
/// Fibonacci numbers.
pub fn fibonacci_queue_machine() -> QueueMachine {
    QueueMachine {
        states: vec!["q".into(), "qF".into()],
        alphabet: vec!['a', 'b', 'A'],
        transitions: vec![
            QueueTransition { from: "q".into(), read: "b".into(), to: "q".into(), write: "a".into() },
            QueueTransition { from: "q".into(), read: "a".into(), to: "q".into(), write: "ab".into() },
            QueueTransition { from: "q".into(), read: "A".into(), to: "q".into(), write: "Ab".into() },
            QueueTransition { from: "q".into(), read: "A".into(), to: "qF".into(), write: "AA".into() },
        ],
        initial: "q".into(),
        finals: ["qF".to_string()].into(),
    }
}
