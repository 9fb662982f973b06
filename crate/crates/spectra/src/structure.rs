//! Finite structures over PIF vocabularies, their Gaifman graphs, and
//! small-structure isomorphism.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::logic::{Element, Vocabulary};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("element {0} is outside the universe 1..={1}")]
    OutOfRange(Element, usize),
    #[error("pif `{pif}` maps both {a} and {b} to {target}, violating injectivity")]
    Injectivity { pif: String, a: Element, b: Element, target: Element },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("vocabularies differ")]
    VocabularyMismatch,
    #[error("constant `{0}` has no value")]
    MissingConstant(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite structure: universe `{1..N}`, unary relations, partial injective
/// functions and constants.  Immutable once built via [`StructureBuilder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    vocab: Vocabulary,
    size: usize,
    unary: Vec<Vec<bool>>,
    pif: Vec<Vec<Option<Element>>>,
    pif_inv: Vec<Vec<Option<Element>>>,
    constants: Vec<Element>,
}

/// Mutable staging area for a structure; checks injectivity and ranges.
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    vocab: Vocabulary,
    size: usize,
    unary: Vec<Vec<bool>>,
    pif: Vec<Vec<Option<Element>>>,
    pif_inv: Vec<Vec<Option<Element>>>,
    constants: Vec<Option<Element>>,
}

impl StructureBuilder {
    pub fn new(vocab: Vocabulary, size: usize) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        Ok(StructureBuilder {
            unary: vec![vec![false; size]; vocab.unary_symbols().len()],
            pif: vec![vec![None; size]; vocab.pif_symbols().len()],
            pif_inv: vec![vec![None; size]; vocab.pif_symbols().len()],
            constants: vec![None; vocab.constant_symbols().len()],
            vocab,
            size,
        })
    }

    fn check(&self, e: Element) -> Result<(), StructureError> {
        if e < 1 || e > self.size {
            Err(StructureError::OutOfRange(e, self.size))
        } else {
            Ok(())
        }
    }

    pub fn add_unary(&mut self, name: &str, e: Element) -> Result<(), StructureError> {
        self.check(e)?;
        let i = self
            .vocab
            .unary_index(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))?;
        self.unary[i][e - 1] = true;
        Ok(())
    }

    pub fn set_pif(&mut self, name: &str, from: Element, to: Element) -> Result<(), StructureError> {
        self.check(from)?;
        self.check(to)?;
        let i = self
            .vocab
            .pif_index(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))?;
        if let Some(prev) = self.pif_inv[i][to - 1] {
            if prev != from {
                return Err(StructureError::Injectivity {
                    pif: name.to_string(),
                    a: prev,
                    b: from,
                    target: to,
                });
            }
        }
        if let Some(old_to) = self.pif[i][from - 1] {
            self.pif_inv[i][old_to - 1] = None;
        }
        self.pif[i][from - 1] = Some(to);
        self.pif_inv[i][to - 1] = Some(from);
        Ok(())
    }

    pub fn set_constant(&mut self, name: &str, e: Element) -> Result<(), StructureError> {
        self.check(e)?;
        let i = self
            .vocab
            .constant_index(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))?;
        self.constants[i] = Some(e);
        Ok(())
    }

    pub fn build(self) -> Result<FiniteStructure, StructureError> {
        let mut constants = Vec::with_capacity(self.constants.len());
        for (i, c) in self.constants.iter().enumerate() {
            constants.push(c.ok_or_else(|| {
                StructureError::MissingConstant(self.vocab.constant_symbols()[i].clone())
            })?);
        }
        Ok(FiniteStructure {
            vocab: self.vocab,
            size: self.size,
            unary: self.unary,
            pif: self.pif,
            pif_inv: self.pif_inv,
            constants,
        })
    }
}

impl FiniteStructure {
    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        1..=self.size
    }

    pub fn unary(&self, name: &str, e: Element) -> Option<bool> {
        Some(self.unary[self.vocab.unary_index(name)?][e - 1])
    }

    /// Elements of a unary relation, ascending.
    pub fn unary_set(&self, name: &str) -> Option<Vec<Element>> {
        let i = self.vocab.unary_index(name)?;
        Some((1..=self.size).filter(|e| self.unary[i][e - 1]).collect())
    }

    pub fn pif(&self, name: &str, from: Element) -> Option<Element> {
        self.pif[self.vocab.pif_index(name)?][from - 1]
    }

    pub fn pif_inverse(&self, name: &str, to: Element) -> Option<Element> {
        self.pif_inv[self.vocab.pif_index(name)?][to - 1]
    }

    pub fn constant(&self, name: &str) -> Option<Element> {
        Some(self.constants[self.vocab.constant_index(name)?])
    }

    pub(crate) fn unary_by_index(&self, r: usize, e: Element) -> bool {
        self.unary[r][e - 1]
    }

    pub(crate) fn pif_by_index(&self, f: usize, from: Element) -> Option<Element> {
        self.pif[f][from - 1]
    }

    pub(crate) fn pif_inverse_by_index(&self, f: usize, to: Element) -> Option<Element> {
        self.pif_inv[f][to - 1]
    }

    pub(crate) fn constant_by_index(&self, c: usize) -> Element {
        self.constants[c]
    }

    /// All defined pairs of a PIF, sorted by source.
    pub fn pif_entries(&self, name: &str) -> Option<Vec<(Element, Element)>> {
        let i = self.vocab.pif_index(name)?;
        Some(
            (1..=self.size)
                .filter_map(|a| self.pif[i][a - 1].map(|b| (a, b)))
                .collect(),
        )
    }

    /// A copy with the membership of `e` in `name` flipped.
    pub fn with_unary_toggled(&self, name: &str, e: Element) -> Option<FiniteStructure> {
        let i = self.vocab.unary_index(name)?;
        if e < 1 || e > self.size {
            return None;
        }
        let mut out = self.clone();
        out.unary[i][e - 1] = !out.unary[i][e - 1];
        Some(out)
    }

    /// A copy with `name(from)` made undefined.
    pub fn with_pif_removed(&self, name: &str, from: Element) -> Option<FiniteStructure> {
        let i = self.vocab.pif_index(name)?;
        let to = self.pif[i][from - 1]?;
        let mut out = self.clone();
        out.pif[i][from - 1] = None;
        out.pif_inv[i][to - 1] = None;
        Some(out)
    }
}

/// A simple graph on `{1..n}`: no self-loops, symmetric adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n && u != v);
        if !self.adj[u - 1].contains(&v) {
            self.adj[u - 1].push(v);
            self.adj[v - 1].push(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u - 1]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u - 1].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges `{u,v}` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for &v in &self.adj[u - 1] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// The Gaifman graph: `u ~ v` iff some PIF maps one to the other.
pub fn gaifman_graph(s: &FiniteStructure) -> Graph {
    let mut g = Graph::new(s.size());
    for f in s.vocab().pif_symbols() {
        for (a, b) in s.pif_entries(f).unwrap() {
            if a != b {
                g.add_edge(a, b);
            }
        }
    }
    g
}

pub fn max_degree(g: &Graph) -> usize {
    (1..=g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// Greedy proper edge coloring with at most `max_colors` colors; returns the
/// color (0-based) of each edge in `g.edges()` order, or `None` when the
/// greedy pass needs more colors.
pub fn edge_coloring(g: &Graph, max_colors: usize) -> Option<Vec<usize>> {
    let edges = g.edges();
    let mut used: Vec<Vec<bool>> = vec![vec![false; max_colors]; g.vertex_count()];
    let mut colors = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let c = (0..max_colors).find(|&c| !used[u - 1][c] && !used[v - 1][c])?;
        used[u - 1][c] = true;
        used[v - 1][c] = true;
        colors.push(c);
    }
    Some(colors)
}

/// Builds a structure over PIF symbols `e0..` whose Gaifman graph is `g`,
/// by properly edge-coloring `g`.  Each color class is a matching, encoded
/// as an involution (both directions), so the structure carries no edge
/// orientations the graph does not have.
pub fn graph_to_structure(g: &Graph, max_colors: usize) -> Option<FiniteStructure> {
    let colors = edge_coloring(g, max_colors)?;
    let used = colors.iter().copied().max().map_or(0, |m| m + 1);
    let names: Vec<String> = (0..used).map(|i| format!("e{i}")).collect();
    let vocab = Vocabulary::new(Vec::<String>::new(), names, vec![]).unwrap();
    let mut b = StructureBuilder::new(vocab, g.vertex_count().max(1)).unwrap();
    for ((u, v), c) in g.edges().into_iter().zip(colors) {
        b.set_pif(&format!("e{c}"), u, v).unwrap();
        b.set_pif(&format!("e{c}"), v, u).unwrap();
    }
    b.build().ok()
}

/// Structure isomorphism by backtracking, intended for small structures.
pub fn isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> Result<bool, StructureError> {
    if a.vocab() != b.vocab() {
        return Err(StructureError::VocabularyMismatch);
    }
    if a.size() != b.size() {
        return Ok(false);
    }
    let n = a.size();
    // Invariant signature: unary memberships plus per-pif defined/inverse
    // flags; candidates must match signatures.
    let sig = |s: &FiniteStructure, e: Element| -> u64 {
        let mut bits: u64 = 0;
        for (i, _) in s.vocab().unary_symbols().iter().enumerate() {
            bits = bits << 1 | s.unary_by_index(i, e) as u64;
        }
        for (i, _) in s.vocab().pif_symbols().iter().enumerate() {
            bits = bits << 1 | s.pif_by_index(i, e).is_some() as u64;
            bits = bits << 1 | s.pif_inverse_by_index(i, e).is_some() as u64;
            bits = bits << 1 | (s.pif_by_index(i, e) == Some(e)) as u64;
        }
        bits
    };
    let sig_a: Vec<u64> = (1..=n).map(|e| sig(a, e)).collect();
    let sig_b: Vec<u64> = (1..=n).map(|e| sig(b, e)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(false);
        }
    }
    for (i, _) in a.vocab().constant_symbols().iter().enumerate() {
        if sig_a[a.constant_by_index(i) - 1] != sig_b[b.constant_by_index(i) - 1] {
            return Ok(false);
        }
    }

    let pifs = a.vocab().pif_symbols().len();
    // map[e-1] = image of e in b, 0 for unmapped.
    let mut map = vec![0usize; n];
    let mut rmap = vec![0usize; n];

    fn consistent(
        a: &FiniteStructure,
        b: &FiniteStructure,
        map: &[usize],
        pifs: usize,
        e: Element,
    ) -> bool {
        let ie = map[e - 1];
        for f in 0..pifs {
            if let Some(t) = a.pif_by_index(f, e) {
                if map[t - 1] != 0 && b.pif_by_index(f, ie) != Some(map[t - 1]) {
                    return false;
                }
                if map[t - 1] == 0 && b.pif_by_index(f, ie).is_none() {
                    return false;
                }
            } else if b.pif_by_index(f, ie).is_some() {
                return false;
            }
            if let Some(t) = a.pif_inverse_by_index(f, e) {
                if map[t - 1] != 0 && b.pif_inverse_by_index(f, ie) != Some(map[t - 1]) {
                    return false;
                }
                if map[t - 1] == 0 && b.pif_inverse_by_index(f, ie).is_none() {
                    return false;
                }
            } else if b.pif_inverse_by_index(f, ie).is_some() {
                return false;
            }
        }
        true
    }

    fn search(
        a: &FiniteStructure,
        b: &FiniteStructure,
        sig_a: &[u64],
        sig_b: &[u64],
        map: &mut [usize],
        rmap: &mut [usize],
        pifs: usize,
        e: Element,
    ) -> bool {
        let n = a.size();
        if e > n {
            return true;
        }
        if map[e - 1] != 0 {
            return search(a, b, sig_a, sig_b, map, rmap, pifs, e + 1);
        }
        for cand in 1..=n {
            if rmap[cand - 1] != 0 || sig_b[cand - 1] != sig_a[e - 1] {
                continue;
            }
            map[e - 1] = cand;
            rmap[cand - 1] = e;
            if consistent(a, b, map, pifs, e)
                && (1..e).all(|p| consistent(a, b, map, pifs, p))
                && search(a, b, sig_a, sig_b, map, rmap, pifs, e + 1)
            {
                return true;
            }
            map[e - 1] = 0;
            rmap[cand - 1] = 0;
        }
        false
    }

    // Constants must map to constants.
    for (i, _) in a.vocab().constant_symbols().iter().enumerate() {
        let ca = a.constant_by_index(i);
        let cb = b.constant_by_index(i);
        if map[ca - 1] != 0 {
            if map[ca - 1] != cb {
                return Ok(false);
            }
        } else {
            if rmap[cb - 1] != 0 {
                return Ok(false);
            }
            map[ca - 1] = cb;
            rmap[cb - 1] = ca;
        }
    }
    Ok(search(a, b, &sig_a, &sig_b, &mut map, &mut rmap, pifs, 1))
}

/// Writes the line-based text format:
/// `structure N=..`, `unary name: e..`, `pif name: a->b ..`, `const name=e`.
pub fn serialize(s: &FiniteStructure) -> String {
    let mut out = String::new();
    writeln!(out, "structure N={}", s.size()).unwrap();
    for name in s.vocab().unary_symbols() {
        let elems = s.unary_set(name).unwrap();
        let body: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
        writeln!(out, "unary {}: {}", name, body.join(" ")).unwrap();
    }
    for name in s.vocab().pif_symbols() {
        let body: Vec<String> = s
            .pif_entries(name)
            .unwrap()
            .iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        writeln!(out, "pif {}: {}", name, body.join(" ")).unwrap();
    }
    for name in s.vocab().constant_symbols() {
        writeln!(out, "const {}={}", name, s.constant(name).unwrap()).unwrap();
    }
    out
}

/// Parses the text format written by [`serialize`].
pub fn deserialize(text: &str) -> Result<FiniteStructure, StructureError> {
    let perr = |line: usize, msg: &str| StructureError::Parse { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate();
    let (mut size, mut first_line) = (None, 0);
    for (i, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rest = line
            .strip_prefix("structure N=")
            .ok_or_else(|| perr(i + 1, "expected `structure N=<int>` header"))?;
        size = Some(
            rest.trim()
                .parse::<usize>()
                .map_err(|_| perr(i + 1, "invalid structure size"))?,
        );
        first_line = i + 1;
        break;
    }
    let size = size.ok_or_else(|| perr(first_line.max(1), "missing `structure` header"))?;
    if size == 0 {
        return Err(StructureError::EmptyUniverse);
    }

    struct Decl {
        line: usize,
        kind: u8, // 0 unary, 1 pif, 2 const
        name: String,
        body: String,
    }
    let mut decls = Vec::new();
    for (i, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let decl = if let Some(rest) = line.strip_prefix("unary ") {
            let (name, body) = rest
                .split_once(':')
                .ok_or_else(|| perr(i + 1, "expected `unary <name>: ...`"))?;
            Decl { line: i + 1, kind: 0, name: name.trim().to_string(), body: body.to_string() }
        } else if let Some(rest) = line.strip_prefix("pif ") {
            let (name, body) = rest
                .split_once(':')
                .ok_or_else(|| perr(i + 1, "expected `pif <name>: ...`"))?;
            Decl { line: i + 1, kind: 1, name: name.trim().to_string(), body: body.to_string() }
        } else if let Some(rest) = line.strip_prefix("const ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| perr(i + 1, "expected `const <name>=<int>`"))?;
            Decl { line: i + 1, kind: 2, name: name.trim().to_string(), body: body.to_string() }
        } else {
            return Err(perr(i + 1, &format!("unknown directive: `{line}`")));
        };
        decls.push(decl);
    }

    let mut unary = Vec::new();
    let mut pifs = Vec::new();
    let mut consts = Vec::new();
    for d in &decls {
        match d.kind {
            0 => unary.push(d.name.clone()),
            1 => pifs.push(d.name.clone()),
            _ => consts.push(d.name.clone()),
        }
    }
    let vocab = Vocabulary::new(unary, pifs, consts)
        .map_err(|e| perr(first_line, &e.to_string()))?;
    let mut b = StructureBuilder::new(vocab, size)?;
    for d in &decls {
        match d.kind {
            0 => {
                for tok in d.body.split_whitespace() {
                    let e: usize = tok
                        .parse()
                        .map_err(|_| perr(d.line, &format!("invalid element `{tok}`")))?;
                    b.add_unary(&d.name, e).map_err(|e| wrap(e, d.line))?;
                }
            }
            1 => {
                for tok in d.body.split_whitespace() {
                    let (from, to) = tok
                        .split_once("->")
                        .ok_or_else(|| perr(d.line, &format!("invalid pif entry `{tok}`")))?;
                    let from: usize = from
                        .parse()
                        .map_err(|_| perr(d.line, &format!("invalid element `{from}`")))?;
                    let to: usize = to
                        .parse()
                        .map_err(|_| perr(d.line, &format!("invalid element `{to}`")))?;
                    b.set_pif(&d.name, from, to).map_err(|e| wrap(e, d.line))?;
                }
            }
            _ => {
                let e: usize = d
                    .body
                    .trim()
                    .parse()
                    .map_err(|_| perr(d.line, "invalid constant value"))?;
                b.set_constant(&d.name, e).map_err(|e| wrap(e, d.line))?;
            }
        }
    }
    return b.build();

    fn wrap(e: StructureError, line: usize) -> StructureError {
        StructureError::Parse { line, msg: e.to_string() }
    }
}

/// Renames elements by a bijection `perm` (1-based, `perm[e-1]` is the new
/// name of `e`).  Used by canonicalization and tests.
pub fn relabel(s: &FiniteStructure, perm: &[Element]) -> FiniteStructure {
    let n = s.size();
    assert_eq!(perm.len(), n);
    let mut b = StructureBuilder::new(s.vocab().clone(), n).unwrap();
    for (i, name) in s.vocab().unary_symbols().iter().enumerate() {
        for e in 1..=n {
            if s.unary_by_index(i, e) {
                b.add_unary(name, perm[e - 1]).unwrap();
            }
        }
    }
    for name in s.vocab().pif_symbols() {
        for (x, y) in s.pif_entries(name).unwrap() {
            b.set_pif(name, perm[x - 1], perm[y - 1]).unwrap();
        }
    }
    for name in s.vocab().constant_symbols() {
        b.set_constant(name, perm[s.constant(name).unwrap() - 1]).unwrap();
    }
    b.build().unwrap()
}

/// Restriction of `s` to the elements of `keep` (deduplicated, ascending);
/// element `keep[i]` becomes `i+1`.  Constants must survive the restriction.
pub fn induced_substructure(
    s: &FiniteStructure,
    keep: &[Element],
) -> Result<FiniteStructure, StructureError> {
    let mut keep: Vec<Element> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(StructureError::EmptyUniverse);
    }
    let mut new_id: BTreeMap<Element, Element> = BTreeMap::new();
    for (i, &e) in keep.iter().enumerate() {
        if e < 1 || e > s.size() {
            return Err(StructureError::OutOfRange(e, s.size()));
        }
        new_id.insert(e, i + 1);
    }
    let mut b = StructureBuilder::new(s.vocab().clone(), keep.len())?;
    for (i, name) in s.vocab().unary_symbols().iter().enumerate() {
        for &e in &keep {
            if s.unary_by_index(i, e) {
                b.add_unary(name, new_id[&e])?;
            }
        }
    }
    for name in s.vocab().pif_symbols() {
        for (x, y) in s.pif_entries(name).unwrap() {
            if let (Some(&nx), Some(&ny)) = (new_id.get(&x), new_id.get(&y)) {
                b.set_pif(name, nx, ny)?;
            }
        }
    }
    for name in s.vocab().constant_symbols() {
        let c = s.constant(name).unwrap();
        let nc = new_id
            .get(&c)
            .ok_or(StructureError::OutOfRange(c, keep.len()))?;
        b.set_constant(name, *nc)?;
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn vocab() -> Vocabulary {
        Vocabulary::new(vec!["A"], vec!["f", "g"], vec!["c"]).unwrap()
    }

    fn structure_strategy() -> impl Strategy<Value = FiniteStructure> {
        (1usize..=6).prop_flat_map(|n| {
            let pif = (Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
                       prop::collection::vec(any::<bool>(), n));
            (
                Just(n),
                prop::collection::vec(pif, 2),
                prop::collection::vec(any::<bool>(), n),
                1..=n,
            )
                .prop_map(|(n, pifs, unary, cval)| {
                    let mut b = StructureBuilder::new(vocab(), n).unwrap();
                    for (name, (perm, mask)) in ["f", "g"].iter().zip(&pifs) {
                        for a in 1..=n {
                            if mask[a - 1] {
                                b.set_pif(name, a, perm[a - 1]).unwrap();
                            }
                        }
                    }
                    for e in 1..=n {
                        if unary[e - 1] {
                            b.add_unary("A", e).unwrap();
                        }
                    }
                    b.set_constant("c", cval).unwrap();
                    b.build().unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn serialization_round_trips_and_degree_is_bounded(s in structure_strategy()) {
            prop_assert_eq!(&deserialize(&serialize(&s)).unwrap(), &s);
            // 2 PIFs contribute at most 2 Gaifman edges per element each.
            prop_assert!(max_degree(&gaifman_graph(&s)) <= 4);
        }

        #[test]
        fn relabeling_preserves_isomorphism(s in structure_strategy(), seed in any::<u64>()) {
            let n = s.size();
            let mut perm: Vec<usize> = (1..=n).collect();
            let mut rng = StdRng::seed_from_u64(seed);
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            prop_assert!(isomorphic(&s, &relabel(&s, &perm)).unwrap());
        }
    }

    #[test]
    fn malformed_files_are_rejected_with_a_line() {
        let text = "structure N=3\npif f: 1->2 3->2\n";
        assert!(matches!(
            deserialize(text),
            Err(StructureError::Parse { line: 2, msg }) if msg.contains("injectivity")
        ));
        let text = "structure N=2\nbogus directive\n";
        assert!(matches!(
            deserialize(text),
            Err(StructureError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn isomorphism_sees_labels_and_structure() {
        let mut b = StructureBuilder::new(vocab(), 3).unwrap();
        b.set_pif("f", 1, 2).unwrap();
        b.add_unary("A", 3).unwrap();
        b.set_constant("c", 1).unwrap();
        let s = b.build().unwrap();
        assert!(isomorphic(&s, &s).unwrap());
        let t = s.with_unary_toggled("A", 2).unwrap();
        assert!(!isomorphic(&s, &t).unwrap());
        let t = s.with_pif_removed("f", 1).unwrap();
        assert!(!isomorphic(&s, &t).unwrap());
    }

    #[test]
    fn graph_structure_round_trip_has_the_same_gaifman_graph() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..=8);
            let mut g = Graph::new(n);
            for u in 1..n {
                for v in u + 1..=n {
                    if rng.gen_bool(0.3) && !g.has_edge(u, v) && g.degree(u) < 3 && g.degree(v) < 3
                    {
                        g.add_edge(u, v);
                    }
                }
            }
            let s = graph_to_structure(&g, 6).unwrap();
            assert_eq!(gaifman_graph(&s).edges(), g.edges());
        }
    }
}
