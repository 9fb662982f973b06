//! r-neighborhood extraction, canonical rooted types, and the capped type
//! census with its equivalence.
//!
//! A neighborhood is the induced substructure on the Gaifman ball of radius
//! r with the center marked by a reserved constant.  Its canonical type is
//! the lexicographically least serialization over all relabelings that
//! respect the root invariants (distance from the root, unary colors, and
//! one round of neighbor-class refinement); isomorphic rooted structures
//! produce identical canonical types.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::structure::{
    self, FiniteStructure, Graph, StructureBuilder, StructureError,
};
use crate::logic::{Element, Vocabulary};

/// Reserved constant marking the center of a neighborhood.
pub const ROOT: &str = "root";

/// Largest neighborhood canonical_type will process.
pub const CANON_LIMIT: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HanfError {
    #[error("structure has Gaifman degree {found}, above the bound {bound}")]
    DegreeExceeded { found: usize, bound: usize },
    #[error("neighborhood of size {size} exceeds the canonicalization limit {limit}")]
    Oversize { size: usize, limit: usize },
    #[error("census parameters differ: {0}")]
    ParameterMismatch(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// The value S_r: 1 + d(d-1)^(r-1), with S_r = 1 + d when d = 1.  For
/// r >= 2 this undercounts worst-case ball sizes; it is a valid bound on
/// |N_1(v)| and is kept as the named quantity the census machinery refers
/// to.
pub fn s_r(d: usize, r: usize) -> usize {
    if r == 0 || d == 0 {
        return 1;
    }
    if d == 1 {
        return 1 + d;
    }
    1 + d * (d - 1).pow((r - 1) as u32)
}

fn ball(g: &Graph, v: Element, r: usize) -> Vec<Element> {
    let mut dist: BTreeMap<Element, usize> = BTreeMap::new();
    dist.insert(v, 0);
    let mut frontier = vec![v];
    for step in 1..=r {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                dist.entry(w).or_insert_with(|| {
                    next.push(w);
                    step
                });
            }
        }
        frontier = next;
    }
    dist.into_keys().collect()
}

/// The substructure induced by the radius-r Gaifman ball around `v`, with
/// the vocabulary extended by the `root` constant naming `v`.
pub fn neighborhood(
    s: &FiniteStructure,
    v: Element,
    r: usize,
) -> Result<FiniteStructure, HanfError> {
    if v < 1 || v > s.size() {
        return Err(StructureError::OutOfRange(v, s.size()).into());
    }
    if s.vocab().constant_index(ROOT).is_some() {
        return Err(StructureError::UnknownSymbol(format!("`{ROOT}` is reserved")).into());
    }
    let keep = ball(&structure::gaifman_graph(s), v, r);
    let restricted = structure::induced_substructure(s, &keep)?;
    let root_pos = keep.iter().position(|&e| e == v).unwrap() + 1;

    let vocab = Vocabulary::new(
        s.vocab().unary_symbols().to_vec(),
        s.vocab().pif_symbols().to_vec(),
        s.vocab()
            .constant_symbols()
            .iter()
            .cloned()
            .chain([ROOT.to_string()])
            .collect::<Vec<_>>(),
    )
    .map_err(|_| StructureError::UnknownSymbol(ROOT.to_string()))?;
    let mut b = StructureBuilder::new(vocab, restricted.size())?;
    for name in restricted.vocab().unary_symbols() {
        for e in restricted.unary_set(name).unwrap() {
            b.add_unary(name, e)?;
        }
    }
    for name in restricted.vocab().pif_symbols() {
        for (x, y) in restricted.pif_entries(name).unwrap() {
            b.set_pif(name, x, y)?;
        }
    }
    for name in restricted.vocab().constant_symbols() {
        b.set_constant(name, restricted.constant(name).unwrap())?;
    }
    b.set_constant(ROOT, root_pos)?;
    Ok(b.build()?)
}

/// A canonical rooted structure on {1..n}: equal exactly for isomorphic
/// rooted neighborhoods.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NeighborhoodType {
    canonical: String,
}

impl NeighborhoodType {
    /// Stable textual dump of the canonical structure.
    pub fn dump(&self) -> &str {
        &self.canonical
    }

    pub fn structure(&self) -> FiniteStructure {
        structure::deserialize(&self.canonical).expect("canonical dumps round-trip")
    }

    /// Short stable hex fingerprint of the canonical dump (FNV-1a).
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// Invariant class of each element: distance from root, unary memberships,
/// then one refinement round over Gaifman neighbor classes.
fn invariant_classes(nb: &FiniteStructure) -> Vec<Vec<Element>> {
    let root = nb.constant(ROOT).expect("neighborhood carries the root constant");
    let g = structure::gaifman_graph(nb);
    let n = nb.size();
    let mut dist = vec![usize::MAX; n];
    dist[root - 1] = 0;
    let mut frontier = vec![root];
    let mut step = 0;
    while !frontier.is_empty() {
        step += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w - 1] == usize::MAX {
                    dist[w - 1] = step;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let color = |e: Element| -> Vec<bool> {
        nb.vocab()
            .unary_symbols()
            .iter()
            .map(|u| nb.unary(u, e) == Some(true))
            .collect()
    };
    let mut key: Vec<(usize, Vec<bool>)> = (1..=n).map(|e| (dist[e - 1], color(e))).collect();
    let refine: Vec<Vec<(usize, Vec<bool>)>> = (1..=n)
        .map(|e| {
            let mut ks: Vec<_> = g.neighbors(e).iter().map(|&w| key[w - 1].clone()).collect();
            ks.sort();
            ks
        })
        .collect();
    let full: Vec<_> = (0..n).map(|i| (key.remove(0), refine[i].clone())).collect();
    let mut classes: BTreeMap<_, Vec<Element>> = BTreeMap::new();
    for (i, k) in full.into_iter().enumerate() {
        classes.entry(k).or_default().push(i + 1);
    }
    classes.into_values().collect()
}

/// Canonical type: least serialization over class-respecting relabelings.
pub fn canonical_type(nb: &FiniteStructure) -> Result<NeighborhoodType, HanfError> {
    let n = nb.size();
    if n > CANON_LIMIT {
        return Err(HanfError::Oversize { size: n, limit: CANON_LIMIT });
    }
    if nb.constant(ROOT).is_none() {
        return Err(StructureError::MissingConstant(ROOT.to_string()).into());
    }
    let classes = invariant_classes(nb);
    let mut best: Option<String> = None;
    // perm[e-1] = new name of e; classes occupy consecutive ranges.
    let mut perm = vec![0usize; n];
    fn assign(
        classes: &[Vec<Element>],
        ci: usize,
        offset: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        nb: &FiniteStructure,
        best: &mut Option<String>,
    ) {
        if ci == classes.len() {
            let cand = structure::serialize(&structure::relabel(nb, perm));
            if best.as_ref().is_none_or(|b| cand < *b) {
                *best = Some(cand);
            }
            return;
        }
        let class = &classes[ci];
        fn pick(
            class: &[Element],
            k: usize,
            offset: usize,
            used: &mut Vec<bool>,
            perm: &mut Vec<usize>,
            rest: &mut dyn FnMut(&mut Vec<bool>, &mut Vec<usize>),
        ) {
            if k == class.len() {
                rest(used, perm);
                return;
            }
            for (slot, &e) in class.iter().enumerate() {
                if !used[slot] {
                    used[slot] = true;
                    perm[e - 1] = offset + k + 1;
                    pick(class, k + 1, offset, used, perm, rest);
                    used[slot] = false;
                }
            }
        }
        let mut inner = vec![false; class.len()];
        pick(class, 0, offset, &mut inner, perm, &mut |_, perm| {
            let mut used_next = used.clone();
            assign(classes, ci + 1, offset + class.len(), &mut used_next, perm, nb, best);
        });
    }
    assign(&classes, 0, 0, &mut vec![false; n], &mut perm, nb, &mut best);
    Ok(NeighborhoodType { canonical: best.unwrap() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub r: usize,
    pub m_cap: usize,
    pub d: usize,
    /// Per-type counts in {1..M}; absent types count 0.
    pub counts: BTreeMap<NeighborhoodType, usize>,
}

impl TypeCensus {
    /// Capped merge with a census over the same parameters.
    pub fn merge(&mut self, other: &TypeCensus) -> Result<(), HanfError> {
        if (self.r, self.m_cap, self.d) != (other.r, other.m_cap, other.d) {
            return Err(HanfError::ParameterMismatch(format!(
                "(r={}, M={}, d={}) vs (r={}, M={}, d={})",
                self.r, self.m_cap, self.d, other.r, other.m_cap, other.d
            )));
        }
        for (t, c) in &other.counts {
            let slot = self.counts.entry(t.clone()).or_insert(0);
            *slot = (*slot + c).min(self.m_cap);
        }
        Ok(())
    }
}

/// The capped census f_{r,M}: for each canonical r-type, min(M, number of
/// elements of that type).
pub fn type_census(
    s: &FiniteStructure,
    r: usize,
    m_cap: usize,
    d: usize,
) -> Result<TypeCensus, HanfError> {
    let deg = structure::max_degree(&structure::gaifman_graph(s));
    if deg > d {
        return Err(HanfError::DegreeExceeded { found: deg, bound: d });
    }
    let mut counts: BTreeMap<NeighborhoodType, usize> = BTreeMap::new();
    for v in 1..=s.size() {
        let t = canonical_type(&neighborhood(s, v, r)?)?;
        let slot = counts.entry(t).or_insert(0);
        *slot = (*slot + 1).min(m_cap);
    }
    Ok(TypeCensus { r, m_cap, d, counts })
}

/// The relation following the censuses: equal f_{r,M} on both sides.
pub fn hanf_equivalent(
    a: &FiniteStructure,
    b: &FiniteStructure,
    r: usize,
    m_cap: usize,
    d: usize,
) -> Result<bool, HanfError> {
    Ok(type_census(a, r, m_cap, d)?.counts == type_census(b, r, m_cap, d)?.counts)
}
