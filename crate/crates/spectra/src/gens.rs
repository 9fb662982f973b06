//! Deterministic constructors for the concrete structure families: the
//! spiral (successor + doubling), its powers-of-two, multiplication,
//! Fibonacci and binary-representation expansions, and the layered
//! digit-forcing grid.
//!
//! Symbol names used throughout: `s` is the successor PIF (defined below the
//! top element), `d` is the doubling PIF (defined while `2x <= N`).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::logic::{Element, Vocabulary};
use crate::structure::{FiniteStructure, StructureBuilder, StructureError};

pub const SUCC: &str = "s";
pub const DBL: &str = "d";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("N = {0} is too small; this family requires N >= {1}")]
    TooSmall(usize, usize),
    #[error("parameter out of range: {0}")]
    BadParam(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub fn spiral_vocabulary() -> Vocabulary {
    Vocabulary::new(vec![], vec![SUCC, DBL], vec![]).unwrap()
}

pub fn powers_vocabulary() -> Vocabulary {
    Vocabulary::new(vec!["P"], vec![SUCC, DBL], vec![]).unwrap()
}

pub fn multiplication_vocabulary() -> Vocabulary {
    Vocabulary::new(vec![], vec![SUCC, DBL, "addC", "mulC"], vec!["C"]).unwrap()
}

pub fn fibonacci_vocabulary(planar_variant: bool) -> Vocabulary {
    if planar_variant {
        Vocabulary::new(vec!["Phi", "Odd"], vec![SUCC, "F"], vec![]).unwrap()
    } else {
        Vocabulary::new(vec!["Phi"], vec![SUCC, DBL, "F"], vec![]).unwrap()
    }
}

pub fn binary_vocabulary() -> Vocabulary {
    Vocabulary::new(vec![], vec![SUCC, DBL, "P"], vec![]).unwrap()
}

fn spiral_builder(vocab: Vocabulary, n: usize) -> Result<StructureBuilder, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall(n, 2));
    }
    let mut b = StructureBuilder::new(vocab, n)?;
    for x in 1..n {
        b.set_pif(SUCC, x, x + 1)?;
    }
    for x in 1..=n / 2 {
        b.set_pif(DBL, x, 2 * x)?;
    }
    Ok(b)
}

/// The spiral on `{1..N}`: successor and doubling.
pub fn spiral(n: usize) -> Result<FiniteStructure, GenError> {
    Ok(spiral_builder(spiral_vocabulary(), n)?.build()?)
}

/// Spiral expanded with the unary relation `P` holding the powers of two.
pub fn powers_structure(n: usize) -> Result<FiniteStructure, GenError> {
    let mut b = spiral_builder(powers_vocabulary(), n)?;
    let mut p = 1usize;
    while p <= n {
        b.add_unary("P", p)?;
        p *= 2;
    }
    Ok(b.build()?)
}

/// Spiral expanded with constant `C` and the PIFs `addC` (x+C where the sum
/// stays in range) and `mulC` (x*C likewise).
pub fn multiplication_structure(n: usize, c: Element) -> Result<FiniteStructure, GenError> {
    if !(2..=n).contains(&c) {
        return Err(GenError::BadParam(format!("C = {c} must satisfy 2 <= C <= N = {n}")));
    }
    let mut b = spiral_builder(multiplication_vocabulary(), n)?;
    b.set_constant("C", c)?;
    for x in 1..=n {
        if x + c <= n {
            b.set_pif("addC", x, x + c)?;
        }
        if x * c <= n {
            b.set_pif("mulC", x, x * c)?;
        }
    }
    Ok(b.build()?)
}

/// The value sequence F(1), F(2), ... while values stay `<= n`:
/// F(1) = 2, and F(k+1) = F(k) + 2 if k is itself an F-value, else F(k) + 1.
fn fib_function(n: usize) -> Vec<usize> {
    let mut vals: Vec<usize> = Vec::new();
    let mut next = 2usize;
    while next <= n {
        vals.push(next);
        let k = vals.len();
        next += if vals.contains(&k) { 2 } else { 1 };
    }
    vals
}

/// Spiral (or, in the planar variant, successor only) expanded with the PIF
/// `F` per the stepped recurrence and the unary `Phi`, the least set
/// containing 1 and closed under the image of `F`.  `Phi` holds exactly at
/// the Fibonacci numbers.
pub fn fibonacci_structure(n: usize, planar_variant: bool) -> Result<FiniteStructure, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall(n, 2));
    }
    let mut b = StructureBuilder::new(fibonacci_vocabulary(planar_variant), n)?;
    for x in 1..n {
        b.set_pif(SUCC, x, x + 1)?;
    }
    if planar_variant {
        for x in (1..=n).step_by(2) {
            b.add_unary("Odd", x)?;
        }
    } else {
        for x in 1..=n / 2 {
            b.set_pif(DBL, x, 2 * x)?;
        }
    }
    let f = fib_function(n);
    for (i, &v) in f.iter().enumerate() {
        b.set_pif("F", i + 1, v)?;
    }
    let mut phi = 1usize;
    loop {
        b.add_unary("Phi", phi)?;
        match f.get(phi - 1) {
            Some(&next) => phi = next,
            None => break,
        }
    }
    Ok(b.build()?)
}

/// Spiral expanded with the PIF `P`: P(1) = N and P(k+1) = floor(P(k)/2)
/// while P(k) > 1.  Reading the halving parities backwards spells N in
/// binary; see [`binary_bits`].
pub fn binary_rep_structure(n: usize) -> Result<FiniteStructure, GenError> {
    let mut b = spiral_builder(binary_vocabulary(), n)?;
    let mut v = n;
    let mut k = 1usize;
    loop {
        b.set_pif("P", k, v)?;
        if v == 1 {
            break;
        }
        v /= 2;
        k += 1;
    }
    Ok(b.build()?)
}

/// The bit string of a binary-representation structure: bit k is 1 when
/// P(k) is odd, read from the last defined position down to 1.  Equals the
/// usual binary representation of N.
pub fn binary_bits(s: &FiniteStructure) -> String {
    let entries = s.pif_entries("P").unwrap_or_default();
    let mut bits = String::new();
    for &(_, v) in entries.iter().rev() {
        bits.push(if v % 2 == 1 { '1' } else { '0' });
    }
    bits
}

/// The definable grid extracted from a forcing structure: the origin set
/// Gamma, the within-layer step `g`, and the doubling PIF as vertical step.
#[derive(Debug, Clone)]
pub struct GridView {
    /// All elements of Gamma, ascending.
    pub gamma: Vec<Element>,
    /// Within-layer step: each Gamma element to the next one in its layer.
    pub g: BTreeMap<Element, Element>,
    /// Name of the vertical-step PIF (doubling).
    pub vertical: String,
    /// Elements of Gamma per full layer.
    pub width: usize,
    /// Number of full layers spanned (m0 through n).
    pub height: usize,
    /// Index of the origin layer.
    pub m0: usize,
    /// Index of the last full layer; layer n+1 is the partial top range.
    pub n: usize,
}

/// Layer index of x: k such that x is in [2^(k-1), 2^k - 1], capped at n+1.
fn layer_of(x: usize, n: usize) -> usize {
    let k = usize::BITS as usize - x.leading_zeros() as usize;
    k.min(n + 1)
}

/// Spiral expanded with the layered digit recurrences: unary families
/// `v0..v4` and `f0..f(d-1)`, plus `G` for the set Gamma.
///
/// Layers: L_k = [2^(k-1), 2^k - 1] for k <= n and L_(n+1) = [2^n, N],
/// where n = floor(log2 N).  On L_(n+1): v = 1, f = 0.  On L_n:
/// v(x) = 2 + v(2x) + v(2x+1) (v = 0 beyond N), f = 0.  Below L_n the
/// suffix sums of the child layer's v-values are reduced mod d: f(x) is the
/// running remainder and v(x) records each time the sum passes a multiple
/// of d.  Consequently the layer sums satisfy
/// sum(L_n) = N + 1 and sum(L_m) = sum(L_(m+1)) div d with remainder
/// f(2^(m-1)), so v(1) followed by f(1), f(2), f(4), ... spells N+1 in
/// base d, most significant digit first.
pub fn forcing_grid(n_size: usize, d: usize) -> Result<(FiniteStructure, GridView), GenError> {
    if n_size < 4 {
        return Err(GenError::TooSmall(n_size, 4));
    }
    if d < 3 {
        return Err(GenError::BadParam(format!("d = {d} must be at least 3")));
    }
    let big_n = n_size;
    let n = (usize::BITS as usize - 1) - big_n.leading_zeros() as usize;

    let mut v = vec![0usize; big_n + 1];
    let mut f = vec![0usize; big_n + 1];
    for x in (1 << n)..=big_n {
        v[x] = 1;
    }
    let child = |v: &[usize], y: usize| if y <= big_n { v[y] } else { 0 };
    for x in (1 << (n - 1))..(1 << n) {
        v[x] = 2 + child(&v, 2 * x) + child(&v, 2 * x + 1);
    }
    for m in (1..n).rev() {
        // Right-to-left suffix sums over the children in L_(m+1).
        let (lo, hi) = (1usize << (m - 1), (1usize << m) - 1);
        let mut suffix = 0usize;
        for x in (lo..=hi).rev() {
            let before = suffix;
            suffix += child(&v, 2 * x) + child(&v, 2 * x + 1);
            f[x] = suffix % d;
            v[x] = suffix / d - before / d;
            if v[x] > 4 {
                return Err(GenError::BadParam(format!(
                    "v({x}) = {} exceeds 4; d = {d} is too small for N = {big_n}",
                    v[x]
                )));
            }
        }
    }

    // m0: the longest prefix of zero digits at the layer starts.
    let mut m0 = 0usize;
    while m0 < n && f[1 << m0] == 0 {
        m0 += 1;
    }
    // When the most significant digit f(1) is nonzero the origin layer is
    // empty and the grid degenerates; this happens only when N+1 fills all
    // n-1 digit positions in base d.
    let origin: Vec<usize> = if m0 == 0 {
        Vec::new()
    } else {
        ((1usize << (m0 - 1))..(1usize << m0)).collect()
    };
    let mut gamma: Vec<usize> = Vec::new();
    for &x in &origin {
        let mut y = x;
        while y <= big_n {
            gamma.push(y);
            y *= 2;
        }
    }
    gamma.sort_unstable();

    let mut g = BTreeMap::new();
    for w in gamma.windows(2) {
        if layer_of(w[0], n) == layer_of(w[1], n) {
            g.insert(w[0], w[1]);
        }
    }

    let unary: Vec<String> = (0..5)
        .map(|i| format!("v{i}"))
        .chain((0..d).map(|i| format!("f{i}")))
        .chain(["G".to_string()])
        .collect();
    let vocab = Vocabulary::new(
        unary,
        vec![SUCC.to_string(), DBL.to_string()],
        vec![],
    )
    .unwrap();
    let mut b = spiral_builder(vocab, big_n)?;
    for x in 1..=big_n {
        b.add_unary(&format!("v{}", v[x]), x)?;
        b.add_unary(&format!("f{}", f[x]), x)?;
    }
    for &x in &gamma {
        b.add_unary("G", x)?;
    }
    let view = GridView {
        gamma,
        g,
        vertical: DBL.to_string(),
        width: if m0 == 0 { 0 } else { 1 << (m0 - 1) },
        height: if m0 == 0 { 0 } else { n - m0 + 1 },
        m0,
        n,
    };
    Ok((b.build()?, view))
}

/// Layer sums and digit data of a forcing structure, for checking the
/// recurrence identities.  Returns (layer index k, sum of v over L_k) for
/// k = 1..=n+1.
pub fn forcing_layer_sums(s: &FiniteStructure) -> Vec<(usize, usize)> {
    let big_n = s.size();
    let n = (usize::BITS as usize - 1) - big_n.leading_zeros() as usize;
    let vval = |x: usize| {
        (0..5)
            .find(|i| s.unary(&format!("v{i}"), x) == Some(true))
            .expect("every element carries a v label")
    };
    let mut out = Vec::new();
    for k in 1..=n + 1 {
        let lo = 1usize << (k - 1);
        let hi = if k == n + 1 { big_n } else { (1usize << k) - 1 };
        out.push((k, (lo..=hi).map(vval).sum()));
    }
    out
}

/// Reads v(1) and the digits f(1), f(2), f(4), ... from a forcing structure
/// and folds them in base d.  Equals N + 1.
pub fn forcing_reconstruct(s: &FiniteStructure, d: usize) -> usize {
    let big_n = s.size();
    let n = (usize::BITS as usize - 1) - big_n.leading_zeros() as usize;
    let label = |prefix: &str, cap: usize, x: usize| {
        (0..cap)
            .find(|i| s.unary(&format!("{prefix}{i}"), x) == Some(true))
            .expect("every element carries the label family")
    };
    let mut acc = label("v", 5, 1);
    for m in 1..n {
        acc = acc * d + label("f", d, 1 << (m - 1));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::is_planar;
    use crate::structure::{gaifman_graph, max_degree};

    #[test]
    fn spiral_entries_and_edges() {
        let s = spiral(8).unwrap();
        assert_eq!(s.pif(DBL, 3), Some(6));
        assert_eq!(s.pif(SUCC, 8), None);
        assert_eq!(s.pif(SUCC, 7), Some(8));
        let s = spiral(4).unwrap();
        assert_eq!(
            gaifman_graph(&s).edges(),
            vec![(1, 2), (2, 3), (2, 4), (3, 4)]
        );
        assert!(matches!(spiral(1), Err(GenError::TooSmall(1, 2))));
    }

    #[test]
    fn powers_marks_powers_of_two() {
        let s = powers_structure(16).unwrap();
        assert_eq!(s.unary_set("P").unwrap(), vec![1, 2, 4, 8, 16]);
        let s = powers_structure(6).unwrap();
        assert_eq!(s.unary_set("P").unwrap(), vec![1, 2, 4]);
        assert_eq!(s.unary("P", 6), Some(false));
    }

    #[test]
    fn multiplication_tables_and_degree() {
        let s = multiplication_structure(12, 3).unwrap();
        assert_eq!(s.constant("C"), Some(3));
        assert_eq!(s.pif("mulC", 2), Some(6));
        assert_eq!(s.pif("mulC", 4), Some(12));
        assert_eq!(s.pif("mulC", 5), None);
        assert_eq!(s.pif("addC", 9), Some(12));
        assert_eq!(s.pif("addC", 10), None);
        assert!(max_degree(&gaifman_graph(&s)) <= 8);
    }

    #[test]
    fn fibonacci_recurrence_and_planar_variant() {
        let s = fibonacci_structure(21, false).unwrap();
        let f: Vec<usize> = (1..=8).map(|x| s.pif("F", x).unwrap()).collect();
        assert_eq!(f, vec![2, 3, 5, 7, 8, 10, 11, 13]);
        assert_eq!(s.unary_set("Phi").unwrap(), vec![1, 2, 3, 5, 8, 13, 21]);
        let p = fibonacci_structure(21, true).unwrap();
        assert_eq!(p.unary_set("Phi").unwrap(), vec![1, 2, 3, 5, 8, 13, 21]);
        assert!(max_degree(&gaifman_graph(&p)) <= 4);
        assert!(is_planar(&gaifman_graph(&p)));
    }

    #[test]
    fn binary_bits_spell_the_size() {
        assert_eq!(binary_bits(&binary_rep_structure(6).unwrap()), "110");
        assert_eq!(binary_bits(&binary_rep_structure(32).unwrap()), "100000");
        assert_eq!(binary_bits(&binary_rep_structure(45).unwrap()), "101101");
        assert!(max_degree(&gaifman_graph(&binary_rep_structure(64).unwrap())) <= 6);
    }

    #[test]
    fn forcing_grid_recurrences_and_reconstruction() {
        let (s, view) = forcing_grid(100, 11).unwrap();
        let sums = forcing_layer_sums(&s);
        assert_eq!(sums.iter().find(|&&(k, _)| k == 6), Some(&(6, 101)));
        // v(50) = 2 + v(100) + v(101), and position 101 is out of range.
        assert_eq!(s.unary("v3", 50), Some(true));
        assert_eq!(forcing_reconstruct(&s, 11), 101);
        assert!(view.width * view.height <= 100);
        // Below the top full layer every element has v in {0, 1}.
        for x in 1..32usize {
            assert!(s.unary("v0", x) == Some(true) || s.unary("v1", x) == Some(true));
        }
        assert!(is_planar(&gaifman_graph(&s)));
    }
}
