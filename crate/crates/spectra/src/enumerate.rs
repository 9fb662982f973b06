//! Brute-force enumeration of all structures of a given size: the naive
//! oracle the pruned search is checked against.

use std::collections::BTreeSet;

use crate::logic::{Assignment, Element, Evaluator, Formula, LogicError, Vocabulary};
use crate::structure::{FiniteStructure, StructureBuilder};

/// All partial injective maps on {1..n}, as dense tables (`v[a-1]` is the
/// image of `a`, if any).  There are sum_k C(n,k)^2 k! of them.
pub fn partial_injective_maps(n: usize) -> Vec<Vec<Option<Element>>> {
    let mut out = Vec::new();
    let mut table: Vec<Option<Element>> = vec![None; n];
    let mut used = vec![false; n];
    fn go(
        a: usize,
        n: usize,
        table: &mut Vec<Option<Element>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Option<Element>>>,
    ) {
        if a > n {
            out.push(table.clone());
            return;
        }
        table[a - 1] = None;
        go(a + 1, n, table, used, out);
        for t in 1..=n {
            if !used[t - 1] {
                used[t - 1] = true;
                table[a - 1] = Some(t);
                go(a + 1, n, table, used, out);
                used[t - 1] = false;
            }
        }
        table[a - 1] = None;
    }
    go(1, n, &mut table, &mut used, &mut out);
    out
}

/// Assembles a structure from dense tables.  Panics on injectivity or range
/// violations; intended for enumeration output.
pub fn structure_from_parts(
    vocab: &Vocabulary,
    n: usize,
    pifs: &[&Vec<Option<Element>>],
    unaries: &[u64],
    constants: &[Element],
) -> FiniteStructure {
    let mut b = StructureBuilder::new(vocab.clone(), n).unwrap();
    for (name, table) in vocab.pif_symbols().iter().zip(pifs) {
        for (a, t) in table.iter().enumerate() {
            if let Some(t) = t {
                b.set_pif(name, a + 1, *t).unwrap();
            }
        }
    }
    for (name, mask) in vocab.unary_symbols().iter().zip(unaries) {
        for e in 1..=n {
            if mask & (1 << (e - 1)) != 0 {
                b.add_unary(name, e).unwrap();
            }
        }
    }
    for (name, e) in vocab.constant_symbols().iter().zip(constants) {
        b.set_constant(name, *e).unwrap();
    }
    b.build().unwrap()
}

/// Calls `visit` on every structure over `vocab` with universe {1..n},
/// stopping early when it returns false.  Exponential; for n <= 4 or so.
pub fn for_each_structure<F>(vocab: &Vocabulary, n: usize, mut visit: F)
where
    F: FnMut(&FiniteStructure) -> bool,
{
    let maps = partial_injective_maps(n);
    let p = vocab.pif_symbols().len();
    let u = vocab.unary_symbols().len();
    let c = vocab.constant_symbols().len();
    let mut pif_idx = vec![0usize; p];
    let mut go = true;
    while go {
        let pifs: Vec<&Vec<Option<Element>>> = pif_idx.iter().map(|&i| &maps[i]).collect();
        let mut unary_masks = vec![0u64; u];
        let mut go_u = true;
        while go_u && go {
            let mut consts = vec![1usize; c];
            let mut go_c = true;
            while go_c && go {
                let s = structure_from_parts(vocab, n, &pifs, &unary_masks, &consts);
                if !visit(&s) {
                    go = false;
                }
                go_c = false;
                for slot in consts.iter_mut() {
                    if *slot < n {
                        *slot += 1;
                        go_c = true;
                        break;
                    }
                    *slot = 1;
                }
            }
            go_u = false;
            for mask in unary_masks.iter_mut() {
                if *mask + 1 < (1u64 << n) {
                    *mask += 1;
                    go_u = true;
                    break;
                }
                *mask = 0;
            }
        }
        if !go {
            break;
        }
        let mut advanced = false;
        for slot in pif_idx.iter_mut() {
            if *slot + 1 < maps.len() {
                *slot += 1;
                advanced = true;
                break;
            }
            *slot = 0;
        }
        go = advanced;
    }
}

/// Does `phi` have a model of size exactly n?  Exhaustive.
pub fn brute_force_model_exists(
    phi: &Formula,
    vocab: &Vocabulary,
    n: usize,
) -> Result<bool, LogicError> {
    let ev = Evaluator::new(vocab, phi, vec![])?;
    let mut found = false;
    for_each_structure(vocab, n, |s| {
        if ev.eval(s, &Assignment::new()).unwrap() {
            found = true;
            return false;
        }
        true
    });
    Ok(found)
}

/// The spectrum of `phi` restricted to [lo, hi], by brute force.
pub fn brute_force_spectrum(
    phi: &Formula,
    vocab: &Vocabulary,
    lo: usize,
    hi: usize,
) -> Result<BTreeSet<usize>, LogicError> {
    let mut out = BTreeSet::new();
    for n in lo.max(1)..=hi {
        if brute_force_model_exists(phi, vocab, n)? {
            out.insert(n);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{exactly_n, parse_formula};

    #[test]
    fn map_counts_match_the_closed_form() {
        // sum_k C(n,k)^2 k!
        assert_eq!(partial_injective_maps(0).len(), 1);
        assert_eq!(partial_injective_maps(1).len(), 2);
        assert_eq!(partial_injective_maps(2).len(), 7);
        assert_eq!(partial_injective_maps(3).len(), 34);
        assert_eq!(partial_injective_maps(4).len(), 209);
        assert_eq!(partial_injective_maps(5).len(), 1546);
    }

    #[test]
    fn cardinality_sentences_have_singleton_spectra() {
        let vocab = Vocabulary::new(vec!["A".to_string()], vec!["f".to_string()], vec![]).unwrap();
        let phi = exactly_n(3).unwrap();
        assert_eq!(brute_force_spectrum(&phi, &vocab, 1, 4).unwrap(), [3].into());
    }

    #[test]
    fn involution_sentence_has_even_or_odd_fixed_points() {
        // f total and an involution with no fixed points: even sizes only.
        let vocab = Vocabulary::new(Vec::<String>::new(), vec!["f".to_string()], vec![]).unwrap();
        let phi = parse_formula("forall x. def(f(x)) & f(f(x)) = x & !(f(x) = x)", &vocab).unwrap();
        assert_eq!(brute_force_spectrum(&phi, &vocab, 1, 5).unwrap(), [2, 4].into());
    }
}
