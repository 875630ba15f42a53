//! Canonical forms and exhaustive enumeration of small structures.
//!
//! The canonical form of a structure is the lexicographically least
//! encoding over all vertex orders that respect a colour refinement of the
//! vertices, so two structures share a form exactly when they are
//! isomorphic.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure, Tuple};

/// Default vertex limit for [`canonical_form`].
pub const DEFAULT_CANON_LIMIT: usize = 9;

/// Default ceiling on the number of labelled structures an enumeration may visit.
pub const DEFAULT_ENUM_CEILING: u128 = 1 << 22;

/// Encoding: vertex count, then per relation the tuple count followed by
/// the relabelled tuples in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Big-endian byte string of the encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    /// Lowercase hex of [`Self::to_bytes`].
    pub fn to_hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for b in self.to_bytes() {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    /// Rebuilds the canonical representative (vertices named `0..n`).
    pub fn decode(&self, sig: &Signature) -> Structure {
        let n = self.0[0] as usize;
        let mut pos = 1;
        let mut rels = Vec::with_capacity(sig.len());
        for &arity in sig.arities() {
            let count = self.0[pos] as usize;
            pos += 1;
            let mut rel = Vec::with_capacity(count);
            for _ in 0..count {
                rel.push(self.0[pos..pos + arity].iter().map(|&x| x as usize).collect());
                pos += arity;
            }
            rels.push(rel);
        }
        Structure::from_indices(sig.clone(), n, rels).expect("decodable form")
    }
}

fn encode(a: &Structure, perm: &[usize]) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 + a.sig().len() + a.edge_count() * a.sig().max_arity());
    out.push(a.len() as u32);
    for rel in a.relations() {
        let mut tuples: Vec<Tuple> = rel.iter().map(|t| t.iter().map(|&v| perm[v]).collect()).collect();
        tuples.sort_unstable();
        out.push(tuples.len() as u32);
        for t in tuples {
            out.extend(t.iter().map(|&v| v as u32));
        }
    }
    out
}

/// Iterated colour refinement; returns a colour per vertex, colours ranked
/// by their isomorphism-invariant signatures.
fn refine(a: &Structure) -> Vec<usize> {
    let n = a.len();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let mut sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n).map(|v| (colour[v], Vec::new())).collect();
        for (i, t) in a.edges() {
            for (p, &v) in t.iter().enumerate() {
                let mut entry = Vec::with_capacity(t.len() + 2);
                entry.push(i);
                entry.push(p);
                entry.extend(t.iter().map(|&w| colour[w]));
                sigs[v].1.push(entry);
            }
        }
        for s in sigs.iter_mut() {
            s.1.sort_unstable();
        }
        let mut distinct: Vec<&(usize, Vec<Vec<usize>>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).expect("present")).collect();
        let count = distinct.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

/// Canonical form with the default vertex limit.
pub fn canonical_form(a: &Structure) -> Result<CanonicalForm> {
    canonical_form_with_limit(a, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(a: &Structure, limit: usize) -> Result<CanonicalForm> {
    canonical_labelling(a, limit).map(|(f, _)| f)
}

/// Canonical form together with a relabelling `perm` (vertex `v` goes to
/// `perm[v]`) that realizes it.
pub fn canonical_labelling(a: &Structure, limit: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    if a.len() > limit {
        return Err(Error::guard("canonical-form", format!("{} vertices exceeds the limit {limit}", a.len())));
    }
    let colour = refine(a);
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&v| (colour[v], v));
    // blocks of equal colour, in colour order
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if colour[b[0]] == colour[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    let mut perm = vec![0usize; a.len()];
    let mut block_orders: Vec<Vec<usize>> = blocks.clone();
    permute_blocks(a, &blocks, 0, &mut block_orders, &mut perm, &mut best);
    let (code, perm) = best.expect("at least one labelling");
    Ok((CanonicalForm(code), perm))
}

fn permute_blocks(
    a: &Structure,
    blocks: &[Vec<usize>],
    k: usize,
    current: &mut Vec<Vec<usize>>,
    perm: &mut Vec<usize>,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    if k == blocks.len() {
        let mut label = 0;
        for b in current.iter() {
            for &v in b {
                perm[v] = label;
                label += 1;
            }
        }
        let code = encode(a, perm);
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            *best = Some((code, perm.clone()));
        }
        return;
    }
    let mut items = blocks[k].clone();
    for_each_permutation(&mut items, 0, &mut |p| {
        current[k] = p.to_vec();
        permute_blocks(a, blocks, k + 1, current, perm, best);
    });
}

fn for_each_permutation(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for j in k..items.len() {
        items.swap(k, j);
        for_each_permutation(items, k + 1, f);
        items.swap(k, j);
    }
}

/// Number of labelled structures on exactly `n` vertices, or `None` when
/// it does not fit in a `u128`.
pub fn labeled_count(sig: &Signature, n: usize) -> Option<u128> {
    let bits = tuple_slots(sig, n)?;
    if bits >= 128 {
        None
    } else {
        Some(1u128 << bits)
    }
}

fn tuple_slots(sig: &Signature, n: usize) -> Option<u32> {
    let mut total: u32 = 0;
    for &a in sig.arities() {
        let c = (n as u32).checked_pow(a as u32)?;
        total = total.checked_add(c)?;
    }
    Some(total)
}

/// Every structure with `1..=n` vertices, ordered by vertex count.
///
/// With `up_to_iso`, each isomorphism class appears once as its canonical
/// representative, ordered by canonical form within each vertex count.
/// Without it, labelled structures appear in bitmask order.
pub fn enumerate_structures(sig: &Signature, n: usize, up_to_iso: bool, ceiling: u128) -> Result<Vec<Structure>> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut total: u128 = 0;
    for k in 1..=n {
        let c = labeled_count(sig, k)
            .ok_or_else(|| Error::guard("enumeration-ceiling", format!("labelled count at {k} vertices overflows")))?;
        total = total.saturating_add(c);
    }
    if total > ceiling {
        return Err(Error::guard(
            "enumeration-ceiling",
            format!("{total} labelled structures exceed the ceiling {ceiling}"),
        ));
    }
    let mut out = Vec::new();
    for k in 1..=n {
        let slots: Vec<(usize, Tuple)> = all_tuples(sig, k);
        let count = 1u64 << slots.len();
        if up_to_iso {
            let mut forms = BTreeSet::new();
            for mask in 0..count {
                let s = from_mask(sig, k, &slots, mask);
                forms.insert(canonical_labelling(&s, usize::MAX)?.0);
            }
            out.extend(forms.into_iter().map(|f| f.decode(sig)));
        } else {
            out.extend((0..count).map(|mask| from_mask(sig, k, &slots, mask)));
        }
    }
    Ok(out)
}

/// Enumeration with the default ceiling.
pub fn enumerate_up_to_iso(sig: &Signature, n: usize) -> Result<Vec<Structure>> {
    enumerate_structures(sig, n, true, DEFAULT_ENUM_CEILING)
}

fn all_tuples(sig: &Signature, k: usize) -> Vec<(usize, Tuple)> {
    let mut out = Vec::new();
    for (i, &a) in sig.arities().iter().enumerate() {
        let total = k.pow(a as u32);
        for code in 0..total {
            let mut t = vec![0; a];
            let mut c = code;
            for p in (0..a).rev() {
                t[p] = c % k;
                c /= k;
            }
            out.push((i, t));
        }
    }
    out
}

fn from_mask(sig: &Signature, k: usize, slots: &[(usize, Tuple)], mask: u64) -> Structure {
    let mut rels: Vec<Vec<Tuple>> = vec![Vec::new(); sig.len()];
    for (b, (i, t)) in slots.iter().enumerate() {
        if mask >> b & 1 == 1 {
            rels[*i].push(t.clone());
        }
    }
    Structure::from_indices(sig.clone(), k, rels).expect("valid enumerated structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn permutation_invariance() {
        let a = fixtures::komarek_path(2, 1);
        let perm = [3, 0, 4, 1, 2];
        let b = a.permuted(&perm);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn path_differs_from_zigzag() {
        let zigzag = Structure::digraph(3, &[(0, 1), (2, 1)]).unwrap();
        assert_ne!(canonical_form(&fixtures::path(2)).unwrap(), canonical_form(&zigzag).unwrap());
    }

    #[test]
    fn guard_trips() {
        let t = fixtures::tournament(10);
        assert!(canonical_form(&t).unwrap_err().is_guard());
        assert!(canonical_form_with_limit(&t, 10).is_ok());
    }

    #[test]
    fn decode_round_trip() {
        let a = fixtures::tournament(3);
        let f = canonical_form(&a).unwrap();
        let d = f.decode(a.sig());
        assert_eq!(canonical_form(&d).unwrap(), f);
    }

    #[test]
    fn small_counts() {
        let sig = Signature::digraph();
        assert_eq!(enumerate_up_to_iso(&sig, 1).unwrap().len(), 2);
        assert_eq!(labeled_count(&sig, 2), Some(16));
        // digraphs with loops on two vertices up to isomorphism
        assert_eq!(enumerate_up_to_iso(&sig, 2).unwrap().len(), 2 + 10);
        let labelled = enumerate_structures(&sig, 2, false, DEFAULT_ENUM_CEILING).unwrap();
        assert_eq!(labelled.len(), 2 + 16);
    }

    #[test]
    fn ceiling_is_enforced() {
        let sig = Signature::digraph();
        let err = enumerate_structures(&sig, 4, true, 1000).unwrap_err();
        assert!(err.is_guard());
    }
}
