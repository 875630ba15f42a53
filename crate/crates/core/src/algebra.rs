//! Sums, products, exponentials, and the two constants of the
//! homomorphism order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::structure::{Signature, Structure, Tuple};

/// Default cap on the vertex count of products and exponentials.
pub const DEFAULT_SIZE_GUARD: usize = 100_000;

fn shared_sig(parts: &[Structure]) -> Result<&Signature> {
    let first = parts.first().ok_or(Error::Empty("structure list"))?;
    if parts.iter().any(|p| p.sig() != first.sig()) {
        return Err(Error::SignatureMismatch);
    }
    Ok(first.sig())
}

// Uses `names` unless two of them collide, in which case vertices are
// named by index.
fn assemble(sig: &Signature, names: Vec<String>, rels: Vec<Vec<Tuple>>) -> Structure {
    let unique = names.iter().collect::<BTreeSet<_>>().len() == names.len();
    let names = if unique { names } else { (0..names.len()).map(|k| k.to_string()).collect() };
    Structure::from_parts_unchecked(sig.clone(), names, rels)
}

/// Disjoint union; vertex `v` of part `j` is named `j/<name>`.
pub fn sum(parts: &[Structure]) -> Result<Structure> {
    let sig = shared_sig(parts)?;
    let mut names = Vec::new();
    let mut rels: Vec<Vec<Tuple>> = vec![Vec::new(); sig.len()];
    let mut offset = 0;
    for (j, p) in parts.iter().enumerate() {
        names.extend(p.names().iter().map(|n| format!("{j}/{n}")));
        for (i, t) in p.edges() {
            rels[i].push(t.iter().map(|&v| v + offset).collect());
        }
        offset += p.len();
    }
    Ok(assemble(sig, names, rels))
}

/// The injections of [`sum`], one vertex map per part.
pub fn injections(parts: &[Structure]) -> Vec<Vec<usize>> {
    let mut offset = 0;
    parts
        .iter()
        .map(|p| {
            let m = (offset..offset + p.len()).collect();
            offset += p.len();
            m
        })
        .collect()
}

/// Product with the default size guard.
pub fn product(parts: &[Structure]) -> Result<Structure> {
    product_with_guard(parts, DEFAULT_SIZE_GUARD)
}

/// Categorical product. Vertices are ordered row-major over the factors
/// (last factor fastest) and named `[a;b;...]`.
pub fn product_with_guard(parts: &[Structure], guard: usize) -> Result<Structure> {
    let sig = shared_sig(parts)?;
    let sizes: Vec<usize> = parts.iter().map(Structure::len).collect();
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&t| t <= guard))
        .ok_or_else(|| Error::guard("product-size", format!("product of sizes {sizes:?} exceeds {guard}")))?;
    let names = (0..total)
        .map(|idx| {
            let coords = unrank(idx, &sizes);
            let inner: Vec<&str> = coords.iter().zip(parts).map(|(&c, p)| p.name(c)).collect();
            format!("[{}]", inner.join(";"))
        })
        .collect();
    let mut rels = Vec::with_capacity(sig.len());
    for i in 0..sig.len() {
        let mut rel = Vec::new();
        let mut acc = vec![0usize; sig.arity(i)];
        combine(parts, i, 0, &sizes, &mut acc, &mut rel);
        rels.push(rel);
    }
    Ok(assemble(sig, names, rels))
}

// position-wise row-major combination of one tuple from each factor
fn combine(parts: &[Structure], i: usize, k: usize, sizes: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Tuple>) {
    if k == parts.len() {
        out.push(acc.clone());
        return;
    }
    for t in parts[k].relation(i) {
        let saved = acc.clone();
        for (a, &v) in acc.iter_mut().zip(t) {
            *a = *a * sizes[k] + v;
        }
        combine(parts, i, k + 1, sizes, acc, out);
        *acc = saved;
    }
}

fn unrank(mut idx: usize, sizes: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        coords[k] = idx % sizes[k];
        idx /= sizes[k];
    }
    coords
}

/// Coordinates of product vertex `idx` given factor sizes.
pub fn product_coords(idx: usize, sizes: &[usize]) -> Vec<usize> {
    unrank(idx, sizes)
}

/// The projections of [`product`], one vertex map per factor.
pub fn projections(parts: &[Structure]) -> Vec<Vec<usize>> {
    let sizes: Vec<usize> = parts.iter().map(Structure::len).collect();
    let total: usize = sizes.iter().product();
    let coords: Vec<Vec<usize>> = (0..total).map(|idx| unrank(idx, &sizes)).collect();
    (0..parts.len()).map(|k| coords.iter().map(|c| c[k]).collect()).collect()
}

/// Exponential with the default size guard.
pub fn exponential(c: &Structure, b: &Structure) -> Result<Structure> {
    exponential_with_guard(c, b, DEFAULT_SIZE_GUARD)
}

/// The structure `C^B` on all maps `bs B -> bs C`.
///
/// Map vertices are ordered row-major with the first vertex of `B` most
/// significant; [`exponential_map`] decodes an index.
pub fn exponential_with_guard(c: &Structure, b: &Structure, guard: usize) -> Result<Structure> {
    if c.sig() != b.sig() {
        return Err(Error::SignatureMismatch);
    }
    let sig = c.sig();
    let total = u32::try_from(b.len())
        .ok()
        .and_then(|e| c.len().checked_pow(e))
        .filter(|&t| t <= guard)
        .ok_or_else(|| Error::guard("exponential-size", format!("{}^{} maps exceed {guard}", c.len(), b.len())))?;
    let maps: Vec<Vec<usize>> = (0..total).map(|k| exponential_map(k, b.len(), c.len())).collect();
    let names = maps
        .iter()
        .map(|m| {
            let inner: Vec<&str> = m.iter().map(|&x| c.name(x)).collect();
            format!("<{}>", inner.join("|"))
        })
        .collect();
    let mut rels = Vec::with_capacity(sig.len());
    for i in 0..sig.len() {
        let arity = sig.arity(i);
        // prefixes of tuples of C, by length
        let mut prefixes: Vec<BTreeSet<&[usize]>> = vec![BTreeSet::new(); arity + 1];
        for t in c.relation(i) {
            for len in 1..=arity {
                prefixes[len].insert(&t[..len]);
            }
        }
        let mut rel = Vec::new();
        let mut chosen = Vec::with_capacity(arity);
        extend_exp(b.relation(i), &maps, &prefixes, arity, &mut chosen, &mut rel);
        rels.push(rel);
    }
    Ok(assemble(sig, names, rels))
}

fn extend_exp(
    b_rel: &[Tuple],
    maps: &[Vec<usize>],
    prefixes: &[BTreeSet<&[usize]>],
    arity: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Tuple>,
) {
    if chosen.len() == arity {
        out.push(chosen.clone());
        return;
    }
    let len = chosen.len() + 1;
    let mut image = vec![0usize; len];
    for f in 0..maps.len() {
        chosen.push(f);
        let ok = b_rel.iter().all(|bt| {
            for (p, &g) in chosen.iter().enumerate() {
                image[p] = maps[g][bt[p]];
            }
            prefixes[len].contains(&image[..])
        });
        if ok {
            extend_exp(b_rel, maps, prefixes, arity, chosen, out);
        }
        chosen.pop();
    }
}

/// The map `bs B -> bs C` at index `k` of the exponential's vertex order.
pub fn exponential_map(mut k: usize, b_len: usize, c_len: usize) -> Vec<usize> {
    let mut m = vec![0; b_len];
    for x in (0..b_len).rev() {
        m[x] = k % c_len;
        k /= c_len;
    }
    m
}

/// Index of a map in the exponential's vertex order.
pub fn exponential_index(map: &[usize], c_len: usize) -> usize {
    map.iter().fold(0, |acc, &x| acc * c_len + x)
}

/// The evaluation map `C^B x B -> C` as a vertex map on
/// `product(&[exponential(c, b), b])`.
pub fn eval_map(c: &Structure, b: &Structure) -> Vec<usize> {
    let total = c.len().pow(b.len() as u32);
    let mut out = Vec::with_capacity(total * b.len());
    for k in 0..total {
        let m = exponential_map(k, b.len(), c.len());
        out.extend(m.iter().copied());
    }
    out
}

/// The least and greatest elements, `⊥` and `⊤`.
pub fn constants(sig: &Signature) -> (Structure, Structure) {
    (fixtures::bottom(sig), fixtures::top(sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{path, tournament};
    use crate::hom::{hom_exists, is_isomorphic};

    #[test]
    fn sum_names_and_injections() {
        let s = sum(&[path(1), tournament(2)]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.name(2), "1/0");
        for (part, inj) in [path(1), tournament(2)].iter().zip(injections(&[path(1), tournament(2)])) {
            assert!(part.is_hom_to(&s, &inj));
        }
        assert_eq!(sum(&[]).unwrap_err(), Error::Empty("structure list"));
    }

    #[test]
    fn product_with_top_is_identity() {
        let p = path(2);
        let (_, top) = constants(p.sig());
        let prod = product(&[p.clone(), top]).unwrap();
        assert!(is_isomorphic(&prod, &p).unwrap());
        assert_eq!(prod.name(0), "[0;0]");
    }

    #[test]
    fn projections_are_homs() {
        let parts = [path(2), tournament(3)];
        let prod = product(&parts).unwrap();
        assert_eq!(prod.len(), 9);
        for (p, m) in parts.iter().zip(projections(&parts)) {
            assert!(prod.is_hom_to(p, &m));
        }
    }

    #[test]
    fn product_guard() {
        let err = product_with_guard(&[tournament(5), tournament(5)], 20).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn exponential_size_and_eval() {
        let c = tournament(2);
        let b = path(1);
        let e = exponential(&c, &b).unwrap();
        assert_eq!(e.len(), 4);
        let prod = product(&[e.clone(), b.clone()]).unwrap();
        assert!(prod.is_hom_to(&c, &eval_map(&c, &b)));
        // the diagonal tuple of a map is an edge exactly when the map is a homomorphism
        for k in 0..e.len() {
            let m = exponential_map(k, b.len(), c.len());
            assert_eq!(e.contains(0, &[k, k]), b.is_hom_to(&c, &m));
        }
        assert_eq!(exponential_index(&[1, 0], 2), 2);
    }

    #[test]
    fn exponential_of_top() {
        let (bottom, top) = constants(&Signature::digraph());
        let e = exponential(&top, &bottom).unwrap();
        assert!(is_isomorphic(&e, &top).unwrap());
        assert!(hom_exists(&bottom, &e).unwrap());
    }
}
