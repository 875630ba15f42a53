//! Generation of small trees and the structure `D*`.
//!
//! Every tree arises from a smaller one by adding a tuple that shares
//! exactly one vertex with it, so trees are grown edge by edge and
//! deduplicated by canonical form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::sum;
use crate::canon::{canonical_labelling, CanonicalForm};
use crate::error::Result;
use crate::fixtures::bottom;
use crate::hom::is_core;
use crate::structure::{Signature, Structure, Tuple};

// all one-tuple extensions of `t` by a tuple of kind `i`
fn extensions(t: &Structure, i: usize) -> Vec<Structure> {
    let sig = t.sig();
    let arity = sig.arity(i);
    let mut out = Vec::new();
    for v in 0..t.len() {
        for pos in 0..arity {
            let mut next = t.len();
            let tuple: Tuple = (0..arity)
                .map(|p| {
                    if p == pos {
                        v
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect();
            let mut rels = t.relations().to_vec();
            rels[i].push(tuple);
            out.push(Structure::from_indices(sig.clone(), next, rels).expect("valid extension"));
        }
    }
    out
}

fn grow(sig: &Signature, max_edges: usize, allowed: impl Fn(&Structure, usize) -> bool) -> Result<Vec<Structure>> {
    let mut levels: Vec<Vec<Structure>> = vec![vec![bottom(sig).with_index_names()]];
    for _ in 0..max_edges {
        let mut next: BTreeMap<CanonicalForm, Structure> = BTreeMap::new();
        for t in levels.last().expect("nonempty") {
            for i in 0..sig.len() {
                if !allowed(t, i) {
                    continue;
                }
                for e in extensions(t, i) {
                    let form = canonical_labelling(&e, usize::MAX)?.0;
                    next.entry(form).or_insert_with_key(|f| f.decode(sig));
                }
            }
        }
        levels.push(next.into_values().collect());
    }
    Ok(levels.into_iter().flatten().collect())
}

/// All trees with at most `max_edges` tuples, one per isomorphism class,
/// ordered by edge count and then canonical form. Includes `⊥`.
pub fn enumerate_trees(sig: &Signature, max_edges: usize) -> Result<Vec<Structure>> {
    grow(sig, max_edges, |_, _| true)
}

/// The trees of [`enumerate_trees`] that are cores and have an edge.
pub fn enumerate_core_trees(sig: &Signature, max_edges: usize) -> Result<Vec<Structure>> {
    Ok(enumerate_trees(sig, max_edges)?.into_iter().filter(|t| t.edge_count() > 0 && is_core(t)).collect())
}

/// The trees with at most one tuple of each kind, ordered by canonical form.
pub fn d_star_summands(sig: &Signature) -> Result<Vec<Structure>> {
    let mut all = grow(sig, sig.len(), |t, i| t.relation(i).is_empty())?;
    let mut keyed: Vec<(CanonicalForm, Structure)> = Vec::with_capacity(all.len());
    for t in all.drain(..) {
        keyed.push((canonical_labelling(&t, usize::MAX)?.0, t));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// The sum of all trees with at most one tuple of each kind.
pub fn d_star(sig: &Signature) -> Result<Structure> {
    sum(&d_star_summands(sig)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify;
    use crate::hom::{core_of, hom_equivalent};

    #[test]
    fn oriented_tree_counts() {
        // oriented trees with 0..=3 edges: 1, 1, 3, 8
        let sig = Signature::digraph();
        let trees = enumerate_trees(&sig, 3).unwrap();
        let mut by_edges = [0usize; 4];
        for t in &trees {
            assert!(classify(t).tree);
            by_edges[t.edge_count()] += 1;
        }
        assert_eq!(by_edges, [1, 1, 3, 8]);
    }

    #[test]
    fn ternary_single_edge() {
        let sig = Signature::new(vec![3]).unwrap();
        let trees = enumerate_trees(&sig, 1).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[1].len(), 3);
    }

    #[test]
    fn core_trees_small() {
        let sig = Signature::digraph();
        // P_1 and P_2 are the only cores up to two edges
        assert_eq!(enumerate_core_trees(&sig, 2).unwrap().len(), 2);
    }

    #[test]
    fn d_star_digraph() {
        let sig = Signature::digraph();
        let summands = d_star_summands(&sig).unwrap();
        assert_eq!(summands.len(), 2);
        let d = d_star(&sig).unwrap();
        assert!(hom_equivalent(&core_of(&d), &crate::fixtures::path(1)).unwrap());
    }

    #[test]
    fn d_star_two_kinds() {
        let sig = Signature::new(vec![2, 2]).unwrap();
        let summands = d_star_summands(&sig).unwrap();
        // ⊥, one edge of each kind, and the four ways to join them at a vertex
        assert_eq!(summands.len(), 1 + 2 + 4);
        for t in &summands {
            assert!(classify(t).tree);
            assert!(t.relations().iter().all(|r| r.len() <= 1));
        }
    }
}
