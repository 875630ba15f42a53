//! The bear construction: vertices choose an incident tuple for every
//! vertex of the tree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::require_core_tree;
use crate::algebra::DEFAULT_SIZE_GUARD;
use crate::error::{Error, Result};
use crate::structure::{Structure, Tuple};

/// Incident blocks of every vertex, as `(relation, tuple index)`.
pub(crate) fn blocks_at(f: &Structure) -> Vec<Vec<(usize, usize)>> {
    f.incidence()
}

/// Mixed-radix enumeration of one choice per slot.
pub(crate) fn for_each_choice(radices: &[usize], mut visit: impl FnMut(&[usize])) {
    if radices.contains(&0) {
        return;
    }
    let mut digits = alloc::vec![0usize; radices.len()];
    loop {
        visit(&digits);
        let mut k = radices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < radices[k] {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Visits every `arity`-tuple over `0..n`, in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, arity: usize, visit: impl FnMut(&[usize])) {
    for_each_choice(&alloc::vec![n; arity], visit);
}

/// The raw bear dual of a core tree.
///
/// Vertex names are `f` followed by the chosen tuple of each tree vertex,
/// written as `<relation>:<tuple index>` and joined by `.`.
pub fn bear_dual(f: &Structure) -> Result<Structure> {
    require_core_tree(f)?;
    let blocks = blocks_at(f);
    let radices: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let count = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r).filter(|&t| t <= DEFAULT_SIZE_GUARD))
        .ok_or_else(|| Error::guard("dual-size", format!("bear dual exceeds {DEFAULT_SIZE_GUARD} vertices")))?;
    let n = f.len();
    if let Some(bound) = u32::try_from(n).ok().and_then(|e| n.checked_pow(e)) {
        if count > bound {
            return Err(Error::Invariant(format!("bear dual has {count} > n^n vertices")));
        }
    }
    // choice[v][x] = block chosen at tree vertex x by dual vertex v
    let mut choice: Vec<Vec<(usize, usize)>> = Vec::with_capacity(count);
    let mut names: Vec<String> = Vec::with_capacity(count);
    for_each_choice(&radices, |digits| {
        let c: Vec<(usize, usize)> = digits.iter().enumerate().map(|(x, &d)| blocks[x][d]).collect();
        let parts: Vec<String> = c.iter().map(|(i, k)| format!("{i}:{k}")).collect();
        names.push(format!("f{}", parts.join(".")));
        choice.push(c);
    });
    let sig = f.sig();
    let mut rels: Vec<Vec<Tuple>> = Vec::with_capacity(sig.len());
    for i in 0..sig.len() {
        let arity = sig.arity(i);
        let mut rel = Vec::new();
        for_each_tuple(count, arity, |t| {
            let blocked = f
                .relation(i)
                .iter()
                .enumerate()
                .any(|(k, e)| t.iter().zip(e.iter()).all(|(&v, &x)| choice[v][x] == (i, k)));
            if !blocked {
                rel.push(t.to_vec());
            }
        });
        rels.push(rel);
    }
    Ok(Structure::from_parts_unchecked(sig.clone(), names, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{path, tournament};
    use crate::hom::{core_of, hom_exists, is_isomorphic};

    #[test]
    fn single_edge() {
        let d = bear_dual(&path(1)).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.edge_count(), 0);
        assert!(is_isomorphic(&core_of(&d), &tournament(1)).unwrap());
    }

    #[test]
    fn paths_give_tournaments() {
        for k in 2..=3 {
            let d = bear_dual(&path(k)).unwrap();
            assert!(!hom_exists(&path(k), &d).unwrap());
            assert!(is_isomorphic(&core_of(&d), &tournament(k)).unwrap());
        }
    }

    #[test]
    fn rejects_non_trees() {
        let c3 = crate::fixtures::directed_cycle(3);
        assert!(matches!(bear_dual(&c3), Err(Error::NotCoreTree(_))));
        let b = crate::fixtures::bottom(c3.sig());
        assert_eq!(bear_dual(&b), Err(Error::TrivialTree));
    }

    #[test]
    fn choices_enumerate_in_order() {
        let mut seen = Vec::new();
        for_each_choice(&[2, 1, 2], |d| seen.push(d.to_vec()));
        assert_eq!(seen, [[0, 0, 0], [0, 0, 1], [1, 0, 0], [1, 0, 1]]);
    }
}
