//! Deciding, up to a bound on tree size, whether a set of cores is the dual
//! side of a finite duality.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::transversal::{core_product, dual_set};
use super::tree_dual;
use crate::algebra::sum;
use crate::error::{Error, Result};
use crate::fixtures::top;
use crate::hom::{core_of, hom_equivalent, is_core, is_isomorphic, maps_to};
use crate::structure::Structure;
use crate::trees::enumerate_core_trees;

/// Cap on the number of obstruction choices combined into forests.
const MAX_HITTING_CHOICES: usize = 1 << 16;

/// Outcome of [`rhs_duality_decide_bounded`].
#[derive(Debug, Clone)]
pub struct RhsDecision {
    /// The forbidden forests, when a finite duality was found.
    pub forbidden: Option<Vec<Structure>>,
    /// Tree size bound used; absence is only conclusive up to this bound.
    pub edge_bound: usize,
    /// Minimal tree obstructions found for each input structure.
    pub obstructions: Vec<Vec<Structure>>,
}

/// Looks for forests `F` with `(F, Dset)` a finite duality, using only
/// core trees with at most `edge_bound` edges as components.
pub fn rhs_duality_decide_bounded(dset: &[Structure], edge_bound: usize) -> Result<RhsDecision> {
    let sig = dset.first().ok_or(Error::Empty("dual set"))?.sig();
    for (k, d) in dset.iter().enumerate() {
        if d.sig() != sig {
            return Err(Error::SignatureMismatch);
        }
        if !is_core(d) {
            return Err(Error::NotCore(format!("element {k}")));
        }
    }
    let trees = enumerate_core_trees(sig, edge_bound)?;
    let mut obstructions = Vec::with_capacity(dset.len());
    let mut shaped = true;
    for d in dset {
        let bad: Vec<&Structure> = trees.iter().filter(|t| !maps_to(t, d)).collect();
        let minimal: Vec<Structure> = bad
            .iter()
            .filter(|t| !bad.iter().any(|u| !core::ptr::eq(*u, **t) && maps_to(u, t)))
            .map(|t| (*t).clone())
            .collect();
        // D must be the product of the duals of its minimal obstructions
        let product_of_duals = if minimal.is_empty() {
            top(sig)
        } else {
            let duals = minimal.iter().map(tree_dual).collect::<Result<Vec<_>>>()?;
            core_product(&duals.iter().collect::<Vec<_>>())?
        };
        if !hom_equivalent(&product_of_duals, d)? {
            shaped = false;
        }
        obstructions.push(minimal);
    }
    let mut decision = RhsDecision { forbidden: None, edge_bound, obstructions };
    if !shaped || decision.obstructions.iter().any(Vec::is_empty) {
        return Ok(decision);
    }
    let forests = candidate_forests(&decision.obstructions)?;
    if forests.is_empty() {
        return Ok(decision);
    }
    let fd = match dual_set(&forests) {
        Ok(fd) => fd,
        Err(e) if e.is_guard() => return Err(e),
        Err(_) => return Ok(decision),
    };
    if same_up_to_iso(&fd.dual, dset)? {
        decision.forbidden = Some(forests);
    }
    Ok(decision)
}

// Forests hitting every obstruction set once, cored and reduced to the
// minimal ones.
fn candidate_forests(obstructions: &[Vec<Structure>]) -> Result<Vec<Structure>> {
    // trees identified by position in a shared list
    let mut pool: Vec<Structure> = Vec::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for ob in obstructions {
        let mut ids = Vec::new();
        for t in ob {
            let mut id = None;
            for (k, p) in pool.iter().enumerate() {
                if is_isomorphic(p, t)? {
                    id = Some(k);
                    break;
                }
            }
            ids.push(id.unwrap_or_else(|| {
                pool.push(t.clone());
                pool.len() - 1
            }));
        }
        sets.push(ids);
    }
    let choices: usize = sets.iter().map(Vec::len).try_fold(1usize, |a, l| a.checked_mul(l)).unwrap_or(usize::MAX);
    if choices > MAX_HITTING_CHOICES {
        return Err(Error::guard("hitting-sets", format!("{choices} obstruction choices")));
    }
    let mut hitting: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let radices: Vec<usize> = sets.iter().map(Vec::len).collect();
    super::bear::for_each_choice(&radices, |digits| {
        hitting.insert(digits.iter().zip(&sets).map(|(&d, s)| s[d]).collect());
    });
    let mut forests: Vec<Structure> = Vec::new();
    for h in &hitting {
        let parts: Vec<Structure> = h.iter().map(|&k| pool[k].clone()).collect();
        forests.push(core_of(&sum(&parts)?));
    }
    // keep minimal forests, one per equivalence class
    let mut minimal: Vec<Structure> = Vec::new();
    for (k, f) in forests.iter().enumerate() {
        let dominated = forests.iter().enumerate().any(|(j, g)| j != k && maps_to(g, f) && (!maps_to(f, g) || j < k));
        if !dominated {
            minimal.push(f.clone());
        }
    }
    Ok(minimal)
}

fn same_up_to_iso(a: &[Structure], b: &[Structure]) -> Result<bool> {
    for x in a {
        let mut hit = false;
        for y in b {
            if is_isomorphic(x, y)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    for y in b {
        let mut hit = false;
        for x in a {
            if is_isomorphic(x, y)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}
