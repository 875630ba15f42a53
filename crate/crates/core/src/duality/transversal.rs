//! The transversal construction of finite dualities from sets of forests.

use alloc::format;
use alloc::vec::Vec;

use super::tree_dual;
use crate::algebra::product;
use crate::canon::enumerate_up_to_iso;
use crate::error::{Error, Result};
use crate::graph::{classify, components};
use crate::hom::{core_of, is_core, is_isomorphic, maps_to};
use crate::structure::Structure;

/// Largest component count for which all subsets are examined.
const MAX_COMPONENTS: usize = 20;

/// Quasitransversals of a forest set and their order.
#[derive(Debug, Clone)]
pub struct Quasitransversals {
    /// Distinct components of the forests, in order of first appearance.
    pub components: Vec<Structure>,
    /// Each quasitransversal as sorted indices into `components`.
    pub sets: Vec<Vec<usize>>,
    /// `leq[a][b]` iff `sets[a] ⪯ sets[b]`: every member of `b` is the
    /// target of a homomorphism from some member of `a`.
    pub leq: Vec<Vec<bool>>,
}

impl Quasitransversals {
    /// Indices of the maximal sets.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.sets.len()).filter(|&a| !(0..self.sets.len()).any(|b| b != a && self.leq[a][b])).collect()
    }
}

fn check_forest_set(fset: &[Structure]) -> Result<()> {
    if fset.is_empty() {
        return Err(Error::Empty("forest set"));
    }
    let sig = fset[0].sig();
    for (k, f) in fset.iter().enumerate() {
        if f.sig() != sig {
            return Err(Error::SignatureMismatch);
        }
        if !classify(f).forest {
            return Err(Error::Precondition(format!("element {k} is not a forest")));
        }
        if !is_core(f) {
            return Err(Error::NotCore(format!("element {k}")));
        }
    }
    for a in 0..fset.len() {
        for b in 0..fset.len() {
            if a != b && maps_to(&fset[a], &fset[b]) {
                return Err(Error::NotIncomparable(format!("element {a} maps to element {b}")));
            }
        }
    }
    Ok(())
}

/// All quasitransversals of a set of pairwise incomparable core forests.
pub fn quasitransversals(fset: &[Structure]) -> Result<Quasitransversals> {
    check_forest_set(fset)?;
    let mut comps: Vec<Structure> = Vec::new();
    for f in fset {
        for c in components(f) {
            let mut known = false;
            for d in &comps {
                if is_isomorphic(d, &c)? {
                    known = true;
                    break;
                }
            }
            if !known {
                comps.push(c);
            }
        }
    }
    let n = comps.len();
    if n > MAX_COMPONENTS {
        return Err(Error::guard("transversal-components", format!("{n} components")));
    }
    let chom: Vec<Vec<bool>> = comps.iter().map(|a| comps.iter().map(|b| maps_to(a, b)).collect()).collect();
    let fhom: Vec<Vec<bool>> = comps.iter().map(|c| fset.iter().map(|f| maps_to(c, f)).collect()).collect();
    let mut sets = Vec::new();
    for mask in 1u32..(1 << n) {
        let m: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let antichain = m.iter().all(|&a| m.iter().all(|&b| a == b || !chom[a][b]));
        let supports = (0..fset.len()).all(|j| m.iter().any(|&c| fhom[c][j]));
        if antichain && supports {
            sets.push(m);
        }
    }
    let leq: Vec<Vec<bool>> =
        sets.iter().map(|a| sets.iter().map(|b| b.iter().all(|&y| a.iter().any(|&x| chom[x][y]))).collect()).collect();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::Invariant("quasitransversal order is not antisymmetric".into()));
            }
        }
    }
    Ok(Quasitransversals { components: comps, sets, leq })
}

/// The maximal quasitransversals, as lists of component trees.
pub fn transversals(fset: &[Structure]) -> Result<Vec<Vec<Structure>>> {
    let q = quasitransversals(fset)?;
    Ok(q.maximal().into_iter().map(|k| q.sets[k].iter().map(|&c| q.components[c].clone()).collect()).collect())
}

/// A finite duality produced by the transversal construction.
#[derive(Debug, Clone)]
pub struct FiniteDuality {
    pub forbidden: Vec<Structure>,
    /// The dual side, without isomorphic repeats.
    pub dual: Vec<Structure>,
    /// Distinct components of the forbidden forests.
    pub components: Vec<Structure>,
    /// Dual of every component.
    pub component_duals: Vec<Structure>,
    /// Each transversal as indices into `components`.
    pub transversals: Vec<Vec<usize>>,
    /// Index into `dual` for each transversal.
    pub transversal_duals: Vec<usize>,
}

/// Core of the product of the given cores, cored after every factor.
pub(crate) fn core_product(factors: &[&Structure]) -> Result<Structure> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = core_of(&product(&[acc, (*f).clone()])?);
    }
    Ok(acc)
}

/// Runs the transversal construction.
pub fn dual_set(fset: &[Structure]) -> Result<FiniteDuality> {
    let q = quasitransversals(fset)?;
    let component_duals = q.components.iter().map(tree_dual).collect::<Result<Vec<_>>>()?;
    let maximal = q.maximal();
    let mut dual: Vec<Structure> = Vec::new();
    let mut transversal_duals = Vec::new();
    let mut tduals = Vec::new();
    for &t in &maximal {
        let factors: Vec<&Structure> = q.sets[t].iter().map(|&c| &component_duals[c]).collect();
        let d = core_product(&factors)?;
        let mut found = None;
        for (k, e) in dual.iter().enumerate() {
            if is_isomorphic(e, &d)? {
                found = Some(k);
                break;
            }
        }
        let k = match found {
            Some(k) => k,
            None => {
                dual.push(d.clone());
                dual.len() - 1
            }
        };
        transversal_duals.push(k);
        tduals.push(d);
    }
    for (a, &ta) in maximal.iter().enumerate() {
        for (b, &tb) in maximal.iter().enumerate() {
            if maps_to(&tduals[a], &tduals[b]) != q.leq[ta][tb] {
                return Err(Error::Invariant("dual order disagrees with transversal order".into()));
            }
        }
    }
    Ok(FiniteDuality {
        forbidden: fset.to_vec(),
        dual,
        components: q.components,
        component_duals,
        transversals: maximal.iter().map(|&t| q.sets[t].clone()).collect(),
        transversal_duals,
    })
}

/// A structure of `universe` violating the finite-duality biconditional.
pub fn finite_duality_counterexample<'u>(
    fset: &[Structure],
    dset: &[Structure],
    universe: &'u [Structure],
) -> Option<&'u Structure> {
    universe.iter().find(|a| {
        let above = fset.iter().any(|f| maps_to(f, a));
        let below = dset.iter().any(|d| maps_to(a, d));
        above == below
    })
}

/// Checks `(∃F: F -> A) <=> (∀D: A -/-> D)` for all `A` with at most `n`
/// vertices.
pub fn brute_finite_duality_check(fset: &[Structure], dset: &[Structure], n: usize) -> Result<bool> {
    let sig = fset.first().or(dset.first()).ok_or(Error::Empty("duality sides"))?.sig();
    if fset.iter().chain(dset).any(|s| s.sig() != sig) {
        return Err(Error::SignatureMismatch);
    }
    let universe = enumerate_up_to_iso(sig, n)?;
    Ok(finite_duality_counterexample(fset, dset, &universe).is_none())
}

/// [`brute_finite_duality_check`] over a caller-supplied universe.
pub fn brute_finite_duality_check_in(fset: &[Structure], dset: &[Structure], universe: &[Structure]) -> bool {
    finite_duality_counterexample(fset, dset, universe).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sum;
    use crate::fixtures::{path, tournament};

    #[test]
    fn single_tree() {
        let q = quasitransversals(&[path(2)]).unwrap();
        assert_eq!(q.sets, vec![vec![0]]);
        let fd = dual_set(&[path(2)]).unwrap();
        assert_eq!(fd.dual.len(), 1);
        assert!(is_isomorphic(&fd.dual[0], &tournament(2)).unwrap());
        assert!(brute_finite_duality_check(&fd.forbidden, &fd.dual, 3).unwrap());
    }

    #[test]
    fn rejects_non_cores_and_comparable_sets() {
        let twice = sum(&[path(1), path(1)]).unwrap();
        assert!(matches!(dual_set(&[twice]), Err(Error::NotCore(_))));
        assert!(matches!(dual_set(&[path(1), path(2)]), Err(Error::NotIncomparable(_))));
        assert!(matches!(dual_set(&[]), Err(Error::Empty(_))));
    }
}
