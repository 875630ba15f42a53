//! Duality pairs and finite dualities.

mod animal;
mod bear;
mod bounds;
mod gaps;
mod mosquito;
mod rhs;
mod transversal;

pub use animal::{animal_dual, check_representing, BearFamily, MosquitoFamily, PositionalFamily, Representing};
pub use bear::bear_dual;
pub use bounds::{tree_bounds, TreeBound};
pub use gaps::{bounded_gap_check, gap_from_duality, strictly_between};
pub use mosquito::{height, is_directed_path, mosquito_dual, path_positions};
pub use rhs::{rhs_duality_decide_bounded, RhsDecision};
pub use transversal::{
    brute_finite_duality_check, brute_finite_duality_check_in, dual_set, finite_duality_counterexample,
    quasitransversals, transversals, FiniteDuality, Quasitransversals,
};

use crate::canon::enumerate_up_to_iso;
use crate::error::{Error, Result};
use crate::graph::classify;
use crate::hom::{core_of, is_core, is_isomorphic, maps_to};
use crate::structure::Structure;

pub(crate) fn require_core_tree(f: &Structure) -> Result<()> {
    if !classify(f).tree {
        return Err(Error::NotCoreTree("the shadow is not a tree".into()));
    }
    if f.len() == 1 {
        return Err(Error::TrivialTree);
    }
    if !is_core(f) {
        return Err(Error::NotCoreTree("the tree is not a core".into()));
    }
    Ok(())
}

/// The cored dual of a structure whose core is a tree with an edge.
///
/// Oriented trees go through the mosquito construction, which is far
/// smaller than the bear construction; other types through the latter.
pub fn tree_dual(f: &Structure) -> Result<Structure> {
    let c = core_of(f);
    if *c.sig() == crate::structure::Signature::digraph() {
        return Ok(core_of(&mosquito_dual(&c)?));
    }
    Ok(core_of(&bear_dual(&c)?))
}

/// Exact test: the core of `f` is a tree with more than one vertex and the
/// core of `d` is isomorphic to its dual.
pub fn verify_duality_pair(f: &Structure, d: &Structure) -> Result<bool> {
    if f.sig() != d.sig() {
        return Err(Error::SignatureMismatch);
    }
    let dual = match tree_dual(f) {
        Ok(dual) => dual,
        Err(Error::NotCoreTree(_) | Error::TrivialTree) => return Ok(false),
        Err(e) => return Err(e),
    };
    is_isomorphic(&core_of(d), &dual)
}

/// A structure of `universe` violating `F -> A  <=>  A -/-> D`, if any.
pub fn duality_counterexample<'u>(f: &Structure, d: &Structure, universe: &'u [Structure]) -> Option<&'u Structure> {
    universe.iter().find(|a| maps_to(f, a) == maps_to(a, d))
}

/// Checks the duality biconditional over every structure with at most `n`
/// vertices.
pub fn brute_duality_check(f: &Structure, d: &Structure, n: usize) -> Result<bool> {
    if f.sig() != d.sig() {
        return Err(Error::SignatureMismatch);
    }
    let universe = enumerate_up_to_iso(f.sig(), n)?;
    Ok(duality_counterexample(f, d, &universe).is_none())
}

/// [`brute_duality_check`] over a caller-supplied universe.
pub fn brute_duality_check_in(f: &Structure, d: &Structure, universe: &[Structure]) -> bool {
    duality_counterexample(f, d, universe).is_none()
}
