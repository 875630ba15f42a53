//! The animal construction, parameterized by a positional-function family.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use super::bear::{blocks_at, for_each_choice};
use super::mosquito::{height, path_positions};
use super::require_core_tree;
use crate::algebra::DEFAULT_SIZE_GUARD;
use crate::error::{Error, Result};
use crate::fixtures::top;
use crate::structure::{Signature, Structure, Tuple};

/// A representing structure `Θ(S)` for a finite downset `S`.
#[derive(Debug, Clone)]
pub struct Representing<P> {
    pub theta: Structure,
    /// `Ω`: the position of every vertex of `Θ`.
    pub omega: Vec<P>,
    /// `Ψ`: a vertex of `Θ` for every position of `S`.
    pub psi: BTreeMap<P, usize>,
}

/// A poset of positions together with position functions on acyclic
/// structures and representing structures for finite downsets.
pub trait PositionalFamily {
    type Position: Clone + Ord + Debug;

    fn name(&self) -> &'static str;

    fn leq(&self, a: &Self::Position, b: &Self::Position) -> bool;

    /// Position of every vertex of an acyclic structure.
    fn positions(&self, a: &Structure) -> Result<Vec<Self::Position>>;

    /// The finite downset `S(F)` for a tree `F`, or an error when the family
    /// is not suitable for it.
    fn suitable_downset(&self, f: &Structure) -> Result<Vec<Self::Position>>;

    fn representing(&self, sig: &Signature, s: &[Self::Position]) -> Representing<Self::Position>;
}

/// One position; `Θ` is the one-vertex structure with all loops.
#[derive(Debug, Clone, Copy, Default)]
pub struct BearFamily;

impl PositionalFamily for BearFamily {
    type Position = ();

    fn name(&self) -> &'static str {
        "bear"
    }

    fn leq(&self, _: &(), _: &()) -> bool {
        true
    }

    fn positions(&self, a: &Structure) -> Result<Vec<()>> {
        Ok(vec![(); a.len()])
    }

    fn suitable_downset(&self, _: &Structure) -> Result<Vec<()>> {
        Ok(vec![()])
    }

    fn representing(&self, sig: &Signature, _: &[()]) -> Representing<()> {
        Representing { theta: top(sig), omega: vec![()], psi: BTreeMap::from([((), 0)]) }
    }
}

/// Positions `(d, u)`: longest directed paths into and out of a vertex,
/// ordered componentwise. Digraphs only.
#[derive(Debug, Clone, Copy, Default)]
pub struct MosquitoFamily;

impl PositionalFamily for MosquitoFamily {
    type Position = (usize, usize);

    fn name(&self) -> &'static str {
        "mosquito"
    }

    fn leq(&self, a: &(usize, usize), b: &(usize, usize)) -> bool {
        a.0 <= b.0 && a.1 <= b.1
    }

    fn positions(&self, a: &Structure) -> Result<Vec<(usize, usize)>> {
        path_positions(a).ok_or_else(|| Error::UnsuitableFamily("positions need an acyclic digraph".into()))
    }

    fn suitable_downset(&self, f: &Structure) -> Result<Vec<(usize, usize)>> {
        if *f.sig() != Signature::digraph() {
            return Err(Error::UnsuitableFamily("the mosquito family needs type (2)".into()));
        }
        let h = height(f).ok_or_else(|| Error::UnsuitableFamily("input is not balanced".into()))?;
        Ok((0..h).flat_map(|p| (0..h - p).map(move |q| (p, q))).collect())
    }

    fn representing(&self, sig: &Signature, s: &[(usize, usize)]) -> Representing<(usize, usize)> {
        let mut rel = Vec::new();
        for (x, a) in s.iter().enumerate() {
            for (y, b) in s.iter().enumerate() {
                if a.0 < b.0 && a.1 > b.1 {
                    rel.push(vec![x, y]);
                }
            }
        }
        let names = s.iter().map(|(p, q)| format!("{p}.{q}")).collect();
        let theta = Structure::new(sig.clone(), names, vec![rel]).expect("valid representing digraph");
        let psi = s.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Representing { theta, omega: s.to_vec(), psi }
    }
}

/// The raw animal dual of a core tree.
///
/// Vertices are pairs `(θ, φ)`; names are the name of `θ`, `/`, then the
/// chosen tuple `<relation>:<index>` of every vertex of `Φ(θ)` joined by `.`.
pub fn animal_dual<Fam: PositionalFamily>(f: &Structure, fam: &Fam) -> Result<Structure> {
    require_core_tree(f)?;
    let s = fam.suitable_downset(f)?;
    let rep = fam.representing(f.sig(), &s);
    let mu = fam.positions(f)?;
    let blocks = blocks_at(f);
    // per dual vertex: θ and φ as a full vector (None off Φ(θ))
    let mut verts: Vec<(usize, Vec<Option<(usize, usize)>>)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut by_theta: Vec<Vec<usize>> = vec![Vec::new(); rep.theta.len()];
    for theta in 0..rep.theta.len() {
        let domain: Vec<usize> = (0..f.len()).filter(|&y| fam.leq(&mu[y], &rep.omega[theta])).collect();
        let radices: Vec<usize> = domain.iter().map(|&y| blocks[y].len()).collect();
        let mut overflow = false;
        for_each_choice(&radices, |digits| {
            if verts.len() >= DEFAULT_SIZE_GUARD {
                overflow = true;
                return;
            }
            let mut phi = vec![None; f.len()];
            let mut parts = Vec::with_capacity(domain.len());
            for (&y, &d) in domain.iter().zip(digits) {
                let (i, k) = blocks[y][d];
                phi[y] = Some((i, k));
                parts.push(format!("{i}:{k}"));
            }
            by_theta[theta].push(verts.len());
            names.push(format!("{}/{}", rep.theta.name(theta), parts.join(".")));
            verts.push((theta, phi));
        });
        if overflow {
            return Err(Error::guard("dual-size", format!("animal dual exceeds {DEFAULT_SIZE_GUARD} vertices")));
        }
    }
    let sig = f.sig();
    let mut rels: Vec<Vec<Tuple>> = Vec::with_capacity(sig.len());
    for i in 0..sig.len() {
        let mut rel = Vec::new();
        for tt in rep.theta.relation(i) {
            let radices: Vec<usize> = tt.iter().map(|&th| by_theta[th].len()).collect();
            for_each_choice(&radices, |digits| {
                let t: Tuple = tt.iter().zip(digits).map(|(&th, &d)| by_theta[th][d]).collect();
                let blocked = f
                    .relation(i)
                    .iter()
                    .enumerate()
                    .any(|(k, e)| t.iter().zip(e.iter()).all(|(&v, &y)| verts[v].1[y] == Some((i, k))));
                if !blocked {
                    rel.push(t);
                }
            });
        }
        rels.push(rel);
    }
    let unique = names.iter().collect::<alloc::collections::BTreeSet<_>>().len() == names.len();
    let names = if unique { names } else { (0..verts.len()).map(|k| k.to_string()).collect() };
    Ok(Structure::from_parts_unchecked(sig.clone(), names, rels))
}

/// Checks the `Ω` and `Ψ` conditions of a representing structure against a
/// sample of acyclic structures: every homomorphism into `Θ` respects `Ω`,
/// and `Ψ ∘ μ` is a homomorphism whenever the positions lie in `S`.
pub fn check_representing<Fam: PositionalFamily>(
    fam: &Fam,
    s: &[Fam::Position],
    samples: &[Structure],
) -> Result<bool> {
    for a in samples {
        let mu = match fam.positions(a) {
            Ok(mu) => mu,
            Err(_) => continue,
        };
        let rep = fam.representing(a.sig(), s);
        let mut sound = true;
        crate::hom::HomSearch::new(a, &rep.theta)?.for_each(|m| {
            sound = m.iter().enumerate().all(|(x, &t)| fam.leq(&mu[x], &rep.omega[t]));
            sound
        });
        if !sound {
            return Ok(false);
        }
        if mu.iter().all(|p| rep.psi.contains_key(p)) {
            let map: Vec<usize> = mu.iter().map(|p| rep.psi[p]).collect();
            if !a.is_hom_to(&rep.theta, &map) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::bear::bear_dual;
    use crate::duality::mosquito::mosquito_dual;
    use crate::fixtures::{komarek_path, path};
    use crate::hom::{hom_exists, is_isomorphic};

    #[test]
    fn bear_family_matches_bear() {
        for k in 1..=3 {
            let f = path(k);
            let a = animal_dual(&f, &BearFamily).unwrap();
            assert!(is_isomorphic(&a, &bear_dual(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn mosquito_family_matches_mosquito() {
        let f = komarek_path(2, 2);
        let a = animal_dual(&f, &MosquitoFamily).unwrap();
        let m = mosquito_dual(&f).unwrap();
        assert_eq!(a.len(), m.len());
        assert!(!hom_exists(&f, &a).unwrap());
    }

    #[test]
    fn mosquito_representing_is_sound() {
        let s = MosquitoFamily.suitable_downset(&komarek_path(2, 2)).unwrap();
        let samples = crate::trees::enumerate_trees(&Signature::digraph(), 3).unwrap();
        assert!(check_representing(&MosquitoFamily, &s, &samples).unwrap());
    }

    #[test]
    fn mosquito_family_needs_digraphs() {
        let sig = Signature::new(vec![3]).unwrap();
        let f = crate::trees::enumerate_core_trees(&sig, 1).unwrap().remove(0);
        assert!(matches!(animal_dual(&f, &MosquitoFamily), Err(Error::UnsuitableFamily(_))));
    }
}
