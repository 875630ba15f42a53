//! Antichains and maximal antichains in the homomorphism order, duality
//! backed GCSP, CSP encodings, and bounded cutting-point checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{product, sum};
use crate::canon::enumerate_up_to_iso;
use crate::duality::{dual_set, tree_dual};
use crate::error::{Error, Result};
use crate::fixtures::{complete, top};
use crate::graph::classify;
use crate::hom::{find_hom, hom_equivalent, is_core, maps_to};
use crate::structure::{Signature, Structure, Tuple};

fn shared_sig(q: &[Structure]) -> Result<&Signature> {
    let first = q.first().ok_or(Error::Empty("structure set"))?;
    if q.iter().any(|s| s.sig() != first.sig()) {
        return Err(Error::SignatureMismatch);
    }
    Ok(first.sig())
}

/// Pairwise incomparability.
pub fn is_antichain(q: &[Structure]) -> Result<bool> {
    shared_sig(q)?;
    for a in 0..q.len() {
        for b in 0..q.len() {
            if a != b && maps_to(&q[a], &q[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Three-valued maximality verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mac {
    Yes,
    No,
    /// The set is not of duality shape, and with three or more relations
    /// that does not settle maximality.
    Unknown,
}

impl Mac {
    pub fn as_str(self) -> &'static str {
        match self {
            Mac::Yes => "yes",
            Mac::No => "no",
            Mac::Unknown => "unknown",
        }
    }
}

/// Outcome of [`mac_decide`].
#[derive(Debug, Clone)]
pub struct MacVerdict {
    pub verdict: Mac,
    /// Forest part and dual part, present when the verdict is yes.
    pub split: Option<(Vec<Structure>, Vec<Structure>)>,
    /// The steps that led to the verdict.
    pub reasons: Vec<String>,
}

impl MacVerdict {
    fn no(reasons: Vec<String>, sig: &Signature) -> Self {
        let verdict = if sig.len() <= 2 { Mac::No } else { Mac::Unknown };
        MacVerdict { verdict, split: None, reasons }
    }
}

/// Decides whether a finite set of cores is a maximal antichain, by
/// comparing it with the shape forests + filtered duals of the forests'
/// finite duality.
///
/// The answer is exact for at most two relations. With more relations a
/// set of the wrong shape gets [`Mac::Unknown`].
pub fn mac_decide(q: &[Structure]) -> Result<MacVerdict> {
    let sig = shared_sig(q)?;
    for (k, s) in q.iter().enumerate() {
        if !is_core(s) {
            return Err(Error::NotCore(format!("element {k}")));
        }
    }
    let mut reasons = Vec::new();
    if !is_antichain(q)? {
        reasons.push("elements are not pairwise incomparable".to_string());
        return Ok(MacVerdict { verdict: Mac::No, split: None, reasons });
    }
    let (forests, rest): (Vec<Structure>, Vec<Structure>) = q.iter().cloned().partition(|s| classify(s).forest);
    reasons.push(format!("{} forest element(s), {} other", forests.len(), rest.len()));
    let duals: Vec<Structure> = if forests.is_empty() {
        reasons.push("no forests: the dual side is the top element".to_string());
        vec![top(sig)]
    } else if forests.iter().any(|f| f.edge_count() == 0) {
        // the edgeless vertex is below everything
        reasons.push("the bottom element is forbidden: the dual side is empty".to_string());
        Vec::new()
    } else {
        let fd = dual_set(&forests)?;
        reasons.push(format!("{} transversal(s), {} distinct dual(s)", fd.transversals.len(), fd.dual.len()));
        fd.dual
    };
    let filtered: Vec<Structure> = duals.into_iter().filter(|d| !forests.iter().any(|f| maps_to(d, f))).collect();
    reasons.push(format!("{} dual(s) not below a forest", filtered.len()));
    let mut matched = vec![false; filtered.len()];
    for r in &rest {
        let mut hit = false;
        for (k, d) in filtered.iter().enumerate() {
            if hom_equivalent(r, d)? {
                matched[k] = true;
                hit = true;
            }
        }
        if !hit {
            reasons.push("a non-forest element is not equivalent to any dual".to_string());
            return Ok(MacVerdict::no(reasons, sig));
        }
    }
    if matched.iter().any(|m| !m) {
        reasons.push("a dual is missing from the set".to_string());
        return Ok(MacVerdict::no(reasons, sig));
    }
    reasons.push("the set is forests plus their filtered duals".to_string());
    Ok(MacVerdict { verdict: Mac::Yes, split: Some((forests, rest)), reasons })
}

/// The splitting `(forests, rest)` of a recognized maximal antichain.
pub fn mac_split(q: &[Structure]) -> Result<(Vec<Structure>, Vec<Structure>)> {
    mac_decide(q)?.split.ok_or_else(|| Error::Precondition("not a recognized maximal antichain".into()))
}

/// A structure of `universe` incomparable with every element of `q`.
pub fn maximality_counterexample<'u>(q: &[Structure], universe: &'u [Structure]) -> Option<&'u Structure> {
    universe.iter().find(|x| q.iter().all(|s| !maps_to(x, s) && !maps_to(s, x)))
}

/// True when every structure with at most `n` vertices is comparable with
/// some element of `q`. Failure refutes maximality; success is bounded
/// evidence only.
pub fn brute_maximality_check(q: &[Structure], n: usize) -> Result<bool> {
    let sig = shared_sig(q)?;
    let universe = enumerate_up_to_iso(sig, n)?;
    Ok(maximality_counterexample(q, &universe).is_none())
}

/// A structure of `universe` neither above an element of `up` nor below an
/// element of `down`.
pub fn split_counterexample<'u>(
    up: &[Structure],
    down: &[Structure],
    universe: &'u [Structure],
) -> Option<&'u Structure> {
    universe.iter().find(|x| !up.iter().any(|f| maps_to(f, x)) && !down.iter().any(|d| maps_to(x, d)))
}

/// Answer of a generalized CSP with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcspAnswer {
    /// True when the input maps to some structure of the template set.
    pub accepted: bool,
    /// For a rejection: which forbidden forest maps into the input, and how.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// Solves GCSP for the dual side of `fset` by looking for a forbidden
/// forest inside `g`.
pub fn gcsp_via_forbidden(g: &Structure, fset: &[Structure]) -> Result<GcspAnswer> {
    for (k, f) in fset.iter().enumerate() {
        if f.sig() != g.sig() {
            return Err(Error::SignatureMismatch);
        }
        if !classify(f).forest {
            return Err(Error::Precondition(format!("forbidden element {k} is not a forest")));
        }
    }
    for (k, f) in fset.iter().enumerate() {
        if let Some(m) = find_hom(f, g)? {
            return Ok(GcspAnswer { accepted: false, witness: Some((k, m)) });
        }
    }
    Ok(GcspAnswer { accepted: true, witness: None })
}

/// GCSP by trying every template.
pub fn gcsp_direct(g: &Structure, dset: &[Structure]) -> Result<bool> {
    for d in dset {
        if d.sig() != g.sig() {
            return Err(Error::SignatureMismatch);
        }
    }
    Ok(dset.iter().any(|d| maps_to(g, d)))
}

/// A 3-CNF formula over variables `1..=vars`; literals are signed variable
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<[i64; 3]>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<[i64; 3]>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Precondition("a formula needs at least one variable".into()));
        }
        for (k, c) in clauses.iter().enumerate() {
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > vars {
                    return Err(Error::Precondition(format!("clause {k} has invalid literal {lit}")));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    /// Brute-force satisfiability, for testing.
    pub fn satisfiable(&self) -> bool {
        (0u64..1 << self.vars)
            .any(|a| self.clauses.iter().all(|c| c.iter().any(|&l| (a >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))))
    }
}

/// Encodes a 3-CNF formula as `(G, H)` of type (3,3,3,3) with
/// `G -> H` iff the formula is satisfiable.
///
/// `R_k(H)` holds every triple over `{0,1}` except `1^k 0^(3-k)`. Each
/// clause with `k` negations becomes a triple of `R_k(G)` listing its
/// negated variables first, each block in clause order. `G` has one vertex
/// `x<v>` per variable.
pub fn encode_3sat(phi: &CnfFormula) -> Result<(Structure, Structure)> {
    let phi = CnfFormula::new(phi.vars, phi.clauses.clone())?;
    let sig = Signature::new(vec![3; 4])?;
    let mut h_rels: Vec<Vec<Tuple>> = vec![Vec::new(); 4];
    for (k, rel) in h_rels.iter_mut().enumerate() {
        for code in 0..8usize {
            let t: Tuple = (0..3).map(|p| code >> (2 - p) & 1).collect();
            let excluded: Tuple = (0..3).map(|p| usize::from(p < k)).collect();
            if t != excluded {
                rel.push(t);
            }
        }
    }
    let h = Structure::from_indices(sig.clone(), 2, h_rels)?;
    let mut g_rels: Vec<Vec<Tuple>> = vec![Vec::new(); 4];
    for c in &phi.clauses {
        let neg = c.iter().filter(|&&l| l < 0);
        let pos = c.iter().filter(|&&l| l > 0);
        let t: Tuple = neg.chain(pos).map(|l| l.unsigned_abs() as usize - 1).collect();
        let k = c.iter().filter(|&&l| l < 0).count();
        g_rels[k].push(t);
    }
    let names = (1..=phi.vars).map(|v| format!("x{v}")).collect();
    let g = Structure::new(sig, names, g_rels)?;
    Ok((g, h))
}

/// The symmetric loopless complete graph `K_k`.
pub fn k_colouring_template(k: usize) -> Result<Structure> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(complete(k))
}

/// Outcome of [`cutting_point_bounded_check`].
#[derive(Debug, Clone)]
pub struct CuttingPointReport {
    /// Structures examined.
    pub checked: usize,
    /// A structure strictly inside `[T x D, T]`, if found.
    pub product_violation: Option<Structure>,
    /// A structure strictly inside `[D, T + D]`, if found.
    pub sum_violation: Option<Structure>,
}

impl CuttingPointReport {
    pub fn passed(&self) -> bool {
        self.product_violation.is_none() && self.sum_violation.is_none()
    }
}

/// Checks over all structures with at most `n` vertices that the intervals
/// `[T x D, T]` and `[D, T + D]` contain only their end points, where `D`
/// is the dual of the tree `T`.
pub fn cutting_point_bounded_check(t: &Structure, n: usize) -> Result<CuttingPointReport> {
    let universe = enumerate_up_to_iso(t.sig(), n)?;
    cutting_point_check_in(t, &universe)
}

/// [`cutting_point_bounded_check`] over a caller-supplied universe.
pub fn cutting_point_check_in(t: &Structure, universe: &[Structure]) -> Result<CuttingPointReport> {
    let d = tree_dual(t)?;
    let low = product(&[t.clone(), d.clone()])?;
    let high = sum(&[t.clone(), d.clone()])?;
    let inside = |x: &Structure, a: &Structure, b: &Structure| {
        maps_to(a, x) && maps_to(x, b) && !(maps_to(x, a) || maps_to(b, x))
    };
    Ok(CuttingPointReport {
        checked: universe.len(),
        product_violation: universe.iter().find(|x| inside(x, &low, t)).cloned(),
        sum_violation: universe.iter().find(|x| inside(x, &d, &high)).cloned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{directed_cycle, path, tournament};
    use crate::hom::hom_exists;

    #[test]
    fn antichains() {
        assert!(is_antichain(&[path(3), tournament(3)]).unwrap());
        assert!(!is_antichain(&[path(1), tournament(1)]).unwrap());
        assert!(is_antichain(&[path(2)]).unwrap());
    }

    #[test]
    fn single_edge_is_maximal() {
        let v = mac_decide(&[path(1)]).unwrap();
        assert_eq!(v.verdict, Mac::Yes);
        assert!(brute_maximality_check(&[path(1)], 3).unwrap());
    }

    #[test]
    fn path_and_tournament_split() {
        let (f, d) = mac_split(&[path(3), tournament(3)]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(d.len(), 1);
        assert!(crate::hom::is_isomorphic(&d[0], &tournament(3)).unwrap());
    }

    #[test]
    fn cycle_is_not_maximal() {
        let v = mac_decide(&[directed_cycle(3)]).unwrap();
        assert_eq!(v.verdict, Mac::No);
        assert!(mac_split(&[directed_cycle(3)]).is_err());
    }

    #[test]
    fn top_and_bottom() {
        let sig = Signature::digraph();
        let (b, t) = crate::algebra::constants(&sig);
        assert_eq!(mac_decide(&[b]).unwrap().verdict, Mac::Yes);
        assert_eq!(mac_decide(&[t]).unwrap().verdict, Mac::Yes);
    }

    #[test]
    fn gcsp() {
        let a = gcsp_via_forbidden(&tournament(3), &[path(3)]).unwrap();
        assert!(a.accepted);
        let r = gcsp_via_forbidden(&path(3), &[path(3)]).unwrap();
        assert_eq!(r.witness, Some((0, vec![0, 1, 2, 3])));
        assert!(!gcsp_direct(&path(3), &[tournament(3)]).unwrap());
        let b = crate::fixtures::bottom(&Signature::digraph());
        assert!(gcsp_direct(&b, &[tournament(1)]).unwrap());
    }

    #[test]
    fn sat_encoding() {
        let phi = CnfFormula::new(3, vec![[1, -2, 3]]).unwrap();
        let (g, _) = encode_3sat(&phi).unwrap();
        assert_eq!(g.relation(1), &[vec![1, 0, 2]]);
        let one = CnfFormula::new(1, vec![[1, 1, 1]]).unwrap();
        let (g, h) = encode_3sat(&one).unwrap();
        assert!(hom_exists(&g, &h).unwrap());
        let both = CnfFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        let (g, h) = encode_3sat(&both).unwrap();
        assert!(!hom_exists(&g, &h).unwrap());
        assert!(CnfFormula::new(2, vec![[1, 0, 2]]).is_err());
    }

    #[test]
    fn colouring() {
        let k3 = k_colouring_template(3).unwrap();
        assert!(hom_exists(&k3, &k3).unwrap());
        let sym = |n: usize| {
            let mut e = Vec::new();
            for j in 0..n {
                e.push((j, (j + 1) % n));
                e.push(((j + 1) % n, j));
            }
            Structure::digraph(n, &e).unwrap()
        };
        let k2 = k_colouring_template(2).unwrap();
        assert!(!hom_exists(&sym(5), &k2).unwrap());
        assert!(hom_exists(&sym(4), &k2).unwrap());
        assert!(k_colouring_template(0).is_err());
    }

    #[test]
    fn cutting_points_small() {
        assert!(cutting_point_bounded_check(&path(1), 3).unwrap().passed());
    }
}
