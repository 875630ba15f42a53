//! Explicit finite lattices: meets, joins, Heyting implication, connected
//! elements, duality pairs, gaps, and the lattice transversal construction.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite lattice given by its order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds the lattice generated by cover pairs `(a, b)` meaning `a < b`.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (k, row) in leq.iter_mut().enumerate() {
            row[k] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::NotALattice(format!("cover ({a}, {b}) is out of range")));
            }
            leq[a][b] = true;
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(names, leq)
    }

    /// Builds a lattice from a reflexive, transitive order matrix.
    pub fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Empty("lattice"));
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotALattice(format!("cycle through {} and {}", names[a], names[b])));
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> =
                (0..n).filter(|&x| if upper { leq[a][x] && leq[b][x] } else { leq[x][a] && leq[x][b] }).collect();
            cands.iter().copied().find(|&x| cands.iter().all(|&y| if upper { leq[x][y] } else { leq[y][x] }))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(a, b, false)
                    .ok_or_else(|| Error::NotALattice(format!("{} and {} have no meet", names[a], names[b])))?;
                join[a][b] = bound(a, b, true)
                    .ok_or_else(|| Error::NotALattice(format!("{} and {} have no join", names[a], names[b])))?;
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).expect("meets give a bottom");
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).expect("joins give a top");
        Ok(FiniteLattice { names, leq, meet, join, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.top, |acc, &x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.bottom, |acc, &x| self.join(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && !(0..n).any(|r| r != a && r != b && self.leq[a][r] && self.leq[r][b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `↓S`, sorted.
    pub fn down_set(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&x| s.iter().any(|&y| self.leq[x][y])).collect()
    }

    /// `↑S`, sorted.
    pub fn up_set(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&x| s.iter().any(|&y| self.leq[y][x])).collect()
    }
}

/// `h[p][r] = p ⇒ r`, the largest `x` with `x ∧ p ⪯ r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingTable {
    pub h: Vec<Vec<usize>>,
}

impl HeytingTable {
    pub fn implies(&self, p: usize, r: usize) -> usize {
        self.h[p][r]
    }

    /// Checks `x ⪯ (p ⇒ r)  <=>  x ∧ p ⪯ r` for every triple.
    pub fn satisfies_axiom(&self, l: &FiniteLattice) -> bool {
        let n = l.len();
        (0..n).all(|x| (0..n).all(|p| (0..n).all(|r| l.leq(x, self.h[p][r]) == l.leq(l.meet(x, p), r))))
    }
}

/// The Heyting implication, or `None` when some `{x : x ∧ p ⪯ r}` has no
/// largest element.
pub fn heyting_table(l: &FiniteLattice) -> Option<HeytingTable> {
    let n = l.len();
    let mut h = vec![vec![0; n]; n];
    for p in 0..n {
        for r in 0..n {
            let cands: Vec<usize> = (0..n).filter(|&x| l.leq(l.meet(x, p), r)).collect();
            h[p][r] = cands.iter().copied().find(|&m| cands.iter().all(|&y| l.leq(y, m)))?;
        }
    }
    Some(HeytingTable { h })
}

/// A triple with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, if any.
pub fn distributivity_witness(l: &FiniteLattice) -> Option<(usize, usize, usize)> {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_distributive(l: &FiniteLattice) -> bool {
    distributivity_witness(l).is_none()
}

/// True when `x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)` for all triples.
pub fn is_dual_distributive(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), l.join(x, z)))))
}

/// Elements `a` such that `a = b ∨ c` forces `a = b` or `a = c`.
pub fn connected_elements(l: &FiniteLattice) -> Vec<usize> {
    let n = l.len();
    (0..n).filter(|&a| (0..n).all(|b| (0..n).all(|c| l.join(b, c) != a || b == a || c == a))).collect()
}

/// The maximal connected elements below `x`, when their join is `x`.
pub fn connected_decomposition(l: &FiniteLattice, x: usize) -> Option<Vec<usize>> {
    let below: Vec<usize> = connected_elements(l).into_iter().filter(|&c| l.leq(c, x)).collect();
    let maximal: Vec<usize> =
        below.iter().copied().filter(|&c| !below.iter().any(|&d| d != c && l.leq(c, d))).collect();
    (l.join_all(&maximal) == x).then_some(maximal)
}

/// Pairs `(f, d)` with `f ⪯ x  <=>  x ⋠ d` for every `x`.
pub fn lattice_duality_pairs(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let n = l.len();
    let mut out = Vec::new();
    for f in 0..n {
        for d in 0..n {
            if (0..n).all(|x| l.leq(f, x) != l.leq(x, d)) {
                out.push((f, d));
            }
        }
    }
    out
}

/// Left members of duality pairs.
pub fn primals(l: &FiniteLattice) -> Vec<usize> {
    let mut p: Vec<usize> = lattice_duality_pairs(l).into_iter().map(|(f, _)| f).collect();
    p.dedup();
    p
}

/// The gaps (cover pairs) of the lattice.
pub fn lattice_gaps(l: &FiniteLattice) -> Vec<(usize, usize)> {
    l.covers()
}

/// The pairs `(a, a ∨ f)` for duality pairs `(f, d)` and `f ∧ d ⪯ a ⪯ d`,
/// sorted and without repeats.
pub fn gaps_from_duality_pairs(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (f, d) in lattice_duality_pairs(l) {
        for a in 0..l.len() {
            if l.leq(l.meet(f, d), a) && l.leq(a, d) {
                out.push((a, l.join(a, f)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Result of the lattice transversal construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDuality {
    /// Distinct components of the chosen decompositions.
    pub components: Vec<usize>,
    /// Dual of each component.
    pub component_duals: Vec<usize>,
    /// Quasitransversals as sets of components.
    pub quasitransversals: Vec<Vec<usize>>,
    pub transversals: Vec<Vec<usize>>,
    /// Meet of component duals per transversal, without repeats.
    pub dual: Vec<usize>,
    /// Whether `(F, dual)` passed the sweep over all elements.
    pub verified: bool,
}

/// Runs the transversal construction for pairwise incomparable elements
/// `fset`, each with a chosen decomposition into components whose join is
/// that element.
pub fn lattice_transversal_dual(l: &FiniteLattice, fset: &[usize], decomps: &[Vec<usize>]) -> Result<LatticeDuality> {
    if fset.is_empty() {
        return Err(Error::Empty("element set"));
    }
    if decomps.len() != fset.len() {
        return Err(Error::Precondition("one decomposition per element is required".into()));
    }
    for (a, &x) in fset.iter().enumerate() {
        for (b, &y) in fset.iter().enumerate() {
            if a != b && l.leq(x, y) {
                return Err(Error::NotIncomparable(format!("{} ⪯ {}", l.name(x), l.name(y))));
            }
        }
    }
    for (&f, dec) in fset.iter().zip(decomps) {
        if l.join_all(dec) != f {
            return Err(Error::Precondition(format!("decomposition does not join to {}", l.name(f))));
        }
    }
    let mut components: Vec<usize> = decomps.iter().flatten().copied().collect();
    components.sort_unstable();
    components.dedup();
    let pairs = lattice_duality_pairs(l);
    let component_duals = components
        .iter()
        .map(|&c| {
            pairs
                .iter()
                .find(|&&(f, _)| f == c)
                .map(|&(_, d)| d)
                .ok_or_else(|| Error::Precondition(format!("component {} is not a primal", l.name(c))))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = components.len();
    if k > 20 {
        return Err(Error::guard("transversal-components", format!("{k} components")));
    }
    let mut quasi: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << k) {
        let m: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
        let antichain = m.iter().all(|&a| m.iter().all(|&b| a == b || !l.leq(components[a], components[b])));
        let supports = fset.iter().all(|&f| m.iter().any(|&c| l.leq(components[c], f)));
        if antichain && supports {
            quasi.push(m);
        }
    }
    let below = |a: &[usize], b: &[usize]| b.iter().all(|&y| a.iter().any(|&x| l.leq(components[x], components[y])));
    let maximal: Vec<Vec<usize>> =
        quasi.iter().filter(|m| !quasi.iter().any(|o| o != *m && below(m, o))).cloned().collect();
    let mut dual: Vec<usize> =
        maximal.iter().map(|m| l.meet_all(&m.iter().map(|&c| component_duals[c]).collect::<Vec<_>>())).collect();
    dual.sort_unstable();
    dual.dedup();
    let verified = (0..l.len()).all(|x| {
        let above = fset.iter().any(|&f| l.leq(f, x));
        let under = dual.iter().any(|&d| l.leq(x, d));
        above != under
    });
    let to_elements = |sets: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        sets.into_iter().map(|m| m.into_iter().map(|c| components[c]).collect()).collect()
    };
    Ok(LatticeDuality {
        quasitransversals: to_elements(quasi),
        transversals: to_elements(maximal),
        components: components.clone(),
        component_duals,
        dual,
        verified,
    })
}

/// Two runs of [`lattice_transversal_dual`] on the same elements whose
/// decompositions differ and whose dual sets differ, both verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionDependence {
    pub fset: Vec<usize>,
    pub first: (Vec<Vec<usize>>, Vec<usize>),
    pub second: (Vec<Vec<usize>>, Vec<usize>),
}

// every set of primals below `f` whose join is `f`
fn decompositions_of(l: &FiniteLattice, f: usize, primal: &[usize]) -> Vec<Vec<usize>> {
    let below: Vec<usize> = primal.iter().copied().filter(|&p| l.leq(p, f)).collect();
    if below.len() > 12 {
        return Vec::new();
    }
    (1u32..1 << below.len())
        .map(|mask| (0..below.len()).filter(|&k| mask >> k & 1 == 1).map(|k| below[k]).collect::<Vec<_>>())
        .filter(|d| l.join_all(d) == f)
        .collect()
}

/// Searches sets of at most `max_set` pairwise incomparable elements for
/// decompositions into primals that change the dual set.
pub fn find_decomposition_dependence(l: &FiniteLattice, max_set: usize) -> Option<DecompositionDependence> {
    let n = l.len();
    let primal = primals(l);
    let mut fsets: Vec<Vec<usize>> = Vec::new();
    for size in 1..=max_set.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if idx.iter().all(|&a| idx.iter().all(|&b| a == b || !l.leq(a, b))) {
                fsets.push(idx.clone());
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    for fset in fsets {
        let options: Vec<Vec<Vec<usize>>> = fset.iter().map(|&f| decompositions_of(l, f, &primal)).collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut seen: Option<(Vec<Vec<usize>>, Vec<usize>)> = None;
        let mut choice = vec![0usize; fset.len()];
        loop {
            let decomps: Vec<Vec<usize>> = choice.iter().zip(&options).map(|(&c, o)| o[c].clone()).collect();
            if let Ok(ld) = lattice_transversal_dual(l, &fset, &decomps) {
                if ld.verified {
                    match &seen {
                        None => seen = Some((decomps, ld.dual)),
                        Some((d0, dual0)) if *dual0 != ld.dual => {
                            return Some(DecompositionDependence {
                                fset,
                                first: (d0.clone(), dual0.clone()),
                                second: (decomps, ld.dual),
                            });
                        }
                        _ => {}
                    }
                }
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    None
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FiniteLattice {
    let names = (0..n).map(|k| k.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|k| (k - 1, k)).collect();
    FiniteLattice::from_covers(names, &covers).expect("chains are lattices")
}

/// Subsets of a `k`-set, element `m` being the bitmask `m`.
pub fn subset_lattice(k: usize) -> FiniteLattice {
    let n = 1usize << k;
    let names = (0..n)
        .map(|m| {
            let s: Vec<String> = (0..k).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect();
            format!("{{{}}}", s.join(","))
        })
        .collect();
    let leq = (0..n).map(|a| (0..n).map(|b| a & b == a).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("subset lattices are lattices")
}

/// Divisors of `n` under divisibility.
pub fn divisor_lattice(n: u64) -> FiniteLattice {
    let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let names = divs.iter().map(|d| d.to_string()).collect();
    let leq = divs.iter().map(|&a| divs.iter().map(|&b| b % a == 0).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("divisor lattices are lattices")
}

/// The diamond `M_3`: bottom, three atoms, top.
pub fn m3() -> FiniteLattice {
    let names = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
    FiniteLattice::from_covers(names, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3")
}

/// The pentagon `N_5`: `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    let names = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
    FiniteLattice::from_covers(names, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5")
}

/// All partial orders on `n` labelled elements, as order matrices.
pub fn enumerate_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (k, row) in leq.iter_mut().enumerate() {
            row[k] = true;
        }
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[a][b] = true;
            }
        }
        let antisymmetric = pairs.iter().all(|&(a, b)| !(leq[a][b] && leq[b][a]));
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if antisymmetric && transitive {
            out.push(leq);
        }
    }
    out
}

/// The lattice of downsets of a poset, ordered by inclusion. Element names
/// list the members, e.g. `{0,2}`.
pub fn downset_lattice(poset: &[Vec<bool>]) -> FiniteLattice {
    let n = poset.len();
    let sets: Vec<u32> = (0u32..1 << n)
        .filter(|&m| (0..n).all(|a| m >> a & 1 == 0 || (0..n).all(|b| !poset[b][a] || m >> b & 1 == 1)))
        .collect();
    let names = sets
        .iter()
        .map(|&m| {
            let s: Vec<String> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect();
            format!("{{{}}}", s.join(","))
        })
        .collect();
    let leq = sets.iter().map(|&a| sets.iter().map(|&b| a & b == a).collect()).collect();
    FiniteLattice::from_order(names, leq).expect("downsets form a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(l: &FiniteLattice, name: &str) -> usize {
        l.index_of(name).unwrap()
    }

    #[test]
    fn rejects_non_lattices() {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        // two minimal elements and no bottom
        assert!(matches!(
            FiniteLattice::from_covers(names.clone(), &[(0, 2), (1, 2), (0, 3), (1, 3)]),
            Err(Error::NotALattice(_))
        ));
        assert!(matches!(FiniteLattice::from_covers(names, &[(0, 1), (1, 0)]), Err(Error::NotALattice(_))));
    }

    #[test]
    fn divisors_of_twelve() {
        let l = divisor_lattice(12);
        assert_eq!(l.meet(idx(&l, "4"), idx(&l, "6")), idx(&l, "2"));
        assert_eq!(l.join(idx(&l, "4"), idx(&l, "6")), idx(&l, "12"));
        let h = heyting_table(&l).unwrap();
        assert_eq!(h.implies(idx(&l, "4"), idx(&l, "6")), idx(&l, "6"));
        assert!(h.satisfies_axiom(&l));
        let mut conn: Vec<&str> = connected_elements(&l).into_iter().map(|x| l.name(x)).collect();
        conn.sort_unstable();
        assert_eq!(conn, ["1", "2", "3", "4"]);
        let dec: Vec<&str> =
            connected_decomposition(&l, idx(&l, "12")).unwrap().into_iter().map(|x| l.name(x)).collect();
        assert_eq!(dec, ["3", "4"]);
    }

    #[test]
    fn chain_operations() {
        let c = chain(3);
        let h = heyting_table(&c).unwrap();
        assert_eq!(h.implies(2, 1), 1);
        assert_eq!(h.implies(1, 2), 2);
        assert_eq!(lattice_duality_pairs(&c), vec![(1, 0), (2, 1)]);
        assert_eq!(lattice_gaps(&c), vec![(0, 1), (1, 2)]);
        assert_eq!(connected_elements(&c), vec![0, 1, 2]);
        assert_eq!(connected_decomposition(&c, 2), Some(vec![2]));
        let ld = lattice_transversal_dual(&c, &[1], &[vec![1]]).unwrap();
        assert_eq!(ld.dual, vec![0]);
        assert!(ld.verified);
    }

    #[test]
    fn two_subsets() {
        let l = subset_lattice(2);
        let a = idx(&l, "{0}");
        let b = idx(&l, "{1}");
        assert_eq!(lattice_duality_pairs(&l), vec![(a, b), (b, a)]);
        assert_eq!(lattice_gaps(&l).len(), 4);
        assert_eq!(connected_decomposition(&l, l.top()), Some(vec![a, b]));
        let ld = lattice_transversal_dual(&l, &[l.top()], &[vec![a, b]]).unwrap();
        // one component of the top suffices, so each atom is a transversal
        assert_eq!(ld.transversals, vec![vec![a], vec![b]]);
        assert!(ld.verified);
        assert_eq!(ld.dual, vec![a, b]);
    }

    #[test]
    fn non_distributive() {
        for l in [m3(), n5()] {
            assert!(!is_distributive(&l));
            assert!(heyting_table(&l).is_none_or(|h| !h.satisfies_axiom(&l)));
        }
        assert!(is_distributive(&subset_lattice(3)));
        assert!(is_distributive(&chain(4)));
    }

    #[test]
    fn poset_counts() {
        // labelled posets on 1..=4 elements
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_posets(n).len()).collect();
        assert_eq!(counts, [1, 3, 19, 219]);
    }

    #[test]
    fn set_operators() {
        let l = chain(4);
        assert_eq!(l.down_set(&[2]), vec![0, 1, 2]);
        assert_eq!(l.up_set(&[2]), vec![2, 3]);
        let antichain = downset_lattice(&enumerate_posets(2)[0]);
        assert_eq!(antichain.len(), 4);
    }
}
