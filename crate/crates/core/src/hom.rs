//! Homomorphism search, counting, isomorphism, and cores.
//!
//! The search keeps a candidate set per source vertex, always branches on
//! the vertex with the fewest candidates, and after every assignment
//! restores generalized arc consistency: each candidate must extend to a
//! target tuple for every source tuple through its vertex.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_form_with_limit, DEFAULT_CANON_LIMIT};
use crate::error::{Error, Result};
use crate::structure::Structure;

const UNASSIGNED: usize = usize::MAX;

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        BitSet { words }
    }

    fn empty(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    fn contains(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    fn remove(&mut self, k: usize) {
        self.words[k / 64] &= !(1 << (k % 64));
    }

    fn intersect(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Tuples of the target indexed by (relation, position, vertex).
struct TargetIndex {
    by_pos: Vec<Vec<Vec<Vec<u32>>>>,
}

impl TargetIndex {
    fn new(b: &Structure) -> Self {
        let by_pos = b
            .relations()
            .iter()
            .enumerate()
            .map(|(i, rel)| {
                let mut table = vec![vec![Vec::new(); b.len()]; b.sig().arity(i)];
                for (k, t) in rel.iter().enumerate() {
                    for (p, &v) in t.iter().enumerate() {
                        table[p][v].push(k as u32);
                    }
                }
                table
            })
            .collect();
        TargetIndex { by_pos }
    }
}

/// A homomorphism search problem from `source` to `target`.
pub struct HomSearch<'a> {
    source: &'a Structure,
    target: &'a Structure,
    domains: Vec<BitSet>,
    injective: bool,
    order: Vec<usize>,
    incidence: Vec<Vec<(usize, usize)>>,
    index: TargetIndex,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Structure, target: &'a Structure) -> Result<Self> {
        if source.sig() != target.sig() {
            return Err(Error::SignatureMismatch);
        }
        let incidence = source.incidence();
        let order = search_order(source, &incidence);
        Ok(HomSearch {
            source,
            target,
            domains: vec![BitSet::full(target.len()); source.len()],
            injective: false,
            order,
            incidence,
            index: TargetIndex::new(target),
        })
    }

    /// Restricts the images of `v` to `allowed`.
    pub fn restrict(mut self, v: usize, allowed: &[usize]) -> Self {
        let mut set = BitSet::empty(self.target.len());
        for &w in allowed {
            set.insert(w);
        }
        self.domains[v].intersect(&set);
        self
    }

    /// Forbids `w` as an image for every source vertex.
    pub fn avoid(mut self, w: usize) -> Self {
        for d in self.domains.iter_mut() {
            d.remove(w);
        }
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Calls `visit` on every homomorphism until it returns `false`.
    /// Returns `false` if the visit was cut short.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        let mut domains = self.domains.clone();
        let tuples: Vec<(usize, usize)> = (0..self.source.sig().len())
            .flat_map(|i| (0..self.source.relation(i).len()).map(move |k| (i, k)))
            .collect();
        if domains.iter().any(BitSet::is_empty) || !self.propagate(tuples, &mut domains) {
            return true;
        }
        let mut assign = vec![UNASSIGNED; self.source.len()];
        self.search(0, &mut assign, &domains, &mut visit)
    }

    /// The first homomorphism found.
    pub fn first(&self) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each(|m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }

    /// Counts homomorphisms, failing once the count passes `limit`.
    pub fn count(&self, limit: u64) -> Result<u64> {
        let mut n: u64 = 0;
        let complete = self.for_each(|_| {
            n += 1;
            n <= limit
        });
        if complete {
            Ok(n)
        } else {
            Err(Error::guard("hom-count", format!("more than {limit} homomorphisms")))
        }
    }

    // the unassigned vertex with fewest candidates, ties broken by the
    // static order
    fn pick(&self, assign: &[usize], domains: &[BitSet]) -> usize {
        self.order
            .iter()
            .copied()
            .filter(|&v| assign[v] == UNASSIGNED)
            .min_by_key(|&v| domains[v].len())
            .expect("an unassigned vertex")
    }

    fn search(
        &self,
        depth: usize,
        assign: &mut Vec<usize>,
        domains: &[BitSet],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(assign);
        }
        // arc consistency with every domain a singleton means every tuple
        // is already satisfied
        if !self.injective && domains.iter().all(|d| d.len() == 1) {
            let saved = assign.clone();
            for (v, d) in domains.iter().enumerate() {
                assign[v] = d.iter().next().expect("singleton");
            }
            let cont = visit(assign);
            assign.copy_from_slice(&saved);
            return cont;
        }
        let v = self.pick(assign, domains);
        for w in domains[v].iter() {
            assign[v] = w;
            let mut next = domains.to_vec();
            next[v] = BitSet::empty(self.target.len());
            next[v].insert(w);
            let mut ok = true;
            if self.injective {
                for (u, d) in next.iter_mut().enumerate() {
                    if u != v {
                        d.remove(w);
                        ok &= !d.is_empty();
                    }
                }
            }
            let queue = if self.injective {
                (0..self.source.sig().len())
                    .flat_map(|i| (0..self.source.relation(i).len()).map(move |k| (i, k)))
                    .collect()
            } else {
                self.incidence[v].clone()
            };
            if ok && self.propagate(queue, &mut next) {
                // propagation may have fixed further vertices; they are
                // still assigned one at a time so the depth count stays exact
                if !self.search(depth + 1, assign, &next, visit) {
                    assign[v] = UNASSIGNED;
                    return false;
                }
            }
            assign[v] = UNASSIGNED;
        }
        true
    }

    // Generalized arc consistency: every candidate of every vertex extends
    // to a target tuple for each source tuple through it, using only
    // candidates of the other positions.
    fn propagate(&self, mut queue: Vec<(usize, usize)>, domains: &mut [BitSet]) -> bool {
        let mut queued: Vec<Vec<bool>> = self.source.relations().iter().map(|r| vec![false; r.len()]).collect();
        for &(i, k) in &queue {
            queued[i][k] = true;
        }
        let n = self.target.len();
        while let Some((i, k)) = queue.pop() {
            queued[i][k] = false;
            let t = &self.source.relation(i)[k];
            let arity = t.len();
            let rel = self.target.relation(i);
            // scan target tuples through the smallest domain
            let pivot = (0..arity).min_by_key(|&p| domains[t[p]].len()).expect("nonempty tuple");
            let mut support = vec![BitSet::empty(n); arity];
            for w in domains[t[pivot]].iter() {
                for &bk in &self.index.by_pos[i][pivot][w] {
                    let bt = &rel[bk as usize];
                    let fits = (0..arity)
                        .all(|p| domains[t[p]].contains(bt[p]) && (0..p).all(|q| t[q] != t[p] || bt[q] == bt[p]));
                    if fits {
                        for p in 0..arity {
                            support[p].insert(bt[p]);
                        }
                    }
                }
            }
            for p in 0..arity {
                let x = t[p];
                if domains[x].is_subset(&support[p]) {
                    continue;
                }
                domains[x].intersect(&support[p]);
                if domains[x].is_empty() {
                    return false;
                }
                for &(j, m) in &self.incidence[x] {
                    if !queued[j][m] && (j, m) != (i, k) {
                        queued[j][m] = true;
                        queue.push((j, m));
                    }
                }
            }
        }
        true
    }
}

// Greedy static order: start from the highest incidence degree, then prefer
// vertices sharing the most tuples with those already placed.
fn search_order(a: &Structure, incidence: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let n = a.len();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&x, &y| (links[x], incidence[x].len()).cmp(&(links[y], incidence[y].len())).then(y.cmp(&x)))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &(i, k) in &incidence[v] {
            for &x in &a.relation(i)[k] {
                if !placed[x] {
                    links[x] += 1;
                }
            }
        }
    }
    order
}

pub fn hom_exists(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(HomSearch::new(a, b)?.exists())
}

/// `hom_exists` for callers that have already checked signatures.
pub(crate) fn maps_to(a: &Structure, b: &Structure) -> bool {
    hom_exists(a, b).expect("matching signatures")
}

/// The lexicographically least homomorphism, comparing maps as the vector
/// `(f(0), f(1), ...)` in vertex order.
pub fn find_hom(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>> {
    let base = HomSearch::new(a, b)?;
    if !base.exists() {
        return Ok(None);
    }
    let mut fixed: Vec<usize> = Vec::with_capacity(a.len());
    for v in 0..a.len() {
        let mut chosen = None;
        for w in 0..b.len() {
            let mut s = HomSearch::new(a, b)?;
            for (u, &x) in fixed.iter().enumerate() {
                s = s.restrict(u, &[x]);
            }
            s = s.restrict(v, &[w]);
            if s.exists() {
                chosen = Some(w);
                break;
            }
        }
        fixed.push(chosen.ok_or_else(|| Error::Invariant("witness extension failed".into()))?);
    }
    Ok(Some(fixed))
}

/// Number of homomorphisms, failing above `limit`.
pub fn count_homs(a: &Structure, b: &Structure, limit: u64) -> Result<u64> {
    HomSearch::new(a, b)?.count(limit)
}

/// An isomorphism `a -> b` (a bijection whose inverse is also a homomorphism).
pub fn iso(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>> {
    if a.sig() != b.sig() {
        return Err(Error::SignatureMismatch);
    }
    if a.len() != b.len() || a.relations().iter().zip(b.relations()).any(|(x, y)| x.len() != y.len()) {
        return Ok(None);
    }
    if a.len() <= DEFAULT_CANON_LIMIT
        && canonical_form_with_limit(a, DEFAULT_CANON_LIMIT)? != canonical_form_with_limit(b, DEFAULT_CANON_LIMIT)?
    {
        return Ok(None);
    }
    // an injective homomorphism between equal-size structures with equal
    // tuple counts maps each relation onto its counterpart
    Ok(HomSearch::new(a, b)?.injective().first())
}

pub fn is_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(iso(a, b)?.is_some())
}

pub fn hom_equivalent(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(hom_exists(a, b)? && hom_exists(b, a)?)
}

pub fn incomparable(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(!hom_exists(a, b)? && !hom_exists(b, a)?)
}

// an endomorphism of `a` whose image misses some vertex
fn non_surjective_endomorphism(a: &Structure) -> Option<Vec<usize>> {
    (0..a.len()).find_map(|v| HomSearch::new(a, a).expect("same structure").avoid(v).first())
}

/// True when every endomorphism is an automorphism.
pub fn is_core(a: &Structure) -> bool {
    non_surjective_endomorphism(a).is_none()
}

/// A core of a structure together with a retraction onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreResult {
    /// The core, as the substructure induced on `vertices`.
    pub core: Structure,
    /// Source vertex for every core vertex.
    pub vertices: Vec<usize>,
    /// Image of every source vertex, as a core vertex index. It fixes the
    /// core pointwise.
    pub retraction: Vec<usize>,
}

/// Computes the core by repeatedly passing to the image of a
/// non-surjective endomorphism.
pub fn core(a: &Structure) -> CoreResult {
    let mut current = a.clone();
    // current vertex -> source vertex
    let mut origin: Vec<usize> = (0..a.len()).collect();
    // source vertex -> current vertex
    let mut to_current: Vec<usize> = (0..a.len()).collect();
    while let Some(f) = non_surjective_endomorphism(&current) {
        let mut image: Vec<usize> = f.clone();
        image.sort_unstable();
        image.dedup();
        let mut pos = vec![usize::MAX; current.len()];
        for (k, &v) in image.iter().enumerate() {
            pos[v] = k;
        }
        for x in to_current.iter_mut() {
            *x = pos[f[*x]];
        }
        origin = image.iter().map(|&v| origin[v]).collect();
        current = current.induced(&image);
    }
    // `to_current` restricted to the core is an automorphism; undo it
    let sigma: Vec<usize> = origin.iter().map(|&s| to_current[s]).collect();
    let mut inverse = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        inverse[s] = k;
    }
    let retraction = to_current.iter().map(|&c| inverse[c]).collect();
    CoreResult { core: current, vertices: origin, retraction }
}

/// Just the core structure.
pub fn core_of(a: &Structure) -> Structure {
    core(a).core
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{directed_cycle, path, tournament};
    use crate::structure::Signature;

    // brute-force count over all |B|^|A| maps
    fn naive_count(a: &Structure, b: &Structure) -> u64 {
        let n = a.len();
        let m = b.len();
        let mut map = vec![0usize; n];
        let mut count = 0;
        loop {
            if a.is_hom_to(b, &map) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                map[k] += 1;
                if map[k] < m {
                    break;
                }
                map[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn path_homs() {
        assert!(hom_exists(&path(1), &path(2)).unwrap());
        for k in 1..=3 {
            assert!(!hom_exists(&path(k), &tournament(k)).unwrap());
        }
    }

    #[test]
    fn walk_in_cycle() {
        let f = find_hom(&path(2), &directed_cycle(3)).unwrap().unwrap();
        assert_eq!(f, vec![0, 1, 2]);
        assert_eq!(find_hom(&path(1), &tournament(1)).unwrap(), None);
    }

    #[test]
    fn rigid_identity() {
        let t = tournament(3);
        assert_eq!(find_hom(&t, &t).unwrap().unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn counts() {
        let bottom = crate::fixtures::bottom(&Signature::digraph());
        assert_eq!(count_homs(&bottom, &tournament(4), 1000).unwrap(), 4);
        assert_eq!(count_homs(&path(1), &path(1), 1000).unwrap(), 1);
        assert_eq!(count_homs(&path(1), &tournament(3), 1000).unwrap(), 3);
        assert_eq!(naive_count(&path(2), &directed_cycle(3)), count_homs(&path(2), &directed_cycle(3), 100).unwrap());
        assert!(count_homs(&bottom, &tournament(5), 3).unwrap_err().is_guard());
    }

    #[test]
    fn signature_mismatch() {
        let t = crate::fixtures::top(&Signature::new(vec![3]).unwrap());
        assert_eq!(hom_exists(&path(1), &t), Err(Error::SignatureMismatch));
    }

    #[test]
    fn iso_reversed_path() {
        let rev = Structure::digraph(3, &[(1, 0), (2, 1)]).unwrap();
        let f = iso(&path(2), &rev).unwrap().unwrap();
        assert_eq!(f, vec![2, 1, 0]);
        assert!(iso(&path(1), &tournament(1)).unwrap().is_none());
    }

    #[test]
    fn iso_needs_inverse_preservation() {
        // bijective homomorphism that is not an isomorphism
        let a = Structure::digraph(2, &[]).unwrap();
        let b = Structure::digraph(2, &[(0, 1)]).unwrap();
        assert!(hom_exists(&a, &b).unwrap());
        assert!(iso(&a, &b).unwrap().is_none());
    }

    #[test]
    fn cores() {
        for k in 1..=3 {
            assert!(is_core(&path(k)));
        }
        assert!(is_core(&tournament(3)));
        let sum = Structure::digraph(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_core(&sum));
        let c = core(&sum);
        assert_eq!(c.core.len(), 2);
        assert!(sum.is_hom_to(&c.core, &c.retraction));
        for (k, &v) in c.vertices.iter().enumerate() {
            assert_eq!(c.retraction[v], k);
        }
    }

    #[test]
    fn core_of_tournament_plus_edge() {
        // T_3 + P_1
        let s = Structure::digraph(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap();
        let c = core(&s);
        assert!(is_isomorphic(&c.core, &tournament(3)).unwrap());
        assert!(s.is_hom_to(&c.core, &c.retraction));
    }

    #[test]
    fn equivalence_and_incomparability() {
        let bottom = crate::fixtures::bottom(&Signature::digraph());
        assert!(!incomparable(&path(1), &bottom).unwrap());
        assert!(hom_equivalent(&path(2), &Structure::digraph(4, &[(0, 1), (1, 2), (3, 2)]).unwrap()).unwrap());
        let zigzag = Structure::digraph(4, &[(0, 1), (2, 1), (2, 3)]).unwrap();
        let c3 = directed_cycle(3);
        // zigzag maps onto one edge of the cycle; the cycle needs a closed walk
        assert!(hom_exists(&zigzag, &c3).unwrap());
        assert!(!incomparable(&zigzag, &c3).unwrap());
    }
}
