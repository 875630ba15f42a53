//! The mosquito construction for oriented trees.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bear::for_each_choice;
use super::require_core_tree;
use crate::algebra::DEFAULT_SIZE_GUARD;
use crate::error::{Error, Result};
use crate::fixtures::tournament;
use crate::graph::{classify, height_labelling};
use crate::hom::core_of;
use crate::structure::{Signature, Structure};

/// Longest directed path ending at / starting from every vertex, for an
/// acyclic digraph. Returns `None` on a directed cycle.
pub fn path_positions(a: &Structure) -> Option<Vec<(usize, usize)>> {
    if *a.sig() != Signature::digraph() {
        return None;
    }
    let n = a.len();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut inn: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in a.relation(0) {
        out[t[0]].push(t[1]);
        inn[t[1]].push(t[0]);
        indeg[t[1]] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() < n {
        return None;
    }
    let mut down = vec![0usize; n];
    for &v in &order {
        for &w in &inn[v] {
            down[v] = down[v].max(down[w] + 1);
        }
    }
    let mut up = vec![0usize; n];
    for &v in order.iter().rev() {
        for &w in &out[v] {
            up[v] = up[v].max(up[w] + 1);
        }
    }
    Some(down.into_iter().zip(up).collect())
}

/// Length of the shortest directed path a balanced digraph maps to; for a
/// connected input this is the spread of its height labelling.
pub fn height(a: &Structure) -> Option<usize> {
    let labels = height_labelling(a)?;
    crate::graph::component_vertex_sets(a)
        .iter()
        .map(|comp| {
            let vals = comp.iter().map(|&v| labels.label(v)[0]);
            let hi = vals.clone().max().unwrap_or(0);
            let lo = vals.min().unwrap_or(0);
            (hi - lo) as usize
        })
        .max()
}

/// True when the digraph is a directed path with at least one edge.
pub fn is_directed_path(a: &Structure) -> bool {
    *a.sig() == Signature::digraph()
        && a.edge_count() > 0
        && classify(a).path
        && a.edge_count() + 1 == a.len()
        && height(a) == Some(a.edge_count())
}

/// The raw mosquito dual of an oriented tree.
///
/// The input is cored first. A directed path `P_k` yields the tournament
/// `T_k`. Vertex names are `p.q/` followed by the chosen neighbour of each
/// vertex of `Φ(p,q)`, joined by `.`.
pub fn mosquito_dual(f: &Structure) -> Result<Structure> {
    if *f.sig() != Signature::digraph() {
        return Err(Error::Precondition("the mosquito construction needs type (2)".into()));
    }
    let f = core_of(f);
    require_core_tree(&f)?;
    if is_directed_path(&f) {
        return Ok(tournament(f.edge_count()));
    }
    let mu = path_positions(&f).expect("trees are acyclic");
    let pf = height(&f).expect("trees are balanced");
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); f.len()];
    for t in f.relation(0) {
        nbrs[t[0]].push(t[1]);
        nbrs[t[1]].push(t[0]);
    }
    for l in nbrs.iter_mut() {
        l.sort_unstable();
    }
    // (p, q, φ) with φ stored as a full vector (usize::MAX off Φ(p,q))
    let mut verts: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for p in 0..pf {
        for q in 0..pf - p {
            let domain: Vec<usize> = (0..f.len()).filter(|&a| mu[a].0 <= p && mu[a].1 <= q).collect();
            let radices: Vec<usize> = domain.iter().map(|&a| nbrs[a].len()).collect();
            let mut overflow = false;
            for_each_choice(&radices, |digits| {
                if verts.len() >= DEFAULT_SIZE_GUARD {
                    overflow = true;
                    return;
                }
                let mut phi = vec![usize::MAX; f.len()];
                for (&a, &d) in domain.iter().zip(digits) {
                    phi[a] = nbrs[a][d];
                }
                let parts: Vec<String> = domain.iter().map(|&a| format!("{}", phi[a])).collect();
                names.push(format!("{p}.{q}/{}", parts.join(".")));
                verts.push((p, q, phi));
            });
            if overflow {
                return Err(Error::guard("dual-size", format!("mosquito dual exceeds {DEFAULT_SIZE_GUARD} vertices")));
            }
        }
    }
    let mut rel = Vec::new();
    for (x, (p, q, phi)) in verts.iter().enumerate() {
        for (y, (p2, q2, phi2)) in verts.iter().enumerate() {
            if p < p2 && q > q2 && !f.relation(0).iter().any(|e| phi[e[0]] == e[1] && phi2[e[1]] == e[0]) {
                rel.push(vec![x, y]);
            }
        }
    }
    Ok(Structure::from_parts_unchecked(Signature::digraph(), names, vec![rel]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{komarek_dual, komarek_path, path};
    use crate::hom::{hom_equivalent, hom_exists, is_isomorphic};

    #[test]
    fn positions_on_a_path() {
        assert_eq!(path_positions(&path(2)).unwrap(), vec![(0, 2), (1, 1), (2, 0)]);
        assert!(path_positions(&crate::fixtures::directed_cycle(3)).is_none());
    }

    #[test]
    fn heights() {
        assert_eq!(height(&path(3)), Some(3));
        let zigzag = Structure::digraph(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(height(&zigzag), Some(1));
        assert!(is_directed_path(&path(2)));
        assert!(!is_directed_path(&zigzag));
    }

    #[test]
    fn directed_path_redirects() {
        assert!(is_isomorphic(&mosquito_dual(&path(3)).unwrap(), &tournament(3)).unwrap());
    }

    #[test]
    fn komarek_pairs() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let d = mosquito_dual(&komarek_path(m, n)).unwrap();
            assert!(hom_equivalent(&d, &komarek_dual(m, n)).unwrap(), "({m},{n})");
        }
    }

    #[test]
    fn non_path_tree() {
        // P_{2,2} is a core that is not a directed path
        let f = komarek_path(2, 2);
        let d = mosquito_dual(&f).unwrap();
        assert!(!hom_exists(&f, &d).unwrap());
        assert!(hom_equivalent(&d, &crate::duality::tree_dual(&f).unwrap()).unwrap());
    }
}
