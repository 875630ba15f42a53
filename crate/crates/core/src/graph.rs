//! Derived graphs (shadow, directed shadow, incidence graph) and the
//! structural classification built on them.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::structure::Structure;

/// A multigraph with named nodes. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub directed: bool,
}

impl Multigraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// True if the undirected underlying multigraph has no cycle.
    /// Loops and parallel edges count as cycles.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.nodes.len());
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }

    /// Connected components as lists of node indices, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.nodes.len() {
            let r = uf.find(v);
            match roots.iter().position(|&x| x == r) {
                Some(k) => comps[k].push(v),
                None => {
                    roots.push(r);
                    comps.push(vec![v]);
                }
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.is_forest()
    }

    /// Directed cycle detection (loops are cycles). Undirected graphs are
    /// treated as their symmetric orientation.
    pub fn has_directed_cycle(&self) -> bool {
        let n = self.nodes.len();
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &self.edges {
            out[a].push(b);
            indeg[b] += 1;
            if !self.directed {
                out[b].push(a);
                indeg[a] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed < n
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// One directed edge `(a_j, a_{j+1})` per consecutive pair of every tuple.
pub fn directed_shadow(a: &Structure) -> Multigraph {
    let edges = a.edges().flat_map(|(_, t)| t.windows(2).map(|w| (w[0], w[1]))).collect();
    Multigraph { nodes: a.names().to_vec(), edges, directed: true }
}

/// The undirected shadow `Sh(A)`.
pub fn shadow(a: &Structure) -> Multigraph {
    Multigraph { directed: false, ..directed_shadow(a) }
}

/// Bipartite incidence multigraph. Nodes `0..|A|` are the vertices; the
/// remaining nodes are the blocks `(relation, tuple)` in relation order.
/// A vertex occurring twice in a tuple gets two parallel edges.
pub fn incidence_graph(a: &Structure) -> Multigraph {
    let mut nodes = a.names().to_vec();
    let mut edges = Vec::new();
    for (i, t) in a.edges() {
        let block = nodes.len();
        let members: Vec<&str> = t.iter().map(|&v| a.name(v)).collect();
        nodes.push(format!("{i}:({})", members.join(",")));
        for &v in t {
            edges.push((v, block));
        }
    }
    Multigraph { nodes, edges, directed: false }
}

/// Structural flags of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub connected: bool,
    pub tree: bool,
    pub forest: bool,
    pub path: bool,
    pub acyclic: bool,
    pub balanced: bool,
}

pub fn classify(a: &Structure) -> Classification {
    let sh = shadow(a);
    let forest = sh.is_forest();
    let connected = sh.is_connected();
    let tree = forest && connected;
    Classification {
        connected,
        tree,
        forest,
        path: tree && is_path_shape(a),
        acyclic: !directed_shadow(a).has_directed_cycle(),
        balanced: height_labelling(a).is_some(),
    }
}

// every edge meets at most two other edges, every vertex lies in at most two edges
fn is_path_shape(a: &Structure) -> bool {
    let inc = a.incidence();
    if inc.iter().any(|e| e.len() > 2) {
        return false;
    }
    a.edges().all(|(_, t)| {
        let mut others: Vec<(usize, usize)> = Vec::new();
        for &v in t {
            for &e in &inc[v] {
                if !others.contains(&e) {
                    others.push(e);
                }
            }
        }
        // `others` includes the edge itself
        others.len() <= 3
    })
}

pub fn is_connected(a: &Structure) -> bool {
    shadow(a).is_connected()
}

pub fn is_tree(a: &Structure) -> bool {
    shadow(a).is_tree()
}

pub fn is_forest(a: &Structure) -> bool {
    shadow(a).is_forest()
}

/// Maximal connected substructures, ordered by least vertex.
pub fn components(a: &Structure) -> Vec<Structure> {
    shadow(a).components().iter().map(|c| a.induced(c)).collect()
}

/// Vertex sets of the components.
pub fn component_vertex_sets(a: &Structure) -> Vec<Vec<usize>> {
    shadow(a).components()
}

/// A height labelling: one integer vector per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightLabel {
    pub labels: Vec<Vec<i64>>,
}

impl HeightLabel {
    pub fn label(&self, v: usize) -> &[i64] {
        &self.labels[v]
    }
}

/// Computes a height labelling if one exists.
///
/// Each component is labelled separately, with its least-index vertex at
/// the zero vector.
pub fn height_labelling(a: &Structure) -> Option<HeightLabel> {
    let sig = a.sig();
    let dim = sig.label_len();
    let n = a.len();
    // (neighbour, coordinate, sign): label(neighbour) = label(v) + sign * e_coordinate
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for (i, t) in a.edges() {
        let off = sig.label_offset(i);
        for (j, w) in t.windows(2).enumerate() {
            adj[w[0]].push((w[1], off + j, 1));
            adj[w[1]].push((w[0], off + j, -1));
        }
    }
    let mut labels: Vec<Option<Vec<i64>>> = vec![None; n];
    for start in 0..n {
        if labels[start].is_some() {
            continue;
        }
        labels[start] = Some(vec![0; dim]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let lv = labels[v].clone().expect("labelled");
            for &(w, coord, sign) in &adj[v] {
                let mut lw = lv.clone();
                lw[coord] += sign;
                match &labels[w] {
                    Some(existing) => {
                        if *existing != lw {
                            return None;
                        }
                    }
                    None => {
                        labels[w] = Some(lw);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(HeightLabel { labels: labels.into_iter().map(|l| l.expect("all labelled")).collect() })
}

/// Outcome of the forbidden-path test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForbiddenPathCheck {
    /// The input was a core path, so the verdict is meaningful.
    pub applicable: bool,
    pub forbidden: bool,
}

/// A core path is forbidden when two tuples of the same relation carry
/// different label sequences under its height labelling.
pub fn is_forbidden_path(p: &Structure) -> ForbiddenPathCheck {
    let flags = classify(p);
    if !flags.path || !crate::hom::is_core(p) {
        return ForbiddenPathCheck { applicable: false, forbidden: false };
    }
    let labels = height_labelling(p).expect("paths are balanced");
    let forbidden = p.relations().iter().any(|rel| {
        let seqs: Vec<Vec<&[i64]>> = rel.iter().map(|t| t.iter().map(|&v| labels.label(v)).collect()).collect();
        seqs.windows(2).any(|w| w[0] != w[1])
    });
    ForbiddenPathCheck { applicable: true, forbidden }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::Signature;

    fn shadow_example() -> Structure {
        // vertices 1..6 as indices 0..5
        let sig = Signature::new(vec![2, 3]).unwrap();
        Structure::new(
            sig,
            (1..=6).map(|k| alloc::format!("{k}")).collect(),
            vec![vec![vec![2, 1], vec![5, 2], vec![5, 4]], vec![vec![0, 4, 5], vec![3, 3, 0], vec![3, 4, 1]]],
        )
        .unwrap()
    }

    #[test]
    fn directed_shadow_has_loop_at_four() {
        let a = shadow_example();
        let d = directed_shadow(&a);
        assert!(d.edges.contains(&(3, 3)));
        assert_eq!(d.edges.len(), 3 + 3 * 2);
        assert!(!classify(&a).tree);
    }

    #[test]
    fn incidence_has_parallel_edges_for_repeated_vertex() {
        let a = shadow_example();
        let inc = incidence_graph(&a);
        let block = inc.nodes.iter().position(|n| n == "1:(4,4,1)").unwrap();
        assert_eq!(inc.edges.iter().filter(|&&e| e == (3, block)).count(), 2);
    }

    #[test]
    fn bottom_graphs() {
        let b = fixtures::bottom(&Signature::digraph());
        assert!(directed_shadow(&b).edges.is_empty());
        let inc = incidence_graph(&b);
        assert_eq!(inc.nodes.len(), 1);
        assert!(inc.edges.is_empty());
    }

    #[test]
    fn ternary_edge_shadow_is_path() {
        let sig = Signature::new(vec![3]).unwrap();
        let a = Structure::from_indices(sig, 3, vec![vec![vec![0, 1, 2]]]).unwrap();
        let sh = shadow(&a);
        assert_eq!(sh.edges, vec![(0, 1), (1, 2)]);
        assert!(classify(&a).path);
    }

    #[test]
    fn path_fixture_flags() {
        for k in 1..5 {
            let p = fixtures::path(k);
            let c = classify(&p);
            assert!(c.connected && c.tree && c.path && c.acyclic && c.balanced);
            assert_eq!(directed_shadow(&p).edges.len(), k);
        }
    }

    #[test]
    fn directed_cycle_flags() {
        let c3 = fixtures::directed_cycle(3);
        let c = classify(&c3);
        assert!(c.connected && !c.tree && !c.acyclic && !c.balanced);
        assert!(height_labelling(&c3).is_none());
    }

    #[test]
    fn star_is_tree_not_path() {
        let s = Structure::digraph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = classify(&s);
        assert!(c.tree && !c.path);
    }

    #[test]
    fn path_labels() {
        let p = fixtures::path(3);
        let h = height_labelling(&p).unwrap();
        assert_eq!(h.labels, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn glued_path_is_not_balanced() {
        let p = fixtures::path(2);
        let glued = p.factor(&crate::structure::VertexPartition::new(3, vec![vec![0, 2], vec![1]]).unwrap()).unwrap();
        assert!(!classify(&glued).balanced);
        assert!(shadow(&glued).has_directed_cycle());
    }

    #[test]
    fn forbidden_paths() {
        assert_eq!(is_forbidden_path(&fixtures::path(2)), ForbiddenPathCheck { applicable: true, forbidden: true });
        assert_eq!(is_forbidden_path(&fixtures::path(1)), ForbiddenPathCheck { applicable: true, forbidden: false });
        let zigzag = Structure::digraph(3, &[(0, 1), (2, 1)]).unwrap();
        assert!(!is_forbidden_path(&zigzag).applicable);
    }

    #[test]
    fn components_of_sum() {
        let s = Structure::digraph(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let comps = components(&s);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 2);
        assert_eq!(comps[1].len(), 3);
    }
}
