//! Relational structures of a fixed type.
//!
//! A [`Signature`] lists the arities of the relations; a [`Structure`] is a
//! nonempty vertex set together with one set of tuples per relation.
//! Vertices carry opaque string names, but every algorithm works on their
//! index in declaration order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// The type of a structure: the arity of every relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<usize>);

impl Signature {
    /// Unary relations are rejected; there must be at least one relation.
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::InvalidSignature("no relations".into()));
        }
        if let Some(a) = arities.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidSignature(format!("arity {a} < 2")));
        }
        Ok(Signature(arities))
    }

    /// The digraph type `(2)`.
    pub fn digraph() -> Self {
        Signature(vec![2])
    }

    pub fn arities(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.0[rel]
    }

    /// Number of relations.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Length of a height label: sum of arities minus number of relations.
    pub fn label_len(&self) -> usize {
        self.0.iter().map(|a| a - 1).sum()
    }

    /// Offset of coordinate `(rel, 1)` inside a height label.
    pub(crate) fn label_offset(&self, rel: usize) -> usize {
        self.0[..rel].iter().map(|a| a - 1).sum()
    }
}

impl core::fmt::Display for Signature {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A tuple of vertex indices.
pub type Tuple = Vec<usize>;

/// A finite relational structure.
///
/// Relations are kept sorted and deduplicated, so two structures with the
/// same names and the same tuple sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Signature,
    names: Vec<String>,
    relations: Vec<Vec<Tuple>>,
}

impl Structure {
    /// Builds a structure from named vertices and index tuples.
    pub fn new(sig: Signature, names: Vec<String>, relations: Vec<Vec<Tuple>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidStructure("empty vertex set".into()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate vertex `{n}`")));
            }
        }
        if relations.len() != sig.len() {
            return Err(Error::InvalidStructure(format!(
                "{} relations given for a signature with {}",
                relations.len(),
                sig.len()
            )));
        }
        let mut rels = relations;
        for (i, rel) in rels.iter_mut().enumerate() {
            for t in rel.iter() {
                if t.len() != sig.arity(i) {
                    return Err(Error::InvalidStructure(format!(
                        "tuple of length {} in relation {i} of arity {}",
                        t.len(),
                        sig.arity(i)
                    )));
                }
                if let Some(v) = t.iter().find(|&&v| v >= names.len()) {
                    return Err(Error::InvalidStructure(format!("vertex index {v} out of range")));
                }
            }
            rel.sort_unstable();
            rel.dedup();
        }
        Ok(Structure { sig, names, relations: rels })
    }

    /// Builds a structure on vertices named `0..n`.
    pub fn from_indices(sig: Signature, n: usize, relations: Vec<Vec<Tuple>>) -> Result<Self> {
        Self::new(sig, (0..n).map(|k| k.to_string()).collect(), relations)
    }

    /// Convenience constructor for digraphs on `0..n`.
    pub fn digraph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let rel = edges.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::from_indices(Signature::digraph(), n, vec![rel])
    }

    pub(crate) fn from_parts_unchecked(sig: Signature, names: Vec<String>, mut relations: Vec<Vec<Tuple>>) -> Self {
        for rel in relations.iter_mut() {
            rel.sort_unstable();
            rel.dedup();
        }
        Structure { sig, names, relations }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; structures have a nonempty base set.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relations(&self) -> &[Vec<Tuple>] {
        &self.relations
    }

    pub fn relation(&self, rel: usize) -> &[Tuple] {
        &self.relations[rel]
    }

    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    /// Total number of tuples over all relations.
    pub fn edge_count(&self) -> usize {
        self.relations.iter().map(Vec::len).sum()
    }

    /// Iterates over `(relation, tuple)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &[usize])> + '_ {
        self.relations.iter().enumerate().flat_map(|(i, rel)| rel.iter().map(move |t| (i, t.as_slice())))
    }

    /// For every vertex, the `(relation, tuple index)` pairs it occurs in.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.len()];
        for (i, rel) in self.relations.iter().enumerate() {
            for (k, t) in rel.iter().enumerate() {
                let mut seen: Vec<usize> = Vec::with_capacity(t.len());
                for &v in t {
                    if !seen.contains(&v) {
                        seen.push(v);
                        inc[v].push((i, k));
                    }
                }
            }
        }
        inc
    }

    /// The substructure induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Structure {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|t| t.iter().all(|&v| pos[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| pos[v]).collect())
                    .collect()
            })
            .collect();
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        Structure::from_parts_unchecked(self.sig.clone(), names, relations)
    }

    /// Relabels vertex `v` to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Structure {
        let mut names = vec![String::new(); self.len()];
        for (v, &p) in perm.iter().enumerate() {
            names[p] = self.names[v].clone();
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|t| t.iter().map(|&v| perm[v]).collect()).collect())
            .collect();
        Structure::from_parts_unchecked(self.sig.clone(), names, relations)
    }

    /// Same structure with vertices renamed `0..n`.
    pub fn with_index_names(&self) -> Structure {
        Structure {
            sig: self.sig.clone(),
            names: (0..self.len()).map(|k| k.to_string()).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Same structure with the given vertex names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Structure> {
        Structure::new(self.sig.clone(), names, self.relations.clone())
    }

    /// True when `map` sends every tuple of `self` into the matching relation of `target`.
    pub fn is_hom_to(&self, target: &Structure, map: &[usize]) -> bool {
        if self.sig != target.sig || map.len() != self.len() || map.iter().any(|&w| w >= target.len()) {
            return false;
        }
        let mut image = Vec::new();
        self.edges().all(|(i, t)| {
            image.clear();
            image.extend(t.iter().map(|&v| map[v]));
            target.contains(i, &image)
        })
    }

    /// The factor structure by a partition of the vertices.
    ///
    /// Block `k` of the partition becomes vertex `k`; its name joins the
    /// member names with `+`.
    pub fn factor(&self, partition: &VertexPartition) -> Result<Structure> {
        if partition.vertex_count() != self.len() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, structure has {}",
                partition.vertex_count(),
                self.len()
            )));
        }
        let block = partition.block_index();
        let relations = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|t| t.iter().map(|&v| block[v]).collect()).collect())
            .collect();
        let names = partition
            .blocks()
            .iter()
            .map(|b| {
                let parts: Vec<&str> = b.iter().map(|&v| self.names[v].as_str()).collect();
                parts.join("+")
            })
            .collect();
        Structure::new(self.sig.clone(), names, relations)
    }
}

/// A partition of `0..n` into nonempty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(VertexPartition { blocks, n })
    }

    /// Singleton blocks.
    pub fn discrete(n: usize) -> Self {
        VertexPartition { blocks: (0..n).map(|v| vec![v]).collect(), n }
    }

    /// One block containing everything.
    pub fn total(n: usize) -> Self {
        VertexPartition { blocks: vec![(0..n).collect()], n }
    }

    /// The kernel of a map: vertices with equal images share a block.
    pub fn kernel(map: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut key: Vec<usize> = Vec::new();
        for (v, &w) in map.iter().enumerate() {
            match key.iter().position(|&k| k == w) {
                Some(b) => blocks[b].push(v),
                None => {
                    key.push(w);
                    blocks.push(vec![v]);
                }
            }
        }
        VertexPartition { blocks, n: map.len() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Block number of every vertex.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &v in b {
                idx[v] = k;
            }
        }
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unary_and_empty_signatures() {
        assert!(Signature::new(vec![]).is_err());
        assert!(Signature::new(vec![2, 1]).is_err());
        assert_eq!(Signature::new(vec![2, 3]).unwrap().label_len(), 3);
    }

    #[test]
    fn validates_tuples() {
        let sig = Signature::new(vec![3]).unwrap();
        assert!(Structure::from_indices(sig.clone(), 2, vec![vec![vec![0, 1]]]).is_err());
        assert!(Structure::from_indices(sig.clone(), 2, vec![vec![vec![0, 1, 2]]]).is_err());
        assert!(Structure::from_indices(sig, 0, vec![vec![]]).is_err());
    }

    #[test]
    fn deduplicates_relations() {
        let s = Structure::digraph(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(s.relation(0), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn discrete_factor_is_identity() {
        let s = Structure::digraph(3, &[(0, 1), (1, 2)]).unwrap();
        let f = s.factor(&VertexPartition::discrete(3)).unwrap();
        assert_eq!(f, s);
    }

    #[test]
    fn total_factor_collapses_to_loops() {
        let s = Structure::digraph(3, &[(0, 1), (1, 2)]).unwrap();
        let f = s.factor(&VertexPartition::total(3)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.relation(0), &[vec![0, 0]]);
    }

    #[test]
    fn partition_errors() {
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
        let s = Structure::digraph(3, &[(0, 1)]).unwrap();
        assert!(s.factor(&VertexPartition::discrete(2)).is_err());
    }

    #[test]
    fn kernel_groups_equal_images() {
        let p = VertexPartition::kernel(&[2, 0, 2, 1]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
    }
}
