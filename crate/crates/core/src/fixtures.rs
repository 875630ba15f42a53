//! Named structures: directed paths, transitive tournaments, the Komárek
//! pairs, complete graphs, and the bounds of the homomorphism order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure, Tuple};

/// Fixture kinds accepted by [`gen_fixture`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureKind {
    Path(usize),
    Tournament(usize),
    KomarekPath(usize, usize),
    KomarekDual(usize, usize),
    Complete(usize),
    DirectedCycle(usize),
    Bottom,
    Top,
}

pub fn gen_fixture(sig: &Signature, kind: &FixtureKind) -> Result<Structure> {
    let digraph_only = !matches!(kind, FixtureKind::Bottom | FixtureKind::Top);
    if digraph_only && *sig != Signature::digraph() {
        return Err(Error::Precondition(format!("fixture {kind:?} needs type (2)")));
    }
    match *kind {
        FixtureKind::Path(k) => Ok(path(k)),
        FixtureKind::Tournament(k) if k >= 1 => Ok(tournament(k)),
        FixtureKind::KomarekPath(m, n) if m >= 1 && n >= 1 => Ok(komarek_path(m, n)),
        FixtureKind::KomarekDual(m, n) if m >= 1 && n >= 1 => Ok(komarek_dual(m, n)),
        FixtureKind::Complete(k) if k >= 1 => Ok(complete(k)),
        FixtureKind::DirectedCycle(k) if k >= 1 => Ok(directed_cycle(k)),
        FixtureKind::Bottom => Ok(bottom(sig)),
        FixtureKind::Top => Ok(top(sig)),
        _ => Err(Error::Precondition(format!("parameters of {kind:?} must be positive"))),
    }
}

/// The directed path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Structure {
    let edges: Vec<(usize, usize)> = (0..k).map(|j| (j, j + 1)).collect();
    Structure::digraph(k + 1, &edges).expect("valid path")
}

/// The oriented path spelled by `pattern`: the `j`-th character is `+` for
/// an edge `j -> j+1` and `-` for `j+1 -> j`.
pub fn oriented_path(pattern: &str) -> Result<Structure> {
    let edges = pattern
        .chars()
        .enumerate()
        .map(|(j, c)| match c {
            '+' => Ok((j, j + 1)),
            '-' => Ok((j + 1, j)),
            _ => Err(Error::Precondition(format!("bad path character {c:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Structure::digraph(edges.len() + 1, &edges)
}

/// The transitive tournament on `k` vertices.
pub fn tournament(k: usize) -> Structure {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    Structure::digraph(k, &edges).expect("valid tournament")
}

pub fn directed_cycle(k: usize) -> Structure {
    let edges: Vec<(usize, usize)> = (0..k).map(|j| (j, (j + 1) % k)).collect();
    Structure::digraph(k, &edges).expect("valid cycle")
}

/// Symmetric loopless complete graph `K_k`.
pub fn complete(k: usize) -> Structure {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b {
                edges.push((a, b));
            }
        }
    }
    Structure::digraph(k, &edges).expect("valid complete graph")
}

/// The oriented path `P_{m,n}`: two directed paths `a_0..a_m`, `b_0..b_n`
/// joined by the edge `(b_0, a_m)`.
pub fn komarek_path(m: usize, n: usize) -> Structure {
    let mut names: Vec<String> = (0..=m).map(|j| format!("a{j}")).collect();
    names.extend((0..=n).map(|j| format!("b{j}")));
    let a = |j: usize| j;
    let b = |j: usize| m + 1 + j;
    let mut rel: Vec<Tuple> = (0..m).map(|j| vec![a(j), a(j + 1)]).collect();
    rel.extend((0..n).map(|j| vec![b(j), b(j + 1)]));
    rel.push(vec![b(0), a(m)]);
    Structure::new(Signature::digraph(), names, vec![rel]).expect("valid Komárek path")
}

/// The digraph `D_{m,n}` on pairs `(i, j)` with `i + j <= m + n - 2`, with an
/// edge `(i,j) -> (i',j')` when `i < i'`, `j > j'`, and `i < m` or `j < n`.
pub fn komarek_dual(m: usize, n: usize) -> Structure {
    let bound = (m + n).saturating_sub(2);
    let mut pts = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound - i {
            pts.push((i, j));
        }
    }
    let mut rel = Vec::new();
    for (x, &(i, j)) in pts.iter().enumerate() {
        for (y, &(i2, j2)) in pts.iter().enumerate() {
            if i < i2 && j > j2 && (i < m || j < n) {
                rel.push(vec![x, y]);
            }
        }
    }
    let names = pts.iter().map(|(i, j)| format!("{i}.{j}")).collect();
    Structure::new(Signature::digraph(), names, vec![rel]).expect("valid Komárek dual")
}

/// One vertex, no tuples.
pub fn bottom(sig: &Signature) -> Structure {
    Structure::new(sig.clone(), vec!["0".to_string()], vec![Vec::new(); sig.len()]).expect("valid bottom")
}

/// One vertex carrying the constant tuple in every relation.
pub fn top(sig: &Signature) -> Structure {
    let rels = sig.arities().iter().map(|&a| vec![vec![0; a]]).collect();
    Structure::new(sig.clone(), vec!["0".to_string()], rels).expect("valid top")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oriented_paths() {
        assert_eq!(oriented_path("++").unwrap(), path(2));
        let z = oriented_path("+-").unwrap();
        assert_eq!(z.relation(0), &[vec![0, 1], vec![2, 1]]);
        assert!(oriented_path("+x").is_err());
    }

    #[test]
    fn path_three() {
        let p = path(3);
        assert_eq!(p.len(), 4);
        assert_eq!(p.relation(0), &[vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn komarek_p52() {
        let p = komarek_path(5, 2);
        assert_eq!(p.len(), 9);
        let b0 = p.index_of("b0").unwrap();
        let a5 = p.index_of("a5").unwrap();
        assert!(p.contains(0, &[b0, a5]));
        assert_eq!(p.edge_count(), 5 + 2 + 1);
    }

    #[test]
    fn komarek_d23_vertices() {
        let d = komarek_dual(2, 3);
        assert_eq!(d.len(), 10);
        for t in d.relation(0) {
            let (i, j) = parse(d.name(t[0]));
            let (i2, j2) = parse(d.name(t[1]));
            assert!(i < i2 && j > j2 && (i < 2 || j < 3));
        }
    }

    fn parse(s: &str) -> (usize, usize) {
        let (a, b) = s.split_once('.').unwrap();
        (a.parse().unwrap(), b.parse().unwrap())
    }

    #[test]
    fn digraph_fixtures_need_digraph_type() {
        let sig = Signature::new(vec![3]).unwrap();
        assert!(gen_fixture(&sig, &FixtureKind::Path(2)).is_err());
        assert!(gen_fixture(&sig, &FixtureKind::Top).is_ok());
        assert!(gen_fixture(&Signature::digraph(), &FixtureKind::Tournament(0)).is_err());
    }
}
