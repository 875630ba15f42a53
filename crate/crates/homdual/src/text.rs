//! The line-oriented structure format and the multigraph dump.
//!
//! ```text
//! # comment
//! type: 2 3
//! structure A
//! vertices: 1 2 3 4 5 6
//! rel 0: (3,2) (6,3) (6,5)
//! rel 1: (1,5,6) (4,4,1) (4,5,2)
//! ```
//!
//! `structure` is optional, omitted relations are empty, and a relation may
//! be spread over several `rel` lines. Several structures may share one
//! stream; each starts with its own `type:` line.

use std::collections::HashMap;
use std::fmt::Write as _;

use homdual_core::graph::Multigraph;
use homdual_core::{Signature, Structure, Tuple};

use crate::error::{Error, Result};

/// A parsed structure with its optional `structure` name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub name: Option<String>,
    pub structure: Structure,
}

fn is_id_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | '(' | ')' | '#')
}

/// True when `s` can be written as a vertex identifier.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_id_char)
}

// a line with comments stripped, and its 1-based number
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(k, l)| Line { number: k + 1, text: l.split('#').next().unwrap_or("") })
        .filter(|l| !l.text.trim().is_empty())
        .collect()
}

// 1-based column of byte offset `at` in `line`
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn strip_key<'a>(line: &Line<'a>, key: &str) -> Option<(&'a str, usize)> {
    let t = line.text.trim_start();
    let rest = t.strip_prefix(key)?;
    let offset = line.text.len() - rest.len();
    Some((rest, offset))
}

/// Parses exactly one structure.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut all = parse_structures(text)?;
    match all.len() {
        1 => Ok(all.remove(0).structure),
        0 => Err(Error::parse(1, 1, "expected a `type:` line")),
        n => Err(Error::parse(1, 1, format!("expected one structure, found {n}"))),
    }
}

/// Parses every structure in the stream.
pub fn parse_structures(text: &str) -> Result<Vec<Named>> {
    let lines = significant_lines(text);
    let mut starts: Vec<usize> =
        lines.iter().enumerate().filter(|(_, l)| l.text.trim_start().starts_with("type:")).map(|(k, _)| k).collect();
    if let Some(first) = lines.first() {
        if starts.first() != Some(&0) {
            return Err(Error::parse(first.number, 1, "expected a `type:` line"));
        }
    }
    starts.push(lines.len());
    starts.windows(2).map(|w| parse_block(&lines[w[0]..w[1]])).collect()
}

fn parse_block(lines: &[Line<'_>]) -> Result<Named> {
    let head = &lines[0];
    let (rest, offset) = strip_key(head, "type:").expect("block starts at a type line");
    let mut arities = Vec::new();
    for (at, tok) in tokens(rest, offset) {
        let a: usize = tok
            .parse()
            .map_err(|_| Error::parse(head.number, column(head.text, at), format!("`{tok}` is not an arity")))?;
        if a < 2 {
            return Err(Error::parse(head.number, column(head.text, at), format!("arity {a} is below 2")));
        }
        arities.push(a);
    }
    let sig = Signature::new(arities).map_err(|e| Error::parse(head.number, 1, e.to_string()))?;
    let mut k = 1;
    let mut name = None;
    if let Some(line) = lines.get(k) {
        if let Some((rest, _)) = strip_key(line, "structure") {
            let n = rest.trim();
            if n.is_empty() || !(rest.starts_with(char::is_whitespace)) {
                return Err(Error::parse(line.number, 1, "expected `structure <name>`"));
            }
            name = Some(n.to_string());
            k += 1;
        }
    }
    let line = lines.get(k).ok_or_else(|| Error::parse(lines[k - 1].number + 1, 1, "expected a `vertices:` line"))?;
    let (rest, offset) =
        strip_key(line, "vertices:").ok_or_else(|| Error::parse(line.number, 1, "expected a `vertices:` line"))?;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (at, tok) in tokens(rest, offset) {
        if !is_identifier(tok) {
            return Err(Error::parse(line.number, column(line.text, at), format!("bad vertex name `{tok}`")));
        }
        if index.insert(tok, names.len()).is_some() {
            return Err(Error::parse(line.number, column(line.text, at), format!("duplicate vertex `{tok}`")));
        }
        names.push(tok.to_string());
    }
    if names.is_empty() {
        return Err(Error::parse(line.number, 1, "the vertex list is empty"));
    }
    let mut rels: Vec<Vec<Tuple>> = vec![Vec::new(); sig.len()];
    for line in &lines[k + 1..] {
        let (rest, offset) =
            strip_key(line, "rel").ok_or_else(|| Error::parse(line.number, 1, "expected a `rel <i>:` line"))?;
        let colon = rest.find(':').ok_or_else(|| {
            Error::parse(line.number, column(line.text, offset), "expected `:` after the relation index")
        })?;
        let idx_text = rest[..colon].trim();
        let i: usize = idx_text.parse().map_err(|_| {
            Error::parse(line.number, column(line.text, offset), format!("`{idx_text}` is not a relation index"))
        })?;
        if i >= sig.len() {
            return Err(Error::parse(
                line.number,
                column(line.text, offset),
                format!("relation {i} is not in a type with {} relations", sig.len()),
            ));
        }
        parse_tuples(line, &rest[colon + 1..], offset + colon + 1, sig.arity(i), i, &index, &mut rels[i])?;
    }
    let structure = Structure::new(sig, names, rels)?;
    Ok(Named { name, structure })
}

// whitespace-separated tokens with their byte offsets in the line
fn tokens(s: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(b)) => {
                out.push((offset + b, &s[b..k]));
                start = None;
            }
            _ => {}
        }
    }
    out.into_iter()
}

fn parse_tuples(
    line: &Line<'_>,
    s: &str,
    offset: usize,
    arity: usize,
    rel: usize,
    index: &HashMap<&str, usize>,
    out: &mut Vec<Tuple>,
) -> Result<()> {
    let err = |at: usize, msg: String| Error::parse(line.number, column(line.text, offset + at), msg);
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut k = 0;
    while k < bytes.len() {
        let (at, c) = bytes[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c != '(' {
            return Err(err(at, format!("expected `(`, found `{c}`")));
        }
        let open = at;
        let close = s[at..].find(')').map(|p| at + p).ok_or_else(|| err(at, "unclosed tuple".into()))?;
        let inner = &s[at + 1..close];
        let mut tuple = Vec::new();
        let mut pos = at + 1;
        for part in inner.split(',') {
            let name = part.trim();
            let lead = part.len() - part.trim_start().len();
            if name.is_empty() {
                return Err(err(pos, "empty tuple entry".into()));
            }
            let v = index.get(name).ok_or_else(|| err(pos + lead, format!("undeclared vertex `{name}`")))?;
            tuple.push(*v);
            pos += part.len() + 1;
        }
        if tuple.len() != arity {
            return Err(err(open, format!("tuple of length {} in relation {rel} of arity {arity}", tuple.len())));
        }
        out.push(tuple);
        k = bytes.iter().position(|&(b, _)| b > close).unwrap_or(bytes.len());
    }
    Ok(())
}

/// Writes a structure; `parse_structure` reads it back unchanged.
///
/// Tuples appear in lexicographic order of vertex indices. If some vertex
/// name cannot be written as an identifier, all vertices are written by
/// index instead.
pub fn serialize_structure(a: &Structure) -> String {
    serialize_named(a, None)
}

pub fn serialize_named(a: &Structure, name: Option<&str>) -> String {
    let names: Vec<String> = if a.names().iter().all(|n| is_identifier(n)) {
        a.names().to_vec()
    } else {
        (0..a.len()).map(|k| k.to_string()).collect()
    };
    let mut out = String::new();
    writeln!(out, "type: {}", a.sig()).unwrap();
    if let Some(n) = name {
        writeln!(out, "structure {n}").unwrap();
    }
    writeln!(out, "vertices: {}", names.join(" ")).unwrap();
    for (i, rel) in a.relations().iter().enumerate() {
        if rel.is_empty() && i > 0 {
            continue;
        }
        write!(out, "rel {i}:").unwrap();
        for t in rel {
            let parts: Vec<&str> = t.iter().map(|&v| names[v].as_str()).collect();
            write!(out, " ({})", parts.join(",")).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `node <id>` lines, then `edge <id> <id>` lines, one per edge copy.
pub fn dump_multigraph(g: &Multigraph) -> String {
    let ids: Vec<String> = if g.nodes.iter().all(|n| !n.contains(char::is_whitespace) && !n.is_empty()) {
        g.nodes.clone()
    } else {
        (0..g.nodes.len()).map(|k| k.to_string()).collect()
    };
    let mut out = String::new();
    for n in &ids {
        writeln!(out, "node {n}").unwrap();
    }
    for &(a, b) in &g.edges {
        writeln!(out, "edge {} {}", ids[a], ids[b]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHADOW_EXAMPLE: &str = "\
# six vertices, one binary and one ternary relation
type: 2 3
structure A
vertices: 1 2 3 4 5 6
rel 0: (3,2) (6,3) (6,5)
rel 1: (1,5,6) (4,4,1) (4,5,2)
";

    #[test]
    fn parses_example() {
        let all = parse_structures(SHADOW_EXAMPLE).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].name.as_deref(), Some("A"));
        let a = &all[0].structure;
        assert_eq!(a.len(), 6);
        assert_eq!(a.relation(0), &[vec![2, 1], vec![5, 2], vec![5, 4]]);
        assert_eq!(a.relation(1).len(), 3);
        assert_eq!(parse_structure(&serialize_structure(a)).unwrap(), *a);
    }

    #[test]
    fn minimal_input_is_bottom() {
        let a = parse_structure("type: 2\nvertices: v\nrel 0:\n").unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.edge_count(), 0);
        assert_eq!(serialize_structure(&a), "type: 2\nvertices: v\nrel 0:\n");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_structure("type: 3\nvertices: v1 v2\nrel 0: (v1,v2)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 8, .. }), "{e}");
        let e = parse_structure("type: 2\nvertices: a b\nrel 0: (a,c)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 11, .. }), "{e}");
        let e = parse_structure("type: 1\nvertices: a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 7, .. }), "{e}");
        let e = parse_structure("type: 2\nvertices:\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_structure("type: 2\nvertices: a a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 13, .. }), "{e}");
        let e = parse_structure("type: 2\nvertices: a\nrel 1: (a,a)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn duplicates_merge() {
        let a = parse_structure("type: 2\nvertices: a b\nrel 0: (a,b) (a,b)\nrel 0: ( a , b )\n").unwrap();
        assert_eq!(a.edge_count(), 1);
    }

    #[test]
    fn unsafe_names_fall_back_to_indices() {
        let a = Structure::new(Signature::digraph(), vec!["x y".into(), "z".into()], vec![vec![vec![0, 1]]]).unwrap();
        assert_eq!(serialize_structure(&a), "type: 2\nvertices: 0 1\nrel 0: (0,1)\n");
    }

    #[test]
    fn multigraph_dump() {
        let a = parse_structure("type: 2\nvertices: a b\nrel 0: (a,b) (b,a)\n").unwrap();
        let g = homdual_core::graph::shadow(&a);
        assert_eq!(dump_multigraph(&g), "node a\nnode b\nedge a b\nedge b a\n");
    }
}
