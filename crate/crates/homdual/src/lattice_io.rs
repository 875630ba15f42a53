//! Lattice files: an `elements:` line followed by `cover a < b` lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use homdual_core::heyting::FiniteLattice;

use crate::error::{Error, Result};

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    let mut names: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut covers = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if names.is_some() {
                return Err(Error::parse(number, 1, "a second `elements:` line"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for (p, n) in list.iter().enumerate() {
                if index.insert(n.clone(), p).is_some() {
                    return Err(Error::parse(number, 1, format!("duplicate element `{n}`")));
                }
            }
            names = Some(list);
        } else if let Some(rest) = line.strip_prefix("cover") {
            if names.is_none() {
                return Err(Error::parse(number, 1, "`cover` before `elements:`"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[1] != "<" {
                return Err(Error::parse(number, 1, "expected `cover <a> < <b>`"));
            }
            let look = |n: &str| {
                index.get(n).copied().ok_or_else(|| Error::parse(number, 1, format!("unknown element `{n}`")))
            };
            covers.push((look(parts[0])?, look(parts[2])?));
        } else {
            return Err(Error::parse(number, 1, "expected `elements:` or `cover`"));
        }
    }
    let names = names.ok_or_else(|| Error::parse(1, 1, "missing `elements:` line"))?;
    Ok(FiniteLattice::from_covers(names, &covers)?)
}

pub fn serialize_lattice(l: &FiniteLattice) -> String {
    let mut out = format!("elements: {}\n", l.names().join(" "));
    for (a, b) in l.covers() {
        writeln!(out, "cover {} < {}", l.name(a), l.name(b)).unwrap();
    }
    out
}
