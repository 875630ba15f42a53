//! Directory manifests for finite dualities.
//!
//! A duality directory holds one structure file per forbidden forest
//! (`F<k>.st`), component tree (`C<k>.st`) and dual (`D<k>.st`), plus a
//! `manifest` file:
//!
//! ```text
//! forbidden F0.st
//! component C0.st <canonical form>
//! transversal D0.st <canonical form> <canonical form>
//! dual D0.st
//! ```
//!
//! Transversal members are named by the canonical forms of their
//! components.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use homdual_core::canon::canonical_form;
use homdual_core::duality::FiniteDuality;
use homdual_core::Structure;

use crate::error::{Error, Result};
use crate::text::{parse_structure, serialize_structure};

pub const MANIFEST: &str = "manifest";

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `fd` into `dir`, creating it if needed.
pub fn write_duality(dir: &Path, fd: &FiniteDuality) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut m = String::new();
    for (k, f) in fd.forbidden.iter().enumerate() {
        let file = format!("F{k}.st");
        write(&dir.join(&file), &serialize_structure(f))?;
        writeln!(m, "forbidden {file}").unwrap();
    }
    let mut forms = Vec::with_capacity(fd.components.len());
    for (k, c) in fd.components.iter().enumerate() {
        let file = format!("C{k}.st");
        write(&dir.join(&file), &serialize_structure(c))?;
        let form = canonical_form(c)?.to_hex();
        writeln!(m, "component {file} {form}").unwrap();
        forms.push(form);
    }
    for (t, &d) in fd.transversals.iter().zip(&fd.transversal_duals) {
        let members: Vec<&str> = t.iter().map(|&c| forms[c].as_str()).collect();
        writeln!(m, "transversal D{d}.st {}", members.join(" ")).unwrap();
    }
    for (k, d) in fd.dual.iter().enumerate() {
        let file = format!("D{k}.st");
        write(&dir.join(&file), &serialize_structure(d))?;
        writeln!(m, "dual {file}").unwrap();
    }
    write(&dir.join(MANIFEST), &m)
}

/// The forbidden and dual sides stored in a duality directory.
pub fn read_duality(dir: &Path) -> Result<(Vec<Structure>, Vec<Structure>)> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let mut forbidden = Vec::new();
    let mut dual = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let (key, file) = match (parts.next(), parts.next()) {
            (Some(key), Some(file)) => (key, file),
            (None, _) => continue,
            _ => return Err(Error::parse(k + 1, 1, "expected `<key> <file>`")),
        };
        let load = || -> Result<Structure> {
            let p = dir.join(file);
            let t = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
            parse_structure(&t)
        };
        match key {
            "forbidden" => forbidden.push(load()?),
            "dual" => dual.push(load()?),
            "component" | "transversal" => {}
            other => return Err(Error::parse(k + 1, 1, format!("unknown manifest key `{other}`"))),
        }
    }
    Ok((forbidden, dual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use homdual_core::duality::dual_set;
    use homdual_core::fixtures::path;
    use homdual_core::hom::is_isomorphic;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let fd = dual_set(&[path(2)]).unwrap();
        write_duality(dir.path(), &fd).unwrap();
        let (f, d) = read_duality(dir.path()).unwrap();
        assert_eq!(f, fd.forbidden);
        assert_eq!(d.len(), 1);
        assert!(is_isomorphic(&d[0], &fd.dual[0]).unwrap());
        let m = fs::read_to_string(dir.path().join(MANIFEST)).unwrap();
        assert!(m.lines().any(|l| l.starts_with("transversal D0.st ")));
    }
}
