//! DIMACS CNF input, restricted to clauses of exactly three literals.

use homdual_core::order::CnfFormula;

use crate::error::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 1;
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        last_line = number;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                return Err(Error::parse(number, 1, "expected `p cnf <vars> <clauses>`"));
            }
            let num =
                |s: &str| s.parse::<usize>().map_err(|_| Error::parse(number, 1, format!("`{s}` is not a count")));
            header = Some((num(parts[1])?, num(parts[2])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(number, 1, "clause before the `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| Error::parse(number, 1, format!("`{tok}` is not a literal")))?;
            if lit == 0 {
                let c: [i64; 3] = current.as_slice().try_into().map_err(|_| {
                    Error::parse(
                        number,
                        1,
                        format!("clause {} has {} literals, not 3", clauses.len() + 1, current.len()),
                    )
                })?;
                clauses.push(c);
                current.clear();
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(1, 1, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::parse(last_line, 1, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(last_line, 1, format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok(CnfFormula::new(vars, clauses)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_formula() {
        let f = parse_dimacs("c example\np cnf 3 2\n1 -2 3 0\n-1 2\n-3 0\n").unwrap();
        assert_eq!(f.vars, 3);
        assert_eq!(f.clauses, vec![[1, -2, 3], [-1, 2, -3]]);
    }

    #[test]
    fn rejects_other_widths() {
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 2 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), Err(Error::Core(_))));
        assert!(matches!(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), Err(Error::Parse { .. })));
    }
}
