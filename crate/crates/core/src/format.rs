//! Plain-text algebra definition files.
//!
//! ```text
//! # comment
//! name M2 graded by Z2
//! semigroup Z2                      # catalog tag, or:
//! semigroup inline a b              # element labels, followed by one
//! row a b                           # `row` line per element
//! row b a
//! basis e11 0                       # label and degree, one line each
//! basis e12 1
//! product 0 1 1 -1/2                # basis_0 * basis_1 = -1/2 * basis_1
//! unit 1 0 0 1                      # optional
//! ```
//!
//! Basis indices in `product` lines are 0-based in order of the `basis`
//! lines. Omitted products are zero.

use std::fmt::Write as _;

use crate::algebra::GradedAlgebra;
use crate::arith::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};
use crate::semigroup::{catalog_semigroup, FiniteSemigroup};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_algebra(text: &str) -> Result<GradedAlgebra> {
    let mut name = String::from("unnamed");
    let mut semigroup_tag: Option<(usize, String)> = None;
    let mut inline_labels: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    let mut basis: Vec<(usize, String, String)> = Vec::new();
    let mut products: Vec<(usize, usize, usize, Q)> = Vec::new();
    let mut unit: Option<Vec<Q>> = None;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let key = words.next().expect("nonempty line");
        let rest: Vec<&str> = words.collect();
        match key {
            "name" => name = rest.join(" "),
            "semigroup" => match rest.as_slice() {
                ["inline", labels @ ..] if !labels.is_empty() => {
                    inline_labels = Some(labels.iter().map(|s| s.to_string()).collect())
                }
                [tag] => semigroup_tag = Some((line_no, tag.to_string())),
                _ => return Err(err(line_no, "expected `semigroup <tag>` or `semigroup inline <labels>`")),
            },
            "row" => rows.push((line_no, rest.iter().map(|s| s.to_string()).collect())),
            "basis" => match rest.as_slice() {
                [label, degree] => basis.push((line_no, label.to_string(), degree.to_string())),
                _ => return Err(err(line_no, "expected `basis <label> <degree>`")),
            },
            "product" => match rest.as_slice() {
                [i, j, k, c] => {
                    let idx = |s: &str| s.parse::<usize>().map_err(|_| err(line_no, format!("bad index `{s}`")));
                    let c = parse_q(c).ok_or_else(|| err(line_no, format!("bad coefficient `{c}`")))?;
                    products.push((idx(i)?, idx(j)?, idx(k)?, c));
                }
                _ => return Err(err(line_no, "expected `product i j k p/q`")),
            },
            "unit" => {
                let v: Option<Vec<Q>> = rest.iter().map(|s| parse_q(s)).collect();
                unit = Some(v.ok_or_else(|| err(line_no, "bad unit coefficient"))?);
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let semigroup = match (semigroup_tag, inline_labels) {
        (Some(_), Some(_)) => return Err(err(0, "semigroup given twice")),
        (Some((line, tag)), None) => catalog_semigroup(&tag).map_err(|e| err(line, e.to_string()))?,
        (None, Some(labels)) => {
            let lookup = |line: usize, s: &str| {
                labels.iter().position(|l| l == s).ok_or_else(|| err(line, format!("unknown element `{s}`")))
            };
            if rows.len() != labels.len() {
                return Err(err(0, format!("expected {} `row` lines", labels.len())));
            }
            let mut table = Vec::new();
            for (line, row) in &rows {
                table.push(row.iter().map(|s| lookup(*line, s)).collect::<Result<Vec<_>>>()?);
            }
            FiniteSemigroup::new(labels, table)?
        }
        (None, None) => return Err(err(0, "missing `semigroup` line")),
    };
    if basis.is_empty() {
        return Err(err(0, "no basis elements"));
    }
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (line, label, degree) in basis {
        let d = semigroup.index_of(&degree).ok_or_else(|| err(line, format!("unknown degree `{degree}`")))?;
        labels.push(label);
        degrees.push(d);
    }
    GradedAlgebra::new(name, semigroup, labels, degrees, products, unit)
}

pub fn write_algebra(a: &GradedAlgebra) -> String {
    let mut out = String::new();
    let s = a.semigroup();
    writeln!(out, "name {}", a.name()).unwrap();
    writeln!(out, "semigroup inline {}", s.labels().join(" ")).unwrap();
    for row in s.table() {
        let names: Vec<&str> = row.iter().map(|&x| s.label(x)).collect();
        writeln!(out, "row {}", names.join(" ")).unwrap();
    }
    for (i, label) in a.labels().iter().enumerate() {
        writeln!(out, "basis {} {}", label, s.label(a.degree(i))).unwrap();
    }
    for (i, j, k, c) in a.structure_constants() {
        writeln!(out, "product {i} {j} {k} {}", fmt_q(&c)).unwrap();
    }
    if let Some(u) = a.declared_unit() {
        let parts: Vec<String> = u.iter().map(fmt_q).collect();
        writeln!(out, "unit {}", parts.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn round_trip_catalog_entries() {
        for spec in ["thm_T1_fractional", "thm_T3_fractional", "mk_zhalf_graded", "utk_column_graded(3)"] {
            let a = catalog(spec).unwrap();
            let b = parse_algebra(&write_algebra(&a)).unwrap();
            assert_eq!(a.structure_constants(), b.structure_constants());
            assert_eq!(a.degrees(), b.degrees());
            assert_eq!(a.labels(), b.labels());
        }
    }

    #[test]
    fn parses_hand_written_file() {
        let text = "name F\nsemigroup Trivial\nbasis 1 e\nproduct 0 0 0 1\nunit 1\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.find_unit().unwrap(), vec![crate::arith::q(1)]);
    }

    #[test]
    fn rejects_invalid_structure() {
        // x*x = y, y*x = 0, x*y = y: not associative ((xx)x = 0, x(xx) = y)
        let text = "semigroup Trivial\nbasis x e\nbasis y e\nproduct 0 0 1 1\nproduct 0 1 1 1\n";
        assert!(matches!(parse_algebra(text), Err(Error::NotAssociative(..))));
        let graded = "semigroup Z2\nbasis x 1\nproduct 0 0 0 1\n";
        assert!(matches!(parse_algebra(graded), Err(Error::GradingViolation(..))));
        assert!(matches!(parse_algebra("basis x e\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_algebra("semigroup Trivial\nbasis x e\nproduct 0 0 0 1/0\n"), Err(Error::Parse { line: 3, .. })));
    }
}
