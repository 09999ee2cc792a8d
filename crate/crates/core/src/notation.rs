//! Monomial notation for exponent matrices.
//!
//! A matrix is written as `n` comma-separated monomials, one per row:
//! `x^5z, xy^3, z^2` is the matrix with rows `(5,0,1), (1,3,0), (0,0,2)`.
//! Variables are `x,y` / `x,y,z` / `x,y,z,t` by dimension, or indexed
//! `x1..xn`. Exponents are `x^5` or `x^{21}`; a bare variable has exponent 1.
//! The plain integer form `5,0,1;1,3,0;0,0,2` is accepted as well.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("empty matrix")]
    Empty,
    #[error("monomial {index} ({text:?}): {reason}")]
    Monomial {
        index: usize,
        text: String,
        reason: &'static str,
    },
    #[error("variable {name:?} is not available with {n} variables")]
    UnknownVariable { name: String, n: usize },
    #[error("integer rows do not form a square matrix")]
    NotSquare,
    #[error("bad integer entry {0:?}")]
    BadEntry(String),
}

const NAMED: [&[u8]; 3] = [b"xy", b"xyz", b"xyzt"];

fn named_variables(n: usize) -> Option<&'static [u8]> {
    NAMED.get(n.checked_sub(2)?).copied()
}

/// Parses a matrix in either monomial or integer-row notation.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, NotationError> {
    if text.chars().any(|c| c.is_ascii_alphabetic()) {
        parse_monomials(text)
    } else {
        parse_integer_rows(text)
    }
}

/// Parses `m1, m2, ..., mn` into an `n x n` exponent matrix.
pub fn parse_monomials(text: &str) -> Result<IntMatrix, NotationError> {
    let parts: Vec<String> = text
        .split(',')
        .map(|p| p.chars().filter(|c| !c.is_whitespace()).collect())
        .collect();
    if parts.len() == 1 && parts[0].is_empty() {
        return Err(NotationError::Empty);
    }
    let n = parts.len();
    let rows = parts
        .iter()
        .enumerate()
        .map(|(index, p)| parse_monomial(index, p, n))
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(&rows).ok_or(NotationError::NotSquare)
}

fn parse_monomial(index: usize, text: &str, n: usize) -> Result<Vec<i64>, NotationError> {
    let fail = |reason| NotationError::Monomial {
        index,
        text: text.into(),
        reason,
    };
    if text.is_empty() {
        return Err(fail("empty monomial"));
    }
    let mut row = vec![0i64; n];
    if text == "1" {
        return Ok(row);
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let var = bytes[pos];
        if !var.is_ascii_alphabetic() {
            return Err(fail("expected a variable"));
        }
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let column = if digits_start < pos {
            if var != b'x' {
                return Err(fail("only `x` may carry an index"));
            }
            let k: usize = text[digits_start..pos].parse().map_err(|_| fail("bad index"))?;
            if k == 0 || k > n {
                return Err(NotationError::UnknownVariable {
                    name: text[digits_start - 1..pos].to_string(),
                    n,
                });
            }
            k - 1
        } else {
            named_variables(n)
                .and_then(|vars| vars.iter().position(|&v| v == var))
                .ok_or_else(|| NotationError::UnknownVariable {
                    name: (var as char).to_string(),
                    n,
                })?
        };
        let mut exponent = 1i64;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let braced = pos < bytes.len() && bytes[pos] == b'{';
            if braced {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(fail("missing exponent"));
            }
            exponent = text[start..pos]
                .parse()
                .map_err(|_| fail("exponent out of range"))?;
            if braced {
                if pos >= bytes.len() || bytes[pos] != b'}' {
                    return Err(fail("unclosed `{`"));
                }
                pos += 1;
            }
        }
        row[column] += exponent;
    }
    Ok(row)
}

/// Parses `5,0,1;1,3,0;0,0,2`.
pub fn parse_integer_rows(text: &str) -> Result<IntMatrix, NotationError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(NotationError::Empty);
    }
    let rows = compact
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|e| e.parse::<i64>().map_err(|_| NotationError::BadEntry(e.into())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(&rows).ok_or(NotationError::NotSquare)
}

/// Renders a matrix in the monomial notation used by the tables, e.g.
/// `x^{21}z, y^3, z^2`. Indexed variables are used above four columns.
pub fn format_monomials(m: &IntMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    for (i, row) in m.rows().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let start = out.len();
        for (j, &e) in row.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match named_variables(n) {
                Some(vars) => out.push(vars[j] as char),
                None => {
                    let _ = write!(out, "x{}", j + 1);
                }
            }
            match e {
                1 => {}
                2..=9 => {
                    let _ = write!(out, "^{e}");
                }
                _ => {
                    let _ = write!(out, "^{{{e}}}");
                }
            }
        }
        if out.len() == start {
            out.push('1');
        }
    }
    out
}

/// Renders a matrix as `5,0,1;1,3,0;0,0,2`.
pub fn format_integer_rows(m: &IntMatrix) -> String {
    let mut out = String::new();
    for (i, row) in m.rows().enumerate() {
        if i > 0 {
            out.push(';');
        }
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{e}");
        }
    }
    out
}
