//! Plain-text generator matrices and vector lists.
//!
//! One ASCII '0'/'1' line per row; lines starting with '#' and blank
//! lines are ignored. Errors carry 1-based line and column numbers.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, MAX_LEN};
use std::path::Path;

fn parse_row(lineno: usize, line: &str) -> Result<BitVector> {
    if line.len() > MAX_LEN {
        return Err(Error::Parse {
            line: lineno,
            col: MAX_LEN + 1,
            msg: format!("row longer than the {MAX_LEN}-bit limit"),
        });
    }
    let mut v = BitVector::zeros(line.len());
    for (i, c) in line.chars().enumerate() {
        match c {
            '0' => {}
            '1' => v.set(i, true),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    col: i + 1,
                    msg: format!("expected '0' or '1', found {c:?}"),
                })
            }
        }
    }
    Ok(v)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty() && !line.starts_with('#'))
}

/// Parses a rectangular generator matrix.
pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut rows: Vec<BitVector> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let row = parse_row(lineno, line)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: lineno,
                    col: row.len().min(first.len()) + 1,
                    msg: format!(
                        "row has {} columns, previous rows have {}",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "no generator rows found".into(),
        });
    }
    BitMatrix::new(rows)
}

/// Parses a list of vectors, one per line; lengths may differ per line.
pub fn parse_vectors(text: &str) -> Result<Vec<BitVector>> {
    content_lines(text)
        .map(|(lineno, line)| parse_row(lineno, line))
        .collect()
}

pub fn load_matrix(path: &Path) -> Result<BitMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn load_vectors(path: &Path) -> Result<Vec<BitVector>> {
    parse_vectors(&std::fs::read_to_string(path)?)
}
