//! Reading and writing matrices in the text, inline and JSON formats.
//!
//! Text format: one row per line, entries `0`/`1` separated by whitespace.
//! Blank lines and lines starting with `#` are ignored. A row written
//! without whitespace (`0110`) is read one character per entry, which is
//! also what the inline `0110;0011;0000;0000` syntax uses.
//!
//! JSON format: `{"n": 2, "rows": [[0, 1], [0, 0]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BottMatrix, GeneralBottMatrix};

/// Result of parsing: a Bott matrix when strictly upper triangular,
/// otherwise a general Bott matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedMatrix {
    Bott(BottMatrix),
    General(GeneralBottMatrix),
}

impl ParsedMatrix {
    pub fn dim(&self) -> usize {
        match self {
            ParsedMatrix::Bott(c) => c.dim(),
            ParsedMatrix::General(b) => b.dim(),
        }
    }

    pub fn to_general(&self) -> GeneralBottMatrix {
        match self {
            ParsedMatrix::Bott(c) => c.to_general(),
            ParsedMatrix::General(b) => b.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ParsedMatrix::Bott(c) => c.to_text(),
            ParsedMatrix::General(b) => b.to_text(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    n: usize,
    rows: Vec<Vec<u8>>,
}

/// Parse the text or JSON format. JSON is recognised by a leading `{`.
pub fn parse_matrix(text: &str) -> Result<ParsedMatrix> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    classify(read_rows(lines)?)
}

/// Parse the inline form, rows separated by `;`.
pub fn parse_inline(text: &str) -> Result<ParsedMatrix> {
    let lines = text.split(';').map(str::trim).filter(|l| !l.is_empty());
    classify(read_rows(lines)?)
}

/// Parse the JSON form.
pub fn parse_json(text: &str) -> Result<ParsedMatrix> {
    let m: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if m.rows.len() != m.n {
        return Err(Error::Json(format!("\"n\" is {} but {} rows given", m.n, m.rows.len())));
    }
    for (i, row) in m.rows.iter().enumerate() {
        if row.len() != m.n {
            return Err(Error::NonSquare { row: i + 1, found: row.len(), expected: m.n });
        }
        if let Some(j) = row.iter().position(|&v| v > 1) {
            return Err(Error::NonBinary { row: i + 1, col: j + 1, token: row[j].to_string() });
        }
    }
    classify(m.rows)
}

/// Serialize to the JSON form.
pub fn to_json(grid: &[Vec<u8>]) -> String {
    serde_json::to_string(&JsonMatrix { n: grid.len(), rows: grid.to_vec() })
        .expect("plain data serializes")
}

fn read_rows<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Vec<Vec<u8>>> {
    let mut grid = Vec::new();
    for (i, line) in lines.enumerate() {
        let tokens: Vec<&str> = if line.contains(char::is_whitespace) {
            line.split_whitespace().collect()
        } else {
            line.char_indices().map(|(p, ch)| &line[p..p + ch.len_utf8()]).collect()
        };
        let row = tokens
            .iter()
            .enumerate()
            .map(|(j, tok)| match *tok {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(Error::NonBinary { row: i + 1, col: j + 1, token: other.to_string() }),
            })
            .collect::<Result<Vec<u8>>>()?;
        grid.push(row);
    }
    Ok(grid)
}

fn classify(grid: Vec<Vec<u8>>) -> Result<ParsedMatrix> {
    let n = grid.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquare { row: i + 1, found: row.len(), expected: n });
        }
    }
    for (i, row) in grid.iter().enumerate() {
        if row[i] != 0 {
            return Err(Error::DiagonalNonzero { index: i + 1 });
        }
    }
    let upper = grid.iter().enumerate().all(|(i, row)| row[..i].iter().all(|&v| v == 0));
    if upper {
        BottMatrix::from_grid(&grid).map(ParsedMatrix::Bott)
    } else {
        GeneralBottMatrix::from_grid(&grid).map(ParsedMatrix::General)
    }
}
