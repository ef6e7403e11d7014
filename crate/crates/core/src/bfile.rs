//! Reader for OEIS b-files: one `index value` pair per line, `#` comment lines.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    /// `(index, value)` pairs with strictly increasing indices.
    pub entries: Vec<(i64, i64)>,
}

impl BFile {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().map(|e| e.1)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses b-file text. Blank lines and lines starting with `#` are skipped; a
/// `#` anywhere else is an error, as are extra fields and non-increasing
/// indices. Line numbers in errors are 1-based.
pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut entries: Vec<(i64, i64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains('#') {
            return Err(parse_err(line_no, "comment marker inside a data line"));
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(line_no, "expected exactly two fields"));
        };
        let index: i64 = a.parse().map_err(|_| parse_err(line_no, format!("bad index {a:?}")))?;
        let value: i64 = b.parse().map_err(|_| parse_err(line_no, format!("bad value {b:?}")))?;
        if let Some(&(prev, _)) = entries.last() {
            if index <= prev {
                return Err(parse_err(
                    line_no,
                    format!("index {index} does not exceed previous index {prev}"),
                ));
            }
        }
        entries.push((index, value));
    }
    Ok(BFile { entries })
}

pub fn read_bfile(path: impl AsRef<Path>) -> Result<BFile> {
    let text = std::fs::read_to_string(path)?;
    parse_bfile(&text)
}
