//! OEIS b-file reading and writing.
//!
//! One `index value` pair per line; lines starting with `#` and blank lines
//! are ignored. Indices must be strictly increasing.

use std::fmt;
use std::str::FromStr;

use homcount::Nat;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BFileError {
    #[error("line {line}: expected `index value`, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: index {index} does not increase")]
    NotIncreasing { line: usize, index: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BFile {
    entries: Vec<(i64, Nat)>,
}

impl BFile {
    /// Consecutive indices starting at `origin`.
    pub fn from_values(origin: i64, values: &[Nat]) -> Self {
        BFile {
            entries: values
                .iter()
                .enumerate()
                .map(|(i, v)| (origin + i as i64, v.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(i64, Nat)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn last_index(&self) -> Option<i64> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Keep only entries with index at most `max_index`.
    pub fn truncate_to(&mut self, max_index: i64) {
        self.entries.retain(|(i, _)| *i <= max_index);
    }
}

impl FromStr for BFile {
    type Err = BFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut entries: Vec<(i64, Nat)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || BFileError::Malformed {
                line: lineno + 1,
                content: raw.to_string(),
            };
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(malformed());
            };
            let index: i64 = idx.parse().map_err(|_| malformed())?;
            let value: Nat = val.parse().map_err(|_| malformed())?;
            if entries.last().is_some_and(|(prev, _)| *prev >= index) {
                return Err(BFileError::NotIncreasing {
                    line: lineno + 1,
                    index,
                });
            }
            entries.push((index, value));
        }
        Ok(BFile { entries })
    }
}

impl fmt::Display for BFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in &self.entries {
            writeln!(f, "{i} {v}")?;
        }
        Ok(())
    }
}
