//! Reading series from plain-text and CSV files.
//!
//! One observation per line; blank lines and lines starting with `#` are
//! skipped. With a [`Column`] selector each line is split on commas and the
//! chosen field is used. A named column is looked up in the first
//! non-comment line, which is then treated as a header.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    /// Zero-based field index.
    Index(usize),
    Name(String),
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty column selector".into()));
        }
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

/// Preprocessing applied after parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    #[default]
    None,
    /// X_t = |log Y_t² − log Y_{t−2}²|^{1/2}; drops the first two points.
    SqrtAbsLogdiff2,
}

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::None => "none",
            Transform::SqrtAbsLogdiff2 => "sqrt-abs-logdiff2",
        }
    }

    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        match self {
            Transform::None => Ok(values.to_vec()),
            Transform::SqrtAbsLogdiff2 => {
                if let Some(i) = values.iter().position(|&y| !(y > 0.0)) {
                    return Err(Error::InvalidInput(format!(
                        "log transform needs positive values; observation {} is {}",
                        i + 1,
                        values[i]
                    )));
                }
                if values.len() < 3 {
                    return Err(Error::InvalidInput(
                        "log-difference transform needs at least 3 values".into(),
                    ));
                }
                Ok(values
                    .windows(3)
                    .map(|w| (2.0 * w[2].ln() - 2.0 * w[0].ln()).abs().sqrt())
                    .collect())
            }
        }
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Transform::None),
            "sqrt-abs-logdiff2" => Ok(Transform::SqrtAbsLogdiff2),
            other => Err(Error::InvalidInput(format!(
                "unknown transform '{other}' (expected none or sqrt-abs-logdiff2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadOptions {
    pub column: Option<Column>,
    /// Drop rows whose selected field is empty or not a number (for
    /// example `ND` placeholders) instead of failing.
    pub skip_missing: bool,
    pub transform: Transform,
}

pub fn parse_series(text: &str, options: &ReadOptions) -> Result<Vec<f64>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let index = match &options.column {
        None => None,
        Some(Column::Index(i)) => Some(*i),
        Some(Column::Name(name)) => {
            let (_, header) = lines
                .next()
                .ok_or_else(|| Error::InvalidInput("file has no header line".into()))?;
            let pos = header
                .split(',')
                .position(|f| f.trim().trim_matches('"') == name)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("column '{name}' not found in header '{header}'"))
                })?;
            Some(pos)
        }
    };

    let mut values = Vec::new();
    for (line_no, line) in lines {
        let field = match index {
            None => line,
            Some(i) => match line.split(',').nth(i) {
                Some(f) => f.trim().trim_matches('"'),
                None if options.skip_missing => continue,
                None => {
                    return Err(Error::InvalidInput(format!(
                        "line {line_no}: no field {i} in '{line}'"
                    )))
                }
            },
        };
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ if options.skip_missing => continue,
            _ => {
                let hint = if index.is_none() && line.contains(',') {
                    " (use a column selector for CSV input)"
                } else {
                    ""
                };
                return Err(Error::InvalidInput(format!(
                    "line {line_no}: '{field}' is not a finite number{hint}"
                )));
            }
        }
    }
    if values.is_empty() {
        return Err(Error::InvalidInput("no observations found".into()));
    }
    options.transform.apply(&values)
}

pub fn read_series(path: &Path, options: &ReadOptions) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_series(&text, options)
}
