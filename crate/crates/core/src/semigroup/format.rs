//! Text format for Cayley tables:
//!
//! ```text
//! semigroup 3
//! 0 1 2
//! 1 1 2
//! 2 2 2
//! labels: a b c
//! T: 0
//! retraction: 0 0 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The table itself is
//! not validated by the parser; see [`SemigroupFile::semigroup`].

use std::fmt::Write as _;

use thiserror::Error;

use super::{FamilyError, FiniteFamily, FiniteSemigroup, SemigroupError};
use crate::subset::SubsetQuery;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// The parsed, not yet validated, content of a semigroup file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupFile {
    pub rows: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
    pub subsemigroup: Option<Vec<usize>>,
    pub retractions: Vec<Vec<usize>>,
}

impl SemigroupFile {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Validates the Cayley table.
    pub fn semigroup(&self) -> Result<FiniteSemigroup, SemigroupError> {
        let sg = FiniteSemigroup::from_rows(&self.rows)?;
        match &self.labels {
            Some(l) => sg.with_labels(l.clone()),
            None => Ok(sg),
        }
    }

    pub fn subsemigroup_mask(&self) -> Option<SubsetQuery> {
        self.subsemigroup
            .as_ref()
            .map(|t| SubsetQuery::from_indices(self.order(), t.iter().copied()))
    }

    /// Builds the declared retraction family. Requires a `T:` line.
    pub fn family(&self) -> Result<Option<FiniteFamily>, FamilyError> {
        match self.subsemigroup_mask() {
            Some(t) if !self.retractions.is_empty() => {
                FiniteFamily::new(self.semigroup()?, t, self.retractions.clone()).map(Some)
            }
            _ => Ok(None),
        }
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, text)| {
        let t = text.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some(Line { number: i + 1, text })
    })
}

/// Splits into whitespace-separated tokens with 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_index(line: usize, column: usize, tok: &str, bound: Option<usize>) -> Result<usize, ParseError> {
    let v: usize = tok
        .parse()
        .map_err(|_| err(line, column, format!("expected a non-negative integer, found {tok:?}")))?;
    if let Some(b) = bound {
        if v >= b {
            return Err(err(line, column, format!("index {v} outside 0..{b}")));
        }
    }
    Ok(v)
}

pub fn parse_semigroup_file(input: &str) -> Result<SemigroupFile, ParseError> {
    let mut lines = significant_lines(input);
    let header = lines.next().ok_or_else(|| err(1, 1, "empty file, expected \"semigroup n\""))?;
    let toks = tokens(header.text);
    let order = match toks.as_slice() {
        [(_, "semigroup"), (c, n)] => {
            let n = parse_index(header.number, *c, n, None)?;
            if n == 0 {
                return Err(err(header.number, *c, "order must be at least 1"));
            }
            n
        }
        [(c, _), ..] => return Err(err(header.number, *c, "expected \"semigroup n\"")),
        [] => unreachable!("significant lines are nonempty"),
    };

    let mut rows = Vec::with_capacity(order);
    for r in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| err(header.number + r + 1, 1, format!("missing table row {r}")))?;
        let toks = tokens(line.text);
        if toks.len() != order {
            let column = toks.get(order).map_or(line.text.len() + 1, |t| t.0);
            return Err(err(
                line.number,
                column,
                format!("row {r} has {} entries, expected {order}", toks.len()),
            ));
        }
        rows.push(
            toks.iter()
                .map(|&(c, t)| parse_index(line.number, c, t, None))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }

    let mut file = SemigroupFile {
        rows,
        labels: None,
        subsemigroup: None,
        retractions: Vec::new(),
    };
    for line in lines {
        let toks = tokens(line.text);
        let (kc, key) = toks[0];
        let rest = &toks[1..];
        match key {
            "T:" => {
                if file.subsemigroup.is_some() {
                    return Err(err(line.number, kc, "duplicate T line"));
                }
                if rest.is_empty() {
                    return Err(err(line.number, kc, "T must list at least one element"));
                }
                let t = rest
                    .iter()
                    .map(|&(c, tok)| parse_index(line.number, c, tok, Some(order)))
                    .collect::<Result<Vec<_>, _>>()?;
                file.subsemigroup = Some(t);
            }
            "retraction:" => {
                if rest.len() != order {
                    let column = rest.get(order).map_or(line.text.len() + 1, |t| t.0);
                    return Err(err(
                        line.number,
                        column,
                        format!("retraction has {} images, expected {order}", rest.len()),
                    ));
                }
                let map = rest
                    .iter()
                    .map(|&(c, tok)| parse_index(line.number, c, tok, Some(order)))
                    .collect::<Result<Vec<_>, _>>()?;
                file.retractions.push(map);
            }
            "labels:" => {
                if rest.len() != order {
                    return Err(err(line.number, kc, format!("expected {order} labels, found {}", rest.len())));
                }
                file.labels = Some(rest.iter().map(|&(_, t)| t.to_string()).collect());
            }
            _ => {
                return Err(err(
                    line.number,
                    kc,
                    format!("unexpected {key:?}; expected \"T:\", \"retraction:\" or \"labels:\""),
                ))
            }
        }
    }
    if !file.retractions.is_empty() && file.subsemigroup.is_none() {
        return Err(err(1, 1, "retractions given without a \"T:\" line"));
    }
    Ok(file)
}

pub fn render_semigroup_file(sg: &FiniteSemigroup, t: Option<&SubsetQuery>, retractions: &[Vec<usize>]) -> String {
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "semigroup {}", sg.order()).unwrap();
    for row in sg.rows() {
        writeln!(out, "{}", join(&mut row.iter().map(usize::to_string))).unwrap();
    }
    if let Some(labels) = sg.labels() {
        writeln!(out, "labels: {}", labels.join(" ")).unwrap();
    }
    if let Some(t) = t {
        writeln!(out, "T: {}", join(&mut t.iter().map(|i| i.to_string()))).unwrap();
    }
    for r in retractions {
        writeln!(out, "retraction: {}", join(&mut r.iter().map(usize::to_string))).unwrap();
    }
    out
}
