//! Colorings of `T`: constant words, integers, or elements of a finite
//! semigroup, parsed from spec strings like `mod:2`, `apres:2:0110` and
//! `table:colors.txt`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::digit_sum;
use crate::semigroup::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("bad coloring spec at {token:?}: {reason}")]
    Spec { token: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("color table line {line}, token {token:?}: {reason}")]
    Table { line: usize, token: String, reason: String },
    #[error("no color for {0} and the table declares no default")]
    Missing(String),
    #[error("{0} is not a constant word")]
    NotConstant(String),
}

/// A total coloring into `0..colors()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Coloring {
    /// Digit sum (words) or value (integers, element indices) mod `colors`.
    ModularSum { colors: u8 },
    /// Integer `i` gets `pattern[i mod |pattern|]`, or `i mod colors` when
    /// the pattern is empty. Words are colored through their digit sum.
    ApResidue { colors: u8, pattern: Vec<u8> },
    /// Explicit keys (word strings, integers, or element labels) with an
    /// optional default for everything else.
    Table {
        colors: u8,
        entries: BTreeMap<String, u8>,
        default: Option<u8>,
    },
}

fn spec_err(token: &str, reason: impl Into<String>) -> ColoringError {
    ColoringError::Spec {
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_colors(token: &str) -> Result<u8, ColoringError> {
    match token.parse::<u8>() {
        Ok(r) if r >= 1 => Ok(r),
        _ => Err(spec_err(token, "color count must be an integer in 1..=255")),
    }
}

impl Coloring {
    /// Parses `mod:<r>`, `apres:<r>[:<pattern>]` or `table:<path>`.
    pub fn parse(spec: &str) -> Result<Self, ColoringError> {
        let (kind, rest) = spec.split_once(':').ok_or_else(|| spec_err(spec, "expected <kind>:<args>"))?;
        match kind {
            "mod" => Ok(Coloring::ModularSum {
                colors: parse_colors(rest)?,
            }),
            "apres" => {
                let (r, pattern) = match rest.split_once(':') {
                    Some((r, p)) => (parse_colors(r)?, Some(p)),
                    None => (parse_colors(rest)?, None),
                };
                let pattern = match pattern {
                    None => Vec::new(),
                    Some("") => return Err(spec_err(rest, "empty residue pattern")),
                    Some(p) => p
                        .chars()
                        .map(|c| match c.to_digit(10) {
                            Some(d) if (d as u8) < r => Ok(d as u8),
                            _ => Err(spec_err(p, format!("pattern symbol {c:?} is not a color below {r}"))),
                        })
                        .collect::<Result<_, _>>()?,
                };
                Ok(Coloring::ApResidue { colors: r, pattern })
            }
            "table" => {
                if rest.is_empty() {
                    return Err(spec_err(spec, "missing table path"));
                }
                Self::read_table(Path::new(rest))
            }
            other => Err(spec_err(other, "unknown coloring kind (expected mod, apres or table)")),
        }
    }

    pub fn read_table(path: &Path) -> Result<Self, ColoringError> {
        let text = std::fs::read_to_string(path).map_err(|e| ColoringError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse_table(&text)
    }

    /// Table text: `<key> <color>` per line, plus optional `colors <r>` and
    /// `default <c>` lines. `#` starts a comment.
    pub fn parse_table(text: &str) -> Result<Self, ColoringError> {
        let mut entries = BTreeMap::new();
        let mut declared = None;
        let mut default = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |token: &str, reason: &str| ColoringError::Table {
                line: i + 1,
                token: token.to_string(),
                reason: reason.to_string(),
            };
            let mut parts = line.split_whitespace();
            let key = parts.next().expect("nonempty line");
            let value = parts.next().ok_or_else(|| err(key, "expected `<key> <color>`"))?;
            if let Some(extra) = parts.next() {
                return Err(err(extra, "unexpected trailing token"));
            }
            let value: u8 = value.parse().map_err(|_| err(value, "not a color number"))?;
            match key {
                "colors" if value == 0 => return Err(err("0", "need at least one color")),
                "colors" => declared = Some(value),
                "default" => default = Some(value),
                _ => {
                    if entries.insert(key.to_string(), value).is_some() {
                        return Err(err(key, "duplicate key"));
                    }
                }
            }
        }
        let used = entries.values().chain(default.iter()).copied().max();
        let colors = match (declared, used) {
            (Some(r), Some(u)) if u >= r => {
                return Err(ColoringError::Table {
                    line: 0,
                    token: u.to_string(),
                    reason: format!("color outside declared 0..{r}"),
                })
            }
            (Some(r), _) => r,
            (None, Some(u)) => u + 1,
            (None, None) => {
                return Err(ColoringError::Table {
                    line: 0,
                    token: String::new(),
                    reason: "empty table".into(),
                })
            }
        };
        Ok(Coloring::Table {
            colors,
            entries,
            default,
        })
    }

    pub fn colors(&self) -> u8 {
        match *self {
            Coloring::ModularSum { colors } | Coloring::ApResidue { colors, .. } | Coloring::Table { colors, .. } => {
                colors
            }
        }
    }

    fn lookup(&self, keys: &[&str]) -> Result<u8, ColoringError> {
        let Coloring::Table { entries, default, .. } = self else {
            unreachable!("lookup is only used for tables")
        };
        keys.iter()
            .find_map(|k| entries.get(*k).copied())
            .or(*default)
            .ok_or_else(|| ColoringError::Missing(keys[0].to_string()))
    }

    pub fn color_of_int(&self, i: u64) -> Result<u8, ColoringError> {
        match self {
            Coloring::ModularSum { colors } => Ok((i % *colors as u64) as u8),
            Coloring::ApResidue { colors, pattern } if pattern.is_empty() => Ok((i % *colors as u64) as u8),
            Coloring::ApResidue { pattern, .. } => Ok(pattern[(i % pattern.len() as u64) as usize]),
            Coloring::Table { .. } => self.lookup(&[&i.to_string()]),
        }
    }

    /// Colors a constant word. Tables are keyed by the word's string.
    pub fn color_of_word(&self, w: &Word) -> Result<u8, ColoringError> {
        match self {
            Coloring::Table { .. } => {
                if !w.is_constant() {
                    return Err(ColoringError::NotConstant(w.to_string()));
                }
                self.lookup(&[&w.to_string()])
            }
            _ => self.color_of_int(digit_sum(w).ok_or_else(|| ColoringError::NotConstant(w.to_string()))?),
        }
    }

    /// Colors a finite-semigroup element. Tables are keyed by label first,
    /// then by index.
    pub fn color_of_element(&self, label: &str, index: usize) -> Result<u8, ColoringError> {
        match self {
            Coloring::Table { .. } => self.lookup(&[label, &index.to_string()]),
            _ => self.color_of_int(index as u64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn modular_sum() {
        let c = Coloring::parse("mod:2").unwrap();
        assert_eq!(c.color_of_word(&w("00")).unwrap(), 0);
        assert_eq!(c.color_of_word(&w("01")).unwrap(), 1);
        assert_eq!(c.color_of_word(&w("11")).unwrap(), 0);
        assert_eq!(c.color_of_int(7).unwrap(), 1);
        assert!(matches!(c.color_of_word(&w("0x")), Err(ColoringError::NotConstant(_))));
    }

    #[test]
    fn ap_residue_patterns() {
        let c = Coloring::parse("apres:2:011").unwrap();
        let got: Vec<u8> = (0..7).map(|i| c.color_of_int(i).unwrap()).collect();
        assert_eq!(got, [0, 1, 1, 0, 1, 1, 0]);
        assert_eq!(c.color_of_word(&w("21")).unwrap(), 0);
        let plain = Coloring::parse("apres:3").unwrap();
        assert_eq!(plain.color_of_int(5).unwrap(), 2);
    }

    #[test]
    fn tables() {
        let c = Coloring::parse_table("# test\ncolors 3\n(2,0) 1\n0 2\ndefault 0\n").unwrap();
        assert_eq!(c.colors(), 3);
        assert_eq!(c.color_of_element("(2,0)", 2).unwrap(), 1);
        assert_eq!(c.color_of_element("(0,0)", 0).unwrap(), 2);
        assert_eq!(c.color_of_element("(1,0)", 1).unwrap(), 0);
        let c = Coloring::parse_table("00 1\n11 1\n").unwrap();
        assert_eq!(c.colors(), 2);
        assert!(matches!(c.color_of_word(&w("01")), Err(ColoringError::Missing(k)) if k == "01"));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let bad = |s: &str| match Coloring::parse(s).unwrap_err() {
            ColoringError::Spec { token, .. } => token,
            e => panic!("{e}"),
        };
        assert_eq!(bad("rainbow:2"), "rainbow");
        assert_eq!(bad("mod:zero"), "zero");
        assert_eq!(bad("mod:0"), "0");
        assert_eq!(bad("apres:2:012"), "012");
        assert_eq!(bad("nocolon"), "nocolon");
        let table_err = Coloring::parse_table("00 1\n01 x\n").unwrap_err();
        assert!(matches!(table_err, ColoringError::Table { line: 2, ref token, .. } if token == "x"));
        assert!(Coloring::parse_table("colors 2\n0 2\n").is_err());
        assert!(Coloring::parse_table("0 1\n0 0\n").is_err());
        assert!(matches!(Coloring::parse("table:/nonexistent/c.txt"), Err(ColoringError::Io { .. })));
    }

    #[test]
    fn round_trips_through_json() {
        for c in [
            Coloring::parse("mod:2").unwrap(),
            Coloring::parse("apres:2:0110").unwrap(),
            Coloring::parse_table("colors 2\n(0,0) 1\ndefault 0\n").unwrap(),
        ] {
            let s = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Coloring>(&s).unwrap(), c);
        }
    }
}
