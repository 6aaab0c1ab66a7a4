//! The free semigroup of words over letters and variable symbols.
//!
//! Words are never enumerated as a whole; every element is an owned
//! sequence and the constant subsemigroup is "contains no variable".

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Semigroup;

/// Display names for variables `x_0, x_1, ...`.
const VAR_NAMES: [char; 6] = ['x', 'y', 'z', 'w', 'u', 'v'];

/// A letter of the alphabet or a variable.
///
/// Letters sort before variables, so derived ordering gives the symbol order
/// used by length-lexicographic enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Letter(u8),
    Var(u8),
}

impl Symbol {
    pub fn is_var(self) -> bool {
        matches!(self, Symbol::Var(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Letter(a) if a < 10 => write!(f, "{a}"),
            Symbol::Letter(a) => write!(f, "[{a}]"),
            Symbol::Var(v) if (v as usize) < VAR_NAMES.len() => write!(f, "{}", VAR_NAMES[v as usize]),
            Symbol::Var(v) => write!(f, "{{{v}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unexpected character {ch:?} at position {pos}")]
    BadChar { ch: char, pos: usize },
    #[error("letter {letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u8, alphabet: u8 },
    #[error("variable {var} outside the {count} declared variables")]
    VarOutOfRange { var: u8, count: u8 },
    #[error("variable {0} has no assigned letter")]
    UnassignedVariable(u8),
}

/// A nonempty word. Serialized as its display string.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word(symbols))
    }

    pub fn from_letters(letters: &[u8]) -> Result<Self, WordError> {
        Self::new(letters.iter().map(|&a| Symbol::Letter(a)).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn has_variable(&self) -> bool {
        self.0.iter().any(|s| s.is_var())
    }

    pub fn is_constant(&self) -> bool {
        !self.has_variable()
    }

    pub fn variable_positions(&self) -> usize {
        self.0.iter().filter(|s| s.is_var()).count()
    }

    /// Letter values, if the word is constant.
    pub fn letters(&self) -> Option<Vec<u8>> {
        self.0
            .iter()
            .map(|s| match *s {
                Symbol::Letter(a) => Some(a),
                Symbol::Var(_) => None,
            })
            .collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Replaces each variable `x_i` by `assignment[i]`.
    pub fn substitute(&self, assignment: &[u8]) -> Result<Word, WordError> {
        self.0
            .iter()
            .map(|&s| match s {
                Symbol::Letter(_) => Ok(s),
                Symbol::Var(v) => assignment
                    .get(v as usize)
                    .map(|&a| Symbol::Letter(a))
                    .ok_or(WordError::UnassignedVariable(v)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Checks every symbol against the declared alphabet and variable count.
    pub fn check_bounds(&self, alphabet_size: u8, variable_count: u8) -> Result<(), WordError> {
        for &s in &self.0 {
            match s {
                Symbol::Letter(a) if a >= alphabet_size => {
                    return Err(WordError::LetterOutOfRange {
                        letter: a,
                        alphabet: alphabet_size,
                    })
                }
                Symbol::Var(v) if v >= variable_count => {
                    return Err(WordError::VarOutOfRange {
                        var: v,
                        count: variable_count,
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Length first, then symbols (letters before variables).
    pub fn length_lex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Digits are letters, `x y z w u v` are variables 0..6; `[n]` and `{n}`
    /// spell larger letters and variables.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let mut chars = s.char_indices().peekable();
        while let Some((pos, ch)) = chars.next() {
            let sym = match ch {
                '0'..='9' => Symbol::Letter(ch as u8 - b'0'),
                '[' | '{' => {
                    let close = if ch == '[' { ']' } else { '}' };
                    let mut digits = String::new();
                    loop {
                        match chars.next() {
                            Some((_, c)) if c == close => break,
                            Some((_, c)) if c.is_ascii_digit() => digits.push(c),
                            Some((p, c)) => return Err(WordError::BadChar { ch: c, pos: p }),
                            None => return Err(WordError::BadChar { ch, pos }),
                        }
                    }
                    let v: u8 = digits.parse().map_err(|_| WordError::BadChar { ch, pos })?;
                    if ch == '[' {
                        Symbol::Letter(v)
                    } else {
                        Symbol::Var(v)
                    }
                }
                _ => match VAR_NAMES.iter().position(|&c| c == ch) {
                    Some(v) => Symbol::Var(v as u8),
                    None => return Err(WordError::BadChar { ch, pos }),
                },
            };
            out.push(sym);
        }
        Word::new(out)
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// Words over `alphabet_size` letters and `variable_count` variables under
/// concatenation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSemigroup {
    alphabet_size: u8,
    variable_count: u8,
}

impl WordSemigroup {
    /// # Panics
    /// If either size is zero.
    pub fn new(alphabet_size: u8, variable_count: u8) -> Self {
        assert!(alphabet_size >= 1, "alphabet must be nonempty");
        assert!(variable_count >= 1, "need at least one variable");
        WordSemigroup {
            alphabet_size,
            variable_count,
        }
    }

    /// The classical instance: one variable.
    pub fn classical(alphabet_size: u8) -> Self {
        Self::new(alphabet_size, 1)
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn variable_count(&self) -> u8 {
        self.variable_count
    }

    /// Parses a word and checks it against this semigroup's symbols.
    pub fn word(&self, s: &str) -> Result<Word, WordError> {
        let w: Word = s.parse()?;
        w.check_bounds(self.alphabet_size, self.variable_count)?;
        Ok(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.check_bounds(self.alphabet_size, self.variable_count).is_ok()
    }

    /// Membership in the nice subsemigroup of constant words.
    pub fn in_constant_subsemigroup(&self, w: &Word) -> bool {
        w.is_constant()
    }

    /// All symbols in enumeration order: letters, then variables.
    pub fn symbols(&self) -> Vec<Symbol> {
        (0..self.alphabet_size)
            .map(Symbol::Letter)
            .chain((0..self.variable_count).map(Symbol::Var))
            .collect()
    }

    /// All words of exactly `len` symbols, lexicographically.
    pub fn words_of_length(&self, len: usize) -> impl Iterator<Item = Word> {
        let symbols = self.symbols();
        let base = symbols.len();
        let mut digits = vec![0usize; len];
        let mut done = len == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let w = Word(digits.iter().map(|&d| symbols[d]).collect());
            done = !odometer_step(&mut digits, base);
            Some(w)
        })
    }

    /// Words of length `1..=max_len`, length-lexicographically.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (1..=max_len).flat_map(move |l| self.words_of_length(l))
    }

    /// Variable words (elements of `R = S \ T`) of length `1..=max_len`,
    /// length-lexicographically.
    pub fn variable_words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        self.words_up_to(max_len).filter(Word::has_variable)
    }

    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Word {
        let symbols = self.symbols();
        let len = rng.gen_range(1..=max_len.max(1));
        Word((0..len).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect())
    }
}

impl Semigroup for WordSemigroup {
    type Element = Word;

    fn product(&self, a: &Word, b: &Word) -> Word {
        a.concat(b)
    }
}

/// Advances a big-endian odometer; returns false on wraparound.
fn odometer_step(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
