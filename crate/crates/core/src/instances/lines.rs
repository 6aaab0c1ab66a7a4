//! Combinatorial lines in `[n]^N` and the base-`n` indexing of constant words.

use crate::semigroup::{Symbol, Word};

use super::InstanceError;

/// A line template: a word over `{0..n-1} ∪ {x}` with at least one `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialLine {
    template: Word,
    alphabet: u8,
}

impl CombinatorialLine {
    pub fn new(template: Word, alphabet: u8) -> Result<Self, InstanceError> {
        if alphabet < 2 {
            return Err(InstanceError::AlphabetTooSmall(alphabet));
        }
        for &s in template.symbols() {
            match s {
                Symbol::Letter(a) if a >= alphabet => {
                    return Err(InstanceError::LetterOutOfRange { letter: a, alphabet })
                }
                Symbol::Var(v) if v != 0 => return Err(InstanceError::NotSingleVariable(template.to_string())),
                _ => {}
            }
        }
        if !template.has_variable() {
            return Err(InstanceError::NoVariable(template.to_string()));
        }
        Ok(CombinatorialLine { template, alphabet })
    }

    pub fn template(&self) -> &Word {
        &self.template
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.template.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of positions holding the variable.
    pub fn moving_coordinates(&self) -> usize {
        self.template.variable_positions()
    }

    /// The `n` points, ordered by the substituted letter.
    pub fn points(&self) -> Vec<Word> {
        (0..self.alphabet)
            .map(|a| self.template.substitute(&[a]).expect("single variable is assigned"))
            .collect()
    }

    pub fn point_indices(&self) -> Vec<usize> {
        let n = self.alphabet as usize;
        (0..self.alphabet)
            .map(|a| {
                self.template.symbols().iter().fold(0, |acc, &s| {
                    acc * n
                        + match s {
                            Symbol::Letter(b) => b as usize,
                            Symbol::Var(_) => a as usize,
                        }
                })
            })
            .collect()
    }
}

/// Every line template of length `len` over `n` letters, exactly once, in
/// lexicographic order with letters before the variable.
///
/// There are `(n+1)^len − n^len` of them.
pub fn enumerate_lines(n: u8, len: usize) -> Result<impl Iterator<Item = CombinatorialLine>, InstanceError> {
    if n < 2 {
        return Err(InstanceError::AlphabetTooSmall(n));
    }
    if len == 0 {
        return Err(InstanceError::ZeroLength);
    }
    let base = n as usize + 1;
    let mut digits = vec![0usize; len];
    let mut done = false;
    Ok(std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let has_var = digits.contains(&(base - 1));
        let symbols: Vec<Symbol> = digits
            .iter()
            .map(|&d| if d == base - 1 { Symbol::Var(0) } else { Symbol::Letter(d as u8) })
            .collect();
        done = !advance(&mut digits, base);
        if has_var {
            let template = Word::new(symbols).expect("len >= 1");
            return Some(CombinatorialLine { template, alphabet: n });
        }
    }))
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `(n+1)^len − n^len`.
pub fn line_count(n: u8, len: usize) -> u64 {
    (n as u64 + 1).pow(len as u32) - (n as u64).pow(len as u32)
}

/// Index of a constant word in `[n]^len`, first letter most significant.
pub fn point_index(word: &Word, n: u8) -> Option<usize> {
    let letters = word.letters()?;
    if letters.iter().any(|&a| a >= n) {
        return None;
    }
    Some(letters.iter().fold(0, |acc, &a| acc * n as usize + a as usize))
}

/// Inverse of [`point_index`].
pub fn index_to_word(mut index: usize, n: u8, len: usize) -> Word {
    let mut letters = vec![0u8; len];
    for slot in letters.iter_mut().rev() {
        *slot = (index % n as usize) as u8;
        index /= n as usize;
    }
    Word::from_letters(&letters).expect("len >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn templates(n: u8, len: usize) -> Vec<String> {
        enumerate_lines(n, len).unwrap().map(|l| l.template().to_string()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(templates(2, 1), ["x"]);
        let mut two = templates(2, 2);
        assert_eq!(two, ["0x", "1x", "x0", "x1", "xx"]);
        two.sort();
        two.dedup();
        assert_eq!(two.len(), 5);
        assert_eq!(enumerate_lines(3, 4).unwrap().count(), 175);
    }

    #[test]
    fn counting_identity() {
        for n in 2..=4u8 {
            for len in 1..=6 {
                assert_eq!(enumerate_lines(n, len).unwrap().count() as u64, line_count(n, len), "n={n} N={len}");
            }
        }
    }

    #[test]
    fn points_are_substitutions_and_distinct() {
        for line in enumerate_lines(3, 3).unwrap() {
            let pts = line.points();
            assert_eq!(pts.len(), 3);
            let idx = line.point_indices();
            for (p, &i) in pts.iter().zip(&idx) {
                assert_eq!(point_index(p, 3), Some(i));
                assert_eq!(&index_to_word(i, 3, 3), p);
            }
            let mut sorted = idx.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), 3);
        }
    }

    #[test]
    fn substitution_examples() {
        let w: Word = "0x1".parse().unwrap();
        assert_eq!(w.substitute(&[2]).unwrap().to_string(), "021");
        let w: Word = "xx".parse().unwrap();
        assert_eq!(w.substitute(&[0]).unwrap().to_string(), "00");
        let w: Word = "12".parse().unwrap();
        assert_eq!(w.substitute(&[0]).unwrap(), w);
    }

    #[test]
    fn rejects_degenerate_templates() {
        let w: Word = "01".parse().unwrap();
        assert!(matches!(CombinatorialLine::new(w, 2), Err(InstanceError::NoVariable(_))));
        let w: Word = "xy".parse().unwrap();
        assert!(matches!(CombinatorialLine::new(w, 2), Err(InstanceError::NotSingleVariable(_))));
        let w: Word = "2x".parse().unwrap();
        assert!(CombinatorialLine::new(w, 2).is_err());
        assert!(enumerate_lines(1, 2).is_err());
    }
}
