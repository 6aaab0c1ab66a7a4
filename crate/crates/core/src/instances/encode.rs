//! Digit-sum reductions: lines in `[k]^N` to arithmetic progressions, and
//! lines over a pattern alphabet `P ⊂ Z^d` to homothetic copies `a + m·P`.

use serde::{Deserialize, Serialize};

use super::{CombinatorialLine, InstanceError};
use crate::semigroup::{Symbol, Word};

/// `start, start + difference, …` with `len` terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub start: u64,
    pub difference: u64,
    pub len: usize,
}

impl Progression {
    pub fn terms(&self) -> Vec<u64> {
        (0..self.len as u64).map(|i| self.start + i * self.difference).collect()
    }
}

/// Sum of the letters of a constant word.
pub fn digit_sum(word: &Word) -> Option<u64> {
    word.letters().map(|ls| ls.iter().map(|&a| a as u64).sum())
}

/// The map `[k]^N → {0, …, N(k−1)}`, `w ↦ Σ w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VdwEncoding {
    k: u8,
    len: usize,
}

pub fn vdw_encode(k: u8, len: usize) -> Result<VdwEncoding, InstanceError> {
    if k < 2 {
        return Err(InstanceError::AlphabetTooSmall(k));
    }
    if len == 0 {
        return Err(InstanceError::ZeroLength);
    }
    Ok(VdwEncoding { k, len })
}

impl VdwEncoding {
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest value in the image.
    pub fn max_value(&self) -> u64 {
        self.len as u64 * (self.k as u64 - 1)
    }

    /// `None` for variable words, words longer than `N`, or letters `>= k`.
    pub fn image(&self, word: &Word) -> Option<u64> {
        if word.len() > self.len || word.symbols().iter().any(|s| matches!(s, Symbol::Letter(a) if *a >= self.k)) {
            return None;
        }
        digit_sum(word)
    }

    /// The points of a line map to an AP whose difference is the number of
    /// moving coordinates.
    pub fn line_image(&self, line: &CombinatorialLine) -> Result<Progression, InstanceError> {
        if line.alphabet() != self.k {
            return Err(InstanceError::AlphabetMismatch {
                expected: self.k,
                found: line.alphabet(),
            });
        }
        let fixed: u64 = line
            .template()
            .symbols()
            .iter()
            .map(|s| match s {
                Symbol::Letter(a) => *a as u64,
                Symbol::Var(_) => 0,
            })
            .sum();
        Ok(Progression {
            start: fixed,
            difference: line.moving_coordinates() as u64,
            len: self.k as usize,
        })
    }
}

/// A pattern alphabet `P ⊂ Z^d`: letter `i` stands for `P[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallaiEncoding {
    dimension: usize,
    pattern: Vec<Vec<i64>>,
    len: usize,
}

/// `a + m·P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotheticCopy {
    pub offset: Vec<i64>,
    pub scale: u64,
    pub points: Vec<Vec<i64>>,
}

pub fn gallai_encode(dimension: usize, pattern: Vec<Vec<i64>>, len: usize) -> Result<GallaiEncoding, InstanceError> {
    if dimension == 0 {
        return Err(InstanceError::ZeroDimension);
    }
    if pattern.len() < 2 || pattern.len() > u8::MAX as usize {
        return Err(InstanceError::PatternSize(pattern.len()));
    }
    if let Some(p) = pattern.iter().find(|p| p.len() != dimension) {
        return Err(InstanceError::PatternDimension {
            expected: dimension,
            found: p.len(),
        });
    }
    for (i, p) in pattern.iter().enumerate() {
        if pattern[..i].contains(p) {
            return Err(InstanceError::RepeatedPatternPoint(i));
        }
    }
    if len == 0 {
        return Err(InstanceError::ZeroLength);
    }
    Ok(GallaiEncoding {
        dimension,
        pattern,
        len,
    })
}

impl GallaiEncoding {
    pub fn alphabet(&self) -> u8 {
        self.pattern.len() as u8
    }

    pub fn pattern(&self) -> &[Vec<i64>] {
        &self.pattern
    }

    /// Coordinatewise sum of the pattern points spelled by a constant word.
    pub fn image(&self, word: &Word) -> Option<Vec<i64>> {
        if word.len() > self.len {
            return None;
        }
        let mut sum = vec![0i64; self.dimension];
        for a in word.letters()? {
            let p = self.pattern.get(a as usize)?;
            for (s, x) in sum.iter_mut().zip(p) {
                *s += x;
            }
        }
        Some(sum)
    }

    pub fn line_image(&self, line: &CombinatorialLine) -> Result<HomotheticCopy, InstanceError> {
        if line.alphabet() != self.alphabet() {
            return Err(InstanceError::AlphabetMismatch {
                expected: self.alphabet(),
                found: line.alphabet(),
            });
        }
        let mut offset = vec![0i64; self.dimension];
        for s in line.template().symbols() {
            if let Symbol::Letter(a) = s {
                for (o, x) in offset.iter_mut().zip(&self.pattern[*a as usize]) {
                    *o += x;
                }
            }
        }
        let scale = line.moving_coordinates() as u64;
        let points = self
            .pattern
            .iter()
            .map(|p| offset.iter().zip(p).map(|(o, x)| o + scale as i64 * x).collect())
            .collect();
        Ok(HomotheticCopy { offset, scale, points })
    }
}
