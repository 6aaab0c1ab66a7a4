//! Concrete instances: classical lines over variable words, colorings, and
//! the van der Waerden and Gallai reductions.

mod coloring;
mod encode;
mod lines;

use thiserror::Error;

pub use coloring::{Coloring, ColoringError};
pub use encode::{
    digit_sum, gallai_encode, vdw_encode, GallaiEncoding, HomotheticCopy, Progression, VdwEncoding,
};
pub use lines::{enumerate_lines, index_to_word, line_count, point_index, CombinatorialLine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("alphabet needs at least 2 letters, got {0}")]
    AlphabetTooSmall(u8),
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("letter {letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u8, alphabet: u8 },
    #[error("{0} has no variable, so it is a point rather than a line")]
    NoVariable(String),
    #[error("{0} uses a variable other than x")]
    NotSingleVariable(String),
    #[error("alphabet mismatch: expected {expected} letters, found {found}")]
    AlphabetMismatch { expected: u8, found: u8 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("pattern needs between 2 and 255 points, got {0}")]
    PatternSize(usize),
    #[error("pattern point has {found} coordinates, expected {expected}")]
    PatternDimension { expected: usize, found: usize },
    #[error("pattern point {0} repeats an earlier point")]
    RepeatedPatternPoint(usize),
}
