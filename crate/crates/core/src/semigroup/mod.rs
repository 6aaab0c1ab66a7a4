//! Semigroups, nice subsemigroups and retraction families.

mod catalog;
mod finite;
mod format;
mod nice;
mod retraction;
mod word;

use thiserror::Error;

pub use catalog::{flag_family, flag_index, flag_retraction, flag_semigroup, max_chain, trivial};
pub use finite::FiniteSemigroup;
pub use format::{parse_semigroup_file, render_semigroup_file, ParseError, SemigroupFile};
pub use nice::{check_word_associativity, check_word_niceness, is_nice_subsemigroup, NicenessViolation};
pub use retraction::{
    validate_retraction, validate_substitution, FamilyError, FiniteFamily, RetractionSystem, RetractionViolation,
    SubstitutionFamily, SubstitutionViolation,
};
pub use word::{Symbol, Word, WordError, WordSemigroup};

/// An associative binary operation.
pub trait Semigroup {
    type Element: Clone + Eq + std::fmt::Debug;

    fn product(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
}

/// `a • b` in `s`.
pub fn product<S: Semigroup>(s: &S, a: &S::Element, b: &S::Element) -> S::Element {
    s.product(a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("table has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("closure violated: {i} • {j} = {value} is outside 0..{order}")]
    ClosureViolation { i: usize, j: usize, value: usize, order: usize },
    #[error("associativity fails at ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("subset lives on a carrier of size {found}, semigroup has order {expected}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("the subset is empty")]
    EmptySubset,
    #[error("subset is not closed: {a} • {b} = {product}")]
    NotClosed { a: usize, b: usize, product: usize },
}
