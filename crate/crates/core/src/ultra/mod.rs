//! Ultrafilters on finite carriers, evaluated through their defining
//! membership formulas.
//!
//! On a finite carrier every ultrafilter is principal, so the objects here
//! are principal ultrafilters combined by images, products and tensor
//! products. The identities checked in [`prop`] and [`lemma`] are quantified
//! over all subsets, so exhaustive evaluation on small carriers is a genuine
//! check of the formulas rather than of the shortcut `point(U)•point(V)`.

pub mod corpus;
mod filter;
pub mod lemma;
pub mod prop;

use thiserror::Error;

pub use corpus::{
    endomorphisms, homomorphisms, nice_subsemigroups, retractions_onto, transformation_corpus, CorpusEntry,
};
pub use filter::{
    image, member, tensor_power, translate_preimage, uf_power, uf_product, uf_tensor, PrincipalUltrafilter,
    Ultrafilter,
};
pub use lemma::{
    build_agreement_set, build_agreement_set_window, check_fip, check_lemma2_equivalence, find_agreement_ultrafilter,
    AgreementPoints, Lemma2Report,
};
pub use prop::{check_prop_tensor, check_prop_tensor_for_retraction, psi_map, psi_words, PsiMap};

/// Largest carrier on which subset-quantified identities are checked exhaustively.
pub const IDENTITY_CARRIER_LIMIT: usize = 12;
/// Largest carrier on which image laws are checked exhaustively.
pub const IMAGE_CARRIER_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UltraError {
    #[error("carrier mismatch: expected size {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("map value {value} outside target carrier 0..{target}")]
    MapOutOfRange { value: usize, target: usize },
    #[error("carrier of size {size} exceeds the exhaustive-check limit {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("k = {0} is outside the supported range 1..=3")]
    UnsupportedK(usize),
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("membership formulas do not define an ultrafilter")]
    NotAnUltrafilter,
    #[error("no point qualifies")]
    NotFound,
    #[error("subset is not contained in T")]
    NotInSubsemigroup,
}
