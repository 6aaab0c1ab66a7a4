use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{is_nice_subsemigroup, FiniteSemigroup, NicenessViolation, Semigroup, SemigroupError, Word, WordError, WordSemigroup};
use crate::subset::SubsetQuery;
use crate::Verdict;

/// A semigroup `S` with a nice subsemigroup `T` and a finite family of
/// retractions `S → T`.
///
/// This is the interface witness search runs against: it needs only to
/// apply each retraction and to test membership in `T`.
pub trait RetractionSystem: Sync {
    type Element: Clone + Eq + fmt::Debug + Send + Sync;

    fn family_size(&self) -> usize;

    fn retract(&self, sigma: usize, v: &Self::Element) -> Self::Element;

    fn in_subsemigroup(&self, v: &Self::Element) -> bool;

    /// `{σ(v) : σ ∈ Σ}` in family order (duplicates kept).
    fn images(&self, v: &Self::Element) -> Vec<Self::Element> {
        (0..self.family_size()).map(|i| self.retract(i, v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RetractionViolation {
    WrongLength { expected: usize, found: usize },
    OutOfCarrier { element: usize, image: usize },
    RangeOutsideSubsemigroup { element: usize, image: usize },
    NotIdentityOnSubsemigroup { element: usize, image: usize },
    NotHomomorphism { a: usize, b: usize, image_of_product: usize, product_of_images: usize },
}

/// Checks that `map` is a retraction of `sg` onto `members`.
///
/// Range is checked first, then identity on `T`, then the homomorphism law,
/// each in index order.
pub fn validate_retraction(sg: &FiniteSemigroup, members: &SubsetQuery, map: &[usize]) -> Verdict<RetractionViolation> {
    let n = sg.order();
    if map.len() != n || members.carrier_len() != n {
        return Verdict::Fail(RetractionViolation::WrongLength {
            expected: n,
            found: if map.len() != n { map.len() } else { members.carrier_len() },
        });
    }
    for (element, &image) in map.iter().enumerate() {
        if image >= n {
            return Verdict::Fail(RetractionViolation::OutOfCarrier { element, image });
        }
        if !members.contains(image) {
            return Verdict::Fail(RetractionViolation::RangeOutsideSubsemigroup { element, image });
        }
    }
    for element in members.iter() {
        if map[element] != element {
            return Verdict::Fail(RetractionViolation::NotIdentityOnSubsemigroup {
                element,
                image: map[element],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let image_of_product = map[sg.mul(a, b)];
            let product_of_images = sg.mul(map[a], map[b]);
            if image_of_product != product_of_images {
                return Verdict::Fail(RetractionViolation::NotHomomorphism {
                    a,
                    b,
                    image_of_product,
                    product_of_images,
                });
            }
        }
    }
    Verdict::Pass
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstitutionViolation {
    Word(WordError),
    NotHomomorphism { a: Word, b: Word },
    NotIdentityOnConstants { word: Word },
    RangeNotConstant { word: Word },
}

/// Checks a substitution `x_i ↦ assignment[i]` on sampled words.
///
/// Substitutions are retractions by construction (they act letterwise and
/// fix letters); the sampled check guards the implementation.
pub fn validate_substitution(
    ws: &WordSemigroup,
    assignment: &[u8],
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Verdict<SubstitutionViolation> {
    if assignment.len() < ws.variable_count() as usize {
        return Verdict::Fail(SubstitutionViolation::Word(WordError::UnassignedVariable(
            assignment.len() as u8,
        )));
    }
    if let Some(&letter) = assignment.iter().find(|&&a| a >= ws.alphabet_size()) {
        return Verdict::Fail(SubstitutionViolation::Word(WordError::LetterOutOfRange {
            letter,
            alphabet: ws.alphabet_size(),
        }));
    }
    let sub = |w: &Word| w.substitute(assignment).expect("assignment covers all variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = ws.random_word(&mut rng, max_len);
        let b = ws.random_word(&mut rng, max_len);
        let sa = sub(&a);
        if sa.has_variable() {
            return Verdict::Fail(SubstitutionViolation::RangeNotConstant { word: a });
        }
        if a.is_constant() && sa != a {
            return Verdict::Fail(SubstitutionViolation::NotIdentityOnConstants { word: a });
        }
        if sub(&ws.product(&a, &b)) != ws.product(&sa, &sub(&b)) {
            return Verdict::Fail(SubstitutionViolation::NotHomomorphism { a, b });
        }
    }
    Verdict::Pass
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("subset is not a nice subsemigroup: {0:?}")]
    NotNice(NicenessViolation),
    #[error("retraction {index} is invalid: {violation:?}")]
    Retraction { index: usize, violation: RetractionViolation },
    #[error("substitution {index} is invalid: {violation:?}")]
    Substitution { index: usize, violation: SubstitutionViolation },
    #[error("retractions {first} and {second} are the same map")]
    Duplicate { first: usize, second: usize },
    #[error("a retraction family needs at least one member")]
    EmptyFamily,
}

fn first_duplicate<T: PartialEq>(items: &[T]) -> Option<(usize, usize)> {
    for j in 0..items.len() {
        for i in 0..j {
            if items[i] == items[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// A validated retraction family on a finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFamily {
    semigroup: FiniteSemigroup,
    members: SubsetQuery,
    maps: Vec<Vec<usize>>,
}

impl FiniteFamily {
    pub fn new(semigroup: FiniteSemigroup, members: SubsetQuery, maps: Vec<Vec<usize>>) -> Result<Self, FamilyError> {
        if let Verdict::Fail(v) = is_nice_subsemigroup(&semigroup, &members)? {
            return Err(FamilyError::NotNice(v));
        }
        if maps.is_empty() {
            return Err(FamilyError::EmptyFamily);
        }
        for (index, map) in maps.iter().enumerate() {
            if let Verdict::Fail(violation) = validate_retraction(&semigroup, &members, map) {
                return Err(FamilyError::Retraction { index, violation });
            }
        }
        if let Some((first, second)) = first_duplicate(&maps) {
            return Err(FamilyError::Duplicate { first, second });
        }
        Ok(FiniteFamily {
            semigroup,
            members,
            maps,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    /// `T` as a subset of `S`.
    pub fn members(&self) -> &SubsetQuery {
        &self.members
    }

    /// `R = S \ T`.
    pub fn ideal(&self) -> SubsetQuery {
        self.members.complement()
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn map(&self, sigma: usize) -> &[usize] {
        &self.maps[sigma]
    }
}

impl RetractionSystem for FiniteFamily {
    type Element = usize;

    fn family_size(&self) -> usize {
        self.maps.len()
    }

    fn retract(&self, sigma: usize, v: &usize) -> usize {
        self.maps[sigma][*v]
    }

    fn in_subsemigroup(&self, v: &usize) -> bool {
        self.members.contains(*v)
    }
}

/// Sample count and word length used when validating substitutions.
const SUBSTITUTION_SAMPLES: usize = 10_000;
const SUBSTITUTION_MAX_LEN: usize = 12;

/// A family of substitution retractions on a word semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionFamily {
    semigroup: WordSemigroup,
    assignments: Vec<Vec<u8>>,
}

impl SubstitutionFamily {
    pub fn new(semigroup: WordSemigroup, assignments: Vec<Vec<u8>>) -> Result<Self, FamilyError> {
        if assignments.is_empty() {
            return Err(FamilyError::EmptyFamily);
        }
        for (index, a) in assignments.iter().enumerate() {
            let verdict = validate_substitution(&semigroup, a, SUBSTITUTION_SAMPLES, SUBSTITUTION_MAX_LEN, index as u64);
            if let Verdict::Fail(violation) = verdict {
                return Err(FamilyError::Substitution { index, violation });
            }
        }
        let trimmed: Vec<&[u8]> = assignments
            .iter()
            .map(|a| &a[..semigroup.variable_count() as usize])
            .collect();
        if let Some((first, second)) = first_duplicate(&trimmed) {
            return Err(FamilyError::Duplicate { first, second });
        }
        Ok(SubstitutionFamily {
            semigroup,
            assignments,
        })
    }

    /// `σ_a` for every letter `a`: all variables become `a`.
    pub fn diagonal(semigroup: WordSemigroup) -> Self {
        let vars = semigroup.variable_count() as usize;
        let assignments = (0..semigroup.alphabet_size()).map(|a| vec![a; vars]).collect();
        SubstitutionFamily {
            semigroup,
            assignments,
        }
    }

    pub fn semigroup(&self) -> &WordSemigroup {
        &self.semigroup
    }

    pub fn assignments(&self) -> &[Vec<u8>] {
        &self.assignments
    }
}

impl RetractionSystem for SubstitutionFamily {
    type Element = Word;

    fn family_size(&self) -> usize {
        self.assignments.len()
    }

    fn retract(&self, sigma: usize, v: &Word) -> Word {
        v.substitute(&self.assignments[sigma])
            .expect("assignments cover every declared variable")
    }

    fn in_subsemigroup(&self, v: &Word) -> bool {
        v.is_constant()
    }
}
