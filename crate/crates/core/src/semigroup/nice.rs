use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FiniteSemigroup, Semigroup, SemigroupError, Word, WordSemigroup};
use crate::subset::SubsetQuery;
use crate::Verdict;

/// Why a subset fails to be a nice subsemigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NicenessViolation {
    /// Both factors lie in `T` but the product does not.
    NotClosed { a: usize, b: usize, product: usize },
    /// A factor lies in `R = S \ T` but the product lands in `T`.
    NotIdeal { a: usize, b: usize, product: usize },
}

/// Decides whether `members` is a nice subsemigroup of `sg`.
///
/// Uses the biconditional form: `a•b ∈ T` iff `a ∈ T` and `b ∈ T`, which
/// packs "T is closed" and "S \ T is a two-sided ideal" into one scan. The
/// first failing pair in lexicographic order is reported.
pub fn is_nice_subsemigroup(
    sg: &FiniteSemigroup,
    members: &SubsetQuery,
) -> Result<Verdict<NicenessViolation>, SemigroupError> {
    if members.carrier_len() != sg.order() {
        return Err(SemigroupError::CarrierMismatch {
            expected: sg.order(),
            found: members.carrier_len(),
        });
    }
    if members.is_empty() {
        return Err(SemigroupError::EmptySubset);
    }
    for a in sg.elements() {
        for b in sg.elements() {
            let product = sg.mul(a, b);
            let both = members.contains(a) && members.contains(b);
            match (both, members.contains(product)) {
                (true, false) => return Ok(Verdict::Fail(NicenessViolation::NotClosed { a, b, product })),
                (false, true) => return Ok(Verdict::Fail(NicenessViolation::NotIdeal { a, b, product })),
                _ => {}
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Samples `samples` random pairs of words of length `<= max_len` and checks
/// that a concatenation is constant iff both factors are.
///
/// Niceness of the constant words holds by construction; this is a
/// regression check on the word representation.
pub fn check_word_niceness(ws: &WordSemigroup, samples: usize, max_len: usize, seed: u64) -> Verdict<(Word, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = ws.random_word(&mut rng, max_len);
        let b = ws.random_word(&mut rng, max_len);
        let p = ws.product(&a, &b);
        if ws.in_constant_subsemigroup(&p) != (ws.in_constant_subsemigroup(&a) && ws.in_constant_subsemigroup(&b)) {
            return Verdict::Fail((a, b));
        }
    }
    Verdict::Pass
}

/// Samples random triples and checks `(ab)c = a(bc)`.
pub fn check_word_associativity(
    ws: &WordSemigroup,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Verdict<(Word, Word, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = ws.random_word(&mut rng, max_len);
        let b = ws.random_word(&mut rng, max_len);
        let c = ws.random_word(&mut rng, max_len);
        if ws.product(&ws.product(&a, &b), &c) != ws.product(&a, &ws.product(&b, &c)) {
            return Verdict::Fail((a, b, c));
        }
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::flag_semigroup;

    /// Exhaustive oracle written from the two-clause definition.
    fn nice_by_definition(sg: &FiniteSemigroup, t: &SubsetQuery) -> bool {
        let closed = t.iter().all(|a| t.iter().all(|b| t.contains(sg.mul(a, b))));
        let ideal = sg
            .elements()
            .filter(|r| !t.contains(*r))
            .all(|r| sg.elements().all(|s| !t.contains(sg.mul(s, r)) && !t.contains(sg.mul(r, s))));
        closed && ideal
    }

    #[test]
    fn flag_semigroup_constant_half_is_nice() {
        for m in 0..4 {
            let (sg, t) = flag_semigroup(m);
            assert!(nice_by_definition(&sg, &t));
            assert_eq!(is_nice_subsemigroup(&sg, &t).unwrap(), Verdict::Pass);
        }
    }

    #[test]
    fn zero_in_two_element_max_is_nice() {
        let sg = FiniteSemigroup::from_fn(2, |a, b| a.max(b)).unwrap();
        let t = SubsetQuery::from_indices(2, [0]);
        assert!(nice_by_definition(&sg, &t));
        assert!(is_nice_subsemigroup(&sg, &t).unwrap().passed());
    }

    #[test]
    fn top_of_max_chain_is_not_nice() {
        let sg = FiniteSemigroup::from_fn(2, |a, b| a.max(b)).unwrap();
        let t = SubsetQuery::from_indices(2, [1]);
        assert!(!nice_by_definition(&sg, &t));
        assert_eq!(
            is_nice_subsemigroup(&sg, &t).unwrap(),
            Verdict::Fail(NicenessViolation::NotIdeal { a: 0, b: 1, product: 1 })
        );
    }

    #[test]
    fn empty_subset_is_an_error() {
        let sg = FiniteSemigroup::from_fn(2, |a, b| a.max(b)).unwrap();
        assert_eq!(
            is_nice_subsemigroup(&sg, &SubsetQuery::empty(2)),
            Err(SemigroupError::EmptySubset)
        );
    }

    #[test]
    fn fast_path_matches_definition_on_all_subsets() {
        let sgs = [
            FiniteSemigroup::from_fn(4, |a, b| a.max(b)).unwrap(),
            FiniteSemigroup::from_fn(4, |a, b| (a + b) % 4).unwrap(),
            FiniteSemigroup::from_fn(4, |a, _| a).unwrap(),
            flag_semigroup(1).0,
        ];
        for sg in &sgs {
            for t in SubsetQuery::all_subsets(sg.order()).skip(1) {
                assert_eq!(
                    is_nice_subsemigroup(sg, &t).unwrap().passed(),
                    nice_by_definition(sg, &t),
                    "{sg:?} {t:?}"
                );
            }
        }
    }

    #[test]
    fn constant_words_are_nice_on_samples() {
        let ws = WordSemigroup::new(3, 2);
        assert!(check_word_niceness(&ws, 10_000, 12, 7).passed());
        assert!(check_word_associativity(&ws, 10_000, 12, 7).passed());
    }
}
