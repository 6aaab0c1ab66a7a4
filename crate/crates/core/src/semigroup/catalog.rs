//! Small named semigroups used throughout the tests and the CLI.

use super::{FiniteFamily, FiniteSemigroup};
use crate::subset::SubsetQuery;

pub fn trivial() -> FiniteSemigroup {
    FiniteSemigroup::from_rows(&[vec![0]]).expect("one-element table is a semigroup")
}

/// `({0..=m}, max)`.
pub fn max_chain(m: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(m + 1, |a, b| a.max(b)).expect("max is associative")
}

/// Index of `(a, flag)` in [`flag_semigroup`]`(m)`.
pub fn flag_index(m: usize, a: usize, flag: bool) -> usize {
    a + (m + 1) * usize::from(flag)
}

/// `({0..=m}, max) × ({0,1}, or)` with `T = {(a, 0)}`.
///
/// Elements `(a, 0)` take indices `0..=m` and `(a, 1)` take `m+1..2m+2`, so
/// `T` is an initial segment. `R = {(a, 1)}` absorbs because the flag is an
/// or.
pub fn flag_semigroup(m: usize) -> (FiniteSemigroup, SubsetQuery) {
    let k = m + 1;
    let sg = FiniteSemigroup::from_fn(2 * k, |x, y| {
        let (a, i) = (x % k, x / k);
        let (b, j) = (y % k, y / k);
        a.max(b) + k * (i | j)
    })
    .expect("componentwise max/or is associative");
    let labels = (0..2 * k).map(|x| format!("({},{})", x % k, x / k)).collect();
    let sg = sg.with_labels(labels).expect("one label per element");
    (sg, SubsetQuery::from_indices(2 * k, 0..k))
}

/// `σ_g(a, 1) = (max(a, g), 0)`, identity on `T`.
pub fn flag_retraction(m: usize, g: usize) -> Vec<usize> {
    let k = m + 1;
    (0..2 * k)
        .map(|x| if x < k { x } else { (x - k).max(g) })
        .collect()
}

/// The flag semigroup with `Σ = {σ_0, …, σ_m}`.
pub fn flag_family(m: usize) -> FiniteFamily {
    let (sg, t) = flag_semigroup(m);
    let maps = (0..=m).map(|g| flag_retraction(m, g)).collect();
    FiniteFamily::new(sg, t, maps).expect("flag retractions are valid and distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_products() {
        let (sg, _) = flag_semigroup(2);
        // (1,0)•(2,1) = (2,1)
        assert_eq!(sg.mul(flag_index(2, 1, false), flag_index(2, 2, true)), flag_index(2, 2, true));
        assert_eq!(sg.label(flag_index(2, 2, true)), "(2,1)");
        assert_eq!(sg.resolve("(0,1)"), Some(3));
    }

    #[test]
    fn flag_retraction_values() {
        // σ_1(2,1) = (2,0); σ_2(0,1) = (2,0)
        assert_eq!(flag_retraction(2, 1)[flag_index(2, 2, true)], flag_index(2, 2, false));
        assert_eq!(flag_retraction(2, 2)[flag_index(2, 0, true)], flag_index(2, 2, false));
    }
}
