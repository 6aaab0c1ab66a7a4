//! Agreement sets `X_A`, the finite intersection property, and the
//! equivalence between monochromatic witnesses and agreement ultrafilters.

use super::filter::{image, Ultrafilter};
use super::{UltraError, IDENTITY_CARRIER_LIMIT};
use crate::semigroup::{FiniteFamily, RetractionSystem, SubstitutionFamily, Word};
use crate::subset::SubsetQuery;
use crate::Verdict;

/// `X_A = {v ∈ S : {σ(v)} ⊆ A or {σ(v)} ⊆ T \ A}` for `A ⊆ T`.
///
/// `a` is given as a subset of `S` and must lie inside `T`.
pub fn build_agreement_set(family: &FiniteFamily, a: &SubsetQuery) -> Result<SubsetQuery, UltraError> {
    let n = family.semigroup().order();
    if a.carrier_len() != n {
        return Err(UltraError::CarrierMismatch {
            expected: n,
            found: a.carrier_len(),
        });
    }
    if !a.is_subset_of(family.members()) {
        return Err(UltraError::NotInSubsemigroup);
    }
    Ok(SubsetQuery::from_predicate(n, |v| {
        let images = family.images(&v);
        images.iter().all(|&x| a.contains(x)) || images.iter().all(|&x| !a.contains(x))
    }))
}

/// `X_A` restricted to a finite window of words, with `A` given as a
/// predicate on constant words. Bit `i` refers to `window[i]`.
pub fn build_agreement_set_window(
    family: &SubstitutionFamily,
    window: &[Word],
    in_a: impl Fn(&Word) -> bool,
) -> SubsetQuery {
    SubsetQuery::from_predicate(window.len(), |i| {
        let flags: Vec<bool> = family.images(&window[i]).iter().map(&in_a).collect();
        flags.iter().all(|&f| f) || flags.iter().all(|&f| !f)
    })
}

/// Subfamily size up to which the failure witness is a smallest failing subfamily.
const FIP_EXHAUSTIVE_LIMIT: usize = 20;

/// Finite intersection property of a finite family.
///
/// Every subfamily's intersection contains the total intersection, so the
/// family has FIP iff the total intersection is nonempty. On failure the
/// witness lists the indices of a failing subfamily: a smallest one when the
/// family has at most 20 members, otherwise an inclusion-minimal one.
pub fn check_fip(sets: &[SubsetQuery]) -> Result<Verdict<Vec<usize>>, UltraError> {
    let Some(first) = sets.first() else {
        return Ok(Verdict::Pass);
    };
    let n = first.carrier_len();
    if let Some(bad) = sets.iter().find(|s| s.carrier_len() != n) {
        return Err(UltraError::CarrierMismatch {
            expected: n,
            found: bad.carrier_len(),
        });
    }
    let intersect = |idx: &[usize]| {
        let mut acc = SubsetQuery::full(n);
        for &i in idx {
            acc.intersect_with(&sets[i]);
        }
        acc
    };
    let all: Vec<usize> = (0..sets.len()).collect();
    if !intersect(&all).is_empty() {
        return Ok(Verdict::Pass);
    }
    if sets.len() <= FIP_EXHAUSTIVE_LIMIT {
        for size in 1..=sets.len() {
            if let Some(sub) = combinations(sets.len(), size).find(|c| intersect(c).is_empty()) {
                return Ok(Verdict::Fail(sub));
            }
        }
        unreachable!("the full family fails");
    }
    let mut keep = all;
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if intersect(&trial).is_empty() {
            keep = trial;
        } else {
            i += 1;
        }
    }
    Ok(Verdict::Fail(keep))
}

/// `size`-element index combinations of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Points `u` whose principal ultrafilter has the same image under every
/// retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementPoints {
    carrier: usize,
    /// All qualifying points, ascending. Every point of `T` qualifies.
    pub points: Vec<usize>,
    /// The qualifying points of `R = S \ T`, ascending.
    pub ideal_points: Vec<usize>,
}

impl AgreementPoints {
    pub fn least(&self) -> Option<usize> {
        self.points.first().copied()
    }

    pub fn least_in_ideal(&self) -> Option<usize> {
        self.ideal_points.first().copied()
    }

    pub fn ultrafilter(&self) -> Option<Ultrafilter> {
        self.least().map(|p| Ultrafilter::principal(self.carrier, p))
    }

    pub fn ideal_ultrafilter(&self) -> Option<Ultrafilter> {
        self.least_in_ideal().map(|p| Ultrafilter::principal(self.carrier, p))
    }
}

/// Finds every `u` with `σ̃(U) = τ̃(U)` for all `σ, τ ∈ Σ`, `U` principal at `u`.
///
/// Images are built with the image formula and compared by collapsing each
/// to its point; on carriers up to the identity-check limit the images are
/// additionally compared on every subset.
pub fn find_agreement_ultrafilter(family: &FiniteFamily) -> Result<AgreementPoints, UltraError> {
    let n = family.semigroup().order();
    let mut points = Vec::new();
    for u in 0..n {
        let images = family
            .maps()
            .iter()
            .map(|m| image(m, n, Ultrafilter::principal(n, u)))
            .collect::<Result<Vec<_>, _>>()?;
        let first = images[0].collapse()?;
        let mut agree = true;
        for img in &images[1..] {
            if img.collapse()? != first {
                agree = false;
                break;
            }
        }
        if agree && n <= IDENTITY_CARRIER_LIMIT {
            for img in &images[1..] {
                if let Verdict::Fail(a) = img.agrees_with(&images[0], IDENTITY_CARRIER_LIMIT)? {
                    panic!("collapsed images agree but differ on {a:?}");
                }
            }
        }
        if agree {
            points.push(u);
        }
    }
    if points.is_empty() {
        return Err(UltraError::NotFound);
    }
    let ideal_points = points.iter().copied().filter(|&u| !family.members().contains(u)).collect();
    Ok(AgreementPoints {
        carrier: n,
        points,
        ideal_points,
    })
}

/// Both sides of the witness/agreement equivalence, computed independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Report {
    pub colors: usize,
    pub colorings_checked: u64,
    /// Every `r`-coloring of `T` has some `v ∈ R` with monochromatic images.
    pub statement_a: bool,
    /// A coloring with no monochromatic witness, as `(element, color)` pairs.
    pub counter_coloring: Option<Vec<(usize, u8)>>,
    /// The least `v ∈ R` that is a witness for every coloring, if any.
    pub uniform_witness: Option<usize>,
    /// Least agreement point inside `R`.
    pub agreement_in_ideal: Option<usize>,
    /// Least agreement point anywhere in `S`.
    pub agreement_anywhere: Option<usize>,
}

impl Lemma2Report {
    /// The agreement statement read with `R ∈ U`.
    pub fn statement_b(&self) -> bool {
        self.agreement_in_ideal.is_some()
    }

    pub fn consistent(&self) -> bool {
        self.statement_a == self.statement_b()
    }
}

const LEMMA2_MAX_ORDER: usize = 10;
const LEMMA2_MAX_COLORS: usize = 3;

/// Computes the witness statement by enumerating all `r`-colorings of `T`
/// and the agreement statement by [`find_agreement_ultrafilter`].
pub fn check_lemma2_equivalence(family: &FiniteFamily, r: usize) -> Result<Lemma2Report, UltraError> {
    let sg = family.semigroup();
    if sg.order() > LEMMA2_MAX_ORDER || !(1..=LEMMA2_MAX_COLORS).contains(&r) {
        return Err(UltraError::SearchSpaceTooLarge(format!(
            "need |S| <= {LEMMA2_MAX_ORDER} and 1 <= r <= {LEMMA2_MAX_COLORS}, got |S| = {}, r = {r}",
            sg.order()
        )));
    }
    let t: Vec<usize> = family.members().iter().collect();
    let ideal: Vec<usize> = family.ideal().iter().collect();
    let image_sets: Vec<Vec<usize>> = ideal.iter().map(|v| family.images(v)).collect();

    let mut color = vec![0u8; sg.order()];
    let mut digits = vec![0u8; t.len()];
    let mut uniform: Vec<bool> = vec![true; ideal.len()];
    let mut counter = None;
    let mut checked = 0u64;
    loop {
        for (&x, &c) in t.iter().zip(&digits) {
            color[x] = c;
        }
        checked += 1;
        let mut any = false;
        for (i, imgs) in image_sets.iter().enumerate() {
            let mono = imgs.iter().all(|&x| color[x] == color[imgs[0]]);
            uniform[i] &= mono;
            any |= mono;
        }
        if !any && counter.is_none() {
            counter = Some(t.iter().map(|&x| (x, color[x])).collect());
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            digits[i] += 1;
            if (digits[i] as usize) < r {
                break;
            }
            digits[i] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }
    let agreement = find_agreement_ultrafilter(family)?;
    Ok(Lemma2Report {
        colors: r,
        colorings_checked: checked,
        statement_a: counter.is_none() && !ideal.is_empty(),
        counter_coloring: counter,
        uniform_witness: ideal.iter().zip(&uniform).find(|(_, &u)| u).map(|(&v, _)| v),
        agreement_in_ideal: agreement.least_in_ideal(),
        agreement_anywhere: agreement.least(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{flag_family, max_chain, flag_index, flag_retraction, flag_semigroup, WordSemigroup};

    fn flag_subfamily(m: usize, gs: &[usize]) -> FiniteFamily {
        let (sg, t) = flag_semigroup(m);
        FiniteFamily::new(sg, t, gs.iter().map(|&g| flag_retraction(m, g)).collect()).unwrap()
    }

    #[test]
    fn singleton_family_agreement_set_is_everything() {
        let fam = flag_subfamily(2, &[1]);
        for a in SubsetQuery::all_subsets(3) {
            let a = SubsetQuery::from_indices(6, a.iter());
            assert_eq!(build_agreement_set(&fam, &a).unwrap(), SubsetQuery::full(6));
        }
    }

    #[test]
    fn flag_agreement_set_example() {
        let fam = flag_subfamily(2, &[0, 1]);
        let a = SubsetQuery::from_indices(6, [flag_index(2, 2, false)]);
        assert_eq!(build_agreement_set(&fam, &a).unwrap(), SubsetQuery::full(6));
        let outside = SubsetQuery::from_indices(6, [flag_index(2, 2, true)]);
        assert_eq!(build_agreement_set(&fam, &outside), Err(UltraError::NotInSubsemigroup));
    }

    #[test]
    fn word_window_agreement_set() {
        let ws = WordSemigroup::classical(2);
        let fam = SubstitutionFamily::diagonal(ws);
        let window: Vec<Word> = ws.words_up_to(2).collect();
        let even = |w: &Word| w.letters().unwrap().iter().map(|&a| a as u32).sum::<u32>() % 2 == 0;
        let xa = build_agreement_set_window(&fam, &window, even);
        let pos = |s: &str| window.iter().position(|w| w.to_string() == s).unwrap();
        assert!(xa.contains(pos("xx")));
        assert!(!xa.contains(pos("x")));
        // constants always lie in X_A
        assert!(xa.contains(pos("01")));
    }

    #[test]
    fn fip_examples() {
        let a = SubsetQuery::from_indices(4, [0, 1]);
        assert_eq!(check_fip(std::slice::from_ref(&a)).unwrap(), Verdict::Pass);
        assert_eq!(check_fip(&[a.clone(), a.complement()]).unwrap(), Verdict::Fail(vec![0, 1]));
        assert_eq!(check_fip(&[]).unwrap(), Verdict::Pass);
        let sets = vec![
            SubsetQuery::from_indices(4, [0, 1, 2]),
            SubsetQuery::from_indices(4, [1, 2, 3]),
            SubsetQuery::from_indices(4, [0]),
            SubsetQuery::from_indices(4, [3]),
        ];
        assert_eq!(check_fip(&sets).unwrap(), Verdict::Fail(vec![0, 3]));
    }

    #[test]
    fn fip_greedy_witness_above_limit() {
        let mut sets: Vec<SubsetQuery> = (0..24).map(|_| SubsetQuery::full(8)).collect();
        sets[5] = SubsetQuery::from_indices(8, [1]);
        sets[17] = SubsetQuery::from_indices(8, [2]);
        assert_eq!(check_fip(&sets).unwrap(), Verdict::Fail(vec![5, 17]));
    }

    #[test]
    fn all_agreement_sets_of_flag_family_have_fip() {
        let fam = flag_family(2);
        let sets: Vec<SubsetQuery> = SubsetQuery::all_subsets(3)
            .map(|a| build_agreement_set(&fam, &SubsetQuery::from_indices(6, a.iter())).unwrap())
            .collect();
        assert_eq!(check_fip(&sets).unwrap(), Verdict::Pass);
        let common = sets.iter().fold(SubsetQuery::full(6), |acc, s| acc.intersection(s));
        assert!(common.contains(flag_index(2, 2, true)));
    }

    #[test]
    fn agreement_points_of_flag_families() {
        let fam = flag_subfamily(2, &[1]);
        let pts = find_agreement_ultrafilter(&fam).unwrap();
        assert_eq!(pts.least(), Some(0));
        assert_eq!(pts.points.len(), 6);

        let fam = flag_family(2);
        let pts = find_agreement_ultrafilter(&fam).unwrap();
        assert_eq!(pts.ideal_points, vec![flag_index(2, 2, true)]);
        assert_eq!(pts.points, vec![0, 1, 2, flag_index(2, 2, true)]);

        let fam = flag_subfamily(2, &[0, 1]);
        let pts = find_agreement_ultrafilter(&fam).unwrap();
        assert_eq!(pts.ideal_points, vec![flag_index(2, 1, true), flag_index(2, 2, true)]);
        assert_eq!(pts.points.len(), 5);
    }

    #[test]
    fn lemma2_on_flag_examples() {
        let rep = check_lemma2_equivalence(&flag_family(2), 2).unwrap();
        assert!(rep.statement_a && rep.statement_b() && rep.consistent());
        assert_eq!(rep.uniform_witness, Some(flag_index(2, 2, true)));
        assert_eq!(rep.agreement_in_ideal, Some(flag_index(2, 2, true)));
        assert_eq!(rep.colorings_checked, 8);

        let rep = check_lemma2_equivalence(&flag_family(1), 2).unwrap();
        assert!(rep.statement_a && rep.statement_b());
        assert_eq!(rep.uniform_witness, Some(flag_index(1, 1, true)));
        assert_eq!(rep.colorings_checked, 4);
    }

    #[test]
    fn lemma2_singleton_family() {
        let fam = flag_subfamily(2, &[2]);
        let rep = check_lemma2_equivalence(&fam, 3).unwrap();
        assert!(rep.statement_a && rep.statement_b());
        assert_eq!(rep.uniform_witness, Some(3));
    }

    #[test]
    fn lemma2_with_empty_ideal_reports_a_counter_coloring() {
        let sg = max_chain(2);
        let fam = FiniteFamily::new(sg.clone(), SubsetQuery::full(3), vec![(0..3).collect()]).unwrap();
        let rep = check_lemma2_equivalence(&fam, 2).unwrap();
        assert!(!rep.statement_a && !rep.statement_b() && rep.consistent());
        assert_eq!(rep.counter_coloring, Some(vec![(0, 0), (1, 0), (2, 0)]));
        assert_eq!(rep.agreement_anywhere, Some(0));
    }

    #[test]
    fn lemma2_bounds() {
        let fam = flag_family(5);
        assert!(matches!(check_lemma2_equivalence(&fam, 2), Err(UltraError::SearchSpaceTooLarge(_))));
        assert!(matches!(check_lemma2_equivalence(&flag_family(1), 4), Err(UltraError::SearchSpaceTooLarge(_))));
    }

    #[test]
    fn agreement_in_ideal_gives_witness_for_every_coloring() {
        for m in 1..=3 {
            let fam = flag_family(m);
            let pts = find_agreement_ultrafilter(&fam).unwrap();
            let u = pts.least_in_ideal().unwrap();
            let t: Vec<usize> = fam.members().iter().collect();
            for mask in 0u32..1 << t.len() {
                let color = |x: usize| mask >> t.iter().position(|&y| y == x).unwrap() & 1;
                let imgs = fam.images(&u);
                assert!(imgs.iter().all(|&x| color(x) == color(imgs[0])));
            }
        }
    }
}
