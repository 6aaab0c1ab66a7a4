use std::fmt;
use std::sync::Arc;

use super::UltraError;
use crate::semigroup::FiniteSemigroup;
use crate::subset::SubsetQuery;
use crate::Verdict;

/// The ultrafilter of all subsets of `0..carrier` containing `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalUltrafilter {
    carrier: usize,
    point: usize,
}

impl PrincipalUltrafilter {
    /// # Panics
    /// If `point >= carrier`.
    pub fn new(carrier: usize, point: usize) -> Self {
        assert!(point < carrier, "point {point} outside carrier of size {carrier}");
        PrincipalUltrafilter { carrier, point }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn point(&self) -> usize {
        self.point
    }
}

/// An ultrafilter on a finite carrier, built from principal ultrafilters by
/// images, semigroup products and tensor products.
///
/// Membership is always answered by the defining formula of the outermost
/// construction, recursing into its parts; no node is shortcut to its
/// generating point. [`Ultrafilter::collapse`] recovers that point from
/// membership queries alone.
#[derive(Clone)]
pub enum Ultrafilter {
    Principal(PrincipalUltrafilter),
    /// `A ∈ f(U)` iff `f⁻¹(A) ∈ U`.
    Image {
        map: Arc<[usize]>,
        target: usize,
        inner: Box<Ultrafilter>,
    },
    /// `A ∈ U•V` iff `{s : s⁻¹•A ∈ V} ∈ U`.
    Product {
        semigroup: Arc<FiniteSemigroup>,
        left: Box<Ultrafilter>,
        right: Box<Ultrafilter>,
    },
    /// `X ∈ U⊗V` iff `{i : X_i ∈ V} ∈ U`, with `X_i = {j : (i, j) ∈ X}`.
    /// The pair `(i, j)` has index `i * |J| + j`.
    Tensor { left: Box<Ultrafilter>, right: Box<Ultrafilter> },
}

impl From<PrincipalUltrafilter> for Ultrafilter {
    fn from(p: PrincipalUltrafilter) -> Self {
        Ultrafilter::Principal(p)
    }
}

impl Ultrafilter {
    pub fn principal(carrier: usize, point: usize) -> Self {
        PrincipalUltrafilter::new(carrier, point).into()
    }

    pub fn carrier(&self) -> usize {
        match self {
            Ultrafilter::Principal(p) => p.carrier,
            Ultrafilter::Image { target, .. } => *target,
            Ultrafilter::Product { semigroup, .. } => semigroup.order(),
            Ultrafilter::Tensor { left, right } => left.carrier() * right.carrier(),
        }
    }

    /// Whether `a` belongs to this ultrafilter.
    pub fn member(&self, a: &SubsetQuery) -> Result<bool, UltraError> {
        if a.carrier_len() != self.carrier() {
            return Err(UltraError::CarrierMismatch {
                expected: self.carrier(),
                found: a.carrier_len(),
            });
        }
        Ok(self.holds(a))
    }

    /// Formula evaluation; carriers are consistent by construction.
    pub(crate) fn holds(&self, a: &SubsetQuery) -> bool {
        match self {
            Ultrafilter::Principal(p) => a.contains(p.point),
            Ultrafilter::Image { map, inner, .. } => {
                let pre = SubsetQuery::from_predicate(map.len(), |x| a.contains(map[x]));
                inner.holds(&pre)
            }
            Ultrafilter::Product { semigroup, left, right } => {
                let good = SubsetQuery::from_predicate(semigroup.order(), |s| {
                    right.holds(&translate_preimage_unchecked(semigroup, s, a))
                });
                left.holds(&good)
            }
            Ultrafilter::Tensor { left, right } => {
                let j = right.carrier();
                let good = SubsetQuery::from_predicate(left.carrier(), |i| {
                    right.holds(&SubsetQuery::from_predicate(j, |y| a.contains(i * j + y)))
                });
                left.holds(&good)
            }
        }
    }

    /// The generating point, found by asking which singleton is a member.
    ///
    /// An ultrafilter on a finite set contains exactly one singleton; any
    /// other count means the formulas are broken and is reported as an error.
    pub fn collapse(&self) -> Result<PrincipalUltrafilter, UltraError> {
        let n = self.carrier();
        let mut found = None;
        for x in 0..n {
            if self.holds(&SubsetQuery::singleton(n, x)) {
                if found.is_some() {
                    return Err(UltraError::NotAnUltrafilter);
                }
                found = Some(x);
            }
        }
        found
            .map(|p| PrincipalUltrafilter::new(n, p))
            .ok_or(UltraError::NotAnUltrafilter)
    }

    /// Compares membership with `other` on every subset of the carrier.
    pub fn agrees_with(&self, other: &Ultrafilter, limit: usize) -> Result<Verdict<SubsetQuery>, UltraError> {
        let n = self.carrier();
        if other.carrier() != n {
            return Err(UltraError::CarrierMismatch {
                expected: n,
                found: other.carrier(),
            });
        }
        if n > limit {
            return Err(UltraError::CarrierTooLarge { size: n, limit });
        }
        Ok(SubsetQuery::all_subsets(n)
            .find(|a| self.holds(a) != other.holds(a))
            .map_or(Verdict::Pass, Verdict::Fail))
    }
}

impl fmt::Debug for Ultrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ultrafilter::Principal(p) => write!(f, "⟨{}⟩", p.point),
            Ultrafilter::Image { inner, target, .. } => write!(f, "f[{target}]({inner:?})"),
            Ultrafilter::Product { left, right, .. } => write!(f, "({left:?} • {right:?})"),
            Ultrafilter::Tensor { left, right } => write!(f, "({left:?} ⊗ {right:?})"),
        }
    }
}

/// Membership of `a` in `u`.
pub fn member(u: &Ultrafilter, a: &SubsetQuery) -> Result<bool, UltraError> {
    u.member(a)
}

/// The image ultrafilter `f(U)` on `0..target`, for `f` given as an index array.
pub fn image(map: &[usize], target: usize, u: Ultrafilter) -> Result<Ultrafilter, UltraError> {
    if map.len() != u.carrier() {
        return Err(UltraError::CarrierMismatch {
            expected: u.carrier(),
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= target) {
        return Err(UltraError::MapOutOfRange { value: bad, target });
    }
    Ok(Ultrafilter::Image {
        map: map.into(),
        target,
        inner: Box::new(u),
    })
}

/// `s⁻¹•A = {t : s•t ∈ A}`.
pub fn translate_preimage(sg: &FiniteSemigroup, s: usize, a: &SubsetQuery) -> Result<SubsetQuery, UltraError> {
    if a.carrier_len() != sg.order() || s >= sg.order() {
        return Err(UltraError::CarrierMismatch {
            expected: sg.order(),
            found: a.carrier_len().max(s + 1),
        });
    }
    Ok(translate_preimage_unchecked(sg, s, a))
}

fn translate_preimage_unchecked(sg: &FiniteSemigroup, s: usize, a: &SubsetQuery) -> SubsetQuery {
    SubsetQuery::from_predicate(sg.order(), |t| a.contains(sg.mul(s, t)))
}

/// `U • V` in `βS`.
pub fn uf_product(sg: &Arc<FiniteSemigroup>, u: Ultrafilter, v: Ultrafilter) -> Result<Ultrafilter, UltraError> {
    for w in [&u, &v] {
        if w.carrier() != sg.order() {
            return Err(UltraError::CarrierMismatch {
                expected: sg.order(),
                found: w.carrier(),
            });
        }
    }
    Ok(Ultrafilter::Product {
        semigroup: Arc::clone(sg),
        left: Box::new(u),
        right: Box::new(v),
    })
}

/// `U^•n = U • ⋯ • U`, associated to the left.
pub fn uf_power(sg: &Arc<FiniteSemigroup>, u: Ultrafilter, n: usize) -> Result<Ultrafilter, UltraError> {
    if n == 0 {
        return Err(UltraError::ZeroPower);
    }
    let mut acc = u.clone();
    for _ in 1..n {
        acc = uf_product(sg, acc, u.clone())?;
    }
    if acc.carrier() != sg.order() {
        return Err(UltraError::CarrierMismatch {
            expected: sg.order(),
            found: acc.carrier(),
        });
    }
    Ok(acc)
}

/// `U ⊗ V` on `I × J`.
pub fn uf_tensor(u: Ultrafilter, v: Ultrafilter) -> Ultrafilter {
    Ultrafilter::Tensor {
        left: Box::new(u),
        right: Box::new(v),
    }
}

/// `U^⊗n` on the `n`-fold product, associated to the left. The tuple
/// `(v_1, …, v_n)` has index `Σ v_i |S|^(n-i)`.
pub fn tensor_power(u: Ultrafilter, n: usize) -> Result<Ultrafilter, UltraError> {
    if n == 0 {
        return Err(UltraError::ZeroPower);
    }
    let mut acc = u.clone();
    for _ in 1..n {
        acc = uf_tensor(acc, u.clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{flag_index, flag_retraction, flag_semigroup, max_chain};

    #[test]
    fn principal_membership() {
        let u = Ultrafilter::principal(3, 2);
        assert!(member(&u, &SubsetQuery::from_indices(3, [2])).unwrap());
        assert!(!member(&u, &SubsetQuery::from_indices(3, [0, 1])).unwrap());
        assert!(!member(&Ultrafilter::principal(3, 0), &SubsetQuery::empty(3)).unwrap());
        assert_eq!(
            member(&u, &SubsetQuery::empty(4)),
            Err(UltraError::CarrierMismatch { expected: 3, found: 4 })
        );
    }

    #[test]
    fn image_examples() {
        let id: Vec<usize> = (0..4).collect();
        let u = Ultrafilter::principal(4, 3);
        let iu = image(&id, 4, u.clone()).unwrap();
        assert_eq!(iu.agrees_with(&u, 16).unwrap(), Verdict::Pass);

        let (sg, _) = flag_semigroup(2);
        let s1 = flag_retraction(2, 1);
        let img = image(&s1, sg.order(), Ultrafilter::principal(6, flag_index(2, 2, true))).unwrap();
        assert_eq!(img.collapse().unwrap().point(), flag_index(2, 2, false));

        let c = image(&[1, 1, 1], 2, Ultrafilter::principal(3, 0)).unwrap();
        assert_eq!(c.collapse().unwrap().point(), 1);
    }

    #[test]
    fn translate_preimage_examples() {
        let sg = max_chain(2);
        let a = SubsetQuery::from_indices(3, [2]);
        assert_eq!(translate_preimage(&sg, 0, &a).unwrap(), a);
        // 2 is absorbing for max
        assert_eq!(translate_preimage(&sg, 2, &a).unwrap(), SubsetQuery::full(3));
        assert!(translate_preimage(&sg, 1, &SubsetQuery::empty(3)).unwrap().is_empty());
    }

    #[test]
    fn product_by_formula_matches_point_product() {
        let sg = Arc::new(max_chain(2));
        let p = uf_product(&sg, Ultrafilter::principal(3, 1), Ultrafilter::principal(3, 2)).unwrap();
        assert_eq!(p.agrees_with(&Ultrafilter::principal(3, 2), 16).unwrap(), Verdict::Pass);
        let e = uf_product(&sg, Ultrafilter::principal(3, 1), Ultrafilter::principal(3, 1)).unwrap();
        assert_eq!(e.collapse().unwrap().point(), 1);
        let one = uf_power(&sg, Ultrafilter::principal(3, 1), 1).unwrap();
        assert_eq!(one.agrees_with(&Ultrafilter::principal(3, 1), 16).unwrap(), Verdict::Pass);
    }

    #[test]
    fn tensor_examples() {
        let t = uf_tensor(Ultrafilter::principal(3, 1), Ultrafilter::principal(2, 0));
        assert_eq!(t.carrier(), 6);
        assert_eq!(t.collapse().unwrap().point(), 2);
        // X = {a} × J is a member iff the left point is a
        for a in 0..3 {
            let x = SubsetQuery::from_indices(6, [2 * a, 2 * a + 1]);
            assert_eq!(t.member(&x).unwrap(), a == 1);
        }
    }

    #[test]
    fn collapse_rejects_non_ultrafilters_only_when_broken() {
        let sg = Arc::new(max_chain(3));
        let u = uf_power(&sg, Ultrafilter::principal(4, 2), 3).unwrap();
        assert_eq!(u.collapse().unwrap(), PrincipalUltrafilter::new(4, 2));
    }
}
