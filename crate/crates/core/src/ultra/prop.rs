//! `Ψ_σ(v_1, …, v_k) = σ(v_1 • ⋯ • v_k)` and the identity
//! `Ψ̃_σ(V^⊗k) = (σ̃(V))^•k`.

use std::sync::Arc;

use super::filter::{image, tensor_power, uf_power, PrincipalUltrafilter};
use super::{UltraError, IDENTITY_CARRIER_LIMIT};
use crate::semigroup::{FiniteFamily, FiniteSemigroup, RetractionSystem, SubstitutionFamily, Word};
use crate::subset::SubsetQuery;
use crate::Verdict;

/// `Ψ: S^k → T` for a homomorphism `S → T`.
#[derive(Debug, Clone)]
pub struct PsiMap<'a> {
    domain: &'a FiniteSemigroup,
    hom: &'a [usize],
    k: usize,
}

pub fn psi_map<'a>(domain: &'a FiniteSemigroup, hom: &'a [usize], k: usize) -> Result<PsiMap<'a>, UltraError> {
    if k == 0 {
        return Err(UltraError::ZeroPower);
    }
    if hom.len() != domain.order() {
        return Err(UltraError::CarrierMismatch {
            expected: domain.order(),
            found: hom.len(),
        });
    }
    Ok(PsiMap { domain, hom, k })
}

impl PsiMap<'_> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, vs: &[usize]) -> usize {
        assert_eq!(vs.len(), self.k, "Ψ takes exactly k arguments");
        self.hom[self.domain.fold(vs).expect("k >= 1")]
    }

    /// Decodes a tuple index (first coordinate most significant).
    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let n = self.domain.order();
        let mut vs = vec![0; self.k];
        for slot in vs.iter_mut().rev() {
            *slot = flat % n;
            flat /= n;
        }
        vs
    }

    pub fn eval_flat(&self, flat: usize) -> usize {
        self.eval(&self.decode(flat))
    }

    /// `Ψ` as an index array over `S^k`.
    pub fn table(&self) -> Vec<usize> {
        (0..self.domain.order().pow(self.k as u32))
            .map(|i| self.eval_flat(i))
            .collect()
    }

    /// Checks `Ψ(x·y) = Ψ(x)•Ψ(y)` for the componentwise product on `S^k`.
    ///
    /// This holds when `S` is commutative but not in general, since
    /// `σ(x_1 y_1 x_2 y_2)` and `σ(x_1 x_2 y_1 y_2)` need not agree. The
    /// tensor identity does not depend on it.
    pub fn componentwise_homomorphism(&self, target: &FiniteSemigroup) -> Verdict<(Vec<usize>, Vec<usize>)> {
        let size = self.domain.order().pow(self.k as u32);
        for x in 0..size {
            for y in 0..size {
                let (xs, ys) = (self.decode(x), self.decode(y));
                let xy: Vec<usize> = xs.iter().zip(&ys).map(|(&a, &b)| self.domain.mul(a, b)).collect();
                if self.eval(&xy) != target.mul(self.eval(&xs), self.eval(&ys)) {
                    return Verdict::Fail((xs, ys));
                }
            }
        }
        Verdict::Pass
    }
}

/// `Ψ_σ` on words: substitute into the concatenation.
pub fn psi_words(family: &SubstitutionFamily, sigma: usize, words: &[Word]) -> Option<Word> {
    let (first, rest) = words.split_first()?;
    let v = rest.iter().fold(first.clone(), |acc, w| acc.concat(w));
    Some(family.retract(sigma, &v))
}

/// Checks `Ψ̃(V^⊗k) = (f̃(V))^•k` on every subset of the target, for a
/// homomorphism `f: domain → target` and `Ψ = f ∘ (k-fold product)`.
///
/// Both sides are evaluated with their defining formulas: the left through
/// the image law over the tensor law, the right through the product law over
/// the image law. Returns the first subset on which they differ.
pub fn check_prop_tensor(
    domain: &Arc<FiniteSemigroup>,
    target: &Arc<FiniteSemigroup>,
    hom: &[usize],
    k: usize,
    v: PrincipalUltrafilter,
) -> Result<Verdict<SubsetQuery>, UltraError> {
    if !(1..=3).contains(&k) {
        return Err(UltraError::UnsupportedK(k));
    }
    for size in [domain.order(), target.order()] {
        if size > IDENTITY_CARRIER_LIMIT {
            return Err(UltraError::CarrierTooLarge {
                size,
                limit: IDENTITY_CARRIER_LIMIT,
            });
        }
    }
    if v.carrier() != domain.order() {
        return Err(UltraError::CarrierMismatch {
            expected: domain.order(),
            found: v.carrier(),
        });
    }
    if hom.len() != domain.order() {
        return Err(UltraError::CarrierMismatch {
            expected: domain.order(),
            found: hom.len(),
        });
    }
    if let Some(&value) = hom.iter().find(|&&y| y >= target.order()) {
        return Err(UltraError::MapOutOfRange {
            value,
            target: target.order(),
        });
    }
    for a in domain.elements() {
        for b in domain.elements() {
            if hom[domain.mul(a, b)] != target.mul(hom[a], hom[b]) {
                return Err(UltraError::NotHomomorphism { a, b });
            }
        }
    }

    let psi = psi_map(domain, hom, k)?;
    let lhs = image(&psi.table(), target.order(), tensor_power(v.into(), k)?)?;
    let rhs = uf_power(target, image(hom, target.order(), v.into())?, k)?;
    Ok(SubsetQuery::all_subsets(target.order())
        .find(|a| lhs.holds(a) != rhs.holds(a))
        .map_or(Verdict::Pass, Verdict::Fail))
}

/// [`check_prop_tensor`] for one retraction of a family, with `T` as the
/// target semigroup. Counterexamples are reported as subsets of `S`.
pub fn check_prop_tensor_for_retraction(
    family: &FiniteFamily,
    sigma: usize,
    k: usize,
    v: PrincipalUltrafilter,
) -> Result<Verdict<SubsetQuery>, UltraError> {
    let sg = family.semigroup();
    let (t, embed) = sg
        .restrict(family.members())
        .expect("a nice subsemigroup is closed and nonempty");
    let mut index_in_t = vec![usize::MAX; sg.order()];
    for (i, &x) in embed.iter().enumerate() {
        index_in_t[x] = i;
    }
    let hom: Vec<usize> = family.map(sigma).iter().map(|&x| index_in_t[x]).collect();
    let verdict = check_prop_tensor(&Arc::new(sg.clone()), &Arc::new(t), &hom, k, v)?;
    Ok(verdict.map(|a| SubsetQuery::from_indices(sg.order(), a.iter().map(|i| embed[i]))))
}
