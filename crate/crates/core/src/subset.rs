//! Subsets of a finite carrier `0..len`, stored as a packed bitmask.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of the carrier `0..len`.
///
/// Every ultrafilter formula in this crate quantifies over these: membership
/// of `A` in an ultrafilter, preimages `f⁻¹(A)`, translates `s⁻¹•A`, and the
/// agreement sets `X_A` are all `SubsetQuery` values over a fixed carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetQuery {
    len: usize,
    words: Vec<u64>,
}

impl SubsetQuery {
    pub fn empty(len: usize) -> Self {
        SubsetQuery {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, point: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(point);
        s
    }

    /// Builds the subset whose members are the set bits of `mask`.
    ///
    /// Bits at positions `>= len` are ignored.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut s = Self::empty(len);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Self::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_predicate(len: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            if pred(i) {
                s.insert(i);
            }
        }
        s
    }

    /// Size of the carrier this subset lives on.
    pub fn carrier_len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// # Panics
    /// If `i` is outside the carrier.
    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} outside carrier of size {}", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut s = SubsetQuery {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    /// # Panics
    /// If the carriers differ.
    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "carrier mismatch");
        SubsetQuery {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "carrier mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "carrier mismatch");
        SubsetQuery {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Low 64 bits of the mask; the whole subset when `carrier_len() <= 64`.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Every subset of `0..len`, in increasing mask order.
    ///
    /// # Panics
    /// If `len > 30`; callers bound their carriers well below that.
    pub fn all_subsets(len: usize) -> impl Iterator<Item = SubsetQuery> {
        assert!(len <= 30, "refusing to enumerate 2^{len} subsets");
        (0u64..1 << len).map(move |m| SubsetQuery::from_mask(len, m))
    }

    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for SubsetQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetQuery({}; ", self.len)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}
