use std::fmt;

use super::{Semigroup, SemigroupError};
use crate::subset::SubsetQuery;

/// A semigroup on `0..order` given by a row-major Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates closure and associativity of an `order × order` table.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if table.len() != order * order {
            return Err(SemigroupError::Shape {
                expected: order * order,
                found: table.len(),
            });
        }
        for i in 0..order {
            for j in 0..order {
                let value = table[i * order + j];
                if value >= order {
                    return Err(SemigroupError::ClosureViolation { i, j, value, order });
                }
            }
        }
        let sg = FiniteSemigroup {
            order,
            table,
            labels: None,
        };
        if let Some((i, j, k)) = sg.first_non_associative_triple() {
            return Err(SemigroupError::AssociativityViolation { i, j, k });
        }
        Ok(sg)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        let order = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(SemigroupError::RowLength {
                    row: i,
                    expected: order,
                    found: row.len(),
                });
            }
        }
        Self::from_table(order, rows.concat())
    }

    /// Builds a semigroup from an operation on `0..order`, validating it.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, SemigroupError> {
        let table = (0..order * order).map(|x| op(x / order, x % order)).collect();
        Self::from_table(order, table)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemigroupError> {
        if labels.len() != self.order {
            return Err(SemigroupError::LabelCount {
                expected: self.order,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a • b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Resolves either a label or a decimal index to an element.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// Product of a nonempty sequence, folded left to right.
    pub fn fold(&self, elems: &[usize]) -> Option<usize> {
        let (&first, rest) = elems.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    /// First `(i, j, k)` in lexicographic order with `(i•j)•k ≠ i•(j•k)`.
    pub fn first_non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether `f: self → target` given as an index array is a homomorphism.
    pub fn is_homomorphism_to(&self, target: &FiniteSemigroup, f: &[usize]) -> bool {
        f.len() == self.order
            && f.iter().all(|&x| x < target.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b]))
            })
    }

    /// The subsemigroup on `members`, reindexed in increasing order.
    ///
    /// Returns the restricted semigroup together with the embedding
    /// `new index → old index`. Labels are carried over.
    pub fn restrict(&self, members: &SubsetQuery) -> Result<(FiniteSemigroup, Vec<usize>), SemigroupError> {
        if members.carrier_len() != self.order {
            return Err(SemigroupError::CarrierMismatch {
                expected: self.order,
                found: members.carrier_len(),
            });
        }
        let embed: Vec<usize> = members.iter().collect();
        if embed.is_empty() {
            return Err(SemigroupError::EmptySubset);
        }
        let mut index = vec![usize::MAX; self.order];
        for (new, &old) in embed.iter().enumerate() {
            index[old] = new;
        }
        let m = embed.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embed {
            for &b in &embed {
                let p = self.mul(a, b);
                if index[p] == usize::MAX {
                    return Err(SemigroupError::NotClosed { a, b, product: p });
                }
                table.push(index[p]);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| embed.iter().map(|&i| l[i].clone()).collect());
        Ok((
            FiniteSemigroup {
                order: m,
                table,
                labels,
            },
            embed,
        ))
    }

    /// Direct product with componentwise operation; `(a, b)` has index `a * other.order + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        FiniteSemigroup {
            order: n * m,
            table,
            labels: None,
        }
    }
}

impl Semigroup for FiniteSemigroup {
    type Element = usize;

    fn product(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteSemigroup(order {})", self.order)?;
        for row in self.table.chunks(self.order) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_semigroup_is_valid() {
        let sg = FiniteSemigroup::from_rows(&[vec![0]]).unwrap();
        assert_eq!(sg.order(), 1);
        assert_eq!(sg.mul(0, 0), 0);
    }

    #[test]
    fn max_semigroup_is_valid() {
        let sg = FiniteSemigroup::from_rows(&[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]).unwrap();
        assert_eq!(sg.product(&1, &2), 2);
    }

    #[test]
    fn out_of_range_entry_is_a_closure_violation() {
        let err = FiniteSemigroup::from_rows(&[vec![0, 1], vec![1, 2]]).unwrap_err();
        assert_eq!(
            err,
            SemigroupError::ClosureViolation {
                i: 1,
                j: 1,
                value: 2,
                order: 2
            }
        );
    }

    #[test]
    fn subtraction_mod_three_is_not_associative() {
        let err = FiniteSemigroup::from_fn(3, |a, b| (a + 3 - b) % 3).unwrap_err();
        // (0-0)-1 = 2, 0-(0-1) = 0-2 = 1
        assert_eq!(err, SemigroupError::AssociativityViolation { i: 0, j: 0, k: 1 });
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = FiniteSemigroup::from_rows(&[vec![0, 1], vec![1]]).unwrap_err();
        assert!(matches!(err, SemigroupError::RowLength { row: 1, .. }));
    }

    #[test]
    fn restrict_reindexes_and_detects_non_closure() {
        let sg = FiniteSemigroup::from_fn(4, |a, b| a.max(b)).unwrap();
        let (sub, embed) = sg.restrict(&SubsetQuery::from_indices(4, [1, 3])).unwrap();
        assert_eq!(embed, vec![1, 3]);
        assert_eq!(sub.rows(), vec![vec![0, 1], vec![1, 1]]);

        let plus = FiniteSemigroup::from_fn(3, |a, b| (a + b) % 3).unwrap();
        let err = plus.restrict(&SubsetQuery::from_indices(3, [1])).unwrap_err();
        assert_eq!(err, SemigroupError::NotClosed { a: 1, b: 1, product: 2 });
    }

    #[test]
    fn direct_product_is_associative() {
        let max = FiniteSemigroup::from_fn(3, |a, b| a.max(b)).unwrap();
        let or = FiniteSemigroup::from_fn(2, |a, b| a | b).unwrap();
        let p = max.direct_product(&or);
        assert_eq!(p.first_non_associative_triple(), None);
        // (1,0)•(2,1) = (2,1)
        assert_eq!(p.mul(2, 5), 5);
    }
}
