//! Executable Hales–Jewett machinery for semigroups with retractions.
//!
//! * [`semigroup`]: finite Cayley tables, word semigroups, nice
//!   subsemigroups and retraction families.
//! * [`ultra`]: the ultrafilter calculus on finite carriers, evaluated by
//!   defining formulas, plus checkers for the tensor/product identity and the
//!   agreement-ultrafilter equivalence.
//! * [`instances`]: combinatorial lines, colorings, and the digit-sum
//!   reductions to arithmetic progressions and homothetic patterns.
//! * [`search`]: witness search, line/AP hypergraph coloring with
//!   propagation and symmetry pruning, and re-checkable certificates.

pub mod instances;
pub mod search;
pub mod semigroup;
pub mod subset;
pub mod ultra;

pub use subset::SubsetQuery;

/// Outcome of a structural check: pass, or the first counterexample found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }
}
