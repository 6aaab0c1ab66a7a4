//! Hales–Jewett and van der Waerden numbers by repeated coloring search.

use super::certificate::Certificate;
use super::hypergraph::{ap_hypergraph, line_hypergraph};
use super::solver::{solve, Budget, SolveOutcome, SolveReport};
use super::symmetry::{SymmetryGroup, SymmetrySpec};
use super::SearchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: Budget,
    pub symmetry: SymmetrySpec,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: Budget::default(),
            symmetry: SymmetrySpec::FULL,
            threads: 1,
        }
    }
}

/// Is there an `r`-coloring of `[n]^len` with no monochromatic line?
pub fn hj_check(n: u8, r: u8, len: usize, config: &SearchConfig) -> Result<SolveReport, SearchError> {
    let h = line_hypergraph(n, len)?;
    let group = SymmetryGroup::lines(n, len, config.symmetry);
    solve(&h, r, &group, &config.budget, config.threads)
}

/// Is there an `r`-coloring of `[1..m]` with no monochromatic `k`-AP?
pub fn vdw_check(k: usize, r: u8, m: usize, config: &SearchConfig) -> Result<SolveReport, SearchError> {
    if k < 3 {
        return Err(SearchError::Unsupported(format!("progressions need k >= 3, got {k}")));
    }
    let h = ap_hypergraph(k, m)?;
    let group = SymmetryGroup::progressions(m, config.symmetry);
    solve(&h, r, &group, &config.budget, config.threads)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    Sat(Box<Certificate>),
    Unsat { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    /// `N` for Hales–Jewett, `M` for van der Waerden.
    pub param: usize,
    pub result: StepResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberOutcome {
    Exact(usize),
    /// Every parameter up to the cap is SAT: the number exceeds it.
    LowerBoundOnly(usize),
    /// The search at `at` ran out of budget; every smaller parameter is SAT.
    BudgetExceeded { at: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberReport {
    pub outcome: NumberOutcome,
    pub steps: Vec<Step>,
}

impl NumberReport {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.steps.iter().filter_map(|s| match &s.result {
            StepResult::Sat(c) => Some(c.as_ref()),
            _ => None,
        })
    }
}

fn climb(
    first: usize,
    max: usize,
    mut check: impl FnMut(usize) -> Result<SolveReport, SearchError>,
    mut certify: impl FnMut(usize, &[u8], u64) -> Result<Certificate, SearchError>,
) -> Result<NumberReport, SearchError> {
    let mut steps = Vec::new();
    for p in first..=max {
        match check(p) {
            Ok(SolveReport {
                outcome: SolveOutcome::Sat(coloring),
                nodes,
            }) => steps.push(Step {
                param: p,
                result: StepResult::Sat(Box::new(certify(p, &coloring, nodes)?)),
            }),
            Ok(SolveReport {
                outcome: SolveOutcome::Unsat,
                nodes,
            }) => {
                steps.push(Step {
                    param: p,
                    result: StepResult::Unsat { nodes },
                });
                return Ok(NumberReport {
                    outcome: NumberOutcome::Exact(p),
                    steps,
                });
            }
            Err(SearchError::BudgetExceeded { nodes }) => {
                steps.push(Step {
                    param: p,
                    result: StepResult::BudgetExceeded { nodes },
                });
                return Ok(NumberReport {
                    outcome: NumberOutcome::BudgetExceeded { at: p },
                    steps,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(NumberReport {
        outcome: NumberOutcome::LowerBoundOnly(max),
        steps,
    })
}

/// Least `N <= max_len` at which every `r`-coloring of `[n]^N` has a
/// monochromatic line.
///
/// Each SAT coloring at `N >= 2` is restricted to the words ending in
/// letter 0, a copy of `[n]^(N-1)`, and checked to be line-free there.
pub fn hj_number(n: u8, r: u8, max_len: usize, config: &SearchConfig) -> Result<NumberReport, SearchError> {
    climb(
        1,
        max_len,
        |len| hj_check(n, r, len, config),
        |len, coloring, nodes| {
            if len >= 2 {
                let restricted: Vec<u8> = coloring.iter().step_by(n as usize).copied().collect();
                let lower = line_hypergraph(n, len - 1)?;
                if let Some(e) = lower.first_monochromatic_edge(&restricted) {
                    return Err(SearchError::CrossCheck(format!(
                        "restriction of the N={len} coloring has monochromatic line {e} at N={}",
                        len - 1
                    )));
                }
            }
            let cert = Certificate::hj_coloring(n, len, r, coloring, nodes);
            cert.verify().expect("fresh coloring certificate verifies");
            Ok(cert)
        },
    )
}

/// Least `M <= max_m` at which every `r`-coloring of `[1..M]` has a
/// monochromatic `k`-term progression.
pub fn vdw_number(k: usize, r: u8, max_m: usize, config: &SearchConfig) -> Result<NumberReport, SearchError> {
    climb(
        1,
        max_m,
        |m| vdw_check(k, r, m, config),
        |m, coloring, nodes| {
            let cert = Certificate::vdw_coloring(k, m, r, coloring, nodes);
            cert.verify().expect("fresh coloring certificate verifies");
            Ok(cert)
        },
    )
}
