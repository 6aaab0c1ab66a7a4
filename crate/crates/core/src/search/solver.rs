//! Backtracking hypergraph coloring with propagation and lex-leader pruning.
//!
//! A coloring is sought in which no edge is monochromatic. When every
//! vertex but one in an edge carries color `c`, `c` is removed from the last
//! vertex's domain; a vertex left with one color is colored immediately.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use super::hypergraph::Hypergraph;
use super::symmetry::{canonical_prune, SymmetryGroup, UNCOLORED};
use super::SearchError;

/// Node and wall-clock caps for one solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 1_000_000_000,
            time: Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A coloring with no monochromatic edge.
    Sat(Vec<u8>),
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Decisions tried, summed over all workers.
    pub nodes: u64,
}

/// Vertices by descending degree, ties by index.
pub fn vertex_order(h: &Hypergraph) -> Vec<u32> {
    let mut order: Vec<u32> = (0..h.vertices() as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v as usize)), v));
    order
}

const CHECK_INTERVAL: u64 = 1024;

/// Shared across workers: node counter, deadline, cancellation.
struct Limits<'a> {
    budget: &'a Budget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
    exceeded: AtomicBool,
}

impl Limits<'_> {
    /// Flushes `local` nodes into the shared counter; false once the search
    /// should stop.
    fn flush(&self, local: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total > self.budget.nodes || self.budget.time.is_some_and(|t| self.start.elapsed() > t) {
            self.exceeded.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy)]
enum Undo {
    Color(u32),
    Domain(u32, u32),
}

#[derive(Clone)]
struct State<'a> {
    h: &'a Hypergraph,
    colors: usize,
    color: Vec<u8>,
    domain: Vec<u32>,
    /// `count[e * colors + c]`: vertices of edge `e` colored `c`.
    count: Vec<u16>,
    free: Vec<u16>,
    trail: Vec<Undo>,
    pending: Vec<u32>,
}

impl<'a> State<'a> {
    fn new(h: &'a Hypergraph, colors: usize) -> Self {
        State {
            h,
            colors,
            color: vec![UNCOLORED; h.vertices()],
            domain: vec![(1u32 << colors) - 1; h.vertices()],
            count: vec![0; h.edges().len() * colors],
            free: h.edges().iter().map(|e| e.len() as u16).collect(),
            trail: Vec::new(),
            pending: Vec::new(),
        }
    }

    fn restrict(&mut self, v: u32, c: usize) -> bool {
        let d = self.domain[v as usize];
        if d & (1 << c) == 0 {
            return true;
        }
        self.trail.push(Undo::Domain(v, d));
        let nd = d & !(1 << c);
        self.domain[v as usize] = nd;
        if nd == 0 {
            return false;
        }
        if nd.is_power_of_two() {
            self.pending.push(v);
        }
        true
    }

    fn assign(&mut self, v: u32, c: usize) -> bool {
        if self.domain[v as usize] & (1 << c) == 0 {
            return false;
        }
        self.trail.push(Undo::Color(v));
        self.color[v as usize] = c as u8;
        let h = self.h;
        for &e in h.incidence(v as usize) {
            self.count[e as usize * self.colors + c] += 1;
            self.free[e as usize] -= 1;
        }
        for &e in h.incidence(v as usize) {
            let e = e as usize;
            let size = h.edges()[e].len() as u16;
            let same = self.count[e * self.colors + c];
            if same == size {
                return false;
            }
            if self.free[e] == 1 && same == size - 1 {
                let u = *h.edges()[e]
                    .iter()
                    .find(|&&u| self.color[u as usize] == UNCOLORED)
                    .expect("one free vertex");
                if !self.restrict(u, c) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(v) = self.pending.pop() {
            if self.color[v as usize] != UNCOLORED {
                continue;
            }
            let c = self.domain[v as usize].trailing_zeros() as usize;
            if !self.assign(v, c) {
                self.pending.clear();
                return false;
            }
        }
        true
    }

    fn assign_and_propagate(&mut self, v: u32, c: usize) -> bool {
        if self.assign(v, c) && self.propagate() {
            true
        } else {
            self.pending.clear();
            false
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().expect("len checked") {
                Undo::Color(v) => {
                    let c = self.color[v as usize] as usize;
                    for &e in self.h.incidence(v as usize) {
                        self.count[e as usize * self.colors + c] -= 1;
                        self.free[e as usize] += 1;
                    }
                    self.color[v as usize] = UNCOLORED;
                }
                Undo::Domain(v, d) => self.domain[v as usize] = d,
            }
        }
    }

    /// With color symmetry, a color above every color in use plus one is a
    /// relabeling of that next fresh color; `canonical_prune` would reject
    /// it anyway, so it is skipped before it costs a node.
    fn redundant_color(&self, c: usize, group: &SymmetryGroup) -> bool {
        group.permutes_colors()
            && c > self
                .color
                .iter()
                .filter(|&&x| x != UNCOLORED)
                .map(|&x| x as usize + 1)
                .max()
                .unwrap_or(0)
    }

    fn next_vertex(&self, order: &[u32]) -> Option<u32> {
        order.iter().copied().find(|&v| self.color[v as usize] == UNCOLORED)
    }
}

struct Frame {
    vertex: u32,
    trail: usize,
    remaining: u32,
}

enum Run {
    Sat(Vec<u8>),
    Unsat,
    Stopped,
}

/// Complete depth-first search below `state`.
fn dfs(mut state: State<'_>, order: &[u32], group: &SymmetryGroup, limits: &Limits<'_>) -> Run {
    let mut stack: Vec<Frame> = Vec::new();
    let mut local = 0u64;
    let interval = CHECK_INTERVAL.min(limits.budget.nodes.max(1));
    loop {
        match state.next_vertex(order) {
            None => {
                limits.flush(&mut local);
                return Run::Sat(state.color);
            }
            Some(v) => stack.push(Frame {
                vertex: v,
                trail: state.trail.len(),
                remaining: state.domain[v as usize],
            }),
        }
        // advance to the next viable child, backtracking as needed
        loop {
            let Some(top) = stack.last_mut() else {
                limits.flush(&mut local);
                return Run::Unsat;
            };
            if top.remaining == 0 {
                let t = top.trail;
                stack.pop();
                state.undo_to(t);
                continue;
            }
            let c = top.remaining.trailing_zeros() as usize;
            top.remaining &= top.remaining - 1;
            let (v, t) = (top.vertex, top.trail);
            state.undo_to(t);
            if state.redundant_color(c, group) {
                continue;
            }
            local += 1;
            if local >= interval && !limits.flush(&mut local) {
                return Run::Stopped;
            }
            if state.assign_and_propagate(v, c) && !canonical_prune(&state.color, order, group) {
                break;
            }
        }
    }
}

/// Searches for a coloring of `h` with `colors` colors and no monochromatic
/// edge.
///
/// With one thread the search is a single deterministic depth-first pass.
/// With more, the subtrees below the first two decisions are shared out
/// among workers, and the first SAT result cancels the rest.
pub fn solve(
    h: &Hypergraph,
    colors: u8,
    group: &SymmetryGroup,
    budget: &Budget,
    threads: usize,
) -> Result<SolveReport, SearchError> {
    if colors == 0 || colors > 32 {
        return Err(SearchError::BadColorCount(colors));
    }
    if h.edges().iter().any(|e| e.len() == 1) {
        // a single-vertex edge is monochromatic under every coloring
        return Ok(SolveReport {
            outcome: SolveOutcome::Unsat,
            nodes: 0,
        });
    }
    let order = vertex_order(h);
    let limits = Limits {
        budget,
        start: Instant::now(),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exceeded: AtomicBool::new(false),
    };
    let root = State::new(h, colors as usize);
    let run = if threads <= 1 {
        dfs(root, &order, group, &limits)
    } else {
        parallel(root, &order, group, &limits, threads)
    };
    let nodes = limits.nodes.load(Ordering::Relaxed);
    let outcome = match run {
        Run::Sat(coloring) => {
            assert!(
                h.first_monochromatic_edge(&coloring).is_none() && coloring.iter().all(|&c| c < colors),
                "search returned an invalid coloring"
            );
            SolveOutcome::Sat(coloring)
        }
        Run::Unsat => SolveOutcome::Unsat,
        Run::Stopped => return Err(SearchError::BudgetExceeded { nodes }),
    };
    Ok(SolveReport { outcome, nodes })
}

/// States after the first two decisions that survive propagation and pruning.
fn split<'a>(root: &State<'a>, order: &[u32], group: &SymmetryGroup, limits: &Limits<'_>) -> Vec<State<'a>> {
    let mut frontier = vec![root.clone()];
    for _ in 0..2 {
        let mut next = Vec::new();
        for s in frontier {
            let Some(v) = s.next_vertex(order) else {
                next.push(s);
                continue;
            };
            let mut d = s.domain[v as usize];
            while d != 0 {
                let c = d.trailing_zeros() as usize;
                d &= d - 1;
                if s.redundant_color(c, group) {
                    continue;
                }
                limits.nodes.fetch_add(1, Ordering::Relaxed);
                let mut child = s.clone();
                if child.assign_and_propagate(v, c) && !canonical_prune(&child.color, order, group) {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    frontier
}

fn parallel(root: State<'_>, order: &[u32], group: &SymmetryGroup, limits: &Limits<'_>, threads: usize) -> Run {
    let jobs = split(&root, order, group, limits);
    let jobs = Mutex::new(jobs.into_iter());
    let found: Mutex<Option<Vec<u8>>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                if limits.stop.load(Ordering::Relaxed) {
                    return;
                }
                let Some(state) = jobs.lock().expect("job list lock").next() else {
                    return;
                };
                if let Run::Sat(coloring) = dfs(state, order, group, limits) {
                    let mut slot = found.lock().expect("result lock");
                    if slot.is_none() {
                        *slot = Some(coloring);
                    }
                    limits.stop.store(true, Ordering::Relaxed);
                    return;
                }
            });
        }
    });
    if let Some(c) = found.into_inner().expect("result lock") {
        return Run::Sat(c);
    }
    if limits.exceeded.load(Ordering::Relaxed) {
        Run::Stopped
    } else {
        Run::Unsat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{ap_hypergraph, line_hypergraph, SymmetrySpec};

    fn run(h: &Hypergraph, r: u8, group: &SymmetryGroup) -> SolveReport {
        solve(h, r, group, &Budget::default(), 1).unwrap()
    }

    #[test]
    fn small_line_instances() {
        let h = line_hypergraph(2, 1).unwrap();
        assert_eq!(run(&h, 2, &SymmetryGroup::trivial()).outcome, SolveOutcome::Sat(vec![0, 1]));
        let h = line_hypergraph(2, 2).unwrap();
        assert_eq!(run(&h, 2, &SymmetryGroup::trivial()).outcome, SolveOutcome::Unsat);
        let h = line_hypergraph(3, 3).unwrap();
        assert!(matches!(run(&h, 2, &SymmetryGroup::trivial()).outcome, SolveOutcome::Sat(_)));
    }

    #[test]
    fn one_color_is_unsat_once_there_is_an_edge() {
        let h = line_hypergraph(3, 1).unwrap();
        assert_eq!(run(&h, 1, &SymmetryGroup::trivial()).outcome, SolveOutcome::Unsat);
        let h = ap_hypergraph(3, 2).unwrap();
        assert_eq!(run(&h, 1, &SymmetryGroup::trivial()).outcome, SolveOutcome::Sat(vec![0, 0]));
    }

    #[test]
    fn van_der_waerden_three_two() {
        let g = |m| SymmetryGroup::progressions(m, SymmetrySpec::FULL);
        let h = ap_hypergraph(3, 8).unwrap();
        assert!(matches!(run(&h, 2, &g(8)).outcome, SolveOutcome::Sat(_)));
        let h = ap_hypergraph(3, 9).unwrap();
        assert_eq!(run(&h, 2, &g(9)).outcome, SolveOutcome::Unsat);
    }

    #[test]
    fn budget_is_not_unsat() {
        let h = ap_hypergraph(4, 34).unwrap();
        let tiny = Budget {
            nodes: 10,
            time: None,
        };
        let err = solve(&h, 2, &SymmetryGroup::trivial(), &tiny, 1).unwrap_err();
        assert!(matches!(err, SearchError::BudgetExceeded { .. }));
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        for (m, sat) in [(8, true), (9, false)] {
            let h = ap_hypergraph(3, m).unwrap();
            let rep = solve(&h, 2, &SymmetryGroup::trivial(), &Budget::default(), 4).unwrap();
            assert_eq!(matches!(rep.outcome, SolveOutcome::Sat(_)), sat);
        }
        let h = line_hypergraph(2, 2).unwrap();
        let rep = solve(&h, 2, &SymmetryGroup::lines(2, 2, SymmetrySpec::FULL), &Budget::default(), 3).unwrap();
        assert_eq!(rep.outcome, SolveOutcome::Unsat);
    }

    #[test]
    fn single_thread_is_deterministic() {
        let h = line_hypergraph(3, 3).unwrap();
        let g = SymmetryGroup::lines(3, 3, SymmetrySpec::FULL);
        assert_eq!(run(&h, 2, &g), run(&h, 2, &g));
    }
}
