//! Symmetry groups of line and AP hypergraphs and the lex-leader test used
//! to prune the coloring search.

use std::fmt;
use std::str::FromStr;

use super::SearchError;

/// Which symmetries the search may break.
///
/// For line hypergraphs `coordinates` permutes positions and `alphabet`
/// applies one letter permutation to every position. For AP hypergraphs
/// `coordinates` is the reflection `i ↦ M + 1 − i` and `alphabet` is unused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetrySpec {
    pub colors: bool,
    pub coordinates: bool,
    pub alphabet: bool,
}

impl SymmetrySpec {
    pub const NONE: SymmetrySpec = SymmetrySpec {
        colors: false,
        coordinates: false,
        alphabet: false,
    };
    pub const FULL: SymmetrySpec = SymmetrySpec {
        colors: true,
        coordinates: true,
        alphabet: true,
    };
}

impl FromStr for SymmetrySpec {
    type Err = SearchError;

    /// `none`, `full`, or a comma list of `colors`, `coordinates`, `alphabet`.
    fn from_str(s: &str) -> Result<Self, SearchError> {
        match s {
            "none" => return Ok(Self::NONE),
            "full" => return Ok(Self::FULL),
            _ => {}
        }
        let mut spec = Self::NONE;
        for part in s.split(',') {
            match part.trim() {
                "colors" => spec.colors = true,
                "coordinates" => spec.coordinates = true,
                "alphabet" => spec.alphabet = true,
                other => return Err(SearchError::BadSymmetry(other.to_string())),
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for SymmetrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [
            (self.colors, "colors"),
            (self.coordinates, "coordinates"),
            (self.alphabet, "alphabet"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|&(_, name)| name)
        .collect();
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Vertex permutations (identity excluded) plus whether colors may be
/// permuted freely.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymmetryGroup {
    colors: bool,
    perms: Vec<Vec<u32>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

impl SymmetryGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn with_colors(colors: bool) -> Self {
        SymmetryGroup {
            colors,
            perms: Vec::new(),
        }
    }

    /// Symmetries of the line hypergraph of `[n]^len`.
    pub fn lines(n: u8, len: usize, spec: SymmetrySpec) -> Self {
        let n = n as usize;
        let coords = if spec.coordinates {
            permutations(len)
        } else {
            vec![(0..len).collect()]
        };
        let letters = if spec.alphabet {
            permutations(n)
        } else {
            vec![(0..n).collect()]
        };
        let size = n.pow(len as u32);
        let mut perms = Vec::new();
        for pi in &coords {
            for alpha in &letters {
                if pi.iter().enumerate().all(|(i, &j)| i == j) && alpha.iter().enumerate().all(|(i, &j)| i == j) {
                    continue;
                }
                let perm = (0..size)
                    .map(|v| {
                        let mut digits = vec![0; len];
                        let mut rest = v;
                        for d in digits.iter_mut().rev() {
                            *d = rest % n;
                            rest /= n;
                        }
                        let mut image = vec![0; len];
                        for (i, &d) in digits.iter().enumerate() {
                            image[pi[i]] = alpha[d];
                        }
                        image.iter().fold(0, |acc, &d| acc * n + d) as u32
                    })
                    .collect();
                perms.push(perm);
            }
        }
        SymmetryGroup {
            colors: spec.colors,
            perms,
        }
    }

    /// Symmetries of the AP hypergraph on `[1..m]`.
    pub fn progressions(m: usize, spec: SymmetrySpec) -> Self {
        let perms = if spec.coordinates && m > 1 {
            vec![(0..m as u32).rev().collect()]
        } else {
            Vec::new()
        };
        SymmetryGroup {
            colors: spec.colors,
            perms,
        }
    }

    pub fn permutes_colors(&self) -> bool {
        self.colors
    }

    pub fn vertex_permutations(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn is_trivial(&self) -> bool {
        !self.colors && self.perms.is_empty()
    }
}

/// Marks an uncolored vertex in a partial coloring.
pub const UNCOLORED: u8 = u8::MAX;

/// True when the partial coloring cannot extend to a lex-leader of its
/// orbit: some group element provably maps every completion to a
/// lexicographically smaller coloring.
///
/// Colorings are compared as sequences along `order`. With color symmetry
/// each image is first relabeled by order of first appearance, which is
/// the least coloring in its color orbit; the identity is then checked too,
/// which forces the first vertex in `order` to color 0.
pub fn canonical_prune(partial: &[u8], order: &[u32], group: &SymmetryGroup) -> bool {
    if group.colors && compare_prefix(partial, order, |v| v, true) == Some(true) {
        return true;
    }
    group
        .perms
        .iter()
        .any(|g| compare_prefix(partial, order, |v| g[v as usize], group.colors) == Some(true))
}

/// `Some(true)` if `x > image` is already decided, `Some(false)` if
/// `x < image` is decided, `None` if undecided or equal so far.
fn compare_prefix(x: &[u8], order: &[u32], g: impl Fn(u32) -> u32, relabel: bool) -> Option<bool> {
    let mut relabeling = [UNCOLORED; 256];
    let mut next = 0u8;
    for &p in order {
        let a = x[p as usize];
        let mut b = x[g(p) as usize];
        if a == UNCOLORED || b == UNCOLORED {
            return None;
        }
        if relabel {
            if relabeling[b as usize] == UNCOLORED {
                relabeling[b as usize] = next;
                next += 1;
            }
            b = relabeling[b as usize];
        }
        if a != b {
            return Some(a > b);
        }
    }
    None
}
