//! Line and arithmetic-progression hypergraphs.

use crate::instances::{enumerate_lines, InstanceError};

use super::SearchError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: usize,
    edges: Vec<Vec<u32>>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Edges must be nonempty sets of distinct in-range vertices.
    pub fn new(vertices: usize, edges: Vec<Vec<u32>>) -> Result<Self, SearchError> {
        let mut incidence = vec![Vec::new(); vertices];
        for (e, edge) in edges.iter().enumerate() {
            if edge.is_empty() || edge.len() > u16::MAX as usize {
                return Err(SearchError::BadEdge(e));
            }
            for (i, &v) in edge.iter().enumerate() {
                if v as usize >= vertices || edge[..i].contains(&v) {
                    return Err(SearchError::BadEdge(e));
                }
                incidence[v as usize].push(e as u32);
            }
        }
        Ok(Hypergraph {
            vertices,
            edges,
            incidence,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn incidence(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Index of the first edge whose vertices all share a color.
    pub fn first_monochromatic_edge(&self, coloring: &[u8]) -> Option<usize> {
        assert_eq!(coloring.len(), self.vertices, "coloring must cover every vertex");
        self.edges.iter().position(|edge| {
            let c = coloring[edge[0] as usize];
            edge.iter().all(|&v| coloring[v as usize] == c)
        })
    }
}

/// Vertices are the words of `[n]^len` by base-`n` index; edges are the
/// combinatorial lines, in [`enumerate_lines`] order.
pub fn line_hypergraph(n: u8, len: usize) -> Result<Hypergraph, SearchError> {
    let vertices = (n as usize)
        .checked_pow(len as u32)
        .filter(|&v| v <= u32::MAX as usize)
        .ok_or(SearchError::TooLarge)?;
    let edges = enumerate_lines(n, len)?
        .map(|l| l.point_indices().into_iter().map(|i| i as u32).collect())
        .collect();
    Hypergraph::new(vertices, edges)
}

/// Vertex `i` stands for the integer `i + 1`; edges are the `k`-term
/// progressions inside `[1..m]`, ordered by difference then start.
pub fn ap_hypergraph(k: usize, m: usize) -> Result<Hypergraph, SearchError> {
    if k < 2 {
        return Err(InstanceError::AlphabetTooSmall(k.min(255) as u8).into());
    }
    let mut edges = Vec::new();
    for d in 1..m.max(1) {
        if (k - 1) * d >= m {
            break;
        }
        for a in 0..m - (k - 1) * d {
            edges.push((0..k).map(|i| (a + i * d) as u32).collect());
        }
    }
    Hypergraph::new(m, edges)
}
