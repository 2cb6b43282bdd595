//! Orthogonality graphs and their classical/generalized bounds: the
//! independence number by exact branch-and-bound and the fractional packing
//! number by a dense simplex over maximal-clique constraints.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::hilbert::{HilbertError, StateVector};

/// Exact enumeration budget; adjacency sets are stored as u32 bitmasks.
pub const MAX_VERTICES: usize = 24;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge ({a}, {b}) is out of range for {n} vertices")]
    EdgeOutOfRange { a: usize, b: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {n} vertices, enumeration budget is {MAX_VERTICES}")]
    TooLarge { n: usize },
    #[error("vectors do not share a dimension: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("internal LP error: {0}")]
    Lp(String),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Vertices are projector indices; an edge means the two projectors are
/// exclusive (their vectors orthogonal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityGraph {
    n_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl OrthogonalityGraph {
    pub fn new(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(GraphError::EdgeOutOfRange { a, b, n: n_vertices });
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { n_vertices, edges: set })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Cycle graph C_n; n = 5 gives the pentagon of the original five-vector
    /// contextuality test.
    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
        Self::new(n, edges).expect("complete-graph edges are valid")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, []).expect("no edges")
    }

    fn adjacency_masks(&self) -> Result<Vec<u32>, GraphError> {
        if self.n_vertices > MAX_VERTICES {
            return Err(GraphError::TooLarge { n: self.n_vertices });
        }
        let mut adj = vec![0u32; self.n_vertices];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(adj)
    }
}

/// Classical and generalized bounds of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    #[serde(rename = "alpha")]
    pub independence_number: usize,
    #[serde(rename = "alpha_star")]
    pub fractional_packing: f64,
    #[serde(rename = "cliques")]
    pub maximal_cliques: Vec<Vec<usize>>,
}

/// Edge (i, j) iff |<v_i|v_j>| < tol.
pub fn build_graph(vectors: &[StateVector], tol: f64) -> Result<OrthogonalityGraph, GraphError> {
    if tol <= 0.0 {
        return Err(GraphError::BadTolerance);
    }
    let mut edges = Vec::new();
    for (i, vi) in vectors.iter().enumerate() {
        for (j, vj) in vectors.iter().enumerate().skip(i + 1) {
            if vi.dim() != vj.dim() {
                return Err(GraphError::DimMismatch(vi.dim(), vj.dim()));
            }
            if vi.inner(vj)?.norm() < tol {
                edges.push((i, j));
            }
        }
    }
    OrthogonalityGraph::new(vectors.len(), edges)
}

fn max_independent(adj: &[u32], candidates: u32, current: usize, best: &mut usize) {
    if current + candidates.count_ones() as usize <= *best {
        return; // cannot beat the incumbent
    }
    if candidates == 0 {
        *best = (*best).max(current);
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    // branch: take v (dropping its neighbours) or skip it
    max_independent(adj, candidates & !(1 << v) & !adj[v], current + 1, best);
    max_independent(adj, candidates & !(1 << v), current, best);
}

/// Size of the largest independent set, by exact enumeration with pruning.
pub fn independence_number(g: &OrthogonalityGraph) -> Result<usize, GraphError> {
    let adj = g.adjacency_masks()?;
    let mut best = 0usize;
    let all = if g.n_vertices == 32 { u32::MAX } else { (1u32 << g.n_vertices) - 1 };
    max_independent(&adj, all, 0, &mut best);
    Ok(best)
}

fn bron_kerbosch(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot on the candidate covering most of P
    let pivot = {
        let mut best_v = 0;
        let mut best_cover = -1i32;
        let mut scan = p | x;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let cover = (p & adj[v]).count_ones() as i32;
            if cover > best_cover {
                best_cover = cover;
                best_v = v;
            }
        }
        best_v
    };
    let mut todo = p & !adj[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        let bit = 1u32 << v;
        todo &= todo - 1;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// All maximal cliques, each sorted, the list sorted lexicographically.
pub fn maximal_cliques(g: &OrthogonalityGraph) -> Result<Vec<Vec<usize>>, GraphError> {
    let adj = g.adjacency_masks()?;
    let all = if g.n_vertices == 0 { 0 } else { (1u32 << g.n_vertices) - 1 };
    let mut masks = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut masks);
    let mut cliques: Vec<Vec<usize>> = masks
        .into_iter()
        .map(|m| (0..g.n_vertices).filter(|&v| m & (1 << v) != 0).collect())
        .collect();
    cliques.sort();
    Ok(cliques)
}

/// Maximize sum w_i subject to sum_{i in Q} w_i <= 1 for every maximal
/// clique Q and w >= 0 (each vertex lies in some maximal clique, so w <= 1
/// is implied). Solved by a dense simplex with Bland's rule.
pub fn fractional_packing_number(g: &OrthogonalityGraph) -> Result<f64, GraphError> {
    let cliques = maximal_cliques(g)?;
    if cliques.is_empty() {
        return Ok(0.0); // empty vertex set
    }
    let n = g.n_vertices;
    let mut rows = Vec::with_capacity(cliques.len());
    for q in &cliques {
        let mut row = vec![0.0; n];
        for &i in q {
            row[i] = 1.0;
        }
        rows.push(row);
    }
    let objective = vec![1.0; n];
    let rhs = vec![1.0; cliques.len()];
    simplex_maximize(&objective, &rows, &rhs).map_err(GraphError::Lp)
}

/// Primal simplex for max c.x s.t. Ax <= b, x >= 0 with b >= 0. Bland's rule
/// guarantees termination on these small degenerate instances.
fn simplex_maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<f64, String> {
    const EPS: f64 = 1e-9;
    let m = a.len();
    let n = c.len();
    // tableau: m constraint rows over n structural + m slack columns + rhs
    let width = n + m + 1;
    let mut t = vec![vec![0.0f64; width]; m + 1];
    for (i, row) in a.iter().enumerate() {
        if b[i] < 0.0 {
            return Err("negative right-hand side".into());
        }
        t[i][..n].copy_from_slice(row);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for (j, &cj) in c.iter().enumerate() {
        t[m][j] = -cj;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    for _iter in 0..10_000 {
        // Bland: entering = lowest-index column with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -EPS) else {
            return Ok(t[m][width - 1]);
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > EPS {
                let ratio = t[i][width - 1] / t[i][enter];
                if ratio < best_ratio - EPS
                    || ((ratio - best_ratio).abs() <= EPS
                        && leave.is_none_or(|l| basis[i] < basis[l]))
                {
                    best_ratio = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Err("unbounded linear program".into());
        };
        let pivot = t[leave][enter];
        for x in t[leave].iter_mut() {
            *x /= pivot;
        }
        for i in 0..=m {
            if i != leave && t[i][enter].abs() > 1e-15 {
                let factor = t[i][enter];
                let pivot_row = t[leave].clone();
                for (x, p) in t[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= factor * p;
                }
            }
        }
        basis[leave] = enter;
    }
    Err("simplex iteration budget exhausted".into())
}

/// Bundle alpha, alpha* and the clique list, checking the sandwich
/// inequality alpha <= alpha*.
pub fn bounds_report(g: &OrthogonalityGraph) -> Result<BoundReport, GraphError> {
    let independence = independence_number(g)?;
    let packing = fractional_packing_number(g)?;
    if (independence as f64) > packing + 1e-9 {
        return Err(GraphError::Lp(format!(
            "sandwich violated: alpha {independence} > alpha* {packing}"
        )));
    }
    Ok(BoundReport {
        independence_number: independence,
        fractional_packing: packing,
        maximal_cliques: maximal_cliques(g)?,
    })
}
