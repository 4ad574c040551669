//! Finite directed multigraphs and the graphs the K-theory routes need:
//! Cayley graphs `C_n^j`, roses, and the `(j+1)`-vertex realization graphs.

mod json;
mod monoid;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

pub(crate) use json::bigint_to_json;
pub use monoid::{graph_monoid_enumerate, GraphMonoid, DEFAULT_MONOID_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("adjacency matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("negative edge multiplicity at ({row}, {col})")]
    NegativeMultiplicity { row: usize, col: usize },
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("monoid enumeration exceeded the budget of {cap} states")]
    BudgetExceeded { cap: usize },
}

/// A finite directed graph given by its edge-multiplicity matrix:
/// `adjacency[(i, j)]` edges run from vertex `i` to vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    adjacency: IntMatrix,
}

impl DirectedMultigraph {
    pub fn from_adjacency(adjacency: IntMatrix) -> Result<Self, GraphError> {
        if !adjacency.is_square() {
            return Err(GraphError::NotSquare {
                rows: adjacency.rows(),
                cols: adjacency.cols(),
            });
        }
        if adjacency.rows() == 0 {
            return Err(GraphError::Empty);
        }
        let n = adjacency.rows();
        for row in 0..n {
            for col in 0..n {
                if adjacency[(row, col)].is_negative() {
                    return Err(GraphError::NegativeMultiplicity { row, col });
                }
            }
        }
        Ok(Self { adjacency })
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> &BigInt {
        &self.adjacency[(from, to)]
    }

    pub fn out_degree(&self, v: usize) -> BigInt {
        self.adjacency.row(v).iter().sum()
    }

    /// The incidence matrix `A_E` as an integer matrix.
    pub fn incidence_matrix(&self) -> IntMatrix {
        self.adjacency.clone()
    }

    /// `I - A^t`, whose cokernel is `K0` of the graph's Leavitt path algebra
    /// in the purely infinite simple case.
    pub fn k0_presentation(&self) -> IntMatrix {
        let n = self.n_vertices();
        let at = self.adjacency.transpose();
        &IntMatrix::identity(n) - &at
    }

    fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_vertices()).filter(move |&w| !self.adjacency[(v, w)].is_zero())
    }

    /// `reach[v][w]`: a path of length >= 1 runs from `v` to `w`.
    fn strict_reachability(&self) -> Vec<Vec<bool>> {
        let n = self.n_vertices();
        (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                let mut queue: VecDeque<usize> = self.successors(start).collect();
                for &w in &queue {
                    seen[w] = true;
                }
                while let Some(v) = queue.pop_front() {
                    for w in self.successors(v) {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// True iff some cycle has no exit, i.e. a cycle runs through vertices
    /// each emitting exactly one edge.
    fn has_cycle_without_exit(&self) -> bool {
        let n = self.n_vertices();
        let unique_successor: Vec<Option<usize>> = (0..n)
            .map(|v| {
                if self.out_degree(v).is_one() {
                    self.successors(v).next()
                } else {
                    None
                }
            })
            .collect();
        (0..n).any(|start| {
            let mut v = start;
            for _ in 0..n {
                match unique_successor[v] {
                    Some(w) if w == start => return true,
                    Some(w) => v = w,
                    None => return false,
                }
            }
            false
        })
    }

    /// Finite-graph criterion for the Leavitt path algebra to be purely
    /// infinite simple: at least one cycle, every cycle has an exit, and
    /// every vertex connects to every cycle.
    pub fn is_purely_infinite_simple(&self) -> bool {
        let n = self.n_vertices();
        let reach = self.strict_reachability();
        let on_cycle: Vec<usize> = (0..n).filter(|&v| reach[v][v]).collect();
        if on_cycle.is_empty() || self.has_cycle_without_exit() {
            return false;
        }
        (0..n).all(|v| on_cycle.iter().all(|&c| v == c || reach[v][c]))
    }
}

/// Adjacency of `C_n^k` with `k` taken mod `n`; any `n >= 1`.
pub(crate) fn cayley_adjacency(n: usize, k: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, (i + 1) % n)] += 1;
        a[(i, (i + k) % n)] += 1;
    }
    a
}

/// The Cayley graph `C_n^j`: vertex `i` emits one edge to `i+1` and one to
/// `i+j` (mod `n`).
pub fn cayley_graph(n: usize, j: usize) -> Result<DirectedMultigraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    if j >= n {
        return Err(GraphError::InvalidParameter(format!(
            "j = {j} out of range 0..={}",
            n - 1
        )));
    }
    Ok(DirectedMultigraph {
        adjacency: cayley_adjacency(n, j),
    })
}

/// One vertex carrying `m` loops.
pub fn rose_graph(m: u64) -> Result<DirectedMultigraph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidParameter("rose needs m >= 1 petals".into()));
    }
    Ok(DirectedMultigraph {
        adjacency: IntMatrix::from_fn(1, 1, |_, _| m),
    })
}

/// The `(j+1)`-vertex graph with one edge between every ordered pair of
/// distinct vertices, 2 loops at the first vertex and `2 + factors[i]` loops
/// at vertex `i + 1`.
pub fn realization_graph(j: usize, factors: &[BigInt]) -> Result<DirectedMultigraph, GraphError> {
    if j < 2 {
        return Err(GraphError::InvalidParameter(format!("j = {j}, need j >= 2")));
    }
    if factors.len() != j {
        return Err(GraphError::InvalidParameter(format!(
            "expected {j} factors, got {}",
            factors.len()
        )));
    }
    if let Some(bad) = factors.iter().find(|f| *f < &BigInt::one()) {
        return Err(GraphError::InvalidParameter(format!("factor {bad} < 1")));
    }
    let two = BigInt::from(2);
    let adjacency = IntMatrix::from_fn(j + 1, j + 1, |r, c| match (r, c) {
        (0, 0) => two.clone(),
        (r, c) if r == c => &two + &factors[r - 1],
        _ => BigInt::one(),
    });
    Ok(DirectedMultigraph { adjacency })
}

/// Edge multiplicities as machine integers, for enumeration.
pub(crate) fn small_adjacency(g: &DirectedMultigraph) -> Option<Vec<Vec<u64>>> {
    let n = g.n_vertices();
    (0..n)
        .map(|i| (0..n).map(|j| g.multiplicity(i, j).to_u64()).collect())
        .collect()
}
