//! Exact computation of the Grothendieck group `K0` of Leavitt path algebras
//! of the Cayley graphs `C_n^j`.
//!
//! For a finite graph `E` whose Leavitt path algebra is purely infinite
//! simple, `K0(L_K(E))` is the cokernel of `I - A_E^t`. This crate computes
//! that cokernel three ways and checks the routes against each other:
//!
//! * [`k_theory::k0_full`]: Smith normal form of the full `n x n` matrix.
//! * [`k_theory::k0_reduced`]: Smith normal form of `M_j^n - I_j`, where
//!   `M_j` is the companion matrix of `x^j - x^(j-1) - 1`.
//! * [`k_theory::k0_closed_form_j2`] / [`k_theory::k0_closed_form_j3`]:
//!   gcd formulas over Fibonacci and Narayana's Cows numbers.
//!
//! All arithmetic is exact ([`num_bigint::BigInt`]).

pub mod graph;
pub mod k_theory;
pub mod linalg;
pub mod sequences;

pub use graph::{DirectedMultigraph, GraphError, GraphMonoid};
pub use k_theory::{K0Method, K0Result, KPCertificate, KTheoryError};
pub use linalg::{FinGenAbelianGroup, IntMatrix, LinalgError, SmithDecomposition};
pub use sequences::{SequenceCache, SequenceError};
