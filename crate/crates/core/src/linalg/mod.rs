//! Arbitrary-precision integer matrices: Smith normal form with transforms,
//! signed determinants, determinant divisors and cokernels.

mod cokernel;
mod det;
mod divisors;
mod matrix;
mod snf;
mod text;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use cokernel::{cokernel, cokernel_class, CokernelClass, CokernelPresentation, FinGenAbelianGroup};
pub use det::determinant;
pub use divisors::{
    determinant_divisors, first_determinant_divisor, snf_factors_via_divisors,
    MAX_MINOR_ENUMERATION_DIM,
};
pub use matrix::IntMatrix;
pub use snf::{snf, SmithDecomposition};
pub use text::{parse_matrix, write_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix has no entries")]
    Empty,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {actual}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor enumeration unsupported for dimension {dim} (max {max})")]
    UnsupportedSize { dim: usize, max: usize },
    #[error("determinant divisor alpha_{index} is zero")]
    ZeroDivisorChain { index: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Gcd over an iterator, normalized nonnegative. The empty gcd is 0.
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut acc = BigInt::zero();
    for v in values {
        acc = acc.gcd(v);
        if acc == BigInt::from(1) {
            break;
        }
    }
    acc.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_conventions() {
        let z = BigInt::zero();
        assert_eq!(gcd(&z, &z), z);
        assert_eq!(gcd(&BigInt::from(-4), &BigInt::from(6)), BigInt::from(2));
        assert_eq!(gcd_all(std::iter::empty()), z);
        let vals: Vec<BigInt> = [-9, 0, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(gcd_all(&vals), BigInt::from(3));
    }
}
