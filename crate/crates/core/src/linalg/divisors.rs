use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, gcd_all, IntMatrix, LinalgError};

/// Largest dimension for which all minors are enumerated.
pub const MAX_MINOR_ENUMERATION_DIM: usize = 8;

/// All k-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

fn require_square(m: &IntMatrix) -> Result<usize, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.rows())
}

/// `alpha_1`: the gcd of all entries. Available at any size.
pub fn first_determinant_divisor(m: &IntMatrix) -> BigInt {
    gcd_all(m.entries())
}

/// Determinant divisors `[alpha_0, alpha_1, ..., alpha_n]` of a square
/// matrix, where `alpha_i` is the gcd of all `i x i` minors and
/// `alpha_0 = 1`.
///
/// Enumerates minors, so only dimensions up to
/// [`MAX_MINOR_ENUMERATION_DIM`] are accepted. For larger matrices use
/// [`first_determinant_divisor`] and [`determinant`].
pub fn determinant_divisors(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let n = require_square(m)?;
    if n > MAX_MINOR_ENUMERATION_DIM {
        return Err(LinalgError::UnsupportedSize {
            dim: n,
            max: MAX_MINOR_ENUMERATION_DIM,
        });
    }
    let mut alphas = vec![BigInt::one()];
    for k in 1..=n {
        let alpha = if k == 1 {
            first_determinant_divisor(m)
        } else if k == n {
            determinant(m)?.abs()
        } else {
            let index_sets = subsets(n, k);
            let mut acc = BigInt::zero();
            'outer: for rows in &index_sets {
                for cols in &index_sets {
                    let minor = determinant(&m.select(rows, cols))?;
                    acc = acc.gcd(&minor);
                    if acc.is_one() {
                        break 'outer;
                    }
                }
            }
            acc
        };
        alphas.push(alpha);
    }
    Ok(alphas)
}

/// Invariant factors as ratios `alpha_i / alpha_(i-1)`.
///
/// Only valid when every determinant divisor is nonzero; otherwise
/// [`LinalgError::ZeroDivisorChain`] names the first vanishing index.
pub fn snf_factors_via_divisors(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let alphas = determinant_divisors(m)?;
    if let Some(index) = alphas.iter().position(Zero::is_zero) {
        return Err(LinalgError::ZeroDivisorChain { index });
    }
    Ok(alphas.windows(2).map(|w| &w[1] / &w[0]).collect())
}
