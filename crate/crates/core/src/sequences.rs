//! Integer sequences behind the closed forms: Narayana's Cows `G`,
//! Fibonacci `F`, the Haselgrove numbers `H_k(n)`, and the companion
//! matrices `M_j` of `x^j - x^(j-1) - 1`.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::cayley_adjacency;
use crate::linalg::{determinant, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("index {index} below the first defined index {min}")]
    IndexTooSmall { index: i64, min: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// `G(-3), G(-2), G(-1)`; the recurrence `G(n) = G(n-1) + G(n-3)` holds from
/// `n = 0` on.
const NARAYANA_SEED: [i64; 3] = [0, 1, 0];
const NARAYANA_MIN: i64 = -3;

fn extend_narayana(values: &mut Vec<BigInt>, n: i64) {
    if values.is_empty() {
        values.extend(NARAYANA_SEED.iter().map(|&v| BigInt::from(v)));
    }
    let needed = (n - NARAYANA_MIN) as usize + 1;
    while values.len() < needed {
        let len = values.len();
        let next = &values[len - 1] + &values[len - 3];
        values.push(next);
    }
}

fn extend_fibonacci(values: &mut Vec<BigInt>, n: usize) {
    if values.is_empty() {
        values.push(BigInt::zero());
        values.push(BigInt::one());
    }
    while values.len() <= n {
        let len = values.len();
        let next = &values[len - 1] + &values[len - 2];
        values.push(next);
    }
}

/// Memo tables shared across a sweep. Safe to use from several threads.
#[derive(Debug, Default)]
pub struct SequenceCache {
    narayana: Mutex<Vec<BigInt>>,
    fibonacci: Mutex<Vec<BigInt>>,
    haselgrove: Mutex<HashMap<(usize, usize), BigInt>>,
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn narayana(&self, n: i64) -> Result<BigInt, SequenceError> {
        if n < NARAYANA_MIN {
            return Err(SequenceError::IndexTooSmall {
                index: n,
                min: NARAYANA_MIN,
            });
        }
        let mut values = self.narayana.lock().expect("poisoned");
        extend_narayana(&mut values, n);
        Ok(values[(n - NARAYANA_MIN) as usize].clone())
    }

    pub fn fibonacci(&self, n: i64) -> Result<BigInt, SequenceError> {
        if n < 0 {
            return Err(SequenceError::IndexTooSmall { index: n, min: 0 });
        }
        let mut values = self.fibonacci.lock().expect("poisoned");
        extend_fibonacci(&mut values, n as usize);
        Ok(values[n as usize].clone())
    }

    pub fn haselgrove(&self, k: usize, n: usize) -> Result<BigInt, SequenceError> {
        if n == 0 {
            return Err(SequenceError::InvalidParameter("n must be >= 1".into()));
        }
        let key = (k % n, n);
        if let Some(h) = self.haselgrove.lock().expect("poisoned").get(&key) {
            return Ok(h.clone());
        }
        let h = haselgrove(k, n)?;
        self.haselgrove
            .lock()
            .expect("poisoned")
            .insert(key, h.clone());
        Ok(h)
    }
}

/// Narayana's Cows number `G(n)` for `n >= -3`:
/// `G(1) = G(2) = G(3) = 1`, `G(n) = G(n-1) + G(n-3)`, extended backwards
/// by `G(0) = G(-1) = G(-3) = 0`, `G(-2) = 1`.
pub fn narayana(n: i64) -> Result<BigInt, SequenceError> {
    if n < NARAYANA_MIN {
        return Err(SequenceError::IndexTooSmall {
            index: n,
            min: NARAYANA_MIN,
        });
    }
    let mut values = Vec::new();
    extend_narayana(&mut values, n);
    Ok(values.swap_remove((n - NARAYANA_MIN) as usize))
}

/// Fibonacci number `F(n)`, `F(0) = 0`, `F(1) = 1`.
pub fn fibonacci(n: i64) -> Result<BigInt, SequenceError> {
    if n < 0 {
        return Err(SequenceError::IndexTooSmall { index: n, min: 0 });
    }
    let mut values = Vec::new();
    extend_fibonacci(&mut values, n as usize);
    Ok(values.swap_remove(n as usize))
}

/// Companion matrix of `x^j - x^(j-1) - 1`: ones on the subdiagonal and last
/// column `(1, 0, ..., 0, 1)^t`.
pub fn companion_matrix(j: usize) -> Result<IntMatrix, SequenceError> {
    if j < 2 {
        return Err(SequenceError::InvalidParameter(format!("j = {j}, need j >= 2")));
    }
    Ok(IntMatrix::from_fn(j, j, |r, c| {
        let hit = r == c + 1 || (c == j - 1 && (r == 0 || r == j - 1));
        u8::from(hit)
    }))
}

/// `M_3^n` written with Narayana's Cows numbers:
///
/// ```text
/// G(n-2) G(n-1) G(n)
/// G(n-3) G(n-2) G(n-1)
/// G(n-1) G(n)   G(n+1)
/// ```
pub fn m3_power_closed_form(n: u64) -> Result<IntMatrix, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidParameter("n must be >= 1".into()));
    }
    let n = i64::try_from(n).map_err(|_| SequenceError::InvalidParameter("n too large".into()))?;
    let mut values = Vec::new();
    extend_narayana(&mut values, n + 1);
    let g = |i: i64| values[(i - NARAYANA_MIN) as usize].clone();
    let offsets = [[-2, -1, 0], [-3, -2, -1], [-1, 0, 1]];
    Ok(IntMatrix::from_fn(3, 3, |r, c| g(n + offsets[r][c])))
}

/// `I_n - A^t` for `C_n^k`, `k` taken mod `n`; any `n >= 1`.
pub(crate) fn haselgrove_matrix(k: usize, n: usize) -> IntMatrix {
    &IntMatrix::identity(n) - &cayley_adjacency(n, k).transpose()
}

/// Signed `det(I_n - A^t)` for `C_n^k`, the integer `a_k(n)`.
pub fn haselgrove_signed(k: usize, n: usize) -> Result<BigInt, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidParameter("n must be >= 1".into()));
    }
    Ok(determinant(&haselgrove_matrix(k, n)).expect("square by construction"))
}

/// Haselgrove number `H_k(n) = |det(I_n - A^t)|` for `C_n^k`, exact.
///
/// `k >= n` is read as `k mod n`, since `C_n^k` only depends on `k mod n`.
pub fn haselgrove(k: usize, n: usize) -> Result<BigInt, SequenceError> {
    haselgrove_signed(k, n).map(|d| d.abs())
}

/// `|prod_l (1 - w_l - w_l^k)|` over the `n`-th roots of unity, in double
/// precision. Loses relative accuracy as `n` grows; only a cross-check.
pub fn haselgrove_float(k: usize, n: usize) -> f64 {
    let n64 = n as f64;
    (0..n)
        .map(|l| {
            let w = Complex64::from_polar(1.0, TAU * l as f64 / n64);
            let wk = Complex64::from_polar(1.0, TAU * ((l * k) % n) as f64 / n64);
            Complex64::new(1.0, 0.0) - w - wk
        })
        .product::<Complex64>()
        .norm()
}

/// `H_k(n) = 0` exactly when `k = 5 (mod 6)` and `n = 0 (mod 6)`.
pub fn haselgrove_is_zero(k: usize, n: usize) -> bool {
    k % 6 == 5 && n.is_multiple_of(6)
}

/// `H_2(n) = F(n+1) + F(n-1) - 1 - (-1)^n`.
pub fn h2_closed_form(n: u64) -> Result<BigInt, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidParameter("n must be >= 1".into()));
    }
    let n = n as i64;
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(fibonacci(n + 1)? + fibonacci(n - 1)? - BigInt::one() - sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn narayana_values() {
        let got: Vec<BigInt> = (1..=15).map(|n| narayana(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60, 88, 129]));
        assert_eq!(narayana(0).unwrap(), BigInt::zero());
        assert_eq!(narayana(-2).unwrap(), BigInt::one());
        let tail: Vec<BigInt> = (-3..=0).map(|n| narayana(n).unwrap()).collect();
        assert_eq!(tail, ints(&[0, 1, 0, 0]));
        assert!(narayana(-4).is_err());
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0).unwrap(), BigInt::zero());
        assert_eq!(fibonacci(10).unwrap(), BigInt::from(55));
        assert!(fibonacci(-1).is_err());
        let (a, b, c) = (fibonacci(8).unwrap(), fibonacci(7).unwrap(), fibonacci(6).unwrap());
        assert_eq!(&a * &c - &b * &b, BigInt::from(-1));
    }

    #[test]
    fn cache_matches_direct() {
        let cache = SequenceCache::new();
        for n in [40, -3, 7, 100, 0] {
            assert_eq!(cache.narayana(n).unwrap(), narayana(n).unwrap());
        }
        for n in [90, 3, 0] {
            assert_eq!(cache.fibonacci(n).unwrap(), fibonacci(n).unwrap());
        }
        assert_eq!(cache.haselgrove(3, 5).unwrap(), BigInt::from(11));
        assert_eq!(cache.haselgrove(8, 5).unwrap(), BigInt::from(11));
        assert!(cache.narayana(-5).is_err());
    }

    #[test]
    fn companion_layout() {
        assert_eq!(companion_matrix(2).unwrap(), IntMatrix::from_rows(&[[0i64, 1], [1, 1]]).unwrap());
        assert_eq!(
            companion_matrix(3).unwrap(),
            IntMatrix::from_rows(&[[0i64, 0, 1], [1, 0, 0], [0, 1, 1]]).unwrap()
        );
        assert!(companion_matrix(1).is_err());
    }

    #[test]
    fn m3_closed_form_small() {
        assert_eq!(m3_power_closed_form(1).unwrap(), companion_matrix(3).unwrap());
        assert_eq!(
            m3_power_closed_form(4).unwrap(),
            IntMatrix::from_rows(&[[1i64, 1, 2], [1, 1, 1], [1, 2, 3]]).unwrap()
        );
        assert!(m3_power_closed_form(0).is_err());
    }

    #[test]
    fn m3_closed_form_n5_against_binary_power() {
        let oracle = companion_matrix(3).unwrap().pow(5).unwrap();
        assert_eq!(oracle, IntMatrix::from_rows(&[[1i64, 2, 3], [1, 1, 2], [2, 3, 4]]).unwrap());
        assert_eq!(m3_power_closed_form(5).unwrap(), oracle);
        assert_eq!(
            m3_power_closed_form(6).unwrap(),
            IntMatrix::from_rows(&[[2i64, 3, 4], [1, 2, 3], [3, 4, 6]]).unwrap()
        );
    }

    #[test]
    fn haselgrove_three_row() {
        let got: Vec<BigInt> = (1..=15).map(|n| haselgrove(3, n).unwrap()).collect();
        assert_eq!(
            got,
            ints(&[1, 3, 1, 3, 11, 9, 8, 27, 37, 33, 67, 117, 131, 192, 341])
        );
        assert_eq!(haselgrove(5, 6).unwrap(), BigInt::zero());
        assert_eq!(haselgrove_signed(3, 5).unwrap(), BigInt::from(-11));
        assert!(haselgrove(0, 0).is_err());
    }

    #[test]
    fn h2_matches_determinant() {
        assert_eq!(h2_closed_form(3).unwrap(), BigInt::from(4));
        assert_eq!(h2_closed_form(1).unwrap(), BigInt::one());
        assert_eq!(haselgrove(2, 3).unwrap(), BigInt::from(4));
        for n in 1..=30 {
            assert_eq!(h2_closed_form(n).unwrap(), haselgrove(2, n as usize).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn float_cross_check() {
        assert!((haselgrove_float(3, 5) - 11.0).abs() < 1e-9);
        assert!(haselgrove_float(5, 6) < 1e-9);
        assert!((haselgrove_float(0, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_locus_rule() {
        assert!(haselgrove_is_zero(5, 6));
        assert!(!haselgrove_is_zero(3, 6));
        assert!(haselgrove_is_zero(11, 12));
        assert_eq!(haselgrove(3, 6).unwrap(), BigInt::from(9));
    }
}
