//! Smith normal form with unimodular transforms.
//!
//! Pivoting: the nonzero entry of least absolute value in the active
//! submatrix becomes the pivot. Its row and column are cleared by Euclidean
//! steps; any nonzero remainder restarts the search with a strictly smaller
//! pivot. Once the cross is clear, an entry not divisible by the pivot has its
//! row folded into the pivot row and the search restarts. The pivot magnitude
//! strictly decreases on every restart, so the loop terminates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, LinalgError};

/// `U * M * V = S` with `U`, `V` unimodular and `S` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `S`: nonnegative, each nonzero entry divides the next,
    /// zeros last. Leading 1s are kept.
    pub factors: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.factors.iter().take_while(|f| !f.is_zero()).count()
    }
}

struct Reducer {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.s.add_row_multiple(dst, src, factor);
        self.u.add_row_multiple(dst, src, factor);
    }

    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        self.s.add_col_multiple(dst, src, factor);
        self.v.add_col_multiple(dst, src, factor);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let e = &self.s[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, b)) => e.magnitude() < b.magnitude(),
                };
                if better {
                    if e.magnitude() == &1u32.into() {
                        return Some((i, j));
                    }
                    best = Some(((i, j), e));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clears row and column `t` below/right of the pivot. Returns false if a
    /// nonzero remainder was left behind.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.s.rows() {
            if self.s[(i, t)].is_zero() {
                continue;
            }
            let q = self.s[(i, t)].div_floor(&self.s[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= self.s[(i, t)].is_zero();
        }
        for j in t + 1..self.s.cols() {
            if self.s[(t, j)].is_zero() {
                continue;
            }
            let q = self.s[(t, j)].div_floor(&self.s[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= self.s[(t, j)].is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.s[(t, t)];
        (t + 1..self.s.rows()).find(|&i| {
            (t + 1..self.s.cols()).any(|j| !self.s[(i, j)].is_multiple_of(p))
        })
    }

    fn run(mut self) -> SmithDecomposition {
        let bound = self.s.rows().min(self.s.cols());
        for t in 0..bound {
            while let Some((pi, pj)) = self.min_entry(t) {
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if !self.clear_cross(t) {
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.s[(t, t)].is_negative() {
                self.s.negate_col(t);
                self.v.negate_col(t);
            }
        }
        let factors = self.s.diagonal_entries();
        SmithDecomposition {
            u: self.u,
            s: self.s,
            v: self.v,
            factors,
        }
    }
}

/// Smith normal form of `m` together with the transforms.
pub fn snf(m: &IntMatrix) -> Result<SmithDecomposition, LinalgError> {
    if m.is_empty() {
        return Err(LinalgError::Empty);
    }
    Ok(Reducer {
        s: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    }
    .run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let d = snf(m).unwrap();
        assert_eq!(&(&d.u * m) * &d.v, d.s);
        assert!(d.s.is_diagonal());
        assert_eq!(determinant(&d.u).unwrap().abs(), BigInt::from(1));
        assert_eq!(determinant(&d.v).unwrap().abs(), BigInt::from(1));
        d
    }

    #[test]
    fn identity() {
        let d = check(&IntMatrix::identity(2));
        assert_eq!(d.factors, ints(&[1, 1]));
    }

    #[test]
    fn two_by_two() {
        // alpha_1 = gcd(2,4,6,8) = 2, alpha_2 = |det| = 8, so s = (2, 8/2)
        let d = check(&IntMatrix::from_rows(&[[2i64, 4], [6, 8]]).unwrap());
        assert_eq!(d.factors, ints(&[2, 4]));
    }

    #[test]
    fn rose_graph_one_by_one() {
        let m = 5i64;
        let d = check(&IntMatrix::from_rows(&[[1 - m]]).unwrap());
        assert_eq!(d.factors, ints(&[m - 1]));
    }

    #[test]
    fn rectangular_and_zero() {
        let d = check(&IntMatrix::from_rows(&[[2i64, 0, 0], [0, 3, 0]]).unwrap());
        assert_eq!(d.factors, ints(&[1, 6]));
        let d = check(&IntMatrix::zeros(3, 2));
        assert_eq!(d.factors, ints(&[0, 0]));
        assert_eq!(d.rank(), 0);
        let d = check(&IntMatrix::from_rows(&[[0i64, 0], [0, 7], [0, 0]]).unwrap());
        assert_eq!(d.factors, ints(&[7, 0]));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is diagonal but not Smith form.
        let d = check(&IntMatrix::from_rows(&[[2i64, 0], [0, 3]]).unwrap());
        assert_eq!(d.factors, ints(&[1, 6]));
        let d = check(&IntMatrix::from_rows(&[[4i64, 0, 0], [0, 6, 0], [0, 0, 10]]).unwrap());
        assert_eq!(d.factors, ints(&[2, 2, 60]));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(snf(&IntMatrix::zeros(0, 0)).unwrap_err(), LinalgError::Empty);
    }
}
