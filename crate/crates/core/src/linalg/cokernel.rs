use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{snf, IntMatrix, LinalgError, SmithDecomposition};

/// A finitely generated abelian group in invariant-factor form:
/// `Z_{t_1} + ... + Z_{t_k} + Z^r` with every `t_i >= 2` and `t_i | t_(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinGenAbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FinGenAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    /// From the diagonal of a Smith normal form: 1s are dropped, 0s become
    /// free summands. The input must already be a divisibility chain.
    pub fn from_invariant_factors<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a BigInt>,
    {
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for f in factors {
            if f.is_zero() {
                free_rank += 1;
            } else if !f.abs().is_one() {
                torsion.push(f.abs());
            }
        }
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        Self { torsion, free_rank }
    }

    /// Direct sum of cyclic groups `Z_{c}` for arbitrary orders `c`, brought
    /// into invariant-factor form. An order of 0 means `Z`.
    pub fn from_cyclic_orders<I>(orders: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut free_rank = 0;
        let mut finite = Vec::new();
        for c in orders {
            if c.is_zero() {
                free_rank += 1;
            } else {
                finite.push(c.abs());
            }
        }
        // Z_a + Z_b = Z_gcd + Z_lcm; one pass leaves a divisibility chain.
        for i in 0..finite.len() {
            for j in i + 1..finite.len() {
                let g = finite[i].gcd(&finite[j]);
                let l = finite[i].lcm(&finite[j]);
                finite[i] = g;
                finite[j] = l;
            }
        }
        finite.retain(|c| !c.is_one());
        Self {
            torsion: finite,
            free_rank,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FinGenAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z_{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Coordinates of `v + Im(M)` against the invariant-factor decomposition of
/// `Coker(M)`: one residue per torsion summand, one integer per free summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelClass {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl CokernelClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

/// A matrix together with its Smith decomposition, for repeated class
/// queries in the same cokernel.
#[derive(Debug, Clone)]
pub struct CokernelPresentation {
    decomposition: SmithDecomposition,
    group: FinGenAbelianGroup,
}

impl CokernelPresentation {
    pub fn new(m: &IntMatrix) -> Result<Self, LinalgError> {
        let decomposition = snf(m)?;
        let extra_free = m.rows().saturating_sub(m.cols());
        let zeros = vec![BigInt::zero(); extra_free];
        let group =
            FinGenAbelianGroup::from_invariant_factors(decomposition.factors.iter().chain(&zeros));
        Ok(Self {
            decomposition,
            group,
        })
    }

    pub fn group(&self) -> &FinGenAbelianGroup {
        &self.group
    }

    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.decomposition
    }

    pub fn into_parts(self) -> (FinGenAbelianGroup, SmithDecomposition) {
        (self.group, self.decomposition)
    }

    pub fn class_of(&self, v: &[BigInt]) -> Result<CokernelClass, LinalgError> {
        let u = &self.decomposition.u;
        if v.len() != u.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} for a cokernel of Z^{}",
                v.len(),
                u.cols()
            )));
        }
        // Im(UMV) = U Im(M), so v + Im(M) maps to Uv + Im(S).
        let w = u.mul_vec(v)?;
        let factors = &self.decomposition.factors;
        let mut class = CokernelClass {
            torsion: Vec::new(),
            free: Vec::new(),
        };
        for (i, coord) in w.into_iter().enumerate() {
            match factors.get(i) {
                Some(s) if s.is_one() => {}
                Some(s) if !s.is_zero() => class.torsion.push(coord.mod_floor(s)),
                _ => class.free.push(coord),
            }
        }
        Ok(class)
    }
}

/// `Coker(M) = Z^rows / Im(M)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> Result<FinGenAbelianGroup, LinalgError> {
    Ok(CokernelPresentation::new(m)?.group)
}

/// Class of `v` in `Coker(M)`.
pub fn cokernel_class(m: &IntMatrix, v: &[BigInt]) -> Result<CokernelClass, LinalgError> {
    CokernelPresentation::new(m)?.class_of(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_matrix_is_free() {
        let g = cokernel(&IntMatrix::zeros(2, 2)).unwrap();
        assert!(g.torsion().is_empty());
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "Z^2");
    }

    #[test]
    fn rose_graph_cokernel() {
        let m = 5;
        let g = cokernel(&IntMatrix::from_rows(&[[1 - m]]).unwrap()).unwrap();
        assert_eq!(g.torsion(), ints(&[4]).as_slice());
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.order(), Some(BigInt::from(4)));
    }

    #[test]
    fn rectangular_free_rank_counts_target_rows() {
        // Z^3 / <(2,0,0), (0,3,0)> = Z_6 + Z
        let m = IntMatrix::from_rows(&[[2i64, 0], [0, 3], [0, 0]]).unwrap();
        let g = cokernel(&m).unwrap();
        assert_eq!(g.torsion(), ints(&[6]).as_slice());
        assert_eq!(g.free_rank(), 1);
        // Z^2 / <(2,0), (0,3), (1,1)> is trivial
        let m = IntMatrix::from_rows(&[[2i64, 0, 1], [0, 3, 1]]).unwrap();
        assert!(cokernel(&m).unwrap().is_trivial());
    }

    #[test]
    fn cyclic_orders_canonicalize() {
        let g = FinGenAbelianGroup::from_cyclic_orders(ints(&[4, 6, 1, 0]));
        assert_eq!(g.torsion(), ints(&[2, 12]).as_slice());
        assert_eq!(g.free_rank(), 1);
        let g = FinGenAbelianGroup::from_cyclic_orders(ints(&[3, 1, 31 * 99]));
        assert_eq!(g.torsion(), ints(&[3, 3069]).as_slice());
        assert!(FinGenAbelianGroup::from_cyclic_orders(ints(&[1, 1])).is_trivial());
        assert_eq!(FinGenAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn image_elements_have_zero_class() {
        let m = IntMatrix::from_rows(&[[2i64, 4], [6, 8]]).unwrap();
        let p = CokernelPresentation::new(&m).unwrap();
        for j in 0..2 {
            let col: Vec<BigInt> = (0..2).map(|i| m[(i, j)].clone()).collect();
            assert!(p.class_of(&col).unwrap().is_zero());
        }
        assert!(!p.class_of(&ints(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn rose_generator_class() {
        let m = IntMatrix::from_rows(&[[-4i64]]).unwrap();
        let c = cokernel_class(&m, &ints(&[1])).unwrap();
        assert_eq!(c.torsion, ints(&[1]));
        assert!(c.free.is_empty());
        let c = cokernel_class(&m, &ints(&[9])).unwrap();
        assert_eq!(c.torsion, ints(&[1]));
        assert!(cokernel_class(&m, &ints(&[1, 2])).is_err());
    }
}
