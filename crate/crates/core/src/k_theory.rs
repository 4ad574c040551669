//! `K0(L_K(C_n^j))` by independent routes that must agree, plus the
//! realization certificate for the four-vertex graphs `E_n`.
//!
//! For a purely infinite simple graph `E`, `K0(L_K(E))` is `Coker(I - A_E^t)`
//! and the class of the algebra's identity is the image of the all-ones
//! vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{cayley_adjacency, realization_graph, DirectedMultigraph, GraphError};
use crate::linalg::{
    determinant, CokernelPresentation, FinGenAbelianGroup, IntMatrix, LinalgError,
    SmithDecomposition,
};
use crate::sequences::{self, companion_matrix, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal inconsistency: {what} = {numerator} is not divisible by {denominator}")]
    InexactDivision {
        what: &'static str,
        numerator: BigInt,
        denominator: BigInt,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum K0Method {
    Full,
    Reduced,
    ClosedFormJ2,
    ClosedFormJ3,
}

impl K0Method {
    pub fn as_str(self) -> &'static str {
        match self {
            K0Method::Full => "full",
            K0Method::Reduced => "reduced",
            K0Method::ClosedFormJ2 => "closed_form_j2",
            K0Method::ClosedFormJ3 => "closed_form_j3",
        }
    }
}

impl fmt::Display for K0Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Result {
    pub group: FinGenAbelianGroup,
    pub method: K0Method,
    /// Smith decomposition behind the group, for the matrix routes.
    pub witnesses: Option<SmithDecomposition>,
}

impl K0Result {
    /// K0 JSON: `{"n", "j", "method", "torsion", "free_rank", "order"}`.
    /// `j` is `null` for arbitrary graphs.
    pub fn to_json(&self, n: usize, j: Option<usize>) -> Value {
        let torsion: Vec<Value> = self
            .group
            .torsion()
            .iter()
            .map(crate::graph::bigint_to_json)
            .collect();
        let order = match self.group.order() {
            Some(o) => crate::graph::bigint_to_json(&o),
            None => Value::String("infinite".into()),
        };
        json!({
            "n": n,
            "j": j,
            "method": self.method.as_str(),
            "torsion": torsion,
            "free_rank": self.group.free_rank(),
            "order": order,
        })
    }
}

fn check_cayley_params(n: usize, j: usize) -> Result<(), KTheoryError> {
    if n < 3 {
        return Err(KTheoryError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    if j > n {
        return Err(KTheoryError::InvalidParameter(format!(
            "j = {j} out of range 0..={n}"
        )));
    }
    Ok(())
}

fn exact_div(
    numerator: &BigInt,
    denominator: &BigInt,
    what: &'static str,
) -> Result<BigInt, KTheoryError> {
    if denominator.is_zero() || !numerator.is_multiple_of(denominator) {
        return Err(KTheoryError::InexactDivision {
            what,
            numerator: numerator.clone(),
            denominator: denominator.clone(),
        });
    }
    Ok(numerator / denominator)
}

fn matrix_route(m: &IntMatrix, method: K0Method) -> Result<K0Result, KTheoryError> {
    let (group, decomposition) = CokernelPresentation::new(m)?.into_parts();
    Ok(K0Result {
        group,
        method,
        witnesses: Some(decomposition),
    })
}

/// `Coker(I - A^t)` of an arbitrary finite graph.
pub fn k0_of_graph(g: &DirectedMultigraph) -> Result<K0Result, KTheoryError> {
    matrix_route(&g.k0_presentation(), K0Method::Full)
}

/// `I_n - A^t` for `C_n^j`.
pub fn cayley_k0_matrix(n: usize, j: usize) -> Result<IntMatrix, KTheoryError> {
    check_cayley_params(n, j)?;
    Ok(&IntMatrix::identity(n) - &cayley_adjacency(n, j).transpose())
}

/// Full route: Smith form of the `n x n` matrix `I_n - A^t`.
///
/// `j = n` is accepted and denotes the same graph as `j = 0`.
pub fn k0_full(n: usize, j: usize) -> Result<K0Result, KTheoryError> {
    matrix_route(&cayley_k0_matrix(n, j)?, K0Method::Full)
}

/// `M_j^n - I_j`.
pub fn reduced_matrix(n: usize, j: usize) -> Result<IntMatrix, KTheoryError> {
    if j < 2 || n < j {
        return Err(KTheoryError::InvalidParameter(format!(
            "reduced route needs 2 <= j <= n, got n = {n}, j = {j}"
        )));
    }
    let power = companion_matrix(j)?.pow(n as u64)?;
    Ok(&power - &IntMatrix::identity(j))
}

/// Reduced route: Smith form of the `j x j` matrix `M_j^n - I_j`.
pub fn k0_reduced(n: usize, j: usize) -> Result<K0Result, KTheoryError> {
    matrix_route(&reduced_matrix(n, j)?, K0Method::Reduced)
}

fn narayana_window(n: usize) -> Result<[BigInt; 5], KTheoryError> {
    let n = i64::try_from(n).map_err(|_| KTheoryError::InvalidParameter("n too large".into()))?;
    let g = |i| sequences::narayana(n + i);
    Ok([g(-3)?, g(-2)?, g(-1)?, g(0)?, g(1)?])
}

/// `d_3(n) = gcd(G(n-1), G(n-3), G(n-2) - 1)`.
pub fn d3(n: usize) -> Result<BigInt, KTheoryError> {
    if n == 0 {
        return Err(KTheoryError::InvalidParameter("n must be >= 1".into()));
    }
    let [g3, g2, g1, _, _] = narayana_window(n)?;
    Ok(g1.gcd(&g3).gcd(&(g2 - 1)))
}

/// `d'_3(n)`: gcd of
/// `G(n-1)G(n-3) - (G(n-2)-1)^2`,
/// `G(n)G(n-3) - G(n-1)(G(n-2)-1)` and
/// `G(n-1)^2 - G(n)(G(n-2)-1)`.
pub fn dprime3(n: usize) -> Result<BigInt, KTheoryError> {
    if n == 0 {
        return Err(KTheoryError::InvalidParameter("n must be >= 1".into()));
    }
    let [g3, g2, g1, g0, _] = narayana_window(n)?;
    let g2m: BigInt = &g2 - 1;
    let a = &g1 * &g3 - &g2m * &g2m;
    let b = &g0 * &g3 - &g1 * &g2m;
    let c = &g1 * &g1 - &g0 * &g2m;
    Ok(a.gcd(&b).gcd(&c))
}

/// `(M_3^n)^t - I_3` from the Narayana closed form of `M_3^n`.
pub fn m3_divisor_matrix(n: usize) -> Result<IntMatrix, KTheoryError> {
    let power = sequences::m3_power_closed_form(n as u64)?;
    Ok(&power.transpose() - &IntMatrix::identity(3))
}

/// `H_3(n)` as `|det((M_3^n)^t - I_3)|`: a 3x3 determinant of Narayana
/// numbers.
pub fn h3_via_narayana(n: usize) -> Result<BigInt, KTheoryError> {
    Ok(determinant(&m3_divisor_matrix(n)?)?.abs())
}

/// The three cyclic orders `(d_3, d'_3 / d_3, H_3 / d'_3)`.
pub fn j3_slots(n: usize) -> Result<[BigInt; 3], KTheoryError> {
    let d = d3(n)?;
    let dp = dprime3(n)?;
    let h = h3_via_narayana(n)?;
    Ok([
        d.clone(),
        exact_div(&dp, &d, "d'_3(n) / d_3(n)")?,
        exact_div(&h, &dp, "H_3(n) / d'_3(n)")?,
    ])
}

/// `K0(L_K(C_n^3)) = Z_{d_3} + Z_{d'_3/d_3} + Z_{H_3/d'_3}`.
pub fn k0_closed_form_j3(n: usize) -> Result<K0Result, KTheoryError> {
    if n < 3 {
        return Err(KTheoryError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    Ok(K0Result {
        group: FinGenAbelianGroup::from_cyclic_orders(j3_slots(n)?),
        method: K0Method::ClosedFormJ3,
        witnesses: None,
    })
}

/// `d_2(n) = gcd(F(n-1) - 1, F(n))`.
pub fn d2(n: usize) -> Result<BigInt, KTheoryError> {
    if n == 0 {
        return Err(KTheoryError::InvalidParameter("n must be >= 1".into()));
    }
    let n = n as i64;
    let a: BigInt = sequences::fibonacci(n - 1)? - 1;
    Ok(a.gcd(&sequences::fibonacci(n)?))
}

/// `K0(L_K(C_n^2)) = Z_{d_2} + Z_{H_2/d_2}`.
pub fn k0_closed_form_j2(n: usize) -> Result<K0Result, KTheoryError> {
    if n < 3 {
        return Err(KTheoryError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    let d = d2(n)?;
    let h = sequences::h2_closed_form(n as u64)?;
    let quotient = exact_div(&h, &d, "H_2(n) / d_2(n)")?;
    Ok(K0Result {
        group: FinGenAbelianGroup::from_cyclic_orders([d, quotient]),
        method: K0Method::ClosedFormJ2,
        witnesses: None,
    })
}

/// Every route that applies to `(n, j)`: the full route always, the reduced
/// route for `j >= 2`, and the closed form for `j = 2, 3`.
pub fn k0_all_routes(n: usize, j: usize) -> Result<Vec<K0Result>, KTheoryError> {
    let mut out = vec![k0_full(n, j)?];
    if j >= 2 {
        out.push(k0_reduced(n, j)?);
    }
    match j {
        2 => out.push(k0_closed_form_j2(n)?),
        3 => out.push(k0_closed_form_j3(n)?),
        _ => {}
    }
    Ok(out)
}

/// The matrices `P`, `Q`, `R` of the column reduction of `A - I_n` to
/// `M_j^n - I_j`: a cyclic shift, `-I` plus the superdiagonal, and the upper
/// triangle of ones.
pub fn reduction_matrices(j: usize) -> (IntMatrix, IntMatrix, IntMatrix) {
    let p = IntMatrix::from_fn(j, j, |r, c| u8::from(c == (r + 1) % j));
    let q = IntMatrix::from_fn(j, j, |r, c| {
        if r == c {
            -1i8
        } else {
            i8::from(c == r + 1)
        }
    });
    let r = IntMatrix::from_fn(j, j, |r, c| u8::from(c >= r));
    (p, q, r)
}

/// Checks `PR = M_j^(j-1)`, `QR = -I_j` and `(M_j^(n-j+1) P + Q) R = M_j^n - I_j`.
pub fn companion_reduction_identities(j: usize, n: usize) -> Result<bool, KTheoryError> {
    if j < 2 || n <= 2 * j {
        return Err(KTheoryError::InvalidParameter(format!(
            "need j >= 2 and n > 2j, got j = {j}, n = {n}"
        )));
    }
    let m = companion_matrix(j)?;
    let (p, q, r) = reduction_matrices(j);
    let identity = IntMatrix::identity(j);
    let pr = &p * &r;
    let qr = &q * &r;
    let bottom_right = &(&m.pow((n - j + 1) as u64)? * &p) + &q;
    Ok(pr == m.pow((j - 1) as u64)?
        && qr == -&identity
        && &bottom_right * &r == &m.pow(n as u64)? - &identity)
}

/// True iff the all-ones vector is zero in `Coker(I - A^t)`, i.e. the class
/// of the identity of `L_K(E)` vanishes in `K0`.
pub fn identity_element_check(g: &DirectedMultigraph) -> Result<bool, KTheoryError> {
    let ones = vec![BigInt::one(); g.n_vertices()];
    Ok(CokernelPresentation::new(&g.k0_presentation())?
        .class_of(&ones)?
        .is_zero())
}

/// The four-vertex graph `E_n` with loop counts
/// `2, 2 + d_3, 2 + d'_3/d_3, 2 + H_3/d'_3`.
pub fn realization_graph_j3(n: usize) -> Result<DirectedMultigraph, KTheoryError> {
    Ok(realization_graph(3, &j3_slots(n)?)?)
}

/// Hypotheses of the restricted algebraic Kirchberg-Phillips theorem for the
/// pair `(C_n^3, E_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPCertificate {
    pub groups_isomorphic: bool,
    pub identity_maps_to_identity: bool,
    pub determinant_signs_match: bool,
    /// `det(I_n - A^t)` for `C_n^3`.
    pub cayley_determinant: BigInt,
    /// `det(I_4 - A^t)` for `E_n`.
    pub realization_determinant: BigInt,
}

impl KPCertificate {
    pub fn is_valid(&self) -> bool {
        self.groups_isomorphic && self.identity_maps_to_identity && self.determinant_signs_match
    }
}

fn same_sign(a: &BigInt, b: &BigInt) -> bool {
    (!a.is_positive() && !b.is_positive()) || (!a.is_negative() && !b.is_negative())
}

/// Builds `E_n` and checks it against `C_n^3`: isomorphic `K0` groups, both
/// identity classes zero (so any isomorphism preserves them), and
/// `det(I - A^t)` of the same sign on both sides.
pub fn kp_certificate(n: usize) -> Result<KPCertificate, KTheoryError> {
    if n < 3 {
        return Err(KTheoryError::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    let cayley = DirectedMultigraph::from_adjacency(cayley_adjacency(n, 3 % n))?;
    let realization = realization_graph_j3(n)?;
    let cayley_k0 = k0_of_graph(&cayley)?;
    let realization_k0 = k0_of_graph(&realization)?;
    let cayley_determinant = determinant(&cayley.k0_presentation())?;
    let realization_determinant = determinant(&realization.k0_presentation())?;
    Ok(KPCertificate {
        groups_isomorphic: cayley_k0.group == realization_k0.group,
        identity_maps_to_identity: identity_element_check(&cayley)?
            && identity_element_check(&realization)?,
        determinant_signs_match: same_sign(&cayley_determinant, &realization_determinant),
        cayley_determinant,
        realization_determinant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cayley_graph, rose_graph};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn torsion(r: &K0Result) -> Vec<BigInt> {
        r.group.torsion().to_vec()
    }

    #[test]
    fn full_route_examples() {
        assert_eq!(torsion(&k0_full(4, 3).unwrap()), ints(&[3]));
        assert_eq!(torsion(&k0_full(7, 3).unwrap()), ints(&[2, 2, 2]));
        assert_eq!(torsion(&k0_full(30, 3).unwrap()), ints(&[31, 3069]));
        assert!(k0_full(2, 1).is_err());
        assert!(k0_full(4, 5).is_err());
    }

    #[test]
    fn reduced_route_examples() {
        assert_eq!(torsion(&k0_reduced(5, 3).unwrap()), ints(&[11]));
        assert_eq!(torsion(&k0_reduced(6, 3).unwrap()), ints(&[9]));
        assert!(k0_reduced(3, 3).unwrap().group.is_trivial());
        assert!(k0_reduced(5, 1).is_err());
        assert!(k0_reduced(2, 3).is_err());
    }

    #[test]
    fn d3_and_dprime3_rows() {
        let got: Vec<BigInt> = (1..=18).map(|n| d3(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 1, 1, 1, 1, 1, 2, 3, 1, 1, 1, 1, 1, 4, 1, 3, 1, 1]));
        let got: Vec<BigInt> = (1..=18).map(|n| dprime3(n).unwrap()).collect();
        assert_eq!(got, ints(&[1, 1, 1, 1, 1, 1, 4, 9, 1, 1, 1, 1, 1, 16, 1, 9, 1, 1]));
    }

    #[test]
    fn closed_form_j3_examples() {
        assert_eq!(torsion(&k0_closed_form_j3(7).unwrap()), ints(&[2, 2, 2]));
        assert_eq!(torsion(&k0_closed_form_j3(4).unwrap()), ints(&[3]));
        assert_eq!(torsion(&k0_closed_form_j3(30).unwrap()), ints(&[31, 3069]));
    }

    #[test]
    fn closed_form_j2_examples() {
        // d_2(3) = gcd(F(2) - 1, F(3)) = gcd(0, 2) = 2, H_2(3) = 4
        assert_eq!(d2(3).unwrap(), BigInt::from(2));
        let oracle = k0_full(3, 2).unwrap();
        assert_eq!(torsion(&oracle), ints(&[2, 2]));
        assert_eq!(k0_closed_form_j2(3).unwrap().group, oracle.group);
        // d_2(4) = gcd(1, 3) = 1, H_2(4) = 5
        assert_eq!(d2(4).unwrap(), BigInt::one());
        let oracle = k0_full(4, 2).unwrap();
        assert_eq!(torsion(&oracle), ints(&[5]));
        assert_eq!(k0_closed_form_j2(4).unwrap().group, oracle.group);
    }

    #[test]
    fn reduction_identities() {
        assert!(companion_reduction_identities(3, 10).unwrap());
        assert!(companion_reduction_identities(2, 7).unwrap());
        assert!(companion_reduction_identities(5, 12).unwrap());
        assert!(companion_reduction_identities(3, 6).is_err());
    }

    #[test]
    fn identity_classes() {
        assert!(identity_element_check(&cayley_graph(7, 3).unwrap()).unwrap());
        assert!(identity_element_check(&realization_graph_j3(7).unwrap()).unwrap());
        // Coker = Z_4 and the all-ones vector is the generator 1.
        assert!(!identity_element_check(&rose_graph(5).unwrap()).unwrap());
    }

    #[test]
    fn realization_graph_determinant_is_positive() {
        // I_4 - A^t = -(J + diag(0, a, b, c)) and det(J + diag(0, a, b, c)) = abc;
        // the negation is invisible in even dimension, so det = +H_3(n).
        for n in [3, 4, 7, 30] {
            let g = realization_graph_j3(n).unwrap();
            let det = determinant(&g.k0_presentation()).unwrap();
            assert_eq!(det, sequences::haselgrove(3, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn kp_certificate_flags() {
        for n in [4, 7, 30] {
            let cert = kp_certificate(n).unwrap();
            assert!(cert.groups_isomorphic, "n = {n}");
            assert!(cert.identity_maps_to_identity, "n = {n}");
            let h = sequences::haselgrove(3, n).unwrap();
            assert_eq!(cert.cayley_determinant, -h.clone());
            assert_eq!(cert.realization_determinant, h);
            assert!(!cert.determinant_signs_match);
            assert!(!cert.is_valid());
        }
    }

    #[test]
    fn json_schema() {
        let r = k0_full(30, 3).unwrap();
        assert_eq!(
            r.to_json(30, Some(3)).to_string(),
            r#"{"n":30,"j":3,"method":"full","torsion":[31,3069],"free_rank":0,"order":95139}"#
        );
        let r = k0_full(6, 5).unwrap();
        let v = r.to_json(6, Some(5));
        assert_eq!(v["order"], "infinite");
        assert!(v["free_rank"].as_u64().unwrap() >= 1);
    }
}
