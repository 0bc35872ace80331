//! Certificates that replay the linear-algebra bound on a concrete binary
//! single-distance family.
//!
//! Row `i` of the signed incidence matrix `M` is `+1` on the coordinates in
//! member `i` and `-1` elsewhere, so `<v_i, v_j> = n - 2 d(F_i, F_j)`. For an
//! equidistant family the Gram matrix `M M^T` is therefore
//! `(n - 2λ) J + 2λ I`, whose determinant has a closed form. A nonzero
//! determinant gives `m = rank(M M^T) <= rank(M) <= n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{check_equidistant, Family};
use crate::linalg::{
    det_exact, is_positive_definite_structured, rank_exact, structured_det, ExactMatrix,
    StructuredMatrixSpec,
};

/// The `m x n` matrix of `±1` signed characteristic vectors.
pub fn signed_incidence_matrix(f: &Family) -> Result<ExactMatrix> {
    if f.q() != 2 {
        return Err(Error::UnsupportedAlphabet { q: f.q() });
    }
    Ok(ExactMatrix::from_fn(f.len(), f.n(), |i, j| {
        BigInt::from(if f.member(i)[j] == 1 { 1 } else { -1 })
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Nonzero Gram determinant; `m <= n` follows from the rank chain.
    BoundNProven,
    /// Gram determinant vanishes; only possible at `λ = (n+1)/2`.
    ExceptionalInconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramCertificate {
    pub m: usize,
    pub n: usize,
    pub lambda: usize,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub det_value: BigInt,
    pub rank_value: usize,
    pub pd: bool,
    pub gram_matches_structure: bool,
    pub conclusion: Conclusion,
}

/// Gram structure `(n - 2λ) J_m + 2λ I_m`.
pub fn gram_structure(n: usize, lambda: usize, m: usize) -> Result<StructuredMatrixSpec> {
    StructuredMatrixSpec::new(n as i64 - 2 * lambda as i64, 2 * lambda as i64, m)
}

/// Builds and cross-checks the Gram certificate for a binary equidistant
/// family. Fails on non-equidistant input with the violating pair.
pub fn gram_certificate(f: &Family) -> Result<GramCertificate> {
    if f.q() != 2 {
        return Err(Error::UnsupportedAlphabet { q: f.q() });
    }
    let lambda = check_equidistant(f)?.lambda;
    let (m, n) = (f.len(), f.n());

    let signed = signed_incidence_matrix(f)?;
    let gram = signed.gram();
    let spec = gram_structure(n, lambda, m)?;
    let gram_matches_structure = gram == spec.materialize();

    let det_value = structured_det(&spec);
    let det_direct = det_exact(&gram)?;
    if gram_matches_structure && det_direct != det_value {
        return Err(Error::Invariant(format!(
            "Bareiss determinant {det_direct} disagrees with closed form {det_value}"
        )));
    }
    let rank_value = rank_exact(&gram);
    let pd = is_positive_definite_structured(&spec);

    let conclusion = if det_value.is_zero() {
        Conclusion::ExceptionalInconclusive
    } else {
        Conclusion::BoundNProven
    };
    match conclusion {
        Conclusion::BoundNProven if rank_value != m || m > n => {
            return Err(Error::Invariant(format!(
                "nonzero determinant but rank {rank_value}, m = {m}, n = {n}"
            )));
        }
        Conclusion::ExceptionalInconclusive if 2 * lambda + m * n != 2 * lambda * m => {
            return Err(Error::Invariant(format!(
                "zero determinant with 2λ + m(n - 2λ) != 0 (λ = {lambda}, m = {m}, n = {n})"
            )));
        }
        _ => {}
    }

    Ok(GramCertificate {
        m,
        n,
        lambda,
        det_value,
        rank_value,
        pd,
        gram_matches_structure,
        conclusion,
    })
}

/// Coefficients `μ_1..μ_m` of a linear combination of signed vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    pub mu: Vec<BigRational>,
}

impl CoefficientVector {
    pub fn from_integers(mu: &[i64]) -> Self {
        CoefficientVector {
            mu: mu.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    /// Rationals given as `(numerator, denominator)` pairs.
    pub fn from_pairs(mu: &[(i64, i64)]) -> Result<Self> {
        mu.iter()
            .map(|&(p, q)| {
                if q == 0 {
                    Err(Error::invalid("zero denominator in coefficient"))
                } else {
                    Ok(BigRational::new(p.into(), q.into()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(|mu| CoefficientVector { mu })
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().all(Zero::is_zero)
    }
}

/// `|Σ μ_i v_i|^2` for the signed vectors `v_i` of an equidistant binary
/// family with `λ <= n/2`.
///
/// The value is computed from the summed vector and again from the closed
/// form `2λ Σμ_i² + (n - 2λ)(Σμ_i)²`; the two must agree exactly.
pub fn quadratic_form_value(f: &Family, mu: &CoefficientVector) -> Result<BigRational> {
    if f.q() != 2 {
        return Err(Error::UnsupportedAlphabet { q: f.q() });
    }
    let lambda = check_equidistant(f)?.lambda;
    let n = f.n();
    if 2 * lambda > n {
        return Err(Error::OutOfRegime(format!(
            "λ = {lambda} exceeds n/2 = {n}/2"
        )));
    }
    if mu.len() != f.len() {
        return Err(Error::invalid(format!(
            "{} coefficients for a family of {} members",
            mu.len(),
            f.len()
        )));
    }

    let mut summed = vec![BigRational::zero(); n];
    for (word, c) in f.members().iter().zip(&mu.mu) {
        for (acc, &s) in summed.iter_mut().zip(word) {
            if s == 1 {
                *acc += c;
            } else {
                *acc -= c;
            }
        }
    }
    let direct: BigRational = summed.iter().map(|x| x * x).sum();

    let sum_sq: BigRational = mu.mu.iter().map(|x| x * x).sum();
    let sum: BigRational = mu.mu.iter().sum();
    let two_lambda = BigRational::from_integer(BigInt::from(2 * lambda));
    let offdiag = BigRational::from_integer(BigInt::from(n as i64 - 2 * lambda as i64));
    let closed = two_lambda * sum_sq + offdiag * &sum * &sum;

    if direct != closed {
        return Err(Error::Invariant(format!(
            "direct inner product {direct} differs from closed form {closed}"
        )));
    }
    if !mu.is_zero() && !direct.is_positive() {
        return Err(Error::Invariant(format!(
            "nonzero coefficients gave non-positive norm {direct}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_exact;

    fn fam(n: usize, words: &[&str]) -> Family {
        let members = words
            .iter()
            .map(|w| w.bytes().map(|b| b - b'0').collect())
            .collect();
        Family::new(n, 2, members).unwrap()
    }

    fn hadamard4() -> Family {
        // 0/1 rows of the order-4 Sylvester matrix.
        fam(4, &["1111", "1010", "1100", "1001"])
    }

    #[test]
    fn signed_matrix_examples() {
        let m = signed_incidence_matrix(&fam(2, &["00"])).unwrap();
        assert_eq!(m, ExactMatrix::from_rows(&[vec![-1, -1]]).unwrap());

        let m = signed_incidence_matrix(&fam(3, &["000", "110", "101", "011"])).unwrap();
        let sums: Vec<BigInt> = (0..4).map(|i| m.row(i).iter().sum()).collect();
        assert_eq!(sums, vec![(-3).into(), 1.into(), 1.into(), 1.into()]);

        let m = signed_incidence_matrix(&fam(3, &["111"])).unwrap();
        assert_eq!(m, ExactMatrix::from_rows(&[vec![1, 1, 1]]).unwrap());

        let ternary = Family::new(2, 3, vec![vec![0, 2]]).unwrap();
        assert_eq!(
            signed_incidence_matrix(&ternary),
            Err(Error::UnsupportedAlphabet { q: 3 })
        );
    }

    #[test]
    fn certificate_hadamard4() {
        let c = gram_certificate(&hadamard4()).unwrap();
        assert_eq!((c.m, c.n, c.lambda), (4, 4, 2));
        assert_eq!(c.det_value, 256.into());
        assert_eq!(c.rank_value, 4);
        assert!(c.pd);
        assert!(c.gram_matches_structure);
        assert_eq!(c.conclusion, Conclusion::BoundNProven);
        let n = signed_incidence_matrix(&hadamard4()).unwrap().gram();
        assert_eq!(n, gram_structure(4, 2, 4).unwrap().materialize());
    }

    #[test]
    fn certificate_exceptional() {
        let c = gram_certificate(&fam(3, &["000", "110", "101", "011"])).unwrap();
        assert_eq!(c.lambda, 2);
        assert_eq!(c.det_value, 0.into());
        assert_eq!(c.conclusion, Conclusion::ExceptionalInconclusive);
        assert!(!c.pd);
        assert_eq!(c.rank_value, rank_exact(&gram_structure(3, 2, 4).unwrap().materialize()));
    }

    #[test]
    fn certificate_pair() {
        let c = gram_certificate(&fam(2, &["00", "01"])).unwrap();
        assert_eq!(c.det_value, 4.into());
        assert_eq!(c.rank_value, 2);
        assert_eq!(c.conclusion, Conclusion::BoundNProven);
    }

    #[test]
    fn certificate_refusals() {
        assert!(matches!(
            gram_certificate(&fam(2, &["00", "01", "11"])),
            Err(Error::NotEquidistant(_))
        ));
        let ternary = Family::new(2, 3, vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            gram_certificate(&ternary),
            Err(Error::UnsupportedAlphabet { q: 3 })
        );
    }

    #[test]
    fn quadratic_form_examples() {
        let v = quadratic_form_value(&hadamard4(), &CoefficientVector::from_integers(&[1, 1, 1, 1]))
            .unwrap();
        assert_eq!(v, BigRational::from_integer(16.into()));

        let v = quadratic_form_value(&hadamard4(), &CoefficientVector::from_integers(&[0; 4])).unwrap();
        assert!(v.is_zero());

        let v = quadratic_form_value(&fam(2, &["00", "01"]), &CoefficientVector::from_integers(&[1, -1]))
            .unwrap();
        assert_eq!(v, BigRational::from_integer(4.into()));

        let half = CoefficientVector::from_pairs(&[(1, 2), (-1, 3)]).unwrap();
        let v = quadratic_form_value(&fam(2, &["00", "01"]), &half).unwrap();
        // 2·(1/4 + 1/9) + 0
        assert_eq!(v, BigRational::new(26.into(), 36.into()));
    }

    #[test]
    fn quadratic_form_errors() {
        let exceptional = fam(3, &["000", "110", "101", "011"]);
        assert!(matches!(
            quadratic_form_value(&exceptional, &CoefficientVector::from_integers(&[1, 0, 0, 0])),
            Err(Error::OutOfRegime(_))
        ));
        assert!(matches!(
            quadratic_form_value(&hadamard4(), &CoefficientVector::from_integers(&[1, 1])),
            Err(Error::InvalidInput(_))
        ));
        assert!(CoefficientVector::from_pairs(&[(1, 0)]).is_err());
    }
}
