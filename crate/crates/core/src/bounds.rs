//! Upper bounds on the size of codes with few distances.
//!
//! Exclusion tests compare cross-multiplied integers (`2λ` against `n+1`,
//! `qλ` against `(q-1)(n+1)`), never divided values.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which statement a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `Σ_{i=0}^{s} C(n,i)(q-1)^i` for codes with `s` distances.
    Delsarte,
    /// The binary case of the Delsarte bound.
    CorollaryQ2,
    /// `m <= n` for binary single-distance families off the excluded distance.
    MainTheorem,
    /// The open `m <= n(q-1)` generalization to q > 2.
    Conjecture,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Delsarte => "delsarte",
            BoundSource::CorollaryQ2 => "corollary_q2",
            BoundSource::MainTheorem => "main_theorem",
            BoundSource::Conjecture => "conjecture",
        })
    }
}

/// A nonnegative rational `numer/denom` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub numer: u64,
    pub denom: u64,
}

impl Fraction {
    pub fn new(numer: u64, denom: u64) -> Self {
        let g = numer.gcd(&denom).max(1);
        Fraction {
            numer: numer / g,
            denom: denom / g,
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub bound: BigUint,
    pub source: BoundSource,
    pub exceptional: bool,
    pub excluded_value: Option<Fraction>,
    /// Set whenever the bound rests on the unproven q > 2 conjecture.
    pub conjectural: bool,
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{i=0}^{s} C(n,i)(q-1)^i`, exact.
pub fn bound_delsarte(n: u64, q: u64, s: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::invalid(format!("alphabet size q = {q} must be >= 2")));
    }
    if s == 0 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s = {s}, n = {n}")));
    }
    let base = BigUint::from(q - 1);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for i in 0..=s {
        total += binomial(n, i) * &power;
        power *= &base;
    }
    Ok(total)
}

/// The Delsarte bound wrapped as a report.
pub fn delsarte_report(n: u64, q: u64, s: u64) -> Result<BoundReport> {
    Ok(BoundReport {
        bound: bound_delsarte(n, q, s)?,
        source: if q == 2 {
            BoundSource::CorollaryQ2
        } else {
            BoundSource::Delsarte
        },
        exceptional: false,
        excluded_value: None,
        conjectural: false,
    })
}

fn check_lambda(n: u64, lambda: u64) -> Result<()> {
    if lambda == 0 || lambda > n {
        return Err(Error::invalid(format!(
            "need 1 <= lambda <= n, got lambda = {lambda}, n = {n}"
        )));
    }
    Ok(())
}

/// Bound for a binary family with every pairwise distance equal to `lambda`.
///
/// Off `lambda = (n+1)/2` the bound is `n`. At that value the determinant
/// argument is silent and the one-distance Delsarte bound `n+1` is returned,
/// flagged as exceptional.
pub fn bound_single_distance(n: u64, lambda: u64) -> Result<BoundReport> {
    check_lambda(n, lambda)?;
    let excluded_value = Some(Fraction::new(n + 1, 2));
    if 2 * lambda != n + 1 {
        Ok(BoundReport {
            bound: BigUint::from(n),
            source: BoundSource::MainTheorem,
            exceptional: false,
            excluded_value,
            conjectural: false,
        })
    } else {
        Ok(BoundReport {
            bound: bound_delsarte(n, 2, 1)?,
            source: BoundSource::CorollaryQ2,
            exceptional: true,
            excluded_value,
            conjectural: false,
        })
    }
}

/// Conjectured bound `n(q-1)` for q-ary single-distance codes, away from
/// `lambda = (q-1)(n+1)/q`. For q = 2 this is exactly
/// [`bound_single_distance`].
pub fn conjecture_bound(n: u64, q: u64, lambda: u64) -> Result<BoundReport> {
    if q < 2 {
        return Err(Error::invalid(format!("alphabet size q = {q} must be >= 2")));
    }
    check_lambda(n, lambda)?;
    if q == 2 {
        return bound_single_distance(n, lambda);
    }
    let excluded_value = Some(Fraction::new((q - 1) * (n + 1), q));
    if q * lambda != (q - 1) * (n + 1) {
        Ok(BoundReport {
            bound: BigUint::from(n * (q - 1)),
            source: BoundSource::Conjecture,
            exceptional: false,
            excluded_value,
            conjectural: true,
        })
    } else {
        Ok(BoundReport {
            bound: bound_delsarte(n, q, 1)?,
            source: BoundSource::Delsarte,
            exceptional: true,
            excluded_value,
            conjectural: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delsarte_examples() {
        assert_eq!(bound_delsarte(3, 2, 1).unwrap(), 4u32.into());
        assert_eq!(bound_delsarte(3, 2, 3).unwrap(), 8u32.into());
        assert_eq!(bound_delsarte(2, 3, 1).unwrap(), 5u32.into());
        assert!(bound_delsarte(3, 2, 4).is_err());
        assert!(bound_delsarte(3, 1, 1).is_err());
        assert!(bound_delsarte(3, 2, 0).is_err());
    }

    #[test]
    fn single_distance_examples() {
        let r = bound_single_distance(10, 3).unwrap();
        assert_eq!(r.bound, 10u32.into());
        assert_eq!(r.source, BoundSource::MainTheorem);
        assert!(!r.exceptional);

        let r = bound_single_distance(9, 5).unwrap();
        assert_eq!(r.bound, 10u32.into());
        assert_eq!(r.source, BoundSource::CorollaryQ2);
        assert!(r.exceptional);
        assert_eq!(r.excluded_value, Some(Fraction::new(5, 1)));

        let r = bound_single_distance(3, 2).unwrap();
        assert_eq!(r.bound, 4u32.into());
        assert!(r.exceptional);

        assert!(bound_single_distance(3, 0).is_err());
        assert!(bound_single_distance(3, 4).is_err());
    }

    #[test]
    fn conjecture_examples() {
        let r = conjecture_bound(2, 3, 1).unwrap();
        assert_eq!(r.bound, 4u32.into());
        assert!(!r.exceptional);
        assert!(r.conjectural);

        let r = conjecture_bound(2, 3, 2).unwrap();
        assert!(r.exceptional);
        assert_eq!(r.bound, 5u32.into());
        assert_eq!(r.excluded_value, Some(Fraction::new(2, 1)));

        let r = conjecture_bound(7, 2, 4).unwrap();
        assert_eq!(r, bound_single_distance(7, 4).unwrap());
        assert!(!r.conjectural);
        assert_eq!(r.bound, 8u32.into());
        assert!(r.exceptional);
        assert_eq!(conjecture_bound(7, 2, 3).unwrap().bound, 7u32.into());
    }

    #[test]
    fn conjecture_reduces_to_binary_bound() {
        for n in 1..=32 {
            for lambda in 1..=n {
                assert_eq!(
                    conjecture_bound(n, 2, lambda).unwrap(),
                    bound_single_distance(n, lambda).unwrap()
                );
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let json = serde_json::to_string(&bound_single_distance(10, 3).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"bound":10,"source":"main_theorem","exceptional":false,"excluded_value":"11/2","conjectural":false}"#
        );
    }
}
