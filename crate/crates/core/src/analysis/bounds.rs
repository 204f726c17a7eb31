//! Closed-form integer criteria: vacuity, the omphalos bound and the coset
//! corollary.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::is_positive;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::rational::{integer, is_unit_interval, serde_bigint, serde_rational, Rational};

/// `ℓ^(n-1) - nℓ + n`.
pub fn vacuity_exponent(n: u32, ell: u32) -> i64 {
    (ell as i64).pow(n - 1) - (n as i64) * (ell as i64) + n as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VacuityVerdict {
    /// `ℓ^(n-1) - nℓ + n`; the integer part of the criterion is `< 2`.
    pub exponent: i64,
    /// `q^(exponent - 2)·(q - α(q - 2))`.
    #[serde(with = "serde_rational")]
    pub value: Rational,
    /// Whether some `E` with `dim span(E) = ℓ` could satisfy the bound.
    pub feasible: bool,
}

/// Whether the covering bound can hold for some `E ⊂ F_q^d` with
/// `dim span(E) = ℓ` and `r = ℓ^(n-1)`, i.e.
/// `q^(ℓ^(n-1) - nℓ + n - 2)·(q - α(q - 2)) < 1`.
pub fn vacuity_check(n: u32, ell: u32, q: u64, alpha: &Rational) -> Result<VacuityVerdict> {
    if n < 2 || ell < 1 {
        return Err(Error::invalid("vacuity check needs n >= 2 and l >= 1"));
    }
    if !is_unit_interval(alpha) {
        return Err(Error::invalid("alpha must lie in [0, 1]"));
    }
    let exponent = vacuity_exponent(n, ell);
    let shift = exponent - 2;
    let power = if shift >= 0 {
        integer(BigInt::from(q).pow(shift as u32))
    } else {
        Rational::new(BigInt::one(), BigInt::from(q).pow((-shift) as u32))
    };
    let value = power * (integer(q) - alpha * integer(q as i64 - 2));
    let feasible = value < Rational::one();
    Ok(VacuityVerdict {
        exponent,
        value,
        feasible,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmphalosBound {
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_bigint")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// `k³ℓ³ > q⁶ - (ℓ - 1)q⁵`.
pub fn omphalos_bound_check(q: u64, k: u64, ell: u64) -> OmphalosBound {
    let qb = BigInt::from(q);
    let lhs = (BigInt::from(k) * BigInt::from(ell)).pow(3);
    let rhs = qb.pow(6) - (BigInt::from(ell) - 1) * qb.pow(5);
    OmphalosBound {
        holds: lhs > rhs,
        lhs,
        rhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetCorollary {
    pub q: u64,
    pub s: u64,
    pub r: u64,
    /// `(q-1)⁶r⁶ + (q-1)s⁵q⁵r - s⁶(q⁶+q⁵)`.
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    pub holds: bool,
}

fn corollary_lhs(q: u64, s: u64, r: u64) -> BigInt {
    let q = BigInt::from(q);
    let s = BigInt::from(s);
    let r = BigInt::from(r);
    let qm1: BigInt = &q - 1;
    qm1.pow(6) * r.pow(6) + &qm1 * s.pow(5) * q.pow(5) * &r - s.pow(6) * (q.pow(6) + q.pow(5))
}

fn check_index(q: u64, s: u64) -> Result<()> {
    PrimeField::new(q)?;
    if s == 0 || !(q - 1).is_multiple_of(s) {
        return Err(Error::IndexDoesNotDivide { s, order: q - 1 });
    }
    Ok(())
}

/// The coset-omphalos criterion for `r` cosets of the index-`s` subgroup.
pub fn coset_corollary(q: u64, s: u64, r: u64) -> Result<CosetCorollary> {
    check_index(q, s)?;
    if r == 0 || r > s {
        return Err(Error::TooManyCosets {
            requested: r as usize,
            available: s as usize,
        });
    }
    let lhs = corollary_lhs(q, s, r);
    Ok(CosetCorollary {
        q,
        s,
        r,
        holds: is_positive(&lhs),
        lhs,
    })
}

/// Least `r ≤ s` for which the coset corollary holds, by bisection on the
/// left side, which increases strictly with `r`.
pub fn min_r(q: u64, s: u64) -> Result<Option<u64>> {
    check_index(q, s)?;
    if !is_positive(&corollary_lhs(q, s, s)) {
        return Ok(None);
    }
    let (mut lo, mut hi) = (1u64, s);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if is_positive(&corollary_lhs(q, s, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn vacuity_examples() {
        for q in [3, 5, 7, 101] {
            let v = vacuity_check(3, 2, q, &ratio(1, 1)).unwrap();
            assert_eq!(v.exponent, 1);
            assert_eq!(v.value, ratio(2, q));
            assert!(v.feasible);
            for alpha in [ratio(0, 1), ratio(1, 2), ratio(1, 1)] {
                assert!(!vacuity_check(4, 2, q, &alpha).unwrap().feasible);
            }
        }
        for ell in 2..6 {
            assert!(vacuity_check(2, ell, 7, &ratio(0, 1)).unwrap().feasible);
        }
        assert!(!vacuity_check(2, 1, 7, &ratio(0, 1)).unwrap().feasible);
        assert!(vacuity_check(1, 2, 7, &ratio(0, 1)).is_err());
        assert!(vacuity_check(3, 2, 7, &ratio(3, 2)).is_err());
    }

    #[test]
    fn omphalos_examples() {
        let b = omphalos_bound_check(7, 8, 6);
        assert_eq!(b.lhs, BigInt::from(110_592));
        assert_eq!(b.rhs, BigInt::from(33_614));
        assert!(b.holds);
        let b = omphalos_bound_check(7, 1, 1);
        assert_eq!(b.rhs, BigInt::from(117_649));
        assert!(!b.holds);
    }

    #[test]
    fn corollary_examples() {
        let c = coset_corollary(160_001, 20, 16).unwrap();
        assert!(c.holds);
        assert_eq!(
            c.lhs.to_string(),
            "66706478748133752797593495551872000000"
        );
        let c = coset_corollary(7, 2, 1).unwrap();
        assert_eq!(c.lhs, BigInt::from(-5_331_584));
        assert!(!c.holds);
        assert!(coset_corollary(7, 4, 1).is_err());
        assert!(coset_corollary(7, 2, 3).is_err());
        assert!(coset_corollary(8, 7, 1).is_err());
    }

    #[test]
    fn min_r_matches_linear_scan() {
        assert_eq!(min_r(160_001, 20).unwrap(), Some(16));
        for (q, s) in [(17u64, 8u64), (29, 7), (31, 6), (61, 5), (7, 2), (13, 4), (101, 10)] {
            let scan = (1..=s).find(|&r| coset_corollary(q, s, r).unwrap().holds);
            assert_eq!(min_r(q, s).unwrap(), scan, "q={q} s={s}");
        }
        assert_eq!(min_r(31, 6).unwrap(), Some(5));
    }

    #[test]
    fn corollary_is_increasing_in_r() {
        for (q, s) in [(160_001u64, 20u64), (31, 6), (13, 12)] {
            let lhs: Vec<BigInt> = (1..=s).map(|r| coset_corollary(q, s, r).unwrap().lhs).collect();
            assert!(lhs.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
