//! Arithmetic in prime fields F_q.
//!
//! Residues are stored as `u64` in `[0, q)`. Moduli are limited to 32 bits so
//! that every product of two residues fits in a `u64` without overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    q: u64,
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(q: u64) -> Result<Self> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.q
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q > u32::MAX as u64 {
            return Err(Error::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Reduces an arbitrary signed integer into `[0, q)`.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        Scalar {
            value: self.reduce(v),
            field: *self,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.scalar(0)
    }

    pub fn one(&self) -> Scalar {
        self.scalar(1)
    }

    /// All elements `0, 1, ..., q - 1`.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        (0..self.q).map(move |value| Scalar { value, field: *self })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero residue.
    pub fn multiplicative_order(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        let group = self.q - 1;
        let mut order = group;
        for p in prime_factors(group) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == 1 {
                order /= p;
            }
        }
        Ok(order)
    }

    /// Smallest generator of F_q^*.
    ///
    /// For q = 2 the group is trivial; this returns 1 and sets the
    /// degenerate flag.
    pub fn primitive_root(&self) -> PrimitiveRoot {
        if self.q == 2 {
            return PrimitiveRoot {
                root: self.one(),
                degenerate: true,
            };
        }
        let group = self.q - 1;
        let factors = prime_factors(group);
        let g = (2..self.q)
            .find(|&g| factors.iter().all(|p| self.pow(g, group / p) != 1))
            .expect("F_q^* is cyclic");
        PrimitiveRoot {
            root: Scalar {
                value: g,
                field: *self,
            },
            degenerate: false,
        }
    }

    pub(crate) fn check(&self, other: &PrimeField) -> Result<()> {
        if self != other {
            Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveRoot {
    pub root: Scalar,
    /// Set when q = 2 and the multiplicative group is trivial.
    pub degenerate: bool,
}

/// An element of a prime field.
///
/// The operator impls panic on a field mismatch; use the `checked_*` methods
/// when operands may come from different fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    value: u64,
    field: PrimeField,
}

impl Scalar {
    pub fn new(field: PrimeField, value: u64) -> Self {
        Scalar {
            value: value % field.q,
            field,
        }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn checked_add(self, rhs: Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        Ok(Scalar::new(self.field, self.field.add(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        Ok(Scalar::new(self.field, self.field.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        Ok(Scalar::new(self.field, self.field.mul(self.value, rhs.value)))
    }

    pub fn inv(self) -> Result<Scalar> {
        Ok(Scalar::new(self.field, self.field.inv(self.value)?))
    }

    pub fn pow(self, exp: u64) -> Scalar {
        Scalar::new(self.field, self.field.pow(self.value, exp))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(self.field, self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn rejects_composite_and_tiny() {
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(160_001).unwrap().order(), 160_001);
    }

    #[test]
    fn small_identities() {
        let f7 = f(7);
        assert_eq!(f7.scalar(3).inv().unwrap().value(), 5);
        assert_eq!(f7.scalar(3).pow(6).value(), 1);
        let f13 = f(13);
        assert_eq!((f13.scalar(9) * f13.scalar(3)).value(), 1);
        assert_eq!(f7.scalar(0).inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn mismatched_fields_error() {
        let a = f(7).scalar(1);
        let b = f(5).scalar(1);
        assert_eq!(
            a.checked_add(b),
            Err(Error::FieldMismatch { left: 7, right: 5 })
        );
    }

    // Brute-force order oracle, independent of `multiplicative_order`.
    fn smallest_generator_by_scan(q: u64) -> u64 {
        (2..q)
            .find(|&g| {
                let mut x = 1;
                let mut order = 0;
                loop {
                    x = x * g % q;
                    order += 1;
                    if x == 1 {
                        break;
                    }
                }
                order == q - 1
            })
            .unwrap()
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(f(7).primitive_root().root.value(), 3);
        assert_eq!(f(13).primitive_root().root.value(), 2);
        assert_eq!(f(3).primitive_root().root.value(), 2);
        let two = f(2).primitive_root();
        assert!(two.degenerate);
        assert_eq!(two.root.value(), 1);
        for q in (3..200).filter(|&q| is_prime(q)) {
            assert_eq!(
                f(q).primitive_root().root.value(),
                smallest_generator_by_scan(q),
                "q = {q}"
            );
        }
    }

    #[test]
    fn inverse_everywhere() {
        let f31 = f(31);
        for a in 1..31 {
            assert_eq!(f31.mul(a, f31.inv(a).unwrap()), 1);
        }
    }
}
