//! Coefficient rings: exact rationals and the residue rings Z/mZ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::SeriesError;

/// The ambient ring a series lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    ExactRational,
    IntegerMod(u64),
}

impl CoefficientRing {
    /// `Z/mZ`, rejecting `m < 2`.
    pub fn integer_mod(m: u64) -> Result<Self, SeriesError> {
        if m < 2 {
            return Err(SeriesError::InvalidModulus(m));
        }
        Ok(CoefficientRing::IntegerMod(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientRing::ExactRational => None,
            CoefficientRing::IntegerMod(m) => Some(*m),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoefficientRing::ExactRational => "rational",
            CoefficientRing::IntegerMod(_) => "integer_mod",
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::ExactRational => write!(f, "Q"),
            CoefficientRing::IntegerMod(m) => write!(f, "Z/{m}Z"),
        }
    }
}

/// Element of `Z/mZ` carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2);
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        ModInt { value: v, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        ModInt {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        ModInt {
            value: r.to_u64().expect("residue fits in u64"),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ModInt::from_u64(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.ring_mul(&base);
            }
            base = base.ring_mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Operations shared by every coefficient type a [`crate::series::Series`] can hold.
///
/// Arithmetic is named `ring_*` so it never collides with the `std::ops`
/// impls that `BigRational` already carries.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_in(ring: CoefficientRing) -> Self;
    fn from_i64(v: i64, ring: CoefficientRing) -> Self;
    fn from_bigint(v: &BigInt, ring: CoefficientRing) -> Self;
    /// `None` when the rational is not integral at the modulus.
    fn from_rational(v: &BigRational, ring: CoefficientRing) -> Option<Self>;
    fn ring(&self) -> CoefficientRing;

    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, if this element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value, ring: CoefficientRing) -> Option<Self>;

    fn one_in(ring: CoefficientRing) -> Self {
        Self::from_i64(1, ring)
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.ring_add(other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one_in(self.ring())
    }
}

impl Coefficient for BigRational {
    fn zero_in(_ring: CoefficientRing) -> Self {
        BigRational::zero()
    }

    fn from_i64(v: i64, _ring: CoefficientRing) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt, _ring: CoefficientRing) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(v: &BigRational, _ring: CoefficientRing) -> Option<Self> {
        Some(v.clone())
    }

    fn ring(&self) -> CoefficientRing {
        CoefficientRing::ExactRational
    }

    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }

    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }

    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }

    fn ring_neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn to_json(&self) -> Value {
        Value::String(render_rational(self))
    }

    fn from_json(v: &Value, _ring: CoefficientRing) -> Option<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
            _ => None,
        }
    }
}

impl Coefficient for ModInt {
    fn zero_in(ring: CoefficientRing) -> Self {
        ModInt::from_u64(0, expect_modulus(ring))
    }

    fn from_i64(v: i64, ring: CoefficientRing) -> Self {
        ModInt::new(v, expect_modulus(ring))
    }

    fn from_bigint(v: &BigInt, ring: CoefficientRing) -> Self {
        ModInt::from_bigint(v, expect_modulus(ring))
    }

    fn from_rational(v: &BigRational, ring: CoefficientRing) -> Option<Self> {
        let m = expect_modulus(ring);
        let den = ModInt::from_bigint(v.denom(), m);
        let inv = den.inverse()?;
        Some(ModInt::from_bigint(v.numer(), m).ring_mul(&inv))
    }

    fn ring(&self) -> CoefficientRing {
        CoefficientRing::IntegerMod(self.modulus)
    }

    fn ring_add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let s = self.value as u128 + other.value as u128;
        ModInt {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn ring_sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.modulus - (other.value - self.value)
        };
        ModInt {
            value: v,
            modulus: self.modulus,
        }
    }

    fn ring_mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.value as u128 * other.value as u128;
        ModInt {
            value: (p % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn ring_neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            ModInt {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inverse(&self) -> Option<Self> {
        let ext = (self.value as i128).extended_gcd(&(self.modulus as i128));
        if ext.gcd != 1 {
            return None;
        }
        Some(ModInt {
            value: ext.x.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    fn to_json(&self) -> Value {
        Value::from(self.value)
    }

    fn from_json(v: &Value, ring: CoefficientRing) -> Option<Self> {
        let m = ring.modulus()?;
        let x = v.as_u64()?;
        (x < m).then(|| ModInt::from_u64(x, m))
    }
}

fn expect_modulus(ring: CoefficientRing) -> u64 {
    ring.modulus()
        .expect("ModInt coefficients require an IntegerMod ring")
}

/// `"p/q"`, or `"p"` for integers; always lowest terms, positive denominator.
pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `v_p(x)` for a non-zero integer.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_must_be_at_least_two() {
        assert!(CoefficientRing::integer_mod(1).is_err());
        assert!(CoefficientRing::integer_mod(0).is_err());
        assert_eq!(
            CoefficientRing::integer_mod(2).unwrap(),
            CoefficientRing::IntegerMod(2)
        );
    }

    #[test]
    fn modint_inverse_and_negatives() {
        let r = CoefficientRing::IntegerMod(11);
        let x = ModInt::from_i64(-3, r);
        assert_eq!(x.value(), 8);
        assert_eq!(x.ring_mul(&x.inverse().unwrap()).value(), 1);
        assert!(ModInt::from_i64(4, CoefficientRing::IntegerMod(8))
            .inverse()
            .is_none());
    }

    #[test]
    fn rational_reduction_mod_m() {
        let r = CoefficientRing::IntegerMod(11);
        // 1/24 = 1/2 = 6 mod 11
        assert_eq!(ModInt::from_rational(&q(1, 24), r).unwrap().value(), 6);
        assert!(ModInt::from_rational(&q(1, 22), r).is_none());
    }

    #[test]
    fn rationals_are_normalized() {
        let x = q(6, -4);
        assert_eq!(render_rational(&x), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), x);
        assert_eq!(parse_rational("12").unwrap(), qi(12));
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn valuation_counts_prime_powers() {
        assert_eq!(valuation(&BigInt::from(2 * 2 * 2 * 3), 2), 3);
        assert_eq!(valuation(&BigInt::from(-75), 5), 2);
        assert_eq!(valuation(&BigInt::from(7), 5), 0);
    }
}
