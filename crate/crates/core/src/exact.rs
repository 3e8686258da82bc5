//! Exact rational arithmetic and the subring `Z[1/mn]` of `Q`.
//!
//! [`Ratio`] is always kept in lowest terms with a positive denominator, so
//! structural equality is numeric equality and zero is uniquely `0/1`.
//! Membership in `Z[1/mn]` is a predicate ([`mn_member`]) rather than a
//! separate type; the group-element constructors in
//! [`crate::metabelian`] enforce it at their boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

/// Reduced fraction `num/den` with `den >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ratio<I = BigInt> {
    num: I,
    den: I,
}

impl<I: Scalar> Ratio<I> {
    /// Builds `num/den` in lowest terms. Fails on a zero denominator.
    pub fn new(num: I, den: I) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: I, den: I) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ratio { num, den }
    }

    pub fn from_integer(n: I) -> Self {
        Ratio { num: n, den: I::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_integer(I::from_int(n))
    }

    pub fn zero() -> Self {
        Ratio { num: I::zero(), den: I::one() }
    }

    pub fn one() -> Self {
        Ratio { num: I::one(), den: I::one() }
    }

    pub fn numer(&self) -> &I {
        &self.num
    }

    pub fn denom(&self) -> &I {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroInverse);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// `self^k`; negative `k` requires a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        let e = k.unsigned_abs();
        let raised = Ratio {
            num: self.num.pow_u(e),
            den: self.den.pow_u(e),
        };
        if k < 0 {
            raised.recip()
        } else {
            Ok(raised)
        }
    }

    /// True iff the reduced invariant holds. Used by property tests.
    pub fn is_normalized(&self) -> bool {
        self.den.is_positive()
            && self.num.gcd(&self.den).is_one()
            && (!self.num.is_zero() || self.den.is_one())
    }
}

/// Decides whether `r` lies in `Z[1/mn]` by stripping common factors of
/// `den` and `m*n` until none remain. Each pass at least halves `den`, so
/// the loop runs at most bit-length-of-`den` times.
pub fn mn_member<I: Scalar>(r: &Ratio<I>, m: &I, n: &I) -> bool {
    let mn = (m.clone() * n.clone()).abs();
    let mut den = r.den.clone();
    loop {
        if den.is_one() {
            return true;
        }
        let g = den.gcd(&mn);
        if g.is_one() {
            return false;
        }
        den = den / g;
    }
}

impl<I: Scalar> Default for Ratio<I> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<I: Scalar> From<i64> for Ratio<I> {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a, I: Scalar> Add<&'a Ratio<I>> for &'a Ratio<I> {
    type Output = Ratio<I>;
    fn add(self, rhs: &Ratio<I>) -> Ratio<I> {
        if self.den == rhs.den {
            return Ratio::reduced(self.num.clone() + rhs.num.clone(), self.den.clone());
        }
        Ratio::reduced(
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den.clone() * rhs.den.clone(),
        )
    }
}

impl<'a, I: Scalar> Sub<&'a Ratio<I>> for &'a Ratio<I> {
    type Output = Ratio<I>;
    fn sub(self, rhs: &Ratio<I>) -> Ratio<I> {
        self + &(-rhs)
    }
}

impl<'a, I: Scalar> Mul<&'a Ratio<I>> for &'a Ratio<I> {
    type Output = Ratio<I>;
    fn mul(self, rhs: &Ratio<I>) -> Ratio<I> {
        Ratio::reduced(
            self.num.clone() * rhs.num.clone(),
            self.den.clone() * rhs.den.clone(),
        )
    }
}

impl<I: Scalar> Neg for &Ratio<I> {
    type Output = Ratio<I>;
    fn neg(self) -> Ratio<I> {
        Ratio {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }
}

impl<I: Scalar> Neg for Ratio<I> {
    type Output = Ratio<I>;
    fn neg(self) -> Ratio<I> {
        -&self
    }
}

impl<I: Scalar> Add for Ratio<I> {
    type Output = Ratio<I>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<I: Scalar> Sub for Ratio<I> {
    type Output = Ratio<I>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<I: Scalar> Mul for Ratio<I> {
    type Output = Ratio<I>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<I: Scalar> fmt::Display for Ratio<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<I: Scalar> FromStr for Ratio<I> {
    type Err = ArithError;

    /// Accepts `[+-]digits` or `[+-]digits/digits`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let bad = || ArithError::Parse(s.to_string());
        let t = s.trim();
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (n, d) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (body, None),
        };
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(n) || !d.map_or(true, digits) {
            return Err(bad());
        }
        let mut num: I = n.parse().map_err(|_| bad())?;
        if sign {
            num = -num;
        }
        let den: I = match d {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => I::one(),
        };
        Ratio::new(num, den)
    }
}

impl<I: Scalar> serde::Serialize for Ratio<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, I: Scalar> serde::Deserialize<'de> for Ratio<I> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type Q = Ratio<BigInt>;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(&q("7/4") + &Q::zero(), q("7/4"));
        assert_eq!(&q("1/2") + &q("-1/2"), Q::zero());
        assert_eq!(q("0/5").denom(), &BigInt::one());
    }

    #[test]
    fn mul_pow_examples() {
        assert_eq!(&q("2/3") * &q("3/2"), Q::one());
        assert_eq!(q("2/3").pow(2).unwrap(), q("4/9"));
        assert_eq!(q("2/3").pow(-1).unwrap(), q("3/2"));
        assert_eq!(q("-2/3").pow(-3).unwrap(), q("-27/8"));
        assert_eq!(Q::zero().pow(-1), Err(ArithError::ZeroInverse));
        assert_eq!(Q::zero().pow(0).unwrap(), Q::one());
    }

    #[test]
    fn membership_examples() {
        let (two, three) = (BigInt::from(2), BigInt::from(3));
        assert!(mn_member(&q("5/12"), &two, &three));
        assert!(mn_member(&q("7"), &two, &three));
        assert!(mn_member(&q("7"), &BigInt::from(1), &BigInt::from(1)));
        assert!(!mn_member(&q("1/5"), &two, &three));
        assert!(!mn_member(&q("1/10"), &two, &three));
        assert!(!mn_member(&q("1/2"), &BigInt::from(1), &BigInt::from(1)));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("+8/4").to_string(), "2");
        assert_eq!(q(" 0/9 ").to_string(), "0");
        assert!("1/0".parse::<Q>().is_err());
        assert!("1/-2".parse::<Q>().is_err());
        assert!("abc".parse::<Q>().is_err());
        assert!("".parse::<Q>().is_err());
        assert!("3/".parse::<Q>().is_err());
    }

    #[test]
    fn machine_scalar_agrees() {
        let a: Ratio<i64> = "3/8".parse().unwrap();
        let b: Ratio<i64> = "-5/6".parse().unwrap();
        assert_eq!((&a + &b).to_string(), "-11/24");
        assert_eq!((&a * &b).to_string(), "-5/16");
    }
}
