//! The integer scalar abstraction every exact type in this crate is generic over.
//!
//! Anything implementing [`num_integer::Integer`] and [`num_traits::Signed`]
//! with the usual conversions qualifies. In practice that is
//! [`num_bigint::BigInt`] (the default, never overflows) and the fixed-width
//! machine integers (`i64`, `i128`), which are faster but will panic on
//! overflow in debug builds.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar type cannot hold an i64")
    }

    /// `self^k` for a non-negative machine exponent.
    fn pow_u(&self, k: u64) -> Self {
        num_traits::pow(self.clone(), k as usize)
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}
