//! Exact computation in Baumslag–Solitar groups `BS(m,n)`, the metabelian
//! groups `G(m,n) = Z[1/mn] ⋊ Z`, and graphs of groups.
//!
//! The arithmetic core is generic over an integer [`Scalar`]; the aliases
//! below fix it to [`BigInt`] (never overflows) or `i64` (fast, for small
//! parameters).

pub mod britton;
pub mod exact;
pub mod gog;
pub mod harness;
pub mod metabelian;
pub mod scalar;
pub mod words;

pub use num_bigint::BigInt;
pub use scalar::Scalar;

pub type Rational = exact::Ratio<BigInt>;
pub type Rational64 = exact::Ratio<i64>;
pub type Params = metabelian::GmnParams<BigInt>;
pub type Params64 = metabelian::GmnParams<i64>;
pub type Element = metabelian::GmnElement<BigInt>;
pub type Element64 = metabelian::GmnElement<i64>;
pub type BsGroup = britton::BsParams<BigInt>;
pub type BsWordBig = britton::BsWord<BigInt>;
