//! Exact integer scalars.
//!
//! The linear algebra in [`crate::linalg`] is written once against
//! [`ExactInt`] and instantiated for machine integers (fast, may overflow)
//! and [`BigInt`] (never overflows). Everything that feeds a reported
//! invariant goes through the big-integer instantiation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// A signed Euclidean ring element with exact division.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + From<i64> + Into<BigInt>
{
    /// Floor-free remainder in `0..|m|`.
    fn rem_nonneg(&self, m: &Self) -> Self {
        let r = self.mod_floor(m);
        if r.is_negative() {
            r + m.abs()
        } else {
            r
        }
    }
}

impl ExactInt for i64 {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}
