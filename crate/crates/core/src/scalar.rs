//! Exact coefficient rings.
//!
//! Everything that sums Möbius values or multiplies polynomials is generic
//! over [`Coefficient`]. Machine integers are fine for desk-scale posets;
//! [`num_bigint::BigInt`] removes any overflow question and is what the
//! crate-root aliases use.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait Coefficient:
    Signed + Clone + Eq + Ord + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count fits the coefficient type")
    }

    fn from_isize(n: isize) -> Self {
        <Self as FromPrimitive>::from_isize(n).expect("value fits the coefficient type")
    }

    /// `(-1)^k`
    fn sign_power(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<T> Coefficient for T where
    T: Signed + Clone + Eq + Ord + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
}
