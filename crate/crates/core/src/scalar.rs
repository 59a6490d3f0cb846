//! Scalar traits for the exact routines.
//!
//! Everything in this crate is exact. [`Scalar`] covers the ring operations
//! (and the exact divisions fraction-free elimination performs); it is
//! implemented for machine integers, `BigInt` and `BigRational`.
//! [`IntegerScalar`] adds Euclidean structure so that values can be lifted
//! into `Ratio<T>` for solving linear systems.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive {}

pub trait IntegerScalar: Scalar + Integer + Ord {}

impl<T> IntegerScalar for T where T: Scalar + Integer + Ord {}

/// Converts a small non-negative count into `T`.
///
/// Panics if `T` cannot represent `n`; all call sites pass sizes bounded by
/// matrix dimensions.
pub(crate) fn from_usize<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}
