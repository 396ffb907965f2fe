//! Scalar field abstraction.
//!
//! Everything in this crate is generic over a [`Scalar`]; the exact
//! instantiation used for verification is [`Rational`]. Floating-point types
//! satisfy the bound too, which is handy for quick experiments, but equality
//! checks on them are only as good as the rounding allows.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
}

pub fn from_int<F: Scalar>(value: i64) -> F {
    F::from_i64(value).expect("every scalar type embeds the integers")
}

pub fn ratio<F: Scalar>(num: i64, den: i64) -> F {
    assert!(den != 0, "zero denominator");
    from_int::<F>(num) / from_int::<F>(den)
}

/// `(-1)^k` as a scalar.
pub fn sign<F: Scalar>(k: usize) -> F {
    if k % 2 == 0 {
        F::one()
    } else {
        -F::one()
    }
}

pub fn factorial<F: Scalar>(k: usize) -> F {
    (2..=k).fold(F::one(), |acc, i| acc * from_int::<F>(i as i64))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
