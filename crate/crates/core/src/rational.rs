//! Exact rational arithmetic.
//!
//! Backed by `num_rational::BigRational`, which keeps values in lowest terms
//! with a positive denominator and performs all arithmetic exactly. No
//! rounding happens anywhere in this module; floats enter the crate only in
//! [`crate::analytic`].

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub type ExactRational = num_rational::BigRational;

/// `n` as an exact rational.
pub fn rat_int(n: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// `n / d` as an exact rational, reduced. `d` must be nonzero.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

/// `base^exp` as a big integer, `exp >= 0`.
pub fn big_pow(base: u32, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// `base^exp` as an exact rational, allowing negative exponents.
pub fn rat_pow(base: u32, exp: i64) -> ExactRational {
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        rat_int(p)
    } else {
        rat(BigInt::one(), p)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Smallest integer `>= q`.
pub fn ceil_rational(q: &ExactRational) -> BigInt {
    q.ceil().to_integer()
}

/// Nearest binary64 value; loses precision by design, used only to hand an
/// exact quantity to a float-side comparison.
pub fn to_f64(q: &ExactRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
