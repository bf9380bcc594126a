//! Scalar abstraction for the algebraic layer.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::Num;

use crate::Rational;

/// Field-like scalar usable as a series or ψ-polynomial coefficient.
///
/// Blanket-implemented, so `f32`, `f64` and [`Rational`] all qualify.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Embeds a non-negative integer by binary expansion, so no
    /// `FromPrimitive` bound is needed.
    fn from_count(mut n: u64) -> Self {
        let mut acc = Self::zero();
        let mut pow = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc + pow.clone();
            }
            pow = pow.clone() + pow;
            n >>= 1;
        }
        acc
    }

    fn from_signed(n: i64) -> Self {
        let v = Self::from_count(n.unsigned_abs());
        if n < 0 {
            -v
        } else {
            v
        }
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + Send + Sync + 'static {}

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer power with a possibly negative exponent.
pub fn rpow(base: &Rational, exp: i64) -> Rational {
    use num_traits::{Inv, One};
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.inv()
    } else {
        acc
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
