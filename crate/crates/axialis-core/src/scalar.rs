//! Coefficient rings for the algebra: exact rationals, f64, Complex64.

use core::fmt::Debug;
use core::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar used by everything that asserts literal zero.
pub type Rat = BigRational;

/// Coefficient ring for multivectors and polynomials. `Zero`/`One` bring the
/// ring operations; `from_int`/`div_int` cover the integer scaling that
/// differential operators and the CK series need (division stays exact for
/// rationals, so factorials never round).
pub trait Coeff:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn div_int(self, n: i64) -> Self;
}

impl Coeff for Rat {
    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn div_int(self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        self / Rat::from_integer(BigInt::from(n))
    }
}

impl Coeff for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn div_int(self, n: i64) -> Self {
        self / n as f64
    }
}

impl Coeff for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn div_int(self, n: i64) -> Self {
        self / n as f64
    }
}

/// n/d as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// n as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest f64 to an exact rational.
pub fn rat_to_f64(q: &Rat) -> f64 {
    q.to_f64().expect("rational outside f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_div_int_is_exact() {
        let third = rat(1, 1).div_int(3);
        assert_eq!(third, rat(1, 3));
        assert_eq!(third * rat_int(3), rat_int(1));
    }

    #[test]
    fn rat_to_f64_on_dyadics_is_lossless() {
        assert_eq!(rat_to_f64(&rat(3, 8)), 0.375);
        assert_eq!(rat_to_f64(&rat(-5, 4)), -1.25);
    }
}
