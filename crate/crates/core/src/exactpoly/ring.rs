//! Commutative-ring abstraction shared by the division-free algorithms.
//!
//! Berkowitz, Bareiss and the power-sum spread construction only ever need
//! ring operations plus *exact* division, so the same code runs over ℤ, ℚ
//! and ℤ[a] (and ℤ[a][T] when the resultant is taken over a nested ring).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An integral domain with exact division.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Exact quotient; `None` when `rhs` is zero or does not divide `self`.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn from_bigint(n: &BigInt) -> Self {
        // Generic fallback through repeated doubling; the concrete rings override it.
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut mag = n.abs();
        let two = BigInt::from(2);
        while !Zero::is_zero(&mag) {
            let (q, r) = mag.div_rem(&two);
            if r.is_one() {
                acc = acc.plus(&base);
            }
            base = base.plus(&base);
            mag = q;
        }
        if n.is_negative() {
            acc.negate()
        } else {
            acc
        }
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Machine integers for the small 0/1 fast paths. Every operation is
/// checked and panics on overflow rather than wrapping.
impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(n: i64) -> Self {
        n as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).expect("i128 overflow")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(*rhs).expect("i128 overflow")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).expect("i128 overflow")
    }
    fn negate(&self) -> Self {
        self.checked_neg().expect("i128 overflow")
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0 && self % rhs == 0).then(|| self / rhs)
    }
    fn from_bigint(n: &BigInt) -> Self {
        num_traits::ToPrimitive::to_i128(n).expect("value does not fit in i128")
    }
}
