use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{PadicInt, PadicNumber};

/// The coefficient rings series arithmetic runs over.
///
/// Elements double as templates: `zero_like` and `lift_i64` build
/// constants in the same ring (same prime and precision for p-adic types).
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn lift_i64(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse of a unit of the ring.
    fn inverse(&self) -> Result<Self>;
    /// Exact division by a nonzero integer. Rings without the needed inverse
    /// check divisibility and record any precision lost.
    fn div_int(&self, k: i64) -> Result<Self>;

    fn one_like(&self) -> Self {
        self.lift_i64(1)
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn lift_i64(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(self.recip())
    }
    fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("division by zero"));
        }
        Ok(self / BigRational::from_integer(BigInt::from(k)))
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

impl Coeff for PadicInt {
    fn zero_like(&self) -> Self {
        self.like(0)
    }
    fn lift_i64(&self, n: i64) -> Self {
        self.like(n)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_zero(&self) -> bool {
        PadicInt::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        PadicInt::inverse(self)
    }
    fn div_int(&self, k: i64) -> Result<Self> {
        PadicInt::div_int(self, k)
    }
}

impl Coeff for PadicNumber {
    fn zero_like(&self) -> Self {
        self.constant(0)
    }
    fn lift_i64(&self, n: i64) -> Self {
        self.constant(n)
    }
    fn add(&self, o: &Self) -> Self {
        PadicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PadicNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PadicNumber::mul(self, o)
    }
    fn neg(&self) -> Self {
        PadicNumber::neg(self)
    }
    fn is_zero(&self) -> bool {
        PadicNumber::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        PadicNumber::inverse(self)
    }
    fn div_int(&self, k: i64) -> Result<Self> {
        PadicNumber::div_int(self, k)
    }
}
