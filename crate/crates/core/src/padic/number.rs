use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{PadicInt, Valuation};
use crate::error::{Error, Result};
use crate::exact::val_bigint;

/// An element of `Q_p` written `p^val * unit` with `unit` known modulo
/// `p^rel`. The absolute precision is `val + rel`: the value is determined
/// modulo `p^(val + rel)`. A value with `rel == 0` is zero to that precision.
///
/// `cap` is the absolute precision given to exact integer constants created
/// from this value (see [`PadicNumber::constant`]); it propagates as the
/// maximum over operands.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    val: i64,
    unit: BigUint,
    rel: u32,
    cap: i64,
}

fn p_pow(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

impl PadicNumber {
    /// Zero known modulo `p^abs`.
    pub fn zero(p: u64, abs: i64) -> Self {
        PadicNumber {
            p,
            val: abs,
            unit: BigUint::zero(),
            rel: 0,
            cap: abs,
        }
    }

    /// Assemble from `p^v0 * x` known modulo `p^abs`.
    fn normalize(p: u64, v0: i64, x: BigUint, abs: i64, cap: i64) -> Self {
        if abs <= v0 {
            return PadicNumber { cap, ..Self::zero(p, abs) };
        }
        let m = p_pow(p, (abs - v0) as u32);
        let mut x = x % &m;
        if x.is_zero() {
            return PadicNumber { cap, ..Self::zero(p, abs) };
        }
        let pb = BigUint::from(p);
        let mut v = v0;
        loop {
            let (q, r) = x.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            x = q;
            v += 1;
        }
        PadicNumber {
            p,
            val: v,
            unit: x,
            rel: (abs - v) as u32,
            cap,
        }
    }

    pub fn from_bigint(p: u64, abs: i64, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(p, abs);
        }
        let v = val_bigint(n, p).unwrap() as i64;
        if abs <= v {
            return Self::zero(p, abs);
        }
        let m = BigInt::from(p_pow(p, (abs - v) as u32));
        let u = n / BigInt::from(p_pow(p, v as u32));
        let u = u.mod_floor(&m).to_biguint().unwrap();
        PadicNumber {
            p,
            val: v,
            unit: u,
            rel: (abs - v) as u32,
            cap: abs,
        }
    }

    pub fn from_i64(p: u64, abs: i64, n: i64) -> Self {
        Self::from_bigint(p, abs, &BigInt::from(n))
    }

    pub fn from_rational(p: u64, abs: i64, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(p, abs);
        }
        let vd = val_bigint(q.denom(), p).unwrap() as i64;
        // numerator known to abs + vd, then divide by p^vd * unit
        let num = Self::from_bigint(p, abs + vd, q.numer());
        let den = Self::from_bigint(p, abs + 2 * vd + 1, q.denom());
        let mut out = num.div(&den).expect("nonzero denominator");
        out.cap = abs;
        out
    }

    pub fn from_padic_int(x: &PadicInt) -> Self {
        let abs = x.precision() as i64;
        Self::from_bigint(x.p(), abs, &BigInt::from(x.value()))
    }

    /// Exact integer constant carried at this value's cap precision.
    pub fn constant(&self, n: i64) -> Self {
        let mut out = Self::from_i64(self.p, self.cap.max(1), n);
        out.cap = self.cap;
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn with_cap(mut self, cap: i64) -> Self {
        self.cap = cap;
        self
    }

    pub fn abs_precision(&self) -> i64 {
        self.val + self.rel as i64
    }

    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    /// Valuation if known (`None` for a value that is zero to its precision).
    pub fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    pub fn valuation(&self) -> Valuation {
        match self.val() {
            Some(v) => Valuation::Exact(v.max(0) as u32),
            None => Valuation::AtLeast(self.abs_precision().max(0) as u32),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.val >= 0
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    /// Drop precision down to `abs`.
    pub fn reduced(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if self.is_zero() || abs <= self.val {
            return PadicNumber { cap: self.cap, ..Self::zero(self.p, abs) };
        }
        let rel = (abs - self.val) as u32;
        PadicNumber {
            p: self.p,
            val: self.val,
            unit: &self.unit % p_pow(self.p, rel),
            rel,
            cap: self.cap,
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = p_pow(self.p, self.rel);
        PadicNumber {
            unit: (&m - &self.unit) % &m,
            ..self.clone()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "p-adic operands over different primes");
        let abs = self.abs_precision().min(o.abs_precision());
        let cap = self.cap.max(o.cap);
        let v0 = self.val.min(o.val);
        if abs <= v0 {
            return PadicNumber { cap, ..Self::zero(self.p, abs) };
        }
        let shift = |x: &Self| -> BigUint {
            if x.is_zero() {
                BigUint::zero()
            } else {
                &x.unit * p_pow(x.p, (x.val - v0) as u32)
            }
        };
        Self::normalize(self.p, v0, shift(self) + shift(o), abs, cap)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "p-adic operands over different primes");
        let cap = self.cap.max(o.cap);
        let abs = (self.abs_precision() + o.val).min(o.abs_precision() + self.val);
        if self.is_zero() || o.is_zero() {
            return PadicNumber { cap, ..Self::zero(self.p, abs) };
        }
        let rel = self.rel.min(o.rel);
        let m = p_pow(self.p, rel);
        PadicNumber {
            p: self.p,
            val: self.val + o.val,
            unit: (&self.unit * &o.unit) % m,
            rel,
            cap,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of a p-adic zero"));
        }
        let m = p_pow(self.p, self.rel);
        let inv = self
            .unit
            .modinv(&m)
            .expect("unit part is invertible modulo p^rel");
        Ok(PadicNumber {
            p: self.p,
            val: -self.val,
            unit: inv,
            rel: self.rel,
            cap: self.cap,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Division by a nonzero integer; the p-part lowers the valuation.
    pub fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("division by zero"));
        }
        let kk = Self::from_i64(self.p, self.abs_precision().max(self.cap) + 64, k);
        self.div(&kk)
    }

    /// `p^e` times this value (exact shift).
    pub fn shift(&self, e: i64) -> Self {
        PadicNumber {
            val: self.val + e,
            cap: self.cap + e.max(0),
            ..self.clone()
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Convert to a p-adic integer modulo `p^target`.
    pub fn to_padic_int(&self, target: u32) -> Result<PadicInt> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(format!("{self}")));
        }
        if self.abs_precision() < target as i64 {
            return Err(Error::InsufficientPrecision {
                have: self.abs_precision(),
                needed: target as i64,
            });
        }
        if self.is_zero() || self.val >= target as i64 {
            return PadicInt::zero(self.p, target);
        }
        let m = p_pow(self.p, target);
        let v = (&self.unit * p_pow(self.p, self.val as u32)) % m;
        PadicInt::new(self.p, target, v.to_u64().expect("fits in 63 bits"))
    }

    /// Whether `self - other` is zero modulo `p^k`.
    pub fn congruent(&self, other: &Self, k: i64) -> bool {
        let d = self.sub(other);
        d.is_zero() && d.abs_precision() >= k || d.val().is_some_and(|v| v >= k)
    }

    /// The rational integer `p^val * unit` with `unit` in `[0, p^rel)`; only
    /// meaningful for display and tests.
    pub fn representative(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let u = BigInt::from(self.unit.clone());
        let pp = BigInt::from(self.p).pow(self.val.unsigned_abs() as u32);
        if self.val >= 0 {
            BigRational::from_integer(u * pp)
        } else {
            BigRational::new(u, pp)
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.abs_precision())
        } else {
            write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.p,
                self.val,
                self.unit,
                self.p,
                self.abs_precision()
            )
        }
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PadicNumber {
    /// Symmetric signed representative of an integral value modulo `p^abs`,
    /// used for compact JSON output.
    pub fn signed_residue(&self) -> Option<BigInt> {
        if !self.is_integral() || self.abs_precision() <= 0 {
            return None;
        }
        let m = BigInt::from(p_pow(self.p, self.abs_precision() as u32));
        let r = self.representative();
        let v = r.to_integer().mod_floor(&m);
        Some(if (&v * 2) > m { v - m } else { v })
    }

    pub fn abs_is_negative(&self) -> bool {
        self.representative().is_negative()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.unit.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn precision_tracking_through_division() {
        // 1/5 known to abs 3 means unit known to rel 4
        let x = PadicNumber::from_rational(5, 3, &rat(1, 5));
        assert_eq!(x.val(), Some(-1));
        assert_eq!(x.abs_precision(), 3);
        let y = x.mul(&PadicNumber::from_i64(5, 3, 5));
        assert!(y.is_unit());
        assert_eq!(y.to_padic_int(2).unwrap().value(), 1);
    }

    #[test]
    fn cancellation_keeps_absolute_precision() {
        let a = PadicNumber::from_rational(5, 4, &rat(1, 5));
        let b = PadicNumber::from_rational(5, 4, &rat(6, 5));
        let d = b.sub(&a);
        assert!(d.is_unit());
        assert_eq!(d.abs_precision(), 4);
        assert_eq!(d.to_padic_int(4).unwrap().value(), 1);
    }

    #[test]
    fn zero_times_nonunit() {
        let z = PadicNumber::zero(7, 3);
        let x = PadicNumber::from_i64(7, 10, 49);
        let prod = z.mul(&x);
        assert!(prod.is_zero());
        assert_eq!(prod.abs_precision(), 5);
    }

    #[test]
    fn rational_images_agree_with_padic_int() {
        let q = rat(-22, 7);
        let x = PadicNumber::from_rational(5, 6, &q).to_padic_int(6).unwrap();
        let y = PadicInt::from_rational(5, 6, &q).unwrap();
        assert_eq!(x, y);
    }
}
