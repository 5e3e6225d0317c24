//! Truncated p-adic arithmetic for `W(F_p) = Z_p`.
//!
//! [`PadicInt`] is an element of `Z_p` known modulo `p^N`; it is the coefficient
//! ring for logarithm coefficients and unit roots. [`PadicNumber`] is an element
//! of `Q_p` with tracked absolute precision, used where intermediate values have
//! negative valuation (logarithm coefficients `c_k / k`, Hensel steps).

mod factorial;
mod gamma;
mod number;

pub use factorial::FactorialTable;
pub use gamma::{padic_gamma, padic_gamma_int};
pub use number::PadicNumber;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::modular::{
    add_mod, checked_prime_power, inv_mod, mul_mod, pow_mod, reduce_i64, sub_mod, val_u64,
};
use crate::exact::{bigint_mod, val_bigint};

/// p-adic valuation of a truncated value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    Exact(u32),
    /// The value is `0 mod p^N`; its valuation is at least `N`.
    AtLeast(u32),
}

impl Valuation {
    /// Whether the valuation is provably at least `s`.
    pub fn is_at_least(self, s: u32) -> bool {
        match self {
            Valuation::Exact(v) => v >= s,
            Valuation::AtLeast(v) => v >= s,
        }
    }

    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// An element of `Z_p` modulo `p^precision`, stored as its residue in
/// `[0, p^precision)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    value: u64,
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: u64) -> Result<Self> {
        let m = modulus_for(p, precision)?;
        Ok(PadicInt {
            p,
            precision,
            value: value % m,
        })
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Result<Self> {
        let m = modulus_for(p, precision)?;
        Ok(PadicInt {
            p,
            precision,
            value: reduce_i64(value, m),
        })
    }

    pub fn from_bigint(p: u64, precision: u32, value: &BigInt) -> Result<Self> {
        let m = modulus_for(p, precision)?;
        Ok(PadicInt {
            p,
            precision,
            value: bigint_mod(value, m),
        })
    }

    /// Image of a p-integral rational.
    pub fn from_rational(p: u64, precision: u32, q: &BigRational) -> Result<Self> {
        if val_bigint(q.denom(), p).unwrap_or(0) > 0 {
            return Err(Error::NotIntegral(format!("{q} has denominator divisible by {p}")));
        }
        let m = modulus_for(p, precision)?;
        let num = bigint_mod(q.numer(), m);
        let den = bigint_mod(q.denom(), m);
        let inv = inv_mod(den, m).expect("denominator is a unit");
        Ok(PadicInt {
            p,
            precision,
            value: mul_mod(num, inv, m),
        })
    }

    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.precision)
    }

    /// Residue modulo `p`.
    pub fn residue(&self) -> u64 {
        self.value % self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.precision > 0 && self.residue() != 0
    }

    /// Same-residue constant in this element's ring.
    pub fn like(&self, value: i64) -> Self {
        PadicInt {
            p: self.p,
            precision: self.precision,
            value: reduce_i64(value, self.modulus()),
        }
    }

    pub fn valuation(&self) -> Valuation {
        if self.value == 0 {
            Valuation::AtLeast(self.precision)
        } else {
            Valuation::Exact(val_u64(self.value, self.p))
        }
    }

    /// Truncate to a lower precision.
    pub fn reduce(&self, precision: u32) -> Self {
        let precision = precision.min(self.precision);
        let m = self.p.pow(precision);
        PadicInt {
            p: self.p,
            precision,
            value: self.value % m,
        }
    }

    fn align(&self, other: &Self) -> (u32, u64) {
        assert_eq!(self.p, other.p, "p-adic operands over different primes");
        let prec = self.precision.min(other.precision);
        (prec, self.p.pow(prec))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let m = self.modulus();
        if e == 0 {
            return self.like(1);
        }
        let mut base = self.value;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            e >>= 1;
        }
        PadicInt { value: acc, ..*self }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::domain(format!("{self} is not a p-adic unit")));
        }
        let m = self.modulus();
        Ok(PadicInt {
            value: inv_mod(self.value, m).expect("unit"),
            ..*self
        })
    }

    /// Division by a unit.
    pub fn div_unit(&self, other: &Self) -> Result<Self> {
        Ok(*self * other.inverse()?)
    }

    /// Exact division by `p^s`. The value must be divisible; the result has
    /// precision `N - s`.
    pub fn div_p_power(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Ok(*self);
        }
        if s > self.precision {
            return Err(Error::InsufficientPrecision {
                have: self.precision as i64,
                needed: s as i64,
            });
        }
        let ps = self.p.pow(s);
        if self.value % ps != 0 {
            return Err(Error::NotIntegral(format!(
                "{self} is not divisible by {}^{s}",
                self.p
            )));
        }
        Ok(PadicInt {
            p: self.p,
            precision: self.precision - s,
            value: self.value / ps,
        })
    }

    /// Exact division by a nonzero integer `k = p^s * u`: asserts divisibility
    /// by `p^s` and records the precision loss.
    pub fn div_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("division by zero"));
        }
        let s = val_u64(k.unsigned_abs(), self.p);
        let shifted = self.div_p_power(s)?;
        let unit = k / (self.p.pow(s) as i64);
        let inv = shifted.like(unit).inverse()?;
        Ok(shifted * inv)
    }

    /// Whether two values agree modulo `p^k` (requires both to be known to `k`).
    pub fn congruent(&self, other: &Self, k: u32) -> bool {
        assert_eq!(self.p, other.p);
        let k = k.min(self.precision).min(other.precision);
        let m = self.p.pow(k);
        self.value % m == other.value % m
    }

    /// Symmetric representative in `(-p^N/2, p^N/2]`.
    pub fn signed(&self) -> i128 {
        let m = self.modulus() as i128;
        let v = self.value as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }
}

pub(crate) fn modulus_for(p: u64, precision: u32) -> Result<u64> {
    if p < 2 {
        return Err(Error::domain(format!("{p} is not a prime")));
    }
    checked_prime_power(p, precision).ok_or(Error::PrecisionOverflow { p, precision })
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, o: PadicInt) -> PadicInt {
        let (precision, m) = self.align(&o);
        PadicInt {
            p: self.p,
            precision,
            value: add_mod(self.value % m, o.value % m, m),
        }
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, o: PadicInt) -> PadicInt {
        let (precision, m) = self.align(&o);
        PadicInt {
            p: self.p,
            precision,
            value: sub_mod(self.value % m, o.value % m, m),
        }
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, o: PadicInt) -> PadicInt {
        let (precision, m) = self.align(&o);
        PadicInt {
            p: self.p,
            precision,
            value: mul_mod(self.value % m, o.value % m, m),
        }
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let m = self.modulus();
        PadicInt {
            value: sub_mod(0, self.value, m),
            ..self
        }
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.p, self.precision)
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A p-adic unit together with its nonzero residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicUnitCertificate {
    pub element: PadicInt,
    pub witness: u64,
}

impl PadicUnitCertificate {
    pub fn new(element: PadicInt) -> Result<Self> {
        if !element.is_unit() {
            return Err(Error::domain(format!("{element} is not a unit")));
        }
        Ok(PadicUnitCertificate {
            element,
            witness: element.residue(),
        })
    }
}

/// Largest precision `N` with `p^N` representable in a [`PadicInt`].
pub fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    while checked_prime_power(p, n + 1).is_some() {
        n += 1;
    }
    n
}

/// Teichmüller lift of `c mod p`: the unique root of `x^p = x` congruent to `c`.
pub fn teichmuller(c: u64, p: u64, precision: u32) -> Result<PadicInt> {
    let m = modulus_for(p, precision)?;
    let mut x = c % p;
    for _ in 0..precision {
        x = pow_mod(x, p, m);
    }
    PadicInt::new(p, precision, x)
}
