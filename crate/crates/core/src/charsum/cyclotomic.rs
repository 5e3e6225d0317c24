use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::PadicInt;

/// Coefficients of the `d`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(d: u64) -> Vec<i64> {
    // T^d - 1 divided by Φ_e for every proper divisor e of d
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        let phi = cyclotomic_polynomial(e);
        num = exact_div(&num, &phi);
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut out = vec![0i64; rem.len() - dd];
    for k in (0..out.len()).rev() {
        let c = rem[k + dd] / den[dd];
        out[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    out
}

/// Element of `Z[ζ_d]` in the basis `1, ζ, ..., ζ^{φ(d)-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicInt {
    d: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(d: u64) -> Self {
        let phi = cyclotomic_polynomial(d).len() - 1;
        CyclotomicInt {
            d,
            coeffs: vec![0; phi],
        }
    }

    pub fn from_int(d: u64, n: i64) -> Self {
        let mut z = Self::zero(d);
        z.coeffs[0] = n;
        z
    }

    /// `ζ_d^k`.
    pub fn zeta_power(d: u64, k: u64) -> Self {
        let mut full = vec![0i64; d as usize];
        full[(k % d) as usize] = 1;
        Self::reduce(d, full)
    }

    fn reduce(d: u64, mut full: Vec<i64>) -> Self {
        let phi = cyclotomic_polynomial(d);
        let deg = phi.len() - 1;
        for k in (deg..full.len()).rev() {
            let c = full[k];
            if c != 0 {
                for (j, &b) in phi.iter().enumerate() {
                    full[k - deg + j] -= c * b;
                }
            }
        }
        full.resize(deg, 0);
        CyclotomicInt { d, coeffs: full }
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The integer `n` when the element is rational.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicInt { d: self.d, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut full = vec![0i64; self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        Self::reduce(self.d, full)
    }

    /// Image under `ζ ↦ ζ^{-1}`, i.e. complex conjugation in every embedding.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(self.d);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let term = Self::zeta_power(self.d, self.d - i as u64 % self.d);
                acc = acc.add(&term.mul(&Self::from_int(self.d, c)));
            }
        }
        acc
    }

    /// `z · conj(z)`.
    pub fn norm_squared(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Image in `Z_p` under `ζ ↦ omega`, where `omega` has order `d`.
    pub fn embed(&self, omega: &PadicInt) -> Result<PadicInt> {
        if omega.pow(self.d) != omega.like(1) {
            return Err(Error::domain(format!("{omega} is not a {}-th root of unity", self.d)));
        }
        let mut acc = omega.like(0);
        let mut pw = omega.like(1);
        for &c in &self.coeffs {
            let c = PadicInt::from_bigint(omega.p(), omega.precision(), &BigInt::from(c))?;
            acc = acc + c * pw;
            pw = pw * *omega;
        }
        Ok(acc)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "z".into(),
                (1, m) => format!("{m}z"),
                (k, 1) => format!("z^{k}"),
                (k, m) => format!("{m}z^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (ζ_{})", self.d)
    }
}
