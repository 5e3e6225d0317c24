//! Weil polynomials over `Z_p`: Newton polygons, the slope decomposition
//! `P = P_{<1} P_1 P_{>1}`, its functional equation, `r`-th power structure
//! and the table of admissible exponents.

mod newton;
mod power;
mod rtable;
mod slope;

pub use newton::{newton_polygon, newton_polygon_of, NewtonPolygonData};
pub use power::{power_structure, Irreducibility, PowerStructure};
pub use rtable::{possible_r, r_table, RTableCell};
pub use slope::{
    functional_equation_check, slope_factorize, FunctionalEquation, SlopeFactorization,
};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::modular::is_prime;

/// Integer polynomial `1 + c_1 T + ... + c_n T^n` attached to `q = p^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilPoly {
    coeffs: Vec<BigInt>,
    p: u64,
    a: u32,
}

impl WeilPoly {
    pub fn new(coeffs: Vec<BigInt>, p: u64, a: u32) -> Result<Self> {
        if !is_prime(p) || a == 0 {
            return Err(Error::domain(format!("q = {p}^{a} is not a prime power")));
        }
        if coeffs.first().map(|c| c.is_one()) != Some(true) {
            return Err(Error::domain("a Weil polynomial has constant term 1"));
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c == &BigInt::from(0)) {
            coeffs.pop();
        }
        Ok(WeilPoly { coeffs, p, a })
    }

    pub fn from_i64(coeffs: &[i64], p: u64, a: u32) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), p, a)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.a)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.p, self.a) != (other.p, other.a) {
            return Err(Error::domain("Weil polynomials over different fields"));
        }
        Self::new(poly_mul(&self.coeffs, &other.coeffs), self.p, self.a)
    }

    pub fn newton_polygon(&self) -> Result<NewtonPolygonData> {
        newton_polygon(&self.coeffs, self.p)
    }
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
