use crate::error::{Error, Result};
use crate::exact::modular::{is_prime, prime_factors};
use crate::exact::{find_irreducible, FpPoly};

/// Largest field size accepted by the point counter.
pub const MAX_FIELD_SIZE: u64 = 169;

/// `GF(q)` with full addition and multiplication tables. Element `x` encodes
/// the polynomial `Σ d_i t^i` whose base-`p` digits are `d_i`.
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u64,
    q: u64,
    modulus: FpPoly,
    add: Vec<u16>,
    mul: Vec<u16>,
    square: Vec<bool>,
}

fn digits(x: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut x = x;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self> {
        if !(2..=MAX_FIELD_SIZE).contains(&q) {
            return Err(Error::TooLarge {
                estimate: q as u128,
                limit: MAX_FIELD_SIZE as u128,
            });
        }
        let ps = prime_factors(q);
        if ps.len() != 1 || !is_prime(ps[0]) {
            return Err(Error::domain(format!("{q} is not a prime power")));
        }
        let p = ps[0];
        let mut k = 0usize;
        let mut t = 1;
        while t < q {
            t *= p;
            k += 1;
        }
        let modulus = if k == 1 {
            FpPoly::x(p)
        } else {
            find_irreducible(p, k)?
        };
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s, p) as u16;
                let prod = if k == 1 {
                    vec![a * b % p]
                } else {
                    let r = FpPoly::new(p, da.clone())
                        .mul(&FpPoly::new(p, db))
                        .rem(&modulus)?;
                    (0..k).map(|i| r.coeff(i)).collect()
                };
                mul[(a * q + b) as usize] = encode(&prod, p) as u16;
            }
        }
        let mut square = vec![false; n];
        for a in 0..n {
            square[mul[a * n + a] as usize] = true;
        }
        Ok(SmallField {
            p,
            q,
            modulus,
            add,
            mul,
            square,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Image of an integer under `Z → F_p ⊂ GF(q)`.
    pub fn from_int(&self, n: i64) -> u16 {
        n.rem_euclid(self.p as i64) as u16
    }

    /// Quadratic character: `0`, `1` or `-1`.
    pub fn quadratic(&self, a: u16) -> i64 {
        match (a, self.square[a as usize]) {
            (0, _) => 0,
            (_, true) => 1,
            _ => -1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_in_gf25() {
        let f = SmallField::new(25).unwrap();
        for a in 1..25u16 {
            assert!((1..25u16).any(|b| f.mul(a, b) == 1));
            assert_eq!(f.pow(a, 24), 1);
        }
        let squares = (1..25u16).filter(|&a| f.quadratic(a) == 1).count();
        assert_eq!(squares, 12);
        assert!(SmallField::new(12).is_err());
        assert!(SmallField::new(289).is_err());
    }
}
