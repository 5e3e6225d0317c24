use super::{modulus_for, PadicInt};
use crate::error::{Error, Result};
use crate::exact::modular::{inv_mod, mul_mod};

/// Factorials modulo `p^N`, stored as unit part and valuation so that
/// multinomial coefficients can be assembled without big integers.
///
/// `unit[k] = k! / p^{v_p(k!)} mod p^N`. The table grows on demand.
#[derive(Clone, Debug)]
pub struct FactorialTable {
    p: u64,
    precision: u32,
    modulus: u64,
    unit: Vec<u64>,
    val: Vec<u64>,
}

impl FactorialTable {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let modulus = modulus_for(p, precision)?;
        Ok(FactorialTable {
            p,
            precision,
            modulus,
            unit: vec![1 % modulus],
            val: vec![0],
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.unit.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Make sure `k!` is available for every `k <= n`.
    pub fn extend_to(&mut self, n: u64) {
        let n = n as usize;
        self.unit.reserve((n + 1).saturating_sub(self.unit.len()));
        while self.unit.len() <= n {
            let k = self.unit.len() as u64;
            let mut j = k;
            let mut v = 0;
            while j % self.p == 0 {
                j /= self.p;
                v += 1;
            }
            let prev = *self.unit.last().unwrap();
            let pv = *self.val.last().unwrap();
            self.unit.push(mul_mod(prev, j % self.modulus, self.modulus));
            self.val.push(pv + v);
        }
    }

    /// `v_p(k!)`.
    pub fn valuation(&mut self, k: u64) -> u64 {
        self.extend_to(k);
        self.val[k as usize]
    }

    /// `v_p((Σ parts)! / ∏ parts!)`.
    pub fn multinomial_valuation(&mut self, parts: &[u64]) -> u64 {
        let total: u64 = parts.iter().sum();
        self.extend_to(total);
        self.val[total as usize] - parts.iter().map(|&k| self.val[k as usize]).sum::<u64>()
    }

    /// `(Σ parts)! / ∏ parts!` modulo `p^N`.
    pub fn multinomial(&mut self, parts: &[u64]) -> PadicInt {
        let total: u64 = parts.iter().sum();
        self.extend_to(total);
        let m = self.modulus;
        let mut v = self.val[total as usize];
        let mut num = self.unit[total as usize];
        let mut den = 1 % m;
        for &k in parts {
            v -= self.val[k as usize];
            den = mul_mod(den, self.unit[k as usize], m);
        }
        let value = if v >= self.precision as u64 {
            0
        } else {
            let inv = inv_mod(den, m).expect("unit parts are invertible");
            num = mul_mod(num, inv, m);
            mul_mod(num, self.p.pow(v as u32), m)
        };
        PadicInt::new(self.p, self.precision, value).expect("modulus checked at construction")
    }

    /// `C(n, k)` modulo `p^N`; zero when `k > n`.
    pub fn binomial(&mut self, n: u64, k: u64) -> PadicInt {
        if k > n {
            return PadicInt::new(self.p, self.precision, 0).expect("modulus checked");
        }
        self.multinomial(&[k, n - k])
    }

    /// Fails if an index would exceed `limit` entries.
    pub fn check_budget(&self, n: u64, limit: u64) -> Result<()> {
        if n > limit {
            return Err(Error::TooLarge {
                estimate: n as u128,
                limit: limit as u128,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bigint_mod, binomial, multinomial};

    #[test]
    fn agrees_with_exact_binomials() {
        for p in [3u64, 5, 13] {
            let mut t = FactorialTable::new(p, 3).unwrap();
            let m = p.pow(3);
            for n in 0..120u64 {
                for k in 0..=n {
                    assert_eq!(t.binomial(n, k).value(), bigint_mod(&binomial(n, k), m));
                }
            }
        }
    }

    #[test]
    fn multinomial_matches_exact() {
        let mut t = FactorialTable::new(7, 4).unwrap();
        for parts in [[2u64, 4, 3, 3], [4, 8, 6, 6], [14, 3, 0, 7]] {
            assert_eq!(
                t.multinomial(&parts).value(),
                bigint_mod(&multinomial(&parts), 7u64.pow(4))
            );
        }
    }

    #[test]
    fn legendre_valuation() {
        let mut t = FactorialTable::new(5, 2).unwrap();
        assert_eq!(t.valuation(100), 24);
        assert_eq!(t.valuation(4), 0);
        // C(4, 2) = 6 at p = 3
        let mut t = FactorialTable::new(3, 2).unwrap();
        assert_eq!(t.multinomial_valuation(&[2, 2]), 1);
    }
}
