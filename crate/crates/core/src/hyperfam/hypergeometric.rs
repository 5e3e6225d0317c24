use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::PadicNumber;

/// Rising factorial `(a)_r = a (a+1) ⋯ (a+r-1)`.
pub fn pochhammer(a: &BigRational, r: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..r {
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

/// Parameters of `mFn(a_1..a_m; b_1..b_n; x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HGParams {
    upper: Vec<BigRational>,
    lower: Vec<BigRational>,
}

fn nonpositive_integer(a: &BigRational) -> Option<u64> {
    (a.is_integer() && !a.is_positive()).then(|| a.to_integer().abs().to_u64().unwrap_or(u64::MAX))
}

impl HGParams {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| nonpositive_integer(b).is_some()) {
            return Err(Error::domain(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
        Ok(HGParams { upper, lower })
    }

    pub fn upper(&self) -> &[BigRational] {
        &self.upper
    }

    pub fn lower(&self) -> &[BigRational] {
        &self.lower
    }

    /// Index of the last possibly nonzero term when some upper parameter is
    /// `-k` for a natural number `k` (the smallest such `k`).
    pub fn termination_index(&self) -> Option<u64> {
        self.upper.iter().filter_map(nonpositive_integer).min()
    }

    /// Term ratio `t_{r+1} / t_r` as a rational function value at `r`,
    /// split into numerator and denominator factor lists.
    fn ratio_factors(&self, r: u64) -> (Vec<BigRational>, Vec<BigRational>) {
        let rr = BigRational::from_integer(BigInt::from(r));
        let num = self.upper.iter().map(|a| a + &rr).collect();
        let mut den: Vec<BigRational> = self.lower.iter().map(|b| b + &rr).collect();
        den.push(&rr + BigRational::one());
        (num, den)
    }
}

/// The first `count` coefficients `∏(a_i)_r / ∏(b_j)_r / r!` of the series.
pub fn pfq_coefficients(params: &HGParams, count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count);
    let mut t = BigRational::one();
    for r in 0..count as u64 {
        out.push(t.clone());
        let (num, den) = params.ratio_factors(r);
        for a in num {
            t *= a;
        }
        for b in den {
            t /= b;
        }
    }
    out
}

/// Exact value of a terminating hypergeometric series at a rational point.
pub fn pfq_terminating(params: &HGParams, x: &BigRational) -> Result<BigRational> {
    let last = params.termination_index().ok_or_else(|| {
        Error::domain("hypergeometric series does not terminate (no nonpositive integer upper parameter)")
    })?;
    let coeffs = pfq_coefficients(params, last as usize + 1);
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    Ok(acc)
}

/// Partial sum `Σ_{r<terms} t_r x^r` evaluated in `Q_p`, building each term
/// from the previous one through the term ratio.
///
/// Every factor is carried at relative precision `rel`; products keep the
/// smallest relative precision, so the terms lose nothing to the
/// intermediate `p`-divisible factors.
pub fn pfq_partial_sum_padic(
    params: &HGParams,
    x: &PadicNumber,
    terms: u64,
    rel: i64,
) -> Result<PadicNumber> {
    let p = x.p();
    let embed = |q: &BigRational| -> Result<PadicNumber> {
        if q.is_zero() {
            return Err(Error::domain("vanishing term ratio factor"));
        }
        let v = crate::exact::val_bigint(q.numer(), p).unwrap() as i64
            - crate::exact::val_bigint(q.denom(), p).unwrap() as i64;
        Ok(PadicNumber::from_rational(p, v + rel, q))
    };
    let mut term = PadicNumber::from_i64(p, rel, 1);
    let mut acc = PadicNumber::zero(p, x.abs_precision().max(rel));
    let mut xp = PadicNumber::from_i64(p, rel, 1);
    for r in 0..terms {
        acc = acc.add(&term.mul(&xp));
        if r + 1 == terms {
            break;
        }
        let (num, den) = params.ratio_factors(r);
        if num.iter().any(|a| a.is_zero()) {
            break;
        }
        for a in &num {
            term = term.mul(&embed(a)?);
        }
        for b in &den {
            term = term.div(&embed(b)?)?;
        }
        xp = xp.mul(x);
    }
    Ok(acc)
}

/// `[n]^m`: the fractions `i/n` with `1 ≤ i ≤ n`, `gcd(i, n) = 1`, each
/// repeated `m` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyIndex {
    pub n: u64,
    pub repeat: u32,
}

impl FareyIndex {
    pub fn new(n: u64, repeat: u32) -> Result<Self> {
        if n == 0 || repeat == 0 {
            return Err(Error::domain("Farey index needs positive n and repeat"));
        }
        Ok(FareyIndex { n, repeat })
    }

    pub fn single(n: u64) -> Self {
        FareyIndex { n, repeat: 1 }
    }
}

/// Sorted multiset expansion of a Farey index.
pub fn farey_expand(idx: FareyIndex) -> Vec<BigRational> {
    let mut out = Vec::new();
    for i in 1..=idx.n {
        if i.gcd(&idx.n) == 1 {
            for _ in 0..idx.repeat {
                out.push(BigRational::new(i.into(), idx.n.into()));
            }
        }
    }
    out
}

/// Concatenated expansion of several Farey indices.
pub fn farey_list(idx: &[FareyIndex]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = idx.iter().flat_map(|&i| farey_expand(i)).collect();
    out.sort();
    out
}
