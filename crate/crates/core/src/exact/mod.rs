//! Exact arithmetic: big integers and rationals, binomials, and dense
//! polynomials over prime fields with full factorization.

mod factor;
mod fp_poly;
pub mod modular;

pub use factor::{
    distinct_degree, find_irreducible, fp_factor, fp_factor_seeded, is_irreducible,
    squarefree_decomposition, FpFactorization, DEFAULT_FACTOR_SEED,
};
pub use fp_poly::{fp_gcd, FpPoly};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use num_traits::{One, Zero};

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact multinomial `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &k in parts {
        total += k;
        acc *= binomial(total, k);
    }
    acc
}

/// `n` as a rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of a nonzero big integer.
pub fn val_bigint(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    Some(v)
}

/// `n mod m` in `[0, m)` for a big integer.
pub fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((n % &m) + &m) % &m;
    u64::try_from(r).expect("residue fits")
}
