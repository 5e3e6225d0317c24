//! Factorization over `F_p`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting with a seeded RNG.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fp_poly::{fp_gcd, FpPoly};
use crate::error::{Error, Result};

/// Default seed for the randomized equal-degree splitting.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpFactorization {
    /// Leading coefficient of the input.
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// coefficients.
    pub factors: Vec<(FpPoly, u32)>,
    /// Seed used for equal-degree splitting.
    pub seed: u64,
}

impl FpFactorization {
    pub fn expand(&self, p: u64) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::constant(p, self.unit), |acc, (f, e)| {
                acc.mul(&f.pow(*e))
            })
    }

    /// Degrees of the irreducible factors, repeated by multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.degree().unwrap_or(0), *e as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn fp_factor(f: &FpPoly) -> Result<FpFactorization> {
    fp_factor_seeded(f, DEFAULT_FACTOR_SEED)
}

pub fn fp_factor_seeded(f: &FpPoly, seed: u64) -> Result<FpFactorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let p = f.modulus();
    let unit = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&f.monic())? {
        for (block, d) in distinct_degree(&sqf)? {
            for irr in equal_degree(&block, d, &mut rng)? {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ea.cmp(eb))
    });
    // merge equal factors that arrived from different squarefree layers
    let mut merged: Vec<(FpPoly, u32)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, eh)) if *h == g => *eh += e,
            _ => merged.push((g, e)),
        }
    }
    let out = FpFactorization {
        unit,
        factors: merged,
        seed,
    };
    debug_assert_eq!(out.expand(p), *f);
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with each
/// `g` squarefree, monic, pairwise coprime and `f = prod g^m`.
pub fn squarefree_decomposition(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()?)? {
            out.push((g, m * p as u32));
        }
        return Ok(out);
    }
    let mut c = fp_gcd(f, &d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = fp_gcd(&w, &c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root()?)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest)?;
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(p, &rest)?;
        let g = fp_gcd(&rest, &h.sub(&x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    Ok(out)
}

/// Split a product of distinct monic irreducibles of common degree `d`.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FpPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    if d == 0 || n % d != 0 {
        return Err(Error::Consistency(format!(
            "equal-degree split of degree {n} into blocks of {d}"
        )));
    }
    let p = f.modulus();
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            trace_map(&a, d, f)?
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut norm = FpPoly::one(p);
            let mut frob = a.rem(f)?;
            for _ in 0..d {
                norm = norm.mul(&frob).rem(f)?;
                frob = frob.pow_mod(p, f)?;
            }
            norm.pow_mod((p - 1) / 2, f)?.sub(&FpPoly::one(p))
        };
        if b.is_zero() {
            continue;
        }
        let g = fp_gcd(f, &b)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.div_exact(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

/// `a + a^2 + a^4 + ... + a^(2^(d-1))` mod `f`, the absolute trace for `p = 2`.
fn trace_map(a: &FpPoly, d: usize, f: &FpPoly) -> Result<FpPoly> {
    let mut term = a.rem(f)?;
    let mut acc = term.clone();
    for _ in 1..d {
        term = term.mul(&term).rem(f)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Irreducibility test: squarefree and no factor of degree `d < deg f`
/// (gcd with `x^(p^d) - x` trivial for all `d <= deg/2`).
pub fn is_irreducible(f: &FpPoly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let p = f.modulus();
    let f = f.monic();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(p, &f)?;
        if !fp_gcd(&f, &h.sub(&x))?.is_one() {
            return Ok(false);
        }
    }
    // x^(p^n) = x mod f rules out repeated factors of degree dividing n
    Ok(true)
}

/// Search for the lexicographically first monic irreducible of degree `n`.
pub fn find_irreducible(p: u64, n: usize) -> Result<FpPoly> {
    let total = p
        .checked_pow(n as u32)
        .ok_or_else(|| Error::domain("irreducible search space too large"))?;
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push(c % p);
            c /= p;
        }
        coeffs.push(1);
        let f = FpPoly::new(p, coeffs);
        if f.coeff(0) != 0 && is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Consistency(format!(
        "no irreducible of degree {n} over F_{p}"
    )))
}
