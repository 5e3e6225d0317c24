use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::newton::NewtonPolygonData;
use super::WeilPoly;
use crate::error::{Error, Result};
use crate::exact::val_bigint;
use crate::padic::PadicInt;

/// `P = P_{<1} P_1 P_{>1}` modulo `p^N`, slopes measured against `v_p(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeFactorization {
    pub p: u64,
    pub a: u32,
    pub precision: u32,
    pub lower: Vec<PadicInt>,
    pub middle: Vec<PadicInt>,
    pub upper: Vec<PadicInt>,
    /// Degree of `P_{<1}`.
    pub h: usize,
    /// Raw hull slopes and the same slopes divided by `a`.
    pub raw_slopes: Vec<(BigRational, usize)>,
    pub normalized_slopes: Vec<(BigRational, usize)>,
}

impl SlopeFactorization {
    pub fn product(&self) -> Vec<PadicInt> {
        let m = padic_mul(&self.lower, &self.middle);
        padic_mul(&m, &self.upper)
    }
}

fn padic_mul(a: &[PadicInt], b: &[PadicInt]) -> Vec<PadicInt> {
    let mut out = vec![a[0].like(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + *x * *y;
        }
    }
    out
}

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|c| c.mod_floor(m)).collect()
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    reduce(&out, m)
}

/// Scaled gap at the vertex `d` for the separating slope `sigma`: how much
/// smaller the dominant term is than every other coefficient.
fn gap(coeffs: &[BigInt], p: u64, d: usize, sigma: &BigRational) -> BigRational {
    let w = |i: usize, v: u32| {
        BigRational::from_integer(BigInt::from(v)) - sigma * BigInt::from(i as u64)
    };
    let vd = val_bigint(&coeffs[d], p).expect("vertex coefficient is nonzero");
    let base = w(d, vd);
    coeffs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != d)
        .filter_map(|(i, c)| val_bigint(c, p).map(|v| w(i, v) - &base))
        .min()
        .unwrap_or_else(BigRational::one)
}

/// Splits `f = g h` over `Z_p` at the hull vertex `d`, with `g` of degree
/// `d` carrying the slopes below `sigma`, modulo `p^work`.
fn split(
    f: &[BigInt],
    p: u64,
    d: usize,
    sigma: &BigRational,
    work: u32,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let n = f.len() - 1;
    let m = BigInt::from(p).pow(work);
    if d == 0 {
        return Ok((vec![BigInt::one()], reduce(f, &m)));
    }
    if d == n {
        return Ok((reduce(f, &m), vec![BigInt::one()]));
    }
    let gamma = gap(f, p, d, sigma);
    let steps = (BigRational::from_integer(BigInt::from(2 * work)) / &gamma)
        .ceil()
        .to_integer();
    let steps: u64 = steps.try_into().unwrap_or(u64::MAX).saturating_add(8);
    let mut g = reduce(&f[..=d], &m);
    let mut h = vec![BigInt::zero(); n - d + 1];
    h[0] = BigInt::one();
    let pp = BigInt::from(p);
    for _ in 0..steps {
        let prod = mul_mod(&g, &h, &m, n + 1);
        let e: Vec<BigInt> = f.iter().zip(&prod).map(|(x, y)| (x - y).mod_floor(&m)).collect();
        let v = val_bigint(&g[d], p).filter(|&v| v < work).ok_or(Error::InsufficientPrecision {
            have: work as i64,
            needed: 2 * work as i64,
        })?;
        let floor = pp.pow(work - v);
        if e.iter().all(|c| (c % &floor).is_zero()) {
            return Ok((g, h));
        }
        let pv = pp.pow(v);
        let unit = (&g[d] / &pv)
            .modinv(&m)
            .expect("leading coefficient over its p-power is a unit");
        for i in 0..=d {
            g[i] = (&g[i] + &e[i]).mod_floor(&m);
        }
        for j in 1..=n - d {
            let c = &e[d + j];
            if !(c % &pv).is_zero() {
                return Err(Error::InsufficientPrecision {
                    have: work as i64,
                    needed: 2 * work as i64,
                });
            }
            h[j] = (&h[j] + (c / &pv) * &unit).mod_floor(&m);
        }
    }
    Err(Error::InsufficientPrecision {
        have: work as i64,
        needed: 2 * work as i64,
    })
}

fn series_div(a: &[BigInt], b: &[BigInt], len: usize, m: &BigInt) -> Vec<BigInt> {
    // b(0) = 1
    let mut out = vec![BigInt::zero(); len];
    for k in 0..len {
        let mut c = a.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(b.len() - 1) {
            c -= &b[j] * &out[k - j];
        }
        out[k] = c.mod_floor(m);
    }
    out
}

fn to_padic(v: &[BigInt], p: u64, precision: u32) -> Result<Vec<PadicInt>> {
    v.iter()
        .map(|c| PadicInt::from_bigint(p, precision, c))
        .collect()
}

fn midpoint(slopes: &[(BigRational, usize)], a: &BigRational, strict: bool) -> BigRational {
    let below = slopes
        .iter()
        .map(|(s, _)| s)
        .filter(|s| if strict { *s < a } else { *s <= a })
        .max()
        .cloned();
    let above = slopes
        .iter()
        .map(|(s, _)| s)
        .filter(|s| if strict { *s >= a } else { *s > a })
        .min()
        .cloned();
    match (below, above) {
        (Some(l), Some(r)) => (l + r) / BigInt::from(2),
        (Some(l), None) => l + BigInt::one(),
        (None, Some(r)) => r - BigInt::one(),
        (None, None) => a.clone(),
    }
}

/// Slope decomposition of `f` modulo `p^N` by Hensel splitting at the
/// Newton polygon vertices bounding the slope-`v_p(q)` segment.
pub fn slope_factorize(f: &WeilPoly, precision: u32) -> Result<SlopeFactorization> {
    if precision == 0 {
        return Err(Error::domain("precision must be positive"));
    }
    let p = f.p();
    let np: NewtonPolygonData = f.newton_polygon()?;
    let a = BigRational::from_integer(BigInt::from(f.a()));
    let d1: usize = np.slopes.iter().filter(|(s, _)| s < &a).map(|(_, m)| m).sum();
    let d2: usize = np.slopes.iter().filter(|(s, _)| s <= &a).map(|(_, m)| m).sum();
    let sigma1 = midpoint(&np.slopes, &a, true);
    let sigma2 = midpoint(&np.slopes, &a, false);
    let top: u32 = np.vertices.iter().map(|&(_, v)| v).max().unwrap_or(0);

    let mut work = precision + top + 4;
    let mut previous: Option<[Vec<BigInt>; 3]> = None;
    for _ in 0..5 {
        let m = BigInt::from(p).pow(work);
        let attempt = (|| -> Result<[Vec<BigInt>; 3]> {
            let (lower, _) = split(f.coeffs(), p, d1, &sigma1, work)?;
            let (upto, upper) = split(f.coeffs(), p, d2, &sigma2, work)?;
            let middle = series_div(&upto, &lower, d2 - d1 + 1, &m);
            Ok([lower, middle, upper])
        })();
        match attempt {
            Ok(parts) => {
                let target = BigInt::from(p).pow(precision);
                let cut: [Vec<BigInt>; 3] = parts.clone().map(|v| reduce(&v, &target));
                if previous.as_ref() == Some(&cut) {
                    let [lower, middle, upper] = cut;
                    let normalized = np
                        .slopes
                        .iter()
                        .map(|(s, l)| (s / &a, *l))
                        .collect();
                    return Ok(SlopeFactorization {
                        p,
                        a: f.a(),
                        precision,
                        h: d1,
                        lower: to_padic(&lower, p, precision)?,
                        middle: to_padic(&middle, p, precision)?,
                        upper: to_padic(&upper, p, precision)?,
                        raw_slopes: np.slopes.clone(),
                        normalized_slopes: normalized,
                    });
                }
                previous = Some(cut);
            }
            Err(Error::InsufficientPrecision { .. }) => previous = None,
            Err(e) => return Err(e),
        }
        work *= 2;
    }
    Err(Error::InsufficientPrecision {
        have: work as i64,
        needed: 2 * work as i64,
    })
}

/// Outcome of `P_{>1}(T) = c T^h P_{<1}(1/(q^2 T))` on a slope factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEquation {
    pub holds: bool,
    pub h: usize,
    /// `c = q^{2h} / lead(P_{<1})`, known modulo `p^{2ha + N - 2v}` where
    /// `v` is the valuation of the leading coefficient (capped at the
    /// largest representable precision).
    pub c: Option<PadicInt>,
}

/// Solves for the constant `c` relating the outer slope parts.
pub fn functional_equation_check(sf: &SlopeFactorization, q: u64) -> Result<FunctionalEquation> {
    let p = sf.p;
    if crate::exact::modular::checked_prime_power(p, sf.a) != Some(q) {
        return Err(Error::domain(format!("q = {q} is not {p}^{}", sf.a)));
    }
    let h = sf.lower.len() - 1;
    if sf.upper.len() - 1 != h {
        return Err(Error::Structural(format!(
            "deg P_<1 = {h} but deg P_>1 = {}",
            sf.upper.len() - 1
        )));
    }
    let n = sf.precision;
    if h == 0 {
        return Ok(FunctionalEquation {
            holds: true,
            h,
            c: Some(PadicInt::one(p, n)?),
        });
    }
    let qn = PadicInt::new(p, n, q % sf.lower[0].modulus())?;
    let lead = sf.lower[h];
    // u_{h-i} l_h = l_i q^{2(h-i)}
    let holds = (0..=h).all(|i| sf.upper[h - i] * lead == sf.lower[i] * qn.pow(2 * (h - i) as u64));
    let v = lead.valuation().lower_bound();
    let shift = 2 * h as u32 * sf.a;
    let c = if v < n && v <= shift {
        let unit = PadicInt::new(p, n - v, lead.value() / p.pow(v))?.inverse()?;
        let c_prec = (shift + n - 2 * v).min(crate::padic::max_precision(p));
        let unit = PadicInt::new(p, c_prec, unit.value())?;
        Some(unit.like(p as i64).pow((shift - v) as u64) * unit)
    } else {
        None
    };
    Ok(FunctionalEquation { holds, h, c })
}
