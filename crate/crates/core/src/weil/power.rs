use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly_mul;
use crate::error::{Error, Result};
use crate::exact::{bigint_mod, fp_factor, modular::primes_in, FpPoly};

/// Number of auxiliary primes tried when certifying irreducibility.
const AUXILIARY_PRIMES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    /// `Q mod prime` is irreducible of full degree.
    Certified { prime: u64 },
    /// No witness among the auxiliary primes; factor degrees per prime.
    Probable { evidence: Vec<(u64, Vec<usize>)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerStructure {
    pub q: Vec<BigInt>,
    pub r: u32,
    pub irreducibility: Irreducibility,
}

fn divisors_desc(n: usize) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=n).filter(|k| n % k == 0).collect();
    d.reverse();
    d
}

/// Formal `r`-th root of a series with constant term 1, to degree `len - 1`.
fn rational_root(f: &[BigInt], r: usize, len: usize) -> Vec<BigRational> {
    let rr = BigRational::from_integer(BigInt::from(r));
    let mut g = vec![BigRational::one()];
    // from r f g' = g f' with f_0 = 1:
    // k g_k = (1/r) Σ_{j=1}^{k} j f_j g_{k-j} - Σ_{j=1}^{k-1} (k-j) g_{k-j} f_j
    let fr: Vec<BigRational> = f.iter().cloned().map(BigRational::from_integer).collect();
    let zero = BigRational::zero();
    for k in 1..len {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            let fj = fr.get(j).unwrap_or(&zero);
            if fj.is_zero() {
                continue;
            }
            let gk = &g[k - j];
            let jj = BigRational::from_integer(BigInt::from(j));
            acc += &jj * fj * gk / &rr;
            if j < k {
                acc -= BigRational::from_integer(BigInt::from(k - j)) * gk * fj;
            }
        }
        g.push(acc / BigInt::from(k));
    }
    g
}

fn integral(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn certify(q: &[BigInt]) -> Result<Irreducibility> {
    let deg = q.len() - 1;
    if deg <= 1 {
        return Ok(Irreducibility::Certified { prime: 0 });
    }
    let mut evidence = Vec::new();
    let lead = q.last().expect("nonempty");
    for l in primes_in(2, 1000).into_iter() {
        if evidence.len() == AUXILIARY_PRIMES {
            break;
        }
        if bigint_mod(lead, l) == 0 {
            continue;
        }
        let f = FpPoly::new(l, q.iter().map(|c| bigint_mod(c, l)).collect());
        let fact = fp_factor(&f)?;
        let degrees = fact.degrees();
        if degrees == [deg] {
            return Ok(Irreducibility::Certified { prime: l });
        }
        evidence.push((l, degrees));
    }
    Ok(Irreducibility::Probable { evidence })
}

/// Largest `r` with `R = Q^r` over `Q`, with an irreducibility verdict for `Q`.
///
/// Degree-one `Q` is certified trivially (reported with prime 0).
pub fn power_structure(r_poly: &[BigInt]) -> Result<PowerStructure> {
    let mut f = r_poly.to_vec();
    while f.len() > 1 && f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    if f.first().map(One::is_one) != Some(true) {
        return Err(Error::domain("power structure needs constant term 1"));
    }
    let n = f.len() - 1;
    if n == 0 {
        return Ok(PowerStructure {
            q: f,
            r: 1,
            irreducibility: Irreducibility::Certified { prime: 0 },
        });
    }
    for r in divisors_desc(n) {
        if r == 1 {
            break;
        }
        let Some(q) = integral(&rational_root(&f, r, n / r + 1)) else {
            continue;
        };
        let mut pw = vec![BigInt::one()];
        for _ in 0..r {
            pw = poly_mul(&pw, &q);
        }
        if pw == f {
            let irreducibility = certify(&q)?;
            return Ok(PowerStructure {
                q,
                r: r as u32,
                irreducibility,
            });
        }
    }
    let irreducibility = certify(&f)?;
    Ok(PowerStructure {
        q: f,
        r: 1,
        irreducibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn power(q: &[i64], r: usize) -> Vec<BigInt> {
        let mut acc = ints(&[1]);
        for _ in 0..r {
            acc = poly_mul(&acc, &ints(q));
        }
        acc
    }

    #[test]
    fn constructed_powers() {
        let s = power_structure(&power(&[1, -1, 1], 2)).unwrap();
        assert_eq!((s.q.clone(), s.r), (ints(&[1, -1, 1]), 2));
        assert!(matches!(s.irreducibility, Irreducibility::Certified { .. }));
        let s = power_structure(&power(&[1, -3, 1], 3)).unwrap();
        assert_eq!((s.q, s.r), (ints(&[1, -3, 1]), 3));
    }

    #[test]
    fn squarefree_input() {
        let f = ints(&[1, 2, 3, 5]);
        let s = power_structure(&f).unwrap();
        assert_eq!((s.q, s.r), (f, 1));
    }

    #[test]
    fn reducible_everywhere_is_probable() {
        // 1 + T^4 is irreducible over Q but reducible modulo every prime
        let s = power_structure(&ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.r, 1);
        match s.irreducibility {
            Irreducibility::Probable { evidence } => assert_eq!(evidence.len(), AUXILIARY_PRIMES),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_power_with_square_degree() {
        let mut f = power(&[1, -3, 2], 2);
        f[3] += BigInt::from(1);
        assert_eq!(power_structure(&f).unwrap().r, 1);
    }
}
