//! Hypergeometric series and the catalog of K3 families with their
//! logarithm coefficients.

mod catalog;
mod hypergeometric;

pub use catalog::{
    family_log_coeff, family_log_coeff_closed_form, CoefficientGenerator, CoefficientRule,
    FamilyId, FamilyParams, FormKind, K3FamilySpec,
};
pub use hypergeometric::{
    farey_expand, farey_list, pfq_coefficients, pfq_partial_sum_padic, pfq_terminating,
    pochhammer, FareyIndex, HGParams,
};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact::{multinomial, BigRational};
use crate::padic::{FactorialTable, PadicInt};

/// Coefficient of `(T1⋯Tn)^{t m}` in `F^m` for the family's principal form
/// `F`, computed by enumerating every exponent system. Here `t = 1` for
/// quartics and `t = 2` for double sextics, so the value is the logarithm
/// coefficient `c_{m+1}` resp. `c_{2m+1}`.
///
/// `c` and `lambda` are exact integers; the result is the exact polynomial
/// value of the coefficient at those integers.
pub fn multinomial_oracle(
    spec: &K3FamilySpec,
    c: &[BigInt],
    lambda: Option<&BigInt>,
    m: u64,
) -> Result<BigInt> {
    let scale = match spec.kind {
        FormKind::Quartic => 1,
        FormKind::DoubleSextic => 2,
        FormKind::Elliptic => {
            return Err(Error::Unsupported(format!(
                "{} comes from an elliptic fibration and has no principal form",
                spec.id
            )))
        }
    };
    let mut monomials: Vec<(Vec<u64>, BigInt)> = Vec::new();
    for (i, e) in spec.exponents.iter().enumerate() {
        let coeff = if spec.c_names.is_empty() {
            BigInt::one()
        } else {
            c.get(i)
                .cloned()
                .ok_or_else(|| Error::domain("missing coefficient c_i"))?
        };
        monomials.push((e.clone(), coeff));
    }
    if let Some((e, factor)) = &spec.lambda_monomial {
        let l = lambda.ok_or_else(|| Error::domain("missing λ"))?;
        monomials.push((e.clone(), BigInt::from(*factor) * l));
    }
    let nvars = monomials[0].0.len();
    let target = vec![scale * m; nvars];
    let mut counts = vec![0u64; monomials.len()];
    let mut acc = BigInt::zero();
    enumerate(&monomials, 0, m, target, &mut counts, &mut acc);
    Ok(acc)
}

fn enumerate(
    monomials: &[(Vec<u64>, BigInt)],
    i: usize,
    remaining: u64,
    residual: Vec<u64>,
    counts: &mut Vec<u64>,
    acc: &mut BigInt,
) {
    if i + 1 == monomials.len() {
        let e = &monomials[i].0;
        if residual.iter().zip(e).all(|(&r, &x)| r == remaining * x) {
            counts[i] = remaining;
            let mut term = multinomial(counts);
            for (k, (_, coeff)) in counts.iter().zip(monomials) {
                term *= Pow::pow(coeff, *k);
            }
            *acc += term;
        }
        return;
    }
    let e = &monomials[i].0;
    for k in 0..=remaining {
        if residual.iter().zip(e).any(|(&r, &x)| k * x > r) {
            break;
        }
        counts[i] = k;
        let next = residual.iter().zip(e).map(|(&r, &x)| r - k * x).collect();
        enumerate(monomials, i + 1, remaining - k, next, counts, acc);
    }
    counts[i] = 0;
}

/// Oracle applied to p-adic parameters through their integer representatives.
pub fn multinomial_oracle_params(
    spec: &K3FamilySpec,
    params: &FamilyParams,
    m: u64,
) -> Result<BigInt> {
    let c: Vec<BigInt> = params.c.iter().map(|x| BigInt::from(x.value())).collect();
    let l = params.lambda.map(|x| BigInt::from(x.value()));
    multinomial_oracle(spec, &c, l.as_ref(), m)
}

/// First `order` coefficients of the series the family's coefficient chains
/// converge to.
pub fn limit_series_coeffs(spec: &K3FamilySpec, order: usize) -> Vec<BigRational> {
    pfq_coefficients(&spec.limit_params(), order)
}

/// `κ` with `A_m(x) = Σ_n M_n κ^n x^n` (resp. `B_m`), i.e.
/// `κ = (-1)^w C / w^w` for `x = (C λ^w)^{-1}`.
pub fn quasi_x_ratio(spec: &K3FamilySpec) -> Result<BigRational> {
    let CoefficientRule::QuasiDiagonal { weight, .. } = spec.rule else {
        return Err(Error::Unsupported(format!("{} has no x-variable", spec.id)));
    };
    let c = spec.x_constant().expect("quasi-diagonal family");
    let ww = BigInt::from(weight).pow(weight as u32);
    let sign = if weight % 2 == 1 { -1 } else { 1 };
    Ok(c * BigRational::new(BigInt::from(sign), ww))
}

/// `x = (C λ^w)^{-1} mod p` for a quasi-diagonal family; `None` when
/// `C λ^w ≡ 0`.
pub fn quasi_x_image(spec: &K3FamilySpec, lambda: u64, p: u64) -> Result<Option<u64>> {
    let CoefficientRule::QuasiDiagonal { weight, .. } = spec.rule else {
        return Err(Error::Unsupported(format!("{} has no x-variable", spec.id)));
    };
    let c = spec.x_constant().expect("quasi-diagonal family");
    let num = crate::exact::bigint_mod(c.numer(), p);
    let den = crate::exact::bigint_mod(c.denom(), p);
    let value = crate::exact::modular::mul_mod(
        num,
        crate::exact::modular::pow_mod(lambda % p, weight, p),
        p,
    );
    let value = match crate::exact::modular::inv_mod(den, p) {
        Some(inv) => crate::exact::modular::mul_mod(value, inv, p),
        None => return Ok(None),
    };
    Ok(crate::exact::modular::inv_mod(value, p))
}

/// Coefficients in `x` of `A_m` (quasi-diagonal quartic) or `B_m`
/// (quasi-diagonal sextic) modulo `p^N`, lowest degree first.
pub fn quasi_x_coefficients(
    spec: &K3FamilySpec,
    m: u64,
    table: &mut FactorialTable,
) -> Result<Vec<PadicInt>> {
    let CoefficientRule::QuasiDiagonal { parts: core, weight } = spec.rule else {
        return Err(Error::Unsupported(format!("{} has no x-variable", spec.id)));
    };
    let kappa = PadicInt::from_rational(table.p(), table.precision(), &quasi_x_ratio(spec)?)
        .map_err(|_| {
            Error::domain(format!(
                "the x-normalization of {} is not defined at p = {}",
                spec.id,
                table.p()
            ))
        })?;
    let mut out = Vec::with_capacity((m / weight + 1) as usize);
    let mut kn = kappa.like(1);
    for n in 0..=m / weight {
        let mut parts: Vec<u64> = core.iter().map(|&q| q * n).collect();
        parts.push(m - weight * n);
        out.push(table.multinomial(&parts) * kn);
        kn = kn * kappa;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bigint_mod, binomial, rat};
    use crate::padic::PadicInt;

    fn pint(p: u64, n: u32, v: u64) -> PadicInt {
        PadicInt::new(p, n, v).unwrap()
    }

    #[test]
    fn catalog_examples() {
        let p = 7;
        let spec = FamilyId::DiagonalQuartic.spec();
        let params = FamilyParams::new(&spec, vec![pint(p, 4, 1); 4], None).unwrap();
        assert_eq!(family_log_coeff(&spec, &params, 1, p, 4).unwrap().value(), 24);
        let jac = FamilyId::JacobiQuartic.spec();
        let jp = FamilyParams::new(&jac, vec![], None).unwrap();
        assert_eq!(family_log_coeff(&jac, &jp, 2, 101, 2).unwrap().value(), 36);
        let q = FamilyId::QuasiDiagonalQuartic.spec();
        let qp = FamilyParams::new(&q, vec![], Some(pint(1_000_003, 1, 0))).unwrap();
        assert_eq!(family_log_coeff(&q, &qp, 12, 1_000_003, 1).unwrap().value(), 277_200);
        assert_eq!(
            binomial(12, 2) * binomial(10, 3) * binomial(7, 4),
            BigInt::from(277_200)
        );
    }

    #[test]
    fn parameter_count_is_checked() {
        let spec = FamilyId::QuarticPencil2.spec();
        assert!(FamilyParams::new(&spec, vec![pint(5, 2, 1); 3], Some(pint(5, 2, 1))).is_err());
        assert!(FamilyParams::new(&spec, vec![pint(5, 2, 1); 4], None).is_err());
    }

    #[test]
    fn oracle_examples() {
        let dq = FamilyId::DiagonalQuartic.spec();
        let c: Vec<BigInt> = [2, 3, 5, 7].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(multinomial_oracle(&dq, &c, None, 4).unwrap(), BigInt::from(24 * 210));
        assert_eq!(multinomial_oracle(&dq, &c, None, 3).unwrap(), BigInt::zero());
        let ds = FamilyId::DiagonalSextic.spec();
        let c: Vec<BigInt> = [2, 3, 5].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(multinomial_oracle(&ds, &c, None, 3).unwrap(), BigInt::from(6 * 30));
        let jac = FamilyId::JacobiQuartic.spec();
        assert!(matches!(
            multinomial_oracle(&jac, &[], None, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn quasi_diagonal_oracle_matches_closed_form() {
        let q = FamilyId::QuasiDiagonalQuartic.spec();
        let zero = BigInt::zero();
        for n in 1..=3u64 {
            let got = multinomial_oracle(&q, &[], Some(&zero), 12 * n).unwrap();
            let expect = binomial(12 * n, 2 * n) * binomial(10 * n, 3 * n) * binomial(7 * n, 4 * n);
            assert_eq!(got, expect);
        }
        let s = FamilyId::QuasiDiagonalSextic.spec();
        for n in 1..=2u64 {
            let got = multinomial_oracle(&s, &[], Some(&zero), 15 * n).unwrap();
            assert_eq!(got, binomial(15 * n, 5 * n) * binomial(10 * n, 6 * n));
        }
    }

    #[test]
    fn closed_forms_agree_with_explicit_sums() {
        let p = 13;
        let n = 3;
        for id in FamilyId::ALL {
            let spec = id.spec();
            if matches!(spec.rule, CoefficientRule::Diagonal { .. }) {
                continue;
            }
            let c: Vec<u64> = (0..spec.c_names.len() as u64).map(|i| 2 + i).collect();
            let lambda = spec.has_lambda.then_some(5);
            let params = FamilyParams::from_residues(&spec, p, n, &c, lambda, false).unwrap();
            let mut gen = CoefficientGenerator::new(&spec, &params, p, n).unwrap();
            for m in 0..40 {
                let a = gen.coeff(m);
                let b = family_log_coeff_closed_form(&spec, &params, m, p, n).unwrap();
                assert_eq!(a, b, "{id} m={m}");
            }
        }
    }

    #[test]
    fn oracle_agrees_with_generator() {
        for p in [5u64, 7, 13, 31] {
            for id in FamilyId::ALL {
                let spec = id.spec();
                if spec.kind == FormKind::Elliptic {
                    continue;
                }
                let c: Vec<u64> = (0..spec.c_names.len() as u64).map(|i| 1 + 2 * i).collect();
                let lambda = spec.has_lambda.then_some(3);
                let params = FamilyParams::from_residues(&spec, p, 3, &c, lambda, true).unwrap();
                let mut gen = CoefficientGenerator::new(&spec, &params, p, 3).unwrap();
                let t = if spec.kind == FormKind::Quartic { 1 } else { 2 };
                for m in 0..=24 {
                    let oracle = multinomial_oracle_params(&spec, &params, m).unwrap();
                    let got = gen.uniform(t * m + 1);
                    assert_eq!(got.value(), bigint_mod(&oracle, p.pow(3)), "{id} p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn limit_series_examples() {
        let quartic = limit_series_coeffs(&FamilyId::QuarticPencil1.spec(), 11);
        let sextic = limit_series_coeffs(&FamilyId::SexticPencil1.spec(), 11);
        for r in 0..=10u64 {
            let q = BigRational::new(
                binomial(4 * r, r) * binomial(3 * r, r) * binomial(2 * r, r),
                BigInt::from(4).pow(4 * r as u32),
            );
            assert_eq!(quartic[r as usize], q);
            let s = BigRational::new(
                binomial(6 * r, r) * binomial(5 * r, r) * binomial(4 * r, r),
                BigInt::from(12).pow(3 * r as u32),
            );
            assert_eq!(sextic[r as usize], s);
            for d in [quartic[r as usize].denom(), sextic[r as usize].denom()] {
                let mut d = d.clone();
                for f in [2u32, 3] {
                    while (&d % f).is_zero() {
                        d /= f;
                    }
                }
                assert!(d.is_one());
            }
        }
        for spec in K3FamilySpec::catalog() {
            assert_eq!(limit_series_coeffs(&spec, 1), vec![rat(1, 1)]);
        }
    }

    #[test]
    fn arities_of_quasi_diagonal_series() {
        let q = FamilyId::QuasiDiagonalQuartic.spec();
        let hg = q.terminating_params(30).unwrap();
        assert_eq!((hg.upper().len(), hg.lower().len()), (12, 11));
        let s = FamilyId::QuasiDiagonalSextic.spec();
        let hg = s.terminating_params(30).unwrap();
        assert_eq!((hg.upper().len(), hg.lower().len()), (15, 14));
        let lim = q.limit_params();
        assert_eq!((lim.upper().len(), lim.lower().len()), (6, 5));
        let lim = s.limit_params();
        assert_eq!((lim.upper().len(), lim.lower().len()), (12, 11));
    }

    #[test]
    fn x_polynomial_matches_closed_form() {
        // A_m(x) read off the terminating series coefficients
        let spec = FamilyId::QuasiDiagonalQuartic.spec();
        let p = 13;
        let mut table = FactorialTable::new(p, 3).unwrap();
        for m in [12u64, 24, 30, 168] {
            let xs = quasi_x_coefficients(&spec, m, &mut table).unwrap();
            let hg = spec.terminating_params(m).unwrap();
            let coeffs = pfq_coefficients(&hg, xs.len());
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(xs[n], PadicInt::from_rational(p, 3, c).unwrap(), "m={m} n={n}");
            }
        }
        let spec = FamilyId::QuasiDiagonalSextic.spec();
        let p = 31;
        let mut table = FactorialTable::new(p, 2).unwrap();
        for m in [15u64, 30, 45] {
            let xs = quasi_x_coefficients(&spec, m, &mut table).unwrap();
            let coeffs = pfq_coefficients(&spec.terminating_params(m).unwrap(), xs.len());
            for (n, c) in coeffs.iter().enumerate() {
                assert_eq!(xs[n], PadicInt::from_rational(p, 2, c).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn descriptor_serializes() {
        let json = serde_json::to_value(FamilyId::QuarticPencil2.spec()).unwrap();
        assert_eq!(json["id"], "quartic-pencil-2");
        assert_eq!(json["stride"], 1);
        assert_eq!(json["smoothness_checked"], false);
        assert_eq!(json["exponents"][0], serde_json::json!([3, 1, 0, 0]));
    }
}
