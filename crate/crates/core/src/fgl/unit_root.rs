use serde::{Deserialize, Serialize};

use super::FormalGroupLogarithm;
use crate::error::{Error, Result};
use crate::exact::rat;
use crate::hyperfam::{
    limit_series_coeffs, pfq_partial_sum_padic, quasi_x_coefficients, CoefficientRule, FamilyId,
    FamilyParams, FormKind, HGParams, K3FamilySpec,
};
use crate::padic::{
    padic_gamma, teichmuller, FactorialTable, PadicInt, PadicNumber, PadicUnitCertificate,
};

/// One verified instance `c_{μp^{s+1}} ≡ α c_{μp^s} (mod p^{s+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub mu: u64,
    pub s: u32,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRootReport {
    pub p: u64,
    pub s_max: u32,
    pub mu_max: u64,
    /// `α mod p^{s_max+1}`.
    pub alpha: PadicUnitCertificate,
    /// `α` recomputed one level deeper, mod `p^{s_max+2}`.
    pub alpha_next: PadicInt,
    /// `alpha_next ≡ alpha (mod p^{s_max+1})`.
    pub stable: bool,
    pub witnesses: Vec<CongruenceWitness>,
}

fn ratio_at(log: &FormalGroupLogarithm, s: u32) -> Result<PadicInt> {
    let p = log.p();
    let q = p.pow(s);
    let lower = log.coeff(q)?.reduce(s + 1);
    let upper = log.coeff(q * p)?.reduce(s + 1);
    upper.div_unit(&lower)
}

/// Unit root of a height-one formal group by successive coefficient ratios:
/// `α ≡ c_{p^{s+1}} / c_{p^s} (mod p^{s+1})`, checked against the full
/// congruence family for `μ ≤ mu_max` and `s ≤ s_max`.
pub fn unit_root_sb(log: &FormalGroupLogarithm, s_max: u32, mu_max: u64) -> Result<UnitRootReport> {
    let p = log.p();
    if mu_max == 0 {
        return Err(Error::domain("mu_max must be positive"));
    }
    if log.precision() < s_max + 2 {
        return Err(Error::InsufficientPrecision {
            have: log.precision() as i64,
            needed: s_max as i64 + 2,
        });
    }
    if !log.coeff(p)?.is_unit() {
        return Err(Error::domain(format!(
            "c_p vanishes mod {p}: the formal group is not of height one"
        )));
    }
    let alpha = ratio_at(log, s_max)?;
    let alpha_next = ratio_at(log, s_max + 1)?;
    let stable = alpha_next.congruent(&alpha, s_max + 1);

    let mut witnesses = Vec::new();
    for mu in 1..=mu_max {
        let mut q = mu;
        for s in 0..=s_max {
            let lhs = log.coeff(q * p)?.reduce(s + 1);
            let rhs = (alpha.reduce(s + 1) * log.coeff(q)?.reduce(s + 1)).reduce(s + 1);
            if lhs != rhs {
                return Err(Error::CongruenceViolation {
                    mu,
                    s,
                    lhs: lhs.value(),
                    rhs: rhs.value(),
                    modulus_exp: s + 1,
                });
            }
            witnesses.push(CongruenceWitness {
                mu,
                s,
                lhs: lhs.value(),
                rhs: rhs.value(),
            });
            q *= p;
        }
    }
    Ok(UnitRootReport {
        p,
        s_max,
        mu_max,
        alpha: PadicUnitCertificate::new(alpha)?,
        alpha_next,
        stable,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCheckReport {
    pub p: u64,
    pub precision: u32,
    /// Unit root of the Jacobi quartic family from the coefficient ratios.
    pub alpha: PadicInt,
    /// `Γ_p(1/4)^4 / Γ_p(1/2)^2`.
    pub gamma_value: PadicInt,
    pub holds: bool,
}

fn jacobi_log(p: u64, precision: u32) -> Result<FormalGroupLogarithm> {
    let spec = FamilyId::JacobiQuartic.spec();
    let params = FamilyParams::new(&spec, vec![], None)?;
    FormalGroupLogarithm::family(&spec, &params, p, precision)
}

/// Compares the unit root of `Σ C(2m,m)^2 τ^{4m+1}/(4m+1)` with
/// `Γ_p(1/4)^4 / Γ_p(1/2)^2` modulo `p^N`.
pub fn gamma_check(p: u64, precision: u32) -> Result<GammaCheckReport> {
    if p % 4 != 1 {
        return Err(Error::domain(format!(
            "the Jacobi quartic is supersingular at p = {p}; the unit root needs p ≡ 1 mod 4"
        )));
    }
    if precision == 0 {
        return Err(Error::domain("precision must be positive"));
    }
    let log = jacobi_log(p, precision + 1)?;
    let alpha = unit_root_sb(&log, precision - 1, 1)?.alpha.element;
    let g4 = padic_gamma(&rat(1, 4), p, precision)?;
    let g2 = padic_gamma(&rat(1, 2), p, precision)?;
    let gamma_value = g4.pow(4).div_unit(&(g2 * g2))?;
    Ok(GammaCheckReport {
        p,
        precision,
        alpha,
        gamma_value,
        holds: alpha == gamma_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitIdentityReport {
    pub family: FamilyId,
    pub p: u64,
    pub precision: u32,
    /// Unit root from the coefficient ratios.
    pub alpha: PadicInt,
    /// Closed form built from the hypergeometric ratio.
    pub closed_form: PadicInt,
    /// For the sextic pencils: the closed form with the prefactor
    /// `(-3λ̂)^{(p-1)/2}` taken literally, and the number of `p`-adic digits
    /// on which it agrees with `alpha`.
    pub literal_form: Option<PadicInt>,
    pub literal_agreement: Option<u32>,
    /// For the Jacobi quartic: `Γ_p(1/4)^2 / Γ_p(1/2)`, the value of `h(1)`.
    pub gamma_h1: Option<PadicInt>,
}

/// `F(x) / F(x^p)` at a Teichmüller point `x` (so `x^p = x`), modulo `p^N`,
/// from the truncations of `F` below `p^N` and `p^{N-1}`.
fn dwork_ratio(params: &HGParams, x: &PadicInt, precision: u32) -> Result<PadicInt> {
    let p = x.p();
    let rel = precision as i64 + 2;
    let xn = PadicNumber::from_padic_int(x).with_cap(rel);
    let num = pfq_partial_sum_padic(params, &xn, p.pow(precision), rel)?;
    let den = pfq_partial_sum_padic(params, &xn, p.pow(precision - 1), rel)?;
    if !den.is_unit() {
        return Err(Error::domain(format!(
            "the truncated series vanishes mod {p} at the evaluation point"
        )));
    }
    num.div(&den)?.to_padic_int(precision)
}

fn agreement(a: &PadicInt, b: &PadicInt) -> u32 {
    (*a - *b).valuation().lower_bound()
}

/// Checks the unit root of a Jacobi quartic or pencil member against its
/// closed form at Teichmüller parameters, modulo `p^N`.
///
/// `c` and `lambda` are residues mod `p`; they are lifted to Teichmüller
/// representatives.
pub fn limit_identity_check(
    spec: &K3FamilySpec,
    c: &[u64],
    lambda: Option<u64>,
    p: u64,
    precision: u32,
) -> Result<LimitIdentityReport> {
    if precision == 0 {
        return Err(Error::domain("precision must be positive"));
    }
    if !spec.supports_prime(p) {
        return Err(Error::domain(format!("{} is not defined at p = {p}", spec.id)));
    }
    let work = precision + 1;
    let params = FamilyParams::from_residues(spec, p, work, c, lambda, true)?;
    let log = FormalGroupLogarithm::family(spec, &params, p, work)?;
    let alpha = unit_root_sb(&log, precision - 1, 1)?.alpha.element;

    let mut report = LimitIdentityReport {
        family: spec.id,
        p,
        precision,
        alpha,
        closed_form: alpha,
        literal_form: None,
        literal_agreement: None,
        gamma_h1: None,
    };
    match spec.rule {
        CoefficientRule::CentralBinomialSquare => {
            let one = PadicInt::one(p, precision)?;
            let h1 = dwork_ratio(&spec.limit_params(), &one, precision)?;
            report.closed_form = h1 * h1;
            let g4 = padic_gamma(&rat(1, 4), p, precision)?;
            let g2 = padic_gamma(&rat(1, 2), p, precision)?;
            report.gamma_h1 = Some((g4 * g4).div_unit(&g2)?);
        }
        CoefficientRule::Pencil { k } => {
            let c_hat = params.c_hat(p, precision)?;
            let lam = params.lambda_or_zero(p, precision)?;
            let x = c_hat * lam.inverse()?.pow(k as u64);
            let ratio = dwork_ratio(&spec.limit_params(), &x, precision)?;
            match spec.kind {
                FormKind::Quartic => {
                    report.closed_form = lam.pow(p - 1) * ratio;
                }
                _ => {
                    let half = (p - 1) / 2;
                    let w = teichmuller(p - 3 % p, p, precision)?;
                    report.closed_form = (w * lam).pow(half) * ratio;
                    let literal = (lam.like(-3) * lam).pow(half) * ratio;
                    report.literal_agreement = Some(agreement(&literal, &alpha));
                    report.literal_form = Some(literal);
                }
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "{} has no closed-form unit root; use a pencil member or the Jacobi quartic",
                spec.id
            )))
        }
    }
    if report.closed_form != alpha {
        return Err(Error::IdentityViolation {
            lhs: alpha.to_string(),
            rhs: report.closed_form.to_string(),
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitSeriesRow {
    pub n: u64,
    /// `v_p` of the difference between the coefficient of `x^n` in the
    /// polynomial and in the limit series.
    pub valuation: u32,
    /// `s - ⌊log_p n⌋`, the agreement expected at this `n`.
    pub bound: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitSeriesReport {
    pub family: FamilyId,
    pub p: u64,
    pub s: u32,
    /// `m_s = p^s - 1` (quartic) or `(p^s - 1)/2` (sextic).
    pub m: u64,
    pub rows: Vec<LimitSeriesRow>,
    pub holds: bool,
}

fn floor_log(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut q = p;
    while q <= n {
        k += 1;
        q = match q.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    k
}

/// Compares the `x`-coefficients of `A_{m_s}` (resp. `B_{m_s}`) with the
/// limit hypergeometric series modulo `p^s`, coefficient by coefficient.
pub fn limit_series_check(spec: &K3FamilySpec, p: u64, s: u32) -> Result<LimitSeriesReport> {
    if !matches!(spec.rule, CoefficientRule::QuasiDiagonal { .. }) {
        return Err(Error::Unsupported(format!(
            "{} has no x-polynomials; only the quasi-diagonal families do",
            spec.id
        )));
    }
    if !spec.supports_prime(p) || s == 0 {
        return Err(Error::domain(format!(
            "need s ≥ 1 and a prime supported by {}",
            spec.id
        )));
    }
    let q = crate::exact::modular::checked_prime_power(p, s)
        .filter(|&q| q <= super::INDEX_BUDGET)
        .ok_or(Error::TooLarge {
            estimate: (p as u128).pow(s),
            limit: super::INDEX_BUDGET as u128,
        })?;
    let m = match spec.kind {
        FormKind::Quartic => q - 1,
        _ => (q - 1) / 2,
    };
    let mut table = FactorialTable::new(p, s)?;
    let poly = quasi_x_coefficients(spec, m, &mut table)?;
    let limit = limit_series_coeffs(spec, poly.len());
    let mut rows = Vec::with_capacity(poly.len());
    for (n, (a, l)) in poly.iter().zip(&limit).enumerate() {
        let l = PadicInt::from_rational(p, s, l)?;
        let valuation = (*a - l).valuation().lower_bound();
        let bound = s.saturating_sub(floor_log(p, n as u64));
        rows.push(LimitSeriesRow {
            n: n as u64,
            valuation,
            bound,
            ok: valuation >= bound,
        });
    }
    let holds = rows.iter().all(|r| r.ok);
    Ok(LimitSeriesReport {
        family: spec.id,
        p,
        s,
        m,
        rows,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_unit_root_matches_gamma() {
        let r = gamma_check(5, 4).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.alpha.residue(), 4);
    }

    #[test]
    fn unit_root_first_layer_is_c_p() {
        let spec = FamilyId::QuarticPencil1.spec();
        let params = FamilyParams::from_residues(&spec, 13, 4, &[3, 1, 2, 1], Some(5), false).unwrap();
        let log = FormalGroupLogarithm::family(&spec, &params, 13, 4).unwrap();
        let r = unit_root_sb(&log, 2, 3).unwrap();
        assert_eq!(r.alpha.witness, log.coeff(13).unwrap().residue());
        assert!(r.stable);
        assert_eq!(r.witnesses.len(), 9);
    }

    #[test]
    fn pencil_limit_identities() {
        let q = FamilyId::QuarticPencil1.spec();
        let r = limit_identity_check(&q, &[3, 1, 2, 1], Some(5), 13, 2).unwrap();
        assert_eq!(r.alpha, r.closed_form);
        let s = FamilyId::SexticPencil1.spec();
        let r = limit_identity_check(&s, &[2, 1, 1], Some(3), 7, 3).unwrap();
        assert!(r.literal_agreement.unwrap() >= 1);
        let r = limit_identity_check(&FamilyId::JacobiQuartic.spec(), &[], None, 5, 3).unwrap();
        assert_eq!(r.gamma_h1.map(|h| h * h), Some(r.alpha));
    }

    #[test]
    fn limit_series_agreement_pattern() {
        let r = limit_series_check(&FamilyId::QuasiDiagonalQuartic.spec(), 7, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.rows[7].bound, 2);
        let r = limit_series_check(&FamilyId::QuasiDiagonalSextic.spec(), 11, 2).unwrap();
        assert!(r.holds);
    }
}
