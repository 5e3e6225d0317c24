use num_bigint::BigInt;
use serde::Serialize;

use super::FormalGroupLogarithm;
use crate::error::{Error, Result};
use crate::padic::{PadicInt, PadicNumber};
use crate::series::{associativity_defect, group_law, BivariateSeries, Coeff, TruncatedSeries};

/// `G(τ₁, τ₂) = l⁻¹(l(τ₁) + l(τ₂))` modulo `p^N` and total degree `D+1`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupLaw {
    pub p: u64,
    pub precision: u32,
    pub cutoff: usize,
    pub series: BivariateSeries<PadicInt>,
}

/// `v_p(lcm(1..D))`, the precision the denominators `k ≤ D` can consume.
pub(crate) fn lcm_valuation(p: u64, cutoff: usize) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= cutoff as u64 {
        v += 1;
        q = q.saturating_mul(p);
    }
    v
}

/// Build the group law at the precision the logarithm supports,
/// `N - v_p(lcm(1..D))`.
pub fn build_group_law(log: &FormalGroupLogarithm, cutoff: usize) -> Result<GroupLaw> {
    let loss = lcm_valuation(log.p(), cutoff);
    if log.precision() <= loss {
        return Err(Error::InsufficientPrecision {
            have: log.precision() as i64,
            needed: (loss + 1) as i64,
        });
    }
    build_group_law_to(log, cutoff, log.precision() - loss)
}

/// Build the group law modulo `p^target`; the logarithm must be known to
/// `target + v_p(lcm(1..D))`.
///
/// The coefficient representatives are treated as exact and the law is
/// computed in `Q_p` with guard digits; perturbing `c_k` by `p^N` moves `G`
/// by at most `p^{N - v_p(k)}`, so the result is correct to `target`.
pub fn build_group_law_to(
    log: &FormalGroupLogarithm,
    cutoff: usize,
    target: u32,
) -> Result<GroupLaw> {
    let p = log.p();
    let loss = lcm_valuation(p, cutoff);
    let needed = target + loss;
    if log.precision() < needed {
        return Err(Error::InsufficientPrecision {
            have: log.precision() as i64,
            needed: needed as i64,
        });
    }
    let c = log.coefficients(cutoff)?;
    let mut guard = 4 * loss as i64 + 4;
    for _ in 0..4 {
        let work = needed as i64 + guard;
        let l = TruncatedSeries::logarithm(
            &PadicNumber::zero(p, work),
            &c.iter()
                .map(|ck| PadicNumber::from_bigint(p, work, &BigInt::from(ck.value())))
                .collect::<Vec<_>>(),
        )?;
        let g = group_law(&l)?;
        match to_integral(&g, target) {
            Ok(series) => {
                return Ok(GroupLaw {
                    p,
                    precision: target,
                    cutoff,
                    series,
                })
            }
            Err(Error::InsufficientPrecision { .. }) => guard *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InsufficientPrecision {
        have: log.precision() as i64,
        needed: needed as i64 + guard,
    })
}

fn to_integral(g: &BivariateSeries<PadicNumber>, target: u32) -> Result<BivariateSeries<PadicInt>> {
    g.map(|c| {
        c.to_padic_int(target).map_err(|e| match e {
            Error::NotIntegral(_) => {
                Error::NotIntegral(format!("group law coefficient {c} is not p-integral"))
            }
            e => e,
        })
    })
}

/// Outcome of the group-axiom checks on a truncated law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity: bool,
    pub commutative: bool,
    /// First monomial `τ₁^i τ₂^j τ₃^k` where associativity fails.
    pub associativity_defect: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.identity && self.commutative && self.associativity_defect.is_none()
    }
}

/// `G(τ, 0) = τ`, `G(τ₁, τ₂) = G(τ₂, τ₁)` and associativity, all modulo the cutoff.
pub fn check_axioms(law: &GroupLaw) -> Result<AxiomReport> {
    let g = &law.series;
    let t = g.template();
    let id = TruncatedSeries::identity(t, g.cutoff());
    let same = |a: &TruncatedSeries<PadicInt>| {
        a.coeffs().iter().zip(id.coeffs()).all(|(x, y)| x.sub(y).is_zero())
    };
    let identity = same(&g.at_second_zero()) && same(&g.at_first_zero());
    let swapped = g.swap();
    let commutative = g.iter().all(|(i, j, c)| c.sub(swapped.coeff(i, j)).is_zero());
    Ok(AxiomReport {
        identity,
        commutative,
        associativity_defect: associativity_defect(g)?,
    })
}
