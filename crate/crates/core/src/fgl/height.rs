use serde::{Deserialize, Serialize};

use super::{FormalGroupLogarithm, LogSource};
use crate::error::{Error, Result};
use crate::exact::{fp_gcd, FpPoly};
use crate::hyperfam::{quasi_x_coefficients, CoefficientRule, FamilyId, K3FamilySpec};
use crate::padic::{FactorialTable, PadicInt, Valuation};

/// Largest logarithm index evaluated by the screening; `s_max` is lowered
/// when `p^s` would exceed it.
pub const INDEX_BUDGET: u64 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "bound", rename_all = "snake_case")]
pub enum HeightClass {
    Height1,
    Height2,
    /// `v_p(c_{p^s}) ≥ s` for every `s` up to the bound.
    SupersingularUpTo(u32),
    UndeterminedAtLeast3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRow {
    pub s: u32,
    pub index: u64,
    pub valuation: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightEvidence {
    pub p: u64,
    /// `c_p mod p`, i.e. `a(p-1)` for the pencils.
    pub c_p: u64,
    /// `(c_{p²} - c_p^{p+1}) / p mod p`, when reached.
    pub v2: Option<u64>,
    /// `v_p(c_{p^s})` for `s = 1..=s_used`, when reached.
    pub valuations: Vec<ValuationRow>,
    pub s_max_requested: u32,
    pub s_max_used: u32,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub classification: HeightClass,
    pub evidence: HeightEvidence,
}

impl HeightReport {
    /// Classification implied by the evidence alone.
    pub fn recheck(&self) -> HeightClass {
        let e = &self.evidence;
        if e.c_p != 0 {
            return HeightClass::Height1;
        }
        if matches!(e.v2, Some(v) if v != 0) {
            return HeightClass::Height2;
        }
        if !e.valuations.is_empty() && e.valuations.iter().all(|r| r.valuation.is_at_least(r.s)) {
            return HeightClass::SupersingularUpTo(e.s_max_used);
        }
        HeightClass::UndeterminedAtLeast3
    }
}

fn screening_bound(p: u64, s_max: u32) -> u32 {
    let mut s = 0;
    let mut q = 1u64;
    while s < s_max {
        match q.checked_mul(p) {
            Some(next) if next <= INDEX_BUDGET => {
                q = next;
                s += 1;
            }
            _ => break,
        }
    }
    s
}

/// Height of the reduction of the formal group with logarithm `log`.
///
/// Height one when `c_p` is a unit; height two when
/// `(c_{p²} - c_p^{p+1}) / p` is; otherwise the valuations `v_p(c_{p^s})`
/// are screened against `s` for `s ≤ s_max`.
pub fn height_classify(log: &FormalGroupLogarithm, s_max: u32) -> Result<HeightReport> {
    if s_max < 2 {
        return Err(Error::domain("height screening needs s_max ≥ 2"));
    }
    let p = log.p();
    if let Some(spec) = log.spec() {
        if !spec.supports_prime(p) {
            return Err(Error::domain(format!("{} is not defined at p = {p}", spec.id)));
        }
    }
    let needed = s_max.max(2);
    if log.precision() < needed {
        return Err(Error::InsufficientPrecision {
            have: log.precision() as i64,
            needed: needed as i64,
        });
    }
    let s_used = screening_bound(p, s_max);
    let mut warnings = Vec::new();
    if s_used < 2 {
        return Err(Error::TooLarge {
            estimate: (p as u128) * (p as u128),
            limit: INDEX_BUDGET as u128,
        });
    }
    if s_used < s_max {
        warnings.push(format!(
            "s_max lowered from {s_max} to {s_used}: index p^{} exceeds the budget {INDEX_BUDGET}",
            s_used + 1
        ));
    }
    let mut evidence = HeightEvidence {
        p,
        c_p: 0,
        v2: None,
        valuations: Vec::new(),
        s_max_requested: s_max,
        s_max_used: s_used,
        warnings,
    };
    let cp = log.coeff(p)?;
    evidence.c_p = cp.residue();
    if cp.is_unit() {
        return Ok(HeightReport {
            classification: HeightClass::Height1,
            evidence,
        });
    }
    let cp2 = log.coeff(p * p)?.reduce(2);
    let diff = cp2 - cp.reduce(2).pow(p + 1);
    let v2 = diff.div_p_power(1).map_err(|_| {
        Error::Consistency(format!(
            "(c_{{p^2}} - c_p^{{p+1}}) is not divisible by p = {p}: {diff}"
        ))
    })?;
    evidence.v2 = Some(v2.residue());
    if v2.is_unit() {
        return Ok(HeightReport {
            classification: HeightClass::Height2,
            evidence,
        });
    }
    let mut q = 1u64;
    for s in 1..=s_used {
        q *= p;
        let c = log.coeff(q)?.reduce(s_used.max(s));
        evidence.valuations.push(ValuationRow {
            s,
            index: q,
            valuation: c.valuation(),
        });
    }
    let report = HeightReport {
        classification: HeightClass::UndeterminedAtLeast3,
        evidence,
    };
    Ok(HeightReport {
        classification: report.recheck(),
        ..report
    })
}

/// `V_1` and `V_2` of a quasi-diagonal family over `F_p`, as polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolynomials {
    pub family: FamilyId,
    pub p: u64,
    pub v1: FpPoly,
    pub v2: FpPoly,
    pub gcd: FpPoly,
}

fn poly_mul(a: &[PadicInt], b: &[PadicInt]) -> Vec<PadicInt> {
    let zero = a[0].like(0);
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + *x * *y;
        }
    }
    out
}

fn poly_pow(a: &[PadicInt], mut e: u64) -> Vec<PadicInt> {
    let mut acc = vec![a[0].like(1)];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(&base, &base);
        }
    }
    acc
}

/// `V_1 = A_{p-1}` and `V_2 = (A_{p²-1} - A_{p-1}^{p+1}) / p` in `x` over
/// `F_p` (with `B_{(p-1)/2}`, `B_{(p²-1)/2}` for the sextic family).
pub fn v_polynomials(spec: &K3FamilySpec, p: u64) -> Result<VPolynomials> {
    if !matches!(spec.rule, CoefficientRule::QuasiDiagonal { .. }) {
        return Err(Error::Unsupported(format!(
            "{} has no V-polynomials; only the quasi-diagonal families do",
            spec.id
        )));
    }
    if !spec.supports_prime(p) {
        return Err(Error::domain(format!("{} is not defined at p = {p}", spec.id)));
    }
    let (m1, m2) = match spec.kind {
        crate::hyperfam::FormKind::Quartic => (p - 1, p * p - 1),
        _ => ((p - 1) / 2, (p * p - 1) / 2),
    };
    let mut table = FactorialTable::new(p, 2)?;
    let a1 = quasi_x_coefficients(spec, m1, &mut table)?;
    let a2 = quasi_x_coefficients(spec, m2, &mut table)?;
    let pw = poly_pow(&a1, p + 1);
    let len = pw.len().max(a2.len());
    let zero = a1[0].like(0);
    let mut v2 = Vec::with_capacity(len);
    for i in 0..len {
        let d = *a2.get(i).unwrap_or(&zero) - *pw.get(i).unwrap_or(&zero);
        let q = d.div_p_power(1).map_err(|_| {
            Error::Structural(format!(
                "coefficient of x^{i} in A_(p^2-1) - A_(p-1)^(p+1) is not divisible by p = {p}"
            ))
        })?;
        v2.push(q.value());
    }
    let v1 = FpPoly::new(p, a1.iter().map(|c| c.residue()).collect());
    let v2 = FpPoly::new(p, v2);
    let gcd = fp_gcd(&v1, &v2)?;
    Ok(VPolynomials {
        family: spec.id,
        p,
        v1,
        v2,
        gcd,
    })
}

/// One index where the integrality `v_p(a(m)) ≥ v_p(em+1)` is tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityRow {
    pub m: u64,
    pub exponent: u64,
    pub required: u32,
    pub found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub family: FamilyId,
    pub p: u64,
    pub s_max: u32,
    /// All `m` with `em+1 ≤ p^{2 s_max}` were examined.
    pub indices_examined: u64,
    /// The rows with `p | em+1`.
    pub rows: Vec<DivisibilityRow>,
    /// For the Jacobi quartic: `v_p(C((p^{2s}-1)/2, (p^{2s}-1)/4))` for `s ≤ s_max`.
    pub central_binomials: Vec<(u32, u64)>,
}

/// Integrality of the logarithm in the supersingular residue classes:
/// `p^{v_p(em+1)} | a(m)` for every `m` with `em+1 ≤ p^{2 s_max}`.
pub fn supersingular_divisibility(
    spec: &K3FamilySpec,
    p: u64,
    s_max: u32,
) -> Result<DivisibilityReport> {
    let applicable = match spec.id {
        FamilyId::JacobiQuartic | FamilyId::DiagonalQuartic => p % 4 == 3,
        FamilyId::DiagonalSextic => p % 6 != 1,
        _ => {
            return Err(Error::Unsupported(format!(
                "{} has no supersingular divisibility statement",
                spec.id
            )))
        }
    };
    if !crate::exact::modular::is_prime(p) || !applicable {
        return Err(Error::domain(format!(
            "p = {p} is not in the supersingular class of {}",
            spec.id
        )));
    }
    let bound = crate::exact::modular::checked_prime_power(p, 2 * s_max)
        .filter(|&b| b <= INDEX_BUDGET)
        .ok_or(Error::TooLarge {
            estimate: (p as u128).pow(2 * s_max),
            limit: INDEX_BUDGET as u128,
        })?;
    let e = spec.stride;
    let mut table = FactorialTable::new(p, 1)?;
    let valuation = |t: &mut FactorialTable, m: u64| -> u64 {
        match spec.id {
            FamilyId::JacobiQuartic => 2 * t.multinomial_valuation(&[m, m]),
            FamilyId::DiagonalQuartic => t.multinomial_valuation(&[m; 4]),
            _ => t.multinomial_valuation(&[m; 3]),
        }
    };
    let mut rows = Vec::new();
    let mut m = 0u64;
    while e * m < bound {
        let k = e * m + 1;
        let required = crate::exact::modular::val_u64(k, p);
        if required > 0 {
            let found = valuation(&mut table, m);
            if found < required as u64 {
                return Err(Error::DivisibilityViolation {
                    index: m,
                    found: found as u32,
                    required,
                });
            }
            rows.push(DivisibilityRow {
                m,
                exponent: k,
                required,
                found,
            });
        }
        m += 1;
    }
    let mut central = Vec::new();
    if spec.id == FamilyId::JacobiQuartic {
        for s in 1..=s_max {
            let q = p.pow(2 * s);
            let (n, k) = ((q - 1) / 2, (q - 1) / 4);
            let v = table.multinomial_valuation(&[k, n - k]);
            if v < s as u64 {
                return Err(Error::DivisibilityViolation {
                    index: k,
                    found: v as u32,
                    required: s,
                });
            }
            central.push((s, v));
        }
    }
    Ok(DivisibilityReport {
        family: spec.id,
        p,
        s_max,
        indices_examined: m,
        rows,
        central_binomials: central,
    })
}

impl FormalGroupLogarithm {
    /// Whether this logarithm is the x-normalized quasi-diagonal one.
    pub fn is_x_normalized(&self) -> bool {
        matches!(self.source(), LogSource::QuasiDiagonalX { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfam::FamilyParams;

    fn diagonal(id: FamilyId, p: u64, n: u32) -> FormalGroupLogarithm {
        let spec = id.spec();
        let c = vec![1; spec.c_names.len()];
        let params = FamilyParams::from_residues(&spec, p, n, &c, None, false).unwrap();
        FormalGroupLogarithm::family(&spec, &params, p, n).unwrap()
    }

    #[test]
    fn diagonal_quartic_dichotomy() {
        for p in [5u64, 13] {
            let r = height_classify(&diagonal(FamilyId::DiagonalQuartic, p, 4), 3).unwrap();
            assert_eq!(r.classification, HeightClass::Height1);
            assert_eq!(r.recheck(), r.classification);
        }
        for p in [7u64, 11] {
            let r = height_classify(&diagonal(FamilyId::DiagonalQuartic, p, 4), 3).unwrap();
            assert_eq!(r.classification, HeightClass::SupersingularUpTo(3));
            assert_eq!(r.recheck(), r.classification);
        }
    }

    #[test]
    fn v_polynomials_at_13() {
        let v = v_polynomials(&FamilyId::QuasiDiagonalQuartic.spec(), 13).unwrap();
        assert_eq!(v.v1, FpPoly::new(13, vec![1, 10]));
        let mut expected = FpPoly::constant(13, 8).mul(&FpPoly::x(13));
        for r in [2i64, 6, 10] {
            expected = expected.mul(&FpPoly::from_i64(13, &[r, 1]));
        }
        expected = expected
            .mul(&FpPoly::from_i64(13, &[10, 8, 1]))
            .mul(&FpPoly::from_i64(13, &[7, 0, 3, 6, 0, 12, 5, 9, 1]));
        assert_eq!(v.v2, expected);
        assert!(v.gcd.is_one());
    }

    #[test]
    fn sextic_v1_at_31() {
        let v = v_polynomials(&FamilyId::QuasiDiagonalSextic.spec(), 31).unwrap();
        assert_eq!(v.v1, FpPoly::new(31, vec![1, 20]));
        assert_eq!(v.v2.degree(), Some(32));
        assert_eq!(&v.v2.coeffs()[..3], &[0, 7, 2]);
        assert_eq!(v.v2.leading(), 24);
    }

    #[test]
    fn supersingular_examples() {
        let r = supersingular_divisibility(&FamilyId::JacobiQuartic.spec(), 3, 1).unwrap();
        assert_eq!(r.central_binomials, vec![(1, 1)]);
        let r = supersingular_divisibility(&FamilyId::DiagonalQuartic.spec(), 7, 2).unwrap();
        assert!(r.indices_examined > 100);
        assert!(r.rows.iter().all(|row| row.found >= row.required as u64));
        supersingular_divisibility(&FamilyId::DiagonalSextic.spec(), 11, 2).unwrap();
        assert!(supersingular_divisibility(&FamilyId::DiagonalQuartic.spec(), 13, 2).is_err());
    }
}
