use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::hypergeometric::{farey_list, FareyIndex, HGParams};
use crate::error::{Error, Result};
use crate::exact::{rat, BigRational};
use crate::padic::{FactorialTable, PadicInt};

/// The K3 families of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    JacobiQuartic,
    DiagonalQuartic,
    #[serde(rename = "quartic-pencil-1")]
    QuarticPencil1,
    #[serde(rename = "quartic-pencil-2")]
    QuarticPencil2,
    #[serde(rename = "quartic-pencil-3")]
    QuarticPencil3,
    DiagonalSextic,
    #[serde(rename = "sextic-pencil-1")]
    SexticPencil1,
    #[serde(rename = "sextic-pencil-2")]
    SexticPencil2,
    #[serde(rename = "sextic-pencil-3")]
    SexticPencil3,
    #[serde(rename = "sextic-pencil-4")]
    SexticPencil4,
    QuasiDiagonalQuartic,
    QuasiDiagonalSextic,
}

impl FamilyId {
    pub const ALL: [FamilyId; 12] = [
        FamilyId::JacobiQuartic,
        FamilyId::DiagonalQuartic,
        FamilyId::QuarticPencil1,
        FamilyId::QuarticPencil2,
        FamilyId::QuarticPencil3,
        FamilyId::DiagonalSextic,
        FamilyId::SexticPencil1,
        FamilyId::SexticPencil2,
        FamilyId::SexticPencil3,
        FamilyId::SexticPencil4,
        FamilyId::QuasiDiagonalQuartic,
        FamilyId::QuasiDiagonalSextic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::JacobiQuartic => "jacobi-quartic",
            FamilyId::DiagonalQuartic => "diagonal-quartic",
            FamilyId::QuarticPencil1 => "quartic-pencil-1",
            FamilyId::QuarticPencil2 => "quartic-pencil-2",
            FamilyId::QuarticPencil3 => "quartic-pencil-3",
            FamilyId::DiagonalSextic => "diagonal-sextic",
            FamilyId::SexticPencil1 => "sextic-pencil-1",
            FamilyId::SexticPencil2 => "sextic-pencil-2",
            FamilyId::SexticPencil3 => "sextic-pencil-3",
            FamilyId::SexticPencil4 => "sextic-pencil-4",
            FamilyId::QuasiDiagonalQuartic => "quasi-diagonal-quartic",
            FamilyId::QuasiDiagonalSextic => "quasi-diagonal-sextic",
        }
    }

    pub fn spec(self) -> K3FamilySpec {
        K3FamilySpec::new(self)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown family `{s}`")))
    }
}

/// How the principal part of a family realizes the logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// Quartic in `P^3`: `c_{m+1}` is the coefficient of `(T1T2T3T4)^m` in `F^m`.
    Quartic,
    /// Double cover of `P^2` branched along a sextic: `c_{2m+1}` is the
    /// coefficient of `(T1T2T3)^{2m}` in `F^m`.
    DoubleSextic,
    /// Elliptic fibration; no principal form is used.
    Elliptic,
}

/// Closed-form rule for the logarithm coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientRule {
    /// `a(m) = C(2m, m)^2`.
    CentralBinomialSquare,
    /// `a(n) = ĉ^n (k n)! / (n!)^k`, `k` = number of variables.
    Diagonal { k: u32 },
    /// `a(m) = Σ_u m! / (u!^k (m-ku)!) ĉ^u (-kλ̂)^{m-ku}`.
    Pencil { k: u32 },
    /// `a(m) = Σ_n m! / ((m-wn)! ∏ (p_i n)!) (-wλ̂)^{m-wn}`, `w = Σ p_i`.
    QuasiDiagonal { parts: [u64; 4], weight: u64 },
}

/// A family of the catalog: logarithm shape, parameters and principal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3FamilySpec {
    pub id: FamilyId,
    /// Logarithm `Σ a(m) τ^{e m + 1} / (e m + 1)`.
    pub stride: u64,
    pub kind: FormKind,
    pub c_names: Vec<String>,
    pub has_lambda: bool,
    /// Exponent vectors of the `c_i`-monomials of the principal form (all
    /// coefficients `1` when `c_names` is empty).
    pub exponents: Vec<Vec<u64>>,
    /// Exponent vector and integer factor of the `λ` monomial.
    pub lambda_monomial: Option<(Vec<u64>, i64)>,
    pub rule: CoefficientRule,
    /// No discriminant is computed; pencil members are never checked for smoothness.
    pub smoothness_checked: bool,
}

fn circulant(first: &[u64]) -> Vec<Vec<u64>> {
    let n = first.len();
    (0..n)
        .map(|i| (0..n).map(|j| first[(j + n - i) % n]).collect())
        .collect()
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("c{i}")).collect()
}

impl K3FamilySpec {
    pub fn new(id: FamilyId) -> Self {
        use FamilyId::*;
        let quartic_lambda = Some((vec![1, 1, 1, 1], -4));
        let sextic_lambda = Some((vec![2, 2, 2], -3));
        let (stride, kind, c, exponents, lambda_monomial, rule) = match id {
            JacobiQuartic => (
                4,
                FormKind::Elliptic,
                0,
                vec![],
                None,
                CoefficientRule::CentralBinomialSquare,
            ),
            DiagonalQuartic => (
                4,
                FormKind::Quartic,
                4,
                circulant(&[4, 0, 0, 0]),
                None,
                CoefficientRule::Diagonal { k: 4 },
            ),
            QuarticPencil1 | QuarticPencil2 | QuarticPencil3 => {
                let first: &[u64] = match id {
                    QuarticPencil1 => &[4, 0, 0, 0],
                    QuarticPencil2 => &[3, 1, 0, 0],
                    _ => &[2, 1, 1, 0],
                };
                (
                    1,
                    FormKind::Quartic,
                    4,
                    circulant(first),
                    quartic_lambda,
                    CoefficientRule::Pencil { k: 4 },
                )
            }
            DiagonalSextic => (
                6,
                FormKind::DoubleSextic,
                3,
                circulant(&[6, 0, 0]),
                None,
                CoefficientRule::Diagonal { k: 3 },
            ),
            SexticPencil1 | SexticPencil2 | SexticPencil3 | SexticPencil4 => {
                let first: &[u64] = match id {
                    SexticPencil1 => &[6, 0, 0],
                    SexticPencil2 => &[5, 1, 0],
                    SexticPencil3 => &[4, 2, 0],
                    _ => &[3, 2, 1],
                };
                (
                    2,
                    FormKind::DoubleSextic,
                    3,
                    circulant(first),
                    sextic_lambda,
                    CoefficientRule::Pencil { k: 3 },
                )
            }
            QuasiDiagonalQuartic => (
                1,
                FormKind::Quartic,
                0,
                vec![
                    vec![4, 0, 0, 0],
                    vec![1, 3, 0, 0],
                    vec![0, 0, 4, 0],
                    vec![0, 0, 0, 4],
                ],
                Some((vec![1, 1, 1, 1], -12)),
                CoefficientRule::QuasiDiagonal {
                    parts: [2, 4, 3, 3],
                    weight: 12,
                },
            ),
            QuasiDiagonalSextic => (
                2,
                FormKind::DoubleSextic,
                0,
                vec![vec![6, 0, 0], vec![1, 5, 0], vec![0, 0, 6]],
                Some((vec![2, 2, 2], -15)),
                CoefficientRule::QuasiDiagonal {
                    parts: [4, 6, 5, 0],
                    weight: 15,
                },
            ),
        };
        K3FamilySpec {
            id,
            stride,
            kind,
            c_names: names(c),
            has_lambda: lambda_monomial.is_some(),
            exponents,
            lambda_monomial,
            rule,
            smoothness_checked: false,
        }
    }

    pub fn catalog() -> Vec<K3FamilySpec> {
        FamilyId::ALL.into_iter().map(K3FamilySpec::new).collect()
    }

    pub fn is_pencil(&self) -> bool {
        self.has_lambda
    }

    /// Exponent `e m + 1` carried by `a(m)`.
    pub fn exponent_of(&self, m: u64) -> u64 {
        self.stride * m + 1
    }

    /// The index `m` with `e m + 1 = k`, if any.
    pub fn index_of_exponent(&self, k: u64) -> Option<u64> {
        (k >= 1 && (k - 1) % self.stride == 0).then(|| (k - 1) / self.stride)
    }

    /// Smallest prime the family's formulas are stated for.
    pub fn min_prime(&self) -> u64 {
        match self.id {
            FamilyId::QuasiDiagonalSextic => 7,
            FamilyId::JacobiQuartic | FamilyId::DiagonalQuartic | FamilyId::DiagonalSextic => 3,
            _ => 5,
        }
    }

    /// Whether a prime is allowed for this family.
    pub fn supports_prime(&self, p: u64) -> bool {
        p >= self.min_prime() && crate::exact::modular::is_prime(p)
    }

    /// Hypergeometric series the coefficient chains `a(m_s)` converge to,
    /// as parameters in the family's natural variable.
    pub fn limit_params(&self) -> HGParams {
        use FamilyId::*;
        let one = || rat(1, 1);
        let (upper, lower) = match self.id {
            JacobiQuartic => (vec![rat(1, 4), rat(1, 4)], vec![one()]),
            DiagonalQuartic | QuarticPencil1 | QuarticPencil2 | QuarticPencil3 => {
                (vec![rat(1, 4), rat(2, 4), rat(3, 4)], vec![one(), one()])
            }
            DiagonalSextic | SexticPencil1 | SexticPencil2 | SexticPencil3 | SexticPencil4 => {
                (vec![rat(1, 6), rat(3, 6), rat(5, 6)], vec![one(), one()])
            }
            QuasiDiagonalQuartic => (
                farey_list(&[FareyIndex::single(6), FareyIndex::single(12)]),
                farey_list(&[
                    FareyIndex { n: 1, repeat: 2 },
                    FareyIndex::single(2),
                    FareyIndex::single(3),
                ]),
            ),
            QuasiDiagonalSextic => (
                farey_list(&[FareyIndex::single(10), FareyIndex::single(30)]),
                farey_list(&[
                    FareyIndex { n: 1, repeat: 2 },
                    FareyIndex::single(2),
                    FareyIndex::single(3),
                    FareyIndex::single(4),
                    FareyIndex::single(5),
                ]),
            ),
        };
        HGParams::new(upper, lower).expect("catalog parameters are valid")
    }

    /// The terminating series whose value (times a `λ̂` power) is `a(m)`.
    ///
    /// Pencils use the variable `ĉ λ̂^{-k}`; the quasi-diagonal families use
    /// `x = (C λ̂^w)^{-1}` with `C = 2^10 3^6` resp. `4^4 5^5 6^6`.
    pub fn terminating_params(&self, m: u64) -> Result<HGParams> {
        let m = m as i64;
        let one = || rat(1, 1);
        match self.rule {
            CoefficientRule::CentralBinomialSquare => {
                HGParams::new(vec![rat(-m, 1), rat(-m, 1)], vec![one()])
            }
            CoefficientRule::Pencil { k } => {
                let k = k as i64;
                HGParams::new(
                    (0..k).map(|i| rat(-m + i, k)).collect(),
                    vec![one(); (k - 1) as usize],
                )
            }
            CoefficientRule::QuasiDiagonal { weight, .. } => {
                let w = weight as i64;
                let lower = if w == 12 {
                    farey_list(&[
                        FareyIndex { n: 1, repeat: 3 },
                        FareyIndex { n: 2, repeat: 2 },
                        FareyIndex { n: 3, repeat: 2 },
                        FareyIndex::single(4),
                    ])
                } else {
                    farey_list(&[
                        FareyIndex { n: 1, repeat: 2 },
                        FareyIndex { n: 2, repeat: 2 },
                        FareyIndex::single(3),
                        FareyIndex::single(4),
                        FareyIndex::single(5),
                        FareyIndex::single(6),
                    ])
                };
                HGParams::new((0..w).map(|i| rat(-m + i, w)).collect(), lower)
            }
            CoefficientRule::Diagonal { .. } => Err(Error::Unsupported(format!(
                "{} has no terminating hypergeometric form",
                self.id
            ))),
        }
    }

    /// The constant `C` in `x = (C λ^w)^{-1}` for the quasi-diagonal families.
    pub fn x_constant(&self) -> Option<BigRational> {
        match self.id {
            FamilyId::QuasiDiagonalQuartic => Some(rat(1 << 10, 1) * rat(729, 1)),
            FamilyId::QuasiDiagonalSextic => Some(rat(256 * 3125 * 46656, 1)),
            _ => None,
        }
    }
}

/// Parameter values `ĉ_i` and `λ̂` for one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub c: Vec<PadicInt>,
    pub lambda: Option<PadicInt>,
}

impl FamilyParams {
    pub fn new(spec: &K3FamilySpec, c: Vec<PadicInt>, lambda: Option<PadicInt>) -> Result<Self> {
        if c.len() != spec.c_names.len() {
            return Err(Error::domain(format!(
                "{} takes {} coefficients c_i, got {}",
                spec.id,
                spec.c_names.len(),
                c.len()
            )));
        }
        if spec.has_lambda != lambda.is_some() {
            return Err(Error::domain(format!(
                "{} {} a parameter λ",
                spec.id,
                if spec.has_lambda { "needs" } else { "has no" }
            )));
        }
        Ok(FamilyParams { c, lambda })
    }

    /// Parameters from residues: `c_i` and `λ` given mod `p`, lifted as integers
    /// (or as Teichmüller lifts when `teichmuller` is set).
    pub fn from_residues(
        spec: &K3FamilySpec,
        p: u64,
        precision: u32,
        c: &[u64],
        lambda: Option<u64>,
        teichmuller: bool,
    ) -> Result<Self> {
        let lift = |v: u64| -> Result<PadicInt> {
            if teichmuller {
                crate::padic::teichmuller(v % p, p, precision)
            } else {
                PadicInt::new(p, precision, v)
            }
        };
        let c = c.iter().map(|&v| lift(v)).collect::<Result<Vec<_>>>()?;
        let lambda = lambda.map(lift).transpose()?;
        Self::new(spec, c, lambda)
    }

    pub fn p(&self) -> Option<u64> {
        self.c.first().or(self.lambda.as_ref()).map(|x| x.p())
    }

    /// `ĉ = ∏ ĉ_i` (`1` when the family has no `c_i`).
    pub fn c_hat(&self, p: u64, precision: u32) -> Result<PadicInt> {
        let mut acc = PadicInt::one(p, precision)?;
        for c in &self.c {
            acc = acc * c.reduce(precision);
        }
        Ok(acc)
    }

    pub fn lambda_or_zero(&self, p: u64, precision: u32) -> Result<PadicInt> {
        match &self.lambda {
            Some(l) => Ok(l.reduce(precision)),
            None => PadicInt::zero(p, precision),
        }
    }
}

/// Generator for the coefficients `a(m)` of one family member modulo `p^N`.
///
/// Holds a factorial table so that successive coefficients reuse work.
#[derive(Clone, Debug)]
pub struct CoefficientGenerator {
    spec: K3FamilySpec,
    c_hat: PadicInt,
    lambda: PadicInt,
    table: FactorialTable,
}

impl CoefficientGenerator {
    pub fn new(spec: &K3FamilySpec, params: &FamilyParams, p: u64, precision: u32) -> Result<Self> {
        if let Some(q) = params.p() {
            if q != p {
                return Err(Error::domain(format!(
                    "parameters live over p = {q}, requested p = {p}"
                )));
            }
        }
        let have = params
            .c
            .iter()
            .chain(params.lambda.iter())
            .map(|x| x.precision())
            .min()
            .unwrap_or(precision);
        if have < precision {
            return Err(Error::InsufficientPrecision {
                have: have as i64,
                needed: precision as i64,
            });
        }
        Ok(CoefficientGenerator {
            spec: spec.clone(),
            c_hat: params.c_hat(p, precision)?,
            lambda: params.lambda_or_zero(p, precision)?,
            table: FactorialTable::new(p, precision)?,
        })
    }

    pub fn spec(&self) -> &K3FamilySpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.table.p()
    }

    pub fn precision(&self) -> u32 {
        self.table.precision()
    }

    /// `a(m)` modulo `p^N`.
    pub fn coeff(&mut self, m: u64) -> PadicInt {
        let one = self.c_hat.like(1);
        match self.spec.rule {
            CoefficientRule::CentralBinomialSquare => {
                let b = self.table.binomial(2 * m, m);
                b * b
            }
            CoefficientRule::Diagonal { k } => {
                let parts = vec![m; k as usize];
                self.c_hat.pow(m) * self.table.multinomial(&parts)
            }
            CoefficientRule::Pencil { k } => {
                let k = k as u64;
                let step = self.lambda.like(-(k as i64)) * self.lambda;
                let mut acc = one.like(0);
                let mut parts = vec![0u64; k as usize + 1];
                for u in 0..=m / k {
                    parts[..k as usize].fill(u);
                    parts[k as usize] = m - k * u;
                    let e = m - k * u;
                    if e > 0 && step.is_zero() {
                        continue;
                    }
                    acc = acc + self.table.multinomial(&parts) * self.c_hat.pow(u) * step.pow(e);
                }
                acc
            }
            CoefficientRule::QuasiDiagonal { parts: core, weight } => {
                let step = self.lambda.like(-(weight as i64)) * self.lambda;
                let mut acc = one.like(0);
                for n in 0..=m / weight {
                    let e = m - weight * n;
                    if e > 0 && step.is_zero() {
                        continue;
                    }
                    let mut parts: Vec<u64> = core.iter().map(|&q| q * n).collect();
                    parts.push(e);
                    acc = acc + self.table.multinomial(&parts) * step.pow(e);
                }
                acc
            }
        }
    }

    /// Coefficient `c_k` of `τ^k / k` in the logarithm (zero off the stride).
    pub fn uniform(&mut self, k: u64) -> PadicInt {
        match self.spec.index_of_exponent(k) {
            Some(m) => self.coeff(m),
            None => self.c_hat.like(0),
        }
    }
}

/// The `m`-th logarithm coefficient `a(m)` of a family member modulo `p^N`.
pub fn family_log_coeff(
    spec: &K3FamilySpec,
    params: &FamilyParams,
    m: u64,
    p: u64,
    precision: u32,
) -> Result<PadicInt> {
    Ok(CoefficientGenerator::new(spec, params, p, precision)?.coeff(m))
}

/// `a(m)` through the terminating hypergeometric closed form, for pencils
/// with `λ̂` a unit (and `p ∤ 6`).
pub fn family_log_coeff_closed_form(
    spec: &K3FamilySpec,
    params: &FamilyParams,
    m: u64,
    p: u64,
    precision: u32,
) -> Result<PadicInt> {
    let hg = spec.terminating_params(m)?;
    let last = hg.termination_index().expect("terminating by construction");
    let coeffs = super::hypergeometric::pfq_coefficients(&hg, last as usize + 1);
    let embed = |q: &BigRational| -> Result<PadicInt> {
        PadicInt::from_rational(p, precision, q).map_err(|_| {
            Error::Consistency(format!(
                "{} closed-form term {q} is not {p}-integral at m = {m}",
                spec.id
            ))
        })
    };
    let lambda = params.lambda_or_zero(p, precision)?;
    let c_hat = params.c_hat(p, precision)?;
    let (prefactor, x) = match spec.rule {
        CoefficientRule::CentralBinomialSquare => {
            let b = embed(&BigRational::from_integer(crate::exact::binomial(2 * m, m)))?;
            (b, lambda.like(1))
        }
        CoefficientRule::Pencil { k } => {
            if !lambda.is_unit() {
                return Err(Error::domain("closed form needs a unit λ"));
            }
            let pre = (lambda.like(-(k as i64)) * lambda).pow(m);
            (pre, c_hat * lambda.inverse()?.pow(k as u64))
        }
        CoefficientRule::QuasiDiagonal { weight, .. } => {
            if !lambda.is_unit() {
                return Err(Error::domain("closed form needs a unit λ"));
            }
            let pre = (lambda.like(-(weight as i64)) * lambda).pow(m);
            let cst = embed(&spec.x_constant().expect("quasi-diagonal"))?;
            (pre, (cst * lambda.pow(weight)).inverse()?)
        }
        CoefficientRule::Diagonal { .. } => unreachable!("rejected by terminating_params"),
    };
    let mut acc = x.like(0);
    for c in coeffs.iter().rev() {
        acc = acc * x + embed(c)?;
    }
    Ok(prefactor * acc)
}
