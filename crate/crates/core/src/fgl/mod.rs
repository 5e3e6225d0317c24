//! Formal group laws from explicit logarithms: construction, height
//! classification, unit roots and the p-adic limit identities.

mod group_law;
mod height;
mod unit_root;

pub use group_law::{build_group_law, build_group_law_to, check_axioms, AxiomReport, GroupLaw};
pub use height::{
    height_classify, supersingular_divisibility, v_polynomials, DivisibilityReport,
    DivisibilityRow, HeightClass, HeightEvidence, HeightReport, ValuationRow, VPolynomials,
    INDEX_BUDGET,
};
pub use unit_root::{
    gamma_check, limit_identity_check, limit_series_check, unit_root_sb, CongruenceWitness,
    GammaCheckReport, LimitIdentityReport, LimitSeriesReport, LimitSeriesRow, UnitRootReport,
};

use std::collections::HashMap;
use std::sync::{Mutex, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfam::{quasi_x_coefficients, CoefficientGenerator, FamilyParams, K3FamilySpec};
use crate::padic::{FactorialTable, PadicInt};

/// Where the coefficients of a logarithm come from.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LogSource {
    /// A catalog family member.
    Family {
        spec: K3FamilySpec,
        params: FamilyParams,
    },
    /// Quasi-diagonal family normalized to the variable `x`:
    /// `c_{em+1} = A_m(x̂)` (resp. `B_m(x̂)`). Strictly isomorphic to the
    /// pencil member `G_λ` through `τ ↦ τ / (-wλ̂)` whenever `x̂` is the
    /// image of `λ̂`.
    QuasiDiagonalX { spec: K3FamilySpec, x: PadicInt },
    /// Explicit coefficients `c_1..c_D` of `Σ c_k τ^k / k`.
    Explicit { coeffs: Vec<PadicInt> },
}

enum Engine {
    Family(Mutex<CoefficientGenerator>),
    QuasiX(Mutex<FactorialTable>),
    Explicit,
}

/// `l(τ) = Σ_k c_k τ^k / k` with `c_1 = 1` and `c_k ∈ Z_p` known modulo
/// `p^N`. Coefficients are computed on demand and cached; the cache is
/// shared between threads.
pub struct FormalGroupLogarithm {
    p: u64,
    precision: u32,
    stride: u64,
    source: LogSource,
    engine: Engine,
    cache: RwLock<HashMap<u64, PadicInt>>,
}

impl std::fmt::Debug for FormalGroupLogarithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormalGroupLogarithm")
            .field("p", &self.p)
            .field("precision", &self.precision)
            .field("stride", &self.stride)
            .field("source", &self.source)
            .finish()
    }
}

impl FormalGroupLogarithm {
    pub fn family(
        spec: &K3FamilySpec,
        params: &FamilyParams,
        p: u64,
        precision: u32,
    ) -> Result<Self> {
        if !crate::exact::modular::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let gen = CoefficientGenerator::new(spec, params, p, precision)?;
        Ok(FormalGroupLogarithm {
            p,
            precision,
            stride: spec.stride,
            source: LogSource::Family {
                spec: spec.clone(),
                params: params.clone(),
            },
            engine: Engine::Family(Mutex::new(gen)),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn quasi_diagonal_x(spec: &K3FamilySpec, x: PadicInt) -> Result<Self> {
        if spec.x_constant().is_none() {
            return Err(Error::Unsupported(format!("{} has no x-variable", spec.id)));
        }
        let table = FactorialTable::new(x.p(), x.precision())?;
        Ok(FormalGroupLogarithm {
            p: x.p(),
            precision: x.precision(),
            stride: spec.stride,
            source: LogSource::QuasiDiagonalX {
                spec: spec.clone(),
                x,
            },
            engine: Engine::QuasiX(Mutex::new(table)),
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// From explicit `c_1..c_D`; requires `c_1 = 1`.
    pub fn explicit(coeffs: Vec<PadicInt>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::domain("a logarithm needs at least c_1"))?;
        if first.value() != 1 % first.modulus() {
            return Err(Error::domain("logarithm coefficients must start with c_1 = 1"));
        }
        let (p, precision) = (first.p(), first.precision());
        if coeffs.iter().any(|c| c.p() != p) {
            return Err(Error::domain("mixed primes among logarithm coefficients"));
        }
        let precision = coeffs.iter().map(|c| c.precision()).min().unwrap_or(precision);
        Ok(FormalGroupLogarithm {
            p,
            precision,
            stride: 1,
            source: LogSource::Explicit { coeffs },
            engine: Engine::Explicit,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// `l(τ) = τ`.
    pub fn additive(p: u64, precision: u32, cutoff: usize) -> Result<Self> {
        let mut c = vec![PadicInt::zero(p, precision)?; cutoff];
        c[0] = PadicInt::one(p, precision)?;
        Self::explicit(c)
    }

    /// `l(τ) = -log(1 - τ) = Σ τ^k / k`.
    pub fn multiplicative(p: u64, precision: u32, cutoff: usize) -> Result<Self> {
        Self::explicit(vec![PadicInt::one(p, precision)?; cutoff])
    }

    /// The same logarithm at another precision (not above what the source
    /// parameters carry).
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        match &self.source {
            LogSource::Family { spec, params } => Self::family(spec, params, self.p, precision),
            LogSource::QuasiDiagonalX { spec, x } => {
                if x.precision() < precision {
                    return Err(Error::InsufficientPrecision {
                        have: x.precision() as i64,
                        needed: precision as i64,
                    });
                }
                Self::quasi_diagonal_x(spec, x.reduce(precision))
            }
            LogSource::Explicit { coeffs } => {
                if self.precision < precision {
                    return Err(Error::InsufficientPrecision {
                        have: self.precision as i64,
                        needed: precision as i64,
                    });
                }
                Self::explicit(coeffs.iter().map(|c| c.reduce(precision)).collect())
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    pub fn source(&self) -> &LogSource {
        &self.source
    }

    pub fn spec(&self) -> Option<&K3FamilySpec> {
        match &self.source {
            LogSource::Family { spec, .. } | LogSource::QuasiDiagonalX { spec, .. } => Some(spec),
            LogSource::Explicit { .. } => None,
        }
    }

    /// `c_k` modulo `p^N`.
    pub fn coeff(&self, k: u64) -> Result<PadicInt> {
        if k == 0 {
            return Err(Error::domain("logarithm coefficients start at k = 1"));
        }
        if let Some(c) = self.cache.read().expect("cache lock").get(&k) {
            return Ok(*c);
        }
        let zero = PadicInt::zero(self.p, self.precision)?;
        let value = if (k - 1) % self.stride != 0 {
            zero
        } else {
            let m = (k - 1) / self.stride;
            match (&self.engine, &self.source) {
                (Engine::Family(gen), _) => {
                    if k > INDEX_BUDGET {
                        return Err(Error::TooLarge {
                            estimate: k as u128,
                            limit: INDEX_BUDGET as u128,
                        });
                    }
                    gen.lock().expect("generator lock").coeff(m)
                }
                (Engine::QuasiX(table), LogSource::QuasiDiagonalX { spec, x }) => {
                    if k > INDEX_BUDGET {
                        return Err(Error::TooLarge {
                            estimate: k as u128,
                            limit: INDEX_BUDGET as u128,
                        });
                    }
                    let xs = {
                        let mut t = table.lock().expect("table lock");
                        quasi_x_coefficients(spec, m, &mut t)?
                    };
                    let x = x.reduce(self.precision);
                    xs.iter().rev().fold(zero, |acc, c| acc * x + *c)
                }
                (_, LogSource::Explicit { coeffs }) => match coeffs.get(k as usize - 1) {
                    Some(c) => c.reduce(self.precision),
                    None => {
                        return Err(Error::domain(format!(
                            "explicit logarithm has no coefficient c_{k} (only {})",
                            coeffs.len()
                        )))
                    }
                },
                _ => unreachable!("engine matches source"),
            }
        };
        self.cache.write().expect("cache lock").insert(k, value);
        Ok(value)
    }

    /// `a(m) = c_{em+1}` in the family's own indexing.
    pub fn a(&self, m: u64) -> Result<PadicInt> {
        self.coeff(self.stride * m + 1)
    }

    /// `c_1..c_D`.
    pub fn coefficients(&self, cutoff: usize) -> Result<Vec<PadicInt>> {
        (1..=cutoff as u64).map(|k| self.coeff(k)).collect()
    }
}
