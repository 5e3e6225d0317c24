//! Truncated power series in one and two variables over a [`Coeff`] ring,
//! with composition and compositional inversion.
//!
//! A series with cutoff `D` stores the coefficients of degrees `0..=D`;
//! everything of higher degree is unknown rather than zero.

mod bivariate;
mod coeff;
mod trivariate;

pub use bivariate::{compose_bivariate, BivariateSeries};
pub use coeff::Coeff;
pub(crate) use trivariate::TrivariateSeries;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ_{k=0}^{D} c_k τ^k`, known modulo `τ^{D+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// From coefficients of degrees `0..=D`; the cutoff is `len - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a truncated series needs at least one coefficient"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Series `Σ_{k=1}^{D} c_k τ^k` from the coefficients `c_1..c_D`.
    pub fn from_positive(template: &C, coeffs: Vec<C>) -> Self {
        let mut all = Vec::with_capacity(coeffs.len() + 1);
        all.push(template.zero_like());
        all.extend(coeffs);
        TruncatedSeries { coeffs: all }
    }

    pub fn zero(template: &C, cutoff: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![template.zero_like(); cutoff + 1],
        }
    }

    /// The identity series `τ`.
    pub fn identity(template: &C, cutoff: usize) -> Self {
        let mut s = Self::zero(template, cutoff);
        if cutoff >= 1 {
            s.coeffs[1] = template.one_like();
        }
        s
    }

    /// A logarithm-shaped series `Σ c_k τ^k / k` from `c_1..c_D`.
    pub fn logarithm(template: &C, c: &[C]) -> Result<Self> {
        let coeffs = c
            .iter()
            .enumerate()
            .map(|(i, ck)| ck.div_int(i as i64 + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_positive(template, coeffs))
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn template(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..=cutoff.min(self.cutoff())].to_vec(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TruncatedSeries<D>> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.cutoff().min(o.cutoff());
        TruncatedSeries {
            coeffs: (0..=d).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let d = self.cutoff().min(o.cutoff());
        TruncatedSeries {
            coeffs: (0..=d).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect(),
        }
    }

    pub fn scale(&self, a: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(a)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.cutoff().min(o.cutoff());
        let mut out = vec![self.template().zero_like(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d + 1 - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Whether the constant term vanishes.
    pub fn has_zero_constant(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}

/// `outer(inner(τ))` modulo `τ^{D+1}`, `D` the smaller cutoff.
pub fn compose<C: Coeff>(
    outer: &TruncatedSeries<C>,
    inner: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>> {
    if !inner.has_zero_constant() {
        return Err(Error::domain("inner series of a composition has a constant term"));
    }
    let d = outer.cutoff().min(inner.cutoff());
    let inner = inner.truncate(d);
    let mut acc = TruncatedSeries::zero(inner.template(), d);
    for k in (0..=d).rev() {
        acc = acc.mul(&inner);
        acc.coeffs[0] = acc.coeffs[0].add(outer.coeff(k));
    }
    Ok(acc)
}

/// Compositional inverse of `l = c_1 τ + c_2 τ² + …` with `c_1` a unit.
///
/// The coefficient `g_n` of the inverse is fixed by requiring the degree-`n`
/// coefficient of `l(g(τ))` to vanish; only `g_1..g_{n-1}` enter the other
/// contributions, so each step is a single solve.
pub fn reversion<C: Coeff>(l: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    if !l.has_zero_constant() {
        return Err(Error::domain("reversion needs a series without constant term"));
    }
    let d = l.cutoff();
    let t = l.template();
    if d == 0 {
        return Ok(l.clone());
    }
    let c1_inv = l
        .coeff(1)
        .inverse()
        .map_err(|_| Error::domain("reversion needs a unit linear coefficient"))?;
    let mut g = TruncatedSeries::zero(t, d);
    g.coeffs[1] = c1_inv.clone();
    for n in 2..=d {
        // degree-n coefficient of Σ_{k≥2} c_k g^k with g known through n-1
        let gn = g.truncate(n);
        let mut power = gn.clone();
        let mut acc = t.zero_like();
        for k in 2..=n {
            power = power.mul(&gn);
            let ck = l.coeff(k);
            if !ck.is_zero() {
                acc = acc.add(&ck.mul(power.coeff(n)));
            }
        }
        g.coeffs[n] = acc.neg().mul(&c1_inv);
    }
    Ok(g)
}

/// `l⁻¹(l(τ₁) + l(τ₂))` for a logarithm `l` with unit linear coefficient.
pub fn group_law<C: Coeff>(l: &TruncatedSeries<C>) -> Result<BivariateSeries<C>> {
    let inv = reversion(l)?;
    let sum = BivariateSeries::in_first(l).add(&BivariateSeries::in_second(l));
    compose_bivariate(&inv, &sum)
}

/// First monomial `τ₁^i τ₂^j τ₃^k` where `G(G(τ₁,τ₂),τ₃)` and
/// `G(τ₁,G(τ₂,τ₃))` differ, or `None` when they agree through the cutoff.
pub fn associativity_defect<C: Coeff>(
    g: &BivariateSeries<C>,
) -> Result<Option<(usize, usize, usize)>> {
    let d = g.cutoff();
    let t = g.template();
    let left = trivariate::substitute(
        g,
        &TrivariateSeries::embed(g, 0, 1),
        &TrivariateSeries::variable(t, d, 2),
    )?;
    let right = trivariate::substitute(
        g,
        &TrivariateSeries::variable(t, d, 0),
        &TrivariateSeries::embed(g, 1, 2),
    )?;
    for n in 0..=d {
        for i in 0..=n {
            for j in 0..=n - i {
                let k = n - i - j;
                if !left.coeff(i, j, k).sub(right.coeff(i, j, k)).is_zero() {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}
