use serde::{Deserialize, Serialize};

use super::{Coeff, TruncatedSeries};
use crate::error::{Error, Result};

/// `Σ_{i+j≤D} g_{ij} τ₁^i τ₂^j`, stored triangularly; valid modulo total
/// degree `D+1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivariateSeries<C> {
    cutoff: usize,
    rows: Vec<Vec<C>>,
}

impl<C: Coeff> BivariateSeries<C> {
    pub fn zero(template: &C, cutoff: usize) -> Self {
        let z = template.zero_like();
        BivariateSeries {
            cutoff,
            rows: (0..=cutoff).map(|i| vec![z.clone(); cutoff - i + 1]).collect(),
        }
    }

    /// `s(τ₁)`.
    pub fn in_first(s: &TruncatedSeries<C>) -> Self {
        let mut out = Self::zero(s.template(), s.cutoff());
        for (i, c) in s.coeffs().iter().enumerate() {
            out.rows[i][0] = c.clone();
        }
        out
    }

    /// `s(τ₂)`.
    pub fn in_second(s: &TruncatedSeries<C>) -> Self {
        let mut out = Self::zero(s.template(), s.cutoff());
        out.rows[0] = s.coeffs().to_vec();
        out
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeff(&self, i: usize, j: usize) -> &C {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.rows[i][j] = c;
    }

    pub fn template(&self) -> &C {
        &self.rows[0][0]
    }

    /// Iterate `(i, j, g_ij)` over the stored triangle.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<BivariateSeries<D>> {
        Ok(BivariateSeries {
            cutoff: self.cutoff,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.cutoff.min(o.cutoff);
        let mut out = Self::zero(self.template(), d);
        for i in 0..=d {
            for j in 0..=d - i {
                out.rows[i][j] = self.rows[i][j].add(&o.rows[i][j]);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.cutoff.min(o.cutoff);
        let mut out = Self::zero(self.template(), d);
        for (i1, j1, a) in self.iter() {
            if i1 + j1 > d || a.is_zero() {
                continue;
            }
            for i2 in 0..=d - i1 - j1 {
                for j2 in 0..=d - i1 - j1 - i2 {
                    let b = &o.rows[i2][j2];
                    if !b.is_zero() {
                        let slot = &mut out.rows[i1 + i2][j1 + j2];
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// `g(τ₂, τ₁)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.template(), self.cutoff);
        for (i, j, c) in self.iter() {
            out.rows[j][i] = c.clone();
        }
        out
    }

    /// `g(τ, 0)`.
    pub fn at_second_zero(&self) -> TruncatedSeries<C> {
        TruncatedSeries::new(self.rows.iter().map(|row| row[0].clone()).collect())
            .expect("nonempty")
    }

    /// `g(0, τ)`.
    pub fn at_first_zero(&self) -> TruncatedSeries<C> {
        TruncatedSeries::new(self.rows[0].clone()).expect("nonempty")
    }

    pub fn has_zero_constant(&self) -> bool {
        self.rows[0][0].is_zero()
    }

    /// The terms of total degree exactly `n`, as `(i, g_{i, n-i})`.
    pub fn homogeneous(&self, n: usize) -> Vec<(usize, C)> {
        (0..=n.min(self.cutoff))
            .filter(|_| n <= self.cutoff)
            .map(|i| (i, self.rows[i][n - i].clone()))
            .collect()
    }
}

/// `outer(inner(τ₁, τ₂))` modulo total degree `D+1`.
pub fn compose_bivariate<C: Coeff>(
    outer: &TruncatedSeries<C>,
    inner: &BivariateSeries<C>,
) -> Result<BivariateSeries<C>> {
    if !inner.has_zero_constant() {
        return Err(Error::domain("inner series of a composition has a constant term"));
    }
    let d = outer.cutoff().min(inner.cutoff());
    let mut acc = BivariateSeries::zero(inner.template(), d);
    for k in (0..=d).rev() {
        acc = acc.mul(inner);
        acc.rows[0][0] = acc.rows[0][0].add(outer.coeff(k));
    }
    Ok(acc)
}
