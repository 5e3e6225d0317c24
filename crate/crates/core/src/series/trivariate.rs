use super::{BivariateSeries, Coeff};
use crate::error::{Error, Result};

/// Dense series in three variables truncated at total degree `D`. Only used
/// to test associativity of a two-variable group law.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct TrivariateSeries<C> {
    cutoff: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> TrivariateSeries<C> {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.cutoff + 1;
        (i * n + j) * n + k
    }

    pub(crate) fn zero(template: &C, cutoff: usize) -> Self {
        let n = cutoff + 1;
        TrivariateSeries {
            cutoff,
            coeffs: vec![template.zero_like(); n * n * n],
        }
    }

    pub(crate) fn coeff(&self, i: usize, j: usize, k: usize) -> &C {
        &self.coeffs[self.idx(i, j, k)]
    }

    /// Embed `g(x, y)` as a series in two of the variables `(0, 1, 2)`.
    pub(crate) fn embed(g: &BivariateSeries<C>, x: usize, y: usize) -> Self {
        let mut out = Self::zero(g.template(), g.cutoff());
        for (i, j, c) in g.iter() {
            let mut e = [0usize; 3];
            e[x] += i;
            e[y] += j;
            let at = out.idx(e[0], e[1], e[2]);
            out.coeffs[at] = c.clone();
        }
        out
    }

    /// The single variable with index `v`.
    pub(crate) fn variable(template: &C, cutoff: usize, v: usize) -> Self {
        let mut out = Self::zero(template, cutoff);
        let mut e = [0usize; 3];
        e[v] = 1;
        let at = out.idx(e[0], e[1], e[2]);
        out.coeffs[at] = template.one_like();
        out
    }

    fn terms(&self) -> Vec<(usize, usize, usize, &C)> {
        let d = self.cutoff;
        let mut out = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                for k in 0..=d - i - j {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        TrivariateSeries {
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub(crate) fn scale(&self, a: &C) -> Self {
        TrivariateSeries {
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|c| c.mul(a)).collect(),
        }
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        let d = self.cutoff;
        let mut out = Self::zero(&self.coeffs[0], d);
        let rhs = o.terms();
        for (i1, j1, k1, a) in self.terms() {
            let room = d - i1 - j1 - k1;
            for &(i2, j2, k2, b) in &rhs {
                if i2 + j2 + k2 > room {
                    continue;
                }
                let at = out.idx(i1 + i2, j1 + j2, k1 + k2);
                out.coeffs[at] = out.coeffs[at].add(&a.mul(b));
            }
        }
        out
    }

    pub(crate) fn has_zero_constant(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}

/// `g(a, b)` for trivariate `a`, `b` without constant terms.
pub(crate) fn substitute<C: Coeff>(
    g: &BivariateSeries<C>,
    a: &TrivariateSeries<C>,
    b: &TrivariateSeries<C>,
) -> Result<TrivariateSeries<C>> {
    if !a.has_zero_constant() || !b.has_zero_constant() {
        return Err(Error::domain("substituted series have constant terms"));
    }
    let d = g.cutoff().min(a.cutoff).min(b.cutoff);
    let t = g.template();
    let mut b_pow = vec![TrivariateSeries::zero(t, d)];
    let at0 = b_pow[0].idx(0, 0, 0);
    b_pow[0].coeffs[at0] = t.one_like();
    for j in 1..=d {
        let next = b_pow[j - 1].mul(b);
        b_pow.push(next);
    }
    let mut acc = TrivariateSeries::zero(t, d);
    for i in (0..=d).rev() {
        acc = acc.mul(a);
        for (j, bp) in b_pow.iter().enumerate().take(d - i + 1) {
            let c = g.coeff(i, j);
            if !c.is_zero() {
                acc = acc.add(&bp.scale(c));
            }
        }
    }
    Ok(acc)
}
