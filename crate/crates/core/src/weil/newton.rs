use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::val_bigint;
use crate::padic::PadicInt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygonData {
    pub p: u64,
    /// Lower hull vertices `(i, v_p(c_i))`, left to right.
    pub vertices: Vec<(usize, u32)>,
    /// Distinct slopes in increasing order with their horizontal lengths.
    pub slopes: Vec<(BigRational, usize)>,
}

impl NewtonPolygonData {
    pub fn degree(&self) -> usize {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    /// Total length of the segments whose slope, divided by `a`, satisfies `pred`.
    pub fn length_where(&self, a: u32, pred: impl Fn(&BigRational) -> bool) -> usize {
        let a = BigRational::from_integer(BigInt::from(a));
        self.slopes
            .iter()
            .filter(|(s, _)| pred(&(s / &a)))
            .map(|(_, m)| m)
            .sum()
    }

    /// Height of the polygon at abscissa `i` (linear between vertices).
    pub fn height_at(&self, i: usize) -> BigRational {
        let w = self
            .vertices
            .windows(2)
            .find(|w| w[0].0 <= i && i <= w[1].0)
            .expect("abscissa inside the polygon");
        let (x0, y0) = (w[0].0 as i64, w[0].1 as i64);
        let (x1, y1) = (w[1].0 as i64, w[1].1 as i64);
        BigRational::from_integer(BigInt::from(y0))
            + BigRational::new(BigInt::from((y1 - y0) * (i as i64 - x0)), BigInt::from(x1 - x0))
    }
}

fn hull(points: &[(usize, u32)], p: u64) -> NewtonPolygonData {
    let mut v: Vec<(usize, u32)> = Vec::new();
    for &pt in points {
        while v.len() >= 2 {
            let (a, b) = (v[v.len() - 2], v[v.len() - 1]);
            // drop b when it lies on or above the segment a -> pt
            let lhs = (b.1 as i64 - a.1 as i64) * (pt.0 as i64 - a.0 as i64);
            let rhs = (pt.1 as i64 - a.1 as i64) * (b.0 as i64 - a.0 as i64);
            if lhs >= rhs {
                v.pop();
            } else {
                break;
            }
        }
        v.push(pt);
    }
    let slopes = v
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            let rise = w[1].1 as i64 - w[0].1 as i64;
            (
                BigRational::new(BigInt::from(rise), BigInt::from(len as i64)),
                len,
            )
        })
        .collect();
    NewtonPolygonData {
        p,
        vertices: v,
        slopes,
    }
}

/// Newton polygon of `Σ c_i T^i` at `p`; the constant term must be a unit.
pub fn newton_polygon(coeffs: &[BigInt], p: u64) -> Result<NewtonPolygonData> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::domain("the zero polynomial has no Newton polygon"));
    }
    match coeffs.first().and_then(|c| val_bigint(c, p)) {
        Some(0) => {}
        _ => return Err(Error::domain(format!("constant term is not a {p}-adic unit"))),
    }
    let points: Vec<(usize, u32)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| val_bigint(c, p).map(|v| (i, v)))
        .collect();
    Ok(hull(&points, p))
}

/// Newton polygon of a polynomial known modulo `p^N`; coefficients that
/// vanish to that precision are treated as absent.
pub fn newton_polygon_of(coeffs: &[PadicInt]) -> Result<NewtonPolygonData> {
    let p = coeffs
        .first()
        .map(|c| c.p())
        .ok_or_else(|| Error::domain("the zero polynomial has no Newton polygon"))?;
    let ints: Vec<BigInt> = coeffs.iter().map(|c| BigInt::from(c.value())).collect();
    newton_polygon(&ints, p)
}
