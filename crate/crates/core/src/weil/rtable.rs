use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents `r` compatible with `R = Q^r` on a height-`h` K3 surface with
/// `τ`-dimensional transcendental part: `r | h`, `r | τ` and `τ/r` even.
pub fn possible_r(tau: u64, h: u64) -> Result<Vec<u64>> {
    if tau < 2 || tau % 2 == 1 {
        return Err(Error::domain(format!("tau = {tau} must be even and at least 2")));
    }
    if h == 0 || 2 * h > tau {
        return Err(Error::domain(format!("h = {h} is outside 1..=tau/2 for tau = {tau}")));
    }
    Ok((1..=h)
        .filter(|r| h % r == 0 && tau % r == 0 && (tau / r) % 2 == 0)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTableCell {
    pub tau: u64,
    pub h: u64,
    pub r: Vec<u64>,
}

/// Every populated cell for even `τ ≤ tau_max` and `h ≤ τ/2`.
pub fn r_table(tau_max: u64) -> Vec<RTableCell> {
    (2..=tau_max)
        .step_by(2)
        .flat_map(|tau| {
            (1..=tau / 2).map(move |h| RTableCell {
                tau,
                h,
                r: possible_r(tau, h).expect("cell inside the support"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(possible_r(2, 1).unwrap(), vec![1]);
        assert_eq!(possible_r(18, 6).unwrap(), vec![1, 3]);
        assert_eq!(possible_r(20, 10).unwrap(), vec![1, 2, 5, 10]);
        assert!(possible_r(6, 4).is_err());
        assert_eq!(r_table(20).len(), 55);
    }
}
