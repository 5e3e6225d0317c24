use num_rational::BigRational;

use super::{modulus_for, PadicInt};
use crate::error::{Error, Result};
use crate::exact::modular::mul_mod;
use crate::exact::val_bigint;

/// Morita's p-adic gamma function at a non-negative integer, modulo `p^N`:
/// `Γ_p(n) = (-1)^n ∏_{0<j<n, p∤j} j`, with `Γ_p(0) = 1`.
pub fn padic_gamma_int(n: u64, p: u64, precision: u32) -> Result<PadicInt> {
    if p == 2 {
        return Err(Error::Unsupported("p-adic gamma at p = 2".into()));
    }
    let m = modulus_for(p, precision)?;
    let mut acc = 1 % m;
    for j in 1..n {
        if j % p != 0 {
            acc = mul_mod(acc, j % m, m);
        }
    }
    let v = PadicInt::new(p, precision, acc)?;
    Ok(if n % 2 == 1 { -v } else { v })
}

/// `Γ_p(x)` for a p-integral rational `x`, correct modulo `p^N`.
///
/// `x` is replaced by its integer representative in `[0, p^N)`; Γ_p is
/// continuous with `x ≡ y (mod p^N) ⇒ Γ_p(x) ≡ Γ_p(y) (mod p^N)` for odd `p`,
/// so the integer product already has full precision.
pub fn padic_gamma(x: &BigRational, p: u64, precision: u32) -> Result<PadicInt> {
    if p == 2 {
        return Err(Error::Unsupported("p-adic gamma at p = 2".into()));
    }
    if val_bigint(x.denom(), p).unwrap_or(0) > 0 {
        return Err(Error::domain(format!("{x} is not {p}-integral")));
    }
    let rep = PadicInt::from_rational(p, precision, x)?;
    padic_gamma_int(rep.value(), p, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        let g = padic_gamma_int(1, 5, 4).unwrap();
        assert_eq!(g.value(), 5u64.pow(4) - 1);
        assert_eq!(padic_gamma_int(6, 5, 2).unwrap().value(), 24);
        assert_eq!(padic_gamma_int(0, 7, 3).unwrap().value(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            padic_gamma(&rat(1, 4), 2, 3),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            padic_gamma(&rat(1, 5), 5, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn functional_equation_at_a_quarter() {
        let (p, n) = (13, 4);
        let x = rat(1, 4);
        let lhs = padic_gamma(&(x.clone() + rat(1, 1)), p, n).unwrap();
        let g = padic_gamma(&x, p, n).unwrap();
        let xi = PadicInt::from_rational(p, n, &x).unwrap();
        assert_eq!(lhs, -(xi * g));
    }

    #[test]
    fn reflection_at_a_half() {
        // for p ≡ 1 mod 4 the reflection formula gives Γ_p(1/2)^2 = -1
        for p in [5u64, 13, 17] {
            let g = padic_gamma(&rat(1, 2), p, 3).unwrap();
            assert_eq!((g * g).signed(), -1, "p={p}");
        }
    }

    proptest! {
        #[test]
        fn continuity_on_integers(a in 0u64..400, k in 1u64..4, n in 1u32..4) {
            for p in [5u64, 7] {
                let b = a + k * p.pow(n);
                let ga = padic_gamma_int(a, p, n).unwrap();
                let gb = padic_gamma_int(b, p, n).unwrap();
                prop_assert_eq!(ga, gb);
            }
        }
    }
}
