use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::exact::modular::{is_prime, pow_mod, primitive_root};
use crate::padic::{teichmuller, PadicInt};

/// `χ(g^i) = ζ_d^{k i}` on `F_p^×` for a fixed primitive root `g`, with `χ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativeCharacter {
    p: u64,
    generator: u64,
    d: u64,
    k: u64,
    #[serde(skip)]
    log: Vec<u64>,
}

impl MultiplicativeCharacter {
    /// The character sending the least primitive root to `ζ_d^k`; `d | p - 1`.
    pub fn new(p: u64, d: u64, k: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if d == 0 || (p - 1) % d != 0 {
            return Err(Error::domain(format!("{d} does not divide p - 1 = {}", p - 1)));
        }
        let g = primitive_root(p);
        let mut log = vec![0u64; p as usize];
        let mut x = 1u64;
        for i in 0..p - 1 {
            log[x as usize] = i;
            x = x * g % p;
        }
        Ok(MultiplicativeCharacter {
            p,
            generator: g,
            d,
            k: k % d,
            log,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    /// Exponent `j` with `χ(x) = ζ_d^j`; `None` at `x ≡ 0`.
    pub fn exponent_at(&self, x: u64) -> Option<u64> {
        let x = x % self.p;
        (x != 0).then(|| self.k * self.log[x as usize] % self.d)
    }

    pub fn value(&self, x: u64) -> CyclotomicInt {
        match self.exponent_at(x) {
            Some(j) => CyclotomicInt::zeta_power(self.d, j),
            None => CyclotomicInt::zero(self.d),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        MultiplicativeCharacter {
            k: self.k * e % self.d,
            ..self.clone()
        }
    }

    /// `χ(-1)` as `±1`.
    pub fn sign(&self) -> i64 {
        match self.exponent_at(self.p - 1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    /// Teichmüller lifts of the primitive `d`-th roots of unity of `F_p`,
    /// one per embedding `Z[ζ_d] → Z_p`.
    pub fn embeddings(&self, precision: u32) -> Result<Vec<PadicInt>> {
        let step = pow_mod(self.generator, (self.p - 1) / self.d, self.p);
        (1..=self.d)
            .filter(|j| num_integer::gcd(*j, self.d) == 1)
            .map(|j| teichmuller(pow_mod(step, j, self.p), self.p, precision))
            .collect()
    }
}

/// `J(χ₁, χ₂) = Σ_{a ≠ 0, 1} χ₁(a) χ₂(1 - a)` in `Z[ζ_d]`.
///
/// A trivial product is allowed as long as the characters themselves are
/// not both trivial; then `J(χ, χ̄) = -χ(-1)`.
pub fn jacobi_sum(chi1: &MultiplicativeCharacter, chi2: &MultiplicativeCharacter) -> Result<CyclotomicInt> {
    if chi1.p != chi2.p || chi1.d != chi2.d {
        return Err(Error::domain(
            "Jacobi sum of characters with different primes or value groups",
        ));
    }
    if chi1.is_trivial() && chi2.is_trivial() {
        return Err(Error::domain("both characters are trivial"));
    }
    let (p, d) = (chi1.p, chi1.d);
    let mut counts = vec![0i64; d as usize];
    for a in 2..p {
        let e1 = chi1.exponent_at(a).expect("a is nonzero");
        let e2 = chi2.exponent_at(p + 1 - a).expect("1 - a is nonzero");
        counts[((e1 + e2) % d) as usize] += 1;
    }
    let mut acc = CyclotomicInt::zero(d);
    for (j, &c) in counts.iter().enumerate() {
        if c != 0 {
            acc = acc.add(&CyclotomicInt::zeta_power(d, j as u64).mul(&CyclotomicInt::from_int(d, c)));
        }
    }
    Ok(acc)
}

/// One candidate value for the unit root of the quartic families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiCandidate {
    /// Exponent `k` of the quartic character `χ = ω^k`.
    pub character: u64,
    /// Index of the embedding `ζ_4 ↦ ω_j`.
    pub embedding: usize,
    pub formula: String,
    pub exact: CyclotomicInt,
    pub value: PadicInt,
}

/// `J(χ,χ)^2` and `χ(-1) J(χ,χ) J(χ,χ²)` for both quartic characters and
/// both embeddings of `Z[i]` into `Z_p`, reduced mod `p^N`.
pub fn quartic_jacobi_candidates(p: u64, precision: u32) -> Result<Vec<JacobiCandidate>> {
    if p % 4 != 1 {
        return Err(Error::domain(format!("no quartic characters mod {p}")));
    }
    let mut out = Vec::new();
    for k in [1u64, 3] {
        let chi = MultiplicativeCharacter::new(p, 4, k)?;
        let j11 = jacobi_sum(&chi, &chi)?;
        let j12 = jacobi_sum(&chi, &chi.pow(2))?;
        let twisted = j11.mul(&j12).mul(&CyclotomicInt::from_int(4, chi.sign()));
        let forms = [
            ("J(chi,chi)^2", j11.mul(&j11)),
            ("chi(-1) J(chi,chi) J(chi,chi^2)", twisted),
        ];
        for (e, omega) in chi.embeddings(precision)?.iter().enumerate() {
            for (formula, exact) in &forms {
                out.push(JacobiCandidate {
                    character: k,
                    embedding: e,
                    formula: formula.to_string(),
                    value: exact.embed(omega)?,
                    exact: exact.clone(),
                });
            }
        }
    }
    Ok(out)
}
