use serde::{Deserialize, Serialize};

use super::field::SmallField;
use crate::error::{Error, Result};
use crate::hyperfam::{FormKind, K3FamilySpec};

/// Largest number of form evaluations a single count may perform.
pub const EVALUATION_LIMIT: u64 = 10_000_000;

pub const PROJECTIVE_CONVENTION: &str =
    "projective points of V(F), one representative per point: first nonzero coordinate = 1";
pub const DOUBLE_COVER_CONVENTION: &str =
    "points of w^2 = F over P^2: sum over x in P^2(F_q) with first nonzero coordinate = 1 of 1 + eta(F(x)), eta the quadratic character";

/// Homogeneous polynomial `Σ c_t x^{e_t}` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: u32,
    terms: Vec<(i64, Vec<u32>)>,
}

impl HomogeneousForm {
    pub fn new(terms: Vec<(i64, Vec<u32>)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::domain("the zero form defines no hypersurface"));
        };
        let nvars = first.len();
        let degree: u32 = first.iter().sum();
        for (_, e) in &terms {
            if e.len() != nvars {
                return Err(Error::domain("monomials with different numbers of variables"));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::domain(format!(
                    "form is not homogeneous: degrees {degree} and {}",
                    e.iter().sum::<u32>()
                )));
            }
        }
        Ok(HomogeneousForm {
            nvars,
            degree,
            terms,
        })
    }

    /// The principal form of a catalog member with integer parameters.
    pub fn from_family(spec: &K3FamilySpec, c: &[i64], lambda: Option<i64>) -> Result<Self> {
        if spec.kind == FormKind::Elliptic {
            return Err(Error::Unsupported(format!("{} has no surface form", spec.id)));
        }
        let coeffs: Vec<i64> = if spec.c_names.is_empty() {
            vec![1; spec.exponents.len()]
        } else if c.len() == spec.c_names.len() {
            c.to_vec()
        } else {
            return Err(Error::domain(format!(
                "{} takes {} coefficients, got {}",
                spec.id,
                spec.c_names.len(),
                c.len()
            )));
        };
        let mut terms: Vec<(i64, Vec<u32>)> = coeffs
            .iter()
            .zip(&spec.exponents)
            .map(|(&c, e)| (c, e.iter().map(|&x| x as u32).collect()))
            .collect();
        match (&spec.lambda_monomial, lambda) {
            (Some((e, factor)), Some(l)) => {
                terms.push((factor * l, e.iter().map(|&x| x as u32).collect()))
            }
            (Some(_), None) => return Err(Error::domain(format!("{} needs λ", spec.id))),
            (None, Some(_)) => return Err(Error::domain(format!("{} has no λ", spec.id))),
            (None, None) => {}
        }
        Self::new(terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(i64, Vec<u32>)] {
        &self.terms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Hypersurface,
    DoubleCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountReport {
    pub q: u64,
    pub kind: CountKind,
    pub count: i64,
    pub evaluations: u64,
    pub convention: String,
}

fn projective_size(q: u64, n: usize) -> u128 {
    (0..n).map(|i| (q as u128).pow(i as u32)).sum()
}

/// Exhaustive count over `GF(q)`, `q ≤ 169`.
pub fn point_count(form: &HomogeneousForm, kind: CountKind, q: u64) -> Result<PointCountReport> {
    let n = form.nvars;
    let estimate = projective_size(q, n);
    if estimate > EVALUATION_LIMIT as u128 {
        return Err(Error::TooLarge {
            estimate,
            limit: EVALUATION_LIMIT as u128,
        });
    }
    let field = SmallField::new(q)?;
    if kind == CountKind::DoubleCover && field.p() == 2 {
        return Err(Error::domain("double covers are not counted in characteristic 2"));
    }
    let d = form.degree as usize;
    let qs = q as usize;
    let mut powers = vec![0u16; qs * (d + 1)];
    for x in 0..qs {
        let mut acc = 1u16;
        for e in 0..=d {
            powers[x * (d + 1) + e] = acc;
            acc = field.mul(acc, x as u16);
        }
    }
    let terms: Vec<(u16, &[u32])> = form
        .terms
        .iter()
        .map(|(c, e)| (field.from_int(*c), e.as_slice()))
        .collect();
    let eval = |pt: &[u16]| -> u16 {
        let mut acc = 0u16;
        for &(c, e) in &terms {
            let mut t = c;
            for (x, &k) in pt.iter().zip(e) {
                if k != 0 {
                    t = field.mul(t, powers[*x as usize * (d + 1) + k as usize]);
                }
            }
            acc = field.add(acc, t);
        }
        acc
    };

    let mut count = 0i64;
    let mut evaluations = 0u64;
    let mut pt = vec![0u16; n];
    for lead in 0..n {
        pt.iter_mut().for_each(|x| *x = 0);
        pt[lead] = 1;
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut r = idx;
            for slot in pt[lead + 1..].iter_mut() {
                *slot = (r % q) as u16;
                r /= q;
            }
            let v = eval(&pt);
            evaluations += 1;
            count += match kind {
                CountKind::Hypersurface => (v == 0) as i64,
                CountKind::DoubleCover => 1 + field.quadratic(v),
            };
        }
    }
    Ok(PointCountReport {
        q,
        kind,
        count,
        evaluations,
        convention: match kind {
            CountKind::Hypersurface => PROJECTIVE_CONVENTION,
            CountKind::DoubleCover => DOUBLE_COVER_CONVENTION,
        }
        .to_string(),
    })
}

/// Count for a catalog member: hypersurface for quartics, double cover for sextics.
pub fn family_point_count(
    spec: &K3FamilySpec,
    c: &[i64],
    lambda: Option<i64>,
    q: u64,
) -> Result<PointCountReport> {
    let form = HomogeneousForm::from_family(spec, c, lambda)?;
    let kind = match spec.kind {
        FormKind::Quartic => CountKind::Hypersurface,
        _ => CountKind::DoubleCover,
    };
    point_count(&form, kind, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfam::FamilyId;

    #[test]
    fn hyperplane_is_a_plane() {
        for q in [5u64, 7, 9] {
            let f = HomogeneousForm::new(vec![(1, vec![1, 0, 0, 0])]).unwrap();
            let r = point_count(&f, CountKind::Hypersurface, q).unwrap();
            assert_eq!(r.count as u64, q * q + q + 1);
        }
    }

    #[test]
    fn non_homogeneous_is_rejected() {
        assert!(HomogeneousForm::new(vec![(1, vec![2, 0]), (1, vec![1, 0])]).is_err());
        assert!(HomogeneousForm::new(vec![(0, vec![2, 0])]).is_err());
    }

    /// Affine cone of `Σ x_i^4` counted by convolving the histogram of fourth powers.
    fn fermat_affine(p: u64) -> u64 {
        let mut hist = vec![0u64; p as usize];
        for x in 0..p {
            hist[(x.pow(4) % p) as usize] += 1;
        }
        let mut two = vec![0u64; p as usize];
        for a in 0..p as usize {
            for b in 0..p as usize {
                two[(a + b) % p as usize] += hist[a] * hist[b];
            }
        }
        (0..p as usize).map(|s| two[s] * two[(p as usize - s) % p as usize]).sum()
    }

    #[test]
    fn fermat_quartic_matches_cone_count() {
        let spec = FamilyId::DiagonalQuartic.spec();
        for p in [5u64, 7, 13] {
            let r = family_point_count(&spec, &[1, 1, 1, 1], None, p).unwrap();
            assert_eq!(fermat_affine(p), 1 + (p - 1) * r.count as u64);
        }
        let r = family_point_count(&spec, &[1, 1, 1, 1], None, 5).unwrap();
        assert_eq!(r.count, 0);
    }

    #[test]
    fn oversized_domain_is_refused() {
        let f = HomogeneousForm::new(vec![(1, vec![1, 0, 0, 0, 0])]).unwrap();
        assert!(matches!(
            point_count(&f, CountKind::Hypersurface, 169),
            Err(Error::TooLarge { .. })
        ));
    }
}
