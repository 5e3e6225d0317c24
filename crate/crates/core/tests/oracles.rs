use brauer_core::charsum::{jacobi_sum, quartic_jacobi_candidates, MultiplicativeCharacter};
use brauer_core::fgl::unit_root_sb;
use brauer_core::hyperfam::FamilyId;
use brauer_core::weil::slope_factorize;
use brauer_core::{FamilyParams, FormalGroupLogarithm, PadicInt, WeilPoly};

fn unit_root(id: FamilyId, p: u64, precision: u32) -> PadicInt {
    let spec = id.spec();
    let c = vec![1; spec.c_names.len()];
    let params = FamilyParams::from_residues(&spec, p, precision + 1, &c, None, false).unwrap();
    let log = FormalGroupLogarithm::family(&spec, &params, p, precision + 1).unwrap();
    unit_root_sb(&log, precision - 1, 1).unwrap().alpha.element
}

#[test]
fn unit_root_is_a_jacobi_sum_expression() {
    for p in [5u64, 13, 17] {
        let candidates = quartic_jacobi_candidates(p, 4).unwrap();
        for id in [FamilyId::JacobiQuartic, FamilyId::DiagonalQuartic] {
            let alpha = unit_root(id, p, 4);
            for formula in ["J(chi,chi)^2", "chi(-1) J(chi,chi) J(chi,chi^2)"] {
                assert!(
                    candidates
                        .iter()
                        .any(|c| c.formula == formula && c.value == alpha),
                    "{id} p={p}: alpha = {} matches no {formula}",
                    alpha.signed()
                );
            }
        }
    }
}

/// `1 - Tr(J²) T + p² T²` for the quartic character `χ`.
fn jacobi_weil_poly(p: u64) -> Vec<i64> {
    let chi = MultiplicativeCharacter::new(p, 4, 1).unwrap();
    let j = jacobi_sum(&chi, &chi).unwrap();
    let j2 = j.mul(&j);
    let trace = j2.add(&j2.conj()).as_integer().expect("trace is rational");
    assert_eq!(j.norm_squared().as_integer(), Some(p as i64));
    vec![1, -trace, (p * p) as i64]
}

#[test]
fn jacobi_weil_polynomial_at_five() {
    assert_eq!(jacobi_weil_poly(5), vec![1, 6, 25]);
}

#[test]
fn unit_root_is_the_slope_zero_root() {
    for p in [5u64, 13, 17] {
        let h = WeilPoly::from_i64(&jacobi_weil_poly(p), p, 1).unwrap();
        let sf = slope_factorize(&h, 4).unwrap();
        assert_eq!(sf.h, 1);
        let alpha = unit_root(FamilyId::JacobiQuartic, p, 4);
        let root = sf.lower[1].reduce(4);
        assert_eq!(root.signed(), -alpha.signed(), "p={p}");
    }
}
