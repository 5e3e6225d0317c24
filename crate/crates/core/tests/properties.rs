use brauer_core::fgl::{height_classify, unit_root_sb, v_polynomials};
use brauer_core::hyperfam::{quasi_x_image, FamilyId};
use brauer_core::{FamilyParams, FormalGroupLogarithm, HeightClass};
use proptest::prelude::*;

fn member(id: FamilyId, p: u64, precision: u32, c: &[u64], lambda: u64) -> FormalGroupLogarithm {
    let spec = id.spec();
    let c: Vec<u64> = c.iter().take(spec.c_names.len()).map(|x| 1 + x % (p - 1)).collect();
    let lambda = spec.has_lambda.then_some(1 + lambda % (p - 1));
    let params = FamilyParams::from_residues(&spec, p, precision, &c, lambda, false).unwrap();
    FormalGroupLogarithm::family(&spec, &params, p, precision).unwrap()
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop::sample::select(FamilyId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn v_criterion_decides_height(lambda in 1u64..1000, sextic in any::<bool>()) {
        let (id, p) = if sextic {
            (FamilyId::QuasiDiagonalSextic, 31)
        } else {
            (FamilyId::QuasiDiagonalQuartic, 13)
        };
        let lambda = 1 + lambda % (p - 1);
        let v = v_polynomials(&id.spec(), p).unwrap();
        let x = quasi_x_image(&id.spec(), lambda, p).unwrap().unwrap();
        let expected = if v.v1.eval(x) != 0 {
            HeightClass::Height1
        } else if v.v2.eval(x) != 0 {
            HeightClass::Height2
        } else {
            return Ok(());
        };
        let log = member(id, p, 3, &[], lambda);
        prop_assert_eq!(height_classify(&log, 2).unwrap().classification, expected);
    }

    #[test]
    fn classification_follows_from_evidence(
        id in family(),
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
        c in prop::collection::vec(0u64..100, 4),
        lambda in 0u64..100,
    ) {
        prop_assume!(id.spec().supports_prime(p));
        let report = height_classify(&member(id, p, 3, &c, lambda), 2).unwrap();
        prop_assert_eq!(report.recheck(), report.classification);
    }

    #[test]
    fn unit_root_deepens_consistently(
        id in family(),
        p in prop::sample::select(vec![5u64, 13]),
        c in prop::collection::vec(0u64..100, 4),
        lambda in 0u64..100,
    ) {
        prop_assume!(id.spec().supports_prime(p));
        let log = member(id, p, 5, &c, lambda);
        prop_assume!(log.coeff(p).unwrap().is_unit());
        let shallow = unit_root_sb(&log, 1, 2).unwrap();
        let deep = unit_root_sb(&log, 2, 2).unwrap();
        prop_assert!(shallow.stable && deep.stable);
        prop_assert!(deep.alpha.element.congruent(&shallow.alpha.element, 2));
    }
}
