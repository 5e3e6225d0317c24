//! Acceptance suite: one PASS/FAIL line per criterion, then a non-zero exit
//! if any criterion failed.

use std::time::Instant;

use brauer_core::exact::modular::primes_in;
use brauer_core::exact::{binomial, fp_factor, BigInt, FpPoly};
use brauer_core::fgl::{
    build_group_law, check_axioms, gamma_check, height_classify, supersingular_divisibility,
    unit_root_sb, v_polynomials,
};
use brauer_core::hyperfam::{multinomial_oracle, quasi_x_image, FamilyId, FormKind, K3FamilySpec};
use brauer_core::weil::{functional_equation_check, possible_r, power_structure, slope_factorize};
use brauer_core::{
    Error, FamilyParams, FormalGroupLogarithm, HeightClass, PadicInt, WeilPoly,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The exponent table for even τ ≤ 20, transcribed row by row (entry `h-1`
/// of row `τ/2 - 1` lists the admissible `r`).
const R_TABLE: [&[&[u64]]; 10] = [
    &[&[1]],
    &[&[1], &[1, 2]],
    &[&[1], &[1], &[1, 3]],
    &[&[1], &[1, 2], &[1], &[1, 2, 4]],
    &[&[1], &[1], &[1], &[1], &[1, 5]],
    &[&[1], &[1, 2], &[1, 3], &[1, 2], &[1], &[1, 2, 3, 6]],
    &[&[1], &[1], &[1], &[1], &[1], &[1], &[1, 7]],
    &[&[1], &[1, 2], &[1], &[1, 2, 4], &[1], &[1, 2], &[1], &[1, 2, 4, 8]],
    &[&[1], &[1], &[1, 3], &[1], &[1], &[1, 3], &[1], &[1], &[1, 3, 9]],
    &[&[1], &[1, 2], &[1], &[1, 2], &[1, 5], &[1, 2], &[1], &[1, 2], &[1], &[1, 2, 5, 10]],
];

fn r_table() -> Verdict {
    let mut cells = 0;
    for (row, entries) in R_TABLE.iter().enumerate() {
        let tau = 2 * (row as u64 + 1);
        for (col, expected) in entries.iter().enumerate() {
            let h = col as u64 + 1;
            let got = core(possible_r(tau, h))?;
            ensure(got == *expected, || format!("tau={tau} h={h}: {got:?} != {expected:?}"))?;
            cells += 1;
        }
    }
    ensure(cells == 55, || format!("{cells} cells"))?;
    Ok(format!("{cells} cells match"))
}

/// Classification at every `x ∈ F_p^×` through the x-normalized logarithm.
fn height2_locus(id: FamilyId, p: u64) -> Result<Vec<u64>, String> {
    let spec = id.spec();
    let mut out = Vec::new();
    for x in 1..p {
        let log = core(FormalGroupLogarithm::quasi_diagonal_x(&spec, core(PadicInt::new(p, 3, x))?))?;
        if core(height_classify(&log, 2))?.classification == HeightClass::Height2 {
            out.push(x);
        }
    }
    Ok(out)
}

fn lambda_images(id: FamilyId, p: u64) -> Result<Vec<u64>, String> {
    let spec = id.spec();
    let mut xs: Vec<u64> = (1..p)
        .filter_map(|l| quasi_x_image(&spec, l, p).ok().flatten())
        .collect();
    xs.sort_unstable();
    xs.dedup();
    Ok(xs)
}

fn quasi_quartic_13() -> Verdict {
    let v = core(v_polynomials(&FamilyId::QuasiDiagonalQuartic.spec(), 13))?;
    ensure(v.v1 == FpPoly::new(13, vec![1, 10]), || format!("V1 = {}", v.v1))?;
    let mut expected = FpPoly::constant(13, 8).mul(&FpPoly::x(13));
    for r in [2i64, 6, 10] {
        expected = expected.mul(&FpPoly::from_i64(13, &[r, 1]));
    }
    expected = expected
        .mul(&FpPoly::from_i64(13, &[10, 8, 1]))
        .mul(&FpPoly::from_i64(13, &[7, 0, 3, 6, 0, 12, 5, 9, 1]));
    ensure(v.v2 == expected, || format!("V2 = {}", v.v2))?;
    ensure(v.gcd.is_one(), || format!("gcd = {}", v.gcd))?;
    let locus = height2_locus(FamilyId::QuasiDiagonalQuartic, 13)?;
    ensure(locus == vec![9], || format!("Height2 at x in {locus:?}"))?;
    let images = lambda_images(FamilyId::QuasiDiagonalQuartic, 13)?;
    Ok(format!(
        "V1, V2 exact, gcd 1, Height2 exactly at x = 9 (lambda in F_13^x reaches x in {images:?})"
    ))
}

fn quasi_sextic_31() -> Verdict {
    let v = core(v_polynomials(&FamilyId::QuasiDiagonalSextic.spec(), 31))?;
    ensure(v.v1 == FpPoly::new(31, vec![1, 20]), || format!("V1 = {}", v.v1))?;
    ensure(v.v2.degree() == Some(32), || format!("deg V2 = {:?}", v.v2.degree()))?;
    ensure(v.v2.coeffs()[..3] == [0, 7, 2], || format!("low terms {:?}", &v.v2.coeffs()[..3]))?;
    ensure(v.v2.leading() == 24, || format!("leading {}", v.v2.leading()))?;
    let degrees = core(fp_factor(&v.v2))?.degrees();
    ensure(degrees == vec![1, 3, 6, 22], || format!("factor degrees {degrees:?}"))?;
    let locus = height2_locus(FamilyId::QuasiDiagonalSextic, 31)?;
    ensure(locus == vec![17], || format!("Height2 at x in {locus:?}"))?;
    let images = lambda_images(FamilyId::QuasiDiagonalSextic, 31)?;
    Ok(format!(
        "V1 exact, V2 degree 32 with factor degrees [1, 3, 6, 22], Height2 exactly at x = 17 \
         (lambda in F_31^x reaches x in {images:?})"
    ))
}

fn unit_member(id: FamilyId, p: u64, precision: u32) -> Result<FormalGroupLogarithm, String> {
    let spec = id.spec();
    let params = core(FamilyParams::from_residues(&spec, p, precision, &vec![1; spec.c_names.len()], None, false))?;
    core(FormalGroupLogarithm::family(&spec, &params, p, precision))
}

fn dichotomy() -> Verdict {
    let mut checked = 0;
    for p in primes_in(5, 51) {
        let q = core(height_classify(&unit_member(FamilyId::DiagonalQuartic, p, 4)?, 3))?;
        let want = if p % 4 == 1 {
            HeightClass::Height1
        } else {
            HeightClass::SupersingularUpTo(3)
        };
        ensure(q.classification == want, || {
            format!("diagonal quartic p={p}: {:?}", q.classification)
        })?;
        let s = core(height_classify(&unit_member(FamilyId::DiagonalSextic, p, 4)?, 3))?;
        ensure((s.classification == HeightClass::Height1) == (p % 6 == 1), || {
            format!("diagonal sextic p={p}: {:?}", s.classification)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} primes, both families, zero exceptions"))
}

fn gamma() -> Verdict {
    let mut residues = Vec::new();
    for p in [5u64, 13, 17] {
        let r = core(gamma_check(p, 4))?;
        ensure(r.holds, || format!("p={p}: alpha {} vs {}", r.alpha, r.gamma_value))?;
        residues.push(format!("p={p}: {}", r.alpha.signed()));
    }
    Ok(residues.join(", "))
}

fn random_params(
    spec: &K3FamilySpec,
    p: u64,
    precision: u32,
    rng: &mut ChaCha8Rng,
) -> Result<FamilyParams, String> {
    let c: Vec<u64> = (0..spec.c_names.len()).map(|_| rng.gen_range(1..p)).collect();
    let lambda = spec.has_lambda.then(|| rng.gen_range(1..p));
    core(FamilyParams::from_residues(spec, p, precision, &c, lambda, false))
}

fn unit_root_congruences() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances = 0;
    for p in [5u64, 13, 31] {
        let mut found = 0;
        let mut attempts = 0;
        let families: Vec<FamilyId> = FamilyId::ALL
            .into_iter()
            .filter(|f| f.spec().supports_prime(p))
            .collect();
        while found < 4 {
            attempts += 1;
            ensure(attempts < 200, || format!("too few Height1 members at p={p}"))?;
            let spec = families[attempts % families.len()].spec();
            let params = random_params(&spec, p, 4, &mut rng)?;
            let log = core(FormalGroupLogarithm::family(&spec, &params, p, 4))?;
            if !core(log.coeff(p))?.is_unit() {
                continue;
            }
            let r = core(unit_root_sb(&log, 2, 3))?;
            ensure(r.stable, || format!("{} p={p}: alpha not stable", spec.id))?;
            ensure(r.witnesses.iter().all(|w| w.lhs == w.rhs), || {
                format!("{} p={p}: witness mismatch", spec.id)
            })?;
            found += 1;
        }
        instances += found;
    }
    Ok(format!("{instances} Height1 instances, all witnesses mu <= 3, s <= 2, alpha stable"))
}

fn group_laws() -> Verdict {
    let cases: [(FamilyId, u64, &[u64], Option<u64>); 6] = [
        (FamilyId::JacobiQuartic, 5, &[], None),
        (FamilyId::DiagonalQuartic, 7, &[1, 1, 1, 1], None),
        (FamilyId::QuarticPencil1, 13, &[3, 1, 2, 1], Some(5)),
        (FamilyId::DiagonalSextic, 7, &[1, 1, 1], None),
        (FamilyId::SexticPencil1, 7, &[2, 1, 1], Some(3)),
        (FamilyId::QuasiDiagonalQuartic, 13, &[], Some(2)),
    ];
    for (id, p, c, lambda) in cases {
        let spec = id.spec();
        let params = core(FamilyParams::from_residues(&spec, p, 6, c, lambda, false))?;
        let log = core(FormalGroupLogarithm::family(&spec, &params, p, 6))?;
        let law = core(build_group_law(&log, 20))?;
        let axioms = core(check_axioms(&law))?;
        ensure(axioms.holds(), || format!("{id} p={p}: {axioms:?}"))?;
    }
    Ok("6 instances to degree 20, integral, identity/commutativity/associativity hold".into())
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut comparisons = 0u64;
    for id in FamilyId::ALL {
        let spec = id.spec();
        for p in [5u64, 7, 13, 31] {
            if !spec.supports_prime(p) {
                continue;
            }
            let modulus = BigInt::from(p.pow(4));
            for _ in 0..5 {
                let params = random_params(&spec, p, 4, &mut rng)?;
                let log = core(FormalGroupLogarithm::family(&spec, &params, p, 4))?;
                let c: Vec<BigInt> = params.c.iter().map(|x| BigInt::from(x.value())).collect();
                let lambda = params.lambda.map(|x| BigInt::from(x.value()));
                let t = if spec.kind == FormKind::DoubleSextic { 2 } else { 1 };
                for m in 0..=40u64 {
                    let (exact, got) = if id == FamilyId::JacobiQuartic {
                        let b = binomial(2 * m, m);
                        (&b * &b, core(log.a(m))?)
                    } else {
                        let exact = core(multinomial_oracle(&spec, &c, lambda.as_ref(), m))?;
                        (exact, core(log.coeff(t * m + 1))?)
                    };
                    let mut want = exact % &modulus;
                    if want < BigInt::zero() {
                        want += &modulus;
                    }
                    ensure(want == BigInt::from(got.value()), || {
                        format!("{id} p={p} m={m}: {} != {want}", got.value())
                    })?;
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("{comparisons} coefficients agree mod p^4"))
}

fn divisibility() -> Verdict {
    let mut runs = Vec::new();
    for p in [3u64, 7, 11] {
        for id in [FamilyId::JacobiQuartic, FamilyId::DiagonalQuartic, FamilyId::DiagonalSextic] {
            let spec = id.spec();
            let applicable = spec.supports_prime(p)
                && match id {
                    FamilyId::DiagonalSextic => p % 6 != 1,
                    _ => p % 4 == 3,
                };
            if !applicable {
                continue;
            }
            let r = core(supersingular_divisibility(&spec, p, 2))?;
            ensure(r.rows.iter().all(|row| row.found >= row.required as u64), || {
                format!("{id} p={p}: divisibility fails")
            })?;
            runs.push(format!("{id}@{p}:{}", r.indices_examined));
        }
    }
    ensure(runs.len() >= 7, || format!("only {} applicable runs", runs.len()))?;
    Ok(format!("indices examined {}", runs.join(" ")))
}

fn q49() -> Verdict {
    let mut rows = 0;
    for id in [FamilyId::QuasiDiagonalQuartic, FamilyId::QuasiDiagonalSextic] {
        let spec = id.spec();
        for p in primes_in(2, 150).into_iter().filter(|&p| spec.supports_prime(p)) {
            let v = core(v_polynomials(&spec, p))?;
            ensure(v.gcd.is_one(), || format!("{id} p={p}: gcd = {}", v.gcd))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (family, p) rows, every gcd(V1, V2) = 1"))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn residues(v: &[BigInt], p: u64, n: u32) -> Result<Vec<u64>, String> {
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| PadicInt::from_bigint(p, n, c).map(|x| x.value()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

fn padic_residues(v: &[PadicInt], n: u32) -> Vec<u64> {
    let mut out: Vec<u64> = v.iter().map(|x| x.reduce(n).value()).collect();
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `P = L · M · U` with unit-root part `L` (leading coefficient ±1), a
/// middle part of pure slope `a`, and `U` determined by the functional
/// equation with `c = q^{2h} / lead(L)`.
fn synthetic(rng: &mut ChaCha8Rng) -> (u64, u32, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, BigInt) {
    let p = [3u64, 5, 7][rng.gen_range(0..3)];
    let a = rng.gen_range(1..=2u32);
    let q = BigInt::from(p.pow(a));
    let h = rng.gen_range(1..=2usize);
    let mut lower = vec![BigInt::one()];
    for _ in 1..h {
        lower.push(BigInt::from(rng.gen_range(-20i64..=20)));
    }
    lower.push(BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 }));
    let middle = match rng.gen_range(0..3) {
        0 => vec![BigInt::one()],
        1 => vec![BigInt::one(), -&q * if rng.gen_bool(0.5) { 1 } else { -1 }],
        _ => vec![BigInt::one(), &q * rng.gen_range(-2i64..=2), &q * &q],
    };
    let lead = lower[h].clone();
    let q2 = &q * &q;
    let upper: Vec<BigInt> = (0..=h)
        .map(|j| &lower[h - j] * num_traits::pow(q2.clone(), j) / &lead)
        .collect();
    let c = num_traits::pow(q2, h) / &lead;
    (p, a, lower, middle, upper, c)
}

fn slopes() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 6;
    for i in 0..50 {
        let (p, a, lower, middle, upper, c) = synthetic(&mut rng);
        let coeffs = poly_mul(&poly_mul(&lower, &middle), &upper);
        let f = core(WeilPoly::new(coeffs, p, a))?;
        let sf = core(slope_factorize(&f, n))?;
        let tag = |what: &str| format!("case {i} (p={p}, a={a}): {what}");
        ensure(padic_residues(&sf.lower, n) == residues(&lower, p, n)?, || tag("P_<1"))?;
        ensure(padic_residues(&sf.middle, n) == residues(&middle, p, n)?, || tag("P_1"))?;
        ensure(padic_residues(&sf.upper, n) == residues(&upper, p, n)?, || tag("P_>1"))?;
        let fe = core(functional_equation_check(&sf, p.pow(a)))?;
        let got = fe.c.ok_or_else(|| tag("no c"))?;
        let want = core(PadicInt::from_bigint(p, got.precision(), &c))?;
        ensure(fe.holds && got == want, || tag(&format!("c = {got}, expected {c}")))?;
    }
    for r in 1..=6u32 {
        for i in 0..3 {
            let mut base = vec![BigInt::one(), BigInt::one()];
            for _ in 0..rng.gen_range(1..=3) {
                base.push(BigInt::from(rng.gen_range(-9i64..=9)));
            }
            if base.last().is_some_and(|c| c.is_zero()) {
                base.push(BigInt::from(2 + i));
            }
            let mut power = vec![BigInt::one()];
            for _ in 0..r {
                power = poly_mul(&power, &base);
            }
            let ps = core(power_structure(&power))?;
            ensure(ps.r == r && ps.q == base, || format!("r={r}: recovered r={} q={:?}", ps.r, ps.q))?;
        }
    }
    Ok("50 slope factorizations exact mod p^6 with c recovered; 18 powers recovered".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("r-table", r_table),
        ("quasi-diagonal quartic at p = 13", quasi_quartic_13),
        ("quasi-diagonal sextic at p = 31", quasi_sextic_31),
        ("height dichotomy 5 <= p <= 50", dichotomy),
        ("gamma identity mod p^4", gamma),
        ("unit-root congruences", unit_root_congruences),
        ("group-law integrality and axioms", group_laws),
        ("multinomial oracle equivalence", oracle_equivalence),
        ("supersingular divisibility", divisibility),
        ("gcd(V1, V2) scan below 150", q49),
        ("slope machinery", slopes),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(check)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
