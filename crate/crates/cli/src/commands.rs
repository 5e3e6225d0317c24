use brauer_core::charsum::{
    family_point_count, jacobi_sum, point_count, CountKind, HomogeneousForm,
    MultiplicativeCharacter,
};
use brauer_core::exact::{binomial, fp_factor_seeded, BigInt, BigRational, FpPoly};
use brauer_core::fgl::{
    build_group_law, check_axioms, gamma_check, height_classify, limit_identity_check,
    limit_series_check, supersingular_divisibility, unit_root_sb, v_polynomials, VPolynomials,
};
use brauer_core::hyperfam::{
    multinomial_oracle_params, FamilyId, FamilyParams, FormKind, K3FamilySpec,
};
use brauer_core::weil::{
    functional_equation_check, newton_polygon, possible_r, power_structure, r_table,
    slope_factorize, Irreducibility, WeilPoly,
};
use brauer_core::{Error, FormalGroupLogarithm, PadicInt};
use serde_json::{json, Value};

use crate::args::{CongruenceKind, CountKindArg, FamilyArgs, PolyArgs};
use crate::cache::content_hash;
use crate::config::RunConfig;
use crate::scan;
use crate::Command;

/// Largest `m` for which `log-coeffs` re-derives `a(m)` by multinomial enumeration.
pub const ORACLE_LIMIT: u64 = 40;

/// What a handler produces before it is wrapped in an envelope. `failure`
/// marks a completed computation whose verdict is negative.
pub struct Outcome {
    pub result: Value,
    pub evidence: Value,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn ok(result: Value, evidence: Value) -> Self {
        Outcome {
            result,
            evidence,
            failure: None,
        }
    }

    fn verdict(result: Value, evidence: Value, holds: bool, what: &str) -> Self {
        Outcome {
            result,
            evidence,
            failure: (!holds).then(|| what.to_string()),
        }
    }
}

pub fn padic_json(x: &PadicInt) -> Value {
    json!({
        "value": x.value(),
        "signed": x.signed() as i64,
        "p": x.p(),
        "precision": x.precision(),
    })
}

fn rational(q: &BigRational) -> String {
    q.to_string()
}

fn bigints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

pub fn fp_poly_json(f: &FpPoly) -> Value {
    json!({
        "coeffs": f.coeffs(),
        "degree": f.degree(),
        "display": f.to_string(),
    })
}

/// Stable fingerprint of `V_1` and `V_2`; `v-polys` and `q49-scan` report the same value.
pub fn v_hash(v: &VPolynomials) -> String {
    content_hash(&json!({
        "family": v.family.name(),
        "p": v.p,
        "v1": v.v1.coeffs(),
        "v2": v.v2.coeffs(),
    }))
}

pub fn parse_family(name: &str) -> Result<K3FamilySpec, Error> {
    Ok(name.parse::<FamilyId>()?.spec())
}

/// Family parameters with every `c_i` defaulting to 1.
pub fn family_params(
    spec: &K3FamilySpec,
    p: u64,
    precision: u32,
    c: Option<&[u64]>,
    lambda: Option<u64>,
    teichmuller: bool,
) -> Result<FamilyParams, Error> {
    let ones = vec![1u64; spec.c_names.len()];
    let c = c.unwrap_or(&ones);
    FamilyParams::from_residues(spec, p, precision, c, lambda, teichmuller)
}

fn family_log(args: &FamilyArgs, precision: u32) -> Result<(K3FamilySpec, FormalGroupLogarithm), Error> {
    let spec = parse_family(&args.family)?;
    if !spec.supports_prime(args.p) {
        return Err(Error::Domain(format!("{} is not defined at p = {}", spec.id, args.p)));
    }
    let params = family_params(
        &spec,
        args.p,
        precision,
        args.c.as_deref(),
        args.lambda,
        args.teichmuller,
    )?;
    let log = FormalGroupLogarithm::family(&spec, &params, args.p, precision)?;
    Ok((spec, log))
}

fn big_coeffs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Outcome, Error> {
    let n = cfg.precision;
    match command {
        Command::Families => families(),
        Command::LogCoeffs { family, count } => log_coeffs(family, *count, n),
        Command::GroupLaw { family } => group_law(family, cfg),
        Command::Height { family, x } => height(family, *x, cfg),
        Command::VPolys { family, p } => v_polys(family, *p, cfg.seed),
        Command::UnitRoot { family } => {
            let (_, log) = family_log(family, n.max(cfg.s_max + 2))?;
            let report = unit_root_sb(&log, cfg.s_max, cfg.mu_max)?;
            let alpha = report.alpha.element;
            Ok(Outcome::ok(
                json!({
                    "alpha": padic_json(&alpha),
                    "alpha_next": padic_json(&report.alpha_next),
                    "stable": report.stable,
                }),
                serde_json::to_value(&report).expect("report serializes"),
            ))
        }
        Command::GammaCheck { p } => {
            let r = gamma_check(*p, n)?;
            Ok(Outcome::verdict(
                json!({
                    "holds": r.holds,
                    "alpha": padic_json(&r.alpha),
                    "gamma_value": padic_json(&r.gamma_value),
                }),
                json!({ "p": r.p, "precision": r.precision }),
                r.holds,
                "unit root differs from the Gamma quotient",
            ))
        }
        Command::CongruenceCheck { family, kind } => congruence(family, *kind, cfg),
        Command::Newton { poly, p, a } => newton(poly, *p, *a),
        Command::SlopeFactor { poly, p, a } => slope_factor(poly, *p, *a, n),
        Command::PowerStructure { poly } => power(poly),
        Command::RTable { tau, h, tau_max } => rtable(*tau, *h, *tau_max),
        Command::PointCount {
            family,
            c,
            lambda,
            form,
            kind,
            q,
        } => points(family.as_deref(), c.as_deref(), *lambda, form.as_deref(), *kind, *q),
        Command::JacobiSum { p, d, k1, k2 } => jacobi(*p, *d, *k1, *k2),
        Command::HeightScan {
            family,
            p,
            c,
            mode,
            sample,
        } => scan::height_scan(family, *p, c.as_deref(), *mode, *sample, cfg),
        Command::Q49Scan { p_max, family } => scan::q49_scan(*p_max, family.as_deref()),
    }
}

fn families() -> Result<Outcome, Error> {
    let rows: Vec<Value> = K3FamilySpec::catalog()
        .iter()
        .map(|s| {
            json!({
                "id": s.id.name(),
                "stride": s.stride,
                "kind": s.kind,
                "c": s.c_names,
                "lambda": s.has_lambda,
                "min_prime": s.min_prime(),
                "smoothness_checked": s.smoothness_checked,
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "families": rows }), json!({})))
}

/// Exact `a(m)` from the multinomial enumeration (`C(2m,m)^2` for the Jacobi
/// quartic), or `None` when `m` is past the oracle limit.
fn oracle_value(spec: &K3FamilySpec, params: &FamilyParams, m: u64) -> Result<Option<BigInt>, Error> {
    if spec.id == FamilyId::JacobiQuartic {
        let b = binomial(2 * m, m);
        return Ok((m <= ORACLE_LIMIT).then(|| &b * &b));
    }
    // The enumeration at index n yields the logarithm coefficient at t n + 1.
    let t = if spec.kind == FormKind::DoubleSextic { 2 } else { 1 };
    let n = spec.stride * m / t;
    if n > ORACLE_LIMIT {
        return Ok(None);
    }
    multinomial_oracle_params(spec, params, n).map(Some)
}

fn log_coeffs(args: &FamilyArgs, count: u64, n: u32) -> Result<Outcome, Error> {
    let (spec, log) = family_log(args, n)?;
    let params = family_params(
        &spec,
        args.p,
        n,
        args.c.as_deref(),
        args.lambda,
        args.teichmuller,
    )?;
    let modulus = BigInt::from(PadicInt::one(args.p, n)?.modulus());
    let mut coeffs = Vec::with_capacity(count as usize);
    let mut checked = 0u64;
    for m in 0..count {
        let a = log.a(m)?;
        if let Some(exact) = oracle_value(&spec, &params, m)? {
            let mut r = exact % &modulus;
            if r < BigInt::from(0) {
                r += &modulus;
            }
            if r != BigInt::from(a.value()) {
                return Err(Error::Consistency(format!(
                    "a({m}) = {} but the multinomial oracle gives {r} mod {}^{n}",
                    a.value(),
                    args.p
                )));
            }
            checked += 1;
        }
        coeffs.push(padic_json(&a));
    }
    Ok(Outcome::ok(
        json!({ "stride": spec.stride, "a": coeffs }),
        json!({ "oracle": "multinomial enumeration", "oracle_checked": checked }),
    ))
}

fn group_law(args: &FamilyArgs, cfg: &RunConfig) -> Result<Outcome, Error> {
    let (_, log) = family_log(args, cfg.precision)?;
    let law = build_group_law(&log, cfg.cutoff)?;
    let axioms = check_axioms(&law)?;
    let terms: Vec<Value> = law
        .series
        .iter()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(i, j, c)| json!([i, j, c.value()]))
        .collect();
    Ok(Outcome::verdict(
        json!({
            "precision": law.precision,
            "cutoff": law.cutoff,
            "terms": terms,
            "axioms_hold": axioms.holds(),
        }),
        serde_json::to_value(&axioms).expect("report serializes"),
        axioms.holds(),
        "group axioms fail on the truncated law",
    ))
}

fn height(args: &FamilyArgs, x: Option<u64>, cfg: &RunConfig) -> Result<Outcome, Error> {
    let n = cfg.precision.max(cfg.s_max).max(2);
    let log = match x {
        Some(x) => {
            let spec = parse_family(&args.family)?;
            if !spec.supports_prime(args.p) {
                return Err(Error::Domain(format!("{} is not defined at p = {}", spec.id, args.p)));
            }
            FormalGroupLogarithm::quasi_diagonal_x(&spec, PadicInt::new(args.p, n, x % args.p)?)?
        }
        None => family_log(args, n)?.1,
    };
    let report = height_classify(&log, cfg.s_max)?;
    Ok(Outcome::ok(
        json!({ "classification": report.classification }),
        serde_json::to_value(&report.evidence).expect("report serializes"),
    ))
}

fn v_polys(family: &str, p: u64, seed: u64) -> Result<Outcome, Error> {
    let spec = parse_family(family)?;
    let v = v_polynomials(&spec, p)?;
    let v2_factors = if v.v2.is_zero() {
        Value::Null
    } else {
        let f = fp_factor_seeded(&v.v2, seed)?;
        json!({
            "unit": f.unit,
            "degrees": f.degrees(),
            "factors": f.factors.iter().map(|(g, e)| json!([g.to_string(), e])).collect::<Vec<_>>(),
        })
    };
    Ok(Outcome::ok(
        json!({
            "v1": fp_poly_json(&v.v1),
            "v2": fp_poly_json(&v.v2),
            "gcd": fp_poly_json(&v.gcd),
            "coprime": v.gcd.is_one(),
            "v1_roots": v.v1.roots_by_scan(),
            "v_hash": v_hash(&v),
        }),
        json!({ "v2_factorization": v2_factors }),
    ))
}

fn congruence(args: &FamilyArgs, kind: CongruenceKind, cfg: &RunConfig) -> Result<Outcome, Error> {
    let spec = parse_family(&args.family)?;
    match kind {
        CongruenceKind::Identity => {
            let ones = vec![1u64; spec.c_names.len()];
            let c = args.c.as_deref().unwrap_or(&ones);
            let r = limit_identity_check(&spec, c, args.lambda, args.p, cfg.precision)?;
            Ok(Outcome::ok(
                json!({
                    "holds": true,
                    "alpha": padic_json(&r.alpha),
                    "closed_form": padic_json(&r.closed_form),
                }),
                json!({
                    "literal_form": r.literal_form.as_ref().map(padic_json),
                    "literal_agreement": r.literal_agreement,
                    "gamma_h1": r.gamma_h1.as_ref().map(padic_json),
                }),
            ))
        }
        CongruenceKind::Series => {
            let r = limit_series_check(&spec, args.p, cfg.s_max)?;
            Ok(Outcome::verdict(
                json!({ "holds": r.holds, "m": r.m }),
                json!({ "rows": r.rows }),
                r.holds,
                "x-polynomial departs from the limit series",
            ))
        }
        CongruenceKind::Divisibility => {
            let r = supersingular_divisibility(&spec, args.p, cfg.s_max)?;
            Ok(Outcome::ok(
                json!({ "holds": true, "indices_examined": r.indices_examined }),
                json!({ "rows": r.rows, "central_binomials": r.central_binomials }),
            ))
        }
    }
}

fn slopes_json(slopes: &[(BigRational, usize)]) -> Vec<Value> {
    slopes
        .iter()
        .map(|(s, len)| json!({ "slope": rational(s), "length": len }))
        .collect()
}

fn newton(poly: &PolyArgs, p: u64, a: u32) -> Result<Outcome, Error> {
    if a == 0 {
        return Err(Error::Domain("a must be positive".into()));
    }
    let np = newton_polygon(&big_coeffs(&poly.coeffs), p)?;
    let scale = BigRational::from_integer(BigInt::from(a));
    let normalized: Vec<(BigRational, usize)> =
        np.slopes.iter().map(|(s, l)| (s / &scale, *l)).collect();
    Ok(Outcome::ok(
        json!({
            "vertices": np.vertices,
            "slopes": slopes_json(&np.slopes),
            "normalized_slopes": slopes_json(&normalized),
        }),
        json!({ "degree": np.degree() }),
    ))
}

fn slope_factor(poly: &PolyArgs, p: u64, a: u32, n: u32) -> Result<Outcome, Error> {
    let f = WeilPoly::from_i64(&poly.coeffs, p, a)?;
    let sf = slope_factorize(&f, n)?;
    let q = p
        .checked_pow(a)
        .ok_or_else(|| Error::Domain(format!("q = {p}^{a} does not fit in 64 bits")))?;
    let fe = functional_equation_check(&sf, q)?;
    let part = |v: &[PadicInt]| v.iter().map(|c| c.signed() as i64).collect::<Vec<_>>();
    Ok(Outcome::ok(
        json!({
            "lower": part(&sf.lower),
            "middle": part(&sf.middle),
            "upper": part(&sf.upper),
            "h": sf.h,
            "functional_equation": {
                "holds": fe.holds,
                "c": fe.c.as_ref().map(padic_json),
            },
        }),
        json!({
            "precision": sf.precision,
            "raw_slopes": slopes_json(&sf.raw_slopes),
            "normalized_slopes": slopes_json(&sf.normalized_slopes),
        }),
    ))
}

fn power(poly: &PolyArgs) -> Result<Outcome, Error> {
    let ps = power_structure(&big_coeffs(&poly.coeffs))?;
    let verdict = match &ps.irreducibility {
        Irreducibility::Certified { .. } => "certified",
        Irreducibility::Probable { .. } => "probable",
    };
    Ok(Outcome::ok(
        json!({ "r": ps.r, "q": bigints(&ps.q), "irreducibility": verdict }),
        serde_json::to_value(&ps.irreducibility).expect("verdict serializes"),
    ))
}

fn rtable(tau: Option<u64>, h: Option<u64>, tau_max: u64) -> Result<Outcome, Error> {
    match (tau, h) {
        (Some(tau), Some(h)) => Ok(Outcome::ok(json!({ "r": possible_r(tau, h)? }), json!({}))),
        (None, None) => {
            let cells = r_table(tau_max);
            Ok(Outcome::ok(
                json!({ "cells": cells }),
                json!({ "tau_max": tau_max, "count": cells.len() }),
            ))
        }
        _ => Err(Error::Domain("give both --tau and --h, or neither".into())),
    }
}

/// Parses `coef:e1,e2,..;coef:e1,e2,..`.
pub fn parse_form(text: &str) -> Result<HomogeneousForm, Error> {
    let bad = |t: &str| Error::Domain(format!("cannot parse monomial {t:?}"));
    let mut terms = Vec::new();
    for term in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, e) = term.split_once(':').ok_or_else(|| bad(term))?;
        let c: i64 = c.trim().parse().map_err(|_| bad(term))?;
        let e = e
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad(term))?;
        terms.push((c, e));
    }
    HomogeneousForm::new(terms)
}

fn points(
    family: Option<&str>,
    c: Option<&[i64]>,
    lambda: Option<i64>,
    form: Option<&str>,
    kind: CountKindArg,
    q: u64,
) -> Result<Outcome, Error> {
    let report = match (family, form) {
        (Some(name), None) => {
            let spec = parse_family(name)?;
            let ones = vec![1i64; spec.c_names.len()];
            family_point_count(&spec, c.unwrap_or(&ones), lambda, q)?
        }
        (None, Some(text)) => {
            let kind = match kind {
                CountKindArg::Hypersurface => CountKind::Hypersurface,
                CountKindArg::DoubleCover => CountKind::DoubleCover,
            };
            point_count(&parse_form(text)?, kind, q)?
        }
        _ => return Err(Error::Domain("give exactly one of --family and --form".into())),
    };
    Ok(Outcome::ok(
        json!({ "count": report.count, "kind": report.kind }),
        json!({ "evaluations": report.evaluations, "convention": report.convention }),
    ))
}

fn jacobi(p: u64, d: u64, k1: u64, k2: u64) -> Result<Outcome, Error> {
    let chi1 = MultiplicativeCharacter::new(p, d, k1)?;
    let chi2 = MultiplicativeCharacter::new(p, d, k2)?;
    let j = jacobi_sum(&chi1, &chi2)?;
    Ok(Outcome::ok(
        json!({
            "value": j.to_string(),
            "coeffs": j.coeffs(),
            "integer": j.as_integer(),
            "norm": j.norm_squared().as_integer(),
        }),
        json!({ "generator": chi1.generator(), "zeta_order": j.order() }),
    ))
}
