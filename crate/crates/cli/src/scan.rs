use std::collections::BTreeMap;

use brauer_core::fgl::{height_classify, v_polynomials};
use brauer_core::hyperfam::{quasi_x_image, FamilyId, K3FamilySpec};
use brauer_core::{Error, FormalGroupLogarithm, HeightClass, PadicInt};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::ScanMode;
use crate::commands::{family_params, fp_poly_json, parse_family, v_hash, Outcome};
use crate::config::RunConfig;

fn class_name(c: &HeightClass) -> String {
    match c {
        HeightClass::Height1 => "height_1".into(),
        HeightClass::Height2 => "height_2".into(),
        HeightClass::SupersingularUpTo(s) => format!("supersingular_up_to_{s}"),
        HeightClass::UndeterminedAtLeast3 => "undetermined_at_least_3".into(),
    }
}

fn classify_one(
    spec: &K3FamilySpec,
    p: u64,
    c: Option<&[u64]>,
    value: u64,
    mode: ScanMode,
    cfg: &RunConfig,
) -> Result<HeightClass, Error> {
    let n = cfg.precision.max(cfg.s_max).max(2);
    let log = match mode {
        ScanMode::X => FormalGroupLogarithm::quasi_diagonal_x(spec, PadicInt::new(p, n, value)?)?,
        ScanMode::Lambda => {
            let params = family_params(spec, p, n, c, Some(value), false)?;
            FormalGroupLogarithm::family(spec, &params, p, n)?
        }
    };
    Ok(height_classify(&log, cfg.s_max)?.classification)
}

/// Height of every member `λ ∈ F_p^×` (or every `x ∈ F_p^×`), classified in parallel.
pub fn height_scan(
    family: &str,
    p: u64,
    c: Option<&[u64]>,
    mode: ScanMode,
    sample_size: Option<usize>,
    cfg: &RunConfig,
) -> Result<Outcome, Error> {
    let spec = parse_family(family)?;
    if !spec.supports_prime(p) {
        return Err(Error::Domain(format!("{} is not defined at p = {p}", spec.id)));
    }
    match mode {
        ScanMode::Lambda if !spec.has_lambda => {
            return Err(Error::Domain(format!("{} has no parameter λ to scan", spec.id)))
        }
        ScanMode::X if spec.x_constant().is_none() => {
            return Err(Error::Unsupported(format!("{} has no x-variable", spec.id)))
        }
        _ => {}
    }
    let mut values: Vec<u64> = (1..p).collect();
    if let Some(k) = sample_size {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut picked: Vec<u64> = sample(&mut rng, values.len(), k.min(values.len()))
            .into_iter()
            .map(|i| values[i])
            .collect();
        picked.sort_unstable();
        values = picked;
    }
    let quasi = spec.x_constant().is_some();
    let rows: Vec<(u64, Result<HeightClass, Error>, Option<u64>)> = values
        .par_iter()
        .map(|&v| {
            let class = classify_one(&spec, p, c, v, mode, cfg);
            let image = match mode {
                ScanMode::Lambda if quasi => quasi_x_image(&spec, v, p).ok().flatten(),
                _ => None,
            };
            (v, class, image)
        })
        .collect();

    let key = match mode {
        ScanMode::Lambda => "lambda",
        ScanMode::X => "x",
    };
    let mut histogram: BTreeMap<String, u64> = BTreeMap::new();
    let mut out = Vec::with_capacity(rows.len());
    let mut images = std::collections::BTreeSet::new();
    for (v, class, image) in &rows {
        let mut row = serde_json::Map::new();
        row.insert(key.into(), json!(v));
        match class {
            Ok(c) => {
                *histogram.entry(class_name(c)).or_default() += 1;
                row.insert("classification".into(), json!(c));
            }
            Err(e) => {
                *histogram.entry("error".into()).or_default() += 1;
                row.insert("error".into(), json!(e.to_string()));
            }
        }
        if let Some(x) = image {
            images.insert(*x);
            row.insert("x".into(), json!(x));
        }
        out.push(Value::Object(row));
    }
    let mut evidence = json!({ "scanned": rows.len(), "s_max": cfg.s_max });
    if mode == ScanMode::Lambda && quasi {
        evidence["x_images_reached"] = json!(images);
    }
    Ok(Outcome::ok(json!({ "rows": out, "histogram": histogram }), evidence))
}

/// `gcd(V_1, V_2)` for every prime `p < p_max` at which the quasi-diagonal
/// family is defined.
pub fn q49_scan(p_max: u64, family: Option<&str>) -> Result<Outcome, Error> {
    if p_max < 7 {
        return Err(Error::Domain(format!("p_max = {p_max} is below 7")));
    }
    let ids: Vec<FamilyId> = match family {
        Some(name) => vec![name.parse()?],
        None => vec![FamilyId::QuasiDiagonalQuartic, FamilyId::QuasiDiagonalSextic],
    };
    let mut jobs = Vec::new();
    for id in ids {
        let spec = id.spec();
        if spec.x_constant().is_none() {
            return Err(Error::Unsupported(format!("{id} has no V-polynomials")));
        }
        for p in brauer_core::exact::modular::primes_in(2, p_max) {
            if spec.supports_prime(p) {
                jobs.push((spec.clone(), p));
            }
        }
    }
    let rows: Vec<Result<Value, Error>> = jobs
        .par_iter()
        .map(|(spec, p)| {
            let v = v_polynomials(spec, *p)?;
            let verdict = if v.gcd.is_one() { "coprime" } else { "common_factor" };
            Ok(json!({
                "family": spec.id.name(),
                "p": p,
                "verdict": verdict,
                "gcd": fp_poly_json(&v.gcd),
                "v1_degree": v.v1.degree(),
                "v2_degree": v.v2.degree(),
                "v_hash": v_hash(&v),
            }))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let all = rows.iter().all(|r| r["verdict"] == "coprime");
    Ok(Outcome {
        evidence: json!({ "primes_examined": rows.len() }),
        failure: None,
        result: json!({ "all_coprime": all, "rows": rows }),
    })
}
